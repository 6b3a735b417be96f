#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace rdaug {

// Positive-class (label 1) confusion counts and the derived scores. Any ratio
// with a zero denominator is reported as 0.
struct Metrics {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const Metrics&) const = default;
};

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

// Throws ContractError on length mismatch or empty input.
Metrics precision_recall_f1(std::span<const int> preds, std::span<const int> golds);

double f1_from_pr(double precision, double recall);

// {"precision","recall","f1","tp","fp","fn","tn"}
std::string metrics_to_json(const Metrics& m);

}  // namespace rdaug
