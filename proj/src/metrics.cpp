#include "rdaug/metrics.hpp"

#include <nlohmann/json.hpp>

#include "rdaug/error.hpp"

namespace rdaug {

double f1_from_pr(double precision, double recall) {
    const double s = precision + recall;
    return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    Metrics m{tp, fp, fn, tn};
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = f1_from_pr(m.precision, m.recall);
    return m;
}

Metrics precision_recall_f1(std::span<const int> preds, std::span<const int> golds) {
    if (preds.size() != golds.size()) {
        throw ContractError("predictions and gold labels differ in length (" + std::to_string(preds.size()) +
                            " vs " + std::to_string(golds.size()) + ")");
    }
    if (preds.empty()) {
        throw ContractError("metrics need at least one prediction");
    }
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const bool p = preds[i] == 1;
        const bool g = golds[i] == 1;
        tp += p && g;
        fp += p && !g;
        fn += !p && g;
        tn += !p && !g;
    }
    return metrics_from_counts(tp, fp, fn, tn);
}

std::string metrics_to_json(const Metrics& m) {
    nlohmann::ordered_json j;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["tp"] = m.tp;
    j["fp"] = m.fp;
    j["fn"] = m.fn;
    j["tn"] = m.tn;
    return j.dump(2);
}

}  // namespace rdaug
