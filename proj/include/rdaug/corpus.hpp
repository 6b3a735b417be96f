#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rdaug {

struct Provenance {
    std::string source_id;
    std::string augmenter;

    bool operator==(const Provenance&) const = default;
};

// One labeled tweet. label is 1 for a self-reported diagnosis, 0 otherwise.
// provenance is set only on copies produced by an augmenter.
struct TweetExample {
    std::string id;
    std::string text;
    int label = 0;
    std::optional<Provenance> provenance;

    bool operator==(const TweetExample&) const = default;
};

using Dataset = std::vector<TweetExample>;

// TSV with header "tweet_id\ttext\tlabel". Errors name the 1-based line number.
Dataset read_tsv(std::istream& in, const std::string& source_name = "<stream>");
Dataset load_tsv(const std::filesystem::path& path);

// Throws ValueError when a text contains a tab or newline (they are not escaped).
void write_tsv(std::ostream& out, const Dataset& d);
void save_tsv(const std::filesystem::path& path, const Dataset& d);

// JSONL, one object per example: {"id","text","label","source_id","augmenter"},
// with nulls in the last two fields for originals.
Dataset read_jsonl(std::istream& in, const std::string& source_name = "<stream>");
Dataset load_jsonl(const std::filesystem::path& path);
void write_jsonl(std::ostream& out, const Dataset& d);
void save_jsonl(const std::filesystem::path& path, const Dataset& d);

// Dispatches on extension: ".jsonl" reads JSONL, anything else TSV.
Dataset load_dataset(const std::filesystem::path& path);

std::size_t count_positives(const Dataset& d);

// Throws UndefinedStatistic on an empty dataset.
double positive_fraction(const Dataset& d);

// Appends duplicates of positive examples, drawn uniformly with replacement,
// until the positive fraction reaches target_pos_fraction. The returned dataset
// starts with the originals in order; each duplicate gets id "<id>~os<k>" with
// k counting appended duplicates from 1. Throws ImbalanceError if either class
// is missing and ContractError if the target is outside (0, 1).
Dataset oversample(const Dataset& d, double target_pos_fraction, std::uint64_t seed);

}  // namespace rdaug
