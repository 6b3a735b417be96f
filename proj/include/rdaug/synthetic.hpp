#pragma once

#include <cstdint>
#include <string>

#include "rdaug/corpus.hpp"

namespace rdaug {

// Raw tweet-like corpus for desk-scale experiments. Positives carry one of a
// few planted diagnosis patterns (each containing "positive", "diagnosed" or
// "hospitalized"); negatives mention the illness without any of those words.
// Texts include retweet markers, mentions, URLs, emoji and mixed case so the
// normalizer has real work to do.
struct SyntheticConfig {
    std::size_t size = 2000;
    double positive_rate = 0.2;  // exactly round(size * positive_rate) positives
    std::uint64_t seed = 0;
    std::string id_prefix = "syn";
};

Dataset generate_synthetic(const SyntheticConfig& cfg);

}  // namespace rdaug
