#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdaug/corpus.hpp"
#include "rdaug/resources.hpp"
#include "rdaug/translator.hpp"

namespace rdaug {

enum class Augmenter { synonym, reserved, tense, backtranslate };

inline constexpr Augmenter kAllAugmenters[] = {Augmenter::synonym, Augmenter::reserved, Augmenter::tense,
                                               Augmenter::backtranslate};

std::string_view augmenter_name(Augmenter a);
std::optional<Augmenter> parse_augmenter(std::string_view name);

struct AugmentationConfig {
    // Always held in kAllAugmenters order without duplicates.
    std::vector<Augmenter> enabled;
    double p_syn = 0.1;
    int copies_per_augmenter = 1;
    std::uint64_t seed = 0;

    // Empty paths select the built-in resources. A non-empty translator_url
    // replaces the offline phrase tables with the HTTP translator.
    std::string lexicon_path;
    std::string reserved_classes_path;
    std::string verb_map_path;
    std::string phrase_table_fwd_path;
    std::string phrase_table_rev_path;
    std::string translator_url;

    bool is_enabled(Augmenter a) const;
    void validate() const;
};

// JSON object mirroring AugmentationConfig field by field; "enabled" is a list
// of augmenter names. Missing fields keep their defaults.
AugmentationConfig parse_augmentation_config(std::string_view json_text);
AugmentationConfig load_augmentation_config(const std::filesystem::path& path);
std::string augmentation_config_to_json(const AugmentationConfig& cfg);

struct AugmentResources {
    SynonymLexicon lexicon;
    ReservedClasses classes;
    VerbMap verbs;
    std::shared_ptr<const Translator> forward;  // en -> de
    std::shared_ptr<const Translator> reverse;  // de -> en
};

AugmentResources load_resources(const AugmentationConfig& cfg);

// Draw sequence, using Rng(seed): tokens are visited left to right; a token is
// eligible when it has at least 3 characters and is a lexicon key. Each
// eligible token consumes one uniform() draw; when that draw is < p a second
// draw, below(#synonyms), picks the replacement. Other tokens draw nothing.
std::string synonym_substitute(std::string_view text, const SynonymLexicon& lex, double p, std::uint64_t seed);

// Every class member is replaced by a different member of its class. With
// Rng(seed), each member token (left to right) consumes one below(size - 1)
// draw indexing the class members in listed order with the original removed.
std::string reserved_replace(std::string_view text, const ReservedClasses& classes, std::uint64_t seed);

// Present -> past using the irregular map, then the regular suffix for tokens
// in the regular verb list. Deterministic.
std::string tense_transform(std::string_view text, const VerbMap& vm);

// normalize(reverse(forward(text))). Translator errors propagate as
// AugmentationUnavailable.
std::string back_translate(std::string_view text, const Translator& forward, const Translator& reverse);

// Seed for the copy_index-th copy (0-based) of example id under augmenter a.
std::uint64_t copy_seed(std::uint64_t seed, std::string_view id, Augmenter a, int copy_index);

std::string apply_augmenter(Augmenter a, std::string_view text, const AugmentationConfig& cfg,
                            const AugmentResources& res, std::uint64_t seed);

// Id given to the copy_index-th copy (0-based): "<id>~<augmenter><copy_index + 1>".
std::string augmented_id(std::string_view id, Augmenter a, int copy_index);

struct AugmentWarnings {
    std::size_t skipped = 0;
    std::vector<std::string> messages;
};

struct AugmentResult {
    Dataset data;
    AugmentWarnings warnings;
};

// Originals first, then for each enabled augmenter (in kAllAugmenters order),
// each example in order, copies_per_augmenter copies. Copies whose translator
// fails are skipped and counted. Per-example work runs on `threads` OpenMP
// threads (0 = runtime default); the result does not depend on the count.
AugmentResult augment_dataset(const Dataset& d, const AugmentationConfig& cfg, const AugmentResources& res,
                              int threads = 0);

}  // namespace rdaug
