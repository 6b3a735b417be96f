#include "rdaug/augment.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <omp.h>

#include "rdaug/error.hpp"
#include "rdaug/hash.hpp"
#include "rdaug/preprocess.hpp"

namespace rdaug {

std::string_view augmenter_name(Augmenter a) {
    switch (a) {
        case Augmenter::synonym:
            return "synonym";
        case Augmenter::reserved:
            return "reserved";
        case Augmenter::tense:
            return "tense";
        case Augmenter::backtranslate:
            return "backtranslate";
    }
    return "unknown";
}

std::optional<Augmenter> parse_augmenter(std::string_view name) {
    for (auto a : kAllAugmenters) {
        if (augmenter_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

bool AugmentationConfig::is_enabled(Augmenter a) const {
    return std::find(enabled.begin(), enabled.end(), a) != enabled.end();
}

void AugmentationConfig::validate() const {
    if (!(p_syn >= 0.0 && p_syn <= 1.0)) {
        throw ValueError("p_syn must lie in [0, 1]");
    }
    if (copies_per_augmenter < 1) {
        throw ValueError("copies_per_augmenter must be a positive integer");
    }
}

AugmentationConfig parse_augmentation_config(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("augmentation config: ") + e.what());
    }
    if (!j.is_object()) {
        throw FormatError("augmentation config must be a JSON object");
    }

    AugmentationConfig cfg;
    try {
        if (j.contains("enabled")) {
            std::vector<bool> on(std::size(kAllAugmenters), false);
            for (const auto& name : j.at("enabled")) {
                const auto a = parse_augmenter(name.get<std::string>());
                if (!a) {
                    throw ValueError("unknown augmenter '" + name.get<std::string>() + "'");
                }
                on[static_cast<std::size_t>(*a)] = true;
            }
            for (auto a : kAllAugmenters) {
                if (on[static_cast<std::size_t>(a)]) {
                    cfg.enabled.push_back(a);
                }
            }
        }
        cfg.p_syn = j.value("p_syn", cfg.p_syn);
        cfg.copies_per_augmenter = j.value("copies_per_augmenter", cfg.copies_per_augmenter);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.lexicon_path = j.value("lexicon_path", cfg.lexicon_path);
        cfg.reserved_classes_path = j.value("reserved_classes_path", cfg.reserved_classes_path);
        cfg.verb_map_path = j.value("verb_map_path", cfg.verb_map_path);
        cfg.phrase_table_fwd_path = j.value("phrase_table_fwd_path", cfg.phrase_table_fwd_path);
        cfg.phrase_table_rev_path = j.value("phrase_table_rev_path", cfg.phrase_table_rev_path);
        cfg.translator_url = j.value("translator_url", cfg.translator_url);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("augmentation config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

AugmentationConfig load_augmentation_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_augmentation_config(buf.str());
}

std::string augmentation_config_to_json(const AugmentationConfig& cfg) {
    nlohmann::ordered_json j;
    j["enabled"] = nlohmann::ordered_json::array();
    for (auto a : cfg.enabled) {
        j["enabled"].push_back(std::string(augmenter_name(a)));
    }
    j["p_syn"] = cfg.p_syn;
    j["copies_per_augmenter"] = cfg.copies_per_augmenter;
    j["seed"] = cfg.seed;
    j["lexicon_path"] = cfg.lexicon_path;
    j["reserved_classes_path"] = cfg.reserved_classes_path;
    j["verb_map_path"] = cfg.verb_map_path;
    j["phrase_table_fwd_path"] = cfg.phrase_table_fwd_path;
    j["phrase_table_rev_path"] = cfg.phrase_table_rev_path;
    j["translator_url"] = cfg.translator_url;
    return j.dump(2);
}

AugmentResources load_resources(const AugmentationConfig& cfg) {
    AugmentResources res;
    res.lexicon = cfg.lexicon_path.empty() ? default_lexicon() : load_lexicon(cfg.lexicon_path);
    res.classes =
        cfg.reserved_classes_path.empty() ? default_reserved_classes() : load_reserved_classes(cfg.reserved_classes_path);
    res.verbs = cfg.verb_map_path.empty() ? default_verb_map() : load_verb_map(cfg.verb_map_path);
    if (!cfg.translator_url.empty()) {
        res.forward = std::make_shared<HttpTranslator>(cfg.translator_url, "en", "de");
        res.reverse = std::make_shared<HttpTranslator>(cfg.translator_url, "de", "en");
    } else {
        res.forward = std::make_shared<PhraseTableTranslator>(
            cfg.phrase_table_fwd_path.empty() ? default_en_de_table() : load_phrase_table(cfg.phrase_table_fwd_path));
        res.reverse = std::make_shared<PhraseTableTranslator>(
            cfg.phrase_table_rev_path.empty() ? default_de_en_table() : load_phrase_table(cfg.phrase_table_rev_path));
    }
    return res;
}

std::string synonym_substitute(std::string_view text, const SynonymLexicon& lex, double p, std::uint64_t seed) {
    auto tokens = split_whitespace(text);
    Rng rng(seed);
    for (auto& tok : tokens) {
        if (tok.size() < 3) {
            continue;
        }
        const auto* syns = lex.find(tok);
        if (syns == nullptr) {
            continue;
        }
        if (rng.uniform() < p) {
            tok = (*syns)[rng.below(syns->size())];
        }
    }
    return join_tokens(tokens);
}

std::string reserved_replace(std::string_view text, const ReservedClasses& classes, std::uint64_t seed) {
    auto tokens = split_whitespace(text);
    Rng rng(seed);
    for (auto& tok : tokens) {
        const auto c = classes.class_of(tok);
        if (!c) {
            continue;
        }
        const auto& members = classes.classes[*c];
        auto pick = rng.below(members.size() - 1);
        // Skip over the original's slot in the member list.
        for (std::size_t m = 0; m < members.size(); ++m) {
            if (members[m] == tok) {
                continue;
            }
            if (pick == 0) {
                tok = members[m];
                break;
            }
            --pick;
        }
    }
    return join_tokens(tokens);
}

std::string tense_transform(std::string_view text, const VerbMap& vm) {
    auto tokens = split_whitespace(text);
    for (auto& tok : tokens) {
        if (const auto it = vm.irregular.find(tok); it != vm.irregular.end()) {
            tok = it->second;
        } else if (vm.regular.contains(tok)) {
            tok = regular_past(tok);
        }
    }
    return join_tokens(tokens);
}

std::string back_translate(std::string_view text, const Translator& forward, const Translator& reverse) {
    try {
        return normalize(reverse.translate(forward.translate(std::string(text))));
    } catch (const AugmentationUnavailable&) {
        throw;
    } catch (const std::exception& e) {
        throw AugmentationUnavailable(std::string("back translation failed: ") + e.what());
    }
}

std::uint64_t copy_seed(std::uint64_t seed, std::string_view id, Augmenter a, int copy_index) {
    return stable_hash(seed, id, augmenter_name(a), static_cast<std::uint64_t>(copy_index));
}

std::string apply_augmenter(Augmenter a, std::string_view text, const AugmentationConfig& cfg,
                            const AugmentResources& res, std::uint64_t seed) {
    switch (a) {
        case Augmenter::synonym:
            return synonym_substitute(text, res.lexicon, cfg.p_syn, seed);
        case Augmenter::reserved:
            return reserved_replace(text, res.classes, seed);
        case Augmenter::tense:
            return tense_transform(text, res.verbs);
        case Augmenter::backtranslate:
            if (!res.forward || !res.reverse) {
                throw AugmentationUnavailable("no translator configured");
            }
            return back_translate(text, *res.forward, *res.reverse);
    }
    throw ContractError("unknown augmenter");
}

std::string augmented_id(std::string_view id, Augmenter a, int copy_index) {
    return std::string(id) + "~" + std::string(augmenter_name(a)) + std::to_string(copy_index + 1);
}

AugmentResult augment_dataset(const Dataset& d, const AugmentationConfig& cfg, const AugmentResources& res,
                              int threads) {
    cfg.validate();
    const auto copies = static_cast<std::size_t>(cfg.copies_per_augmenter);
    const auto per_aug = d.size() * copies;
    const auto total = per_aug * cfg.enabled.size();

    struct Slot {
        std::optional<TweetExample> example;
        std::string warning;
        std::exception_ptr error;
    };
    std::vector<Slot> slots(total);

    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nthreads)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(total); ++s) {
        const auto idx = static_cast<std::size_t>(s);
        const auto a = cfg.enabled[idx / per_aug];
        const auto& src = d[(idx % per_aug) / copies];
        const auto c = static_cast<int>(idx % copies);
        try {
            auto text = apply_augmenter(a, src.text, cfg, res, copy_seed(cfg.seed, src.id, a, c));
            slots[idx].example = TweetExample{augmented_id(src.id, a, c), std::move(text), src.label,
                                              Provenance{src.id, std::string(augmenter_name(a))}};
        } catch (const AugmentationUnavailable& e) {
            slots[idx].warning = augmented_id(src.id, a, c) + ": " + e.what();
        } catch (...) {
            slots[idx].error = std::current_exception();
        }
    }

    AugmentResult out;
    out.data = d;
    out.data.reserve(d.size() + total);
    for (auto& slot : slots) {
        if (slot.error) {
            std::rethrow_exception(slot.error);
        }
        if (slot.example) {
            out.data.push_back(std::move(*slot.example));
        } else {
            ++out.warnings.skipped;
            out.warnings.messages.push_back(std::move(slot.warning));
        }
    }
    return out;
}

}  // namespace rdaug
