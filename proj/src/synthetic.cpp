#include "rdaug/synthetic.hpp"

#include <array>
#include <cmath>
#include <string_view>

#include "rdaug/error.hpp"
#include "rdaug/hash.hpp"

namespace rdaug {

namespace {

constexpr std::array<std::string_view, 10> kPositive = {
    "i tested positive for {c} {t}",
    "my {c} test came back positive {t}",
    "got diagnosed with {c} {t} and i feel awful",
    "just got my results and i am {c} positive",
    "i was hospitalized with {c} {t}",
    "doctor says i have {c} , tested positive {t}",
    "officially diagnosed with {c} , staying home",
    "my pcr test is positive , i have {c}",
    "i have been hospitalized because of {c} pneumonia",
    "rapid test positive again , {c} got me {t}",
};

constexpr std::array<std::string_view, 10> kNegative = {
    "i think i had {c} back in march",
    "{c} cases are rising again {t}",
    "stay home and stay safe from {c}",
    "worried about getting {c} at work {t}",
    "my {c} vaccine appointment is {t}",
    "not sure if this cough is {c} or just a cold",
    "my friend tested negative for {c} {t}",
    "so tired of hearing about {c} every day",
    "the {c} news today is really sad",
    "if i get {c} i will stay home {t}",
};

constexpr std::array<std::string_view, 5> kIllness = {"covid", "Covid-19", "coronavirus", "corona", "COVID"};
constexpr std::array<std::string_view, 6> kTime = {"today", "yesterday", "this week", "last night", "tomorrow",
                                                   "this morning"};
constexpr std::array<std::string_view, 6> kLead = {"", "", "RT @user_12:", "@friend", "Ugh,", "lol"};
constexpr std::array<std::string_view, 7> kTail = {"", "", "https://t.co/abc123", "\xF0\x9F\x98\xB7", "#staysafe",
                                                   "!!", "www.news.example/x"};
constexpr std::array<std::string_view, 8> kFiller = {"honestly", "seriously", "anyway", "well", "ok", "wow", "omg",
                                                     "sigh"};

template <std::size_t N>
std::string_view pick(const std::array<std::string_view, N>& options, Rng& rng) {
    return options[rng.below(N)];
}

std::string fill(std::string_view pattern, Rng& rng) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size();) {
        if (pattern.substr(i, 3) == "{c}") {
            out += pick(kIllness, rng);
            i += 3;
        } else if (pattern.substr(i, 3) == "{t}") {
            out += pick(kTime, rng);
            i += 3;
        } else {
            out.push_back(pattern[i++]);
        }
    }
    return out;
}

}  // namespace

Dataset generate_synthetic(const SyntheticConfig& cfg) {
    if (!(cfg.positive_rate >= 0.0 && cfg.positive_rate <= 1.0)) {
        throw ContractError("positive_rate must lie in [0, 1]");
    }
    const auto n_pos = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.size) * cfg.positive_rate));

    std::vector<int> labels(cfg.size, 0);
    for (std::size_t i = 0; i < n_pos; ++i) {
        labels[i] = 1;
    }
    Rng rng(stable_hash(cfg.seed, "synthetic"));
    for (std::size_t i = labels.size(); i > 1; --i) {
        std::swap(labels[i - 1], labels[rng.below(i)]);
    }

    Dataset d;
    d.reserve(cfg.size);
    for (std::size_t i = 0; i < cfg.size; ++i) {
        const int label = labels[i];
        std::string text;
        const auto lead = pick(kLead, rng);
        if (!lead.empty()) {
            text += lead;
            text += ' ';
        }
        if (rng.uniform() < 0.3) {
            text += pick(kFiller, rng);
            text += ' ';
        }
        auto body = fill(label == 1 ? pick(kPositive, rng) : pick(kNegative, rng), rng);
        if (rng.uniform() < 0.3) {
            for (auto& c : body) {
                if (c >= 'a' && c <= 'z' && rng.uniform() < 0.2) {
                    c = static_cast<char>(c - 'a' + 'A');
                }
            }
        }
        text += body;
        const auto tail = pick(kTail, rng);
        if (!tail.empty()) {
            text += ' ';
            text += tail;
        }
        d.push_back({cfg.id_prefix + "-" + std::to_string(i), std::move(text), label, std::nullopt});
    }
    return d;
}

}  // namespace rdaug
