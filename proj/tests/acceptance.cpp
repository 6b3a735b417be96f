// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "rdaug/augment.hpp"
#include "rdaug/corpus.hpp"
#include "rdaug/hash.hpp"
#include "rdaug/loss.hpp"
#include "rdaug/metrics.hpp"
#include "rdaug/preprocess.hpp"
#include "rdaug/synthetic.hpp"
#include "rdaug/trainer.hpp"

using namespace rdaug;

namespace {

// Tolerances and sizes.
constexpr double kF1Tolerance = 0.003;
constexpr double kFdStep = 1e-5;
constexpr double kFdRelTol = 1e-4;
constexpr double kFdAbsTol = 1e-7;
constexpr double kFdSmallAnalytic = 1e-6;
constexpr int kFdCoordinates = 120;
constexpr int kLossSamples = 10000;
constexpr double kLossTol = 1e-12;
constexpr std::size_t kAugCorpus = 1000;
constexpr int kAugSeeds = 10;
constexpr int kUnicodeStrings = 10000;
constexpr double kE2EMinF1 = 0.95;
constexpr double kE2EMedianSlack = 0.01;
constexpr double kE2EMaxSeconds = 300.0;
constexpr int kSignificantDigits = 12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Recorder {
public:
    void fail(const std::string& what) {
        if (failures_ < 5) {
            notes_ += (notes_.empty() ? "" : "; ") + what;
        }
        ++failures_;
    }
    void expect(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
    Outcome outcome(const std::string& summary) const {
        if (failures_ == 0) return {true, summary};
        return {false, summary + " | " + std::to_string(failures_) + " failure(s): " + notes_};
    }

private:
    std::size_t failures_ = 0;
    std::string notes_;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome metric_consistency() {
    struct Row {
        const char* name;
        double p, r, f1;
    };
    const Row rows[] = {
        {"val +aug", 0.8593, 0.9649, 0.9090},
        {"val +aug+rdrop", 0.9003, 0.9473, 0.9230},
        {"test +aug", 0.859, 0.869, 0.864},
        {"test +aug+rdrop", 0.888, 0.866, 0.877},
    };
    Recorder rec;
    double worst = 0.0;
    for (const auto& row : rows) {
        const double err = std::abs(f1_from_pr(row.p, row.r) - row.f1);
        worst = std::max(worst, err);
        rec.expect(err <= kF1Tolerance, std::string(row.name) + " off by " + fmt("%.4f", err));
    }
    return rec.outcome("4 rows, max |dF1| = " + fmt("%.5f", worst));
}

Outcome gradient_oracle() {
    ModelConfig cfg;
    cfg.hash_buckets = 256;
    cfg.embed_dim = 8;
    cfg.hidden_dim = 16;
    cfg.dropout_p = 0.1;
    auto params = ClassifierParams::random(cfg, 31);
    for (auto block : params.blocks()) {
        for (auto& v : block) v *= 20.0;
    }
    Rng brng(32);
    for (auto& v : params.b1) v = brng.uniform(-0.2, 0.2);
    for (auto& v : params.b2) v = brng.uniform(-0.2, 0.2);

    const std::vector<std::string> texts = {"i tested positive for covid today", "my flu is bad and i feel sick",
                                            "got diagnosed with corona last week", "covid covid everywhere"};
    const std::pair<std::uint64_t, std::uint64_t> seeds{1001, 2002};
    Recorder rec;
    double worst = 0.0;
    int checked = 0;
    for (double alpha : {0.0, 1.0}) {
        Rng pick(static_cast<std::uint64_t>(alpha) + 40);
        for (int n = 0; n < kFdCoordinates; ++n) {
            const auto& text = texts[pick.below(texts.size())];
            const auto ids = tokenize(text, cfg);
            const int label = static_cast<int>(pick.below(2));
            const auto g = rdrop_grad(params, cfg, ids, label, seeds, {alpha, 1e-12}).grad.to_dense(params);
            const auto gb = g.blocks();
            const std::size_t block = pick.below(5);
            std::size_t idx = pick.below(gb[block].size());
            if (block == 0) {
                idx = ids[pick.below(ids.size())] * cfg.embed_dim + pick.below(cfg.embed_dim);
            }
            const auto f = [&](const ClassifierParams& p) {
                return oracle::rdrop_total(p, ids, label, cfg.dropout_p, seeds.first, seeds.second, alpha);
            };
            const double fd = oracle::central_difference(params, block, idx, kFdStep, f);
            const double an = gb[block][idx];
            ++checked;
            if (std::abs(an) < kFdSmallAnalytic) {
                rec.expect(std::abs(an - fd) <= kFdAbsTol, "abs err " + fmt("%.3g", std::abs(an - fd)));
            } else {
                const double rel = std::abs(an - fd) / std::abs(an);
                worst = std::max(worst, rel);
                rec.expect(rel <= kFdRelTol, "rel err " + fmt("%.3g", rel));
            }
        }
    }
    return rec.outcome(std::to_string(checked) + " coordinates, alpha in {0,1}, max rel err " + fmt("%.2e", worst));
}

Outcome loss_identities() {
    Rng rng(77);
    auto dist = [&] {
        // Mix of interior and near-degenerate distributions.
        const double u = rng.uniform();
        double p0 = rng.uniform();
        if (u < 0.1) p0 = rng.uniform() * 1e-9;
        if (u > 0.9) p0 = 1.0 - rng.uniform() * 1e-9;
        return ProbDist{{p0, 1.0 - p0}};
    };
    Recorder rec;
    for (int i = 0; i < kLossSamples; ++i) {
        const auto p = dist();
        const auto q = dist();
        const int y = static_cast<int>(rng.below(2));
        const double alpha = rng.uniform(0.0, 5.0);
        rec.expect(kl_div(p, q) >= 0.0, "KL negative");
        rec.expect(kl_div(p, p) == 0.0, "KL(p,p) != 0");
        const auto a = rdrop_loss(p, q, y, {alpha, 1e-12});
        const auto b = rdrop_loss(q, p, y, {alpha, 1e-12});
        rec.expect(a.kl_bidir == b.kl_bidir, "bidirectional KL not symmetric");
        rec.expect(std::abs(a.total - b.total) <= kLossTol * std::max(1.0, std::abs(a.total)), "total not symmetric");
        const auto same = rdrop_loss(p, p, y, {alpha, 1e-12});
        rec.expect(same.total == 2.0 * cross_entropy(p, y), "p1=p2 total != 2 CE");
        const auto zero = rdrop_loss(p, q, y, {0.0, 1e-12});
        const double lin = zero.total + alpha * zero.kl_bidir;
        rec.expect(std::abs(a.total - lin) <= kLossTol * std::max(1.0, std::abs(a.total)), "not linear in alpha");
        const auto two = rdrop_loss(p, q, y, {2.0 * alpha, 1e-12});
        rec.expect(std::abs((two.total - zero.total) - 2.0 * (a.total - zero.total)) <=
                       kLossTol * std::max(1.0, std::abs(two.total)),
                   "alpha scaling");
    }
    return rec.outcome(std::to_string(kLossSamples) + " random distribution pairs");
}

std::vector<std::string> tokens(const std::string& s) { return split_whitespace(s); }

Outcome augmentation_invariants() {
    SyntheticConfig sc;
    sc.size = kAugCorpus;
    sc.seed = 404;
    const auto corpus = preprocess_dataset(generate_synthetic(sc));
    AugmentationConfig base;
    base.enabled.assign(std::begin(kAllAugmenters), std::end(kAllAugmenters));
    const auto res = load_resources(base);
    const auto& classes = res.classes;

    AugmentResources identity = res;
    identity.forward = std::make_shared<PhraseTableTranslator>(PhraseTable{});
    identity.reverse = std::make_shared<PhraseTableTranslator>(PhraseTable{});

    Recorder rec;
    std::size_t reserved_hits = 0;
    std::size_t synonym_changes = 0;
    for (int s = 0; s < kAugSeeds; ++s) {
        auto cfg = base;
        cfg.seed = 1000 + static_cast<std::uint64_t>(s);
        const auto out = augment_dataset(corpus, cfg, res, 1);
        const auto again = augment_dataset(corpus, cfg, res, 4);
        rec.expect(out.warnings.skipped == 0, "offline translator skipped copies");
        rec.expect(out.data.size() == corpus.size() * 5, "unexpected output size");
        std::ostringstream a, b;
        write_jsonl(a, out.data);
        write_jsonl(b, again.data);
        rec.expect(a.str() == b.str(), "output depends on thread count");

        const std::size_t n = corpus.size();
        for (std::size_t k = 0; k < 4; ++k) {
            const auto aug = kAllAugmenters[k];
            for (std::size_t i = 0; i < n; ++i) {
                const auto& src = corpus[i];
                const auto& copy = out.data[n * (k + 1) + i];
                rec.expect(copy.label == src.label, "label changed");
                rec.expect(copy.provenance && copy.provenance->source_id == src.id, "bad provenance");
                const auto st = tokens(src.text);
                const auto ct = tokens(copy.text);
                if (aug == Augmenter::synonym || aug == Augmenter::reserved) {
                    rec.expect(st.size() == ct.size(), "token count changed");
                    if (st.size() != ct.size()) continue;
                }
                if (aug == Augmenter::synonym && copy.text != src.text) ++synonym_changes;
                if (aug == Augmenter::reserved) {
                    bool any = false;
                    for (std::size_t t = 0; t < st.size(); ++t) {
                        const auto cls = classes.class_of(st[t]);
                        if (!cls) {
                            rec.expect(ct[t] == st[t], "non-reserved token changed");
                            continue;
                        }
                        any = true;
                        rec.expect(classes.class_of(ct[t]) == cls, "reserved token left its class");
                        rec.expect(ct[t] != st[t], "reserved token unchanged");
                    }
                    if (any) {
                        ++reserved_hits;
                        rec.expect(copy.text != src.text, "reserved output equals input");
                    }
                }
            }
        }

        for (std::size_t i = 0; i < n; i += 7) {
            rec.expect(apply_augmenter(Augmenter::backtranslate, corpus[i].text, cfg, identity, cfg.seed) ==
                           corpus[i].text,
                       "identity tables changed text");
        }
    }
    rec.expect(reserved_hits > 0, "corpus exercised no reserved tokens");
    rec.expect(synonym_changes > 0, "synonym augmenter never fired");
    return rec.outcome(std::to_string(kAugCorpus) + " examples x " + std::to_string(kAugSeeds) + " seeds, " +
                       std::to_string(reserved_hits) + " reserved rewrites, " + std::to_string(synonym_changes) +
                       " synonym rewrites");
}

void append_utf8(std::string& s, std::uint32_t cp) {
    if (cp < 0x80) {
        s.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

Outcome normalization() {
    Recorder rec;
    struct Golden {
        std::function<std::string(std::string_view)> stage;
        const char* in;
        const char* out;
    };
    const Golden goldens[] = {
        {strip_urls, "see https://t.co/x now", "see  now"},
        {strip_urls, "no links here", "no links here"},
        {strip_urls, "www.a.com and http://b", " and "},
        {strip_retweet_and_mentions, "RT @bob: i tested positive", "  i tested positive"},
        {strip_retweet_and_mentions, "email me at a@b", "email me at a@b"},
        {strip_retweet_and_mentions, "@a @b hi", "  hi"},
        {strip_non_ascii, "covid \xF0\x9F\x98\xB7 bad", "covid  bad"},
        {strip_non_ascii, "pure ascii", "pure ascii"},
        {strip_non_ascii, "na\xC3\xAFve", "nave"},
        {space_punctuation, "positive!!", "positive !  !"},
        {space_punctuation, "a,b", "a , b"},
        {space_punctuation, "no punct", "no punct"},
        {normalize, "RT @u: I tested POSITIVE!! https://t.co/x", "i tested positive ! !"},
        {normalize, "  hello   world  ", "hello world"},
        {normalize, "", ""},
    };
    for (const auto& g : goldens) {
        const auto got = g.stage(g.in);
        rec.expect(got == g.out, std::string("golden '") + g.in + "' -> '" + got + "'");
    }

    Rng rng(5);
    const std::string ascii_bias = "RTrt@:/.!_ wwhtps#,";
    for (int i = 0; i < kUnicodeStrings; ++i) {
        std::string s;
        const auto len = rng.below(40);
        for (std::size_t k = 0; k < len; ++k) {
            const double u = rng.uniform();
            if (u < 0.35) {
                s.push_back(ascii_bias[rng.below(ascii_bias.size())]);
            } else if (u < 0.6) {
                s.push_back(static_cast<char>(0x20 + rng.below(0x5F)));
            } else if (u < 0.65) {
                s += rng.uniform() < 0.5 ? "http://" : "www.";
            } else if (u < 0.7) {
                s.push_back("\t\n\r"[rng.below(3)]);
            } else {
                std::uint32_t cp;
                do {
                    cp = static_cast<std::uint32_t>(0x80 + rng.below(0x10FFFF - 0x80));
                } while (cp >= 0xD800 && cp <= 0xDFFF);
                append_utf8(s, cp);
            }
        }
        const auto once = normalize(s);
        rec.expect(normalize(once) == once, "not idempotent");
        rec.expect(std::all_of(once.begin(), once.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; }),
                   "non-ASCII output");
        rec.expect(once.find("  ") == std::string::npos, "doubled space");
        rec.expect(once.empty() || (once.front() != ' ' && once.back() != ' '), "untrimmed");
    }
    return rec.outcome(std::to_string(std::size(goldens)) + " golden examples, " + std::to_string(kUnicodeStrings) +
                       " random Unicode strings");
}

Dataset synth(std::size_t n, std::uint64_t seed, const std::string& prefix, double positive_rate = 0.2) {
    SyntheticConfig sc;
    sc.size = n;
    sc.positive_rate = positive_rate;
    sc.seed = seed;
    sc.id_prefix = prefix;
    return generate_synthetic(sc);
}

Outcome checkpoint_cadence() {
    const auto train_set = synth(6400, 606, "tr", 0.5);
    const auto val_set = synth(400, 607, "va");
    TrainConfig t;
    t.epochs = 2;
    t.seed = 608;
    const auto r = train(train_set, val_set, ModelConfig{}, t);
    Recorder rec;
    std::vector<std::uint64_t> cadence;
    double best = -1.0;
    std::size_t finals = 0;
    for (const auto& c : r.log.records) {
        if (c.final_eval) {
            ++finals;
        } else {
            cadence.push_back(c.step);
        }
        best = std::max(best, c.val.f1);
    }
    rec.expect(cadence == std::vector<std::uint64_t>{200, 400}, "cadence steps wrong");
    rec.expect(r.log.cadence_checkpoints() == 2, "cadence count != 2");
    rec.expect(finals == 1 && r.log.records.back().final_eval, "final evaluation missing");
    rec.expect(r.log.best_val_f1 == best, "best is not the max recorded F1");
    rec.expect(evaluate(r.best, val_set).f1 == best, "returned checkpoint does not reproduce best F1");
    return rec.outcome(std::to_string(r.log.total_steps) + " steps, cadence at 200/400 + final, best F1 " +
                       fmt("%.4f", best) + " at step " + std::to_string(r.log.best_step));
}

struct PipelineRun {
    double best_f1 = 0.0;
    double seconds = 0.0;
    std::string log_digest;
    std::string augmented;
};

std::string digest(const TrainLog& log) {
    std::ostringstream os;
    os.precision(kSignificantDigits - 1);
    os << std::scientific;
    for (const auto& r : log.records) {
        os << r.step << ' ' << r.final_eval << ' ' << r.train_loss << ' ' << r.val.precision << ' ' << r.val.recall
           << ' ' << r.val.f1 << ' ' << r.val.tp << ' ' << r.val.fp << ' ' << r.val.fn << ' ' << r.val.tn << '\n';
    }
    os << log.best_step << ' ' << log.best_val_f1 << ' ' << log.total_steps << '\n';
    return os.str();
}

PipelineRun run_pipeline(std::uint64_t seed, bool aug_rdrop) {
    const auto start = std::chrono::steady_clock::now();
    const auto train_raw = synth(2000, 7001, "tr");
    const auto val_raw = synth(400, 7002, "va");
    const auto val_set = preprocess_dataset(val_raw);
    auto train_set = oversample(preprocess_dataset(train_raw), 0.5, stable_hash(seed, "oversample"));
    PipelineRun run;
    if (aug_rdrop) {
        AugmentationConfig cfg;
        cfg.enabled.assign(std::begin(kAllAugmenters), std::end(kAllAugmenters));
        cfg.seed = seed;
        train_set = augment_dataset(train_set, cfg, load_resources(cfg)).data;
        std::ostringstream os;
        write_jsonl(os, train_set);
        run.augmented = os.str();
    }
    TrainConfig t;
    t.rdrop_enabled = aug_rdrop;
    t.seed = seed;
    const auto r = train(train_set, val_set, ModelConfig{}, t);
    run.best_f1 = r.log.best_val_f1;
    run.log_digest = digest(r.log);
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

double median3(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[1];
}

std::vector<PipelineRun> g_aug_runs;

Outcome end_to_end() {
    const std::uint64_t seeds[] = {11, 22, 33};
    Recorder rec;
    std::vector<double> aug_f1, base_f1;
    double slowest = 0.0;
    for (auto s : seeds) {
        auto a = run_pipeline(s, true);
        const auto b = run_pipeline(s, false);
        std::printf("  seed %llu: aug+rdrop F1 %.4f (%.1fs), baseline F1 %.4f (%.1fs)\n",
                    static_cast<unsigned long long>(s), a.best_f1, a.seconds, b.best_f1, b.seconds);
        std::fflush(stdout);
        slowest = std::max({slowest, a.seconds, b.seconds});
        rec.expect(a.seconds < kE2EMaxSeconds, "pipeline over time budget");
        rec.expect(a.best_f1 >= kE2EMinF1, "aug+rdrop best F1 " + fmt("%.4f", a.best_f1) + " below threshold");
        aug_f1.push_back(a.best_f1);
        base_f1.push_back(b.best_f1);
        g_aug_runs.push_back(std::move(a));
    }
    const double ma = median3(aug_f1);
    const double mb = median3(base_f1);
    rec.expect(ma >= mb - kE2EMedianSlack, "aug+rdrop median below baseline median");
    return rec.outcome("median F1 aug+rdrop " + fmt("%.4f", ma) + " vs baseline " + fmt("%.4f", mb) +
                       ", slowest run " + fmt("%.1f", slowest) + "s");
}

Outcome determinism() {
    Recorder rec;
    if (g_aug_runs.empty()) {
        rec.fail("end-to-end runs unavailable");
        return rec.outcome("");
    }
    const auto& first = g_aug_runs.front();
    const auto again = run_pipeline(11, true);
    rec.expect(again.log_digest == first.log_digest, "train log differs at 12 significant digits");
    rec.expect(again.augmented == first.augmented, "augmented corpus differs");
    rec.expect(!first.augmented.empty(), "no augmented corpus captured");
    return rec.outcome("seed 11 repeated: train log and " + std::to_string(first.augmented.size()) +
                       "-byte augmented corpus identical");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Criterion criteria[] = {
        {1, "metric consistency", metric_consistency},
        {2, "gradient oracle", gradient_oracle},
        {3, "loss identities", loss_identities},
        {4, "augmentation invariants", augmentation_invariants},
        {5, "normalization", normalization},
        {6, "checkpoint cadence and selection", checkpoint_cadence},
        {7, "end-to-end desk-scale experiment", end_to_end},
        {8, "determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d [%s] %s: %s (%.2fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
