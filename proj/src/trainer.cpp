#include "rdaug/trainer.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "rdaug/error.hpp"
#include "rdaug/hash.hpp"
#include "rdaug/kernels.hpp"

namespace rdaug {

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw ContractError("epochs must be >= 1");
    }
    if (!(lr > 0.0)) {
        throw ContractError("learning rate must be > 0");
    }
    if (batch_size < 1) {
        throw ContractError("batch size must be >= 1");
    }
    if (checkpoint_every_steps < 1) {
        throw ContractError("checkpoint interval must be >= 1");
    }
    rdrop.validate();
}

std::size_t TrainLog::cadence_checkpoints() const {
    std::size_t n = 0;
    for (const auto& r : records) {
        n += r.final_eval ? 0 : 1;
    }
    return n;
}

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    Rng rng(stable_hash(seed, static_cast<std::uint64_t>(epoch)));
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    return order;
}

std::uint64_t step_seed(std::uint64_t seed, std::uint64_t step) { return stable_hash(seed, "step", step); }

std::uint64_t init_seed(std::uint64_t seed) { return stable_hash(seed, "init"); }

namespace {

Metrics score(const ClassifierParams& params, const ModelConfig& cfg, const std::vector<EncodedExample>& data,
              int threads) {
    const auto preds = predict_batch(params, cfg, data, threads);
    std::vector<int> labels(preds.size());
    std::vector<int> golds(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) {
        labels[i] = preds[i].label;
        golds[i] = data[i].label;
    }
    return precision_recall_f1(labels, golds);
}

}  // namespace

TrainResult train(const Dataset& train_set, const Dataset& val_set, const ModelConfig& mcfg, const TrainConfig& tcfg,
                  const CheckpointSink& sink) {
    mcfg.validate();
    tcfg.validate();
    if (train_set.empty() || val_set.empty()) {
        throw ContractError("training and validation sets must be non-empty");
    }

    const auto train_ids = encode_dataset(train_set, mcfg, tcfg.threads);
    const auto val_ids = encode_dataset(val_set, mcfg, tcfg.threads);

    Checkpoint current{mcfg, ClassifierParams::random(mcfg, init_seed(tcfg.seed)), 0, 0.0};
    auto adam = AdamState::zeros_like(current.params);
    const AdamConfig acfg{tcfg.lr, tcfg.adam_beta1, tcfg.adam_beta2, tcfg.adam_eps};
    const Objective objective{tcfg.rdrop_enabled, tcfg.rdrop};

    TrainResult result;
    bool have_best = false;
    double window_loss = 0.0;
    std::size_t window_steps = 0;
    double last_train_loss = 0.0;
    std::uint64_t step = 0;

    auto record = [&](bool final_eval) {
        CheckpointRecord r;
        r.step = step;
        if (window_steps > 0) {
            last_train_loss = window_loss / static_cast<double>(window_steps);
        }
        r.train_loss = last_train_loss;
        r.val = score(current.params, mcfg, val_ids, tcfg.threads);
        r.final_eval = final_eval;
        window_loss = 0.0;
        window_steps = 0;

        current.step = step;
        current.val_f1 = r.val.f1;
        const bool is_best = !have_best || r.val.f1 > result.log.best_val_f1;
        if (is_best) {
            have_best = true;
            result.best = current;
            result.log.best_step = step;
            result.log.best_val_f1 = r.val.f1;
        }
        result.log.records.push_back(r);
        if (sink) {
            sink(current, r, is_best);
        }
    };

    const auto batch_size = static_cast<std::size_t>(tcfg.batch_size);
    for (int epoch = 0; epoch < tcfg.epochs; ++epoch) {
        const auto order = epoch_order(train_ids.size(), tcfg.seed, epoch);
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            const auto len = std::min(batch_size, order.size() - start);
            const std::span<const std::size_t> batch(order.data() + start, len);
            const auto bg = batch_gradient(current.params, mcfg, train_ids, batch, objective,
                                           step_seed(tcfg.seed, step), tcfg.threads);
            adam_step(current.params, bg.grad, adam, acfg, tcfg.threads);
            ++step;
            window_loss += bg.mean_loss.total;
            ++window_steps;
            if (step % static_cast<std::uint64_t>(tcfg.checkpoint_every_steps) == 0) {
                record(false);
            }
        }
    }
    result.log.total_steps = step;
    record(true);
    return result;
}

Metrics evaluate(const Checkpoint& ckpt, const Dataset& data, int threads) {
    if (!ckpt.params.matches(ckpt.config)) {
        throw FormatError("checkpoint parameters do not match its model config");
    }
    if (data.empty()) {
        throw ContractError("cannot evaluate on an empty dataset");
    }
    return score(ckpt.params, ckpt.config, encode_dataset(data, ckpt.config, threads), threads);
}

void write_trainlog_jsonl(std::ostream& out, const TrainLog& log) {
    for (const auto& r : log.records) {
        nlohmann::ordered_json j;
        j["step"] = r.step;
        j["final"] = r.final_eval;
        j["train_loss"] = r.train_loss;
        j["val"] = {{"precision", r.val.precision}, {"recall", r.val.recall}, {"f1", r.val.f1},
                    {"tp", r.val.tp},               {"fp", r.val.fp},         {"fn", r.val.fn},
                    {"tn", r.val.tn}};
        out << j.dump() << '\n';
    }
}

}  // namespace rdaug
