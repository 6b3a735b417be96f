#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rdaug/adam.hpp"
#include "rdaug/checkpoint.hpp"
#include "rdaug/corpus.hpp"
#include "rdaug/loss.hpp"
#include "rdaug/metrics.hpp"
#include "rdaug/model.hpp"

namespace rdaug {

struct TrainConfig {
    int epochs = 10;
    double lr = 5e-5;
    int batch_size = 32;
    int checkpoint_every_steps = 200;
    bool rdrop_enabled = false;
    RDropConfig rdrop;
    std::uint64_t seed = 0;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    int threads = 0;  // OpenMP threads for the kernels; 0 = runtime default

    void validate() const;
};

struct CheckpointRecord {
    std::uint64_t step = 0;
    double train_loss = 0.0;  // mean batch loss since the previous record
    Metrics val;
    bool final_eval = false;  // the end-of-training evaluation, not a cadence point
};

struct TrainLog {
    std::vector<CheckpointRecord> records;
    std::uint64_t best_step = 0;
    double best_val_f1 = 0.0;
    std::uint64_t total_steps = 0;

    std::size_t cadence_checkpoints() const;
};

struct TrainResult {
    Checkpoint best;
    TrainLog log;
};

// Called at every evaluation with the current parameters and whether they
// are the new best.
using CheckpointSink = std::function<void(const Checkpoint&, const CheckpointRecord&, bool is_best)>;

// Example order for one epoch: Fisher-Yates driven by Rng(stable_hash(seed, epoch)).
std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, int epoch);

std::uint64_t step_seed(std::uint64_t seed, std::uint64_t step);
std::uint64_t init_seed(std::uint64_t seed);

// Mini-batch Adam training. Texts are passed through encode(), so raw and
// normalized inputs give the same ids. Every checkpoint_every_steps steps, and
// once more after the last step, the model is evaluated on val in eval mode.
// The returned checkpoint has the highest validation F1, earliest on ties.
TrainResult train(const Dataset& train_set, const Dataset& val_set, const ModelConfig& mcfg, const TrainConfig& tcfg,
                  const CheckpointSink& sink = {});

// Eval-mode predictions over data, scored against its labels.
Metrics evaluate(const Checkpoint& ckpt, const Dataset& data, int threads = 0);

void write_trainlog_jsonl(std::ostream& out, const TrainLog& log);

}  // namespace rdaug
