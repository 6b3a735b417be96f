#include "rdaug/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rdaug/augment.hpp"
#include "rdaug/checkpoint.hpp"
#include "rdaug/corpus.hpp"
#include "rdaug/error.hpp"
#include "rdaug/hash.hpp"
#include "rdaug/preprocess.hpp"
#include "rdaug/synthetic.hpp"
#include "rdaug/trainer.hpp"

namespace rdaug::cli {

namespace {

namespace fs = std::filesystem;

struct PreprocessArgs {
    std::string input;
    std::string output;
    bool drop_retweets = false;
};

struct AugmentArgs {
    std::string input;
    std::string output;
    std::string config;
    std::uint64_t seed = 0;
    int threads = 0;
};

struct TrainArgs {
    std::string train;
    std::string val;
    std::string out_dir;
    int epochs = 10;
    double lr = 5e-5;
    int batch_size = 32;
    std::size_t max_len = 128;
    bool rdrop = false;
    double alpha = 1.0;
    double oversample_to = 0.5;
    std::uint64_t seed = 0;
    int checkpoint_every = 200;
    std::size_t hash_buckets = 65536;
    std::size_t embed_dim = 32;
    std::size_t hidden_dim = 64;
    double dropout = 0.1;
    int threads = 0;
    bool save_every = false;
};

struct EvaluateArgs {
    std::string model;
    std::string data;
    std::string report;
};

struct PredictArgs {
    std::string model;
    std::string text;
};

struct SynthArgs {
    std::string output;
    std::size_t size = 2000;
    double positive_rate = 0.2;
    std::uint64_t seed = 0;
    std::string id_prefix = "syn";
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
}

void require_readable(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path + " for reading");
    }
}

int do_preprocess(const PreprocessArgs& a, std::ostream& out) {
    const auto d = load_tsv(a.input);
    const auto processed = preprocess_dataset(d, a.drop_retweets);
    save_tsv(a.output, processed);
    out << "preprocessed " << processed.size() << " of " << d.size() << " examples -> " << a.output << '\n';
    return kOk;
}

int do_augment(const AugmentArgs& a, std::ostream& out, std::ostream& err) {
    const auto d = load_dataset(a.input);
    if (d.empty()) {
        throw ValueError(a.input + ": cannot augment an empty dataset");
    }
    auto cfg = load_augmentation_config(a.config);
    cfg.seed = a.seed;
    const auto res = load_resources(cfg);
    const auto result = augment_dataset(d, cfg, res, a.threads);
    save_jsonl(a.output, result.data);
    for (const auto& msg : result.warnings.messages) {
        err << "warning: skipped " << msg << '\n';
    }
    out << "augmented " << d.size() << " examples -> " << result.data.size() << " (" << result.warnings.skipped
        << " copies skipped) -> " << a.output << '\n';
    return kOk;
}

int do_train(const TrainArgs& a, std::ostream& out) {
    auto train_set = load_dataset(a.train);
    const auto val_set = load_dataset(a.val);
    if (train_set.empty() || val_set.empty()) {
        throw ValueError("training and validation sets must be non-empty");
    }
    if (a.oversample_to > 0.0) {
        const auto before = train_set.size();
        train_set = oversample(train_set, a.oversample_to, stable_hash(a.seed, "oversample"));
        out << "oversampled " << before << " -> " << train_set.size() << " examples (positive fraction "
            << positive_fraction(train_set) << ")\n";
    }

    ModelConfig mcfg;
    mcfg.hash_buckets = a.hash_buckets;
    mcfg.embed_dim = a.embed_dim;
    mcfg.hidden_dim = a.hidden_dim;
    mcfg.dropout_p = a.dropout;
    mcfg.max_seq_len = a.max_len;

    TrainConfig tcfg;
    tcfg.epochs = a.epochs;
    tcfg.lr = a.lr;
    tcfg.batch_size = a.batch_size;
    tcfg.checkpoint_every_steps = a.checkpoint_every;
    tcfg.rdrop_enabled = a.rdrop;
    tcfg.rdrop.alpha = a.alpha;
    tcfg.seed = a.seed;
    tcfg.threads = a.threads;

    const fs::path dir(a.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }

    const auto sink = [&](const Checkpoint& ckpt, const CheckpointRecord& rec, bool is_best) {
        out << "step " << rec.step << (rec.final_eval ? " (final)" : "") << ": train_loss "
            << std::setprecision(6) << rec.train_loss << " val P " << rec.val.precision << " R " << rec.val.recall
            << " F1 " << rec.val.f1 << (is_best ? " *" : "") << '\n';
        if (is_best) {
            save_checkpoint(dir / "best.json", ckpt);
        }
        if (a.save_every && !rec.final_eval) {
            save_checkpoint(dir / ("step-" + std::to_string(rec.step) + ".json"), ckpt);
        }
    };
    const auto result = train(train_set, val_set, mcfg, tcfg, sink);

    std::ofstream log(dir / "trainlog.jsonl", std::ios::binary | std::ios::trunc);
    if (!log) {
        throw IoError("cannot write " + (dir / "trainlog.jsonl").string());
    }
    write_trainlog_jsonl(log, result.log);

    nlohmann::ordered_json summary;
    summary["best_step"] = result.log.best_step;
    summary["best_val_f1"] = result.log.best_val_f1;
    summary["total_steps"] = result.log.total_steps;
    summary["cadence_checkpoints"] = result.log.cadence_checkpoints();
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    out << "best val F1 " << result.log.best_val_f1 << " at step " << result.log.best_step << " -> "
        << (dir / "best.json").string() << '\n';
    return kOk;
}

int do_evaluate(const EvaluateArgs& a, std::ostream& out) {
    require_readable(a.data);
    const auto ckpt = load_checkpoint(a.model);
    const auto data = load_dataset(a.data);
    if (data.empty()) {
        throw ValueError(a.data + ": cannot evaluate on an empty dataset");
    }
    const auto m = evaluate(ckpt, data);
    const auto report = metrics_to_json(m);
    if (!a.report.empty()) {
        write_text(a.report, report + "\n");
    }
    out << report << '\n';
    return kOk;
}

int do_predict(const PredictArgs& a, std::ostream& out) {
    const auto ckpt = load_checkpoint(a.model);
    const auto p = predict(ckpt.params, ckpt.config, a.text);
    out << "label " << p.label << '\n'
        << std::setprecision(17) << "p_negative " << p.probs[0] << '\n'
        << "p_positive " << p.probs[1] << '\n';
    return kOk;
}

int do_synth(const SynthArgs& a, std::ostream& out) {
    const auto d = generate_synthetic({a.size, a.positive_rate, a.seed, a.id_prefix});
    save_tsv(a.output, d);
    out << "wrote " << d.size() << " examples (" << count_positives(d) << " positive) -> " << a.output << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tweet diagnosis classification pipeline: normalization, augmentation, R-drop training"};
    app.name("rdaug");
    app.require_subcommand(1);

    PreprocessArgs pre;
    auto* pre_cmd = app.add_subcommand("preprocess", "Normalize the text column of a TSV dataset");
    pre_cmd->add_option("--input", pre.input, "Input TSV (tweet_id, text, label)")->required();
    pre_cmd->add_option("--output", pre.output, "Output TSV")->required();
    pre_cmd->add_flag("--drop-retweets", pre.drop_retweets, "Drop examples starting with a retweet marker");

    AugmentArgs aug;
    auto* aug_cmd = app.add_subcommand("augment", "Append augmented copies and write JSONL");
    aug_cmd->add_option("--input", aug.input, "Input dataset (TSV, or JSONL by extension)")->required();
    aug_cmd->add_option("--output", aug.output, "Output JSONL")->required();
    aug_cmd->add_option("--config", aug.config, "Augmentation config JSON")->required();
    aug_cmd->add_option("--seed", aug.seed, "Seed; overrides the config's seed")->required();
    aug_cmd->add_option("--threads", aug.threads, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);

    TrainArgs tr;
    auto* tr_cmd = app.add_subcommand("train", "Train the classifier and keep the best checkpoint by val F1");
    tr_cmd->add_option("--train", tr.train, "Training set (TSV or JSONL)")->required();
    tr_cmd->add_option("--val", tr.val, "Validation set (TSV or JSONL)")->required();
    tr_cmd->add_option("--out-dir", tr.out_dir, "Directory for best.json, trainlog.jsonl, summary.json")->required();
    tr_cmd->add_option("--epochs", tr.epochs, "Epochs")->capture_default_str()->check(CLI::PositiveNumber);
    tr_cmd->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str()->check(CLI::PositiveNumber);
    tr_cmd->add_option("--batch-size", tr.batch_size, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);
    tr_cmd->add_option("--max-len", tr.max_len, "Maximum ids per example")->capture_default_str()->check(
        CLI::PositiveNumber);
    tr_cmd->add_flag("--rdrop", tr.rdrop, "Enable R-drop (two dropout passes plus bidirectional KL)");
    tr_cmd->add_option("--alpha", tr.alpha, "KL weight for R-drop")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    tr_cmd->add_option("--oversample-to", tr.oversample_to, "Target positive fraction; 0 disables")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 0.999999));
    tr_cmd->add_option("--seed", tr.seed, "Seed for init, shuffling, dropout and oversampling")->required();
    tr_cmd->add_option("--checkpoint-every", tr.checkpoint_every, "Evaluate every N steps")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    tr_cmd->add_option("--hash-buckets", tr.hash_buckets, "Embedding table rows")->capture_default_str()->check(
        CLI::PositiveNumber);
    tr_cmd->add_option("--embed-dim", tr.embed_dim, "Embedding width")->capture_default_str()->check(
        CLI::PositiveNumber);
    tr_cmd->add_option("--hidden-dim", tr.hidden_dim, "Hidden layer width")->capture_default_str()->check(
        CLI::PositiveNumber);
    tr_cmd->add_option("--dropout", tr.dropout, "Dropout probability")->capture_default_str()->check(
        CLI::Range(0.0, 0.999999));
    tr_cmd->add_option("--threads", tr.threads, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
    tr_cmd->add_flag("--save-every", tr.save_every, "Also write step-N.json at every cadence checkpoint");

    EvaluateArgs ev;
    auto* ev_cmd = app.add_subcommand("evaluate", "Score a checkpoint on a labeled dataset");
    ev_cmd->add_option("--model", ev.model, "Checkpoint JSON")->required();
    ev_cmd->add_option("--data", ev.data, "Dataset (TSV or JSONL)")->required();
    ev_cmd->add_option("--report", ev.report, "Write the metrics JSON here as well");

    PredictArgs pr;
    auto* pr_cmd = app.add_subcommand("predict", "Classify one text");
    pr_cmd->add_option("--model", pr.model, "Checkpoint JSON")->required();
    pr_cmd->add_option("--text", pr.text, "Raw tweet text")->required();

    SynthArgs sy;
    auto* sy_cmd = app.add_subcommand("synth", "Write a synthetic labeled tweet corpus as TSV");
    sy_cmd->add_option("--output", sy.output, "Output TSV")->required();
    sy_cmd->add_option("--size", sy.size, "Number of examples")->capture_default_str();
    sy_cmd->add_option("--positive-rate", sy.positive_rate, "Fraction of positives")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sy_cmd->add_option("--seed", sy.seed, "Seed")->required();
    sy_cmd->add_option("--id-prefix", sy.id_prefix, "Prefix for generated ids")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kUsage;
    }

    try {
        if (*pre_cmd) {
            return do_preprocess(pre, out);
        }
        if (*aug_cmd) {
            return do_augment(aug, out, err);
        }
        if (*tr_cmd) {
            return do_train(tr, out);
        }
        if (*ev_cmd) {
            return do_evaluate(ev, out);
        }
        if (*pr_cmd) {
            return do_predict(pr, out);
        }
        if (*sy_cmd) {
            return do_synth(sy, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const ValueError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const UndefinedStatistic& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const ImbalanceError& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}

}  // namespace rdaug::cli
