#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include "rdaug/checkpoint.hpp"
#include "rdaug/cli.hpp"
#include "rdaug/corpus.hpp"

namespace fs = std::filesystem;
using namespace rdaug;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rdaug_cli_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};
}  // namespace

TEST_CASE("help exits 0 for the program and every subcommand") {
    CHECK(run({"--help"}).code == cli::kOk);
    for (const char* sub : {"preprocess", "augment", "train", "evaluate", "predict", "synth"}) {
        CAPTURE(sub);
        const auto r = run({sub, "--help"});
        CHECK(r.code == cli::kOk);
        CHECK(r.out.find("--") != std::string::npos);
    }
}

TEST_CASE("train help shows the default hyperparameters") {
    const auto r = run({"train", "--help"});
    CHECK(r.out.find("10") != std::string::npos);
    CHECK(r.out.find("5e-05") != std::string::npos);
    CHECK(r.out.find("32") != std::string::npos);
    CHECK(r.out.find("128") != std::string::npos);
    CHECK(r.out.find("200") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run({"train", "--bogus"}).code == cli::kUsage);
    CHECK(run({"predict", "--text", "hi"}).code == cli::kUsage);
    CHECK(run({"augment", "--input", "a", "--output", "b", "--config", "c"}).code == cli::kUsage);
    CHECK(run({"nonsense"}).code == cli::kUsage);
}

TEST_CASE("missing or malformed data exits 2") {
    TempDir tmp;
    CHECK(run({"preprocess", "--input", tmp / "absent.tsv", "--output", tmp / "o.tsv"}).code == cli::kData);
    std::ofstream(tmp / "bad.tsv") << "id\ttext\n1\thello\n";
    const auto r = run({"preprocess", "--input", tmp / "bad.tsv", "--output", tmp / "o.tsv"});
    CHECK(r.code == cli::kData);
    CHECK(r.err.find("error") != std::string::npos);
    std::ofstream(tmp / "bad.json") << "{";
    CHECK(run({"predict", "--model", tmp / "bad.json", "--text", "x"}).code == cli::kData);
}

TEST_CASE("predict with an all-zero checkpoint gives a coin flip") {
    TempDir tmp;
    Checkpoint c;
    c.config.hash_buckets = 32;
    c.config.embed_dim = 2;
    c.config.hidden_dim = 3;
    c.params = ClassifierParams::zeros(c.config);
    save_checkpoint(tmp / "zero.json", c);
    const auto r = run({"predict", "--model", tmp / "zero.json", "--text", "Tested positive today!"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "label 0\np_negative 0.5\np_positive 0.5\n");
}

TEST_CASE("end-to-end pipeline through the CLI") {
    TempDir tmp;
    REQUIRE(run({"synth", "--output", tmp / "train.tsv", "--size", "300", "--seed", "1"}).code == 0);
    REQUIRE(run({"synth", "--output", tmp / "val.tsv", "--size", "100", "--seed", "2", "--id-prefix", "v"}).code ==
            0);
    REQUIRE(run({"preprocess", "--input", tmp / "train.tsv", "--output", tmp / "clean.tsv"}).code == 0);
    const auto clean = load_tsv(tmp / "clean.tsv");
    CHECK(clean.size() == 300);

    std::ofstream(tmp / "aug.json") << R"({"enabled": ["synonym", "reserved", "tense", "backtranslate"]})";
    REQUIRE(run({"augment", "--input", tmp / "clean.tsv", "--output", tmp / "a1.jsonl", "--config", tmp / "aug.json",
                 "--seed", "5", "--threads", "1"})
                .code == 0);
    REQUIRE(run({"augment", "--input", tmp / "clean.tsv", "--output", tmp / "a2.jsonl", "--config", tmp / "aug.json",
                 "--seed", "5", "--threads", "4"})
                .code == 0);
    CHECK(slurp(tmp / "a1.jsonl") == slurp(tmp / "a2.jsonl"));
    CHECK(load_jsonl(tmp / "a1.jsonl").size() == 1500);

    const auto tr = run({"train", "--train", tmp / "a1.jsonl", "--val", tmp / "val.tsv", "--out-dir", tmp / "run",
                         "--epochs", "2", "--lr", "0.01", "--checkpoint-every", "20", "--rdrop", "--seed", "3",
                         "--hash-buckets", "4096", "--embed-dim", "8", "--hidden-dim", "8"});
    REQUIRE(tr.code == 0);
    CHECK(fs::exists(tmp / "run/best.json"));
    CHECK(fs::exists(tmp / "run/trainlog.jsonl"));
    const auto summary = nlohmann::json::parse(slurp(tmp / "run/summary.json"));
    CHECK(summary.at("best_val_f1").get<double>() > 0.9);

    const auto ev = run({"evaluate", "--model", tmp / "run/best.json", "--data", tmp / "val.tsv", "--report",
                         tmp / "report.json"});
    REQUIRE(ev.code == 0);
    const auto report = nlohmann::json::parse(slurp(tmp / "report.json"));
    CHECK(report.at("f1").get<double>() == summary.at("best_val_f1").get<double>());
}

TEST_CASE("the installed binary maps exit codes") {
    const std::string exe = RDAUG_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int rc = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    CHECK(status("--help") == 0);
    CHECK(status("train --nope") == 1);
    CHECK(status("evaluate --model /nonexistent/m.json --data /nonexistent/d.tsv") == 2);
}
