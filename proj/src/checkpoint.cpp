#include "rdaug/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdaug/error.hpp"

namespace rdaug {

namespace {

using json = nlohmann::json;

json matrix(const std::vector<double>& data, std::size_t rows, std::size_t cols) {
    json out = json::array();
    for (std::size_t r = 0; r < rows; ++r) {
        out.push_back(std::vector<double>(data.begin() + static_cast<std::ptrdiff_t>(r * cols),
                                          data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)));
    }
    return out;
}

std::vector<double> read_matrix(const json& j, std::size_t rows, std::size_t cols, const char* name) {
    if (!j.is_array() || j.size() != rows) {
        throw FormatError(std::string("checkpoint tensor ") + name + " has wrong row count");
    }
    std::vector<double> out;
    out.reserve(rows * cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) {
            throw FormatError(std::string("checkpoint tensor ") + name + " has wrong column count");
        }
        for (const auto& v : row) {
            out.push_back(v.get<double>());
        }
    }
    return out;
}

std::vector<double> read_vector(const json& j, std::size_t n, const char* name) {
    if (!j.is_array() || j.size() != n) {
        throw FormatError(std::string("checkpoint tensor ") + name + " has wrong length");
    }
    return j.get<std::vector<double>>();
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ckpt) {
    const auto& p = ckpt.params;
    if (!p.matches(ckpt.config)) {
        throw ContractError("checkpoint parameters do not match its model config");
    }
    nlohmann::ordered_json j;
    j["format_version"] = kCheckpointFormatVersion;
    j["model_config"] = {
        {"hash_buckets", ckpt.config.hash_buckets}, {"embed_dim", ckpt.config.embed_dim},
        {"hidden_dim", ckpt.config.hidden_dim},     {"dropout_p", ckpt.config.dropout_p},
        {"max_seq_len", ckpt.config.max_seq_len},
    };
    nlohmann::ordered_json params;
    params["E"] = matrix(p.embedding, p.buckets, p.embed_dim);
    params["W1"] = matrix(p.w1, p.embed_dim, p.hidden_dim);
    params["b1"] = p.b1;
    params["W2"] = matrix(p.w2, p.hidden_dim, 2);
    params["b2"] = p.b2;
    j["params"] = std::move(params);
    j["step"] = ckpt.step;
    j["val_f1"] = ckpt.val_f1;
    return j.dump();
}

Checkpoint checkpoint_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
    try {
        const auto version = j.at("format_version").get<int>();
        if (version != kCheckpointFormatVersion) {
            throw FormatError("checkpoint format_version " + std::to_string(version) + " is not supported (expected " +
                              std::to_string(kCheckpointFormatVersion) + ")");
        }
        Checkpoint ckpt;
        const auto& mc = j.at("model_config");
        ckpt.config.hash_buckets = mc.at("hash_buckets").get<std::size_t>();
        ckpt.config.embed_dim = mc.at("embed_dim").get<std::size_t>();
        ckpt.config.hidden_dim = mc.at("hidden_dim").get<std::size_t>();
        ckpt.config.dropout_p = mc.at("dropout_p").get<double>();
        ckpt.config.max_seq_len = mc.at("max_seq_len").get<std::size_t>();
        try {
            ckpt.config.validate();
        } catch (const ContractError& e) {
            throw FormatError(std::string("checkpoint model_config: ") + e.what());
        }

        const auto& c = ckpt.config;
        const auto& pj = j.at("params");
        auto& p = ckpt.params;
        p.buckets = c.hash_buckets;
        p.embed_dim = c.embed_dim;
        p.hidden_dim = c.hidden_dim;
        p.embedding = read_matrix(pj.at("E"), c.hash_buckets, c.embed_dim, "E");
        p.w1 = read_matrix(pj.at("W1"), c.embed_dim, c.hidden_dim, "W1");
        p.b1 = read_vector(pj.at("b1"), c.hidden_dim, "b1");
        p.w2 = read_matrix(pj.at("W2"), c.hidden_dim, 2, "W2");
        p.b2 = read_vector(pj.at("b2"), 2, "b2");
        ckpt.step = j.at("step").get<std::uint64_t>();
        ckpt.val_f1 = j.at("val_f1").get<double>();
        return ckpt;
    } catch (const json::exception& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    const auto text = checkpoint_to_json(ckpt);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return checkpoint_from_json(buf.str());
}

}  // namespace rdaug
