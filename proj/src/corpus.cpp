#include "rdaug/corpus.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rdaug/error.hpp"
#include "rdaug/hash.hpp"

namespace rdaug {

namespace {

constexpr std::string_view kHeader = "tweet_id\ttext\tlabel";

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            cols.push_back(line.substr(start));
            return cols;
        }
        cols.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::string where(const std::string& source, std::size_t line_no) {
    return source + ":" + std::to_string(line_no);
}

}  // namespace

Dataset read_tsv(std::istream& in, const std::string& source_name) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError(where(source_name, 1) + ": missing header, expected tweet_id<TAB>text<TAB>label");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kHeader) {
        throw FormatError(where(source_name, 1) + ": bad header '" + line + "'");
    }

    Dataset d;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto cols = split_tabs(line);
        if (cols.size() != 3) {
            throw FormatError(where(source_name, line_no) + ": expected 3 columns, found " +
                              std::to_string(cols.size()));
        }
        if (cols[0].empty()) {
            throw FormatError(where(source_name, line_no) + ": empty tweet_id");
        }
        if (cols[2] != "0" && cols[2] != "1") {
            throw ValueError(where(source_name, line_no) + ": label must be 0 or 1, got '" + cols[2] + "'");
        }
        d.push_back({std::move(cols[0]), std::move(cols[1]), cols[2] == "1" ? 1 : 0, std::nullopt});
    }
    return d;
}

Dataset load_tsv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_tsv(in, path.string());
}

void write_tsv(std::ostream& out, const Dataset& d) {
    out << kHeader << '\n';
    for (const auto& e : d) {
        for (const auto* field : {&e.id, &e.text}) {
            if (field->find_first_of("\t\n\r") != std::string::npos) {
                throw ValueError("example '" + e.id + "': tab or newline cannot be written to TSV");
            }
        }
        out << e.id << '\t' << e.text << '\t' << e.label << '\n';
    }
}

void save_tsv(const std::filesystem::path& path, const Dataset& d) {
    std::ostringstream buf;
    write_tsv(buf, d);
    auto out = open_out(path);
    out << buf.str();
}

Dataset read_jsonl(std::istream& in, const std::string& source_name) {
    Dataset d;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError(where(source_name, line_no) + ": " + e.what());
        }
        try {
            TweetExample ex;
            ex.id = j.at("id").get<std::string>();
            ex.text = j.at("text").get<std::string>();
            const auto label = j.at("label").get<int>();
            if (label != 0 && label != 1) {
                throw ValueError(where(source_name, line_no) + ": label must be 0 or 1");
            }
            ex.label = label;
            if (ex.id.empty()) {
                throw FormatError(where(source_name, line_no) + ": empty id");
            }
            const auto src = j.value("source_id", nlohmann::json());
            const auto aug = j.value("augmenter", nlohmann::json());
            if (src.is_null() != aug.is_null()) {
                throw FormatError(where(source_name, line_no) +
                                  ": source_id and augmenter must be both null or both set");
            }
            if (!src.is_null()) {
                ex.provenance = Provenance{src.get<std::string>(), aug.get<std::string>()};
            }
            d.push_back(std::move(ex));
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(where(source_name, line_no) + ": " + e.what());
        }
    }
    return d;
}

Dataset load_jsonl(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_jsonl(in, path.string());
}

void write_jsonl(std::ostream& out, const Dataset& d) {
    for (const auto& e : d) {
        nlohmann::ordered_json j;
        j["id"] = e.id;
        j["text"] = e.text;
        j["label"] = e.label;
        if (e.provenance) {
            j["source_id"] = e.provenance->source_id;
            j["augmenter"] = e.provenance->augmenter;
        } else {
            j["source_id"] = nullptr;
            j["augmenter"] = nullptr;
        }
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

void save_jsonl(const std::filesystem::path& path, const Dataset& d) {
    std::ostringstream buf;
    write_jsonl(buf, d);
    auto out = open_out(path);
    out << buf.str();
}

Dataset load_dataset(const std::filesystem::path& path) {
    if (path.extension() == ".jsonl") {
        return load_jsonl(path);
    }
    return load_tsv(path);
}

std::size_t count_positives(const Dataset& d) {
    std::size_t n = 0;
    for (const auto& e : d) {
        n += e.label == 1 ? 1 : 0;
    }
    return n;
}

double positive_fraction(const Dataset& d) {
    if (d.empty()) {
        throw UndefinedStatistic("positive fraction of an empty dataset is undefined");
    }
    return static_cast<double>(count_positives(d)) / static_cast<double>(d.size());
}

Dataset oversample(const Dataset& d, double target_pos_fraction, std::uint64_t seed) {
    if (!(target_pos_fraction > 0.0 && target_pos_fraction < 1.0)) {
        throw ContractError("oversample target must lie in (0, 1)");
    }
    std::vector<std::size_t> positives;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].label == 1) {
            positives.push_back(i);
        }
    }
    if (positives.empty() || positives.size() == d.size()) {
        throw ImbalanceError("oversampling needs both classes present (positives: " +
                             std::to_string(positives.size()) + " of " + std::to_string(d.size()) + ")");
    }

    Dataset out = d;
    Rng rng(seed);
    std::size_t pos = positives.size();
    std::size_t k = 0;
    // Same ratio as positive_fraction so the stopping rule and the statistic agree.
    while (static_cast<double>(pos) / static_cast<double>(out.size()) < target_pos_fraction) {
        const auto& src = d[positives[rng.below(positives.size())]];
        ++k;
        out.push_back({src.id + "~os" + std::to_string(k), src.text, src.label, std::nullopt});
        ++pos;
    }
    return out;
}

}  // namespace rdaug
