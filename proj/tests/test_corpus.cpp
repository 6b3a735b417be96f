#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "rdaug/corpus.hpp"
#include "rdaug/error.hpp"
#include "rdaug/hash.hpp"

using namespace rdaug;

namespace {

Dataset make(std::size_t neg, std::size_t pos) {
    Dataset d;
    for (std::size_t i = 0; i < neg; ++i) {
        d.push_back({"n" + std::to_string(i), "negative text " + std::to_string(i), 0, std::nullopt});
    }
    for (std::size_t i = 0; i < pos; ++i) {
        d.push_back({"p" + std::to_string(i), "positive text " + std::to_string(i), 1, std::nullopt});
    }
    return d;
}

std::string serialize(const Dataset& d) {
    std::ostringstream out;
    write_tsv(out, d);
    return out.str();
}

}  // namespace

TEST_CASE("read_tsv keeps row order") {
    std::istringstream in("tweet_id\ttext\tlabel\n1\tfirst tweet\t0\n2\tsecond tweet\t1\n");
    const auto d = read_tsv(in);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == TweetExample{"1", "first tweet", 0, std::nullopt});
    CHECK(d[1] == TweetExample{"2", "second tweet", 1, std::nullopt});
}

TEST_CASE("read_tsv rejects a bad label and names the line") {
    std::istringstream in("tweet_id\ttext\tlabel\n1\tok\t0\n2\tbad\t2\n");
    try {
        read_tsv(in, "f.tsv");
        FAIL("expected ValueError");
    } catch (const ValueError& e) {
        CHECK(std::string(e.what()).find("f.tsv:3") != std::string::npos);
    }
}

TEST_CASE("read_tsv rejects missing and extra columns") {
    std::istringstream missing("tweet_id\ttext\tlabel\n1\tonly two\n");
    CHECK_THROWS_AS(read_tsv(missing), FormatError);
    std::istringstream extra("tweet_id\ttext\tlabel\n1\ta\t0\textra\n");
    try {
        read_tsv(extra, "x");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("x:2") != std::string::npos);
    }
    std::istringstream header("id\ttext\tlabel\n");
    CHECK_THROWS_AS(read_tsv(header), FormatError);
}

TEST_CASE("header-only file is an empty dataset") {
    std::istringstream in("tweet_id\ttext\tlabel\n");
    CHECK(read_tsv(in).empty());
}

TEST_CASE("load_tsv on a missing file is an IoError") {
    CHECK_THROWS_AS(load_tsv("/nonexistent/file.tsv"), IoError);
}

TEST_CASE("positive_fraction") {
    CHECK(positive_fraction(make(80, 20)) == 0.2);
    CHECK(positive_fraction(make(0, 5)) == 1.0);
    CHECK_THROWS_AS(positive_fraction(Dataset{}), UndefinedStatistic);
}

TEST_CASE("oversample 80/20 to 0.5") {
    const auto d = make(80, 20);
    const auto out = oversample(d, 0.5, 7);
    CHECK(out.size() == 160);
    CHECK(count_positives(out) == 80);
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(out[i] == d[i]);
    }
    for (std::size_t i = d.size(); i < out.size(); ++i) {
        CHECK(out[i].label == 1);
        CHECK(out[i].id.find("~os") != std::string::npos);
    }
}

TEST_CASE("oversample of a balanced set is the identity") {
    const auto d = make(50, 50);
    CHECK(oversample(d, 0.5, 1) == d);
}

TEST_CASE("oversample is reproducible under a seed") {
    const auto d = make(90, 10);
    CHECK(serialize(oversample(d, 0.5, 99)) == serialize(oversample(d, 0.5, 99)));
    CHECK(serialize(oversample(d, 0.5, 99)) != serialize(oversample(d, 0.5, 100)));
}

TEST_CASE("oversample rejects single-class data and bad targets") {
    CHECK_THROWS_AS(oversample(make(10, 0), 0.5, 1), ImbalanceError);
    CHECK_THROWS_AS(oversample(make(0, 10), 0.5, 1), ImbalanceError);
    CHECK_THROWS_AS(oversample(make(10, 1), 1.0, 1), ContractError);
    CHECK_THROWS_AS(oversample(make(10, 1), 0.0, 1), ContractError);
}

TEST_CASE("oversample property: minimal, non-destructive, text multiset preserved") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto neg = 1 + rng.below(60);
        const auto pos = 1 + rng.below(20);
        const double target = 0.05 + 0.9 * rng.uniform();
        const auto d = make(neg, pos);
        const auto out = oversample(d, target, seed);

        CHECK(positive_fraction(out) >= target);
        if (out.size() > d.size()) {
            Dataset shorter(out.begin(), out.end() - 1);
            CHECK(positive_fraction(shorter) < target);
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(out[i] == d[i]);
        }
        std::set<std::string> before, after;
        for (const auto& e : d) before.insert(e.text);
        for (const auto& e : out) after.insert(e.text);
        CHECK(before == after);
    }
}

TEST_CASE("save_tsv then load_tsv is the identity") {
    const auto path = std::filesystem::temp_directory_path() / "rdaug_corpus_roundtrip.tsv";
    auto d = make(3, 2);
    d[0].text = "unicode 😷 and \"quotes\"";
    d[1].text = "";
    save_tsv(path, d);
    CHECK(load_tsv(path) == d);
    std::filesystem::remove(path);
}

TEST_CASE("write_tsv rejects tabs and newlines in text") {
    Dataset d = {{"1", "has\ttab", 0, std::nullopt}};
    std::ostringstream out;
    CHECK_THROWS_AS(write_tsv(out, d), ValueError);
    d[0].text = "has\nnewline";
    CHECK_THROWS_AS(write_tsv(out, d), ValueError);
}

TEST_CASE("JSONL round trip keeps provenance") {
    Dataset d = {{"1", "original\twith tab", 0, std::nullopt},
                 {"1~synonym1", "copy", 0, Provenance{"1", "synonym"}}};
    std::stringstream buf;
    write_jsonl(buf, d);
    CHECK(buf.str().find("\"source_id\":null") != std::string::npos);
    CHECK(read_jsonl(buf) == d);
}

TEST_CASE("read_jsonl rejects half-set provenance and bad labels") {
    std::istringstream half(R"({"id":"1","text":"t","label":0,"source_id":"x","augmenter":null})");
    CHECK_THROWS_AS(read_jsonl(half), FormatError);
    std::istringstream label(R"({"id":"1","text":"t","label":3,"source_id":null,"augmenter":null})");
    CHECK_THROWS_AS(read_jsonl(label), ValueError);
}
