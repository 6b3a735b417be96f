#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rdaug {

// word -> synonyms. Interchange format: "word<TAB>syn1|syn2|..." per line.
struct SynonymLexicon {
    std::map<std::string, std::vector<std::string>, std::less<>> entries;

    const std::vector<std::string>* find(std::string_view word) const;
};

// Disjoint classes of interchangeable tokens. File format: one class per line,
// members separated by commas.
struct ReservedClasses {
    std::vector<std::vector<std::string>> classes;

    // Index of the class containing token, if any.
    std::optional<std::size_t> class_of(std::string_view token) const;

private:
    friend ReservedClasses make_reserved_classes(std::vector<std::vector<std::string>> classes);
    std::map<std::string, std::size_t, std::less<>> index_;
};

ReservedClasses make_reserved_classes(std::vector<std::vector<std::string>> classes);

// Present -> past. File format: "present<TAB>past" for irregular verbs and a
// bare "verb" line for verbs taking the regular suffix.
struct VerbMap {
    std::map<std::string, std::string, std::less<>> irregular;
    std::set<std::string, std::less<>> regular;
};

// Regular past tense: "e" -> +d, consonant+"y" -> "ied", one-syllable
// consonant-vowel-consonant (final not w/x/y) doubles the final consonant,
// otherwise +ed.
std::string regular_past(std::string_view verb);

// One translation direction, applied token-wise with longest match first.
// File format: "src phrase<TAB>tgt phrase".
class PhraseTable {
public:
    void add(std::string_view source, std::string_view target);

    std::string apply(std::string_view text) const;

    std::size_t size() const { return table_.size(); }
    std::size_t max_phrase_tokens() const { return max_tokens_; }

private:
    std::map<std::vector<std::string>, std::string> table_;
    std::size_t max_tokens_ = 0;
};

std::vector<std::string> split_whitespace(std::string_view text);
std::string join_tokens(const std::vector<std::string>& tokens);

SynonymLexicon read_lexicon(std::istream& in, const std::string& source_name = "<stream>");
ReservedClasses read_reserved_classes(std::istream& in, const std::string& source_name = "<stream>");
VerbMap read_verb_map(std::istream& in, const std::string& source_name = "<stream>");
PhraseTable read_phrase_table(std::istream& in, const std::string& source_name = "<stream>");

SynonymLexicon load_lexicon(const std::filesystem::path& path);
ReservedClasses load_reserved_classes(const std::filesystem::path& path);
VerbMap load_verb_map(const std::filesystem::path& path);
PhraseTable load_phrase_table(const std::filesystem::path& path);

// Built-in resources, used when a config leaves the corresponding path empty.
const SynonymLexicon& default_lexicon();
const ReservedClasses& default_reserved_classes();
const VerbMap& default_verb_map();
const PhraseTable& default_en_de_table();
const PhraseTable& default_de_en_table();

}  // namespace rdaug
