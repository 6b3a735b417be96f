#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdaug/corpus.hpp"

namespace rdaug {

// Tweet normalization. Every stage is a pure rewrite; normalize() applies them
// in the order listed in kNormalizeStages.

// Deletes every whitespace-delimited token starting with http://, https:// or www.
std::string strip_urls(std::string_view text);

// Deletes every whitespace-delimited token that starts with '@' and has at
// least one more byte, then leading retweet markers ("RT" as a word, any case,
// possibly repeated, not followed by a letter or digit, with non-ASCII bytes
// around or inside it ignored).
std::string strip_retweet_and_mentions(std::string_view text);

// Deletes every byte >= 0x80, which removes each non-ASCII code point whole.
std::string strip_non_ascii(std::string_view text);

// Surrounds each of the 32 ASCII punctuation characters with spaces, except
// at the very start and end of the text.
std::string space_punctuation(std::string_view text);

std::string to_lower_ascii(std::string_view text);
std::string collapse_whitespace(std::string_view text);

std::string normalize(std::string_view text);

struct NormalizationReport {
    std::string input;
    std::string output;
    std::vector<std::string> stages_applied;
};

extern const std::vector<std::string> kNormalizeStages;

NormalizationReport normalize_with_report(std::string_view text);

// True when the first word of the raw text is a retweet marker.
bool is_retweet(std::string_view text);

// Rewrites the text column; ids and labels untouched. With drop_retweets,
// examples whose raw text starts with a retweet marker are removed first.
Dataset preprocess_dataset(const Dataset& d, bool drop_retweets = false);

}  // namespace rdaug
