#include "rdaug/preprocess.hpp"

#include <array>

namespace rdaug {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

bool is_ascii_punct(char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
           (c >= '{' && c <= '~');
}

bool is_non_ascii(char c) { return static_cast<unsigned char>(c) >= 0x80; }

bool starts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    return s.substr(pos, prefix.size()) == prefix;
}

std::size_t skip_non_ascii(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_non_ascii(s[pos])) {
        ++pos;
    }
    return pos;
}

// End of a retweet marker starting at pos, or npos. Non-ASCII bytes inside
// the marker or right after it are ignored, matching what strip_non_ascii
// will leave behind.
std::size_t rt_word_end(std::string_view s, std::size_t pos) {
    if (pos >= s.size() || (s[pos] != 'r' && s[pos] != 'R')) {
        return std::string_view::npos;
    }
    const auto t = skip_non_ascii(s, pos + 1);
    if (t >= s.size() || (s[t] != 't' && s[t] != 'T')) {
        return std::string_view::npos;
    }
    const auto after = skip_non_ascii(s, t + 1);
    if (after < s.size() && is_alnum(s[after])) {
        return std::string_view::npos;
    }
    return t + 1;
}

std::size_t skip_leading(std::string_view s, std::size_t pos) {
    while (pos < s.size() && (is_space(s[pos]) || is_non_ascii(s[pos]))) {
        ++pos;
    }
    return pos;
}

}  // namespace

const std::vector<std::string> kNormalizeStages = {
    "strip_urls", "strip_retweet_and_mentions", "strip_non_ascii", "space_punctuation",
    "lowercase",  "collapse_whitespace",        "trim",
};

std::string strip_urls(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) {
            ++end;
        }
        const bool url = starts_with(text, i, "http://") || starts_with(text, i, "https://") ||
                         starts_with(text, i, "www.");
        if (!url) {
            out.append(text.substr(i, end - i));
        }
        i = end;
    }
    return out;
}

std::string strip_retweet_and_mentions(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        if (is_space(text[i])) {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) {
            ++end;
        }
        // A lone "@" is kept: space_punctuation produces it from "a@b".
        const bool mention = text[i] == '@' && end - i > 1;
        if (!mention) {
            out.append(text.substr(i, end - i));
        }
        i = end;
    }

    // Retweet markers are checked after mentions go, so "RT @a RT x" loses both.
    std::string result;
    std::size_t kept = 0;
    while (true) {
        const auto next = skip_leading(out, kept);
        const auto end = rt_word_end(out, next);
        if (end == std::string_view::npos) {
            break;
        }
        result.append(out, kept, next - kept);
        kept = end;
    }
    result.append(out, kept, std::string::npos);
    return result;
}

std::string strip_non_ascii(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (!is_non_ascii(c)) {
            out.push_back(c);
        }
    }
    return out;
}

std::string space_punctuation(std::string_view text) {
    std::string out;
    out.reserve(text.size() * 3);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!is_ascii_punct(c)) {
            out.push_back(c);
            continue;
        }
        if (i > 0) {
            out.push_back(' ');
        }
        out.push_back(c);
        if (i + 1 < text.size()) {
            out.push_back(' ');
        }
    }
    return out;
}

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty()) {
            out.push_back(' ');
        }
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

std::string normalize(std::string_view text) {
    auto s = strip_urls(text);
    s = strip_retweet_and_mentions(s);
    s = strip_non_ascii(s);
    s = space_punctuation(s);
    s = to_lower_ascii(s);
    // collapse_whitespace also trims both ends.
    return collapse_whitespace(s);
}

NormalizationReport normalize_with_report(std::string_view text) {
    return {std::string(text), normalize(text), kNormalizeStages};
}

bool is_retweet(std::string_view text) { return rt_word_end(text, skip_leading(text, 0)) != std::string_view::npos; }

Dataset preprocess_dataset(const Dataset& d, bool drop_retweets) {
    Dataset out;
    out.reserve(d.size());
    for (const auto& e : d) {
        if (drop_retweets && is_retweet(e.text)) {
            continue;
        }
        auto copy = e;
        copy.text = normalize(e.text);
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace rdaug
