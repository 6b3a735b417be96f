#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "rdaug/resources.hpp"

namespace rdaug {

// One translation direction. Implementations must be safe to call concurrently.
// Failures are reported as AugmentationUnavailable.
class Translator {
public:
    virtual ~Translator() = default;
    virtual std::string translate(const std::string& text) const = 0;
};

class PhraseTableTranslator final : public Translator {
public:
    explicit PhraseTableTranslator(PhraseTable table) : table_(std::move(table)) {}

    std::string translate(const std::string& text) const override { return table_.apply(text); }

private:
    PhraseTable table_;
};

// Client for a JSON translation service:
//   POST <url>  {"text": ..., "src": ..., "tgt": ...}  ->  200 {"text": ...}
// Only plain http:// URLs are supported.
class HttpTranslator final : public Translator {
public:
    HttpTranslator(std::string url, std::string src_lang, std::string tgt_lang,
                   std::chrono::milliseconds timeout = std::chrono::seconds(10));

    std::string translate(const std::string& text) const override;

private:
    std::string scheme_host_port_;
    std::string path_;
    std::string src_;
    std::string tgt_;
    std::chrono::milliseconds timeout_;
};

}  // namespace rdaug
