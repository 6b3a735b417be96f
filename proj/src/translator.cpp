#include "rdaug/translator.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "rdaug/error.hpp"

namespace rdaug {

HttpTranslator::HttpTranslator(std::string url, std::string src_lang, std::string tgt_lang,
                               std::chrono::milliseconds timeout)
    : src_(std::move(src_lang)), tgt_(std::move(tgt_lang)), timeout_(timeout) {
    constexpr std::string_view scheme = "http://";
    if (url.rfind(scheme, 0) != 0) {
        throw ContractError("translator URL must start with http://, got '" + url + "'");
    }
    const auto slash = url.find('/', scheme.size());
    if (slash == std::string::npos) {
        scheme_host_port_ = url;
        path_ = "/";
    } else {
        scheme_host_port_ = url.substr(0, slash);
        path_ = url.substr(slash);
    }
}

std::string HttpTranslator::translate(const std::string& text) const {
    httplib::Client client(scheme_host_port_);
    const auto secs = timeout_.count() / 1000;
    const auto usecs = (timeout_.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    const nlohmann::json body = {{"text", text}, {"src", src_}, {"tgt", tgt_}};
    const auto res = client.Post(path_, body.dump(), "application/json");
    const std::string target = scheme_host_port_ + path_ + " (" + src_ + "->" + tgt_ + ")";
    if (!res) {
        throw AugmentationUnavailable("translator " + target + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw AugmentationUnavailable("translator " + target + ": HTTP status " + std::to_string(res->status));
    }
    try {
        return nlohmann::json::parse(res->body).at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw AugmentationUnavailable("translator " + target + ": malformed response: " + e.what());
    }
}

}  // namespace rdaug
