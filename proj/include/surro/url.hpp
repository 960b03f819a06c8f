#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace surro {

class UrlError : public std::runtime_error {
public:
    explicit UrlError(const std::string& what) : std::runtime_error(what) {}
};

// An absolute http(s) URL. Scheme and host are stored lowercased; default
// ports are dropped; an empty path renders as "/". Percent-encoding in the
// path/query/fragment is preserved as given.
class Url {
public:
    static Url parse(std::string_view raw);  // throws UrlError
    static std::optional<Url> try_parse(std::string_view raw);

    // RFC 3986 section 5 reference resolution (including dot-segment
    // removal). The reference may be absolute, scheme-relative, or relative.
    static Url resolve(const Url& base, std::string_view reference);

    const std::string& scheme() const { return scheme_; }
    const std::string& host() const { return host_; }
    const std::string& userinfo() const { return userinfo_; }
    std::optional<std::uint16_t> port() const { return port_; }
    std::uint16_t effective_port() const { return port_ ? *port_ : default_port(); }

    // Path as given ("" when absent); normalized() renders it as "/".
    const std::string& path() const { return path_; }
    const std::optional<std::string>& query() const { return query_; }
    const std::optional<std::string>& fragment() const { return fragment_; }

    std::string normalized() const;
    std::string authority() const;  // host[:port], default port elided

    // True when host equals `domain` or ends with "." + domain
    // (case-insensitive label-boundary suffix match).
    bool host_in_domain(std::string_view domain) const;

    bool operator==(const Url& other) const { return normalized() == other.normalized(); }

private:
    std::uint16_t default_port() const;

    std::string scheme_;
    std::string userinfo_;
    std::string host_;
    std::optional<std::uint16_t> port_;
    std::string path_;
    std::optional<std::string> query_;
    std::optional<std::string> fragment_;
};

// Validation entry point for record ingestion: parses and returns the
// normalized form, rejecting relative references and non-http(s) schemes.
std::string validate_url(std::string_view raw);  // throws UrlError

std::string to_lower_ascii(std::string_view text);

// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string percent_encode(std::string_view text);

}  // namespace surro
