#include "surro/url.hpp"

#include <algorithm>
#include <cctype>

namespace surro {

std::string to_lower_ascii(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string percent_encode(std::string_view text) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        const bool unreserved = std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
        if (unreserved) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    return out;
}

namespace {

bool is_scheme_char(char c, bool first) {
    if (std::isalpha(static_cast<unsigned char>(c))) return true;
    if (first) return false;
    return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

// Splits a URI reference into its five components without validating them.
struct RawParts {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;
};

RawParts split_reference(std::string_view raw) {
    RawParts parts;
    std::string_view rest = raw;

    auto hash = rest.find('#');
    if (hash != std::string_view::npos) {
        parts.fragment = std::string(rest.substr(hash + 1));
        rest = rest.substr(0, hash);
    }
    auto question = rest.find('?');
    if (question != std::string_view::npos) {
        parts.query = std::string(rest.substr(question + 1));
        rest = rest.substr(0, question);
    }

    auto colon = rest.find(':');
    if (colon != std::string_view::npos && colon > 0) {
        bool looks_like_scheme = true;
        for (std::size_t i = 0; i < colon; ++i) {
            if (!is_scheme_char(rest[i], i == 0)) {
                looks_like_scheme = false;
                break;
            }
        }
        // A colon inside the first path segment of a relative reference
        // ("./a:b") is not a scheme delimiter; only treat it as one when
        // everything before it fits the scheme grammar.
        if (looks_like_scheme) {
            parts.scheme = to_lower_ascii(rest.substr(0, colon));
            rest = rest.substr(colon + 1);
        }
    }

    if (rest.size() >= 2 && rest[0] == '/' && rest[1] == '/') {
        rest = rest.substr(2);
        auto end = rest.find('/');
        parts.authority = std::string(rest.substr(0, end));
        rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
    }
    parts.path = std::string(rest);
    return parts;
}

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view input) {
    std::string out;
    std::string in(input);
    while (!in.empty()) {
        if (in.rfind("../", 0) == 0) {
            in.erase(0, 3);
        } else if (in.rfind("./", 0) == 0) {
            in.erase(0, 2);
        } else if (in.rfind("/./", 0) == 0) {
            in.erase(0, 2);
        } else if (in == "/.") {
            in = "/";
        } else if (in.rfind("/../", 0) == 0 || in == "/..") {
            in.erase(0, 3);
            if (in.empty()) in = "/";
            auto last = out.find_last_of('/');
            out.erase(last == std::string::npos ? 0 : last);
        } else if (in == "." || in == "..") {
            in.clear();
        } else {
            std::size_t next = in.find('/', in[0] == '/' ? 1 : 0);
            if (next == std::string::npos) {
                out += in;
                in.clear();
            } else {
                out += in.substr(0, next);
                in.erase(0, next);
            }
        }
    }
    return out;
}

std::string merge_paths(const Url& base, std::string_view ref_path) {
    if (!base.host().empty() && base.path().empty()) return "/" + std::string(ref_path);
    auto last = base.path().find_last_of('/');
    if (last == std::string::npos) return std::string(ref_path);
    return base.path().substr(0, last + 1) + std::string(ref_path);
}

}  // namespace

Url Url::parse(std::string_view raw) {
    RawParts parts = split_reference(raw);
    if (!parts.scheme)
        throw UrlError("not an absolute URL (missing scheme): " + std::string(raw));
    if (*parts.scheme != "http" && *parts.scheme != "https")
        throw UrlError("unsupported scheme '" + *parts.scheme + "': " + std::string(raw));
    if (!parts.authority)
        throw UrlError("missing authority: " + std::string(raw));

    Url url;
    url.scheme_ = *parts.scheme;

    std::string_view authority = *parts.authority;
    auto at = authority.rfind('@');
    if (at != std::string_view::npos) {
        url.userinfo_ = std::string(authority.substr(0, at));
        authority = authority.substr(at + 1);
    }

    std::string_view host = authority;
    std::string_view port_text;
    if (!authority.empty() && authority[0] == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos) throw UrlError("unterminated IPv6 literal: " + std::string(raw));
        host = authority.substr(0, close + 1);
        if (close + 1 < authority.size()) {
            if (authority[close + 1] != ':') throw UrlError("malformed authority: " + std::string(raw));
            port_text = authority.substr(close + 2);
        }
    } else {
        auto colon = authority.find(':');
        if (colon != std::string_view::npos) {
            host = authority.substr(0, colon);
            port_text = authority.substr(colon + 1);
        }
    }
    if (host.empty()) throw UrlError("empty host: " + std::string(raw));
    for (char c : host) {
        if (c == '/' || c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw UrlError("invalid host character: " + std::string(raw));
    }
    url.host_ = to_lower_ascii(host);

    if (!port_text.empty()) {
        std::uint32_t value = 0;
        for (char c : port_text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw UrlError("invalid port: " + std::string(raw));
            value = value * 10 + static_cast<std::uint32_t>(c - '0');
            if (value > 65535) throw UrlError("port out of range: " + std::string(raw));
        }
        url.port_ = static_cast<std::uint16_t>(value);
    }
    if (url.port_ && *url.port_ == url.default_port()) url.port_.reset();

    url.path_ = parts.path;
    url.query_ = parts.query;
    url.fragment_ = parts.fragment;
    return url;
}

std::optional<Url> Url::try_parse(std::string_view raw) {
    try {
        return parse(raw);
    } catch (const UrlError&) {
        return std::nullopt;
    }
}

Url Url::resolve(const Url& base, std::string_view reference) {
    RawParts ref = split_reference(reference);
    if (ref.scheme) {
        // Absolute reference; goes through the full parser (and its scheme
        // restrictions).
        return parse(reference);
    }

    Url out;
    out.scheme_ = base.scheme_;
    if (ref.authority) {
        std::string absolute = base.scheme_ + ":" + "//" + *ref.authority + ref.path;
        if (ref.query) absolute += "?" + *ref.query;
        if (ref.fragment) absolute += "#" + *ref.fragment;
        return parse(absolute);
    }

    out.userinfo_ = base.userinfo_;
    out.host_ = base.host_;
    out.port_ = base.port_;
    out.fragment_ = ref.fragment;
    if (ref.path.empty()) {
        out.path_ = base.path_;
        out.query_ = ref.query ? ref.query : base.query_;
    } else {
        if (ref.path[0] == '/') {
            out.path_ = remove_dot_segments(ref.path);
        } else {
            out.path_ = remove_dot_segments(merge_paths(base, ref.path));
        }
        out.query_ = ref.query;
    }
    return out;
}

std::uint16_t Url::default_port() const {
    return scheme_ == "https" ? 443 : 80;
}

std::string Url::authority() const {
    std::string out = host_;
    if (port_) out += ":" + std::to_string(*port_);
    return out;
}

std::string Url::normalized() const {
    std::string out = scheme_ + "://";
    if (!userinfo_.empty()) out += userinfo_ + "@";
    out += authority();
    out += path_.empty() ? "/" : path_;
    if (query_) out += "?" + *query_;
    if (fragment_) out += "#" + *fragment_;
    return out;
}

bool Url::host_in_domain(std::string_view domain) const {
    std::string suffix = to_lower_ascii(domain);
    if (host_ == suffix) return true;
    if (host_.size() <= suffix.size() + 1) return false;
    return host_.compare(host_.size() - suffix.size(), suffix.size(), suffix) == 0 &&
           host_[host_.size() - suffix.size() - 1] == '.';
}

std::string validate_url(std::string_view raw) {
    return Url::parse(raw).normalized();
}

}  // namespace surro
