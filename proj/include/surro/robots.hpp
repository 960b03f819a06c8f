#pragma once

#include "surro/url.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace surro {

// Evaluated robots.txt rules for one user agent, RFC 9309 semantics:
// groups selected by product token (falling back to '*'), longest-match
// rule precedence with allow winning ties, '*' wildcards and '$' anchors.
class RobotsRules {
public:
    static RobotsRules parse(std::string_view body, std::string_view product_token);
    static RobotsRules allow_all();
    static RobotsRules disallow_all();

    bool allowed(const Url& url) const;

private:
    struct Rule {
        std::string pattern;
        bool allow = false;
    };

    std::vector<Rule> rules_;
};

}  // namespace surro
