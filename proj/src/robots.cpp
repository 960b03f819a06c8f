#include "surro/robots.hpp"

#include <algorithm>
#include <cctype>

namespace surro {

namespace {

std::string trim(std::string_view text) {
    auto begin = text.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return {};
    auto end = text.find_last_not_of(" \t");
    return std::string(text.substr(begin, end - begin + 1));
}

// '*' matches any run of characters; a trailing '$' anchors the end.
bool pattern_matches(std::string_view pattern, std::string_view path) {
    bool anchored = !pattern.empty() && pattern.back() == '$';
    if (anchored) pattern.remove_suffix(1);

    // match[i] tracks whether pattern[0..i) can consume some prefix of path
    std::vector<std::size_t> starts{0};
    std::size_t pos = 0;
    while (pos < pattern.size()) {
        if (pattern[pos] == '*') {
            // any later position in path is reachable
            std::size_t min_start = *std::min_element(starts.begin(), starts.end());
            starts.clear();
            for (std::size_t i = min_start; i <= path.size(); ++i) starts.push_back(i);
            ++pos;
            continue;
        }
        std::vector<std::size_t> next;
        for (std::size_t start : starts)
            if (start < path.size() && path[start] == pattern[pos]) next.push_back(start + 1);
        if (next.empty()) return false;
        starts = std::move(next);
        ++pos;
    }
    if (!anchored) return true;
    return std::any_of(starts.begin(), starts.end(),
                       [&](std::size_t s) { return s == path.size(); });
}

}  // namespace

RobotsRules RobotsRules::parse(std::string_view body, std::string_view product_token) {
    struct Group {
        std::vector<std::string> agents;
        std::vector<Rule> rules;
    };
    std::vector<Group> groups;
    bool in_agent_run = false;

    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto eol = body.find('\n', pos);
        std::string_view raw =
            body.substr(pos, eol == std::string_view::npos ? body.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? body.size() + 1 : eol + 1;

        auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto colon = raw.find(':');
        if (colon == std::string_view::npos) continue;
        std::string key = to_lower_ascii(trim(raw.substr(0, colon)));
        std::string value = trim(raw.substr(colon + 1));

        if (key == "user-agent") {
            if (!in_agent_run || groups.empty()) groups.emplace_back();
            groups.back().agents.push_back(to_lower_ascii(value));
            in_agent_run = true;
        } else if (key == "allow" || key == "disallow") {
            in_agent_run = false;
            if (groups.empty()) continue;  // rules before any user-agent line
            if (value.empty()) {
                if (key == "disallow") continue;  // empty Disallow: allow everything
                continue;
            }
            groups.back().rules.push_back({value, key == "allow"});
        } else {
            in_agent_run = false;  // crawl-delay, sitemap, ...
        }
    }

    std::string token = to_lower_ascii(product_token);
    RobotsRules result;
    bool matched_specific = false;
    for (const auto& group : groups) {
        bool specific = std::find(group.agents.begin(), group.agents.end(), token) !=
                        group.agents.end();
        if (specific && !matched_specific) {
            matched_specific = true;
            result.rules_.clear();
        }
        if (specific) {
            result.rules_.insert(result.rules_.end(), group.rules.begin(), group.rules.end());
        } else if (!matched_specific &&
                   std::find(group.agents.begin(), group.agents.end(), "*") !=
                       group.agents.end()) {
            result.rules_.insert(result.rules_.end(), group.rules.begin(), group.rules.end());
        }
    }
    return result;
}

RobotsRules RobotsRules::allow_all() {
    return RobotsRules{};
}

RobotsRules RobotsRules::disallow_all() {
    RobotsRules rules;
    rules.rules_.push_back({"/", false});
    return rules;
}

bool RobotsRules::allowed(const Url& url) const {
    std::string target = url.path().empty() ? "/" : url.path();
    if (url.query()) target += "?" + *url.query();

    const Rule* winner = nullptr;
    for (const Rule& rule : rules_) {
        if (!pattern_matches(rule.pattern, target)) continue;
        if (!winner || rule.pattern.size() > winner->pattern.size() ||
            (rule.pattern.size() == winner->pattern.size() && rule.allow && !winner->allow))
            winner = &rule;
    }
    return winner ? winner->allow : true;
}

}  // namespace surro
