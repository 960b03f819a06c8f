#include "surro/classify.hpp"

#include "json.hpp"

#include "surro/fsutil.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace surro {

std::string class_label(ResourceClass cls) {
    switch (cls) {
        case ResourceClass::SourceCode: return "source_code";
        case ResourceClass::Publications: return "publications";
        case ResourceClass::Updates: return "updates";
        case ResourceClass::Documentation: return "documentation";
        case ResourceClass::Artifacts: return "artifacts";
    }
    throw std::invalid_argument("bad ResourceClass");
}

ResourceClass class_from_label(const std::string& label) {
    for (ResourceClass cls : kAllClasses)
        if (class_label(cls) == label) return cls;
    throw std::invalid_argument("unknown resource class \"" + label + "\"");
}

namespace {

void split_into(std::string_view text, std::string_view separators,
                std::vector<std::string>& out) {
    std::string token;
    for (char c : text) {
        if (separators.find(c) != std::string_view::npos) {
            if (!token.empty()) out.push_back(to_lower_ascii(token));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.push_back(to_lower_ascii(token));
}

}  // namespace

UrlSegments segment_url(const Url& url) {
    UrlSegments segments;
    split_into(url.host(), ".", segments.host);
    split_into(url.path(), "/.-_", segments.path);
    if (url.query()) split_into(*url.query(), "?=+&:-_", segments.query);
    return segments;
}

ClassificationRules ClassificationRules::defaults() {
    ClassificationRules rules;
    rules.segment_tokens = {
        {ResourceClass::SourceCode, {"code", "gpl", "lgpl"}},
        {ResourceClass::Publications,
         {"publications", "papers", "journals", "publication", "article", "journal", "doi",
          "articles", "library", "bib", "reports"}},
        {ResourceClass::Updates, {"changelog", "history", "news", "blog"}},
        {ResourceClass::Documentation,
         {"doc", "documentation", "manual", "api", "reference", "handbook", "handbuch",
          "referenz", "doku", "dokumentation", "wiki", "docs", "readme"}},
        {ResourceClass::Artifacts,
         {"exe", "zip", "gz", "tar", "download", "tgz", "files", "downloads", "ftp"}},
    };
    rules.url_patterns = {
        {ResourceClass::SourceCode,
         {{"R-project", {"r-project.org"}},
          {"github", {"github.com", "github.io"}},
          {"googlecode", {"code.google.com", "googlecode.com"}},
          {"sourceforge", {"sourceforge.net", "sf.net"}},
          {"cpc", {"cpc.cs.qub.ac.uk"}},
          {"gpl", {"gnu.org"}},
          {"bitbucket", {"bitbucket.org"}},
          {"gnu", {"gnu.org", "nongnu.org"}}}},
        {ResourceClass::Publications,
         {{"acm", {"acm.org"}},
          {"springer", {"springer.com", "springerlink.com"}},
          {"sciencedirect", {"sciencedirect.com"}},
          {"wiley", {"wiley.com"}},
          {"cpc", {"cpc.cs.qub.ac.uk"}},
          {"arxiv", {"arxiv.org"}},
          {"googlebooks", {"books.google.com"}},
          {"ieee", {"ieee.org"}},
          {"doi", {"doi.org"}},
          {"manuscriptcentral", {"manuscriptcentral.com"}},
          {"tandfonline", {"tandfonline.com"}},
          {"oxfordjournals", {"oxfordjournals.org"}},
          {"citeseerx", {"citeseerx.ist.psu.edu"}}}},
    };
    return rules;
}

ClassificationRules ClassificationRules::from_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    ClassificationRules rules;
    if (doc.contains("segments")) {
        for (const auto& [label, tokens] : doc["segments"].items()) {
            ResourceClass cls = class_from_label(label);
            for (const auto& token : tokens) {
                std::string value = token.get<std::string>();
                if (value.empty()) throw std::invalid_argument("empty segment token");
                rules.segment_tokens[cls].insert(to_lower_ascii(value));
            }
        }
    }
    if (doc.contains("patterns")) {
        for (const auto& [label, patterns] : doc["patterns"].items()) {
            ResourceClass cls = class_from_label(label);
            for (const auto& [name, domains] : patterns.items()) {
                std::vector<std::string> list;
                for (const auto& domain : domains) list.push_back(to_lower_ascii(domain.get<std::string>()));
                rules.url_patterns[cls][name] = std::move(list);
            }
        }
    }
    return rules;
}

std::string ClassificationRules::to_json() const {
    nlohmann::json segments = nlohmann::json::object();
    for (const auto& [cls, tokens] : segment_tokens)
        segments[class_label(cls)] = tokens;
    nlohmann::json patterns = nlohmann::json::object();
    for (const auto& [cls, named] : url_patterns) {
        nlohmann::json group = nlohmann::json::object();
        for (const auto& [name, domains] : named) group[name] = domains;
        patterns[class_label(cls)] = std::move(group);
    }
    return nlohmann::json{{"segments", std::move(segments)}, {"patterns", std::move(patterns)}}
        .dump(2);
}

namespace {

void close_under_inclusions(std::set<ResourceClass>& classes) {
    if (classes.count(ResourceClass::Publications)) classes.insert(ResourceClass::Documentation);
    if (classes.count(ResourceClass::SourceCode)) classes.insert(ResourceClass::Artifacts);
}

}  // namespace

std::set<ResourceClass> classify_url(const Url& url, const ClassificationRules& rules) {
    UrlSegments segments = segment_url(url);
    std::set<ResourceClass> classes;

    for (const auto& [cls, tokens] : rules.segment_tokens) {
        auto hits = [&](const std::vector<std::string>& parts) {
            return std::any_of(parts.begin(), parts.end(),
                               [&](const std::string& part) { return tokens.count(part) > 0; });
        };
        if (hits(segments.path) || hits(segments.query)) classes.insert(cls);
    }
    for (const auto& [cls, named] : rules.url_patterns) {
        for (const auto& [name, domains] : named) {
            (void)name;
            if (std::any_of(domains.begin(), domains.end(),
                            [&](const std::string& d) { return url.host_in_domain(d); })) {
                classes.insert(cls);
                break;
            }
        }
    }

    close_under_inclusions(classes);
    return classes;
}

std::set<ResourceClass> classify_software(std::span<const Url> outlinks, const Url& self_url,
                                          const ClassificationRules& rules) {
    std::set<ResourceClass> classes = classify_url(self_url, rules);
    for (const Url& link : outlinks) {
        std::set<ResourceClass> link_classes = classify_url(link, rules);
        classes.insert(link_classes.begin(), link_classes.end());
    }
    close_under_inclusions(classes);
    return classes;
}

std::size_t popularity_bucket(const SoftwareRecord& record, const std::vector<int>& thresholds) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] <= thresholds[i - 1])
            throw std::invalid_argument("thresholds must be strictly increasing");
    const auto count = static_cast<long long>(record.publications.size());
    std::size_t bucket = 0;
    for (int threshold : thresholds)
        if (threshold <= count) ++bucket;
    return bucket;
}

void write_classification_csv(const std::vector<SoftwareClassification>& rows,
                              std::ostream& out) {
    out << "software_id,bucket,has_documentation,has_artifacts,has_source_code,"
           "has_publications,has_updates,not_crawled\n";
    auto flag = [](bool b) { return b ? "true" : "false"; };
    for (const auto& row : rows) {
        out << csv_escape(row.software_id) << ',' << row.bucket << ','
            << flag(row.classes.count(ResourceClass::Documentation) > 0) << ','
            << flag(row.classes.count(ResourceClass::Artifacts) > 0) << ','
            << flag(row.classes.count(ResourceClass::SourceCode) > 0) << ','
            << flag(row.classes.count(ResourceClass::Publications) > 0) << ','
            << flag(row.classes.count(ResourceClass::Updates) > 0) << ','
            << flag(!row.crawled) << '\n';
    }
}

void write_class_presence_csv(const std::vector<SoftwareClassification>& rows,
                              std::size_t bucket_count, std::ostream& out) {
    out << "bucket,records,documentation,artifacts,source_code,publications,updates\n";

    auto emit = [&](const std::string& label, const std::vector<const SoftwareClassification*>& group) {
        out << label << ',' << group.size();
        for (ResourceClass cls : {ResourceClass::Documentation, ResourceClass::Artifacts,
                                  ResourceClass::SourceCode, ResourceClass::Publications,
                                  ResourceClass::Updates}) {
            if (group.empty()) {
                out << ',';
                continue;
            }
            std::size_t hits = 0;
            for (const auto* row : group)
                if (row->classes.count(cls)) ++hits;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.10g",
                          static_cast<double>(hits) / static_cast<double>(group.size()));
            out << ',' << buf;
        }
        out << '\n';
    };

    std::vector<const SoftwareClassification*> all;
    for (const auto& row : rows) all.push_back(&row);
    emit("all", all);
    for (std::size_t bucket = 0; bucket < bucket_count; ++bucket) {
        std::vector<const SoftwareClassification*> group;
        for (const auto& row : rows)
            if (row.bucket == bucket) group.push_back(&row);
        emit(std::to_string(bucket), group);
    }
}

}  // namespace surro
