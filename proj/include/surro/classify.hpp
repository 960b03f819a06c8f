#pragma once

#include "surro/records.hpp"
#include "surro/url.hpp"

#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace surro {

// The five resource classes a software URL can indicate. Publications count
// as documentation and source code counts as an artifact; every assignment
// is closed under those two inclusions.
enum class ResourceClass { SourceCode, Publications, Updates, Documentation, Artifacts };

constexpr ResourceClass kAllClasses[] = {
    ResourceClass::SourceCode, ResourceClass::Publications, ResourceClass::Updates,
    ResourceClass::Documentation, ResourceClass::Artifacts};

std::string class_label(ResourceClass cls);
ResourceClass class_from_label(const std::string& label);  // throws std::invalid_argument

struct UrlSegments {
    std::vector<std::string> host;
    std::vector<std::string> path;
    std::vector<std::string> query;

    bool operator==(const UrlSegments&) const = default;
};

// Host split at '.', path split at any of "/.-_", query split at any of
// "?=+&:-_". Tokens are lowercased; empty fragments are dropped.
UrlSegments segment_url(const Url& url);

// Token sets matched against path/query segments, plus named URL patterns
// realized as domain-suffix lists matched against the host.
struct ClassificationRules {
    std::map<ResourceClass, std::set<std::string>> segment_tokens;
    std::map<ResourceClass, std::map<std::string, std::vector<std::string>>> url_patterns;

    static ClassificationRules defaults();
    static ClassificationRules from_json(const std::string& text);
    std::string to_json() const;
};

std::set<ResourceClass> classify_url(const Url& url, const ClassificationRules& rules);

// Union of classify_url over the landing page's outlinks and the page URL
// itself, closed under the inclusions.
std::set<ResourceClass> classify_software(std::span<const Url> outlinks, const Url& self_url,
                                          const ClassificationRules& rules);

// Bucket index = number of thresholds <= publication count. Thresholds must
// be strictly increasing.
std::size_t popularity_bucket(const SoftwareRecord& record, const std::vector<int>& thresholds);

// Per-software classification outcome, as written to the class-presence CSV.
struct SoftwareClassification {
    std::string software_id;
    std::size_t bucket = 0;
    std::set<ResourceClass> classes;
    bool crawled = true;
};

void write_classification_csv(const std::vector<SoftwareClassification>& rows, std::ostream& out);

// Fig-2b-style plot data: per bucket (and one "all" row), the fraction of
// software whose page indicates each class.
void write_class_presence_csv(const std::vector<SoftwareClassification>& rows,
                              std::size_t bucket_count, std::ostream& out);

}  // namespace surro
