#pragma once

#include "surro/records.hpp"
#include "surro/url.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace surro {

// Anchor hyperlink targets of an HTML page, resolved against `base`,
// restricted to http(s), deduplicated keeping the first occurrence.
// Malformed markup degrades to fewer links, never an error.
std::vector<Url> extract_outlinks(std::string_view html, const Url& base);

// Per-year counts (publications referencing a software, or in-links to its
// page).
using YearSeries = std::map<int, std::int64_t>;

// A series normalized to [0, 1] and re-indexed so that offset 0 is the
// publication-count argmax year.
using AlignedSeries = std::map<int, double>;

struct CorrelationPair {
    AlignedSeries publications;
    AlignedSeries inlinks;
};

// Each series divided by its own maximum, both re-indexed by
// (year - argmax year of publications); argmax ties break to the earliest
// year. Throws std::invalid_argument when publications has no non-zero year.
CorrelationPair correlation_series(const YearSeries& publications, const YearSeries& inlinks);

enum class Aggregate { Mean, Median };

// Combines per-software aligned series: at each offset, the mean (or median)
// over the series defined there, re-normalized by the result's maximum.
// Throws std::invalid_argument on an empty list.
AlignedSeries aggregate_aligned(const std::vector<AlignedSeries>& series,
                                Aggregate mode = Aggregate::Mean);

YearSeries publications_by_year(const SoftwareRecord& record);

// CSV with header "software_id,year,count".
std::map<std::string, YearSeries> load_inlink_csv(std::istream& in);

void write_correlation_csv(const CorrelationPair& pair, std::ostream& out);

}  // namespace surro
