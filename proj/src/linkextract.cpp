#include "surro/linkextract.hpp"

#include "surro/fsutil.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace surro {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        auto semi = text.find(';', i);
        if (semi == std::string_view::npos || semi - i > 8) {
            out.push_back(text[i++]);
            continue;
        }
        std::string_view name = text.substr(i + 1, semi - i - 1);
        if (name == "amp") out.push_back('&');
        else if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos" || name == "#39") out.push_back('\'');
        else if (name == "#38") out.push_back('&');
        else {
            out.push_back(text[i++]);
            continue;
        }
        i = semi + 1;
    }
    return out;
}

// Returns the href attribute value of the tag starting at `pos` (just past
// "<a"), and advances pos past the tag.
std::optional<std::string> parse_anchor_href(std::string_view html, std::size_t& pos) {
    std::optional<std::string> href;
    while (pos < html.size() && html[pos] != '>') {
        while (pos < html.size() && std::isspace(static_cast<unsigned char>(html[pos]))) ++pos;
        if (pos >= html.size() || html[pos] == '>' || html[pos] == '/') {
            if (pos < html.size() && html[pos] == '/') ++pos;
            continue;
        }
        std::size_t name_start = pos;
        while (pos < html.size() && html[pos] != '=' && html[pos] != '>' &&
               !std::isspace(static_cast<unsigned char>(html[pos])))
            ++pos;
        std::string_view name = html.substr(name_start, pos - name_start);
        while (pos < html.size() && std::isspace(static_cast<unsigned char>(html[pos]))) ++pos;
        if (pos >= html.size() || html[pos] != '=') continue;  // valueless attribute
        ++pos;
        while (pos < html.size() && std::isspace(static_cast<unsigned char>(html[pos]))) ++pos;
        if (pos >= html.size()) break;
        std::string_view value;
        if (html[pos] == '"' || html[pos] == '\'') {
            const char quote = html[pos++];
            std::size_t value_start = pos;
            while (pos < html.size() && html[pos] != quote) ++pos;
            value = html.substr(value_start, pos - value_start);
            if (pos < html.size()) ++pos;
        } else {
            std::size_t value_start = pos;
            while (pos < html.size() && html[pos] != '>' &&
                   !std::isspace(static_cast<unsigned char>(html[pos])))
                ++pos;
            value = html.substr(value_start, pos - value_start);
        }
        if (iequals(name, "href") && !href) href = decode_entities(value);
    }
    if (pos < html.size()) ++pos;  // consume '>'
    return href;
}

}  // namespace

std::vector<Url> extract_outlinks(std::string_view html, const Url& base) {
    std::vector<Url> links;
    std::set<std::string> seen;

    std::size_t pos = 0;
    while (pos < html.size()) {
        pos = html.find('<', pos);
        if (pos == std::string_view::npos) break;
        ++pos;
        if (html.substr(pos, 3) == "!--") {
            auto end = html.find("-->", pos);
            pos = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        std::size_t name_start = pos;
        while (pos < html.size() &&
               (std::isalnum(static_cast<unsigned char>(html[pos])) || html[pos] == '!'))
            ++pos;
        std::string_view tag = html.substr(name_start, pos - name_start);
        if (iequals(tag, "script") || iequals(tag, "style")) {
            // Skip raw-text element bodies; anchors inside them are not links.
            std::string closer = "</" + to_lower_ascii(tag);
            std::string lowered = to_lower_ascii(html.substr(pos));
            auto end = lowered.find(closer);
            pos = end == std::string::npos ? html.size() : pos + end + closer.size();
            continue;
        }
        if (!iequals(tag, "a")) continue;
        std::optional<std::string> href = parse_anchor_href(html, pos);
        if (!href) continue;
        try {
            Url resolved = Url::resolve(base, *href);
            if (seen.insert(resolved.normalized()).second) links.push_back(std::move(resolved));
        } catch (const UrlError&) {
            // non-http(s) or unparsable target; dropped
        }
    }
    return links;
}

CorrelationPair correlation_series(const YearSeries& publications, const YearSeries& inlinks) {
    int argmax_year = 0;
    std::int64_t pub_max = 0;
    for (const auto& [year, count] : publications) {
        if (count > pub_max) {  // map order breaks ties toward the earliest year
            pub_max = count;
            argmax_year = year;
        }
    }
    if (pub_max <= 0) throw std::invalid_argument("publications series has no non-zero year");

    auto align = [&](const YearSeries& series) {
        AlignedSeries aligned;
        std::int64_t max = 0;
        for (const auto& [year, count] : series) max = std::max(max, count);
        if (max <= 0) return aligned;
        for (const auto& [year, count] : series)
            aligned[year - argmax_year] =
                static_cast<double>(count) / static_cast<double>(max);
        return aligned;
    };

    return {align(publications), align(inlinks)};
}

AlignedSeries aggregate_aligned(const std::vector<AlignedSeries>& series, Aggregate mode) {
    if (series.empty()) throw std::invalid_argument("no aligned series to aggregate");

    std::map<int, std::vector<double>> values;
    for (const auto& s : series)
        for (const auto& [offset, value] : s) values[offset].push_back(value);

    AlignedSeries out;
    double max = 0.0;
    for (auto& [offset, group] : values) {
        double combined;
        if (mode == Aggregate::Mean) {
            double sum = 0.0;
            for (double v : group) sum += v;
            combined = sum / static_cast<double>(group.size());
        } else {
            std::sort(group.begin(), group.end());
            const std::size_t n = group.size();
            combined = n % 2 == 1 ? group[n / 2] : (group[n / 2 - 1] + group[n / 2]) / 2.0;
        }
        out[offset] = combined;
        max = std::max(max, combined);
    }
    if (max > 0.0)
        for (auto& [offset, value] : out) value /= max;
    return out;
}

YearSeries publications_by_year(const SoftwareRecord& record) {
    YearSeries series;
    for (const auto& p : record.publications) ++series[p.year];
    return series;
}

std::map<std::string, YearSeries> load_inlink_csv(std::istream& in) {
    std::map<std::string, YearSeries> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = csv_split(line);
        if (line_no == 1) {
            if (fields != std::vector<std::string>{"software_id", "year", "count"})
                throw std::runtime_error("links csv: expected header software_id,year,count");
            continue;
        }
        if (fields.size() != 3)
            throw std::runtime_error("links csv line " + std::to_string(line_no) +
                                     ": expected 3 fields");
        try {
            int year = std::stoi(fields[1]);
            std::int64_t count = std::stoll(fields[2]);
            if (count < 0) throw std::invalid_argument("negative count");
            out[fields[0]][year] += count;
        } catch (const std::exception&) {
            throw std::runtime_error("links csv line " + std::to_string(line_no) +
                                     ": bad year or count");
        }
    }
    return out;
}

void write_correlation_csv(const CorrelationPair& pair, std::ostream& out) {
    out << "offset,publications_norm,inlinks_norm\n";
    std::set<int> offsets;
    for (const auto& [offset, value] : pair.publications) offsets.insert(offset);
    for (const auto& [offset, value] : pair.inlinks) offsets.insert(offset);
    for (int offset : offsets) {
        out << offset << ',';
        auto p = pair.publications.find(offset);
        char buf[32];
        if (p != pair.publications.end()) {
            std::snprintf(buf, sizeof(buf), "%.10g", p->second);
            out << buf;
        }
        out << ',';
        auto i = pair.inlinks.find(offset);
        if (i != pair.inlinks.end()) {
            std::snprintf(buf, sizeof(buf), "%.10g", i->second);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace surro
