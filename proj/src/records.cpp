#include "surro/records.hpp"

#include "json.hpp"

#include "surro/timeutil.hpp"
#include "surro/url.hpp"

#include <unordered_set>

namespace surro {

namespace {

using nlohmann::json;

SoftwareRecord record_from_json(const json& doc, int max_year) {
    if (!doc.is_object()) throw std::runtime_error("record is not a JSON object");

    SoftwareRecord record;
    if (!doc.contains("id") || !doc["id"].is_string())
        throw std::runtime_error("missing or non-string \"id\"");
    record.id = doc["id"].get<std::string>();
    if (record.id.empty()) throw std::runtime_error("empty \"id\"");

    if (!doc.contains("name") || !doc["name"].is_string())
        throw std::runtime_error("missing or non-string \"name\"");
    record.name = doc["name"].get<std::string>();

    if (!doc.contains("urls") || !doc["urls"].is_array())
        throw std::runtime_error("missing or non-array \"urls\"");
    for (const auto& entry : doc["urls"]) {
        if (!entry.is_string()) throw std::runtime_error("non-string url entry");
        record.urls.push_back(validate_url(entry.get<std::string>()));
    }

    if (!doc.contains("publications") || !doc["publications"].is_array())
        throw std::runtime_error("missing or non-array \"publications\"");
    for (const auto& entry : doc["publications"]) {
        if (!entry.is_object() || !entry.contains("year") || !entry.contains("citations") ||
            !entry["year"].is_number_integer() || !entry["citations"].is_number_integer())
            throw std::runtime_error("publication entries need integer \"year\" and \"citations\"");
        PublicationRef ref;
        ref.year = entry["year"].get<int>();
        ref.citations = entry["citations"].get<std::int64_t>();
        if (ref.year < 1900 || ref.year > max_year)
            throw std::runtime_error("publication year " + std::to_string(ref.year) +
                                     " outside [1900, " + std::to_string(max_year) + "]");
        if (ref.citations < 0) throw std::runtime_error("negative citation count");
        record.publications.push_back(ref);
    }
    return record;
}

}  // namespace

ParseResult parse_records(std::istream& input, const ParseOptions& options) {
    const int max_year = options.max_year > 0 ? options.max_year : current_utc_year() + 1;

    ParseResult result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            json doc = json::parse(line);
            SoftwareRecord record = record_from_json(doc, max_year);
            if (!seen_ids.insert(record.id).second) throw DuplicateIdError(record.id);
            result.records.push_back(std::move(record));
        } catch (const DuplicateIdError&) {
            throw;
        } catch (const std::exception& e) {
            if (options.fail_fast) throw RecordParseError(line_no, e.what());
            result.issues.push_back({line_no, e.what()});
        }
    }
    return result;
}

std::string record_to_jsonl(const SoftwareRecord& record) {
    json pubs = json::array();
    for (const auto& p : record.publications)
        pubs.push_back({{"year", p.year}, {"citations", p.citations}});
    json doc = {{"id", record.id},
                {"name", record.name},
                {"urls", record.urls},
                {"publications", std::move(pubs)}};
    return doc.dump();
}

void serialize_records(const std::vector<SoftwareRecord>& records, std::ostream& out) {
    for (const auto& record : records) out << record_to_jsonl(record) << '\n';
}

std::optional<PublicationRef> best_publication(const SoftwareRecord& record) {
    const PublicationRef* best = nullptr;
    for (const auto& p : record.publications) {
        if (!best || p.citations > best->citations ||
            (p.citations == best->citations && p.year < best->year))
            best = &p;
    }
    if (!best) return std::nullopt;
    return *best;
}

}  // namespace surro
