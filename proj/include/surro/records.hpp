#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace surro {

struct PublicationRef {
    int year = 0;
    std::int64_t citations = 0;

    bool operator==(const PublicationRef&) const = default;
};

// One software product from a directory export: identifier, display name,
// landing-page URLs (normalized on ingest) and the referencing publications.
struct SoftwareRecord {
    std::string id;
    std::string name;
    std::vector<std::string> urls;
    std::vector<PublicationRef> publications;

    bool operator==(const SoftwareRecord&) const = default;
};

struct RecordIssue {
    std::size_t line = 0;  // 1-based input line
    std::string message;
};

class RecordParseError : public std::runtime_error {
public:
    RecordParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class DuplicateIdError : public std::runtime_error {
public:
    explicit DuplicateIdError(const std::string& id)
        : std::runtime_error("duplicate record id \"" + id + "\""), id_(id) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

struct ParseOptions {
    // fail_fast: throw RecordParseError on the first malformed line.
    // Otherwise malformed lines are skipped and collected as issues.
    bool fail_fast = false;
    // Publication years must lie in [1900, max_year]. Defaults to the
    // current UTC year + 1.
    int max_year = 0;
};

struct ParseResult {
    std::vector<SoftwareRecord> records;
    std::vector<RecordIssue> issues;
};

// Reads newline-delimited JSON records. Duplicate ids are a dataset-level
// error (DuplicateIdError) in both modes. Unknown JSON fields are ignored.
ParseResult parse_records(std::istream& input, const ParseOptions& options = {});

std::string record_to_jsonl(const SoftwareRecord& record);
void serialize_records(const std::vector<SoftwareRecord>& records, std::ostream& out);

// The publication with the most citations; ties broken by earliest year,
// then input order. Empty list yields nullopt.
std::optional<PublicationRef> best_publication(const SoftwareRecord& record);

}  // namespace surro
