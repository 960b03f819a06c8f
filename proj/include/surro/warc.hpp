#pragma once

#include "surro/url.hpp"

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace surro {

enum class WarcRecordType { Response, Request, Warcinfo };

std::string warc_type_label(WarcRecordType type);

// One archival record. `payload` carries the raw block bytes (for
// response/request records, a full HTTP message). `extra_headers` holds any
// WARC headers beyond the standard set, e.g. WARC-Truncated.
struct WarcRecord {
    WarcRecordType type = WarcRecordType::Response;
    std::string target_uri;  // empty for warcinfo
    std::int64_t timestamp = 0;
    std::vector<std::pair<std::string, std::string>> extra_headers;
    std::string payload;
    std::string record_id;  // urn:uuid:... (no angle brackets)
};

struct WriteSpan {
    std::uint64_t offset = 0;
    std::uint64_t length = 0;
};

// Serializes records per WARC/1.0 (ISO 28500). With gzip enabled each record
// becomes its own gzip member, the conventional .warc.gz layout.
class WarcWriter {
public:
    explicit WarcWriter(std::ostream& out, bool gzip = true);

    WriteSpan write(const WarcRecord& record);  // throws on invalid record or sink error

private:
    std::ostream& out_;
    bool gzip_;
    std::uint64_t offset_ = 0;
};

class WarcParseError : public std::runtime_error {
public:
    WarcParseError(std::uint64_t offset, const std::string& message)
        : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}
    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

// Streaming reader for plain or per-record-gzipped WARC files. Offsets in
// errors refer to the logical (decompressed) stream. Records of types other
// than response/request/warcinfo are skipped. Garbage after the last
// well-formed record stops iteration and sets trailing_garbage().
class WarcReader {
public:
    explicit WarcReader(std::istream& in);
    ~WarcReader();

    std::optional<WarcRecord> next();  // throws WarcParseError
    bool trailing_garbage() const { return trailing_garbage_; }

private:
    class Source;

    std::optional<std::string> read_line();

    std::unique_ptr<Source> source_;
    std::size_t records_read_ = 0;
    bool finished_ = false;
    bool trailing_garbage_ = false;
};

std::string make_record_id();

std::string gzip_compress(std::string_view data);

// HTTP message helpers for payload construction and dissection.
std::string_view http_body(std::string_view message);
std::string build_http_response(int status, std::string_view reason,
                                const std::vector<std::pair<std::string, std::string>>& headers,
                                std::string_view body);
std::string build_http_request(const Url& url, std::string_view user_agent);

}  // namespace surro
