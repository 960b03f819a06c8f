#include "surro/warc.hpp"

#include <zlib.h>

#include "surro/timeutil.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <random>

namespace surro {

std::string warc_type_label(WarcRecordType type) {
    switch (type) {
        case WarcRecordType::Response: return "response";
        case WarcRecordType::Request: return "request";
        case WarcRecordType::Warcinfo: return "warcinfo";
    }
    throw std::invalid_argument("bad WarcRecordType");
}

namespace {

constexpr std::size_t kChunk = 64 * 1024;
constexpr std::size_t kMaxHeaderLine = 64 * 1024;

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string content_type_for(WarcRecordType type) {
    switch (type) {
        case WarcRecordType::Response: return "application/http; msgtype=response";
        case WarcRecordType::Request: return "application/http; msgtype=request";
        case WarcRecordType::Warcinfo: return "application/warc-fields";
    }
    return {};
}

std::string serialize_record(const WarcRecord& record) {
    std::string out;
    out.reserve(record.payload.size() + 512);
    out += "WARC/1.0\r\n";
    out += "WARC-Type: " + warc_type_label(record.type) + "\r\n";
    out += "WARC-Record-ID: <" + record.record_id + ">\r\n";
    out += "WARC-Date: " + format_iso8601(record.timestamp) + "\r\n";
    if (!record.target_uri.empty()) out += "WARC-Target-URI: " + record.target_uri + "\r\n";
    for (const auto& [name, value] : record.extra_headers) out += name + ": " + value + "\r\n";
    out += "Content-Type: " + content_type_for(record.type) + "\r\n";
    out += "Content-Length: " + std::to_string(record.payload.size()) + "\r\n";
    out += "\r\n";
    out += record.payload;
    out += "\r\n\r\n";
    return out;
}

}  // namespace

std::string gzip_compress(std::string_view data) {
    z_stream z{};
    if (deflateInit2(&z, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");

    std::string out;
    z.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    z.avail_in = static_cast<uInt>(data.size());
    char buf[kChunk];
    int rc;
    do {
        z.next_out = reinterpret_cast<Bytef*>(buf);
        z.avail_out = sizeof(buf);
        rc = deflate(&z, Z_FINISH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            deflateEnd(&z);
            throw std::runtime_error("deflate failed");
        }
        out.append(buf, sizeof(buf) - z.avail_out);
    } while (rc != Z_STREAM_END);
    deflateEnd(&z);
    return out;
}

WarcWriter::WarcWriter(std::ostream& out, bool gzip) : out_(out), gzip_(gzip) {}

WriteSpan WarcWriter::write(const WarcRecord& record) {
    if (record.record_id.empty()) throw std::invalid_argument("record id required");
    if (record.type != WarcRecordType::Warcinfo && record.target_uri.empty())
        throw std::invalid_argument("target URI required for " + warc_type_label(record.type));
    if (record.timestamp > now_epoch() + 300)
        throw std::invalid_argument("record timestamp lies in the future");

    std::string block = serialize_record(record);
    if (gzip_) block = gzip_compress(block);

    out_.write(block.data(), static_cast<std::streamsize>(block.size()));
    if (!out_) throw std::runtime_error("WARC sink write failed");

    WriteSpan span{offset_, block.size()};
    offset_ += block.size();
    return span;
}

// ---------------------------------------------------------------------------
// Reader

// Pulls logical bytes out of a plain or multi-member-gzip stream, tracking
// the consumed logical offset.
class WarcReader::Source {
public:
    explicit Source(std::istream& in) : in_(in) {
        int c0 = in_.peek();
        if (c0 == 0x1f) {
            gzip_ = true;
            if (inflateInit2(&z_, 15 + 32) != Z_OK) throw std::runtime_error("inflateInit2 failed");
            z_.avail_in = 0;
            z_.next_in = nullptr;
        }
    }
    ~Source() {
        if (gzip_) inflateEnd(&z_);
    }

    std::uint64_t offset() const { return offset_; }
    bool garbage_at_end() const { return garbage_at_end_; }

    // Returns bytes actually produced; short only at end of stream.
    std::size_t read(char* dst, std::size_t want) {
        std::size_t produced = gzip_ ? read_gzip(dst, want) : read_plain(dst, want);
        offset_ += produced;
        return produced;
    }

    std::optional<char> read_byte() {
        char c;
        if (read(&c, 1) == 1) return c;
        return std::nullopt;
    }

private:
    std::size_t read_plain(char* dst, std::size_t want) {
        in_.read(dst, static_cast<std::streamsize>(want));
        return static_cast<std::size_t>(in_.gcount());
    }

    std::size_t read_gzip(char* dst, std::size_t want) {
        std::size_t produced = 0;
        while (produced < want && !logical_eof_) {
            if (z_.avail_in == 0 && !refill()) {
                if (mid_member_) throw WarcParseError(offset_ + produced, "truncated gzip member");
                logical_eof_ = true;
                break;
            }
            z_.next_out = reinterpret_cast<Bytef*>(dst + produced);
            z_.avail_out = static_cast<uInt>(want - produced);
            int rc = inflate(&z_, Z_NO_FLUSH);
            produced = want - z_.avail_out;
            if (rc == Z_STREAM_END) {
                mid_member_ = false;
                if (z_.avail_in == 0 && !refill()) {
                    logical_eof_ = true;
                } else if (z_.next_in[0] != 0x1f ||
                           (z_.avail_in >= 2 && z_.next_in[1] != 0x8b)) {
                    // non-gzip bytes after the final member
                    garbage_at_end_ = true;
                    logical_eof_ = true;
                } else if (inflateReset(&z_) != Z_OK) {
                    throw WarcParseError(offset_ + produced, "gzip reset failed");
                }
            } else if (rc == Z_OK || rc == Z_BUF_ERROR) {
                mid_member_ = true;
            } else {
                throw WarcParseError(offset_ + produced, "corrupt gzip data");
            }
        }
        return produced;
    }

    bool refill() {
        if (in_.eof()) return false;
        in_.read(inbuf_, sizeof(inbuf_));
        std::streamsize got = in_.gcount();
        if (got <= 0) return false;
        z_.next_in = reinterpret_cast<Bytef*>(inbuf_);
        z_.avail_in = static_cast<uInt>(got);
        return true;
    }

    std::istream& in_;
    bool gzip_ = false;
    bool mid_member_ = false;
    bool logical_eof_ = false;
    bool garbage_at_end_ = false;
    z_stream z_{};
    char inbuf_[kChunk];
    std::uint64_t offset_ = 0;
};

WarcReader::WarcReader(std::istream& in) : source_(std::make_unique<Source>(in)) {}

WarcReader::~WarcReader() = default;

std::optional<std::string> WarcReader::read_line() {
    std::string line;
    while (true) {
        auto c = source_->read_byte();
        if (!c) {
            if (line.empty()) return std::nullopt;
            return line;
        }
        if (*c == '\n') {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        line.push_back(*c);
        if (line.size() > kMaxHeaderLine)
            throw WarcParseError(source_->offset(), "header line exceeds limit");
    }
}

std::optional<WarcRecord> WarcReader::next() {
    while (!finished_) {
        // Skip inter-record newline padding.
        std::optional<char> c;
        do {
            c = source_->read_byte();
        } while (c && (*c == '\r' || *c == '\n'));
        if (!c) {
            finished_ = true;
            if (source_->garbage_at_end()) trailing_garbage_ = true;
            return std::nullopt;
        }

        const std::uint64_t record_offset = source_->offset() - 1;
        std::string version(1, *c);
        if (auto rest = read_line()) version += *rest;

        if (version.rfind("WARC/1.", 0) != 0) {
            if (records_read_ > 0) {
                trailing_garbage_ = true;
                finished_ = true;
                return std::nullopt;
            }
            throw WarcParseError(record_offset, "not a WARC record header");
        }

        std::vector<std::pair<std::string, std::string>> headers;
        while (true) {
            auto line = read_line();
            if (!line) throw WarcParseError(record_offset, "unterminated record header");
            if (line->empty()) break;
            if ((*line)[0] == ' ' || (*line)[0] == '\t') {
                if (headers.empty())
                    throw WarcParseError(record_offset, "continuation before any header");
                headers.back().second += ' ' + std::string(line->substr(line->find_first_not_of(" \t")));
                continue;
            }
            auto colon = line->find(':');
            if (colon == std::string::npos)
                throw WarcParseError(record_offset, "malformed header line: " + *line);
            std::string name = line->substr(0, colon);
            std::string value = line->substr(colon + 1);
            auto start = value.find_first_not_of(" \t");
            value = start == std::string::npos ? "" : value.substr(start);
            headers.emplace_back(std::move(name), std::move(value));
        }

        auto find_header = [&](std::string_view name) -> const std::string* {
            for (const auto& [n, v] : headers)
                if (iequals(n, name)) return &v;
            return nullptr;
        };

        const std::string* length_text = find_header("Content-Length");
        if (!length_text) throw WarcParseError(record_offset, "missing Content-Length");
        std::uint64_t content_length = 0;
        for (char ch : *length_text) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw WarcParseError(record_offset, "non-numeric Content-Length");
            content_length = content_length * 10 + static_cast<std::uint64_t>(ch - '0');
        }

        const std::string* type_text = find_header("WARC-Type");
        const std::string* date_text = find_header("WARC-Date");
        const std::string* id_text = find_header("WARC-Record-ID");
        if (!type_text || !date_text || !id_text)
            throw WarcParseError(record_offset, "missing mandatory WARC header");

        std::string payload(content_length, '\0');
        if (source_->read(payload.data(), content_length) != content_length)
            throw WarcParseError(record_offset, "truncated record payload");

        char terminator[4];
        if (source_->read(terminator, 4) != 4 || std::memcmp(terminator, "\r\n\r\n", 4) != 0)
            throw WarcParseError(record_offset, "missing record terminator");

        std::optional<WarcRecordType> type;
        if (iequals(*type_text, "response")) type = WarcRecordType::Response;
        else if (iequals(*type_text, "request")) type = WarcRecordType::Request;
        else if (iequals(*type_text, "warcinfo")) type = WarcRecordType::Warcinfo;
        if (!type) continue;  // other record kinds are skipped, not errors

        auto timestamp = parse_iso8601(*date_text);
        if (!timestamp) throw WarcParseError(record_offset, "bad WARC-Date: " + *date_text);

        WarcRecord record;
        record.type = *type;
        record.timestamp = *timestamp;
        record.payload = std::move(payload);
        if (const std::string* uri = find_header("WARC-Target-URI")) record.target_uri = *uri;
        std::string id = *id_text;
        if (id.size() >= 2 && id.front() == '<' && id.back() == '>')
            id = id.substr(1, id.size() - 2);
        record.record_id = std::move(id);
        for (auto& [name, value] : headers) {
            static constexpr std::string_view standard[] = {
                "WARC-Type", "WARC-Record-ID", "WARC-Date", "WARC-Target-URI",
                "Content-Type", "Content-Length"};
            bool is_standard = std::any_of(std::begin(standard), std::end(standard),
                                           [&](std::string_view s) { return iequals(name, s); });
            if (!is_standard) record.extra_headers.emplace_back(std::move(name), std::move(value));
        }

        ++records_read_;
        return record;
    }
    return std::nullopt;
}

std::string make_record_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::uniform_int_distribution<std::uint64_t> dist;
    std::uint64_t hi = dist(rng);
    std::uint64_t lo = dist(rng);
    // RFC 4122 version 4, variant 1
    hi = (hi & 0xffffffffffff0fffULL) | 0x0000000000004000ULL;
    lo = (lo & 0x3fffffffffffffffULL) | 0x8000000000000000ULL;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "urn:uuid:%08x-%04x-%04x-%04x-%04x%08x",
                  static_cast<unsigned>(hi >> 32), static_cast<unsigned>((hi >> 16) & 0xffff),
                  static_cast<unsigned>(hi & 0xffff), static_cast<unsigned>(lo >> 48),
                  static_cast<unsigned>((lo >> 32) & 0xffff), static_cast<unsigned>(lo & 0xffffffff));
    return buf;
}

std::string_view http_body(std::string_view message) {
    auto pos = message.find("\r\n\r\n");
    if (pos != std::string_view::npos) return message.substr(pos + 4);
    pos = message.find("\n\n");
    if (pos != std::string_view::npos) return message.substr(pos + 2);
    return message;
}

std::string build_http_response(int status, std::string_view reason,
                                const std::vector<std::pair<std::string, std::string>>& headers,
                                std::string_view body) {
    std::string out = "HTTP/1.1 " + std::to_string(status) + " " + std::string(reason) + "\r\n";
    bool has_length = false;
    for (const auto& [name, value] : headers) {
        if (iequals(name, "content-length")) has_length = true;
        out += name + ": " + value + "\r\n";
    }
    if (!has_length) out += "Content-Length: " + std::to_string(body.size()) + "\r\n";
    out += "\r\n";
    out += body;
    return out;
}

std::string build_http_request(const Url& url, std::string_view user_agent) {
    std::string target = url.path().empty() ? "/" : url.path();
    if (url.query()) target += "?" + *url.query();
    std::string out = "GET " + target + " HTTP/1.1\r\n";
    out += "Host: " + url.authority() + "\r\n";
    out += "User-Agent: " + std::string(user_agent) + "\r\n";
    out += "Accept: */*\r\nConnection: close\r\n\r\n";
    return out;
}

}  // namespace surro
