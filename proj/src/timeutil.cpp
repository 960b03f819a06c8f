#include "surro/timeutil.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace surro {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) throw std::out_of_range("month out of range");
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays[month - 1];
}

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

std::int64_t civil_to_epoch(int year, int month, int day,
                            int hour, int minute, int second) {
    if (month < 1 || month > 12) throw std::out_of_range("month out of range");
    if (day < 1 || day > days_in_month(year, month)) throw std::out_of_range("day out of range");
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59)
        throw std::out_of_range("time of day out of range");
    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

void epoch_to_civil(std::int64_t epoch, int& year, int& month, int& day,
                    int& hour, int& minute, int& second) {
    std::int64_t days = epoch / 86400;
    std::int64_t rem = epoch % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    civil_from_days(days, year, month, day);
    hour = static_cast<int>(rem / 3600);
    minute = static_cast<int>((rem % 3600) / 60);
    second = static_cast<int>(rem % 60);
}

int year_of(std::int64_t epoch) {
    int y, mo, d, h, mi, s;
    epoch_to_civil(epoch, y, mo, d, h, mi, s);
    return y;
}

std::int64_t mid_year_epoch(int year) {
    return civil_to_epoch(year, 7, 2);
}

std::string format_iso8601(std::int64_t epoch) {
    int y, mo, d, h, mi, s;
    epoch_to_civil(epoch, y, mo, d, h, mi, s);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d, h, mi, s);
    return buf;
}

namespace {

bool parse_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
    if (pos + count > text.size()) return false;
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = text[pos + i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view text) {
    // YYYY-MM-DDThh:mm:ssZ
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
        text[13] != ':' || text[16] != ':' || text[19] != 'Z')
        return std::nullopt;
    int y, mo, d, h, mi, s;
    if (!parse_digits(text, 0, 4, y) || !parse_digits(text, 5, 2, mo) ||
        !parse_digits(text, 8, 2, d) || !parse_digits(text, 11, 2, h) ||
        !parse_digits(text, 14, 2, mi) || !parse_digits(text, 17, 2, s))
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || h > 23 || mi > 59 || s > 59)
        return std::nullopt;
    return civil_to_epoch(y, mo, d, h, mi, s);
}

std::string format_timestamp14(std::int64_t epoch) {
    int y, mo, d, h, mi, s;
    epoch_to_civil(epoch, y, mo, d, h, mi, s);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d%02d%02d%02d", y, mo, d, h, mi, s);
    return buf;
}

std::int64_t now_epoch() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

int current_utc_year() {
    return year_of(now_epoch());
}

}  // namespace surro
