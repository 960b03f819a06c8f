#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace surro {

// UTC-only civil time helpers on the proleptic Gregorian calendar.
// Timestamps throughout the toolkit are epoch seconds at second precision.

bool is_leap_year(int year);
int days_in_month(int year, int month);

std::int64_t civil_to_epoch(int year, int month, int day,
                            int hour = 0, int minute = 0, int second = 0);
void epoch_to_civil(std::int64_t epoch, int& year, int& month, int& day,
                    int& hour, int& minute, int& second);

int year_of(std::int64_t epoch);

// July 2, 00:00:00 UTC of the given year; the anchor instant used when a
// source gives only a calendar year.
std::int64_t mid_year_epoch(int year);

// "2016-02-18T18:55:03Z"
std::string format_iso8601(std::int64_t epoch);
std::optional<std::int64_t> parse_iso8601(std::string_view text);

// "20160218185503"
std::string format_timestamp14(std::int64_t epoch);

std::int64_t now_epoch();
int current_utc_year();

}  // namespace surro
