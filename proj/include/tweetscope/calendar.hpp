#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tweetscope {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::year_month_day;

/// ISO-8601 week-numbering key, rendered as "2020-W11".
struct IsoWeek {
    int year = 1970;
    unsigned week = 1;

    friend auto operator<=>(const IsoWeek&, const IsoWeek&) = default;

    std::string to_string() const;
    std::chrono::sys_days monday() const;
    IsoWeek next() const;

    static std::optional<IsoWeek> parse(std::string_view text);
};

IsoWeek iso_week_of(std::chrono::sys_days day);
unsigned iso_weeks_in_year(int year);

/// Accepts "2020-03-12T10:00:00Z" style ISO-8601 (optional fraction, Z or
/// numeric offset, space instead of 'T') and Twitter's legacy
/// "Thu Mar 12 10:00:00 +0000 2020". Result is UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

inline Date utc_date(Timestamp ts) {
    return Date{std::chrono::floor<std::chrono::days>(ts)};
}

}  // namespace tweetscope
