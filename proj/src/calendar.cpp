#include "tweetscope/calendar.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace tweetscope {

namespace chr = std::chrono;

namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t width, int& out) {
    if (pos + width > text.size()) {
        return false;
    }
    for (std::size_t i = pos; i < pos + width; ++i) {
        if (text[i] < '0' || text[i] > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + width, out);
    return ec == std::errc{} && ptr == text.data() + pos + width;
}

std::optional<Timestamp> make_timestamp(int y, int mo, int d, int h, int mi, int s,
                                        int offset_minutes) {
    Date date{chr::year{y}, chr::month{static_cast<unsigned>(mo)},
              chr::day{static_cast<unsigned>(d)}};
    if (!date.ok() || h > 23 || mi > 59 || s > 60) {
        return std::nullopt;
    }
    Timestamp ts = chr::sys_days{date} + chr::hours{h} + chr::minutes{mi} + chr::seconds{s};
    return ts - chr::minutes{offset_minutes};
}

// Parses "Z", "+hh:mm", "+hhmm", "+hh" or "" at pos. Returns false on junk.
bool parse_offset(std::string_view text, std::size_t pos, int& minutes) {
    minutes = 0;
    if (pos == text.size()) {
        return true;
    }
    if (text[pos] == 'Z' || text[pos] == 'z') {
        return pos + 1 == text.size();
    }
    if (text[pos] != '+' && text[pos] != '-') {
        return false;
    }
    const int sign = text[pos] == '-' ? -1 : 1;
    int hh = 0;
    int mm = 0;
    if (!read_int(text, pos + 1, 2, hh)) {
        return false;
    }
    std::size_t rest = pos + 3;
    if (rest < text.size() && text[rest] == ':') {
        ++rest;
    }
    if (rest < text.size()) {
        if (!read_int(text, rest, 2, mm) || rest + 2 != text.size()) {
            return false;
        }
    }
    if (hh > 23 || mm > 59) {
        return false;
    }
    minutes = sign * (hh * 60 + mm);
    return true;
}

std::optional<Timestamp> parse_iso(std::string_view text) {
    int y, mo, d, h, mi, s;
    if (text.size() < 19 || !read_int(text, 0, 4, y) || text[4] != '-' ||
        !read_int(text, 5, 2, mo) || text[7] != '-' || !read_int(text, 8, 2, d) ||
        (text[10] != 'T' && text[10] != 't' && text[10] != ' ') ||
        !read_int(text, 11, 2, h) || text[13] != ':' || !read_int(text, 14, 2, mi) ||
        text[16] != ':' || !read_int(text, 17, 2, s)) {
        return std::nullopt;
    }
    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t digits_start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
        }
        if (pos == digits_start) {
            return std::nullopt;
        }
    }
    int offset = 0;
    if (!parse_offset(text, pos, offset)) {
        return std::nullopt;
    }
    return make_timestamp(y, mo, d, h, mi, s, offset);
}

constexpr std::array<std::string_view, 12> kMonths = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

// "Thu Mar 12 10:00:00 +0000 2020"
std::optional<Timestamp> parse_twitter(std::string_view text) {
    if (text.size() != 30 || text[3] != ' ' || text[7] != ' ' || text[10] != ' ' ||
        text[19] != ' ' || text[25] != ' ') {
        return std::nullopt;
    }
    int mo = 0;
    for (std::size_t i = 0; i < kMonths.size(); ++i) {
        if (text.substr(4, 3) == kMonths[i]) {
            mo = static_cast<int>(i) + 1;
        }
    }
    int d, h, mi, s, y, offset;
    if (mo == 0 || !read_int(text, 8, 2, d) || !read_int(text, 11, 2, h) || text[13] != ':' ||
        !read_int(text, 14, 2, mi) || text[16] != ':' || !read_int(text, 17, 2, s) ||
        !read_int(text, 26, 4, y)) {
        return std::nullopt;
    }
    std::string zone{text.substr(20, 5)};
    if (!parse_offset(zone, 0, offset)) {
        return std::nullopt;
    }
    return make_timestamp(y, mo, d, h, mi, s, offset);
}

}  // namespace

std::string IsoWeek::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-W%02u", year, week);
    return buf;
}

chr::sys_days IsoWeek::monday() const {
    const chr::sys_days jan4{chr::year{year} / chr::January / 4};
    const unsigned iso_wd = chr::weekday{jan4}.iso_encoding();
    return jan4 - chr::days{iso_wd - 1} + chr::days{7 * (week - 1)};
}

IsoWeek IsoWeek::next() const {
    return iso_week_of(monday() + chr::days{7});
}

std::optional<IsoWeek> IsoWeek::parse(std::string_view text) {
    int y = 0;
    int w = 0;
    if (text.size() != 8 || !read_int(text, 0, 4, y) || text[4] != '-' || text[5] != 'W' ||
        !read_int(text, 6, 2, w)) {
        return std::nullopt;
    }
    if (w < 1 || static_cast<unsigned>(w) > iso_weeks_in_year(y)) {
        return std::nullopt;
    }
    return IsoWeek{y, static_cast<unsigned>(w)};
}

IsoWeek iso_week_of(chr::sys_days day) {
    const unsigned iso_wd = chr::weekday{day}.iso_encoding();
    // The ISO year is the year holding this week's Thursday.
    const chr::sys_days thursday = day + chr::days{4} - chr::days{iso_wd};
    const chr::year y = Date{thursday}.year();
    const auto ordinal = (thursday - chr::sys_days{y / chr::January / 1}).count();
    return IsoWeek{static_cast<int>(y), static_cast<unsigned>(ordinal / 7 + 1)};
}

unsigned iso_weeks_in_year(int year) {
    return iso_week_of(chr::sys_days{chr::year{year} / chr::December / 28}).week;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    if (auto ts = parse_iso(text)) {
        return ts;
    }
    return parse_twitter(text);
}

std::string format_timestamp(Timestamp ts) {
    const auto day = chr::floor<chr::days>(ts);
    const Date date{day};
    const chr::hh_mm_ss tod{ts - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    return buf;
}

std::optional<Date> parse_date(std::string_view text) {
    int y, m, d;
    if (text.size() != 10 || !read_int(text, 0, 4, y) || text[4] != '-' ||
        !read_int(text, 5, 2, m) || text[7] != '-' || !read_int(text, 8, 2, d)) {
        return std::nullopt;
    }
    Date date{chr::year{y}, chr::month{static_cast<unsigned>(m)}, chr::day{static_cast<unsigned>(d)}};
    if (!date.ok()) {
        return std::nullopt;
    }
    return date;
}

std::string format_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

}  // namespace tweetscope
