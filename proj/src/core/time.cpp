#include "vaxwatch/core/time.hpp"

#include <array>
#include <cstdio>

namespace vaxwatch::core {

namespace {

// Days-from-civil / civil-from-days, valid over the proleptic Gregorian
// calendar (Howard Hinnant's algorithms).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (!is_digit(c)) return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

unsigned days_in_month(int year, unsigned month) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[month - 1];
}

bool valid_civil(unsigned y, unsigned m, unsigned d) {
    return m >= 1 && m <= 12 && d >= 1 && d <= days_in_month(static_cast<int>(y), m);
}

}  // namespace

Date date_from_civil(int year, unsigned month, unsigned day) {
    return Date{static_cast<std::int32_t>(days_from_civil(year, month, day))};
}

CivilDate civil_from_date(Date d) { return civil_from_days(d.days); }

std::optional<Date> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    unsigned y, m, d;
    if (!parse_fixed_uint(s, 0, 4, y) || !parse_fixed_uint(s, 5, 2, m) ||
        !parse_fixed_uint(s, 8, 2, d))
        return std::nullopt;
    if (!valid_civil(y, m, d)) return std::nullopt;
    return date_from_civil(static_cast<int>(y), m, d);
}

std::string format_date(Date d) {
    CivilDate c = civil_from_date(d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.year, c.month, c.day);
    return buf;
}

Date Instant::day() const {
    std::int64_t d = seconds / 86400;
    if (seconds < 0 && seconds % 86400 != 0) --d;
    return Date{static_cast<std::int32_t>(d)};
}

std::optional<Instant> parse_instant(std::string_view s) {
    // Date part.
    if (s.size() < 20 || s[10] != 'T') return std::nullopt;
    auto date = parse_date(s.substr(0, 10));
    if (!date) return std::nullopt;

    unsigned hh, mm, ss;
    if (s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!parse_fixed_uint(s, 11, 2, hh) || !parse_fixed_uint(s, 14, 2, mm) ||
        !parse_fixed_uint(s, 17, 2, ss))
        return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

    std::size_t pos = 19;
    // Optional fractional seconds, truncated.
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t ndigits = 0;
        while (pos < s.size() && is_digit(s[pos])) {
            ++pos;
            ++ndigits;
        }
        if (ndigits == 0) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;

    std::int64_t offset = 0;
    if (s[pos] == 'Z') {
        if (pos + 1 != s.size()) return std::nullopt;
    } else if (s[pos] == '+' || s[pos] == '-') {
        bool neg = s[pos] == '-';
        unsigned oh, om;
        if (pos + 6 != s.size() || s[pos + 3] != ':') return std::nullopt;
        if (!parse_fixed_uint(s, pos + 1, 2, oh) || !parse_fixed_uint(s, pos + 4, 2, om))
            return std::nullopt;
        if (oh > 14 || om > 59) return std::nullopt;
        offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
        if (neg) offset = -offset;
    } else {
        return std::nullopt;
    }

    std::int64_t secs = static_cast<std::int64_t>(date->days) * 86400 +
                        hh * 3600 + mm * 60 + ss - offset;
    return Instant{secs};
}

std::string format_instant(Instant t) {
    Date d = t.day();
    std::int64_t rem = t.seconds - static_cast<std::int64_t>(d.days) * 86400;
    CivilDate c = civil_from_date(d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", c.year, c.month,
                  c.day, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60), static_cast<long long>(rem % 60));
    return buf;
}

}  // namespace vaxwatch::core
