#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vaxwatch::core {

/// Calendar day in UTC, stored as days since 1970-01-01.
struct Date {
    std::int32_t days = 0;

    auto operator<=>(const Date&) const = default;

    Date next() const { return Date{days + 1}; }
    Date prev() const { return Date{days - 1}; }
};

struct CivilDate {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31
};

Date date_from_civil(int year, unsigned month, unsigned day);
CivilDate civil_from_date(Date d);

/// Strict "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view s);
std::string format_date(Date d);

/// UTC instant, seconds since the Unix epoch.
struct Instant {
    std::int64_t seconds = 0;

    auto operator<=>(const Instant&) const = default;

    /// UTC day this instant falls on.
    Date day() const;
};

/// Accepts "YYYY-MM-DDTHH:MM:SS" followed by "Z" or "+HH:MM"/"-HH:MM".
/// Fractional seconds are accepted and truncated. Offsets are folded into UTC.
std::optional<Instant> parse_instant(std::string_view s);

/// Always "YYYY-MM-DDTHH:MM:SSZ".
std::string format_instant(Instant t);

}  // namespace vaxwatch::core
