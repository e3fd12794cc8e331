#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dilab {

// Calendar date backed by std::chrono; day arithmetic uses real calendars,
// not a 30-day convention.
struct Date {
    std::chrono::year_month_day ymd{};

    Date() = default;
    Date(int y, unsigned m, unsigned d)
        : ymd(std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}) {
        if (!ymd.ok()) throw std::invalid_argument("Date: invalid calendar date");
    }

    static Date parse_iso(const std::string& s) {
        int y = 0;
        unsigned m = 0, d = 0;
        if (std::sscanf(s.c_str(), "%d-%u-%u", &y, &m, &d) != 3)
            throw std::invalid_argument("Date: expected ISO-8601 YYYY-MM-DD, got '" + s + "'");
        return Date(y, m, d);
    }

    std::string to_iso() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        return std::string(buf);
    }

    int year() const { return static_cast<int>(ymd.year()); }

    std::chrono::sys_days to_sys_days() const { return std::chrono::sys_days{ymd}; }

    auto operator<=>(const Date& other) const { return to_sys_days() <=> other.to_sys_days(); }
    bool operator==(const Date& other) const { return ymd == other.ymd; }
};

inline long days_between(const Date& from, const Date& to) {
    return (to.to_sys_days() - from.to_sys_days()).count();
}

}  // namespace dilab
