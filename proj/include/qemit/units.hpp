#pragma once

#include <numbers>
#include <string>
#include <string_view>

#include "qemit/errors.hpp"

// Unit conventions: times are carried in ns and frequency-like quantities as
// angular rates in rad/ns everywhere inside the library. Boundaries (CLI,
// config files, CSV) speak MHz and ns and convert exactly once.

namespace qemit::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// A plain (cycles-per-second) frequency quoted in MHz, as an angular rate.
constexpr double mhz_to_rad_ns(double f_mhz) { return f_mhz * 1.0e-3 * two_pi; }
constexpr double rad_ns_to_mhz(double omega) { return omega / two_pi * 1.0e3; }

enum class Unit { mhz, ghz, rad_per_ns, ns, us, ms };

inline const char* unit_name(Unit u) {
    switch (u) {
        case Unit::mhz: return "MHz";
        case Unit::ghz: return "GHz";
        case Unit::rad_per_ns: return "rad/ns";
        case Unit::ns: return "ns";
        case Unit::us: return "us";
        case Unit::ms: return "ms";
    }
    return "?";
}

inline Unit parse_unit(std::string_view tag) {
    if (tag == "MHz") return Unit::mhz;
    if (tag == "GHz") return Unit::ghz;
    if (tag == "rad/ns") return Unit::rad_per_ns;
    if (tag == "ns") return Unit::ns;
    if (tag == "us" || tag == "µs") return Unit::us;
    if (tag == "ms") return Unit::ms;
    throw UsageError("unknown unit tag '" + std::string(tag) + "'");
}

namespace detail {

// Scale factor to the canonical unit of the dimension (rad/ns for
// frequency-like units, ns for times).
constexpr double canonical_factor(Unit u) {
    switch (u) {
        case Unit::mhz: return 1.0e-3 * two_pi;
        case Unit::ghz: return two_pi;
        case Unit::rad_per_ns: return 1.0;
        case Unit::ns: return 1.0;
        case Unit::us: return 1.0e3;
        case Unit::ms: return 1.0e6;
    }
    return 0.0;
}

constexpr bool is_time(Unit u) { return u == Unit::ns || u == Unit::us || u == Unit::ms; }

}  // namespace detail

inline double convert(double value, Unit from, Unit to) {
    if (detail::is_time(from) != detail::is_time(to)) {
        throw UsageError(std::string("cannot convert ") + unit_name(from) + " to " +
                         unit_name(to));
    }
    return value * (detail::canonical_factor(from) / detail::canonical_factor(to));
}

}  // namespace qemit::units
