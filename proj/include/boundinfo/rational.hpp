#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace boundinfo {

/// Exact rational probability. All built-in tables are dyadic, so 64-bit
/// numerators/denominators are ample (support cap is 2^24 rows).
using Rat = boost::rational<std::int64_t>;

/// Canonical "num/den" rendering ("3/8", "1/1").
std::string rat_to_string(const Rat& r);

/// Parses "num/den" or a bare integer. Throws std::invalid_argument on junk.
Rat rat_from_string(std::string_view s);

double rat_to_double(const Rat& r);

/// Nearest rational to x within tol, via continued fractions. Returns
/// nullopt if no denominator <= max_den gets within tol.
std::optional<Rat> rationalize(double x, double tol = 1e-12,
                               std::int64_t max_den = std::int64_t{1} << 40);

}  // namespace boundinfo
