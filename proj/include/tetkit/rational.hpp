// Exact rational scalar used for all weights and margins-of-victory.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace tetkit {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline long to_long(const Rat& r) { return static_cast<long>(numerator(r)); }

// Canonical form: "p" for integers, "p/q" otherwise, q > 0, lowest terms.
std::string rat_str(const Rat& r);

// Accepts "p" or "p/q" with optional leading '-'. Returns nullopt on junk.
std::optional<Rat> parse_rat(const std::string& s);

}  // namespace tetkit
