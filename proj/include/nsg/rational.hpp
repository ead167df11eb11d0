#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace nsg {

// Exact arithmetic everywhere outside the iterative solver.
using Rational = mpq_class;

/// Parses "num/den", a plain integer, or a decimal like "0.25" (rationalized
/// exactly). Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical "num/den" form ("3/4", "2/1").
std::string to_fraction_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double v) { return Rational(v); }

}  // namespace nsg
