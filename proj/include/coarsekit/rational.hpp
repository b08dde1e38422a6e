#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace coarsekit {

using Rational = mpq_class;

/// Parses "3", "-7/2" or a finite decimal such as "0.001" into an exact
/// rational. Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational abs_value(const Rational& q) { return abs(q); }

}  // namespace coarsekit
