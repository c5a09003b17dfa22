#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace chernforge {

/// Exact rational arithmetic with arbitrary-precision integers; all symbolic
/// symmetric-function work happens over this type.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace chernforge
