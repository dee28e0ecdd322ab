#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace cdeform {

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
///
/// Expression templates are disabled so the type composes cleanly with Eigen's
/// own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p", "-p", "p/q" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Formats as "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline bool is_zero(const Rational& value) { return value == 0; }

}  // namespace cdeform
