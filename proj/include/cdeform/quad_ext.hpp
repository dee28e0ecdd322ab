#pragma once

#include "cdeform/rational.hpp"

#include <complex>
#include <stdexcept>
#include <string>

namespace cdeform {

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element re + im * sqrt(-d) of the imaginary quadratic field Q(sqrt(-d)), d > 0 rational.
///
/// Elements with im == 0 are rationals and combine with any field; otherwise both operands
/// of a binary operation must share d.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rational re, Rational im, Rational d);

  const Rational& re() const { return re_; }
  /// Coefficient of sqrt(-d).
  const Rational& im() const { return im_; }
  const Rational& d() const { return d_; }

  QuadExt conj() const;
  /// |z|^2 = re^2 + d im^2.
  Rational norm() const { return re_ * re_ + d_ * im_ * im_; }
  bool is_rational() const { return im_ == 0; }
  std::complex<double> to_complex() const;
  std::string to_string() const;

  QuadExt operator-() const;
  friend QuadExt operator+(const QuadExt& a, const QuadExt& b);
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b);
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b);
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b);
  friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  static Rational common_d(const QuadExt& a, const QuadExt& b);
  Rational re_ = 0;
  Rational im_ = 0;
  Rational d_ = 1;
};

/// The element sqrt(-d).
QuadExt sqrt_minus(const Rational& d);

}  // namespace cdeform
