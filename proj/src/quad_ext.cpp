#include "cdeform/quad_ext.hpp"

#include <cmath>

namespace cdeform {

QuadExt::QuadExt(Rational re, Rational im, Rational d) : re_(std::move(re)), im_(std::move(im)), d_(std::move(d)) {
  if (d_ <= 0) throw std::domain_error("QuadExt: d must be positive");
}

Rational QuadExt::common_d(const QuadExt& a, const QuadExt& b) {
  if (a.is_rational()) return b.d_;
  if (b.is_rational()) return a.d_;
  if (a.d_ != b.d_) throw FieldMismatch("QuadExt: operands live in different quadratic fields");
  return a.d_;
}

QuadExt QuadExt::conj() const { return QuadExt(re_, -im_, d_); }

std::complex<double> QuadExt::to_complex() const {
  return {to_double(re_), to_double(im_) * std::sqrt(to_double(d_))};
}

std::string QuadExt::to_string() const {
  if (is_rational()) return cdeform::to_string(re_);
  return cdeform::to_string(re_) + (im_ < 0 ? " - " : " + ") + cdeform::to_string(abs(im_)) + "*sqrt(-" +
         cdeform::to_string(d_) + ")";
}

QuadExt QuadExt::operator-() const { return QuadExt(-re_, -im_, d_); }

QuadExt operator+(const QuadExt& a, const QuadExt& b) {
  return QuadExt(a.re_ + b.re_, a.im_ + b.im_, QuadExt::common_d(a, b));
}

QuadExt operator-(const QuadExt& a, const QuadExt& b) { return a + (-b); }

QuadExt operator*(const QuadExt& a, const QuadExt& b) {
  const Rational d = QuadExt::common_d(a, b);
  return QuadExt(a.re_ * b.re_ - d * a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_, d);
}

QuadExt operator/(const QuadExt& a, const QuadExt& b) {
  const Rational n = b.norm();
  if (n == 0) throw std::domain_error("QuadExt: division by zero");
  const QuadExt num = a * b.conj();
  return QuadExt(num.re_ / n, num.im_ / n, QuadExt::common_d(a, b));
}

QuadExt sqrt_minus(const Rational& d) { return QuadExt(0, 1, d); }

}  // namespace cdeform
