#pragma once

#include "cdeform/matrix.hpp"
#include "cdeform/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cdeform {

/// Dense univariate polynomial over the rationals, coefficients low to high.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  Rational lead() const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;

  UPoly derivative() const;
  UPoly monic() const;
  /// Primitive integer-coefficient multiple with positive leading coefficient.
  UPoly primitive() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic greatest common divisor (zero if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Yun's algorithm: f = lc * prod p_i^{m_i} with monic, squarefree, pairwise coprime p_i.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);
UPoly squarefree_part(const UPoly& f);

/// Number of distinct real roots in the half-open interval (lo, hi], by Sturm's theorem.
int count_real_roots(const UPoly& f, const Rational& lo, const Rational& hi);
int count_real_roots(const UPoly& f);

/// Disjoint isolating intervals (lo, hi] for the distinct real roots, ascending.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& f);

/// Distinct real roots refined by exact bisection to the given width.
std::vector<double> real_roots(const UPoly& f, double width = 1e-14);

/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const UPoly& f);

/// Multiplicity of x as a root of f (0 when f(x) != 0).
int root_multiplicity(const UPoly& f, const Rational& x);

/// det(x I - M) via Faddeev-LeVerrier.
UPoly characteristic_polynomial(const QMatrix& m);

/// Evaluates p at a square matrix by Horner's rule.
QMatrix eval_matrix(const UPoly& p, const QMatrix& m);

}  // namespace cdeform
