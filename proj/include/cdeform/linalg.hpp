#pragma once

#include "cdeform/matrix.hpp"
#include "cdeform/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cdeform {

class FormNotPreserved : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class PointNotInterior : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotHyperbolic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NonZeroTrace : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class InvalidForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inertia of a symmetric matrix.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Sylvester inertia by exact symmetric (congruence) elimination.
Signature signature(const QMatrix& symmetric);

/// The Minkowski form J = diag(1, 1, 1, -1).
QMatrix minkowski_form();

/// Interior of the quadric {v : v^T F v < 0} for a form F of signature (3,1).
class QuadricDomain {
 public:
  /// Throws InvalidForm unless `form` is 4x4, symmetric and of signature (3,1).
  explicit QuadricDomain(QMatrix form);
  /// The Klein model: F = diag(1,1,1,-1).
  static QuadricDomain klein();

  const QMatrix& form() const { return form_; }
  Rational value(const QVector& v) const;
  Rational bilinear(const QVector& v, const QVector& w) const;
  bool contains(const QVector& v) const { return value(v) < 0; }

 private:
  QMatrix form_;
};

/// Homogeneous coordinates scaled so the last nonzero entry is 1.
QVector normalize_projective(const QVector& v);

/// Jordan type (3,1) with a single eigenvalue after projective scaling.
bool is_so31_parabolic(const QMatrix& m);

enum class IsometryType { elliptic, parabolic, hyperbolic };
std::string to_string(IsometryType type);

/// Requires M^T F M = c F. The test is exact: M^2/c has a reciprocal characteristic
/// polynomial x^4 - a x^3 + b x^2 - a x + 1, and every eigenvalue has modulus one iff
/// both roots of y^2 - a y + (b - 2) are real and lie in [-2, 2].
IsometryType classify_isometry(const QMatrix& m, const QuadricDomain& domain);

/// Log cross ratio of the chord through two interior points.
double hilbert_distance(const QuadricDomain& domain, const QVector& x1, const QVector& x2);

/// log(lambda_max / lambda_min) of the unit-determinant scaling.
double translation_length(const QMatrix& m, const QuadricDomain& domain);

struct SplitElement {
  QMatrix so_part;
  QMatrix v_part;
};

/// so = (a - F^{-1} a^T F)/2 and v = (a + F^{-1} a^T F)/2; F defaults to J.
SplitElement split_sl4(const QMatrix& a);
SplitElement split_sl4(const QMatrix& a, const QMatrix& form);

/// Basis of sl(4): E_ij for i != j in row-major order, then H_k = E_kk - E_44.
const std::vector<QMatrix>& sl4_basis();
QVector sl4_coords(const QMatrix& traceless);
QMatrix sl4_from_coords(const QVector& coords);
/// Matrix of x -> P x P^{-1} in the sl4 basis (15 x 15).
QMatrix adjoint_matrix(const QMatrix& p);
/// As above with the inverse supplied.
QMatrix adjoint_matrix(const QMatrix& p, const QMatrix& p_inverse);

/// Traceless x with g x g^{-1} = x for every generator.
std::vector<QMatrix> ad_invariant_subspace(const std::vector<QMatrix>& generators);

/// Symmetric F with g^T F g = F for every generator.
std::vector<QMatrix> invariant_symmetric_forms(const std::vector<QMatrix>& generators);

}  // namespace cdeform
