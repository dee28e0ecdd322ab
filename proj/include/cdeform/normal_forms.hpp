#pragma once

#include "cdeform/matrix.hpp"
#include "cdeform/quad_ext.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace cdeform {

class NonPositiveD : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NonUnitDeterminant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class RealOmega : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NotParabolic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class ReduciblePair : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class NormalizationFailed : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class SingularV : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameters of the R^4 <-> Herm_2 model; d = b21 - 4 b32^2.
struct HermParams {
  Rational b21;
  Rational b32;
  Rational d() const { return b21 - 4 * b32 * b32; }
};

/// 2x2 matrix over Q(sqrt(-d)).
struct Mat2 {
  QuadExt a, b, c, d;

  QuadExt det() const { return a * d - b * c; }
  Mat2 adjoint() const { return {a.conj(), c.conj(), b.conj(), d.conj()}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }
};
using Sl2c = Mat2;

/// The Hermitian matrix [[x, u + s sqrt(-d)], [u - s sqrt(-d), d t]] with
/// u = x - y + 2 b32 z - 2 b32^2 t and s = z - b32 t. Throws NonPositiveD unless d > 0.
Mat2 herm_coords(const Rational& x, const Rational& y, const Rational& z, const Rational& t, const HermParams& params);
/// Inverse of herm_coords; throws std::domain_error if n is not Hermitian over Q(sqrt(-d)).
QVector herm_inverse(const Mat2& n, const HermParams& params);

/// Gram matrix of -det on R^4 through herm_coords.
QMatrix quad_form_X(const HermParams& params);

/// The action N -> M N M^* on R^4. Requires det M = 1.
QMatrix sl2c_to_pgl4(const Mat2& m, const HermParams& params);
/// sl2c_to_pgl4 precomposed with conjugation by diag(delta, 1/delta), delta^2 = sqrt(-d)/d,
/// so that [[1,1],[0,1]] lands in the first normal form.
QMatrix sl2c_to_pgl4_normalized(const Mat2& m, const HermParams& params);

enum class NormalFormKind { first, second };

/// Meridian pair in one of the two templates with its named unknown entries.
struct NormalFormPair {
  NormalFormKind kind = NormalFormKind::first;
  QMatrix A;
  QMatrix B;
  std::map<std::string, Rational> entries;
};

/// A = [[1,0,2,1+a14],[0,1,2,1],[0,0,1,1],[0,0,0,1]],
/// B = [[1,0,0,0],[b21,1,0,0],[b31+b21 b32,2 b32,1,0],[b21+b41,2,0,1]].
NormalFormPair normform1(const Rational& a14, const Rational& b21, const Rational& b31, const Rational& b32,
                         const Rational& b41);
/// A = [[1,0,1,a14],[0,1,1,a24],[0,0,1,a34],[0,0,0,1]], B = [[1,0,0,0],[b21,1,0,0],[b31,1,1,0],[1,1,0,1]].
NormalFormPair normform2(const Rational& a14, const Rational& a24, const Rational& a34, const Rational& b21,
                         const Rational& b31);

/// Reads the unknowns off a pair that matches the template exactly.
std::optional<NormalFormPair> match_normform1(const QMatrix& a, const QMatrix& b);
std::optional<NormalFormPair> match_normform2(const QMatrix& a, const QMatrix& b);

/// Riley parameter omega = re + sqrt(-im2), im2 = Im(omega)^2 > 0 (conjugate = true takes -Im).
struct RileyParameter {
  Rational re;
  Rational im2;
  bool conjugate = false;
};

/// Image of ([[1,1],[0,1]], [[1,0],[omega,1]]) in the first normal form.
NormalFormPair riley_to_normform(const RileyParameter& omega);

struct Normalization {
  QMatrix G;  ///< G^{-1} A G and G^{-1} B G are in the first normal form
  NormalFormPair pair;
};

/// Simultaneous conjugation of two SO(3,1)-parabolics into the first normal form.
/// G is unique up to scale; the first nonzero entry of its first column is fixed to 1.
Normalization normalize_parabolic_pair(const QMatrix& a, const QMatrix& b);

/// The conjugator V taking the first normal form to the second.
QMatrix normform_conjugator(const NormalFormPair& first);
NormalFormPair to_normform2(const NormalFormPair& first);

}  // namespace cdeform
