#include "cdeform/normal_forms.hpp"

#include "cdeform/linalg.hpp"

namespace cdeform {

namespace {

void require_positive_d(const HermParams& params) {
  if (params.d() <= 0) throw NonPositiveD("Herm_2 model needs d = b21 - 4 b32^2 > 0");
}

QMatrix identity4() { return QMatrix::Identity(4, 4); }

}  // namespace

Mat2 herm_coords(const Rational& x, const Rational& y, const Rational& z, const Rational& t,
                 const HermParams& params) {
  require_positive_d(params);
  const Rational& b32 = params.b32;
  const Rational d = params.d();
  const Rational u = x - y + 2 * b32 * z - 2 * b32 * b32 * t;
  const Rational s = z - b32 * t;
  const QuadExt off(u, s, d);
  return {QuadExt(x), off, off.conj(), QuadExt(d * t)};
}

QVector herm_inverse(const Mat2& n, const HermParams& params) {
  require_positive_d(params);
  const Rational d = params.d();
  if (!n.a.is_rational() || !n.d.is_rational() || !(n.c == n.b.conj()))
    throw std::domain_error("herm_inverse: matrix is not Hermitian");
  if (!n.b.is_rational() && n.b.d() != d) throw FieldMismatch("herm_inverse: entry outside Q(sqrt(-d))");
  const Rational& b32 = params.b32;
  const Rational x = n.a.re(), t = n.d.re() / d, s = n.b.im(), u = n.b.re();
  const Rational z = s + b32 * t;
  const Rational y = x + 2 * b32 * z - 2 * b32 * b32 * t - u;
  QVector v(4);
  v << x, y, z, t;
  return v;
}

QMatrix quad_form_X(const HermParams& p) {
  const Rational& b21 = p.b21;
  const Rational& b32 = p.b32;
  QMatrix x(4, 4);
  x << 1, -1, 2 * b32, -b21 / 2,
      -1, 1, -2 * b32, 2 * b32 * b32,
      2 * b32, -2 * b32, b21, -b21 * b32,
      -b21 / 2, 2 * b32 * b32, -b21 * b32, b21 * b32 * b32;
  return x;
}

QMatrix sl2c_to_pgl4(const Mat2& m, const HermParams& params) {
  require_positive_d(params);
  if (!(m.det() == QuadExt(1))) throw NonUnitDeterminant("sl2c_to_pgl4: determinant is not 1");
  const Mat2 mstar = m.adjoint();
  QMatrix out(4, 4);
  for (int j = 0; j < 4; ++j) {
    Rational e[4] = {0, 0, 0, 0};
    e[j] = 1;
    out.col(j) = herm_inverse(m * herm_coords(e[0], e[1], e[2], e[3], params) * mstar, params);
  }
  return out;
}

QMatrix sl2c_to_pgl4_normalized(const Mat2& m, const HermParams& params) {
  require_positive_d(params);
  const Rational d = params.d();
  // D M D^{-1} with D = diag(delta, 1/delta): b scales by delta^2, c by delta^-2 = -sqrt(-d).
  const QuadExt delta2 = QuadExt(0, 1 / d, d);
  const QuadExt delta2_inv = QuadExt(0, -1, d);
  return sl2c_to_pgl4({m.a, m.b * delta2, m.c * delta2_inv, m.d}, params);
}

NormalFormPair normform1(const Rational& a14, const Rational& b21, const Rational& b31, const Rational& b32,
                         const Rational& b41) {
  NormalFormPair p;
  p.kind = NormalFormKind::first;
  p.A.resize(4, 4);
  p.A << 1, 0, 2, 1 + a14,
      0, 1, 2, 1,
      0, 0, 1, 1,
      0, 0, 0, 1;
  p.B.resize(4, 4);
  p.B << 1, 0, 0, 0,
      b21, 1, 0, 0,
      b31 + b21 * b32, 2 * b32, 1, 0,
      b21 + b41, 2, 0, 1;
  p.entries = {{"a14", a14}, {"b21", b21}, {"b31", b31}, {"b32", b32}, {"b41", b41}};
  return p;
}

NormalFormPair normform2(const Rational& a14, const Rational& a24, const Rational& a34, const Rational& b21,
                         const Rational& b31) {
  NormalFormPair p;
  p.kind = NormalFormKind::second;
  p.A.resize(4, 4);
  p.A << 1, 0, 1, a14,
      0, 1, 1, a24,
      0, 0, 1, a34,
      0, 0, 0, 1;
  p.B.resize(4, 4);
  p.B << 1, 0, 0, 0,
      b21, 1, 0, 0,
      b31, 1, 1, 0,
      1, 1, 0, 1;
  p.entries = {{"a14", a14}, {"a24", a24}, {"a34", a34}, {"b21", b21}, {"b31", b31}};
  return p;
}

std::optional<NormalFormPair> match_normform1(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != 4 || a.cols() != 4 || b.rows() != 4 || b.cols() != 4) return std::nullopt;
  const Rational b21 = b(1, 0), b32 = b(2, 1) / 2;
  NormalFormPair p = normform1(a(0, 3) - 1, b21, b(2, 0) - b21 * b32, b32, b(3, 0) - b21);
  if (p.A != a || p.B != b) return std::nullopt;
  return p;
}

std::optional<NormalFormPair> match_normform2(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != 4 || a.cols() != 4 || b.rows() != 4 || b.cols() != 4) return std::nullopt;
  NormalFormPair p = normform2(a(0, 3), a(1, 3), a(2, 3), b(1, 0), b(2, 0));
  if (p.A != a || p.B != b) return std::nullopt;
  return p;
}

NormalFormPair riley_to_normform(const RileyParameter& omega) {
  if (omega.im2 <= 0) throw RealOmega("riley_to_normform: omega must have nonzero imaginary part");
  // b21 = |omega|^2 and b32 = Re(omega)/2, so d = Im(omega)^2 and omega = re +- sqrt(-d).
  const HermParams params{omega.re * omega.re + omega.im2, omega.re / 2};
  const QuadExt w(omega.re, omega.conjugate ? -1 : 1, omega.im2);
  const Mat2 a{QuadExt(1), QuadExt(1), QuadExt(0), QuadExt(1)};
  const Mat2 b{QuadExt(1), QuadExt(0), w, QuadExt(1)};
  const QMatrix pa = sl2c_to_pgl4_normalized(a, params);
  const QMatrix pb = sl2c_to_pgl4_normalized(b, params);
  // Im(omega) < 0 lands on the template directly; the conjugate parameter gives an
  // R-conjugate pair (complex conjugation acts linearly on Herm_2) and is normalized.
  if (auto pair = match_normform1(pa, pb)) return *pair;
  return normalize_parabolic_pair(pa, pb).pair;
}

namespace {

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

QVector one_dim(const QMatrix& basis, const char* what) {
  if (basis.cols() != 1) throw NormalizationFailed(std::string("normalize_parabolic_pair: ") + what + " is not a line");
  return basis.col(0);
}

// Coefficients of v in the basis given by the columns of m, or NormalizationFailed.
QVector coordinates(const QMatrix& m, const QVector& v, const char* what) {
  if (rank(m) != m.cols()) throw NormalizationFailed(std::string("normalize_parabolic_pair: dependent ") + what);
  auto x = solve(m, QMatrix(v));
  if (!x) throw NormalizationFailed(std::string("normalize_parabolic_pair: inconsistent ") + what);
  return x->col(0);
}

}  // namespace

Normalization normalize_parabolic_pair(const QMatrix& a_in, const QMatrix& b_in) {
  if (!is_so31_parabolic(a_in) || !is_so31_parabolic(b_in))
    throw NotParabolic("normalize_parabolic_pair: input is not SO(3,1)-parabolic");
  const QMatrix a = a_in / (a_in.trace() / 4), b = b_in / (b_in.trace() / 4);
  const QMatrix na = a - identity4(), nb = b - identity4();
  const QMatrix ea = kernel(na), eb = kernel(nb);
  if (rank(hstack(ea, eb)) < ea.cols() + eb.cols())
    throw ReduciblePair("normalize_parabolic_pair: 1-eigenspaces intersect");

  // g2 spans E_A cap ker N_B^2, g3 spans E_B cap ker N_A^2.
  auto meet = [](const QMatrix& basis, const QMatrix& n2) { return QMatrix(basis * kernel(QMatrix(mul(n2, basis)))); };
  const QVector k = one_dim(meet(ea, mul(nb, nb)), "E_A cap ker N_B^2");
  const QVector kp = one_dim(meet(eb, mul(na, na)), "E_B cap ker N_A^2");

  // N_A N_B k = mu k' mod E_A fixes the ratio of the two scales.
  const QVector nab = na * QVector(nb * k);
  const QVector mu_coords = coordinates(hstack(QMatrix(kp), ea), nab, "N_A N_B k");
  const Rational mu = mu_coords(0);
  if (mu == 0) throw NormalizationFailed("normalize_parabolic_pair: degenerate scale ratio");
  const Rational beta = 2 / mu;
  const QVector g3 = kp;
  const QVector g2 = beta * k;
  const QVector g1 = QVector(na * g3) / 2 - g2;
  const QVector h = coordinates(hstack(QMatrix(g1), QMatrix(g2)), QVector(beta / 2 * nab - g3), "E_A frame");
  const Rational b32 = (h(1) - 1) / 2;
  const Rational a14 = h(0) - 2 * b32 - 1;
  const QVector g4 = (QVector(nb * g2) - 2 * b32 * g3) / 2;

  QMatrix g(4, 4);
  g << g1, g2, g3, g4;
  if (rank(g) < 4) throw NormalizationFailed("normalize_parabolic_pair: frame is singular");
  for (Eigen::Index i = 0; i < 4; ++i)
    if (g(i, 0) != 0) {
      g /= g(i, 0);
      break;
    }
  const QMatrix gi = inverse(g);
  const auto pair = match_normform1(mul(gi, mul(a, g)), mul(gi, mul(b, g)));
  if (!pair || pair->entries.at("a14") != a14 || pair->entries.at("b32") != b32)
    throw NormalizationFailed("normalize_parabolic_pair: conjugate misses the normal form");
  return {g, *pair};
}

QMatrix normform_conjugator(const NormalFormPair& p) {
  if (p.kind != NormalFormKind::first) throw std::invalid_argument("normform_conjugator: needs the first normal form");
  const Rational b21 = p.entries.at("b21"), b32 = p.entries.at("b32"), b41 = p.entries.at("b41");
  const Rational s = 2 + b21 + b41;
  if (s == 0) throw SingularV("normform_conjugator: 2 + b21 + b41 = 0");
  QMatrix v = QMatrix::Zero(4, 4);
  v(0, 0) = 1;
  v(1, 0) = (2 - b21 - b41) / 4;
  v(1, 1) = s / 4;
  v(2, 2) = Rational(1, 2);
  v(2, 3) = (2 * b32 + b21 * b32 + b32 * b41 - 1) / 2;
  v(3, 3) = s / 2;
  return v;
}

NormalFormPair to_normform2(const NormalFormPair& p) {
  const QMatrix v = normform_conjugator(p);
  const QMatrix vi = inverse(v);
  auto out = match_normform2(mul(vi, mul(p.A, v)), mul(vi, mul(p.B, v)));
  if (!out) throw NormalizationFailed("to_normform2: conjugate misses the second normal form");
  return *out;
}

}  // namespace cdeform
