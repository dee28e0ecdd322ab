#include "cdeform/linalg.hpp"

#include "cdeform/upoly.hpp"

#include <cmath>

namespace cdeform {

Signature signature(const QMatrix& symmetric) {
  if (symmetric.rows() != symmetric.cols()) throw DimensionError("signature: matrix is not square");
  if (symmetric != symmetric.transpose()) throw InvalidForm("signature: matrix is not symmetric");
  QMatrix a = symmetric;
  const Eigen::Index n = a.rows();
  Signature sig;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index diag = -1, off = -1;
      for (Eigen::Index j = k + 1; j < n; ++j) {
        if (diag < 0 && a(j, j) != 0) diag = j;
        if (off < 0 && a(k, j) != 0) off = j;
      }
      if (diag >= 0) {
        a.row(k).swap(a.row(diag));
        a.col(k).swap(a.col(diag));
      } else if (off >= 0) {
        // All remaining diagonal entries vanish, so the new pivot is 2 a(k, off).
        a.row(k) += a.row(off);
        a.col(k) += a.col(off);
      } else {
        ++sig.zero;
        continue;
      }
    }
    const Rational p = a(k, k);
    (p > 0 ? sig.positive : sig.negative) += 1;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / p;
      a.row(i) -= f * a.row(k);
      a.col(i) -= f * a.col(k);
    }
  }
  return sig;
}

QMatrix minkowski_form() {
  QMatrix j = QMatrix::Identity(4, 4);
  j(3, 3) = -1;
  return j;
}

QuadricDomain::QuadricDomain(QMatrix form) : form_(std::move(form)) {
  if (form_.rows() != 4 || form_.cols() != 4) throw InvalidForm("QuadricDomain: form must be 4x4");
  if (form_ != form_.transpose()) throw InvalidForm("QuadricDomain: form is not symmetric");
  if (!(signature(form_) == Signature{3, 1, 0})) throw InvalidForm("QuadricDomain: form signature is not (3,1)");
}

QuadricDomain QuadricDomain::klein() { return QuadricDomain(minkowski_form()); }

Rational QuadricDomain::bilinear(const QVector& v, const QVector& w) const {
  if (v.size() != 4 || w.size() != 4) throw DimensionError("QuadricDomain: points need 4 coordinates");
  Rational acc = 0;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      if (form_(i, j) != 0) acc += v(i) * form_(i, j) * w(j);
  return acc;
}

Rational QuadricDomain::value(const QVector& v) const { return bilinear(v, v); }

QVector normalize_projective(const QVector& v) {
  for (Eigen::Index i = v.size() - 1; i >= 0; --i)
    if (v(i) != 0) {
      QVector out = v / v(i);
      return out;
    }
  throw std::invalid_argument("normalize_projective: zero vector is not a projective point");
}

bool is_so31_parabolic(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("is_so31_parabolic: matrix is not square");
  if (m.rows() != 4) return false;
  const Rational lambda = m.trace() / 4;
  if (lambda == 0) return false;
  const QMatrix n = QMatrix(m / lambda) - QMatrix::Identity(4, 4);
  const QMatrix n2 = mul(n, n);
  return rank(n) == 2 && rank(n2) == 1 && is_zero_matrix(mul(n2, n));
}

std::string to_string(IsometryType type) {
  switch (type) {
    case IsometryType::elliptic: return "elliptic";
    case IsometryType::parabolic: return "parabolic";
    case IsometryType::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

namespace {

struct ReciprocalData {
  Rational a, b;  // char poly of M^2/c is x^4 - a x^3 + b x^2 - a x + 1
};

ReciprocalData reciprocal_data(const QMatrix& m, const QuadricDomain& domain) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionError("isometry: matrix must be 4x4");
  const QMatrix& f = domain.form();
  Rational c;
  if (!is_scalar_multiple(QMatrix(mul(QMatrix(m.transpose()), mul(f, m))), f, &c) || c == 0)
    throw FormNotPreserved("M^T F M is not a nonzero multiple of F");
  const QMatrix n = QMatrix(mul(m, m) / c);
  const UPoly p = characteristic_polynomial(n);
  if (p.coeff(0) != 1 || p.coeff(1) != p.coeff(3))
    throw FormNotPreserved("characteristic polynomial is not reciprocal");
  return {-p.coeff(3), p.coeff(2)};
}

bool unit_moduli(const ReciprocalData& r) {
  auto q = [&](const Rational& y) { return y * y - r.a * y + r.b - 2; };
  const Rational disc = r.a * r.a - 4 * (r.b - 2);
  return disc >= 0 && q(2) >= 0 && q(-2) >= 0 && r.a <= 4 && r.a >= -4;
}

}  // namespace

IsometryType classify_isometry(const QMatrix& m, const QuadricDomain& domain) {
  if (!unit_moduli(reciprocal_data(m, domain))) return IsometryType::hyperbolic;
  const UPoly sf = squarefree_part(characteristic_polynomial(m));
  return is_zero_matrix(eval_matrix(sf, m)) ? IsometryType::elliptic : IsometryType::parabolic;
}

double hilbert_distance(const QuadricDomain& domain, const QVector& x1, const QVector& x2) {
  if (!domain.contains(x1) || !domain.contains(x2)) throw PointNotInterior("hilbert_distance: point is not interior");
  const Rational q1 = domain.value(x1), q2 = domain.value(x2), b = domain.bilinear(x1, x2);
  // Boundary hits x1 + r x2 solve q2 r^2 + 2 b r + q1 = 0 with discriminant 4 d.
  const Rational d = b * b - q1 * q2;
  if (d == 0) return 0.0;
  const double s = std::sqrt(to_double(q1 * q2));
  const double abs_b = std::abs(to_double(b));
  const double excess = to_double(d) / (abs_b + s);  // |b| - s without cancellation
  return 2.0 * std::log1p((excess + std::sqrt(to_double(d))) / s);
}

double translation_length(const QMatrix& m, const QuadricDomain& domain) {
  const ReciprocalData r = reciprocal_data(m, domain);
  if (unit_moduli(r)) throw NotHyperbolic("translation_length: element is not hyperbolic");
  const double a = to_double(r.a), b = to_double(r.b);
  const double root = std::sqrt(std::max(0.0, a * a - 4.0 * (b - 2.0)));
  const double y = std::max(std::abs((a + root) / 2.0), std::abs((a - root) / 2.0));
  return std::acosh(y / 2.0);
}

SplitElement split_sl4(const QMatrix& a) { return split_sl4(a, minkowski_form()); }

SplitElement split_sl4(const QMatrix& a, const QMatrix& form) {
  if (a.rows() != 4 || a.cols() != 4) throw DimensionError("split_sl4: matrix must be 4x4");
  if (a.trace() != 0) throw NonZeroTrace("split_sl4: trace is nonzero");
  const QMatrix flipped = mul(inverse(form), mul(QMatrix(a.transpose()), form));
  return {QMatrix((a - flipped) / 2), QMatrix((a + flipped) / 2)};
}

const std::vector<QMatrix>& sl4_basis() {
  static const std::vector<QMatrix> basis = [] {
    std::vector<QMatrix> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        QMatrix e = QMatrix::Zero(4, 4);
        e(i, j) = 1;
        out.push_back(e);
      }
    for (int k = 0; k < 3; ++k) {
      QMatrix h = QMatrix::Zero(4, 4);
      h(k, k) = 1;
      h(3, 3) = -1;
      out.push_back(h);
    }
    return out;
  }();
  return basis;
}

QVector sl4_coords(const QMatrix& x) {
  if (x.rows() != 4 || x.cols() != 4) throw DimensionError("sl4_coords: matrix must be 4x4");
  if (x.trace() != 0) throw NonZeroTrace("sl4_coords: trace is nonzero");
  QVector c(15);
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) c(k++) = x(i, j);
  for (int i = 0; i < 3; ++i) c(k++) = x(i, i);
  return c;
}

QMatrix sl4_from_coords(const QVector& c) {
  if (c.size() != 15) throw DimensionError("sl4_from_coords: need 15 coordinates");
  QMatrix x = QMatrix::Zero(4, 4);
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) x(i, j) = c(k++);
  for (int i = 0; i < 3; ++i) {
    x(i, i) = c(k);
    x(3, 3) -= c(k++);
  }
  return x;
}

QMatrix adjoint_matrix(const QMatrix& p) { return adjoint_matrix(p, inverse(p)); }

QMatrix adjoint_matrix(const QMatrix& p, const QMatrix& pinv) {
  if (p.rows() != 4 || p.cols() != 4) throw DimensionError("adjoint_matrix: matrix must be 4x4");
  // P E_ij P^{-1} is the outer product of column i of P with row j of P^{-1}.
  auto outer = [&](int i, int j) {
    QMatrix o(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s) o(r, s) = p(r, i) * pinv(j, s);
    return o;
  };
  QMatrix ad(15, 15);
  int col = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) ad.col(col++) = sl4_coords(outer(i, j));
  const QMatrix last = outer(3, 3);
  for (int k = 0; k < 3; ++k) ad.col(col++) = sl4_coords(QMatrix(outer(k, k) - last));
  return ad;
}

std::vector<QMatrix> ad_invariant_subspace(const std::vector<QMatrix>& generators) {
  QMatrix stacked(15 * static_cast<Eigen::Index>(generators.size()), 15);
  const QMatrix id = QMatrix::Identity(15, 15);
  for (std::size_t g = 0; g < generators.size(); ++g)
    stacked.middleRows(15 * static_cast<Eigen::Index>(g), 15) = adjoint_matrix(generators[g]) - id;
  const QMatrix ker = generators.empty() ? id : kernel(stacked);
  std::vector<QMatrix> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) out.push_back(sl4_from_coords(ker.col(k)));
  return out;
}

std::vector<QMatrix> invariant_symmetric_forms(const std::vector<QMatrix>& generators) {
  std::vector<QMatrix> sym;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      QMatrix s = QMatrix::Zero(4, 4);
      s(i, j) = 1;
      s(j, i) = 1;
      sym.push_back(s);
    }
  const auto ns = static_cast<Eigen::Index>(sym.size());
  QMatrix stacked = QMatrix::Zero(ns * static_cast<Eigen::Index>(generators.size()), ns);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const QMatrix& m = generators[g];
    if (m.rows() != 4 || m.cols() != 4) throw DimensionError("invariant_symmetric_forms: matrices must be 4x4");
    for (Eigen::Index c = 0; c < ns; ++c) {
      const QMatrix img = mul(QMatrix(m.transpose()), mul(sym[static_cast<std::size_t>(c)], m)) - sym[static_cast<std::size_t>(c)];
      Eigen::Index r = ns * static_cast<Eigen::Index>(g);
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) stacked(r++, c) = img(i, j);
    }
  }
  const QMatrix ker = generators.empty() ? QMatrix(QMatrix::Identity(ns, ns)) : kernel(stacked);
  std::vector<QMatrix> out;
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    QMatrix f = QMatrix::Zero(4, 4);
    for (Eigen::Index c = 0; c < ns; ++c) f += ker(c, k) * sym[static_cast<std::size_t>(c)];
    out.push_back(f);
  }
  return out;
}

}  // namespace cdeform
