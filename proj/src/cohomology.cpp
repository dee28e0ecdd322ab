#include "cdeform/cohomology.hpp"

#include <cmath>

namespace cdeform {

std::string to_string(Coefficients c) {
  switch (c) {
    case Coefficients::sl4: return "sl4";
    case Coefficients::so31: return "so31";
    case Coefficients::v: return "v";
  }
  return "?";
}

Coefficients parse_coefficients(const std::string& name) {
  if (name == "sl4") return Coefficients::sl4;
  if (name == "so31") return Coefficients::so31;
  if (name == "v") return Coefficients::v;
  throw std::invalid_argument("unknown coefficient module '" + name + "' (expected sl4, so31 or v)");
}

namespace {

constexpr Eigen::Index kDim = 15;

QMatrix identity4() { return QMatrix::Identity(4, 4); }

QMatrix columns(const std::vector<QVector>& cols, Eigen::Index rows) {
  QMatrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  return m;
}

std::vector<Cochain> basis_from_columns(const QMatrix& m) {
  std::vector<Cochain> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(unstack_cochain(m.col(j)));
  return out;
}

QMatrix stacked(const std::vector<Cochain>& basis, Eigen::Index rows) {
  std::vector<QVector> cols;
  for (const auto& z : basis) cols.push_back(stack_cochain(z));
  return columns(cols, rows);
}

// Projection onto the summand in sl4 coordinates, block-diagonal over `blocks` copies.
QMatrix summand_projection(const QMatrix& form, Coefficients c, std::size_t blocks) {
  QMatrix p(kDim, kDim);
  const auto& basis = sl4_basis();
  for (Eigen::Index j = 0; j < kDim; ++j) {
    const SplitElement s = split_sl4(basis[static_cast<std::size_t>(j)], form);
    p.col(j) = sl4_coords(c == Coefficients::so31 ? s.so_part : s.v_part);
  }
  const auto n = static_cast<Eigen::Index>(blocks);
  QMatrix out = QMatrix::Zero(kDim * n, kDim * n);
  for (Eigen::Index b = 0; b < n; ++b) out.block(kDim * b, kDim * b, kDim, kDim) = p;
  return out;
}

Eigen::Index rank_or_zero(const QMatrix& m) { return m.cols() == 0 || m.rows() == 0 ? 0 : rank(m); }

// Z^1 and B^1 bases as stacked columns.
struct Spaces {
  QMatrix z, b;
};

Spaces spaces(const Presentation& pres, const QRepresentation& rep) {
  const auto rows = kDim * static_cast<Eigen::Index>(rep.size());
  return {stacked(cocycle_space(pres, rep), rows), stacked(coboundary_space(rep), rows)};
}

QMatrix project(const QMatrix& basis, const std::optional<QMatrix>& projection) {
  return projection ? QMatrix(mul(*projection, basis)) : basis;
}

std::optional<QMatrix> projection_for(const QRepresentation& rep, Coefficients c, std::size_t blocks) {
  if (c == Coefficients::sl4) return std::nullopt;
  return summand_projection(invariant_form(rep), c, blocks);
}

bool same_base(const QRepresentation* a, const QRepresentation* b) {
  if (a == b) return true;
  if (!a || !b || a->size() != b->size()) return false;
  for (std::size_t i = 0; i < a->size(); ++i)
    if (a->images()[i] != b->images()[i]) return false;
  return true;
}

QMatrix act(const QRepresentation& rep, const Word& c, const QMatrix& x) {
  return mul(evaluate_word(c, rep), mul(x, evaluate_word(c.inverse(), rep)));
}

}  // namespace

QVector stack_cochain(const Cochain& z) {
  QVector v(kDim * static_cast<Eigen::Index>(z.size()));
  for (std::size_t g = 0; g < z.size(); ++g) v.segment(kDim * static_cast<Eigen::Index>(g), kDim) = sl4_coords(z[g]);
  return v;
}

Cochain unstack_cochain(const QVector& v) {
  if (v.size() % kDim != 0) throw DimensionError("unstack_cochain: length is not a multiple of 15");
  Cochain z;
  for (Eigen::Index g = 0; g < v.size() / kDim; ++g) z.push_back(sl4_from_coords(v.segment(kDim * g, kDim)));
  return z;
}

QMatrix cochain_value(const Cochain& z, const Word& w, const QRepresentation& rep) {
  if (z.size() != rep.size()) throw DimensionError("cochain_value: one value per generator expected");
  QMatrix acc = QMatrix::Zero(4, 4), prefix = identity4(), prefix_inv = identity4();
  for (const auto& l : w.letters()) {
    const auto g = static_cast<std::size_t>(l.generator);
    if (g >= z.size()) throw UnboundGenerator("cochain_value: letter outside the generators");
    // z(g^-1) = -Ad(g^-1) z(g).
    const QMatrix zl = l.exponent > 0 ? z[g] : QMatrix(-mul(rep.inverse_image(l.generator), mul(z[g], rep.image(l.generator))));
    acc += mul(prefix, mul(zl, prefix_inv));
    prefix = mul(prefix, rep.letter(l));
    prefix_inv = mul(l.exponent > 0 ? rep.inverse_image(l.generator) : rep.image(l.generator), prefix_inv);
  }
  return acc;
}

std::vector<Cochain> cocycle_space(const Presentation& pres, const QRepresentation& rep) {
  if (rep.size() != pres.rank()) throw DimensionError("cocycle_space: representation and presentation ranks differ");
  if (!satisfies_relators(pres, rep)) throw RelatorNotSatisfied("cocycle_space: representation violates a relator");
  const Eigen::Index cols = kDim * static_cast<Eigen::Index>(rep.size());
  if (pres.relators.empty()) return basis_from_columns(QMatrix::Identity(cols, cols));
  QMatrix op(kDim * static_cast<Eigen::Index>(pres.relators.size()), cols);
  for (std::size_t r = 0; r < pres.relators.size(); ++r)
    op.block(kDim * static_cast<Eigen::Index>(r), 0, kDim, cols) = fox_jacobian(pres.relators[r], rep);
  return basis_from_columns(kernel(op));
}

std::vector<Cochain> coboundary_space(const QRepresentation& rep) {
  const auto n = static_cast<Eigen::Index>(rep.size());
  QMatrix op(kDim * n, kDim);
  for (Eigen::Index g = 0; g < n; ++g)
    op.block(kDim * g, 0, kDim, kDim) =
        QMatrix::Identity(kDim, kDim) - adjoint_matrix(rep.image(static_cast<int>(g)), rep.inverse_image(static_cast<int>(g)));
  return basis_from_columns(column_space(op));
}

QMatrix invariant_form(const QRepresentation& rep) {
  const auto forms = invariant_symmetric_forms(rep.images());
  if (forms.size() != 1) throw FormNotPreserved("representation does not preserve a unique symmetric form");
  QMatrix f = forms.front();
  const Signature s = signature(f);
  if (s == Signature{1, 3, 0}) f = -f;
  else if (!(s == Signature{3, 1, 0})) throw FormNotPreserved("invariant form does not have signature (3,1)");
  return f;
}

int h1(const Presentation& pres, const QRepresentation& rep, Coefficients coefficients) {
  const auto proj = projection_for(rep, coefficients, rep.size());
  const Spaces s = spaces(pres, rep);
  return static_cast<int>(rank_or_zero(project(s.z, proj)) - rank_or_zero(project(s.b, proj)));
}

CohomologyDims cohomology_dims(const Presentation& pres, const QRepresentation& rep) {
  const Spaces s = spaces(pres, rep);
  CohomologyDims d;
  d.z1 = static_cast<int>(s.z.cols());
  d.b1 = static_cast<int>(s.b.cols());
  d.h1_sl4 = d.z1 - d.b1;
  try {
    const QMatrix form = invariant_form(rep);
    for (const auto c : {Coefficients::so31, Coefficients::v}) {
      const QMatrix p = summand_projection(form, c, rep.size());
      const int h = static_cast<int>(rank_or_zero(mul(p, s.z)) - rank_or_zero(mul(p, s.b)));
      (c == Coefficients::so31 ? d.h1_so31 : d.h1_v) = h;
    }
  } catch (const FormNotPreserved&) {
    d.h1_so31 = d.h1_v = -1;
  }
  return d;
}

int restriction_rank(const Presentation& pres, const QRepresentation& rep, const std::vector<Word>& subgroup,
                     Coefficients coefficients) {
  if (subgroup.empty()) return 0;
  const auto proj = projection_for(rep, coefficients, 1);
  const auto s = static_cast<Eigen::Index>(subgroup.size());
  // Restriction of Z^1 to the subgroup generators.
  const auto cocycles = cocycle_space(pres, rep);
  QMatrix restricted(kDim * s, static_cast<Eigen::Index>(cocycles.size()));
  for (std::size_t j = 0; j < cocycles.size(); ++j)
    for (Eigen::Index i = 0; i < s; ++i) {
      QVector v = sl4_coords(cochain_value(cocycles[j], subgroup[static_cast<std::size_t>(i)], rep));
      if (proj) v = *proj * v;
      restricted.block(kDim * i, static_cast<Eigen::Index>(j), kDim, 1) = v;
    }
  // Subgroup coboundaries c - Ad(gamma_i) c with c in the summand.
  QMatrix cob(kDim * s, kDim);
  for (Eigen::Index i = 0; i < s; ++i) {
    const QMatrix g = evaluate_word(subgroup[static_cast<std::size_t>(i)], rep);
    QMatrix block = QMatrix::Identity(kDim, kDim) - adjoint_matrix(g);
    if (proj) block = mul(block, *proj);
    cob.block(kDim * i, 0, kDim, kDim) = block;
  }
  QMatrix both(kDim * s, restricted.cols() + cob.cols());
  both << restricted, cob;
  return static_cast<int>(rank_or_zero(both) - rank_or_zero(cob));
}

bool is_rigid_slope(const Presentation& pres, const QRepresentation& rep, const Word& slope) {
  return restriction_rank(pres, rep, {slope}, Coefficients::v) > 0;
}

Cochain1 extend(const Cochain& z, const QRepresentation& rep) {
  return {&rep, [z, &rep](const Word& w) { return cochain_value(z, w, rep); }};
}

Cochain2 cup_product(const Cochain1& a, const Cochain1& b) {
  if (!same_base(a.base, b.base)) throw BaseMismatch("cup_product: cochains over different representations");
  const QRepresentation* rep = a.base;
  return {rep, [a, b, rep](const Word& c, const Word& d) { return QMatrix(mul(a(c), act(*rep, c, b(d)))); }};
}

Cochain3 cup_product(const Cochain2& f, const Cochain1& b) {
  if (!same_base(f.base, b.base)) throw BaseMismatch("cup_product: cochains over different representations");
  const QRepresentation* rep = f.base;
  return {rep, [f, b, rep](const Word& c, const Word& d, const Word& e) {
            return QMatrix(mul(f(c, d), act(*rep, c * d, b(e))));
          }};
}

Cochain3 cup_product(const Cochain1& a, const Cochain2& f) {
  if (!same_base(a.base, f.base)) throw BaseMismatch("cup_product: cochains over different representations");
  const QRepresentation* rep = a.base;
  return {rep, [a, f, rep](const Word& c, const Word& d, const Word& e) {
            return QMatrix(mul(a(c), act(*rep, c, f(d, e))));
          }};
}

Cochain2 coboundary(const Cochain1& a) {
  const QRepresentation* rep = a.base;
  return {rep, [a, rep](const Word& c, const Word& d) { return QMatrix(a(c) + act(*rep, c, a(d)) - a(c * d)); }};
}

Cochain3 coboundary(const Cochain2& f) {
  const QRepresentation* rep = f.base;
  return {rep, [f, rep](const Word& c, const Word& d, const Word& e) {
            return QMatrix(act(*rep, c, f(d, e)) - f(c * d, e) + f(c, d * e) - f(c, d));
          }};
}

Rational killing_pairing(const QMatrix& a, const QMatrix& b) { return 8 * mul(a, b).trace(); }

namespace {

// Matrix power series truncated after t^order.
using Series = std::vector<QMatrix>;

Series series_mul(const Series& a, const Series& b) {
  const std::size_t order = a.size() - 1;
  Series out(a.size(), QMatrix::Zero(4, 4));
  for (std::size_t i = 0; i <= order; ++i) {
    if (is_zero_matrix(a[i])) continue;
    for (std::size_t j = 0; i + j <= order; ++j)
      if (!is_zero_matrix(b[j])) out[i + j] += mul(a[i], b[j]);
  }
  return out;
}

// (I + sum t^k u_k(g)) rho(g) and its inverse rho(g)^-1 (I + U)^-1.
struct GeneratorSeries {
  Series forward, backward;
};

GeneratorSeries generator_series(const QRepresentation& rep, const CochainSeq& seq, int g, std::size_t order) {
  Series u(order + 1, QMatrix::Zero(4, 4));
  u[0] = identity4();
  for (std::size_t k = 1; k <= order && k <= seq.size(); ++k) u[k] = seq[k - 1][static_cast<std::size_t>(g)];
  // (I + U)^-1 = sum_j (-U)^j, with U = u - I starting at t^1.
  Series minus_u = u;
  minus_u[0] = QMatrix::Zero(4, 4);
  for (std::size_t k = 1; k <= order; ++k) minus_u[k] = -minus_u[k];
  Series inv(order + 1, QMatrix::Zero(4, 4)), power(order + 1, QMatrix::Zero(4, 4));
  inv[0] = power[0] = identity4();
  for (std::size_t j = 1; j <= order; ++j) {
    power = series_mul(power, minus_u);
    for (std::size_t k = 0; k <= order; ++k) inv[k] += power[k];
  }
  GeneratorSeries out{u, inv};
  for (auto& m : out.forward) m = mul(m, rep.image(g));
  for (auto& m : out.backward) m = mul(rep.inverse_image(g), m);
  return out;
}

// sigma_t(r) rho(r)^-1 as a truncated series.
Series relator_series(const Word& r, const QRepresentation& rep, const std::vector<GeneratorSeries>& gens, std::size_t order) {
  Series acc(order + 1, QMatrix::Zero(4, 4));
  acc[0] = identity4();
  for (const auto& l : r.letters()) {
    const auto& gs = gens[static_cast<std::size_t>(l.generator)];
    acc = series_mul(acc, l.exponent > 0 ? gs.forward : gs.backward);
  }
  const QMatrix rinv = inverse(evaluate_word(r, rep));
  for (auto& m : acc) m = mul(m, rinv);
  return acc;
}

std::vector<Series> all_relator_series(const Presentation& pres, const QRepresentation& rep, const CochainSeq& seq,
                                       std::size_t order) {
  std::vector<GeneratorSeries> gens;
  for (std::size_t g = 0; g < rep.size(); ++g) gens.push_back(generator_series(rep, seq, static_cast<int>(g), order));
  std::vector<Series> out;
  for (const auto& r : pres.relators) out.push_back(relator_series(r, rep, gens, order));
  return out;
}

QVector flatten(const QMatrix& m) {
  QVector v(16);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) v(4 * i + j) = m(i, j);
  return v;
}

}  // namespace

bool satisfies_to_order(const Presentation& pres, const QRepresentation& rep, const CochainSeq& seq) {
  for (const auto& s : all_relator_series(pres, rep, seq, seq.size()))
    for (std::size_t k = 1; k < s.size(); ++k)
      if (!is_zero_matrix(s[k])) return false;
  return true;
}

ObstructionResult obstruction_step(const Presentation& pres, const QRepresentation& rep, const CochainSeq& seq, int k) {
  if (k < 2) throw std::invalid_argument("obstruction_step: order must be at least 2");
  if (seq.size() < static_cast<std::size_t>(k - 1)) throw std::invalid_argument("obstruction_step: need u_1 .. u_{k-1}");
  for (const auto& u : seq)
    if (u.size() != rep.size()) throw DimensionError("obstruction_step: cochain arity mismatch");
  const CochainSeq lower(seq.begin(), seq.begin() + (k - 1));
  if (!satisfies_to_order(pres, rep, lower)) throw std::invalid_argument("obstruction_step: lower orders are not integrable");

  const auto order = static_cast<std::size_t>(k);
  ObstructionResult out;
  for (const auto& s : all_relator_series(pres, rep, lower, order)) out.target.push_back(s[order]);

  // Linear part: t^k coefficient when only u_k is nonzero (the gl(4) Fox operator).
  const auto n = static_cast<Eigen::Index>(rep.size());
  const auto rels = static_cast<Eigen::Index>(pres.relators.size());
  QMatrix op(16 * rels, 16 * n);
  const Cochain zero(rep.size(), QMatrix::Zero(4, 4));
  for (Eigen::Index g = 0; g < n; ++g)
    for (Eigen::Index e = 0; e < 16; ++e) {
      CochainSeq probe(order, zero);
      probe[order - 1][static_cast<std::size_t>(g)](e / 4, e % 4) = 1;
      const auto series = all_relator_series(pres, rep, probe, order);
      for (Eigen::Index r = 0; r < rels; ++r) op.block(16 * r, 16 * g + e, 16, 1) = flatten(series[static_cast<std::size_t>(r)][order]);
    }
  QMatrix rhs(16 * rels, 1);
  for (Eigen::Index r = 0; r < rels; ++r) rhs.block(16 * r, 0, 16, 1) = -flatten(out.target[static_cast<std::size_t>(r)]);
  if (rels == 0) {
    out.solvable = true;
    out.particular = zero;
    return out;
  }
  if (const auto x = solve(op, rhs)) {
    out.solvable = true;
    Cochain u;
    for (Eigen::Index g = 0; g < n; ++g) {
      QMatrix m(4, 4);
      for (Eigen::Index e = 0; e < 16; ++e) m(e / 4, e % 4) = (*x)(16 * g + e, 0);
      u.push_back(m);
    }
    out.particular = u;
  }
  return out;
}

namespace {

struct M2 {
  Complex a, b, c, d;
};
M2 mul2(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
double norm2(const M2& x) { return std::sqrt(std::norm(x.a) + std::norm(x.b) + std::norm(x.c) + std::norm(x.d)); }

}  // namespace

Complex tau_invariant(const Sl2cElement& m_in, const Sl2cElement& l_in, double tol) {
  const M2 m{m_in.a, m_in.b, m_in.c, m_in.d}, l{l_in.a, l_in.b, l_in.c, l_in.d};
  const M2 ml = mul2(m, l), lm = mul2(l, m);
  const M2 comm{ml.a - lm.a, ml.b - lm.b, ml.c - lm.c, ml.d - lm.d};
  const double scale = 1 + norm2(m) * norm2(l);
  if (norm2(comm) > tol * scale * 1e3) throw NotCommuting("tau_invariant: images do not commute");

  const Complex tr_m = m.a + m.d, tr_l = l.a + l.d;
  const Complex disc = std::sqrt(tr_m * tr_m - 4.0);
  Complex lambda = (tr_m + disc) / 2.0;
  if (std::abs(lambda) < 1) lambda = (tr_m - disc) / 2.0;
  const double mscale = 1 + norm2(m);
  if (std::abs(m.b) < tol * mscale && std::abs(m.c) < tol * mscale && std::abs(m.a - m.d) < tol * mscale)
    throw MeridianTrivialUpperEntry("tau_invariant: meridian image is central");

  // Eigenvector v of m for lambda, completed to P = [v w] with det P = 1.
  Complex v0, v1;
  if (std::abs(m.b) >= std::abs(m.c) && std::abs(m.b) > tol * mscale) {
    v0 = m.b;
    v1 = lambda - m.a;
  } else if (std::abs(m.c) > tol * mscale) {
    v0 = lambda - m.d;
    v1 = m.c;
  } else {
    // Diagonal m: the eigenvector is a coordinate axis.
    const bool first = std::abs(m.a - lambda) <= std::abs(m.d - lambda);
    v0 = first ? 1.0 : 0.0;
    v1 = first ? 0.0 : 1.0;
  }
  const bool use_e2 = std::abs(v0) >= std::abs(v1);
  // det [v w] = 1 with w a multiple of e2 (or e1).
  const M2 p = use_e2 ? M2{v0, 0.0, v1, 1.0 / v0} : M2{v0, -1.0 / v1, v1, 0.0};
  const M2 p_inv{p.d, -p.b, -p.c, p.a};
  const M2 mt = mul2(p_inv, mul2(m, p)), lt = mul2(p_inv, mul2(l, p));

  Complex tau;
  if (std::abs(mt.b) > tol * mscale) {
    // Conjugating by diag(s, 1/s) with s^2 = mt.b scales both upper-right entries by 1/s^2.
    tau = lt.b / mt.b;
  } else {
    const Complex lam_gap = mt.a - mt.d;
    if (std::abs(lam_gap) <= tol * mscale) throw MeridianTrivialUpperEntry("tau_invariant: meridian is not triangularizable to upper entry 1");
    // A unipotent conjugation sets the meridian entry to 1; commutation fixes tau.
    tau = (lt.a - lt.d) / lam_gap;
  }
  const Complex lhs = tau * tau * (tr_m * tr_m - 4.0) + 4.0, rhs = tr_l * tr_l;
  if (std::abs(lhs - rhs) > 1e3 * tol * (1 + std::abs(rhs)))
    throw std::logic_error("tau_invariant: trace relation fails; the pair is not simultaneously triangular");
  return tau;
}

}  // namespace cdeform
