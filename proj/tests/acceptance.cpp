// Acceptance criteria 1-10: one PASS/FAIL line each; exit status is the number of failures.

#include "cdeform/bending.hpp"
#include "cdeform/cohomology.hpp"
#include "cdeform/linalg.hpp"
#include "cdeform/normal_forms.hpp"
#include "cdeform/polysys.hpp"
#include "cdeform/upoly.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cdeform;
using namespace testing_support;

namespace {

const char* kLongitude = "B A^-1 B^-1 A^2 B^-1 A^-1 B";

// Collects failed conditions for one criterion.
class Criterion {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

int run(int id, const std::string& title, double budget_seconds, const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > budget_seconds) c.expect(false, "runtime " + std::to_string(seconds) + " s exceeds budget");
  const bool pass = c.failures().empty();
  std::printf("AC%d %s: %s (%.2f s)\n", id, pass ? "PASS" : "FAIL", title.c_str(), seconds);
  for (const auto& f : c.failures()) std::printf("    - %s\n", f.c_str());
  std::fflush(stdout);
  return pass ? 0 : 1;
}

ParamFamily fig8_family() {
  return ParamFamily::parse({"t"}, {{"a14", "(3-t)/(t-2)"}, {"a24", "1/(t-2)"}, {"a34", "t/(2(t-2))"}, {"b21", "t"}, {"b31", "2"}});
}

QRepresentation fig8_rep() {
  const auto tmpl = normform2_template();
  return QRepresentation(tmpl.generators, tmpl.instantiate(fig8_family().at({4}, tmpl.unknowns)));
}

// p(s + c) by Horner's rule.
UPoly shift(const UPoly& p, const Rational& c) {
  UPoly out;
  const UPoly lin({c, 1});
  for (int k = p.degree(); k >= 0; --k) out = out * lin + UPoly::constant(p.coeff(k));
  return out;
}

QVector random_ball_point(RandomQ& rng) {
  for (;;) {
    QVector v = qvec({rng.rational(9), rng.rational(9), rng.rational(9), 1});
    if (v(0) * v(0) + v(1) * v(1) + v(2) * v(2) < q(95, 100)) return v;
  }
}

double d_hyp(const QVector& p, const QVector& r) {
  double pp = 0, rr = 0, pr = 0;
  for (int i = 0; i < 3; ++i) {
    pp += to_double(p(i) * p(i));
    rr += to_double(r(i) * r(i));
    pr += to_double(p(i) * r(i));
  }
  return std::acosh((1 - pr) / std::sqrt((1 - pp) * (1 - rr)));
}

HermParams random_params(RandomQ& rng) {
  for (;;) {
    HermParams p{rng.rational(6), rng.rational(4)};
    if (p.d() > 0) return p;
  }
}

Sl2c random_sl2c(RandomQ& rng, const Rational& d) {
  for (;;) {
    const QuadExt a(rng.rational(4), rng.rational(4), d), b(rng.rational(4), rng.rational(4), d),
        c(rng.rational(4), rng.rational(4), d);
    if (a.norm() == 0) continue;
    return {a, b, c, (QuadExt(1) + b * c) / a};
  }
}

}  // namespace

int main() {
  int failures = 0;

  failures += run(1, "two-bridge words for 5/3 and 8/3", 1, [](Criterion& c) {
    const std::vector<std::string> ab{"A", "B"};
    c.expect(two_bridge_word(5, 3).to_string(ab) == "B A^-1 B^-1 A", "W(5/3)");
    c.expect(two_bridge_word(8, 3).to_string(ab) == "B A B^-1 A^-1 B^-1 A B", "W(8/3)");
    const auto knot = two_bridge_presentation(5, 3);
    c.expect(knot.relators.size() == 1 && knot.relators[0] == Word::generator(0) * two_bridge_word(5, 3) *
                                                                   Word::generator(1, -1) * two_bridge_word(5, 3).inverse(),
             "relator A W B^-1 W^-1");
  });

  failures += run(2, "figure-eight family is an exact solution of dimension 1 at t=4", 5, [](Criterion& c) {
    const auto tmpl = normform2_template();
    const auto residual = assemble_residual(two_bridge_presentation(5, 3), tmpl);
    c.expect(verify_family(fig8_family(), residual), "verify_family");
    c.expect(solution_set_dimension(residual, fig8_family().at({4}, tmpl.unknowns)) == 1, "solution_set_dimension = 1");
  });

  failures += run(3, "longitude trace and the factorization (s-2)^2 (s^2+4s+12)", 1, [](Criterion& c) {
    const auto tmpl = normform2_template();
    const RatFunc tr = trace_of_word(parse_word(kLongitude, tmpl.generators), fig8_family(), tmpl);
    const std::vector<std::string> t{"t"};
    c.expect(tr == parse_expression("(48 + (t-2)^4)/(8(t-2))", t), "tr(L) = (48+(t-2)^4)/(8(t-2))");
    const RatFunc cond = tr - RatFunc::constant(t, 4);
    const auto num = cond.num().as_univariate();
    c.expect(num.has_value(), "univariate numerator");
    if (!num) return;
    const UPoly in_s = shift(*num, 2).monic();
    const UPoly expected = UPoly({-2, 1}) * UPoly({-2, 1}) * UPoly({12, 4, 1});
    c.expect(in_s == expected, "numerator in s = t-2 is (s-2)^2 (s^2+4s+12)");
    c.expect(count_real_roots(UPoly({12, 4, 1})) == 0, "s^2+4s+12 has no real root");
    const auto roots = rational_roots(*num);
    c.expect(roots.size() == 1 && roots[0] == 4 && root_multiplicity(*num, 4) == 2, "unique real root t = 4 (double)");
    c.expect(count_real_roots(*num) == 1, "one real root in total");
  });

  failures += run(4, "Whitehead multistart returns exactly the rigid point", 60, [](Criterion& c) {
    const auto tmpl = normform2_template();
    const auto residual = assemble_residual(two_bridge_presentation(8, 3), tmpl);
    SolveOptions o;
    o.nonvanishing = tmpl.parabolic_conditions();
    const auto report = solve_numeric(residual, Box::cube(5, 10), 2000, 20240607, o);
    c.expect(report.solutions.size() == 1, "exactly one solution (got " + std::to_string(report.solutions.size()) + ")");
    if (report.solutions.empty()) return;
    const std::vector<double> expected{0, -2, 2, 4, -1};
    double err = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) err = std::max(err, std::abs(report.solutions[0].values[i] - expected[i]));
    c.expect(err < 1e-9, "matches (0,-2,2,4,-1) to 1e-9");
    const std::vector<Rational> exact{0, -2, 2, 4, -1};
    c.expect(report.solutions[0].exact && *report.solutions[0].exact == exact, "snaps to the exact point");
    c.expect(solution_set_dimension(residual, exact) == 0, "solution_set_dimension = 0");
    // B33 = 1; with B33 = 0 the matrix B is singular.
    c.expect(tmpl.instantiate(exact)[1](2, 2) == 1, "B33 = 1");
  });

  failures += run(5, "phi is a projective homomorphism preserving X", 10, [](Criterion& c) {
    RandomQ rng(5005);
    for (int trial = 0; trial < 100; ++trial) {
      const HermParams p = random_params(rng);
      const Sl2c m = random_sl2c(rng, p.d()), n = random_sl2c(rng, p.d());
      const QMatrix pm = sl2c_to_pgl4(m, p), pn = sl2c_to_pgl4(n, p), pmn = sl2c_to_pgl4(m * n, p);
      const QMatrix prod = mul(pm, pn);
      c.expect(pmn == prod || pmn == QMatrix(-prod), "phi(MN) = +-phi(M)phi(N)");
      const QMatrix x = quad_form_X(p);
      c.expect(mul(QMatrix(pm.transpose()), mul(x, pm)) == x, "phi(M)^T X phi(M) = X");
      // -det(herm_coords(v)) is a quadratic form; it equals v^T X v on the 10 monomials via polarization.
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          QVector v = QVector::Zero(4);
          v(i) += 1;
          v(j) += 1;
          const QuadExt det = herm_coords(v(0), v(1), v(2), v(3), p).det();
          c.expect(det.is_rational() && -det.re() == (v.transpose() * x * v)(0, 0), "-det o herm_coords = X");
        }
    }
  });

  failures += run(6, "normal-form round trip on 50 random conjugates of the t=4 pair", 30, [](Criterion& c) {
    const auto tmpl = normform2_template();
    const auto images = tmpl.instantiate(fig8_family().at({4}, tmpl.unknowns));
    const auto base = normalize_parabolic_pair(images[0], images[1]);
    RandomQ rng(6006);
    for (int trial = 0; trial < 50; ++trial) {
      const QMatrix g = rng.invertible(4), gi = inverse(g);
      const auto n = normalize_parabolic_pair(QMatrix(rng.nonzero(3) * mul(g, mul(images[0], gi))), mul(g, mul(images[1], gi)));
      c.expect(n.pair.entries == base.pair.entries, "identical normal-form entries");
    }
    const auto second = to_normform2(base.pair);
    c.expect(second.A == images[0] && second.B == images[1], "second normal form recovers the template point");
  });

  failures += run(7, "cohomology at the figure-eight geometric representation", 30, [](Criterion& c) {
    const auto pres = two_bridge_presentation(5, 3);
    const auto rep = fig8_rep();
    c.expect(h1(pres, rep, Coefficients::so31) == 2, "h1(so31) = 2");
    c.expect(h1(pres, rep, Coefficients::v) == 1, "h1(v) = 1");
    c.expect(h1(pres, rep, Coefficients::sl4) == 3, "h1(sl4) = 3");
    const Word l = parse_word(kLongitude, pres.generators), m = parse_word("A", pres.generators);
    c.expect(restriction_rank(pres, rep, {l}, Coefficients::v) == 1, "restriction to L = 1");
    c.expect(restriction_rank(pres, rep, {m}, Coefficients::v) == 0, "restriction to m = 0");
    c.expect(is_rigid_slope(pres, rep, l), "L is a rigid slope");
  });

  failures += run(8, "Hilbert distance is twice the hyperbolic distance", 10, [](Criterion& c) {
    const QuadricDomain klein = QuadricDomain::klein();
    RandomQ rng(8008);
    for (int trial = 0; trial < 100; ++trial) {
      const QVector p = random_ball_point(rng), r = random_ball_point(rng), s = random_ball_point(rng);
      const double dpr = hilbert_distance(klein, p, r);
      c.expect(std::abs(dpr - 2 * d_hyp(p, r)) < 1e-10, "d_H = 2 d_hyp");
      c.expect(std::abs(hilbert_distance(klein, r, p) - dpr) < 1e-9, "symmetry");
      c.expect(hilbert_distance(klein, p, s) <= dpr + hilbert_distance(klein, r, s) + 1e-9, "triangle inequality");
      c.expect(dpr >= 0 && hilbert_distance(klein, p, p) == 0, "nonnegative, zero on the diagonal");
    }
  });

  failures += run(9, "SO(3,1)-parabolic recognition", 10, [](Criterion& c) {
    c.expect(is_so31_parabolic(qmat({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})), "standard parabolic");
    const auto tmpl = normform2_template();
    const auto fam = fig8_family();
    for (int num = 21; num <= 100; num += 3) {
      const Rational t = q(num, 10);
      const auto images = tmpl.instantiate(fam.at({t}, tmpl.unknowns));
      c.expect(is_so31_parabolic(images[0]) && is_so31_parabolic(images[1]), "meridians at t = " + to_string(t));
    }
    c.expect(!is_so31_parabolic(qmat({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, q(1, 2)}})), "rejects diagonal");
    c.expect(!is_so31_parabolic(qmat({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})), "rejects Jordan type 4");
    c.expect(!is_so31_parabolic(qmat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})), "rejects Jordan type 2+2");
    c.expect(!is_so31_parabolic(qmat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})), "rejects Jordan type 2+1+1");
  });

  failures += run(10, "bending on a synthetic amalgam and the second-order obstruction", 30, [](Criterion& c) {
    Presentation p{{"x", "y", "d"}, {}, {}};
    p.relators = {commutator(Word::generator(0), Word::generator(2)), commutator(Word::generator(1), Word::generator(2))};
    QMatrix d = QMatrix::Identity(4, 4);
    d(0, 3) = 1;
    const auto centralizer = ad_invariant_subspace({d});
    RandomQ rng(1010);
    auto random_central = [&] {
      for (;;) {
        QMatrix m = QMatrix::Identity(4, 4) * rng.nonzero();
        for (const auto& z : centralizer) m += z * rng.rational(3);
        if (determinant(m) != 0) return m;
      }
    };
    // Nilpotent invariant elements: combinations with vanishing lower triangle and diagonal.
    QMatrix lower(10, static_cast<Eigen::Index>(centralizer.size()));
    for (std::size_t k = 0; k < centralizer.size(); ++k) {
      Eigen::Index row = 0;
      for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) lower(row++, static_cast<Eigen::Index>(k)) = centralizer[k](i, j);
    }
    const QMatrix nil = kernel(lower);
    c.expect(nil.cols() > 0, "nilpotent invariant elements exist");
    for (int trial = 0; trial < 10 && nil.cols() > 0; ++trial) {
      const QRepresentation rep(p.generators, {random_central(), random_central(), d});
      QMatrix xs = QMatrix::Zero(4, 4);
      for (Eigen::Index j = 0; j < nil.cols(); ++j)
        for (std::size_t k = 0; k < centralizer.size(); ++k) xs += centralizer[k] * (nil(static_cast<Eigen::Index>(k), j) * rng.rational(3));
      const BendingData data{BendMode::amalgam, {"y"}, "", xs, {Word::generator(2)}};
      const Rational s = rng.rational(), t = rng.rational();
      const auto bent = bend(p, rep, data, t);
      c.expect(satisfies_relators(p, bent), "bent representation satisfies the relators");
      const auto zero = bend(p, rep, data, Rational(0));
      const auto twice = bend(p, bend(p, rep, data, s), data, t);
      const auto once = bend(p, rep, data, Rational(s + t));
      for (int g = 0; g < 3; ++g) {
        c.expect(zero.image(g) == rep.image(g), "t = 0 is the identity");
        c.expect(twice.image(g) == once.image(g), "parameters add");
      }
    }

    const auto pres = two_bridge_presentation(5, 3);
    const auto rep = fig8_rep();
    const auto coeffs = taylor_coefficients(fig8_family(), normform2_template(), 4, 2);
    Cochain u1, u2;
    for (int g = 0; g < 2; ++g) {
      u1.push_back(mul(coeffs[1][static_cast<std::size_t>(g)], rep.inverse_image(g)));
      u2.push_back(mul(coeffs[2][static_cast<std::size_t>(g)], rep.inverse_image(g)));
    }
    const auto step = obstruction_step(pres, rep, {u1}, 2);
    c.expect(step.solvable && step.particular.has_value(), "order-2 obstruction vanishes for the tangent cocycle");
    c.expect(satisfies_to_order(pres, rep, {u1, u2}), "differentiated family solves the order-2 equation");
    if (step.particular) {
      Cochain diff;
      for (int g = 0; g < 2; ++g) diff.push_back(QMatrix(u2[static_cast<std::size_t>(g)] - (*step.particular)[static_cast<std::size_t>(g)]));
      const Cochain zero(2, QMatrix::Zero(4, 4));
      c.expect(satisfies_to_order(pres, rep, {zero, diff}), "solved u2 matches the Taylor u2 modulo the linear kernel");
    }
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
