#include "cdeform/linalg.hpp"
#include "cdeform/upoly.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>

using namespace cdeform;
using namespace testing_support;

namespace {

QMatrix parabolic_p() { return qmat({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}); }

// A form of signature (3,1) preserved by parabolic_p(), found by solving P^T F P = F.
QMatrix parabolic_p_form() {
  return qmat({{1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, q(-1, 2)}, {0, -1, q(-1, 2), 0}});
}

QMatrix fig8_a() { return qmat({{1, 0, 1, q(-1, 2)}, {0, 1, 1, q(1, 2)}, {0, 0, 1, 1}, {0, 0, 0, 1}}); }
QMatrix fig8_b() { return qmat({{1, 0, 0, 0}, {4, 1, 0, 0}, {2, 1, 1, 0}, {1, 1, 0, 1}}); }

// Form x1 x4 + x2^2 + x3^2 (doubled off-diagonal), preserved by diag(2,1,1,1/2).
QMatrix light_cone_form() { return qmat({{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}}); }

// Lorentz boost in the (x1, x4) plane with cosh = 5/4, sinh = 3/4.
QMatrix lorentz_boost() {
  return qmat({{q(5, 4), 0, 0, q(3, 4)}, {0, 1, 0, 0}, {0, 0, 1, 0}, {q(3, 4), 0, 0, q(5, 4)}});
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

// Boundary hits of the chord p + s (r - p) with the unit sphere, by bisection on s.
double klein_cross_ratio_by_bisection(const QVector& pq, const QVector& rq) {
  std::array<double, 3> p{}, r{};
  for (int i = 0; i < 3; ++i) {
    p[i] = to_double(pq(i) / pq(3));
    r[i] = to_double(rq(i) / rq(3));
  }
  auto norm2 = [&](double s) {
    double acc = 0;
    for (int i = 0; i < 3; ++i) {
      const double x = p[i] + s * (r[i] - p[i]);
      acc += x * x;
    }
    return acc;
  };
  auto hit = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      (norm2(mid) < 1 ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  double far = 1;
  while (norm2(far) < 1) far *= 2;
  double near = 0;
  while (norm2(near) < 1) near = near * 2 - 1;
  const double b = hit(1, far), a = hit(0, near);
  // Parameters 0 and 1 are p and r; the chord is affine in s.
  return std::log(((b - 0) * (1 - a)) / ((b - 1) * (0 - a)));
}

}  // namespace

TEST_CASE("rank by fraction-free elimination", "[linalg]") {
  const QMatrix id = QMatrix::Identity(4, 4);
  const QMatrix n = parabolic_p() - id;
  CHECK(rank(id) == 4);
  CHECK(rank(n) == 2);
  CHECK(rank(QMatrix(mul(n, mul(n, n)))) == 0);
  CHECK(rank(QMatrix::Zero(3, 5).eval()) == 0);
  CHECK(rank(qmat({{q(1, 2), q(1, 3)}, {q(3, 2), 1}})) == 1);
}

TEST_CASE("rank is invariant under permutations and invertible factors", "[linalg][property]") {
  RandomQ rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = rng.integer(0, 4);
    const QMatrix m = mul(rng.matrix(5, r), rng.matrix(r, 6));
    const Eigen::Index base = rank(m);
    CHECK(base == rank_gauss(m));
    CHECK(base <= r);
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 5, rng.engine());
    CHECK(rank(QMatrix(perm * m)) == base);
    CHECK(rank(QMatrix(m.transpose())) == base);
    CHECK(rank(mul(rng.invertible(5), mul(m, rng.invertible(6)))) == base);
  }
}

TEST_CASE("kernel, solve and inverse are exact", "[linalg]") {
  RandomQ rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const QMatrix m = mul(rng.matrix(4, 2), rng.matrix(2, 5));
    const QMatrix k = kernel(m);
    CHECK(k.cols() == 5 - rank(m));
    CHECK(is_zero_matrix(mul(m, k)));
    const QMatrix g = rng.invertible(4);
    CHECK(mul(g, inverse(g)) == QMatrix::Identity(4, 4));
    const QMatrix b = rng.matrix(4, 1);
    const auto x = solve(g, b);
    REQUIRE(x.has_value());
    CHECK(mul(g, *x) == b);
  }
  CHECK_THROWS_AS(inverse(QMatrix(QMatrix::Zero(2, 2))), SingularMatrix);
}

TEST_CASE("signature by congruence", "[linalg]") {
  CHECK(signature(minkowski_form()) == Signature{3, 1, 0});
  CHECK(signature(light_cone_form()) == Signature{3, 1, 0});
  CHECK(signature(parabolic_p_form()) == Signature{3, 1, 0});
  CHECK(signature(qmat({{0, 1}, {1, 0}})) == Signature{1, 1, 0});
  CHECK(signature(qmat({{1, 1}, {1, 1}})) == Signature{1, 0, 1});
  RandomQ rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const QMatrix g = rng.invertible(4);
    CHECK(signature(mul(QMatrix(g.transpose()), mul(minkowski_form(), g))) == Signature{3, 1, 0});
  }
  CHECK_THROWS_AS(QuadricDomain(QMatrix(QMatrix::Identity(4, 4))), InvalidForm);
}

TEST_CASE("SO(3,1)-parabolic recognition", "[linalg]") {
  CHECK(is_so31_parabolic(parabolic_p()));
  CHECK(is_so31_parabolic(QMatrix(3 * parabolic_p())));
  CHECK_FALSE(is_so31_parabolic(QMatrix::Identity(4, 4)));
  CHECK(is_so31_parabolic(fig8_a()));
  CHECK(is_so31_parabolic(fig8_b()));
  // single 4-block and a (2,2) Jordan type
  CHECK_FALSE(is_so31_parabolic(qmat({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})));
  CHECK_FALSE(is_so31_parabolic(qmat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})));
  CHECK_FALSE(is_so31_parabolic(qmat({{2, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})));
  CHECK_THROWS_AS(is_so31_parabolic(QMatrix::Zero(3, 4).eval()), DimensionError);

  RandomQ rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const QMatrix g = rng.invertible(4);
    const QMatrix gi = inverse(g);
    CHECK(is_so31_parabolic(mul(g, mul(parabolic_p(), gi))));
    CHECK_FALSE(is_so31_parabolic(mul(g, mul(qmat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}), gi))));
  }
}

TEST_CASE("isometry classification", "[linalg]") {
  const QuadricDomain para(parabolic_p_form());
  CHECK(classify_isometry(parabolic_p(), para) == IsometryType::parabolic);
  CHECK(classify_isometry(QMatrix::Identity(4, 4), QuadricDomain::klein()) == IsometryType::elliptic);
  const QMatrix rot = qmat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(classify_isometry(rot, QuadricDomain::klein()) == IsometryType::elliptic);
  const QuadricDomain cone(light_cone_form());
  const QMatrix hyp = qmat({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, q(1, 2)}});
  CHECK(classify_isometry(hyp, cone) == IsometryType::hyperbolic);
  CHECK(classify_isometry(QMatrix(5 * hyp), cone) == IsometryType::hyperbolic);
  CHECK(classify_isometry(lorentz_boost(), QuadricDomain::klein()) == IsometryType::hyperbolic);
  CHECK_THROWS_AS(classify_isometry(hyp, QuadricDomain::klein()), FormNotPreserved);
  // rotation composed with a boost along the rotation axis is still hyperbolic
  const QMatrix rot23 = qmat({{1, 0, 0, 0}, {0, q(3, 5), q(-4, 5), 0}, {0, q(4, 5), q(3, 5), 0}, {0, 0, 0, 1}});
  CHECK(classify_isometry(mul(rot23, lorentz_boost()), QuadricDomain::klein()) == IsometryType::hyperbolic);
  CHECK(classify_isometry(rot23, QuadricDomain::klein()) == IsometryType::elliptic);
}

TEST_CASE("translation length", "[linalg]") {
  const QuadricDomain cone(light_cone_form());
  const QMatrix hyp = qmat({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, q(1, 2)}});
  CHECK(translation_length(hyp, cone) == Catch::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(translation_length(inverse(hyp), cone) == Catch::Approx(translation_length(hyp, cone)).epsilon(1e-14));
  CHECK_THROWS_AS(translation_length(QMatrix::Identity(4, 4), cone), NotHyperbolic);

  // Conjugated translations: the axis through the two light-like eigenvectors
  // is displaced by exactly the translation length.
  RandomQ rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational lam = q(rng.integer(2, 7), rng.integer(1, 1)) / rng.integer(1, 3);
    if (lam == 1) continue;
    const QMatrix d = qmat({{lam, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1 / lam}});
    const QMatrix g = rng.invertible(4);
    const QMatrix gi = inverse(g);
    const QuadricDomain dom(QMatrix(mul(QMatrix(gi.transpose()), mul(light_cone_form(), gi))));
    const QMatrix m = mul(g, mul(d, gi));
    REQUIRE(classify_isometry(m, dom) == IsometryType::hyperbolic);
    const QVector x = g * qvec({1, 0, 0, -1});
    const QVector mx = m * x;
    CHECK(hilbert_distance(dom, x, mx) == Catch::Approx(translation_length(m, dom)).margin(1e-8));
    CHECK(translation_length(m, dom) == Catch::Approx(std::abs(std::log(to_double(lam * lam)))).margin(1e-12));
  }
}

TEST_CASE("Hilbert distance in the Klein model", "[linalg]") {
  const QuadricDomain klein = QuadricDomain::klein();
  const QVector o = qvec({0, 0, 0, 1});
  CHECK(hilbert_distance(klein, o, o) == 0.0);
  CHECK(hilbert_distance(klein, o, QVector(3 * o)) == 0.0);
  CHECK_THROWS_AS(hilbert_distance(klein, o, qvec({2, 0, 0, 1})), PointNotInterior);
  CHECK_THROWS_AS(hilbert_distance(klein, o, qvec({1, 0, 0, 1})), PointNotInterior);

  RandomQ rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const QVector p = random_ball_point(rng), r = random_ball_point(rng), s = random_ball_point(rng);
    const double dpr = hilbert_distance(klein, p, r);
    CHECK(dpr == Catch::Approx(2 * d_hyp(p, r)).margin(1e-10));
    if (dpr > 1e-3) CHECK(dpr == Catch::Approx(klein_cross_ratio_by_bisection(p, r)).margin(1e-9));
    CHECK(hilbert_distance(klein, r, p) == Catch::Approx(dpr).margin(1e-12));
    CHECK(hilbert_distance(klein, p, s) <= dpr + hilbert_distance(klein, r, s) + 1e-9);
    const QMatrix b = lorentz_boost();
    CHECK(hilbert_distance(klein, QVector(b * p), QVector(b * r)) == Catch::Approx(dpr).margin(1e-9));
  }
}

TEST_CASE("sl4 splitting", "[linalg]") {
  const QMatrix j = minkowski_form();
  const QMatrix rot = qmat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  auto s = split_sl4(rot);
  CHECK(s.so_part == rot);
  CHECK(is_zero_matrix(s.v_part));
  const QMatrix am = qmat({{3, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}});
  s = split_sl4(am);
  CHECK(is_zero_matrix(s.so_part));
  CHECK(s.v_part == am);
  CHECK_THROWS_AS(split_sl4(QMatrix(QMatrix::Identity(4, 4))), NonZeroTrace);

  RandomQ rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    QMatrix a = rng.matrix(4, 4);
    a(3, 3) -= a.trace();
    const auto sp = split_sl4(a);
    CHECK(sp.so_part + sp.v_part == a);
    CHECK(QMatrix(sp.so_part.transpose() * j) == QMatrix(-(j * sp.so_part)));
    CHECK(QMatrix(sp.v_part.transpose() * j) == QMatrix(j * sp.v_part));
    CHECK(sp.so_part.trace() == 0);
    CHECK(sp.v_part.trace() == 0);
    CHECK(split_sl4(sp.so_part).so_part == sp.so_part);
    CHECK(is_zero_matrix(split_sl4(sp.v_part).so_part));
    CHECK(QMatrix(mul(sp.so_part, sp.v_part)).trace() == 0);
    const QMatrix g = lorentz_boost();
    const QMatrix gi = inverse(g);
    const auto conj = split_sl4(mul(g, mul(a, gi)));
    CHECK(conj.so_part == mul(g, mul(sp.so_part, gi)));
    CHECK(conj.v_part == mul(g, mul(sp.v_part, gi)));
  }
}

TEST_CASE("sl4 coordinates and the adjoint matrix", "[linalg]") {
  RandomQ rng(37);
  CHECK(sl4_basis().size() == 15);
  for (int trial = 0; trial < 10; ++trial) {
    const QVector c = rng.matrix(15, 1);
    const QMatrix x = sl4_from_coords(c);
    CHECK(x.trace() == 0);
    CHECK(sl4_coords(x) == c);
    const QMatrix p = rng.invertible(4);
    const QMatrix pi = inverse(p);
    CHECK(sl4_from_coords(adjoint_matrix(p) * c) == mul(p, mul(x, pi)));
    const QMatrix r = rng.invertible(4);
    CHECK(adjoint_matrix(mul(p, r)) == mul(adjoint_matrix(p), adjoint_matrix(r)));
  }
}

TEST_CASE("Ad-invariant subspaces", "[linalg]") {
  CHECK(ad_invariant_subspace({QMatrix::Identity(4, 4)}).size() == 15);
  CHECK(ad_invariant_subspace({fig8_a(), fig8_b()}).empty());

  // diag(1, Sym^2 g) for two generators of an irreducible subgroup of SL(2).
  const QMatrix s1 = qmat({{1, 0, 0, 0}, {0, 1, 1, 1}, {0, 0, 1, 2}, {0, 0, 0, 1}});
  const QMatrix s2 = qmat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 2, 1, 0}, {0, 1, 1, 1}});
  const auto inv = ad_invariant_subspace({s1, s2});
  REQUIRE(inv.size() == 1);
  const QMatrix expected = qmat({{-3, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(is_scalar_multiple(inv[0], expected));
  for (const auto& g : {s1, s2}) CHECK(mul(g, mul(inv[0], inverse(g))) == inv[0]);

  RandomQ rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const QMatrix g = rng.invertible(4);
    const auto fixed = ad_invariant_subspace({g});
    CHECK(fixed.size() >= 3);  // the centralizer contains the powers of g
    for (const auto& x : fixed) CHECK(mul(g, x) == mul(x, g));
  }
}

TEST_CASE("invariant symmetric forms", "[linalg]") {
  const auto forms = invariant_symmetric_forms({parabolic_p()});
  CHECK(forms.size() == 4);
  for (const auto& f : forms) CHECK(mul(QMatrix(parabolic_p().transpose()), mul(f, parabolic_p())) == f);
  const auto fig8_forms = invariant_symmetric_forms({fig8_a(), fig8_b()});
  REQUIRE(fig8_forms.size() == 1);
  CHECK(signature(fig8_forms[0]).positive + signature(fig8_forms[0]).negative == 4);
  const Signature sig = signature(fig8_forms[0]);
  CHECK(((sig == Signature{3, 1, 0}) || (sig == Signature{1, 3, 0})));
}

TEST_CASE("characteristic polynomial and root tools", "[upoly]") {
  const UPoly cp = characteristic_polynomial(parabolic_p());
  CHECK(cp == UPoly({1, -4, 6, -4, 1}));
  // s^4 - 32 s + 48 = (s - 2)^2 (s^2 + 4 s + 12)
  const UPoly f({48, -32, 0, 0, 1});
  CHECK(count_real_roots(f) == 1);
  CHECK(rational_roots(f) == std::vector<Rational>{2});
  CHECK(root_multiplicity(f, 2) == 2);
  const auto sq = squarefree_decomposition(f);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].first == UPoly({12, 4, 1}));
  CHECK(sq[0].second == 1);
  CHECK(sq[1].first == UPoly({-2, 1}));
  CHECK(sq[1].second == 2);
  const UPoly g = UPoly({-1, 0, 2}) * UPoly({-3, 5}) * UPoly({7, 0, 0, 1});
  CHECK(rational_roots(g) == std::vector<Rational>{q(3, 5)});
  const auto roots = real_roots(g);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0] == Catch::Approx(-std::cbrt(7.0)));
  CHECK(roots[1] == Catch::Approx(-std::sqrt(0.5)));
  CHECK(roots[2] == Catch::Approx(0.6));
  CHECK(count_real_roots(g, 0, 1) == 2);
  auto [quo, rem] = divmod(g, UPoly({-3, 5}));
  CHECK(rem.is_zero());
  CHECK(quo * UPoly({-3, 5}) == g);
}
