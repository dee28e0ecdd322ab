#include "cdeform/linalg.hpp"
#include "cdeform/normal_forms.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace cdeform;
using namespace testing_support;

namespace {

QuadExt random_quad(RandomQ& rng, const Rational& d) { return QuadExt(rng.rational(4), rng.rational(4), d); }

Sl2c random_sl2c(RandomQ& rng, const Rational& d) {
  for (;;) {
    const QuadExt a = random_quad(rng, d), b = random_quad(rng, d), c = random_quad(rng, d);
    if (a.norm() == 0) continue;
    return {a, b, c, (QuadExt(1) + b * c) / a};
  }
}

HermParams random_params(RandomQ& rng) {
  for (;;) {
    HermParams p{rng.rational(6), rng.rational(4)};
    if (p.d() > 0) return p;
  }
}

Rational minus_det(const Mat2& n) {
  const QuadExt det = n.det();
  REQUIRE(det.is_rational());
  return -det.re();
}

QMatrix fig8_expected_a() { return qmat({{1, 0, 1, q(-1, 2)}, {0, 1, 1, q(1, 2)}, {0, 0, 1, 1}, {0, 0, 0, 1}}); }
QMatrix fig8_expected_b() { return qmat({{1, 0, 0, 0}, {4, 1, 0, 0}, {2, 1, 1, 0}, {1, 1, 0, 1}}); }

}  // namespace

TEST_CASE("Hermitian coordinates", "[normal_forms]") {
  const HermParams unit{1, 0};
  const Mat2 zero = herm_coords(0, 0, 0, 0, unit);
  CHECK(zero == Mat2{QuadExt(0), QuadExt(0), QuadExt(0), QuadExt(0)});
  const HermParams p{5, q(1, 2)};
  const Mat2 e1 = herm_coords(1, 0, 0, 0, p);
  CHECK(e1 == Mat2{QuadExt(1), QuadExt(1), QuadExt(1), QuadExt(0)});
  const Mat2 e4 = herm_coords(0, 0, 0, 1, unit);
  CHECK(e4 == Mat2{QuadExt(0), QuadExt(0), QuadExt(0), QuadExt(1)});
  CHECK_THROWS_AS(herm_coords(1, 0, 0, 0, HermParams{1, 1}), NonPositiveD);

  RandomQ rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const HermParams r = random_params(rng);
    const QVector v = rng.matrix(4, 1);
    CHECK(herm_inverse(herm_coords(v(0), v(1), v(2), v(3), r), r) == v);
  }
}

TEST_CASE("quadratic form X", "[normal_forms]") {
  CHECK(quad_form_X(HermParams{1, 0}) ==
        qmat({{1, -1, 0, q(-1, 2)}, {-1, 1, 0, 0}, {0, 0, 1, 0}, {q(-1, 2), 0, 0, 0}}));
  RandomQ rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const HermParams p = random_params(rng);
    const QMatrix x = quad_form_X(p);
    CHECK(signature(x) == Signature{3, 1, 0});
    // Polarization recovers the Gram matrix of -det exactly.
    auto form = [&](const QVector& v) { return minus_det(herm_coords(v(0), v(1), v(2), v(3), p)); };
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        QVector ei = QVector::Zero(4), ej = QVector::Zero(4);
        ei(i) = 1;
        ej(j) = 1;
        CHECK((form(QVector(ei + ej)) - form(ei) - form(ej)) / 2 == x(i, j));
      }
  }
  for (int trial = 0; trial < 20; ++trial) {
    HermParams p{rng.rational(4), rng.nonzero(4)};
    if (p.d() >= 0) continue;
    CHECK_FALSE(signature(quad_form_X(p)) == Signature{3, 1, 0});
  }
}

TEST_CASE("the SL(2,C) action on R^4", "[normal_forms]") {
  const HermParams unit{1, 0};
  const Sl2c id{QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(1)};
  CHECK(sl2c_to_pgl4(id, unit) == QMatrix::Identity(4, 4));
  CHECK_THROWS_AS(sl2c_to_pgl4(Sl2c{QuadExt(2), QuadExt(0), QuadExt(0), QuadExt(1)}, unit), NonUnitDeterminant);

  RandomQ rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    const HermParams p = random_params(rng);
    const Rational d = p.d();
    const QMatrix expected = qmat({{1, 0, 2, 1 - 2 * p.b32}, {0, 1, 2, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    // [[1, i/sqrt(d)], [0, 1]]
    CHECK(sl2c_to_pgl4(Sl2c{QuadExt(1), QuadExt(0, 1 / d, d), QuadExt(0), QuadExt(1)}, p) == expected);
    CHECK(sl2c_to_pgl4_normalized(Sl2c{QuadExt(1), QuadExt(1), QuadExt(0), QuadExt(1)}, p) == expected);
  }
  for (const Rational b32 : {Rational(0), q(1, 4), q(-1, 3)}) {
    // [[1, i sqrt(d)], [0, 1]] agrees with the above exactly when d = 1.
    const HermParams p{1 + 4 * b32 * b32, b32};
    const QMatrix expected = qmat({{1, 0, 2, 1 - 2 * b32}, {0, 1, 2, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    CHECK(sl2c_to_pgl4(Sl2c{QuadExt(1), QuadExt(0, 1, 1), QuadExt(0), QuadExt(1)}, p) == expected);
  }
}

TEST_CASE("phi is a projective homomorphism preserving X", "[normal_forms][property]") {
  RandomQ rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const HermParams p = random_params(rng);
    const Sl2c m = random_sl2c(rng, p.d()), n = random_sl2c(rng, p.d());
    const QMatrix pm = sl2c_to_pgl4(m, p), pn = sl2c_to_pgl4(n, p);
    const QMatrix pmn = sl2c_to_pgl4(m * n, p);
    const QMatrix prod = mul(pm, pn);
    CHECK((pmn == prod || pmn == QMatrix(-prod)));
    const QMatrix x = quad_form_X(p);
    CHECK(mul(QMatrix(pm.transpose()), mul(x, pm)) == x);
    CHECK(is_so31_parabolic(sl2c_to_pgl4_normalized(Sl2c{QuadExt(1), QuadExt(1), QuadExt(0), QuadExt(1)}, p)));
  }
}

TEST_CASE("Riley pairs in the first normal form", "[normal_forms]") {
  const auto i_pair = riley_to_normform({0, 1});
  CHECK(i_pair.entries.at("b21") == 1);
  CHECK(i_pair.entries.at("b32") == 0);
  CHECK(i_pair.entries.at("b41") == -2);
  CHECK(i_pair.entries.at("b31") == 0);
  CHECK(i_pair.entries.at("a14") == 0);
  CHECK_THROWS_AS(riley_to_normform({2, 0}), RealOmega);

  RandomQ rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const RileyParameter w{rng.rational(5), q(rng.integer(1, 20), rng.integer(1, 5))};
    const auto pair = riley_to_normform(w);
    CHECK(pair.entries.at("a14") == -w.re);
    CHECK(pair.entries.at("b31") == 0);
    CHECK(pair.entries.at("b41") == -2);
    CHECK(pair.entries.at("b21") == w.re * w.re + w.im2);
    CHECK(pair.entries.at("b32") == w.re / 2);
    RileyParameter wbar = w;
    wbar.conjugate = true;
    CHECK(riley_to_normform(wbar).entries == pair.entries);
  }
}

TEST_CASE("figure-eight Riley root lands on the t = 4 point", "[normal_forms]") {
  // omega = (1 + i sqrt 3)/2 satisfies the figure-eight Riley relation.
  const auto pair = riley_to_normform({q(1, 2), q(3, 4)});
  const auto second = to_normform2(pair);
  CHECK(second.A == fig8_expected_a());
  CHECK(second.B == fig8_expected_b());
  // (-1 + i sqrt 3)/2 gives a different, non-equivalent pair.
  const auto other = to_normform2(riley_to_normform({q(-1, 2), q(3, 4)}));
  CHECK_FALSE(other.entries == second.entries);
}

TEST_CASE("normalization of parabolic pairs", "[normal_forms]") {
  const auto base = normform1(q(-1, 2), 1, 0, q(1, 4), -2);
  const auto same = normalize_parabolic_pair(base.A, base.B);
  CHECK(same.G == QMatrix::Identity(4, 4));
  CHECK(same.pair.entries == base.entries);

  const auto fig8 = normalize_parabolic_pair(fig8_expected_a(), fig8_expected_b());
  CHECK(to_normform2(fig8.pair).A == fig8_expected_a());
  CHECK(to_normform2(fig8.pair).B == fig8_expected_b());

  RandomQ rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    const QMatrix g0 = rng.invertible(4);
    const QMatrix gi = inverse(g0);
    const Rational scale = rng.nonzero(3);
    const auto n = normalize_parabolic_pair(QMatrix(scale * mul(g0, mul(fig8_expected_a(), gi))),
                                            mul(g0, mul(fig8_expected_b(), gi)));
    CHECK(n.pair.entries == fig8.pair.entries);
    const QMatrix gn_inv = inverse(n.G);
    CHECK(mul(gn_inv, mul(mul(g0, mul(fig8_expected_b(), gi)), n.G)) == n.pair.B);
  }

  const auto i_pair = riley_to_normform({0, 1});
  const auto from_phi = normalize_parabolic_pair(i_pair.A, i_pair.B);
  CHECK(from_phi.pair.entries == i_pair.entries);

  CHECK_THROWS_AS(normalize_parabolic_pair(QMatrix::Identity(4, 4), fig8_expected_b()), NotParabolic);
  CHECK_THROWS_AS(normalize_parabolic_pair(fig8_expected_a(), fig8_expected_a()), ReduciblePair);
}

TEST_CASE("conjugation into the second normal form", "[normal_forms]") {
  const auto i_pair = riley_to_normform({0, 1});
  const auto second = to_normform2(i_pair);
  const QMatrix v = normform_conjugator(i_pair);
  CHECK(mul(v, mul(second.A, inverse(v))) == i_pair.A);
  CHECK(second.B(3, 0) == 1);
  CHECK(second.B(3, 1) == 1);
  CHECK(second.B(2, 1) == 1);
  CHECK_THROWS_AS(to_normform2(normform1(0, 1, 0, 0, -3)), SingularV);
  CHECK_THROWS_AS(to_normform2(normform2(0, 0, 1, 1, 1)), std::invalid_argument);
}

TEST_CASE("templates are SO(3,1)-parabolic near the geometric values", "[normal_forms][property]") {
  RandomQ rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p1 = normform1(rng.rational(), rng.rational(), rng.rational(), rng.rational(), rng.rational());
    CHECK(is_so31_parabolic(p1.A));
    CHECK(is_so31_parabolic(p1.B));
    const auto p2 = normform2(rng.rational(), rng.rational(), rng.nonzero(), rng.rational(), rng.rational());
    CHECK(is_so31_parabolic(p2.A));
  }
  // Along the figure-eight family the B meridian is parabolic for every t.
  for (int k = 1; k <= 16; ++k) CHECK(is_so31_parabolic(normform2(0, 0, 1, 2 + q(k, 2), 2).B));
}
