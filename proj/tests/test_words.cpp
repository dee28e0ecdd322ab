#include "cdeform/linalg.hpp"
#include "cdeform/words.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>

using namespace cdeform;
using namespace testing_support;

namespace {

const std::vector<std::string> kAB{"A", "B"};

QRepresentation fig8_t4() {
  return QRepresentation(kAB, {qmat({{1, 0, 1, q(-1, 2)}, {0, 1, 1, q(1, 2)}, {0, 0, 1, 1}, {0, 0, 0, 1}}),
                               qmat({{1, 0, 0, 0}, {4, 1, 0, 0}, {2, 1, 1, 0}, {1, 1, 0, 1}})});
}

QRepresentation whitehead_point() {
  return QRepresentation(kAB, {qmat({{1, 0, 1, 0}, {0, 1, 1, -2}, {0, 0, 1, 2}, {0, 0, 0, 1}}),
                               qmat({{1, 0, 0, 0}, {4, 1, 0, 0}, {-1, 1, 1, 0}, {1, 1, 0, 1}})});
}

QRepresentation random_rep(RandomQ& rng, std::size_t gens) {
  std::vector<std::string> names;
  std::vector<QMatrix> images;
  for (std::size_t i = 0; i < gens; ++i) {
    names.push_back("g" + std::to_string(i));
    images.push_back(rng.invertible(4, 3));
  }
  return QRepresentation(names, images);
}

Word random_word(RandomQ& rng, int gens, int length) {
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) letters.push_back({rng.integer(0, gens - 1), rng.integer(0, 1) ? 1 : -1});
  return Word(letters);
}

// z(uv) = z(u) + Ad(rho(u)) z(v), folded letter by letter on matrices.
QMatrix cocycle_on_word(const Word& w, const QRepresentation& rep, const std::vector<QMatrix>& z) {
  QMatrix acc = QMatrix::Zero(4, 4), prefix = QMatrix::Identity(4, 4);
  for (const auto& l : w.letters()) {
    const auto g = static_cast<std::size_t>(l.generator);
    const QMatrix zl = l.exponent > 0 ? z[g] : QMatrix(-mul(rep.inverse_image(l.generator), mul(z[g], rep.image(l.generator))));
    acc += mul(prefix, mul(zl, inverse(prefix)));
    prefix = mul(prefix, rep.letter(l));
  }
  return acc;
}

}  // namespace

TEST_CASE("two-bridge words", "[words]") {
  CHECK(two_bridge_word(5, 3).to_string(kAB) == "B A^-1 B^-1 A");
  CHECK(two_bridge_word(8, 3).to_string(kAB) == "B A B^-1 A^-1 B^-1 A B");
  CHECK(two_bridge_word(3, 1).to_string(kAB) == "B A");
  CHECK_THROWS_AS(two_bridge_word(5, 2), InvalidFraction);
  CHECK_THROWS_AS(two_bridge_word(9, 3), InvalidFraction);
  CHECK_THROWS_AS(two_bridge_word(3, 5), InvalidFraction);
  CHECK_THROWS_AS(two_bridge_word(5, 0), InvalidFraction);

  for (int p = 2; p < 40; ++p)
    for (int q = 1; q < p; q += 2) {
      if (std::gcd(p, q) != 1) continue;
      const Word w = two_bridge_word(p, q);
      REQUIRE(w.size() == static_cast<std::size_t>(p - 1));
      for (std::size_t i = 0; i < w.size(); ++i) CHECK(w.letters()[i].generator == (i % 2 == 0 ? 1 : 0));
    }
}

TEST_CASE("two-bridge presentations", "[words]") {
  const auto knot = two_bridge_presentation(5, 3);
  REQUIRE(knot.relators.size() == 1);
  CHECK(knot.relators[0].to_string(knot.generators) == "A B A^-1 B^-1 A B^-1 A^-1 B A B^-1");
  CHECK(knot.peripheral.at("meridian_A") == Word::generator(0));
  CHECK(satisfies_relators(knot, fig8_t4()));

  const auto link = two_bridge_presentation(8, 3);
  CHECK(satisfies_relators(link, whitehead_point()));
  // The knot-style relation A W = W B fails at the same point.
  const Word w = link.peripheral.at("W");
  Presentation knot_style = link;
  knot_style.relators = {Word::generator(0) * w * Word::generator(1, -1) * w.inverse()};
  CHECK_FALSE(satisfies_relators(knot_style, whitehead_point()));
}

TEST_CASE("word parsing", "[words]") {
  const Word l = parse_word("B A^-1 B^-1 A^2 B^-1 A^-1 B", kAB);
  CHECK(l.size() == 8);
  CHECK(l.to_string(kAB) == "B A^-1 B^-1 A A B^-1 A^-1 B");
  CHECK(parse_word(l.to_string(kAB), kAB) == l);
  CHECK(parse_word("", kAB).empty());
  CHECK(parse_word("1", kAB).empty());
  CHECK(parse_word("A^-3", kAB) == Word::generator(0, -1).power(3));
  CHECK_THROWS_AS(parse_word("C", kAB), WordParseError);
  CHECK_THROWS_AS(parse_word("A^x", kAB), WordParseError);
  CHECK_THROWS_AS(parse_word("A^0", kAB), WordParseError);
  CHECK((l * l.inverse()).free_reduced().empty());
  CHECK((l * l.inverse()).size() == 16);
}

TEST_CASE("word evaluation", "[words]") {
  const auto rep = fig8_t4();
  CHECK(evaluate_word(Word(), rep) == QMatrix::Identity(4, 4));
  const Word l = parse_word("B A^-1 B^-1 A^2 B^-1 A^-1 B", kAB);
  CHECK(evaluate_word(l, rep).trace() == 4);
  CHECK_THROWS_AS(evaluate_word(Word::generator(2), rep), UnboundGenerator);

  RandomQ rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = random_rep(rng, 3);
    const Word u = random_word(rng, 3, rng.integer(0, 6)), v = random_word(rng, 3, rng.integer(0, 6));
    CHECK(evaluate_word(u * v, r) == mul(evaluate_word(u, r), evaluate_word(v, r)));
    CHECK(evaluate_word(u * u.inverse(), r) == QMatrix::Identity(4, 4));
  }
}

TEST_CASE("Fox derivatives", "[words]") {
  const auto rep = fig8_t4();
  CHECK(fox_derivative(Word::generator(0), 0, rep) == QMatrix::Identity(15, 15));
  CHECK(is_zero_matrix(fox_derivative(Word::generator(1), 0, rep)));
  CHECK(is_zero_matrix(fox_derivative(Word::generator(0) * Word::generator(0, -1), 0, rep)));

  const auto pres = two_bridge_presentation(5, 3);
  const QMatrix jac = fox_jacobian(pres.relators[0], rep);
  CHECK(jac.cols() - rank(jac) == 18);

  RandomQ rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = random_rep(rng, 2);
    const Word w = random_word(rng, 2, rng.integer(1, 7));
    std::vector<QMatrix> z;
    QVector stacked(30);
    for (int g = 0; g < 2; ++g) {
      QVector c = rng.matrix(15, 1);
      z.push_back(sl4_from_coords(c));
      stacked.segment(15 * g, 15) = c;
    }
    CHECK(sl4_from_coords(fox_jacobian(w, r) * stacked) == cocycle_on_word(w, r, z));
  }

  // Coboundaries z_c(g) = c - Ad(g) c vanish on relators through the Fox operator.
  for (int trial = 0; trial < 5; ++trial) {
    const QVector c = rng.matrix(15, 1);
    QVector z(30);
    for (int g = 0; g < 2; ++g) z.segment(15 * g, 15) = c - adjoint_matrix(rep.image(g)) * c;
    CHECK(is_zero_matrix(QMatrix(jac * z)));
  }
}
