#include "cdeform/words.hpp"

#include "cdeform/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace cdeform {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_)
    if (l.exponent != 1 && l.exponent != -1) throw WordParseError("Word: exponents must be +1 or -1");
}

Word Word::generator(int index, int exponent) { return Word({Letter{index, exponent}}); }

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->generator, -it->exponent});
  return Word(std::move(out));
}

Word Word::power(int k) const {
  const Word base = k < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

Word Word::free_reduced() const {
  std::vector<Letter> out;
  for (const auto& l : letters_) {
    if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

std::string Word::to_string(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const auto& l = letters_[i];
    if (l.generator < 0 || static_cast<std::size_t>(l.generator) >= names.size())
      throw UnboundGenerator("Word::to_string: generator index out of range");
    if (i) os << ' ';
    os << names[static_cast<std::size_t>(l.generator)];
    if (l.exponent < 0) os << "^-1";
  }
  return os.str();
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> out = a.letters_;
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  std::istringstream in{std::string(text)};
  std::string token;
  Word out;
  while (in >> token) {
    if (token == "1") continue;
    std::string name = token;
    int exponent = 1;
    if (const auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      const std::string exp = token.substr(caret + 1);
      std::size_t used = 0;
      try {
        exponent = std::stoi(exp, &used);
      } catch (const std::exception&) {
        throw WordParseError("parse_word: bad exponent in '" + token + "'");
      }
      if (used != exp.size() || exponent == 0) throw WordParseError("parse_word: bad exponent in '" + token + "'");
    }
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw WordParseError("parse_word: unknown generator '" + name + "'");
    out = out * Word::generator(static_cast<int>(it - names.begin())).power(exponent);
  }
  return out;
}

Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

int Presentation::generator_index(const std::string& name) const {
  const auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end()) throw UnboundGenerator("unknown generator '" + name + "'");
  return static_cast<int>(it - generators.begin());
}

Word two_bridge_word(int p, int q) {
  if (!(0 < q && q < p) || std::gcd(p, q) != 1 || q % 2 == 0)
    throw InvalidFraction("two-bridge fraction needs 0 < q < p, gcd(p, q) = 1 and q odd; got " +
                          std::to_string(p) + "/" + std::to_string(q));
  std::vector<Letter> letters;
  for (int i = 1; i < p; ++i) {
    const long fl = (static_cast<long>(i) * q) / p;
    letters.push_back({i % 2 == 1 ? 1 : 0, fl % 2 == 0 ? 1 : -1});
  }
  return Word(std::move(letters));
}

Presentation two_bridge_presentation(int p, int q) {
  const Word w = two_bridge_word(p, q);
  const Word a = Word::generator(0), b = Word::generator(1);
  Presentation pres;
  pres.generators = {"A", "B"};
  // Knots identify the two meridians through W; links (p even) make W commute with A.
  pres.relators = {a * w * (p % 2 == 1 ? b : a).inverse() * w.inverse()};
  pres.peripheral = {{"meridian_A", a}, {"meridian_B", b}, {"W", w}};
  return pres;
}

bool satisfies_relators(const Presentation& pres, const QRepresentation& rep) {
  for (const auto& r : pres.relators) {
    const QMatrix m = evaluate_word(r, rep);
    if (!is_scalar_multiple(m, QMatrix(QMatrix::Identity(m.rows(), m.cols())))) return false;
  }
  return true;
}

QMatrix fox_jacobian(const Word& w, const QRepresentation& rep) {
  if (rep.dimension() != 4) throw DimensionError("fox_jacobian: representation must be 4-dimensional");
  const auto ngen = static_cast<Eigen::Index>(rep.size());
  QMatrix out = QMatrix::Zero(15, 15 * ngen);
  QMatrix prefix = QMatrix::Identity(4, 4), prefix_inv = QMatrix::Identity(4, 4);
  for (const auto& l : w.letters()) {
    const Eigen::Index col = 15 * static_cast<Eigen::Index>(l.generator);
    if (col >= 15 * ngen || l.generator < 0) throw UnboundGenerator("fox_jacobian: generator has no image");
    if (l.exponent > 0) {
      out.middleCols(col, 15) += adjoint_matrix(prefix, prefix_inv);
      prefix = mul(prefix, rep.image(l.generator));
      prefix_inv = mul(rep.inverse_image(l.generator), prefix_inv);
    } else {
      prefix = mul(prefix, rep.inverse_image(l.generator));
      prefix_inv = mul(rep.image(l.generator), prefix_inv);
      out.middleCols(col, 15) -= adjoint_matrix(prefix, prefix_inv);
    }
  }
  return out;
}

QMatrix fox_derivative(const Word& w, int generator, const QRepresentation& rep) {
  if (generator < 0 || static_cast<std::size_t>(generator) >= rep.size())
    throw UnboundGenerator("fox_derivative: generator has no image");
  return fox_jacobian(w, rep).middleCols(15 * generator, 15);
}

}  // namespace cdeform
