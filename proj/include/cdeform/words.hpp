#pragma once

#include "cdeform/matrix.hpp"

#include <Eigen/LU>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace cdeform {

class InvalidFraction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class UnboundGenerator : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};
class WordParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class RelatorNotSatisfied : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Unreduced word in signed generator letters; the empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(int index, int exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word power(int k) const;
  /// Cancels adjacent g g^{-1} pairs; never applied implicitly.
  Word free_reduced() const;
  /// Whitespace-separated names with "^-1" suffixes.
  std::string to_string(const std::vector<std::string>& names) const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Parses "B A^-1 B^-1 A^2"; "^k" expands to |k| letters. "1" or blank is the identity.
Word parse_word(std::string_view text, const std::vector<std::string>& generator_names);

Word commutator(const Word& a, const Word& b);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  /// Named peripheral words (meridians, longitudes), keyed by curve name.
  std::map<std::string, Word> peripheral;

  int generator_index(const std::string& name) const;
  std::size_t rank() const { return generators.size(); }
};

/// Two-bridge word W: p-1 letters alternating B, A, ... with exponents (-1)^floor(i q / p).
Word two_bridge_word(int p, int q);

/// <A, B | A W = W B> for knots (p odd) and <A, B | A W = W A> for links (p even).
/// Generators are A (index 0) and B (index 1); peripheral data holds the meridians and W.
Presentation two_bridge_presentation(int p, int q);

/// Generator images, indexed like the presentation's generator list.
template <typename Scalar>
class Representation {
 public:
  Representation() = default;
  Representation(std::vector<std::string> names, std::vector<Matrix<Scalar>> images)
      : names_(std::move(names)), images_(std::move(images)) {
    if (names_.size() != images_.size()) throw DimensionError("Representation: name/image count mismatch");
    for (const auto& m : images_)
      if (m.rows() != m.cols()) throw DimensionError("Representation: images must be square");
    inverses_.reserve(images_.size());
    for (const auto& m : images_) inverses_.push_back(invert(m));
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return images_.size(); }
  Eigen::Index dimension() const { return images_.empty() ? 0 : images_.front().rows(); }

  const Matrix<Scalar>& image(int g) const { return images_.at(checked(g)); }
  const Matrix<Scalar>& inverse_image(int g) const { return inverses_.at(checked(g)); }
  const std::vector<Matrix<Scalar>>& images() const { return images_; }

  /// Matrix of a single letter.
  const Matrix<Scalar>& letter(const Letter& l) const { return l.exponent > 0 ? image(l.generator) : inverse_image(l.generator); }

  /// Conjugate every image by G: g -> G g G^{-1}.
  Representation conjugated(const Matrix<Scalar>& g) const {
    const Matrix<Scalar> gi = invert(g);
    std::vector<Matrix<Scalar>> out;
    for (const auto& m : images_) out.push_back(product(g, product(m, gi)));
    return Representation(names_, std::move(out));
  }

  static Matrix<Scalar> invert(const Matrix<Scalar>& m) {
    if constexpr (std::is_floating_point_v<Scalar>)
      return m.inverse();
    else
      return cdeform::inverse(m);
  }
  static Matrix<Scalar> product(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    if constexpr (std::is_floating_point_v<Scalar>)
      return a * b;
    else
      return mul(a, b);
  }

 private:
  std::size_t checked(int g) const {
    if (g < 0 || static_cast<std::size_t>(g) >= images_.size())
      throw UnboundGenerator("generator index " + std::to_string(g) + " has no image");
    return static_cast<std::size_t>(g);
  }

  std::vector<std::string> names_;
  std::vector<Matrix<Scalar>> images_;
  std::vector<Matrix<Scalar>> inverses_;
};

using QRepresentation = Representation<Rational>;

/// Ordered product of letter images; the empty word maps to the identity.
template <typename Scalar>
Matrix<Scalar> evaluate_word(const Word& w, const Representation<Scalar>& rep) {
  const Eigen::Index n = rep.dimension();
  Matrix<Scalar> acc = Matrix<Scalar>::Identity(n, n);
  for (const auto& l : w.letters()) acc = Representation<Scalar>::product(acc, rep.letter(l));
  return acc;
}

/// True iff every relator maps to a scalar multiple of the identity (projective relation).
bool satisfies_relators(const Presentation& pres, const QRepresentation& rep);

/// Linear map Phi_g (15 x 15, sl4 coordinates) with z(w) = sum_g Phi_g z(g) for any cocycle z.
QMatrix fox_derivative(const Word& w, int generator, const QRepresentation& rep);

/// All Fox derivatives side by side: a 15 x (15 * #generators) block row.
QMatrix fox_jacobian(const Word& w, const QRepresentation& rep);

}  // namespace cdeform
