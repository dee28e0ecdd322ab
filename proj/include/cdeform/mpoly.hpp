#pragma once

#include "cdeform/rational.hpp"
#include "cdeform/upoly.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdeform {

class VariableMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class ExpressionParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponent = std::vector<int>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Multivariate polynomial over Q in an ordered list of named variables.
/// Binary operations require identical variable lists.
class MPoly {
 public:
  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars);
  static MPoly constant(const std::vector<std::string>& vars, const Rational& c);
  static MPoly variable(const std::vector<std::string>& vars, const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponent, Rational, GrlexLess>& terms() const { return terms_; }
  std::size_t nvars() const { return vars_.size(); }
  int var_index(const std::string& name) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;
  int degree_in(int var) const;
  /// Leading term in graded-lex order.
  std::pair<Exponent, Rational> leading_term() const;

  void add_term(const Exponent& e, const Rational& c);

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Rational& c, const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b);
  MPoly pow(int k) const;

  Rational eval(const std::vector<Rational>& point) const;
  double eval(const std::vector<double>& point) const;
  MPoly derivative(int var) const;
  /// Substitutes constants for some variables; the variable list is kept.
  MPoly partial_eval(const std::map<std::string, Rational>& values) const;
  /// Same polynomial over another variable list containing every variable in use.
  MPoly with_vars(const std::vector<std::string>& vars) const;
  /// Variables that occur with positive degree.
  std::vector<int> support() const;
  /// Univariate view when at most one variable occurs.
  std::optional<UPoly> as_univariate(int* var = nullptr) const;

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  std::map<Exponent, Rational, GrlexLess> terms_;
};

/// Quotient of polynomials; univariate quotients are kept in lowest terms.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(MPoly num);
  RatFunc(MPoly num, MPoly den);
  static RatFunc constant(const std::vector<std::string>& vars, const Rational& c);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const std::vector<std::string>& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  /// Equality as rational functions (cross-multiplied).
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// Throws std::domain_error at a pole.
  Rational eval(const std::vector<Rational>& point) const;
  RatFunc derivative(int var) const;
  std::string to_string() const;

 private:
  void normalize();
  MPoly num_;
  MPoly den_;
};

/// Composes p with rational functions for each of p's variables (all over one variable list).
RatFunc substitute(const MPoly& p, const std::vector<RatFunc>& values);

/// Parses +, -, *, /, ^ (integer exponents), parentheses, integers, decimals and
/// the given variable names; "2t" means 2*t.
RatFunc parse_expression(std::string_view text, const std::vector<std::string>& vars);

}  // namespace cdeform
