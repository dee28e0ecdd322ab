#include "cdeform/matrix.hpp"
#include "cdeform/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace cdeform {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("parse_rational: empty input");
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(t.begin());
    return Integer(t);
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw std::invalid_argument("parse_rational: malformed '" + s + "'");
    const Integer d = to_int(den);
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(to_int(num)) / Rational(d);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole) || (!frac.empty() && !is_int(frac)) || (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      throw std::invalid_argument("parse_rational: malformed '" + s + "'");
    Rational scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational f = frac.empty() ? Rational(0) : Rational(to_int(frac)) / scale;
    Rational w = Rational(to_int(whole));
    return neg ? w - f : w + f;
  }
  if (!is_int(s)) throw std::invalid_argument("parse_rational: malformed '" + s + "'");
  return Rational(to_int(s));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Matrix<double> to_double(const QMatrix& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

Eigen::Index rank(const QMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Integer>> a(static_cast<std::size_t>(rows), std::vector<Integer>(static_cast<std::size_t>(cols)));
  for (Eigen::Index i = 0; i < rows; ++i) {
    Integer l = 1;
    for (Eigen::Index j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, Integer(denominator(m(i, j))));
    for (Eigen::Index j = 0; j < cols; ++j)
      a[i][j] = Integer(numerator(m(i, j))) * (l / Integer(denominator(m(i, j))));
  }
  // Fraction-free elimination: every division below is exact.
  Integer prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace cdeform
