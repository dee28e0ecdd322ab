#include "cdeform/upoly.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cdeform {

namespace {

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Rational floor_q(const Rational& x) {
  Integer n = numerator(x), d = denominator(x);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

// Simplest fraction (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(Rational lo, Rational hi) {
  const Rational fl = floor_q(lo);
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return fl + 1;
  return fl + Rational(1) / simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
}

std::vector<UPoly> sturm_chain(const UPoly& f) {
  std::vector<UPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_changes(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sign(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational cauchy_bound(const UPoly& f) {
  Rational m = 0;
  const Rational lc = f.lead();
  for (int k = 0; k < f.degree(); ++k) m = std::max(m, abs(f.coeff(k) / lc));
  return m + 1;
}

}  // namespace

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
  v.back() = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPoly::coeff(int k) const {
  return (k < 0 || k > degree()) ? Rational(0) : coeffs_[static_cast<std::size_t>(k)];
}

Rational UPoly::lead() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UPoly::eval(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

UPoly UPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> c = coeffs_;
  const Rational lc = lead();
  for (auto& x : c) x /= lc;
  return UPoly(std::move(c));
}

UPoly UPoly::primitive() const {
  if (is_zero()) return {};
  Integer l = 1;
  for (const auto& x : coeffs_) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& x : coeffs_) {
    ints.push_back(Integer(numerator(x)) * (l / Integer(denominator(x))));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  if (ints.back() < 0) g = -g;
  std::vector<Rational> c;
  for (const auto& x : ints) c.emplace_back(x / g);
  return UPoly(std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UPoly(std::move(c));
}

UPoly UPoly::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x = -x;
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational c = coeff(k);
    if (c == 0) continue;
    const Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const bool unit = (mag == 1) && k > 0;
    if (!unit) os << cdeform::to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("UPoly division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lb = b.lead();
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = rem[static_cast<std::size_t>(k)] / lb;
    quo[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(j);
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() < 1) return out;
  const UPoly fm = f.monic();
  UPoly a = gcd(fm, fm.derivative());
  UPoly b = divmod(fm, a).first;
  UPoly c = divmod(fm.derivative(), a).first;
  UPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    UPoly g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() < 1) return f.monic();
  return divmod(f.monic(), gcd(f, f.derivative())).first;
}

int count_real_roots(const UPoly& f, const Rational& lo, const Rational& hi) {
  const UPoly g = squarefree_part(f);
  if (g.degree() < 1) return 0;
  const auto chain = sturm_chain(g);
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

int count_real_roots(const UPoly& f) {
  const UPoly g = squarefree_part(f);
  if (g.degree() < 1) return 0;
  const Rational bound = cauchy_bound(g);
  return count_real_roots(g, -bound, bound);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& f) {
  std::vector<std::pair<Rational, Rational>> out;
  const UPoly g = squarefree_part(f);
  if (g.degree() < 1) return out;
  const auto chain = sturm_chain(g);
  const Rational bound = cauchy_bound(g);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = sign_changes(chain, lo) - sign_changes(chain, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    const Rational mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::pair<Rational, Rational> refine(const std::vector<UPoly>& chain, Rational lo, Rational hi,
                                     const Rational& width) {
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    if (sign_changes(chain, lo) - sign_changes(chain, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

}  // namespace

std::vector<double> real_roots(const UPoly& f, double width) {
  std::vector<double> out;
  const UPoly g = squarefree_part(f);
  if (g.degree() < 1) return out;
  const auto chain = sturm_chain(g);
  for (auto [lo, hi] : isolate_real_roots(g)) {
    auto [a, b] = refine(chain, lo, hi, Rational(width));
    out.push_back(to_double((a + b) / 2));
  }
  return out;
}

std::vector<Rational> rational_roots(const UPoly& f) {
  std::vector<Rational> out;
  const UPoly g = squarefree_part(f);
  if (g.degree() < 1) return out;
  const UPoly prim = g.primitive();
  const Rational lc = abs(prim.lead());
  const Rational width = Rational(1) / (lc * lc * 2);
  const auto chain = sturm_chain(g);
  for (auto [lo, hi] : isolate_real_roots(g)) {
    if (g.eval(hi) == 0) {
      out.push_back(hi);
      continue;
    }
    auto [a, b] = refine(chain, lo, hi, width);
    if (g.eval(b) == 0) {
      out.push_back(b);
      continue;
    }
    const Rational cand = simplest_between(a, b);
    if (cand > a && g.eval(cand) == 0) out.push_back(cand);
  }
  return out;
}

int root_multiplicity(const UPoly& f, const Rational& x) {
  if (f.is_zero()) throw std::domain_error("root_multiplicity of the zero polynomial");
  int m = 0;
  UPoly g = f;
  const UPoly lin({-x, Rational(1)});
  while (g.eval(x) == 0) {
    g = divmod(g, lin).first;
    ++m;
  }
  return m;
}

UPoly characteristic_polynomial(const QMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("characteristic_polynomial: matrix is not square");
  const Eigen::Index n = a.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  c[static_cast<std::size_t>(n)] = 1;
  QMatrix m = QMatrix::Zero(n, n);
  const QMatrix id = QMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = mul(a, m) + id * c[static_cast<std::size_t>(n - k + 1)];
    const QMatrix am = mul(a, m);
    c[static_cast<std::size_t>(n - k)] = -am.trace() / Rational(k);
  }
  return UPoly(std::move(c));
}

QMatrix eval_matrix(const UPoly& p, const QMatrix& m) {
  const Eigen::Index n = m.rows();
  QMatrix acc = QMatrix::Zero(n, n);
  const QMatrix id = QMatrix::Identity(n, n);
  for (int k = p.degree(); k >= 0; --k) acc = mul(acc, m) + id * p.coeff(k);
  return acc;
}

}  // namespace cdeform
