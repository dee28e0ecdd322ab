#include "cdeform/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace cdeform {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

MPoly::MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MPoly MPoly::constant(const std::vector<std::string>& vars, const Rational& c) {
  MPoly p(vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

MPoly MPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
  MPoly p(vars);
  Exponent e(vars.size(), 0);
  e[static_cast<std::size_t>(p.var_index(name))] = 1;
  p.add_term(e, 1);
  return p;
}

int MPoly::var_index(const std::string& name) const {
  const auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw VariableMismatch("unknown variable '" + name + "'");
  return static_cast<int>(it - vars_.begin());
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                                              [](int e) { return e == 0; }));
}

Rational MPoly::constant_term() const {
  const auto it = terms_.find(Exponent(vars_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

int MPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
  return d;
}

std::pair<Exponent, Rational> MPoly::leading_term() const {
  if (terms_.empty()) return {Exponent(vars_.size(), 0), Rational(0)};
  return *terms_.rbegin();
}

void MPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != vars_.size()) throw VariableMismatch("MPoly: exponent arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {
void require_same(const MPoly& a, const MPoly& b) {
  if (a.vars() != b.vars()) throw VariableMismatch("MPoly: operands use different variable lists");
}
}  // namespace

MPoly MPoly::operator-() const {
  MPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  require_same(a, b);
  MPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_same(a, b);
  MPoly out(a.vars_);
  Exponent e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MPoly operator*(const Rational& c, const MPoly& a) {
  MPoly out(a.vars_);
  if (c == 0) return out;
  for (const auto& [e, x] : a.terms_) out.terms_.emplace(e, c * x);
  return out;
}

bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

MPoly MPoly::pow(int k) const {
  if (k < 0) throw std::domain_error("MPoly::pow: negative exponent");
  MPoly out = constant(vars_, 1), base = *this;
  while (k) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size()) throw VariableMismatch("MPoly::eval: point arity mismatch");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    acc += m;
  }
  return acc;
}

double MPoly::eval(const std::vector<double>& point) const {
  if (point.size() != vars_.size()) throw VariableMismatch("MPoly::eval: point arity mismatch");
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    acc += m;
  }
  return acc;
}

MPoly MPoly::derivative(int var) const {
  MPoly out(vars_);
  const auto v = static_cast<std::size_t>(var);
  if (v >= vars_.size()) throw VariableMismatch("MPoly::derivative: variable index out of range");
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent d = e;
    d[v] -= 1;
    out.add_term(d, c * e[v]);
  }
  return out;
}

MPoly MPoly::partial_eval(const std::map<std::string, Rational>& values) const {
  std::vector<std::optional<Rational>> fixed(vars_.size());
  for (const auto& [name, value] : values) fixed[static_cast<std::size_t>(var_index(name))] = value;
  MPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    Rational m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (fixed[i]) {
        for (int k = 0; k < e[i]; ++k) m *= *fixed[i];
        rest[i] = 0;
      }
    out.add_term(rest, m);
  }
  return out;
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
  MPoly out(vars);
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    map[i] = it == vars.end() ? vars.size() : static_cast<std::size_t>(it - vars.begin());
  }
  for (const auto& [e, c] : terms_) {
    Exponent f(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == vars.size()) throw VariableMismatch("MPoly::with_vars: variable '" + vars_[i] + "' is in use");
      f[map[i]] = e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

std::vector<int> MPoly::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (degree_in(static_cast<int>(i)) > 0) out.push_back(static_cast<int>(i));
  return out;
}

std::optional<UPoly> MPoly::as_univariate(int* var) const {
  const auto sup = support();
  if (sup.size() > 1) return std::nullopt;
  const int v = sup.empty() ? -1 : sup.front();
  if (var) *var = v;
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(0, total_degree()) + 1), Rational(0));
  for (const auto& [e, c] : terms_) coeffs[static_cast<std::size_t>(v < 0 ? 0 : e[static_cast<std::size_t>(v)])] = c;
  return UPoly(std::move(coeffs));
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool monomial = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const Rational mag = abs(c);
    bool need_star = false;
    if (mag != 1 || !monomial) {
      os << cdeform::to_string(mag);
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.vars(), 1)) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same(num_, den_);
  normalize();
}

RatFunc RatFunc::constant(const std::vector<std::string>& vars, const Rational& c) {
  return RatFunc(MPoly::constant(vars, c));
}

namespace {

MPoly from_univariate(const UPoly& u, const std::vector<std::string>& vars, int var) {
  MPoly out(vars);
  for (int k = 0; k <= u.degree(); ++k) {
    Exponent e(vars.size(), 0);
    if (var >= 0) e[static_cast<std::size_t>(var)] = k;
    else if (k > 0) throw std::logic_error("from_univariate: constant expected");
    out.add_term(e, u.coeff(k));
  }
  return out;
}

}  // namespace

void RatFunc::normalize() {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num_.is_zero()) {
    den_ = MPoly::constant(num_.vars(), 1);
    return;
  }
  int vn = -1, vd = -1;
  const auto un = num_.as_univariate(&vn), ud = den_.as_univariate(&vd);
  if (un && ud && (vn < 0 || vd < 0 || vn == vd)) {
    const int v = std::max(vn, vd);
    const UPoly g = gcd(*un, *ud);
    if (g.degree() > 0) {
      num_ = from_univariate(divmod(*un, g).first, num_.vars(), v);
      den_ = from_univariate(divmod(*ud, g).first, den_.vars(), v);
    }
  }
  const Rational lc = den_.leading_term().second;
  if (lc != 1) {
    num_ = (1 / lc) * num_;
    den_ = (1 / lc) * den_;
  }
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(MPoly(a.vars()));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

Rational RatFunc::eval(const std::vector<Rational>& point) const {
  const Rational d = den_.eval(point);
  if (d == 0) throw std::domain_error("RatFunc::eval: pole");
  return num_.eval(point) / d;
}

RatFunc RatFunc::derivative(int var) const {
  return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::string RatFunc::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  auto wrap = [](const MPoly& p) {
    const std::string s = p.to_string();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

RatFunc substitute(const MPoly& p, const std::vector<RatFunc>& values) {
  if (values.size() != p.nvars()) throw VariableMismatch("substitute: need one value per variable");
  if (values.empty()) throw VariableMismatch("substitute: no values");
  const auto& vars = values.front().vars();
  std::vector<std::vector<RatFunc>> powers(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) powers[i].push_back(RatFunc::constant(vars, 1));
  RatFunc acc = RatFunc::constant(vars, 0);
  for (const auto& [e, c] : p.terms()) {
    RatFunc m = RatFunc::constant(vars, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * values[i]);
      if (e[i] > 0) m = m * pw[static_cast<std::size_t>(e[i])];
    }
    acc = acc + m;
  }
  return acc;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ExpressionParseError("parse_expression: " + why + " at offset " + std::to_string(pos_) + " in '" +
                               std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }
  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (eat('*')) acc = acc * unary();
      else if (eat('/')) {
        const RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        // Implicit product: a factor directly followed by an identifier or '('.
        skip();
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(' || s_[pos_] == '_'))
          acc = acc * power();
        else
          return acc;
      }
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc base = primary();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      const int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
      RatFunc out = RatFunc::constant(vars_, 1);
      for (int i = 0; i < k; ++i) out = out * base;
      if (neg) {
        if (out.is_zero()) fail("zero to a negative power");
        out = RatFunc::constant(vars_, 1) / out;
      }
      return out;
    }
    return base;
  }
  RatFunc primary() {
    skip();
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      try {
        return RatFunc::constant(vars_, parse_rational(s_.substr(start, pos_ - start)));
      } catch (const std::invalid_argument&) {
        fail("malformed number");
      }
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) fail("unknown variable '" + name + "'");
      return RatFunc(MPoly::variable(vars_, name));
    }
    fail("expected a number, variable or '('");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_expression(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

}  // namespace cdeform
