#include "cdeform/groebner.hpp"

#include <algorithm>
#include <numeric>

namespace cdeform {

namespace {

// Terms sorted by decreasing monomial in a fixed order.
struct Term {
  Exponent e;
  Rational c;
};
using Poly = std::vector<Term>;

int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

// a > b in the order.
bool greater(const Exponent& a, const Exponent& b, MonomialOrder order) {
  if (order == MonomialOrder::lex) return a > b;
  const int da = degree(a), db = degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

Poly to_poly(const MPoly& f, MonomialOrder order) {
  Poly p;
  for (const auto& [e, c] : f.terms()) p.push_back({e, c});
  std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return greater(a.e, b.e, order); });
  return p;
}

MPoly to_mpoly(const Poly& p, const std::vector<std::string>& vars) {
  MPoly f(vars);
  for (const auto& t : p) f.add_term(t.e, t.c);
  return f;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exponent minus(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// a - c * x^m * b, merged in order.
Poly sub_scaled(const Poly& a, const Rational& c, const Exponent& m, const Poly& b, MonomialOrder order) {
  Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Exponent shifted(m.size());
  auto shift = [&](const Exponent& e) {
    for (std::size_t k = 0; k < e.size(); ++k) shifted[k] = e[k] + m[k];
    return shifted;
  };
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const Exponent& eb = shift(b[j].e);
    if (i == a.size() || greater(eb, a[i].e, order)) {
      out.push_back({eb, -c * b[j].c});
      ++j;
    } else if (eb == a[i].e) {
      Rational v = a[i].c - c * b[j].c;
      if (v != 0) out.push_back({a[i].e, std::move(v)});
      ++i;
      ++j;
    } else {
      out.push_back(a[i++]);
    }
  }
  return out;
}

void make_monic(Poly& p) {
  if (p.empty() || p.front().c == 1) return;
  const Rational inv = 1 / p.front().c;
  for (auto& t : p) t.c *= inv;
}

const Poly* find_reducer(const Exponent& e, const std::vector<Poly>& g, const std::vector<bool>* live) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (live && !(*live)[i]) continue;
    if (!g[i].empty() && divides(g[i].front().e, e)) return &g[i];
  }
  return nullptr;
}

// Reduction of f by the monic basis g; with `full` false only leading terms are reduced.
Poly reduce(Poly f, const std::vector<Poly>& g, MonomialOrder order, const std::vector<bool>* live = nullptr,
            bool full = true) {
  Poly rem;
  std::size_t pos = 0;
  while (pos < f.size()) {
    if (const Poly* h = find_reducer(f[pos].e, g, live)) {
      const Rational c = f[pos].c;
      const Exponent m = minus(f[pos].e, h->front().e);
      f = sub_scaled(Poly(f.begin() + static_cast<std::ptrdiff_t>(pos), f.end()), c, m, *h, order);
      pos = 0;
    } else if (!full) {
      rem.insert(rem.end(), f.begin() + static_cast<std::ptrdiff_t>(pos), f.end());
      return rem;
    } else {
      rem.push_back(std::move(f[pos++]));
    }
  }
  return rem;
}

struct Pair {
  std::size_t i, j;
  Exponent lcm;
  int sugar;
};

}  // namespace

Exponent leading_monomial(const MPoly& f, MonomialOrder order) {
  const Poly p = to_poly(f, order);
  if (p.empty()) return Exponent(f.nvars(), 0);
  return p.front().e;
}

std::optional<std::vector<MPoly>> groebner_basis(const std::vector<MPoly>& polys, const GroebnerOptions& options) {
  if (polys.empty()) return std::vector<MPoly>{};
  const auto& vars = polys.front().vars();
  const MonomialOrder order = options.order;
  std::vector<Poly> g;
  std::vector<bool> live;
  std::vector<int> sugar;
  std::vector<Pair> pairs;

  auto add = [&](Poly h, int h_sugar) {
    make_monic(h);
    const std::size_t k = g.size();
    const Exponent& lk = h.front().e;
    // Gebauer-Moeller style pruning of old pairs whose lcm is a multiple of lm(h) strictly.
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [&](const Pair& p) {
                                 return divides(lk, p.lcm) && lcm(g[p.i].front().e, lk) != p.lcm &&
                                        lcm(g[p.j].front().e, lk) != p.lcm;
                               }),
                pairs.end());
    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < k; ++i) {
      if (!live[i]) continue;
      const Exponent l = lcm(g[i].front().e, lk);
      const int d = degree(l);
      fresh.push_back({i, k, l, std::max(sugar[i] + d - degree(g[i].front().e), h_sugar + d - degree(lk))});
    }
    // Chain criterion among the new pairs: drop (i,k) if some (j,k) has a proper divisor lcm.
    std::vector<Pair> kept;
    for (const auto& p : fresh) {
      const bool redundant = std::any_of(fresh.begin(), fresh.end(), [&](const Pair& q) {
        return q.i != p.i && divides(q.lcm, p.lcm) && q.lcm != p.lcm;
      });
      const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Pair& q) { return q.lcm == p.lcm; });
      if (!redundant && !duplicate) kept.push_back(p);
    }
    for (auto& p : kept) {
      // Coprime leading monomials reduce to zero.
      const Exponent& li = g[p.i].front().e;
      bool coprime = true;
      for (std::size_t v = 0; v < li.size(); ++v)
        if (li[v] > 0 && lk[v] > 0) coprime = false;
      if (!coprime) pairs.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < k; ++i)
      if (live[i] && divides(lk, g[i].front().e)) live[i] = false;
    g.push_back(std::move(h));
    live.push_back(true);
    sugar.push_back(h_sugar);
  };

  for (const auto& f : polys) {
    if (f.vars() != vars) throw VariableMismatch("groebner_basis: polynomials use different variables");
    Poly h = reduce(to_poly(f, order), g, order, &live, false);
    if (!h.empty()) {
      const int d = std::accumulate(h.begin(), h.end(), 0, [](int acc, const Term& t) { return std::max(acc, degree(t.e)); });
      add(std::move(h), d);
    }
  }

  long processed = 0;
  while (!pairs.empty()) {
    if (++processed > options.max_pairs) return std::nullopt;
    // Sugar strategy, ties broken by the smaller lcm.
    const auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return greater(b.lcm, a.lcm, order);
    });
    const Pair p = *it;
    pairs.erase(it);
    const Poly& a = g[p.i];
    const Poly& b = g[p.j];
    Poly s = sub_scaled(Poly{}, -1, minus(p.lcm, a.front().e), a, order);
    s = sub_scaled(s, 1, minus(p.lcm, b.front().e), b, order);
    Poly h = reduce(std::move(s), g, order, &live, false);
    if (!h.empty()) add(std::move(h), p.sugar);
  }

  // Interreduce the minimal basis.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (live[i]) minimal.push_back(g[i]);
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly head{minimal[i].front()};
    Poly tail(minimal[i].begin() + 1, minimal[i].end());
    Poly r = reduce(std::move(tail), others, order);
    head.insert(head.end(), r.begin(), r.end());
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Poly& a, const Poly& b) { return greater(b.front().e, a.front().e, order); });
  std::vector<MPoly> out;
  for (const auto& p : reduced) out.push_back(to_mpoly(p, vars));
  return out;
}

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& basis, MonomialOrder order) {
  std::vector<Poly> g;
  for (const auto& b : basis) {
    Poly p = to_poly(b, order);
    make_monic(p);
    g.push_back(std::move(p));
  }
  return to_mpoly(reduce(to_poly(f, order), g, order), f.vars());
}

bool is_zero_dimensional(const std::vector<MPoly>& basis, MonomialOrder order) {
  if (basis.empty()) return false;
  const std::size_t n = basis.front().nvars();
  std::vector<bool> pure(n, false);
  for (const auto& b : basis) {
    const Exponent lm = leading_monomial(b, order);
    if (degree(lm) == 0) return true;  // the unit ideal
    int support = 0;
    std::size_t var = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (lm[v] > 0) {
        ++support;
        var = v;
      }
    if (support == 1) pure[var] = true;
  }
  return std::all_of(pure.begin(), pure.end(), [](bool b) { return b; });
}

long quotient_dimension(const std::vector<MPoly>& basis, MonomialOrder order) {
  if (!is_zero_dimensional(basis, order)) throw std::invalid_argument("quotient_dimension: ideal is not zero-dimensional");
  const std::size_t n = basis.front().nvars();
  std::vector<Exponent> leads;
  for (const auto& b : basis) leads.push_back(leading_monomial(b, order));
  if (std::any_of(leads.begin(), leads.end(), [](const Exponent& e) { return degree(e) == 0; })) return 0;
  std::vector<int> bound(n, 0);
  for (const auto& e : leads) {
    int support = 0;
    for (std::size_t v = 0; v < n; ++v) support += e[v] > 0;
    if (support == 1)
      for (std::size_t v = 0; v < n; ++v)
        if (e[v] > 0) bound[v] = bound[v] ? std::min(bound[v], e[v]) : e[v];
  }
  // Enumerate the box below the pure powers and count monomials outside the leading ideal.
  long count = 0;
  Exponent e(n, 0);
  for (;;) {
    if (std::none_of(leads.begin(), leads.end(), [&](const Exponent& l) { return divides(l, e); })) ++count;
    std::size_t v = 0;
    while (v < n && ++e[v] == bound[v]) e[v++] = 0;
    if (v == n) break;
  }
  return count;
}

std::vector<MPoly> with_nonvanishing(const std::vector<MPoly>& polys, const std::vector<MPoly>& factors,
                                     const std::string& name) {
  if (polys.empty()) throw std::invalid_argument("with_nonvanishing: empty system");
  std::vector<std::string> vars = polys.front().vars();
  if (std::find(vars.begin(), vars.end(), name) != vars.end())
    throw VariableMismatch("with_nonvanishing: variable '" + name + "' already present");
  vars.push_back(name);
  std::vector<MPoly> out;
  for (const auto& p : polys) out.push_back(p.with_vars(vars));
  MPoly prod = MPoly::variable(vars, name);
  for (const auto& f : factors) prod = prod * f.with_vars(vars);
  out.push_back(prod - MPoly::constant(vars, 1));
  return out;
}

}  // namespace cdeform
