#include "cdeform/polysys.hpp"

#include "cdeform/upoly.hpp"

#include <algorithm>
#include <set>

namespace cdeform {

namespace {

MPoly poly_entry(const std::string& text, const std::vector<std::string>& vars) {
  const RatFunc r = parse_expression(text, vars);
  if (!r.is_polynomial()) throw std::invalid_argument("template entry '" + text + "' is not a polynomial");
  return (1 / r.den().constant_term()) * r.num();
}

PolyMatrix poly_matrix(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& vars) {
  PolyMatrix m(static_cast<int>(rows.size()), MPoly(vars));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = poly_entry(rows[i][j], vars);
  return m;
}

PolyMatrix identity_like(const PolyMatrix& m) {
  const auto& vars = m(0, 0).vars();
  return PolyMatrix::identity(m.size(), MPoly(vars), MPoly::constant(vars, 1));
}

bool strictly_triangular(const PolyMatrix& n, bool upper) {
  for (int i = 0; i < n.size(); ++i)
    for (int j = 0; j < n.size(); ++j) {
      const bool allowed = upper ? j > i : j < i;
      if (!allowed && !n(i, j).is_zero()) return false;
    }
  return true;
}

// (I + N)^-1 = I - N + N^2 - ... for nilpotent N.
PolyMatrix unipotent_inverse(const PolyMatrix& m) {
  const PolyMatrix id = identity_like(m);
  const PolyMatrix n = m - id;
  if (!strictly_triangular(n, true) && !strictly_triangular(n, false))
    throw NonUnipotentTemplate("assemble_residual: generator image is not unipotent triangular");
  PolyMatrix acc = id, power = id;
  for (int k = 1; k < m.size(); ++k) {
    power = power * n;
    acc = (k % 2 == 1) ? acc - power : acc + power;
  }
  return acc;
}

struct PolyRep {
  std::vector<PolyMatrix> images, inverses;

  PolyRep(const Presentation& pres, const PolyTemplate& tmpl) {
    for (const auto& g : pres.generators) {
      images.push_back(tmpl.image(g));
      inverses.push_back(unipotent_inverse(images.back()));
    }
  }
  PolyMatrix eval(const Word& w) const {
    if (images.empty()) throw std::invalid_argument("PolyRep: no generators");
    PolyMatrix acc = identity_like(images.front());
    for (const auto& l : w.letters()) {
      const auto g = static_cast<std::size_t>(l.generator);
      if (g >= images.size()) throw UnboundGenerator("generator index " + std::to_string(g) + " has no image");
      acc = acc * (l.exponent > 0 ? images[g] : inverses[g]);
    }
    return acc;
  }
};

// Splits g W h^-1 W^-1 into (g, W, h).
std::optional<std::tuple<int, Word, int>> conjugacy_relator(const Word& r) {
  const auto& l = r.letters();
  if (l.size() < 2 || l.size() % 2 != 0) return std::nullopt;
  const std::size_t k = (l.size() - 2) / 2;
  if (l[0].exponent != 1 || l[k + 1].exponent != -1) return std::nullopt;
  const Word w(std::vector<Letter>(l.begin() + 1, l.begin() + 1 + static_cast<std::ptrdiff_t>(k)));
  const Word tail(std::vector<Letter>(l.begin() + 2 + static_cast<std::ptrdiff_t>(k), l.end()));
  if (!(tail == w.inverse())) return std::nullopt;
  return std::make_tuple(l[0].generator, w, l[k + 1].generator);
}

}  // namespace

const PolyMatrix& PolyTemplate::image(const std::string& generator) const {
  const auto it = std::find(generators.begin(), generators.end(), generator);
  if (it == generators.end()) throw UnboundGenerator("template has no image for generator '" + generator + "'");
  return images[static_cast<std::size_t>(it - generators.begin())];
}

std::vector<QMatrix> PolyTemplate::instantiate(const std::vector<Rational>& values) const {
  std::vector<QMatrix> out;
  for (const auto& m : images) {
    QMatrix q(m.size(), m.size());
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) q(i, j) = m(i, j).eval(values);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<MPoly>> PolyTemplate::parabolic_conditions() const {
  std::vector<std::vector<MPoly>> out;
  for (const auto& m : images) {
    const PolyMatrix n = m - identity_like(m);
    const PolyMatrix n2 = n * n;
    std::vector<MPoly> group;
    for (int i = 0; i < n2.size(); ++i)
      for (int j = 0; j < n2.size(); ++j)
        if (!n2(i, j).is_zero()) group.push_back(n2(i, j));
    out.push_back(std::move(group));
  }
  return out;
}

PolyTemplate normform1_template() {
  const std::vector<std::string> v{"a14", "b21", "b31", "b32", "b41"};
  return {v,
          {"A", "B"},
          {poly_matrix({{"1", "0", "2", "1+a14"}, {"0", "1", "2", "1"}, {"0", "0", "1", "1"}, {"0", "0", "0", "1"}}, v),
           poly_matrix({{"1", "0", "0", "0"},
                        {"b21", "1", "0", "0"},
                        {"b31+b21*b32", "2*b32", "1", "0"},
                        {"b21+b41", "2", "0", "1"}},
                       v)}};
}

PolyTemplate normform2_template() {
  const std::vector<std::string> v{"a14", "a24", "a34", "b21", "b31"};
  return {v,
          {"A", "B"},
          {poly_matrix({{"1", "0", "1", "a14"}, {"0", "1", "1", "a24"}, {"0", "0", "1", "a34"}, {"0", "0", "0", "1"}}, v),
           poly_matrix({{"1", "0", "0", "0"}, {"b21", "1", "0", "0"}, {"b31", "1", "1", "0"}, {"1", "1", "0", "1"}}, v)}};
}

std::vector<MPoly> assemble_residual(const Presentation& pres, const PolyTemplate& tmpl) {
  const PolyRep rep(pres, tmpl);
  std::vector<MPoly> out;
  for (const auto& r : pres.relators) {
    PolyMatrix diff;
    if (const auto split = conjugacy_relator(r)) {
      const auto& [g, w, h] = *split;
      const PolyMatrix wm = rep.eval(w);
      diff = rep.images[static_cast<std::size_t>(g)] * wm - wm * rep.images[static_cast<std::size_t>(h)];
    } else {
      const PolyMatrix rm = rep.eval(r);
      diff = rm - identity_like(rm);
    }
    for (int i = 0; i < diff.size(); ++i)
      for (int j = 0; j < diff.size(); ++j)
        if (!diff(i, j).is_zero()) out.push_back(diff(i, j));
  }
  return out;
}

ParamFamily ParamFamily::parse(const std::vector<std::string>& parameters,
                               const std::vector<std::pair<std::string, std::string>>& entries) {
  ParamFamily f;
  f.parameters = parameters;
  std::set<Rational> excluded;
  for (const auto& [name, text] : entries) {
    RatFunc r = parse_expression(text, parameters);
    if (parameters.size() == 1)
      if (const auto u = r.den().as_univariate())
        for (const auto& x : rational_roots(*u)) excluded.insert(x);
    f.assignment.emplace(name, std::move(r));
  }
  f.excluded.assign(excluded.begin(), excluded.end());
  return f;
}

std::vector<Rational> ParamFamily::at(const std::vector<Rational>& params, const std::vector<std::string>& unknowns) const {
  std::vector<Rational> out;
  for (const auto& u : unknowns) {
    const auto it = assignment.find(u);
    if (it == assignment.end()) throw std::invalid_argument("ParamFamily: no entry for '" + u + "'");
    try {
      out.push_back(it->second.eval(params));
    } catch (const std::domain_error&) {
      throw ExcludedParameter("ParamFamily: parameter value is a pole of '" + u + "'");
    }
  }
  return out;
}

namespace {

std::vector<RatFunc> family_values(const ParamFamily& family, const std::vector<std::string>& unknowns) {
  if (family.assignment.empty()) throw ExcludedParameterOnly("family has no entries");
  std::vector<RatFunc> out;
  for (const auto& u : unknowns) {
    const auto it = family.assignment.find(u);
    if (it == family.assignment.end()) throw std::invalid_argument("family does not assign '" + u + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

MPoly trace_polynomial(const Word& w, const PolyTemplate& tmpl) {
  Presentation pres;
  pres.generators = tmpl.generators;
  return PolyRep(pres, tmpl).eval(w).trace();
}

std::vector<RatMatrix> family_images(const ParamFamily& family, const PolyTemplate& tmpl) {
  const auto values = family_values(family, tmpl.unknowns);
  std::vector<RatMatrix> out;
  for (const auto& img : tmpl.images) {
    RatMatrix m(img.size(), RatFunc::constant(family.parameters, 0));
    for (int i = 0; i < img.size(); ++i)
      for (int j = 0; j < img.size(); ++j) m(i, j) = substitute(img(i, j), values);
    out.push_back(std::move(m));
  }
  return out;
}

RatMatrix derivative(const RatMatrix& m, int var) {
  RatMatrix out = m;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(i, j) = m(i, j).derivative(var);
  return out;
}

QMatrix evaluate(const RatMatrix& m, const std::vector<Rational>& params) {
  QMatrix out(m.size(), m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      if (m(i, j).den().eval(params) == 0) throw ExcludedParameter("evaluate: parameter value is a pole");
      out(i, j) = m(i, j).eval(params);
    }
  return out;
}

std::vector<std::vector<QMatrix>> taylor_coefficients(const ParamFamily& family, const PolyTemplate& tmpl,
                                                      const Rational& t0, int order) {
  if (family.parameters.size() != 1) throw std::invalid_argument("taylor_coefficients: one-parameter family expected");
  auto current = family_images(family, tmpl);
  std::vector<std::vector<QMatrix>> out;
  Rational factorial = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      factorial *= k;
      for (auto& m : current) m = derivative(m, 0);
    }
    std::vector<QMatrix> level;
    for (const auto& m : current) level.push_back(QMatrix(evaluate(m, {t0}) / factorial));
    out.push_back(std::move(level));
  }
  return out;
}

RatFunc trace_of_word(const Word& w, const ParamFamily& family, const PolyTemplate& tmpl) {
  return substitute(trace_polynomial(w, tmpl), family_values(family, tmpl.unknowns));
}

bool verify_family(const ParamFamily& family, const std::vector<MPoly>& residuals) {
  for (const auto& r : residuals)
    if (!substitute(r, family_values(family, r.vars())).is_zero()) return false;
  return true;
}

QMatrix jacobian(const std::vector<MPoly>& polys, const std::vector<Rational>& point) {
  const auto n = static_cast<Eigen::Index>(point.size());
  QMatrix j(static_cast<Eigen::Index>(polys.size()), n);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].nvars() != point.size()) throw VariableMismatch("jacobian: point arity mismatch");
    for (Eigen::Index v = 0; v < n; ++v)
      j(static_cast<Eigen::Index>(i), v) = polys[i].derivative(static_cast<int>(v)).eval(point);
  }
  return j;
}

int solution_set_dimension(const std::vector<MPoly>& polys, const std::vector<Rational>& point) {
  for (const auto& p : polys)
    if (p.eval(point) != 0) throw NotASolution("solution_set_dimension: point does not solve the system");
  if (polys.empty()) return static_cast<int>(point.size());
  return static_cast<int>(point.size()) - rank(jacobian(polys, point));
}

}  // namespace cdeform
