#include "cdeform/pipeline.hpp"

#include "cdeform/groebner.hpp"
#include "cdeform/upoly.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace cdeform {

namespace {

const std::vector<std::string> kTwoBridgeGenerators{"A", "B"};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

void check_schema(const Json& j) {
  if (j.contains("schema") && j.at("schema") != 1) throw ConfigError("unsupported schema version (expected 1)");
}

Word checked_word(const std::string& text, const std::vector<std::string>& names, const std::string& what) {
  try {
    return parse_word(text, names);
  } catch (const std::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::string join_word(const Word& w, const std::vector<std::string>& names) { return w.empty() ? "1" : w.to_string(names); }

bool satisfies_open_conditions(const std::vector<std::vector<MPoly>>& groups, const std::vector<Rational>& point) {
  for (const auto& group : groups) {
    const bool ok = std::any_of(group.begin(), group.end(), [&](const MPoly& f) { return f.eval(point) != 0; });
    if (!group.empty() && !ok) return false;
  }
  return true;
}

// One polynomial per group when each group is a single polynomial up to scale.
std::optional<std::vector<MPoly>> single_factors(const std::vector<std::vector<MPoly>>& groups) {
  std::vector<MPoly> out;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    auto monic = [](const MPoly& f) { return Rational(1) / f.leading_term().second * f; };
    const MPoly first = monic(group.front());
    for (const auto& f : group)
      if (!(monic(f) == first)) return std::nullopt;
    out.push_back(first);
  }
  return out;
}

int numeric_kernel_dim(const std::vector<MPoly>& polys, const std::vector<double>& values) {
  std::vector<Rational> point;
  for (double v : values) point.emplace_back(v);
  const Eigen::MatrixXd jac = to_double(jacobian(polys, point));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-8 * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return static_cast<int>(values.size()) - rank;
}

std::vector<Rational> parse_point(const std::vector<std::string>& texts, std::size_t arity) {
  if (texts.size() != arity) throw ConfigError("configured point has the wrong number of coordinates");
  std::vector<Rational> out;
  for (const auto& t : texts) {
    try {
      out.push_back(parse_rational(t));
    } catch (const std::exception& e) {
      throw ConfigError("bad rational '" + t + "': " + e.what());
    }
  }
  return out;
}

Json nullable_dim(int d) { return d < 0 ? Json(nullptr) : Json(d); }

void format_double(std::ostringstream& os, double x) {
  if (!std::isfinite(x)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  os << s;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump_rec(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' '), inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      format_double(os, j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Scalar arrays (vectors, matrix rows) stay on one line.
      if (std::all_of(j.begin(), j.end(), is_scalar)) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump_rec(os, j[i], indent);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << inner;
        dump_rec(os, j[i], indent + 2);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        os << inner << Json(key).dump() << ": ";
        dump_rec(os, value, indent + 2);
        os << (++i < j.size() ? ",\n" : "\n");
      }
      os << pad << '}';
      return;
    }
    default:
      os << j.dump();
  }
}

bool values_equal(const Json& a, const Json& b) {
  if (a.is_number() && b.is_number()) {
    if (a.is_number_float() || b.is_number_float()) {
      const double x = a.get<double>(), y = b.get<double>();
      return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
    }
    return a == b;
  }
  if (a.is_array() && b.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!values_equal(a[i], b[i])) return false;
    return true;
  }
  if (a.is_object() && b.is_object()) {
    if (a.size() != b.size()) return false;
    for (const auto& [key, value] : a.items())
      if (!b.contains(key) || !values_equal(value, b.at(key))) return false;
    return true;
  }
  return a == b;
}

void golden_rec(const Json& golden, const Json& actual, const std::string& path, std::vector<std::string>& out) {
  if (golden.is_object() && actual.is_object()) {
    for (const auto& [key, value] : golden.items()) {
      const std::string sub = path + "/" + key;
      if (!actual.contains(key))
        out.push_back(sub + ": missing");
      else
        golden_rec(value, actual.at(key), sub, out);
    }
    return;
  }
  if (!values_equal(golden, actual)) out.push_back((path.empty() ? "/" : path) + ": expected " + golden.dump() + ", got " + actual.dump());
}

}  // namespace

PolyTemplate template_by_name(const std::string& name) {
  if (name == "normform1") return normform1_template();
  if (name == "normform2") return normform2_template();
  throw ConfigError("unknown template '" + name + "' (expected normform1 or normform2)");
}

KnotConfig KnotConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"schema", "name", "p", "q", "template", "longitude", "curves", "family", "points", "solver", "notes"},
                      "knot config");
  check_schema(j);
  KnotConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    c.p = j.at("p").get<int>();
    c.q = j.at("q").get<int>();
    c.template_name = j.value("template", c.template_name);
    c.longitude = j.value("longitude", std::string());
    c.notes = j.value("notes", std::string());
    if (j.contains("curves"))
      for (const auto& e : j.at("curves")) {
        reject_unknown_keys(e, {"name", "word", "cusp"}, "curve");
        c.curves.push_back({e.at("name").get<std::string>(), e.at("word").get<std::string>(), e.value("cusp", 1)});
      }
    if (j.contains("family")) {
      const auto& f = j.at("family");
      reject_unknown_keys(f, {"parameters", "entries", "geometric"}, "family");
      FamilyConfig fam;
      fam.parameters = f.at("parameters").get<std::vector<std::string>>();
      for (const auto& [key, value] : f.at("entries").items()) fam.entries.emplace_back(key, value.get<std::string>());
      fam.geometric = f.value("geometric", std::vector<std::string>());
      c.family = fam;
    }
    if (j.contains("points")) c.points = j.at("points").get<std::vector<std::vector<std::string>>>();
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      reject_unknown_keys(s, {"box", "starts", "seed", "residual_tol", "max_denominator", "trace_condition", "groebner"}, "solver");
      c.solver.box = s.value("box", c.solver.box);
      c.solver.starts = s.value("starts", c.solver.starts);
      c.solver.seed = s.value("seed", c.solver.seed);
      c.solver.residual_tol = s.value("residual_tol", c.solver.residual_tol);
      c.solver.max_denominator = s.value("max_denominator", c.solver.max_denominator);
      c.solver.trace_condition = s.value("trace_condition", c.solver.trace_condition);
      c.solver.groebner = s.value("groebner", c.solver.groebner);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("knot config: ") + e.what());
  }

  try {
    two_bridge_presentation(c.p, c.q);
  } catch (const std::exception& e) {
    throw ConfigError("invalid two-bridge fraction " + std::to_string(c.p) + "/" + std::to_string(c.q) + ": " + e.what());
  }
  const PolyTemplate tmpl = template_by_name(c.template_name);
  if (!c.longitude.empty()) checked_word(c.longitude, kTwoBridgeGenerators, "longitude");
  for (const auto& curve : c.curves) checked_word(curve.word, kTwoBridgeGenerators, "curve '" + curve.name + "'");
  if (c.solver.trace_condition && c.longitude.empty()) throw ConfigError("trace_condition needs a longitude");
  if (c.solver.starts < 1) throw ConfigError("solver.starts must be positive");
  if (!(c.solver.box > 0)) throw ConfigError("solver.box must be positive");
  for (const auto& pt : c.points) parse_point(pt, tmpl.unknowns.size());
  if (c.family) {
    try {
      const auto fam = ParamFamily::parse(c.family->parameters, c.family->entries);
      for (const auto& [name, expr] : c.family->entries)
        if (std::find(tmpl.unknowns.begin(), tmpl.unknowns.end(), name) == tmpl.unknowns.end())
          throw ConfigError("family entry '" + name + "' is not a template unknown");
      if (!c.family->geometric.empty()) parse_point(c.family->geometric, c.family->parameters.size());
      (void)fam;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("family: ") + e.what());
    }
  }
  return c;
}

KnotConfig KnotConfig::load(const std::string& path) { return from_json(read_json_file(path)); }

RunReport run_pipeline(const KnotConfig& config, const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Presentation pres = two_bridge_presentation(config.p, config.q);
  const PolyTemplate tmpl = template_by_name(config.template_name);
  const std::vector<MPoly> residual = assemble_residual(pres, tmpl);
  std::vector<MPoly> system = residual;
  std::optional<Word> longitude;
  if (!config.longitude.empty()) longitude = parse_word(config.longitude, pres.generators);
  if (config.solver.trace_condition) system.push_back(trace_polynomial(*longitude, tmpl) - MPoly::constant(tmpl.unknowns, 4));
  const auto open = tmpl.parabolic_conditions();

  RunReport report;
  report.knot = config.name;
  report.p = config.p;
  report.q = config.q;
  report.generators = pres.generators;
  for (const auto& r : pres.relators) report.relators.push_back(join_word(r, pres.generators));
  report.unknowns = tmpl.unknowns;

  std::optional<ParamFamily> family;
  if (config.family) family = ParamFamily::parse(config.family->parameters, config.family->entries);

  if (options.backend == Backend::exact) {
    std::vector<std::vector<Rational>> points;
    for (const auto& pt : config.points) points.push_back(parse_point(pt, tmpl.unknowns.size()));
    if (family && !config.family->geometric.empty())
      points.push_back(family->at(parse_point(config.family->geometric, config.family->parameters.size()), tmpl.unknowns));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& pt : points) {
      for (const auto& f : system)
        if (f.eval(pt) != 0) throw NotASolution("configured point is not an exact solution of the system");
      if (!satisfies_open_conditions(open, pt)) throw NotASolution("configured point violates the parabolic conditions");
      SolutionRecord s;
      for (const auto& v : pt) s.values.push_back(to_double(v));
      s.exact = pt;
      report.solutions.push_back(std::move(s));
    }
  } else {
    SolveOptions so;
    so.residual_tol = config.solver.residual_tol;
    so.max_denominator = config.solver.max_denominator;
    so.nonvanishing = open;
    const SolveReport sr = solve_numeric(system, Box::cube(tmpl.unknowns.size(), config.solver.box), config.solver.starts,
                                         config.solver.seed, so);
    report.solver = SolverStats{config.solver.starts, config.solver.seed, sr.converged_starts, sr.failed_starts, sr.degenerate_starts};
    for (const auto& sol : sr.solutions) report.solutions.push_back({sol.values, sol.exact, sol.residual, -1});
  }
  for (auto& s : report.solutions)
    s.jacobian_kernel_dim = s.exact ? solution_set_dimension(residual, *s.exact) : numeric_kernel_dim(residual, s.values);

  if (family) {
    FamilyRecord fr;
    fr.parameters = config.family->parameters;
    fr.entries = config.family->entries;
    fr.verified = verify_family(*family, residual);
    fr.excluded = family->excluded;
    if (longitude) {
      const RatFunc tr = trace_of_word(*longitude, *family, tmpl);
      fr.trace_longitude = tr.to_string();
      const RatFunc cond = tr - RatFunc::constant(tr.vars(), 4);
      fr.trace_condition = cond.num().to_string();
      if (const auto u = cond.num().as_univariate(); u && !u->is_zero()) {
        for (const auto& r : rational_roots(*u)) {
          if (std::find(fr.excluded.begin(), fr.excluded.end(), r) != fr.excluded.end()) continue;
          fr.rational_roots.push_back({r, root_multiplicity(*u, r)});
        }
        fr.real_roots = count_real_roots(*u);
      }
    }
    if (!config.family->geometric.empty())
      fr.local_dimension = solution_set_dimension(
          residual, family->at(parse_point(config.family->geometric, config.family->parameters.size()), tmpl.unknowns));
    report.families.push_back(std::move(fr));
  }

  if (config.solver.groebner) {
    GroebnerRecord gr;
    if (const auto factors = single_factors(open)) {
      const auto basis = groebner_basis(with_nonvanishing(system, *factors));
      if (basis) {
        gr.finished = true;
        gr.basis_size = basis->size();
        gr.zero_dimensional = is_zero_dimensional(*basis, MonomialOrder::grevlex);
        if (gr.zero_dimensional) gr.quotient_dimension = quotient_dimension(*basis, MonomialOrder::grevlex);
      }
    }
    report.groebner = gr;
  }

  if (options.cohomology) {
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
      const auto& s = report.solutions[i];
      if (!s.exact) continue;
      const QRepresentation rep(tmpl.generators, tmpl.instantiate(*s.exact));
      CohomologyRecord cr;
      cr.rep = "solution " + std::to_string(i);
      cr.dims = cohomology_dims(pres, rep);
      std::optional<QuadricDomain> domain;
      try {
        domain.emplace(invariant_form(rep));
      } catch (const FormNotPreserved&) {
      }
      for (const auto& curve : config.curves) {
        CurveRecord rec;
        rec.curve = curve.name;
        rec.cusp = curve.cusp;
        const Word w = parse_word(curve.word, pres.generators);
        rec.word = join_word(w, pres.generators);
        const QMatrix m = evaluate_word(w, rep);
        rec.so31_parabolic = is_so31_parabolic(m);
        rec.isometry = domain ? to_string(classify_isometry(m, *domain)) : "undefined";
        rec.rank = domain ? restriction_rank(pres, rep, {w}, Coefficients::v) : -1;
        if (rec.rank > 0) cr.rigid_slopes.push_back(curve.name);
        cr.restrictions.push_back(std::move(rec));
      }
      report.cohomology.push_back(std::move(cr));
    }
  }

  if (options.timing)
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json presentation_json(const KnotConfig& config) {
  const Presentation pres = two_bridge_presentation(config.p, config.q);
  Json j;
  j["schema"] = 1;
  j["knot"] = config.name;
  j["p"] = config.p;
  j["q"] = config.q;
  j["generators"] = pres.generators;
  Json rels = Json::array();
  for (const auto& r : pres.relators) rels.push_back(join_word(r, pres.generators));
  j["relators"] = rels;
  j["W"] = join_word(two_bridge_word(config.p, config.q), pres.generators);
  Json per = Json::object();
  for (const auto& [name, w] : pres.peripheral) per[name] = join_word(w, pres.generators);
  j["peripheral"] = per;
  if (!config.longitude.empty()) j["longitude"] = join_word(parse_word(config.longitude, pres.generators), pres.generators);
  Json curves = Json::array();
  for (const auto& c : config.curves)
    curves.push_back(Json{{"name", c.name}, {"word", join_word(parse_word(c.word, pres.generators), pres.generators)}, {"cusp", c.cusp}});
  j["curves"] = curves;
  return j;
}

Json to_json(const RunReport& report) {
  Json j;
  j["schema"] = 1;
  j["knot"] = report.knot;
  j["p"] = report.p;
  j["q"] = report.q;
  j["presentation"] = Json{{"generators", report.generators}, {"relators", report.relators}};
  j["unknowns"] = report.unknowns;

  Json sols = Json::array();
  for (const auto& s : report.solutions) {
    Json e;
    e["values"] = s.values;
    if (s.exact) {
      Json ex = Json::array();
      for (const auto& v : *s.exact) ex.push_back(to_string(v));
      e["exact"] = ex;
    } else {
      e["exact"] = nullptr;
    }
    e["residual"] = s.residual;
    e["jacobian_kernel_dim"] = s.jacobian_kernel_dim;
    sols.push_back(e);
  }
  j["solutions"] = sols;

  Json fams = Json::array();
  for (const auto& f : report.families) {
    Json e;
    e["parameters"] = f.parameters;
    Json entries = Json::object();
    for (const auto& [k, v] : f.entries) entries[k] = v;
    e["entries"] = entries;
    e["verified"] = f.verified;
    Json ex = Json::array();
    for (const auto& v : f.excluded) ex.push_back(to_string(v));
    e["excluded"] = ex;
    e["trace_longitude"] = f.trace_longitude;
    e["trace_condition"] = f.trace_condition;
    e["real_roots"] = f.real_roots;
    Json roots = Json::array();
    for (const auto& r : f.rational_roots) roots.push_back(Json{{"value", to_string(r.value)}, {"multiplicity", r.multiplicity}});
    e["rational_roots"] = roots;
    e["local_dimension"] = f.local_dimension ? Json(*f.local_dimension) : Json(nullptr);
    fams.push_back(e);
  }
  j["families"] = fams;

  if (report.groebner) {
    const auto& g = *report.groebner;
    j["groebner"] = Json{{"finished", g.finished},
                         {"basis_size", g.basis_size},
                         {"zero_dimensional", g.zero_dimensional},
                         {"quotient_dimension", g.quotient_dimension < 0 ? Json(nullptr) : Json(g.quotient_dimension)}};
  }

  Json coh = Json::array();
  for (const auto& c : report.cohomology) {
    Json e;
    e["rep"] = c.rep;
    e["dims"] = Json{{"Z1", c.dims.z1},
                     {"B1", c.dims.b1},
                     {"H1_sl4", c.dims.h1_sl4},
                     {"H1_so31", nullable_dim(c.dims.h1_so31)},
                     {"H1_v", nullable_dim(c.dims.h1_v)}};
    Json rs = Json::array();
    for (const auto& r : c.restrictions)
      rs.push_back(Json{{"curve", r.curve},
                        {"word", r.word},
                        {"cusp", r.cusp},
                        {"rank", nullable_dim(r.rank)},
                        {"isometry", r.isometry},
                        {"so31_parabolic", r.so31_parabolic}});
    e["restrictions"] = rs;
    e["rigid_slopes"] = c.rigid_slopes;
    coh.push_back(e);
  }
  j["cohomology"] = coh;

  if (report.solver)
    j["solver"] = Json{{"starts", report.solver->starts},
                       {"seed", report.solver->seed},
                       {"converged", report.solver->converged},
                       {"failed", report.solver->failed},
                       {"degenerate", report.solver->degenerate}};
  if (report.seconds) j["timing"] = Json{{"seconds", *report.seconds}};
  return j;
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump_rec(os, j, 0);
  os << '\n';
  return os.str();
}

std::string emit(const RunReport& report, Format format) {
  if (format == Format::json) return dump_json(to_json(report));
  std::ostringstream os;
  for (std::size_t i = 0; i < report.unknowns.size(); ++i) os << (i ? "," : "") << report.unknowns[i];
  os << '\n';
  for (const auto& s : report.solutions) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (i) os << ',';
      if (s.exact)
        os << to_string((*s.exact)[i]);
      else
        format_double(os, s.values[i]);
    }
    os << '\n';
  }
  return os.str();
}

bool golden_matches(const Json& golden, const Json& actual, std::vector<std::string>* differences) {
  std::vector<std::string> diffs;
  golden_rec(golden, actual, "", diffs);
  if (differences) *differences = diffs;
  return diffs.empty();
}

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ConfigError("matrix must be a nonempty array of rows");
  QMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != j[0].size()) throw ConfigError("matrix rows differ in length");
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const auto& e = j[i][k];
      try {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
      } catch (const std::exception& ex) {
        throw ConfigError(std::string("bad matrix entry: ") + ex.what());
      }
    }
  }
  return m;
}

BendConfig BendConfig::from_json(const Json& j) {
  reject_unknown_keys(j, {"schema", "name", "generators", "relators", "images", "bending", "t", "notes"}, "bend config");
  check_schema(j);
  BendConfig c;
  try {
    c.name = j.at("name").get<std::string>();
    c.presentation.generators = j.at("generators").get<std::vector<std::string>>();
    for (const auto& r : j.at("relators")) c.presentation.relators.push_back(checked_word(r.get<std::string>(), c.presentation.generators, "relator"));
    std::vector<QMatrix> images;
    for (const auto& g : c.presentation.generators) {
      if (!j.at("images").contains(g)) throw ConfigError("no image for generator '" + g + "'");
      images.push_back(matrix_from_json(j.at("images").at(g)));
    }
    c.rep = QRepresentation(c.presentation.generators, images);
    const auto& b = j.at("bending");
    reject_unknown_keys(b, {"mode", "gamma2", "stable_letter", "x_s", "delta"}, "bending");
    const auto mode = b.at("mode").get<std::string>();
    if (mode == "amalgam")
      c.data.mode = BendMode::amalgam;
    else if (mode == "hnn")
      c.data.mode = BendMode::hnn;
    else
      throw ConfigError("bending.mode must be amalgam or hnn");
    c.data.gamma2 = b.value("gamma2", std::vector<std::string>());
    c.data.stable_letter = b.value("stable_letter", std::string());
    c.data.x_s = matrix_from_json(b.at("x_s"));
    for (const auto& d : b.at("delta")) c.data.delta.push_back(checked_word(d.get<std::string>(), c.presentation.generators, "delta word"));
    if (j.contains("t")) c.t = j.at("t").get<std::string>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bend config: ") + e.what());
  } catch (const DimensionError& e) {
    throw ConfigError(std::string("bend config: ") + e.what());
  }
  if (!satisfies_relators(c.presentation, c.rep)) throw ConfigError("bend config: images violate a relator");
  return c;
}

BendConfig BendConfig::load(const std::string& path) { return from_json(read_json_file(path)); }

Json run_bend(const BendConfig& config, const std::string& t) {
  Json out;
  out["schema"] = 1;
  out["name"] = config.name;
  out["t"] = t;
  std::optional<Rational> exact_t;
  try {
    exact_t = parse_rational(t);
  } catch (const std::exception&) {
  }
  Json images = Json::object();
  if (exact_t && is_nilpotent(config.data.x_s)) {
    const auto bent = bend(config.presentation, config.rep, config.data, *exact_t);
    out["arithmetic"] = "exact";
    for (std::size_t g = 0; g < bent.size(); ++g) images[bent.names()[g]] = matrix_json(bent.image(static_cast<int>(g)));
    out["images"] = images;
    out["relator_residual"] = 0.0;
    out["satisfies_relators"] = satisfies_relators(config.presentation, bent);
  } else {
    double tv = 0;
    try {
      tv = exact_t ? to_double(*exact_t) : std::stod(t);
    } catch (const std::exception&) {
      throw ConfigError("bad bending parameter '" + t + "'");
    }
    const auto bent = bend(config.presentation, config.rep, config.data, tv);
    out["arithmetic"] = "floating";
    for (std::size_t g = 0; g < bent.size(); ++g) {
      const auto& m = bent.image(static_cast<int>(g));
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
      }
      images[bent.names()[g]] = rows;
    }
    out["images"] = images;
    const double res = relator_residual(config.presentation, bent);
    out["relator_residual"] = res;
    out["satisfies_relators"] = res < 1e-10;
  }
  return out;
}

}  // namespace cdeform
