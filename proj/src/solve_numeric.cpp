#include "cdeform/polysys.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/prime.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

namespace cdeform {

unsigned worker_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CONVEX_DEFORM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

namespace {

// Polynomials flattened to double terms for fast value/gradient evaluation.
class CompiledSystem {
 public:
  explicit CompiledSystem(const std::vector<MPoly>& polys) {
    if (polys.empty()) throw std::invalid_argument("solve_numeric: empty system");
    nvars_ = polys.front().nvars();
    for (const auto& p : polys) {
      if (p.vars() != polys.front().vars()) throw VariableMismatch("solve_numeric: polynomials use different variables");
      std::vector<Term> terms;
      for (const auto& [e, c] : p.terms()) {
        terms.push_back({to_double(c), e});
        for (std::size_t v = 0; v < nvars_; ++v) max_degree_ = std::max(max_degree_, e[v]);
      }
      polys_.push_back(std::move(terms));
    }
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t npolys() const { return polys_.size(); }

  void eval(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) const {
    const auto d = static_cast<std::size_t>(max_degree_) + 1;
    std::vector<double> pw(nvars_ * d);
    for (std::size_t v = 0; v < nvars_; ++v) {
      pw[v * d] = 1;
      for (std::size_t k = 1; k < d; ++k) pw[v * d + k] = pw[v * d + k - 1] * x(static_cast<Eigen::Index>(v));
    }
    r.setZero(static_cast<Eigen::Index>(polys_.size()));
    if (jac) jac->setZero(static_cast<Eigen::Index>(polys_.size()), static_cast<Eigen::Index>(nvars_));
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      for (const auto& t : polys_[i]) {
        double m = t.c;
        for (std::size_t v = 0; v < nvars_; ++v) m *= pw[v * d + static_cast<std::size_t>(t.e[v])];
        r(row) += m;
        if (!jac) continue;
        for (std::size_t u = 0; u < nvars_; ++u) {
          if (t.e[u] == 0) continue;
          double g = t.c * t.e[u];
          for (std::size_t v = 0; v < nvars_; ++v)
            g *= pw[v * d + static_cast<std::size_t>(t.e[v] - (v == u ? 1 : 0))];
          (*jac)(row, static_cast<Eigen::Index>(u)) += g;
        }
      }
    }
  }

 private:
  struct Term {
    double c;
    Exponent e;
  };
  std::size_t nvars_ = 0;
  int max_degree_ = 0;
  std::vector<std::vector<Term>> polys_;
};

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0;
  while (i) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

struct StartResult {
  bool converged = false;
  Eigen::VectorXd x;
  double residual = 0;
  std::optional<std::vector<Rational>> exact;
};

// Levenberg-Marquardt on 0.5 |r|^2 followed by Gauss-Newton polishing.
StartResult levenberg_marquardt(const CompiledSystem& sys, Eigen::VectorXd x, const Box& box, const SolveOptions& opt) {
  const auto n = static_cast<Eigen::Index>(sys.nvars());
  Eigen::VectorXd r, r_try;
  Eigen::MatrixXd j;
  sys.eval(x, r, &j);
  double cost = r.squaredNorm(), lambda = 1e-3;
  double scale = 1;
  for (std::size_t v = 0; v < box.lo.size(); ++v) scale = std::max({scale, std::abs(box.lo[v]), std::abs(box.hi[v])});
  int stalled = 0;
  for (int it = 0; it < opt.max_iterations && std::sqrt(cost) > opt.residual_tol * 1e-2; ++it) {
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    Eigen::MatrixXd damped = jtj;
    for (Eigen::Index k = 0; k < n; ++k) damped(k, k) += lambda * (jtj(k, k) + 1e-12);
    const Eigen::VectorXd step = damped.ldlt().solve(-g);
    if (!step.allFinite()) break;
    const Eigen::VectorXd x_try = x + step;
    sys.eval(x_try, r_try, nullptr);
    const double cost_try = r_try.squaredNorm();
    if (std::isfinite(cost_try) && cost_try < cost) {
      const double gain = (cost - cost_try) / std::max(cost, 1e-300);
      x = x_try;
      sys.eval(x, r, &j);
      cost = r.squaredNorm();
      lambda = std::max(lambda / 3, 1e-15);
      stalled = gain < 1e-10 ? stalled + 1 : 0;
    } else {
      lambda *= 4;
      ++stalled;
    }
    if (stalled > 25 || lambda > 1e12 || x.cwiseAbs().maxCoeff() > 1e3 * scale) break;
  }
  for (int polish = 0; polish < 4; ++polish) {
    const Eigen::VectorXd step = j.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) break;
    const Eigen::VectorXd x_try = x + step;
    sys.eval(x_try, r_try, nullptr);
    if (!(r_try.squaredNorm() < cost)) break;
    x = x_try;
    sys.eval(x, r, &j);
    cost = r.squaredNorm();
  }
  StartResult out;
  out.x = x;
  out.residual = std::sqrt(cost);
  out.converged = out.residual < opt.residual_tol;
  return out;
}

// Closest fraction with denominator <= max_den, by continued-fraction convergents.
Rational best_rational(double x, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double y = x;
  for (int step = 0; step < 64; ++step) {
    const double a_f = std::floor(y);
    if (std::abs(a_f) > 1e15) break;
    const long a = static_cast<long>(a_f);
    const long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    const long h2 = a * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = y - a_f;
    if (frac < 1e-15) break;
    y = 1 / frac;
  }
  return Rational(h1) / Rational(k1);
}

std::optional<std::vector<Rational>> snap(const std::vector<MPoly>& polys, const Eigen::VectorXd& x, long max_den) {
  std::vector<Rational> q;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Rational c = best_rational(x(i), max_den);
    if (std::abs(to_double(c) - x(i)) > 1e-6 * std::max(1.0, std::abs(x(i)))) return std::nullopt;
    q.push_back(c);
  }
  for (const auto& p : polys)
    if (p.eval(q) != 0) return std::nullopt;
  return q;
}

bool admissible(const std::vector<std::vector<MPoly>>& groups, const StartResult& r, double tol) {
  for (const auto& group : groups) {
    const bool ok = std::any_of(group.begin(), group.end(), [&](const MPoly& p) {
      if (r.exact) return p.eval(*r.exact) != 0;
      return std::abs(p.eval(std::vector<double>(r.x.data(), r.x.data() + r.x.size()))) > tol;
    });
    if (!ok) return false;
  }
  return true;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

SolveReport solve_numeric(const std::vector<MPoly>& polys, const Box& box, int starts, std::uint64_t seed,
                          const SolveOptions& options) {
  const CompiledSystem sys(polys);
  const std::size_t n = sys.nvars();
  if (box.lo.size() != n || box.hi.size() != n) throw DimensionError("solve_numeric: box arity mismatch");
  for (std::size_t v = 0; v < n; ++v)
    if (!(box.lo[v] < box.hi[v]) || !std::isfinite(box.lo[v]) || !std::isfinite(box.hi[v]))
      throw std::invalid_argument("solve_numeric: box must be finite with lo < hi");
  if (starts < 0) throw std::invalid_argument("solve_numeric: negative start count");
  if (n > 10000) throw std::invalid_argument("solve_numeric: too many variables");

  // Cranley-Patterson rotation of the Halton sequence, fixed by the seed.
  std::mt19937_64 rng(seed);
  std::vector<double> shift(n);
  for (auto& s : shift) s = std::generate_canonical<double, 53>(rng);

  std::vector<StartResult> results(static_cast<std::size_t>(starts));
  auto run = [&](std::size_t i) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v) {
      double u = radical_inverse(i + 1, boost::math::prime(static_cast<unsigned>(v))) + shift[v];
      u -= std::floor(u);
      x(static_cast<Eigen::Index>(v)) = box.lo[v] + u * (box.hi[v] - box.lo[v]);
    }
    StartResult r = levenberg_marquardt(sys, x, box, options);
    if (r.converged && options.snap_rational) r.exact = snap(polys, r.x, options.max_denominator);
    results[i] = std::move(r);
  };

  // Each start writes only its own slot, so any schedule yields the same vector.
  const unsigned workers = std::min<unsigned>(worker_threads(options.threads), std::max(1, starts));
  if (workers <= 1) {
    for (std::size_t i = 0; i < results.size(); ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < results.size(); i += workers) run(i);
      });
    for (auto& t : pool) t.join();
  }

  SolveReport report;
  std::vector<NumericSolution> found;
  for (const auto& r : results) {
    if (!r.converged) {
      ++report.failed_starts;
      continue;
    }
    ++report.converged_starts;
    if (!admissible(options.nonvanishing, r, options.open_tol)) {
      ++report.degenerate_starts;
      continue;
    }
    NumericSolution s;
    if (r.exact) {
      for (const auto& c : *r.exact) s.values.push_back(to_double(c));
      Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(s.values.data(), static_cast<Eigen::Index>(n)), rv;
      sys.eval(xv, rv, nullptr);
      s.residual = rv.norm();
    } else {
      s.values.assign(r.x.data(), r.x.data() + n);
      s.residual = r.residual;
    }
    s.exact = r.exact;
    found.push_back(std::move(s));
  }
  // Exact points first, then by residual, so cluster representatives do not depend on start order.
  std::sort(found.begin(), found.end(), [](const NumericSolution& a, const NumericSolution& b) {
    if (a.exact.has_value() != b.exact.has_value()) return a.exact.has_value();
    if (a.residual != b.residual) return a.residual < b.residual;
    return lex_less(a.values, b.values);
  });
  for (auto& s : found) {
    const bool duplicate = std::any_of(report.solutions.begin(), report.solutions.end(), [&](const NumericSolution& t) {
      if (s.exact && t.exact) return *s.exact == *t.exact;
      return distance(s.values, t.values) < options.dedupe_radius;
    });
    if (!duplicate) report.solutions.push_back(std::move(s));
  }
  std::sort(report.solutions.begin(), report.solutions.end(),
            [](const NumericSolution& a, const NumericSolution& b) { return lex_less(a.values, b.values); });
  return report;
}

}  // namespace cdeform
