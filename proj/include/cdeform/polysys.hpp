#pragma once

#include "cdeform/matrix.hpp"
#include "cdeform/mpoly.hpp"
#include "cdeform/words.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdeform {

class NonUnipotentTemplate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotASolution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// A parameter value at which some family entry has a pole.
class ExcludedParameter : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
/// The family admits no parameter value at all.
class ExcludedParameterOnly : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense n x n matrix over a ring without Eigen scalar traits (MPoly, RatFunc).
template <class T>
class SquareMat {
 public:
  SquareMat() = default;
  SquareMat(int n, const T& fill) : n_(n), data_(static_cast<std::size_t>(n * n), fill) {}
  static SquareMat identity(int n, const T& zero, const T& one) {
    SquareMat m(n, zero);
    for (int i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  int size() const { return n_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }

  friend SquareMat operator+(const SquareMat& a, const SquareMat& b) {
    SquareMat out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
    return out;
  }
  friend SquareMat operator-(const SquareMat& a, const SquareMat& b) {
    SquareMat out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
    return out;
  }
  friend SquareMat operator*(const SquareMat& a, const SquareMat& b) {
    SquareMat out(a.n_, a(0, 0) - a(0, 0));
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < a.n_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    return out;
  }
  T trace() const {
    T acc = (*this)(0, 0);
    for (int i = 1; i < n_; ++i) acc = acc + (*this)(i, i);
    return acc;
  }

 private:
  int n_ = 0;
  std::vector<T> data_;
};

using PolyMatrix = SquareMat<MPoly>;
using RatMatrix = SquareMat<RatFunc>;

/// Generator images with polynomial entries in named unknowns.
struct PolyTemplate {
  std::vector<std::string> unknowns;
  std::vector<std::string> generators;
  std::vector<PolyMatrix> images;

  const PolyMatrix& image(const std::string& generator) const;
  /// Exact images at a point (one value per unknown).
  std::vector<QMatrix> instantiate(const std::vector<Rational>& values) const;
  /// Per generator, the nonzero entries of N^2 where the image is I + N. A unipotent
  /// template image has Jordan type 3+1 exactly when N^2 != 0, so a point keeps every
  /// meridian SO(3,1)-parabolic iff each group has a nonvanishing member.
  std::vector<std::vector<MPoly>> parabolic_conditions() const;
};

/// First normal form over unknowns a14, b21, b31, b32, b41; generators A, B.
PolyTemplate normform1_template();
/// Second normal form over unknowns a14, a24, a34, b21, b31; generators A, B.
PolyTemplate normform2_template();

/// Residual entries for every relator, zero polynomials dropped. A relator of the
/// form g W h^-1 W^-1 contributes gW - Wh; any other relator contributes rho(r) - I.
/// Generator images must be I + N with N strictly triangular, so inverses are polynomial.
std::vector<MPoly> assemble_residual(const Presentation& pres, const PolyTemplate& tmpl);

/// Unknowns expressed as rational functions of parameters.
struct ParamFamily {
  std::vector<std::string> parameters;
  std::map<std::string, RatFunc> assignment;
  /// Parameter values where an entry has a pole (univariate families only).
  std::vector<Rational> excluded;

  /// Builds the family from expression strings, e.g. {"a14", "(3-t)/(t-2)"}.
  static ParamFamily parse(const std::vector<std::string>& parameters,
                           const std::vector<std::pair<std::string, std::string>>& entries);
  /// Exact unknown values at the given parameter values (in the order of `unknowns`).
  std::vector<Rational> at(const std::vector<Rational>& params, const std::vector<std::string>& unknowns) const;
};

/// Generator images along the family, entries rational in the family parameters.
std::vector<RatMatrix> family_images(const ParamFamily& family, const PolyTemplate& tmpl);
RatMatrix derivative(const RatMatrix& m, int var);
QMatrix evaluate(const RatMatrix& m, const std::vector<Rational>& params);
/// Per order k = 0..order, per generator: the t^k Taylor coefficient of the image at t0
/// (one-parameter families).
std::vector<std::vector<QMatrix>> taylor_coefficients(const ParamFamily& family, const PolyTemplate& tmpl,
                                                      const Rational& t0, int order);

/// Exact trace of rho(w) along the family.
RatFunc trace_of_word(const Word& w, const ParamFamily& family, const PolyTemplate& tmpl);
/// Trace of rho(w) as a polynomial in the template unknowns.
MPoly trace_polynomial(const Word& w, const PolyTemplate& tmpl);

/// True iff every residual vanishes identically after substituting the family.
bool verify_family(const ParamFamily& family, const std::vector<MPoly>& residuals);

QMatrix jacobian(const std::vector<MPoly>& polys, const std::vector<Rational>& point);
/// Kernel dimension of the exact Jacobian at an exact solution.
int solution_set_dimension(const std::vector<MPoly>& polys, const std::vector<Rational>& point);

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  static Box cube(std::size_t n, double radius) { return {std::vector<double>(n, -radius), std::vector<double>(n, radius)}; }
};

struct SolveOptions {
  double residual_tol = 1e-12;
  double dedupe_radius = 1e-8;
  int max_iterations = 200;
  /// Attempt to replace each solution by a nearby rational point with exact zero residual.
  bool snap_rational = true;
  long max_denominator = 1000;
  /// 0 means hardware concurrency, capped by CONVEX_DEFORM_THREADS.
  unsigned threads = 0;
  /// Open conditions: a solution is kept only if every group has a member with
  /// |value| > open_tol (exactly nonzero for snapped points).
  std::vector<std::vector<MPoly>> nonvanishing;
  double open_tol = 1e-6;
};

struct NumericSolution {
  std::vector<double> values;
  /// Euclidean norm of the residual vector at `values`.
  double residual = 0;
  std::optional<std::vector<Rational>> exact;
};

struct SolveReport {
  std::vector<NumericSolution> solutions;
  int converged_starts = 0;
  /// Starts that ended without reaching the residual tolerance.
  int failed_starts = 0;
  /// Converged starts rejected by the open conditions.
  int degenerate_starts = 0;
};

/// Levenberg-Marquardt from scrambled Halton starts in the box; deterministic for a fixed seed.
SolveReport solve_numeric(const std::vector<MPoly>& polys, const Box& box, int starts, std::uint64_t seed,
                          const SolveOptions& options = {});

/// Worker count: hardware concurrency, capped by CONVEX_DEFORM_THREADS when set.
unsigned worker_threads(unsigned requested = 0);

}  // namespace cdeform
