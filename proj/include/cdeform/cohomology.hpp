#pragma once

#include "cdeform/linalg.hpp"
#include "cdeform/words.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cdeform {

class BaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NotCommuting : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class MeridianTrivialUpperEntry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Coefficients { sl4, so31, v };
std::string to_string(Coefficients c);
Coefficients parse_coefficients(const std::string& name);

/// A 1-cochain on generators: one 4x4 matrix per generator, in presentation order.
using Cochain = std::vector<QMatrix>;

/// Columns are stacked sl4 coordinates (15 per generator).
QVector stack_cochain(const Cochain& z);
Cochain unstack_cochain(const QVector& v);

/// Value z(w) of the crossed homomorphism z(uv) = z(u) + Ad(rho(u)) z(v) determined by z on generators.
QMatrix cochain_value(const Cochain& z, const Word& w, const QRepresentation& rep);

/// Basis of Z^1: cochains whose extension vanishes on every relator.
std::vector<Cochain> cocycle_space(const Presentation& pres, const QRepresentation& rep);
/// Basis of B^1: g -> c - Ad(rho(g)) c.
std::vector<Cochain> coboundary_space(const QRepresentation& rep);

/// The unique (up to scale) invariant form of signature (3,1), or FormNotPreserved.
QMatrix invariant_form(const QRepresentation& rep);

/// dim Z^1 - dim B^1 in the chosen Ad-invariant summand.
int h1(const Presentation& pres, const QRepresentation& rep, Coefficients coefficients);

struct CohomologyDims {
  int z1 = 0, b1 = 0, h1_sl4 = 0, h1_so31 = 0, h1_v = 0;
};
/// All dimensions at once; the split summands are computed only when a form is preserved.
CohomologyDims cohomology_dims(const Presentation& pres, const QRepresentation& rep);

/// Rank of H^1(Gamma) -> H^1(Delta) for the subgroup generated by `subgroup`. Subgroups
/// with one word are infinite cyclic; with two commuting words a Z^2 with one commutator relator.
int restriction_rank(const Presentation& pres, const QRepresentation& rep, const std::vector<Word>& subgroup,
                     Coefficients coefficients);

/// Restriction to the slope is nonzero in v-coefficients.
bool is_rigid_slope(const Presentation& pres, const QRepresentation& rep, const Word& slope);

/// Cochains on arbitrary group elements (words), with values in gl(4).
struct Cochain1 {
  const QRepresentation* base = nullptr;
  std::function<QMatrix(const Word&)> f;
  QMatrix operator()(const Word& c) const { return f(c); }
};
struct Cochain2 {
  const QRepresentation* base = nullptr;
  std::function<QMatrix(const Word&, const Word&)> f;
  QMatrix operator()(const Word& c, const Word& d) const { return f(c, d); }
};
struct Cochain3 {
  const QRepresentation* base = nullptr;
  std::function<QMatrix(const Word&, const Word&, const Word&)> f;
  QMatrix operator()(const Word& c, const Word& d, const Word& e) const { return f(c, d, e); }
};

/// Crossed-homomorphism extension of a generator cochain.
Cochain1 extend(const Cochain& z, const QRepresentation& rep);

/// (a u b)(c, d) = a(c) (c . b(d)), the action by conjugation.
Cochain2 cup_product(const Cochain1& a, const Cochain1& b);
/// (f u b)(c, d, e) = f(c, d) (cd . b(e)).
Cochain3 cup_product(const Cochain2& f, const Cochain1& b);
/// (a u f)(c, d, e) = a(c) (c . f(d, e)).
Cochain3 cup_product(const Cochain1& a, const Cochain2& f);

/// da(c, d) = a(c) + c . a(d) - a(cd).
Cochain2 coboundary(const Cochain1& a);
/// df(c, d, e) = c . f(d, e) - f(cd, e) + f(c, de) - f(c, d).
Cochain3 coboundary(const Cochain2& f);

/// B(a, b) = 8 tr(ab), the pairing on v used against H^0.
Rational killing_pairing(const QMatrix& a, const QMatrix& b);

/// Truncated deformation sigma_t(g) = (I + sum_k t^k u_k(g)) rho(g); seq[0] is u_1.
using CochainSeq = std::vector<Cochain>;

struct ObstructionResult {
  /// Per relator r: the t^k coefficient of sigma_t(r) rho(r)^-1 with u_k = 0.
  std::vector<QMatrix> target;
  /// Whether some gl(4)-valued u_k cancels the target on every relator.
  bool solvable = false;
  std::optional<Cochain> particular;
};

/// Order-k integrability: u_k exists iff the target lies in the image of the gl(4) Fox operator.
/// Requires the lower orders to hold already (checked exactly).
ObstructionResult obstruction_step(const Presentation& pres, const QRepresentation& rep, const CochainSeq& seq, int k);

/// True iff sigma_t built from seq is a homomorphism modulo t^(seq.size()+1).
bool satisfies_to_order(const Presentation& pres, const QRepresentation& rep, const CochainSeq& seq);

using Complex = std::complex<double>;
struct Sl2cElement {
  Complex a, b, c, d;
};

/// Upper-right entry of rho(l) after conjugating the commuting pair into upper-triangular form
/// with rho(m) having upper-right entry 1. Checks tau^2 (tr^2 m - 4) + 4 = tr^2 l.
Complex tau_invariant(const Sl2cElement& m, const Sl2cElement& l, double tol = 1e-12);

}  // namespace cdeform
