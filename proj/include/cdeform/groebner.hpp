#pragma once

#include "cdeform/mpoly.hpp"

#include <optional>
#include <vector>

namespace cdeform {

enum class MonomialOrder { grevlex, lex };

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::grevlex;
  /// Abandon the computation after this many S-pair reductions.
  long max_pairs = 200000;
};

/// Reduced Groebner basis (monic, sorted by leading monomial), or nullopt when the
/// pair budget runs out. Intended for the small systems here (a handful of variables).
std::optional<std::vector<MPoly>> groebner_basis(const std::vector<MPoly>& polys, const GroebnerOptions& options = {});

/// Leading monomial of f in the given order.
Exponent leading_monomial(const MPoly& f, MonomialOrder order);

/// Remainder of f on division by a Groebner basis (fully reduced).
MPoly normal_form(const MPoly& f, const std::vector<MPoly>& basis, MonomialOrder order);

/// True iff every variable has a pure power among the leading monomials.
bool is_zero_dimensional(const std::vector<MPoly>& basis, MonomialOrder order);

/// Number of standard monomials of a zero-dimensional basis: the number of complex
/// solutions counted with multiplicity.
long quotient_dimension(const std::vector<MPoly>& basis, MonomialOrder order);

/// Adds a fresh variable `name` and the relation name * prod(factors) - 1, so solutions of
/// the result are those of `polys` where every factor is nonzero.
std::vector<MPoly> with_nonvanishing(const std::vector<MPoly>& polys, const std::vector<MPoly>& factors,
                                     const std::string& name = "z_");

}  // namespace cdeform
