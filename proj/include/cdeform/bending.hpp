#pragma once

#include "cdeform/linalg.hpp"
#include "cdeform/words.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace cdeform {

class NotInvariant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class InconsistentPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BendMode { amalgam, hnn };

/// Bending along a separating (amalgam) or non-separating (HNN) surface.
struct BendingData {
  BendMode mode = BendMode::amalgam;
  /// Amalgam: generators of the piece that gets conjugated.
  std::vector<std::string> gamma2;
  /// HNN: the stable letter.
  std::string stable_letter;
  /// Traceless, centralized by the image of every delta word.
  QMatrix x_s;
  std::vector<Word> delta;
};

using DRepresentation = Representation<double>;

bool is_nilpotent(const QMatrix& x);
/// exp(t x) = I + tx + (tx)^2/2 + (tx)^3/6 for nilpotent 4x4 x.
QMatrix exp_nilpotent(const QMatrix& x, const Rational& t);
/// Floating exp(t x) (Pade scaling and squaring), checked by exp(tx) exp(-tx) = I to 1e-12.
Eigen::MatrixXd exp_float(const QMatrix& x, double t);

/// Validates data against the presentation: names exist, the amalgam partition separates
/// every relator (generators in delta words are shared), x_s is traceless and invariant.
void check_bending_data(const Presentation& pres, const QRepresentation& rep, const BendingData& data);

/// Exact bend; requires nilpotent x_s. The result is re-verified on every relator.
QRepresentation bend(const Presentation& pres, const QRepresentation& rep, const BendingData& data, const Rational& t);
/// Floating bend for arbitrary invariant x_s.
DRepresentation bend(const Presentation& pres, const QRepresentation& rep, const BendingData& data, double t);

/// Max entry of rho(r) - I over the relators.
double relator_residual(const Presentation& pres, const DRepresentation& rep);

}  // namespace cdeform
