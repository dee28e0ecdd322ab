#include "cdeform/bending.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <set>

namespace cdeform {

bool is_nilpotent(const QMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("is_nilpotent: square matrix expected");
  return is_zero_matrix(matrix_power(x, static_cast<int>(x.rows())));
}

QMatrix exp_nilpotent(const QMatrix& x, const Rational& t) {
  if (x.rows() != 4 || x.cols() != 4) throw DimensionError("exp_nilpotent: 4x4 matrix expected");
  if (!is_nilpotent(x)) throw std::domain_error("exp_nilpotent: matrix is not nilpotent");
  const QMatrix tx = x * t;
  const QMatrix tx2 = mul(tx, tx);
  const QMatrix tx3 = mul(tx2, tx);
  return QMatrix(QMatrix::Identity(4, 4) + tx + tx2 / Rational(2) + tx3 / Rational(6));
}

Eigen::MatrixXd exp_float(const QMatrix& x, double t) {
  const Eigen::MatrixXd tx = to_double(x) * t;
  const Eigen::MatrixXd e = tx.exp();
  const Eigen::MatrixXd back = (-tx).exp();
  const double err = (e * back - Eigen::MatrixXd::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff();
  if (!(err <= 1e-12 * std::max(1.0, e.cwiseAbs().maxCoeff() * back.cwiseAbs().maxCoeff())))
    throw std::runtime_error("exp_float: inverse check failed");
  return e;
}

namespace {

std::set<int> letters_of(const Word& w) {
  std::set<int> out;
  for (const auto& l : w.letters()) out.insert(l.generator);
  return out;
}

std::set<int> gamma2_indices(const Presentation& pres, const BendingData& data) {
  std::set<int> out;
  for (const auto& name : data.gamma2) {
    const int g = pres.generator_index(name);
    if (!out.insert(g).second) throw InconsistentPartition("bend: generator '" + name + "' listed twice");
  }
  return out;
}

int stable_index(const Presentation& pres, const BendingData& data) {
  try {
    return pres.generator_index(data.stable_letter);
  } catch (const UnboundGenerator&) {
    throw InconsistentPartition("bend: unknown stable letter '" + data.stable_letter + "'");
  }
}

}  // namespace

void check_bending_data(const Presentation& pres, const QRepresentation& rep, const BendingData& data) {
  if (rep.size() != pres.rank()) throw DimensionError("bend: representation and presentation ranks differ");
  if (data.x_s.rows() != 4 || data.x_s.cols() != 4) throw DimensionError("bend: x_s must be 4x4");
  if (data.x_s.trace() != 0) throw NotInvariant("bend: x_s is not traceless");
  if (data.delta.empty()) throw InconsistentPartition("bend: no delta words given");

  std::set<int> shared;
  for (const auto& w : data.delta)
    for (int g : letters_of(w)) {
      if (g < 0 || static_cast<std::size_t>(g) >= pres.rank()) throw InconsistentPartition("bend: delta word uses an unknown generator");
      shared.insert(g);
    }

  if (data.mode == BendMode::amalgam) {
    std::set<int> g2;
    try {
      g2 = gamma2_indices(pres, data);
    } catch (const UnboundGenerator& e) {
      throw InconsistentPartition(std::string("bend: ") + e.what());
    }
    if (g2.empty() || g2.size() == pres.rank()) throw InconsistentPartition("bend: both pieces must be nonempty");
    for (const auto& r : pres.relators) {
      bool in1 = false, in2 = false;
      for (int g : letters_of(r)) {
        if (shared.count(g)) continue;
        (g2.count(g) ? in2 : in1) = true;
      }
      if (in1 && in2) throw InconsistentPartition("bend: a relator mixes both pieces outside the amalgamated subgroup");
    }
  } else {
    if (shared.count(stable_index(pres, data))) throw InconsistentPartition("bend: delta words contain the stable letter");
  }

  for (const auto& w : data.delta) {
    const QMatrix d = evaluate_word(w, rep);
    if (mul(d, data.x_s) != mul(data.x_s, d)) throw NotInvariant("bend: x_s is not centralized by a delta word");
  }
}

namespace {

template <class Mat>
std::vector<Mat> bent_images(const Presentation& pres, const std::vector<Mat>& images, const BendingData& data, const Mat& e,
                             const Mat& e_inv) {
  std::vector<Mat> out = images;
  if (data.mode == BendMode::amalgam) {
    for (int g : gamma2_indices(pres, data)) out[static_cast<std::size_t>(g)] = Mat(e * out[static_cast<std::size_t>(g)] * e_inv);
  } else {
    const auto s = static_cast<std::size_t>(stable_index(pres, data));
    out[s] = Mat(e * out[s]);
  }
  return out;
}

}  // namespace

QRepresentation bend(const Presentation& pres, const QRepresentation& rep, const BendingData& data, const Rational& t) {
  check_bending_data(pres, rep, data);
  if (!is_nilpotent(data.x_s)) throw std::domain_error("bend: exact bending needs nilpotent x_s; use the floating overload");
  const QMatrix e = exp_nilpotent(data.x_s, t);
  const QMatrix e_inv = exp_nilpotent(data.x_s, -t);
  QRepresentation out(rep.names(), bent_images<QMatrix>(pres, rep.images(), data, e, e_inv));
  if (!satisfies_relators(pres, out)) throw std::logic_error("bend: bent representation violates a relator");
  return out;
}

DRepresentation bend(const Presentation& pres, const QRepresentation& rep, const BendingData& data, double t) {
  check_bending_data(pres, rep, data);
  const Eigen::MatrixXd e = exp_float(data.x_s, t);
  const Eigen::MatrixXd e_inv = exp_float(data.x_s, -t);
  std::vector<Eigen::MatrixXd> images;
  for (const auto& m : rep.images()) images.push_back(to_double(m));
  return DRepresentation(rep.names(), bent_images<Eigen::MatrixXd>(pres, images, data, e, e_inv));
}

double relator_residual(const Presentation& pres, const DRepresentation& rep) {
  double worst = 0;
  for (const auto& r : pres.relators) {
    const Eigen::MatrixXd m = evaluate_word(r, rep);
    worst = std::max(worst, (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace cdeform
