#pragma once

#include "cdeform/matrix.hpp"
#include "cdeform/rational.hpp"

#include <initializer_list>
#include <random>

namespace testing_support {

using cdeform::QMatrix;
using cdeform::QVector;
using cdeform::Rational;

inline Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

inline QMatrix qmat(std::initializer_list<std::initializer_list<Rational>> rows) {
  QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline QVector qvec(std::initializer_list<Rational> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

/// Small-height random rationals keep exact arithmetic fast.
class RandomQ {
 public:
  explicit RandomQ(std::uint64_t seed) : gen_(seed) {}

  Rational rational(int height = 5) {
    std::uniform_int_distribution<int> num(-height, height), den(1, height);
    return q(num(gen_), den(gen_));
  }
  Rational nonzero(int height = 5) {
    for (;;) {
      Rational r = rational(height);
      if (r != 0) return r;
    }
  }
  QMatrix matrix(Eigen::Index rows, Eigen::Index cols, int height = 5) {
    QMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rational(height);
    return m;
  }
  QMatrix invertible(Eigen::Index n, int height = 4) {
    for (;;) {
      QMatrix m = matrix(n, n, height);
      if (cdeform::determinant(m) != 0) return m;
    }
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testing_support
