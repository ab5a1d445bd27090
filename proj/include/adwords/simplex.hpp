#pragma once

#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "adwords/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<adwords::Rational> : GenericNumTraits<adwords::Rational> {
  using Real = adwords::Rational;
  using NonInteger = adwords::Rational;
  using Literal = adwords::Rational;
  using Nested = adwords::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace adwords {

enum class SimplexStatus { Optimal, Unbounded, PivotLimit };

template <typename Scalar>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::Optimal;
  Scalar value{0};
  std::vector<Scalar> x;
  long pivots = 0;
};

/// Dense-tableau primal simplex for  max cᵀx  s.t.  Ax <= b, x >= 0, b >= 0
/// (the slack basis is feasible, so there is no phase one). Bland's rule.
/// With Rational the arithmetic is exact; with double, comparisons use a
/// fixed tolerance.
template <typename Scalar>
class DenseSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  DenseSimplex(const Matrix& A, const Vector& b, const Vector& c)
      : m_(A.rows()), n_(A.cols()), tableau_(Matrix::Zero(A.rows() + 1, A.cols() + A.rows() + 1)) {
    tableau_.topLeftCorner(m_, n_) = A;
    for (Eigen::Index i = 0; i < m_; ++i) {
      tableau_(i, n_ + i) = Scalar(1);
      tableau_(i, n_ + m_) = b(i);
    }
    for (Eigen::Index j = 0; j < n_; ++j) tableau_(m_, j) = -c(j);
    basis_.resize(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) basis_[static_cast<std::size_t>(i)] = n_ + i;
  }

  SimplexResult<Scalar> solve(long max_pivots) {
    SimplexResult<Scalar> out;
    const Eigen::Index cols = n_ + m_;
    const Eigen::Index rhs = cols;
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (negative(tableau_(m_, j))) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      Eigen::Index leave = -1;
      Scalar best_ratio{0};
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (!positive(tableau_(i, enter))) continue;
        Scalar ratio = tableau_(i, rhs) / tableau_(i, enter);
        if (leave < 0 || less(ratio, best_ratio) ||
            (!less(best_ratio, ratio) && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        out.status = SimplexStatus::Unbounded;
        return out;
      }
      if (out.pivots >= max_pivots) {
        out.status = SimplexStatus::PivotLimit;
        return out;
      }
      pivot(leave, enter);
      ++out.pivots;
    }
    out.value = tableau_(m_, rhs);
    out.x.assign(static_cast<std::size_t>(n_), Scalar(0));
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index var = basis_[static_cast<std::size_t>(i)];
      if (var < n_) out.x[static_cast<std::size_t>(var)] = tableau_(i, rhs);
    }
    return out;
  }

 private:
  static constexpr bool kExact = !std::is_floating_point_v<Scalar>;
  static constexpr double kTol = 1e-9;

  static bool is_zero(const Scalar& v) {
    if constexpr (kExact) {
      return v.is_zero();
    } else {
      return std::abs(v) <= kTol;
    }
  }
  static bool negative(const Scalar& v) {
    if constexpr (kExact) {
      return v.sign() < 0;
    } else {
      return v < -kTol;
    }
  }
  static bool positive(const Scalar& v) {
    if constexpr (kExact) {
      return v.sign() > 0;
    } else {
      return v > kTol;
    }
  }
  static bool less(const Scalar& a, const Scalar& b) {
    if constexpr (kExact) {
      return a < b;
    } else {
      return a < b - kTol;
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Eigen::Index width = tableau_.cols();
    const Scalar inv = Scalar(1) / tableau_(r, c);
    std::vector<Eigen::Index> nz;
    for (Eigen::Index j = 0; j < width; ++j) {
      if (is_zero(tableau_(r, j))) {
        if constexpr (!kExact) tableau_(r, j) = 0;
        continue;
      }
      tableau_(r, j) *= inv;
      nz.push_back(j);
    }
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == r || is_zero(tableau_(i, c))) continue;
      const Scalar factor = tableau_(i, c);
      for (Eigen::Index j : nz) tableau_(i, j) -= factor * tableau_(r, j);
      if constexpr (!kExact) tableau_(i, c) = 0;
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  Matrix tableau_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace adwords
