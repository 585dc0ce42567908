/**
 * @file joint_degree_matrix.hpp
 * @brief Joint law of (output degree, number of S1 packets) at the relay.
 *
 * Entry (i, j) is the probability that the relay emits a degree-i packet of
 * which j messages come from S1. The ideal matrix P assumes every message of
 * both sources is available at the relay; the feasible matrix P_o is derived
 * from P so that the S1 demand per column never exceeds what an RSD stream
 * of S1 packets can supply.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ltnc/combinatorics.hpp"
#include "ltnc/degree_distribution.hpp"
#include "ltnc/errors.hpp"

namespace ltnc {

class JointDegreeMatrix {
 public:
  JointDegreeMatrix() = default;
  JointDegreeMatrix(std::size_t k1, std::size_t k2)
      : k1_(k1), k2_(k2), entries_((k1 + k2 + 1) * (k1 + 1), 0.0) {
    if (k1 < 1 || k2 < 1) throw ParameterError("joint degree matrix needs k1, k2 >= 1");
  }

  std::size_t k1() const { return k1_; }
  std::size_t k2() const { return k2_; }
  std::size_t k() const { return k1_ + k2_; }
  std::size_t rows() const { return k() + 1; }
  std::size_t cols() const { return k1_ + 1; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols() + j]; }

  /// True when (i, j) can carry mass: i >= 1, j <= i, j <= k1, i - j <= k2.
  bool admissible(std::size_t i, std::size_t j) const {
    return i >= 1 && j <= i && j <= k1_ && i - j <= k2_;
  }

  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * cols(), cols()}; }
  std::span<const double> entries() const { return entries_; }

  double row_sum(std::size_t i) const {
    double s = 0.0;
    for (double x : row(i)) s += x;
    return s;
  }

  double column_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows(); ++i) s += (*this)(i, j);
    return s;
  }

  double total() const {
    double s = 0.0;
    for (double x : entries_) s += x;
    return s;
  }

  bool operator==(const JointDegreeMatrix&) const = default;

 private:
  std::size_t k1_ = 0;
  std::size_t k2_ = 0;
  std::vector<double> entries_;
};

/// Ideal matrix: P(i, j) = mu_K(i) * C(k1,j) C(k2,i-j) / C(K,i).
inline JointDegreeMatrix build_ideal_p(std::size_t k1, std::size_t k2, const DegreeDistribution& mu_k) {
  if (mu_k.k() != k1 + k2) throw ParameterError("mu_K size does not match k1 + k2");
  JointDegreeMatrix p(k1, k2);
  const LogFactorialTable lf(k1 + k2);
  for (std::size_t i = 1; i <= p.k(); ++i) {
    const std::size_t j_lo = i > k2 ? i - k2 : 0;
    const std::size_t j_hi = std::min(i, k1);
    for (std::size_t j = j_lo; j <= j_hi; ++j) p(i, j) = mu_k[i] * hypergeometric_split(i, j, k1, k2, lf);
  }
  return p;
}

inline JointDegreeMatrix build_ideal_p(std::size_t k1, std::size_t k2, double c, double delta) {
  if (k1 < 1 || k2 < 1) throw ParameterError("build_ideal_p needs k1, k2 >= 1");
  return build_ideal_p(k1, k2, build_rsd(k1 + k2, c, delta));
}

/// P_out(i) = sum_j m(i, j).
inline DegreeDistribution marginal_out(const JointDegreeMatrix& m) {
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m.row_sum(i);
  return DegreeDistribution(std::move(out));
}

/// P_S1(j) = sum_i m(i, j).
inline std::vector<double> marginal_s1(const JointDegreeMatrix& m) {
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j);
  return out;
}

/// Unallocated part of S1's degree budget; index 0 starts at 1.
struct ResidualDistribution {
  std::vector<double> values;
};

struct PoAllocation {
  JointDegreeMatrix po;
  ResidualDistribution residual;
};

namespace detail {

/**
 * Fills `alloc` for one row by water-filling: alloc_j = min(lambda t_j, cap_j)
 * with the largest lambda >= 1 such that sum_j alloc_j <= target. Entries
 * with t_j = 0 stay at zero. Each pass saturates at least one entry, so at
 * most t.size() + 1 passes run.
 */
inline void water_fill(std::span<const double> t, std::span<const double> cap, double target,
                       std::span<double> alloc) {
  const std::size_t n = t.size();
  std::vector<char> saturated(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    alloc[j] = 0.0;
    if (t[j] <= 0.0) saturated[j] = 1;
  }
  for (;;) {
    double sat_mass = 0.0;
    double free_weight = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j] <= 0.0) continue;
      if (saturated[j])
        sat_mass += cap[j];
      else
        free_weight += t[j];
    }
    if (free_weight <= 0.0) {
      for (std::size_t j = 0; j < n; ++j) alloc[j] = t[j] > 0.0 ? cap[j] : 0.0;
      return;
    }
    const double lambda = std::max(1.0, (target - sat_mass) / free_weight);
    bool clipped = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (saturated[j]) continue;
      if (lambda * t[j] >= cap[j]) {
        saturated[j] = 1;
        clipped = true;
      }
    }
    if (clipped) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j] <= 0.0)
        alloc[j] = 0.0;
      else
        alloc[j] = saturated[j] ? cap[j] : lambda * t[j];
    }
    return;
  }
}

}  // namespace detail

/**
 * Feasible joint matrix from the ideal one.
 *
 * Rows are processed in order i = 1..K. Row i asks for P(i, 0..min(i,k1));
 * every entry is capped by the residual S1 budget of its column, and the
 * mass lost to capping is redistributed over the uncapped entries in
 * proportion to P(i, j) until the row reaches mu_K(i) or every entry with
 * P(i, j) > 0 is capped. The allocation is then subtracted from the residual.
 * The residual of column 0 starts at 1.
 */
inline PoAllocation allocate_po(const JointDegreeMatrix& p, const DegreeDistribution& mu_k1) {
  if (mu_k1.k() != p.k1()) throw ParameterError("mu_K1 size does not match the matrix k1");
  PoAllocation out{JointDegreeMatrix(p.k1(), p.k2()), {}};
  auto& residual = out.residual.values;
  residual.assign(mu_k1.probs().begin(), mu_k1.probs().end());
  residual[0] = 1.0;

  std::vector<double> t;
  std::vector<double> alloc;
  for (std::size_t i = 1; i <= p.k(); ++i) {
    const std::size_t width = std::min(i, p.k1()) + 1;
    t.assign(p.row(i).begin(), p.row(i).begin() + static_cast<std::ptrdiff_t>(width));
    alloc.assign(width, 0.0);
    // The ideal row spans every admissible column, so its sum is mu_K(i).
    double row_target = 0.0;
    for (double x : t) row_target += x;
    detail::water_fill(t, std::span<const double>(residual.data(), width), row_target, alloc);
    for (std::size_t j = 0; j < width; ++j) {
      out.po(i, j) = alloc[j];
      residual[j] = alloc[j] == residual[j] ? 0.0 : residual[j] - alloc[j];
    }
  }
  return out;
}

inline JointDegreeMatrix compute_po(const JointDegreeMatrix& p, const DegreeDistribution& mu_k1) {
  return allocate_po(p, mu_k1).po;
}

}  // namespace ltnc
