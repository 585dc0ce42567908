#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltnc/errors.hpp"
#include "ltnc/rng.hpp"

namespace ltnc {

/// Construction parameters of a robust soliton distribution.
struct RsdParameters {
  double c = 0.05;
  double delta = 0.5;
  double spread = 0.0;       // S = c ln(k/delta) sqrt(k)
  std::size_t spike = 0;     // floor(k/S); 0 when the spike falls outside 1..k
};

/**
 * Probability vector over packet degrees 0..k (index = degree).
 *
 * The entries are not required to sum to one: residual and marginal
 * distributions reuse this type. Sampling, however, requires a normalized
 * vector. The cumulative vector used by inverse-CDF sampling is built once
 * at construction.
 */
class DegreeDistribution {
 public:
  DegreeDistribution() = default;

  explicit DegreeDistribution(std::vector<double> probs,
                              std::optional<RsdParameters> params = std::nullopt)
      : probs_(std::move(probs)), params_(params) {
    if (probs_.empty()) throw ParameterError("degree distribution needs at least one entry");
    for (double p : probs_) {
      if (!std::isfinite(p) || p < 0.0)
        throw ParameterError("degree distribution entries must be finite and non-negative");
    }
    cdf_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
  }

  /// Largest representable degree.
  std::size_t k() const { return probs_.empty() ? 0 : probs_.size() - 1; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t d) const { return d < probs_.size() ? probs_[d] : 0.0; }
  const std::optional<RsdParameters>& params() const { return params_; }

  double total() const { return cdf_.empty() ? 0.0 : cdf_.back(); }

  bool is_normalized(double tol = 1e-9) const { return std::abs(total() - 1.0) <= tol; }

  double mean() const {
    double m = 0.0;
    for (std::size_t d = 0; d < probs_.size(); ++d) m += static_cast<double>(d) * probs_[d];
    return m;
  }

  /// Degree d with cdf[d-1] <= u*total < cdf[d]; u in [0,1).
  /// Zero-probability degrees are never returned.
  std::size_t sample_at(double u) const {
    const double x = u * total();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
    if (it == cdf_.end()) {
      // u*total rounded onto the last cumulative value: take the last positive degree.
      std::size_t d = probs_.size() - 1;
      while (d > 0 && probs_[d] == 0.0) --d;
      return d;
    }
    return static_cast<std::size_t>(it - cdf_.begin());
  }

  std::size_t sample(Rng& rng) const {
    if (!is_normalized(1e-9))
      throw ContractError("cannot sample an unnormalized degree distribution (sum = " +
                          std::to_string(total()) + ")");
    return sample_at(rng.uniform());
  }

 private:
  std::vector<double> probs_;
  std::vector<double> cdf_;
  std::optional<RsdParameters> params_;
};

inline std::size_t sample_degree(const DegreeDistribution& dist, Rng& rng) {
  return dist.sample(rng);
}

/// Point mass at `degree` over 0..k.
inline DegreeDistribution point_mass(std::size_t k, std::size_t degree) {
  if (degree > k) throw ParameterError("point mass degree exceeds k");
  std::vector<double> p(k + 1, 0.0);
  p[degree] = 1.0;
  return DegreeDistribution(std::move(p));
}

/**
 * Robust soliton distribution mu_k for k source packets.
 *
 *   rho(1) = 1/k,  rho(d) = 1/(d(d-1))                      d = 2..k
 *   tau(d) = S/(k d)                                         d = 1..floor(k/S)-1
 *   tau(floor(k/S)) = S ln(S/delta)/k
 *   mu(d) = (rho(d) + tau(d)) / sum_i (rho(i) + tau(i)),     S = c ln(k/delta) sqrt(k)
 *
 * tau terms beyond k are dropped (small S pushes the spike past k). For
 * k = 1 the result is the point mass at degree 1.
 */
inline DegreeDistribution build_rsd(std::size_t k, double c, double delta) {
  if (k < 1) throw ParameterError("RSD requires k >= 1");
  if (!std::isfinite(c) || c <= 0.0) throw ParameterError("RSD requires finite c > 0");
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0)
    throw ParameterError("RSD requires delta in (0, 1)");

  const double kd = static_cast<double>(k);
  RsdParameters params{c, delta, c * std::log(kd / delta) * std::sqrt(kd), 0};

  if (k == 1) {
    std::vector<double> p{0.0, 1.0};
    return DegreeDistribution(std::move(p), params);
  }

  const double s = params.spread;
  const double ratio = std::floor(kd / s);
  const std::size_t spike = ratio >= 1.0 ? static_cast<std::size_t>(ratio) : 0;
  params.spike = spike <= k ? spike : 0;

  std::vector<double> w(k + 1, 0.0);
  w[1] = 1.0 / kd;
  for (std::size_t d = 2; d <= k; ++d) {
    const double dd = static_cast<double>(d);
    w[d] = 1.0 / (dd * (dd - 1.0));
  }
  const std::size_t tau_end = std::min(spike == 0 ? 0 : spike - 1, k);
  for (std::size_t d = 1; d <= tau_end; ++d) w[d] += s / (kd * static_cast<double>(d));
  if (params.spike != 0) w[params.spike] += s * std::log(s / delta) / kd;

  double z = 0.0;
  for (double x : w) z += x;
  for (double& x : w) x /= z;
  return DegreeDistribution(std::move(w), params);
}

}  // namespace ltnc
