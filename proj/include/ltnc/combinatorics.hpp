#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ltnc/errors.hpp"

namespace ltnc {

/// ln(n!) for n = 0..max, in extended precision.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::size_t max_n) : table_(max_n + 1) {
    for (std::size_t n = 0; n <= max_n; ++n) table_[n] = std::lgamma(static_cast<long double>(n) + 1.0L);
  }

  std::size_t max_n() const { return table_.size() - 1; }
  long double operator()(std::size_t n) const { return table_.at(n); }

  long double log_choose(std::size_t n, std::size_t r) const {
    if (n >= table_.size() || r > n) throw ParameterError("log_choose outside the table");
    return table_[n] - table_[r] - table_[n - r];
  }

 private:
  std::vector<long double> table_;
};

/**
 * Probability that a uniform i-subset of k1 + k2 items holds exactly j items
 * from the first k1: C(k1,j) C(k2,i-j) / C(k1+k2,i).
 *
 * Structural zeros (j > i, j > k1, i - j > k2) return 0. i must lie in 1..k1+k2.
 */
inline double hypergeometric_split(std::size_t i, std::size_t j, std::size_t k1, std::size_t k2,
                                   const LogFactorialTable& lf) {
  const std::size_t k = k1 + k2;
  if (k == 0 || i < 1 || i > k) throw ParameterError("hypergeometric_split: degree outside 1..K");
  if (lf.max_n() < k) throw ParameterError("hypergeometric_split: log-factorial table too small");
  if (j > i || j > k1 || i - j > k2) return 0.0;
  const long double lp = lf.log_choose(k1, j) + lf.log_choose(k2, i - j) - lf.log_choose(k, i);
  return static_cast<double>(std::exp(lp));
}

inline double hypergeometric_split(std::size_t i, std::size_t j, std::size_t k1, std::size_t k2) {
  return hypergeometric_split(i, j, k1, k2, LogFactorialTable(k1 + k2));
}

}  // namespace ltnc
