#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ergogap/rate_expr.hpp"
#include "ergogap/series.hpp"

namespace ergogap {

/**
 * @brief Specification of a birth-death chain on {0, 1, ..., n} (n possibly
 * infinite): birth rates b_i > 0 for i < n and death rates a_i > 0 for i >= 1.
 *
 * Rates are given either in closed form (a RateExpr in the index) or as
 * explicit arrays whose length matches the top state. Positivity is enforced
 * at first evaluation. Immutable after construction.
 */
class ChainSpec {
 public:
  using Rates = std::variant<RateExpr, std::vector<double>>;

  /// Chain on {0,1,2,...}.
  static ChainSpec infinite(RateExpr birth, RateExpr death);
  /// Chain on {0..top_state} with expression rates.
  static ChainSpec finite(RateExpr birth, RateExpr death, std::int64_t top_state);
  /// Chain on {0..birth.size()} from arrays: birth = b_0..b_{n-1},
  /// death = a_1..a_n (both of length n).
  static ChainSpec finite(std::vector<double> birth, std::vector<double> death);

  /// b_i, valid for 0 <= i <= n-1; throws SpecError otherwise or if the rate
  /// is not a positive finite real.
  double birth(std::int64_t i) const;
  /// a_i, valid for 1 <= i <= n.
  double death(std::int64_t i) const;

  bool is_finite() const { return top_.has_value(); }
  std::int64_t top_state() const;  // throws unless finite

 private:
  ChainSpec(Rates b, Rates d, std::optional<std::int64_t> top);
  Rates birth_, death_;
  std::optional<std::int64_t> top_;
};

/**
 * @brief The reversibility weights mu_0 = 1, mu_i = mu_{i-1} b_{i-1} / a_i,
 * swept up to state N, carried in log space so strongly ergodic families
 * (a_i = i^2 and friends) neither overflow nor underflow.
 *
 * For infinite chains the sweep also certifies an enclosure of the tail mass
 * mu[N+1, inf) when the term ratios allow it; range_to_inf() folds that tail
 * into every suffix query.
 */
struct MuWeights {
  std::int64_t N = 0;   // top swept state
  bool finite = false;  // true when the chain's state space ends at N

  std::vector<double> log_mu;      // log mu_i, i = 0..N
  std::vector<double> log_b;       // log b_i, i = 0..N (log_b[N] = -inf if b_N absent)
  std::vector<double> log_a;       // log a_i, i = 1..N (log_a[0] = -inf)
  std::vector<double> log_prefix;  // log mu[0,i]
  std::vector<double> log_suffix;  // log mu[i,N]
  std::vector<double> log_phi;     // log sum_{j<i} (mu_j b_j)^{-1}  (log_phi[0] = -inf)
  TailEnclosure tail;              // mu[N+1, inf); exact zero for finite chains

  double mu(std::int64_t i) const { return std::exp(log_mu[static_cast<std::size_t>(i)]); }
  double prefix(std::int64_t i) const { return std::exp(log_prefix[static_cast<std::size_t>(i)]); }
  double phi(std::int64_t i) const { return std::exp(log_phi[static_cast<std::size_t>(i)]); }

  /// Enclosure of mu[k, inf) (exact mu[k,N] when finite). hi = +inf when the
  /// tail diverges or is not certifiable.
  Interval range_to_inf(std::int64_t k) const;
  /// Enclosure of the total mass mu[0, inf).
  Interval total() const { return range_to_inf(0); }
  /// Is mu[0, inf) finite? (exact / certified / inconclusive)
  Verdict3 summable() const;
};

/// Computes the weights by the ratio recurrence (never raw products).
/// N must not exceed a finite state bound.
MuWeights mu_weights(const ChainSpec& spec, std::int64_t N);

/**
 * @brief A concrete finite birth-death chain on {0..N} with its stationary
 * law. Truncations use the reflecting rule (b_N = 0), which preserves the
 * mu-weights of the parent spec.
 */
struct FiniteChain {
  std::vector<double> a;       // a[0] = 0, a[i] = death rate at i
  std::vector<double> b;       // b[i] = birth rate at i, b[N] = 0
  std::vector<double> pi;      // stationary distribution, sums to 1
  std::vector<double> log_mu;  // unnormalized log weights, mu_0 = 1

  std::int64_t top() const { return static_cast<std::int64_t>(pi.size()) - 1; }
  std::size_t size() const { return pi.size(); }
};

/// Reflecting truncation onto {0..N}; throws if N exceeds a finite bound or
/// N < 1.
FiniteChain truncate(const ChainSpec& spec, std::int64_t N);

/// Finite chain directly from rate arrays: death = a_1..a_N, birth = b_0..b_{N-1}.
FiniteChain make_finite_chain(const std::vector<double>& death, const std::vector<double>& birth);

/**
 * @brief Outcome of the non-explosion test: the defining series
 * sum_k (b_k mu_k)^{-1} mu[0,k] (divergence means the minimal process is
 * honest) plus the companion total-mass clause.
 */
struct NonExplosionReport {
  Verdict3 verdict = Verdict3::inconclusive;  // non-explosion itself
  SeriesVerdict series;                       // the defining series
  SeriesVerdict mu_total;                     // sum_i mu_i
  /// Both clauses together (the standing assumption of the dual-formula
  /// machinery).
  Verdict3 full_condition() const;
};

NonExplosionReport check_nonexplosion(const ChainSpec& spec, std::int64_t horizon);

}  // namespace ergogap
