#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ergogap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval enclosure [lo, hi]; endpoints may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

enum class Verdict3 { holds, fails, inconclusive };

const char* to_string(Verdict3 v);

/// How a tail/limit claim was certified.
/// - exact:         finite range, no continuation assumption.
/// - closed_family: ratio limit classified (geometric ratio, Raabe exponent,
///                  Gauss boundary) with stabilization evidence.
/// - ratio_monotone: tail bounded via monotone continuation of observed
///                  ratios/increments.
/// - none:          no certification; verdict is inconclusive.
enum class Cert { exact, closed_family, ratio_monotone, none };

const char* to_string(Cert c);

/// Three-valued outcome of a series / sup / limit evaluation.
struct SeriesVerdict {
  enum class Kind { converges, diverges, inconclusive };
  Kind kind = Kind::inconclusive;
  Interval value{0.0, kInf};  // sum, sup, or limit enclosure
  std::int64_t horizon = 0;
  Cert cert = Cert::none;
  std::string note;

  bool converges() const { return kind == Kind::converges; }
  bool diverges() const { return kind == Kind::diverges; }
};

const char* to_string(SeriesVerdict::Kind k);

/// Accumulates log(sum of exp(x_k)) without overflow.
class LogSumAcc {
 public:
  void add_log(double logx) {
    if (logx == -kInf) return;
    if (logx <= max_) {
      sum_ += std::exp(logx - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - logx) + 1.0;
      max_ = logx;
    }
  }
  double log_value() const {
    if (max_ == -kInf) return -kInf;
    return max_ + std::log(sum_);
  }
  bool empty() const { return max_ == -kInf; }

 private:
  double max_ = -kInf;
  double sum_ = 0.0;
};

/**
 * @brief A positive sequence t_{n0}, t_{n0+1}, ... in log space.
 *
 * logv[k] = log t_{n0+k}. logr[k] = log(t_{n0+k+1}/t_{n0+k}) must be supplied
 * by the producer computed from the term's multiplicative structure, so its
 * absolute error stays at machine-epsilon level even when |logv| is 1e6.
 * The ratio array has one entry fewer than logv.
 */
struct LogSeq {
  std::int64_t n0 = 0;
  std::vector<double> logv;
  std::vector<double> logr;

  std::size_t size() const { return logv.size(); }
  std::int64_t last_index() const { return n0 + static_cast<std::int64_t>(logv.size()) - 1; }
};

/// Enclosure of the sum of the continuation sum_{n > last_index} t_n.
struct TailEnclosure {
  SeriesVerdict::Kind kind = SeriesVerdict::Kind::inconclusive;
  Interval value{0.0, kInf};  // lo is always a valid lower bound (0 for sums)
  Cert cert = Cert::none;
  std::string note;
};

/// Certifies the tail sum beyond the end of the probe window. The window
/// should cover the asymptotic regime (callers pass the tail half of their
/// sweep). Never throws; uncertifiable tails come back inconclusive.
TailEnclosure certify_sum_tail(const LogSeq& seq);

/// Sum of a positive series swept to `seq.last_index()`:
/// converges -> enclosure of the full sum; diverges -> [partial, inf).
SeriesVerdict analyze_series(const LogSeq& seq);

/// Supremum of a nonnegative sequence: converges means "sup finite" with an
/// enclosure; diverges means certified unbounded.
SeriesVerdict analyze_sup(const LogSeq& seq);

/// Limit (of an eventually monotone nonnegative sequence): converges carries
/// an enclosure of the limit; diverges means the sequence is certified to
/// grow without bound.
SeriesVerdict analyze_limit(const LogSeq& seq);

}  // namespace ergogap
