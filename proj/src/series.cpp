#include "ergogap/series.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace ergogap {

const char* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::holds: return "holds";
    case Verdict3::fails: return "fails";
    case Verdict3::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Cert c) {
  switch (c) {
    case Cert::exact: return "exact";
    case Cert::closed_family: return "closed-family";
    case Cert::ratio_monotone: return "ratio-monotone";
    case Cert::none: return "none";
  }
  return "?";
}

const char* to_string(SeriesVerdict::Kind k) {
  switch (k) {
    case SeriesVerdict::Kind::converges: return "converges";
    case SeriesVerdict::Kind::diverges: return "diverges";
    case SeriesVerdict::Kind::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Kind = SeriesVerdict::Kind;

constexpr std::size_t kMinEvidence = 12;  // ratio points needed for any claim

bool nonincreasing(std::span<const double> v, double atol) {
  for (std::size_t k = 0; k + 1 < v.size(); ++k)
    if (v[k + 1] > v[k] + atol) return false;
  return true;
}

bool nondecreasing(std::span<const double> v, double atol) {
  for (std::size_t k = 0; k + 1 < v.size(); ++k)
    if (v[k + 1] < v[k] - atol) return false;
  return true;
}

// Window = the tail half of the ratio array; that is where the asymptotic
// regime lives when the caller swept far enough.
struct RatioWindow {
  std::span<const double> lam;  // log ratios over window
  std::int64_t first_index;     // absolute index of lam.front()
  bool ok = false;
};

RatioWindow window_of(const LogSeq& seq) {
  RatioWindow w;
  const std::size_t m = seq.logr.size();
  if (m < kMinEvidence) return w;
  const std::size_t w0 = m / 2;
  w.lam = std::span<const double>(seq.logr).subspan(w0);
  w.first_index = seq.n0 + static_cast<std::int64_t>(w0);
  w.ok = true;
  return w;
}

double raabe_p(std::int64_t n, double lam) { return static_cast<double>(n) * std::expm1(lam); }

}  // namespace

TailEnclosure certify_sum_tail(const LogSeq& seq) {
  TailEnclosure out;
  out.value = {0.0, kInf};
  const RatioWindow w = window_of(seq);
  if (!w.ok) {
    out.note = "window too short";
    return out;
  }
  for (double x : w.lam)
    if (!std::isfinite(x)) {
      out.note = "non-finite ratio in window";
      return out;
    }

  const double lam_noise = 1e-12;
  const double lam_end = w.lam.back();
  const double logt_end = seq.logv.back();
  const std::int64_t n_end = seq.last_index();

  const bool lam_down = nonincreasing(w.lam, lam_noise);
  const bool lam_up = nondecreasing(w.lam, lam_noise);

  // Geometric decay: ratios nonincreasing and below 1.
  if (lam_down && lam_end < -1e-9) {
    const double log_tail_hi = logt_end + lam_end - std::log1p(-std::exp(lam_end));
    out.kind = Kind::converges;
    out.value = {0.0, std::exp(log_tail_hi) * (1.0 + 1e-12)};
    out.cert = Cert::ratio_monotone;
    out.note = "geometric ratio";
    return out;
  }

  // Geometric growth (or flat terms): nondecreasing ratio at or above 1.
  if (lam_up && lam_end >= -1e-13 && logt_end > -700.0) {
    out.kind = Kind::diverges;
    out.cert = Cert::ratio_monotone;
    out.note = "terms not vanishing";
    return out;
  }

  // Raabe exponent p_n = n(t_{n+1}/t_n - 1); terms behave like n^p.
  std::vector<double> p(w.lam.size());
  for (std::size_t k = 0; k < w.lam.size(); ++k)
    p[k] = raabe_p(w.first_index + static_cast<std::int64_t>(k), w.lam[k]);
  const double p_end = p.back();
  const double p_mid = p[p.size() / 2];
  const double p_atol = 1e-7 * (1.0 + std::fabs(p_end)) + 1e-14 * static_cast<double>(n_end);
  const bool p_down = nonincreasing(p, p_atol);
  const bool p_up = nondecreasing(p, p_atol);
  const bool p_stable = std::fabs(p_end - p_mid) <= 0.01 * std::max(1.0, std::fabs(p_end));

  // Convergent polynomial decay: future exponents stay <= p_ub < -1, so
  // t_n <= t_end ((n+1)/(n_end+1))^{p_ub} and an integral comparison bounds
  // the tail by t_end (n_end+1)/(-p_ub-1).
  auto poly_tail = [&](double p_ub, Cert cert, const char* note) {
    const double log_tail_hi =
        logt_end + std::log(static_cast<double>(n_end + 1) / (-p_ub - 1.0));
    out.kind = Kind::converges;
    out.value = {0.0, std::exp(log_tail_hi) * (1.0 + 1e-12)};
    out.cert = cert;
    out.note = note;
    return out;
  };

  if (p_down && p_end + p_atol < -1.01)
    return poly_tail(p_end + p_atol, Cert::ratio_monotone, "polynomial ratio, exponent nonincreasing");
  if (p_stable && p_end + 10.0 * std::fabs(p_end - p_mid) < -1.02)
    return poly_tail(p_end + 10.0 * std::fabs(p_end - p_mid), Cert::closed_family,
                     "polynomial ratio, exponent stabilized");

  // Divergence by exponent.
  if (p_up && p_end > -0.99 && logt_end > -700.0) {
    out.kind = Kind::diverges;
    out.cert = Cert::ratio_monotone;
    out.note = "exponent above -1, nondecreasing";
    return out;
  }
  if (p_stable && p_end > -0.98 && logt_end > -700.0) {
    out.kind = Kind::diverges;
    out.cert = Cert::closed_family;
    out.note = "exponent stabilized above -1";
    return out;
  }

  // Gauss boundary: p -> -1 with bounded second-order coefficient diverges.
  if (p_stable && std::fabs(p_end + 1.0) <= 0.02 && logt_end > -700.0) {
    std::vector<double> c(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      c[k] = static_cast<double>(w.first_index + static_cast<std::int64_t>(k)) * (p[k] + 1.0);
    const double c_end = c.back();
    const double c_mid = c[c.size() / 2];
    if (std::fabs(c_end) <= 1e3 && std::fabs(c_end - c_mid) <= 0.1 * std::max(1.0, std::fabs(c_end))) {
      out.kind = Kind::diverges;
      out.cert = Cert::closed_family;
      out.note = "Gauss boundary (p -> -1, bounded correction)";
      return out;
    }
  }

  out.note = "ratio classification failed";
  return out;
}

SeriesVerdict analyze_series(const LogSeq& seq) {
  SeriesVerdict out;
  out.horizon = seq.last_index();
  LogSumAcc acc;
  for (double lv : seq.logv) acc.add_log(lv);
  const double partial = acc.empty() ? 0.0 : std::exp(acc.log_value());
  const TailEnclosure tail = certify_sum_tail(seq);
  out.cert = tail.cert;
  out.note = tail.note;
  switch (tail.kind) {
    case Kind::converges:
      out.kind = Kind::converges;
      out.value = {partial * (1.0 - 1e-12), (partial + tail.value.hi) * (1.0 + 1e-12)};
      break;
    case Kind::diverges:
      out.kind = Kind::diverges;
      out.value = {partial, kInf};
      break;
    case Kind::inconclusive:
      out.kind = Kind::inconclusive;
      out.value = {partial, kInf};
      break;
  }
  return out;
}

namespace {

// Increment sequence of an eventually monotone nonnegative sequence, in log
// space: for rising s, d_k = s_{k+1} - s_k = s_k (e^{lam_k} - 1).
// sign = +1 extracts rises (lam > 0), sign = -1 extracts falls (lam < 0).
bool increment_seq(const LogSeq& s, int sign, LogSeq& d) {
  const std::size_t m = s.logr.size();
  if (m < 2 * kMinEvidence) return false;
  const std::size_t w0 = m / 2;
  d.n0 = s.n0 + static_cast<std::int64_t>(w0);
  d.logv.clear();
  d.logr.clear();
  for (std::size_t k = w0; k < m; ++k) {
    const double lam = sign > 0 ? s.logr[k] : -s.logr[k];
    if (!(lam > 0.0)) return false;  // not strictly monotone in the window
    // log |s_{k+1} - s_k| = log s_k + log|e^{±lam} - 1|
    const double logd = sign > 0 ? s.logv[k] + std::log(std::expm1(lam))
                                 : s.logv[k] + std::log(-std::expm1(-lam));
    d.logv.push_back(logd);
  }
  for (std::size_t k = 0; k + 1 < d.logv.size(); ++k) d.logr.push_back(d.logv[k + 1] - d.logv[k]);
  return true;
}

}  // namespace

SeriesVerdict analyze_sup(const LogSeq& seq) {
  SeriesVerdict out;
  out.horizon = seq.last_index();
  double logmax = -kInf;
  for (double lv : seq.logv) logmax = std::max(logmax, lv);
  const double observed = std::exp(logmax);
  out.value = {observed, kInf};

  const RatioWindow w = window_of(seq);
  if (!w.ok) {
    out.note = "window too short";
    return out;
  }

  const double lam_noise = 1e-12 + 1e-12 * std::fabs(w.lam.back());
  bool all_down = true, all_up = true;
  for (double lam : w.lam) {
    if (lam > lam_noise) all_down = false;
    if (lam < -lam_noise) all_up = false;
  }

  if (all_down) {  // values eventually nonincreasing: sup attained in range
    out.kind = Kind::converges;
    out.value = {observed * (1.0 - 1e-12), observed * (1.0 + 1e-12)};
    out.cert = Cert::ratio_monotone;
    out.note = "eventually nonincreasing";
    return out;
  }

  if (all_up) {
    LogSeq d;
    if (increment_seq(seq, +1, d)) {
      const TailEnclosure t = certify_sum_tail(d);
      const double s_end = std::exp(seq.logv.back());
      if (t.kind == Kind::converges) {
        out.kind = Kind::converges;
        out.value = {observed * (1.0 - 1e-12), (s_end + t.value.hi) * (1.0 + 1e-12)};
        out.cert = t.cert;
        out.note = "rising, increments summable: " + t.note;
        return out;
      }
      if (t.kind == Kind::diverges) {
        out.kind = Kind::diverges;
        out.cert = t.cert;
        out.note = "rising, increments not summable: " + t.note;
        return out;
      }
      out.note = "rising, increment tail inconclusive: " + t.note;
      return out;
    }
    // plateau: rises are below noise
    out.kind = Kind::converges;
    out.value = {observed * (1.0 - 1e-12), observed * (1.0 + 1e-9)};
    out.cert = Cert::ratio_monotone;
    out.note = "plateau";
    return out;
  }

  out.note = "no monotone trend in window";
  return out;
}

SeriesVerdict analyze_limit(const LogSeq& seq) {
  SeriesVerdict out;
  out.horizon = seq.last_index();
  const RatioWindow w = window_of(seq);
  const double s_end = std::exp(seq.logv.back());
  out.value = {0.0, kInf};
  if (!w.ok) {
    out.note = "window too short";
    return out;
  }

  const double lam_noise = 1e-12 + 1e-12 * std::fabs(w.lam.back());
  bool all_down = true, all_up = true;
  for (double lam : w.lam) {
    if (lam > lam_noise) all_down = false;
    if (lam < -lam_noise) all_up = false;
  }

  if (all_down && all_up) {  // plateau within noise
    out.kind = Kind::converges;
    out.value = {s_end * (1.0 - 1e-9), s_end * (1.0 + 1e-9)};
    out.cert = Cert::ratio_monotone;
    out.note = "plateau";
    return out;
  }

  if (all_down) {
    // Nonnegative and eventually nonincreasing: limit in [0, s_end]; a
    // summable decrement tail sharpens the lower end.
    out.kind = Kind::converges;
    out.cert = Cert::ratio_monotone;
    out.value = {0.0, s_end * (1.0 + 1e-12)};
    out.note = "eventually nonincreasing";
    LogSeq d;
    if (increment_seq(seq, -1, d)) {
      const TailEnclosure t = certify_sum_tail(d);
      if (t.kind == Kind::converges) {
        out.value.lo = std::max(0.0, s_end - t.value.hi) * (1.0 - 1e-12);
        out.note = "eventually nonincreasing, decrements summable";
      }
    }
    return out;
  }

  if (all_up) {
    LogSeq d;
    if (increment_seq(seq, +1, d)) {
      const TailEnclosure t = certify_sum_tail(d);
      if (t.kind == Kind::converges) {
        out.kind = Kind::converges;
        out.value = {s_end * (1.0 - 1e-12), (s_end + t.value.hi) * (1.0 + 1e-12)};
        out.cert = t.cert;
        out.note = "rising, increments summable: " + t.note;
        return out;
      }
      if (t.kind == Kind::diverges) {
        out.kind = Kind::diverges;
        out.value = {s_end, kInf};
        out.cert = t.cert;
        out.note = "rising without bound: " + t.note;
        return out;
      }
    }
    out.value = {s_end, kInf};
    out.note = "rising, increment tail inconclusive";
    return out;
  }

  out.note = "no monotone trend in window";
  return out;
}

}  // namespace ergogap
