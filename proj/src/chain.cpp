#include "ergogap/chain.hpp"

#include <algorithm>
#include <cmath>

#include "ergogap/errors.hpp"

namespace ergogap {

namespace {

double eval_rate(const ChainSpec::Rates& r, std::int64_t i, const char* what) {
  double v;
  if (std::holds_alternative<RateExpr>(r)) {
    v = std::get<RateExpr>(r)(i);
  } else {
    const auto& arr = std::get<std::vector<double>>(r);
    v = arr[static_cast<std::size_t>(i)];
  }
  if (!(v > 0.0) || !std::isfinite(v))
    throw SpecError(std::string(what) + " rate at i=" + std::to_string(i) +
                    " is not a positive finite real (" + std::to_string(v) + ")");
  return v;
}

}  // namespace

ChainSpec::ChainSpec(Rates b, Rates d, std::optional<std::int64_t> top)
    : birth_(std::move(b)), death_(std::move(d)), top_(top) {}

ChainSpec ChainSpec::infinite(RateExpr birth, RateExpr death) {
  return ChainSpec(std::move(birth), std::move(death), std::nullopt);
}

ChainSpec ChainSpec::finite(RateExpr birth, RateExpr death, std::int64_t top_state) {
  if (top_state < 1) throw SpecError("finite chain needs at least states {0,1}");
  return ChainSpec(std::move(birth), std::move(death), top_state);
}

ChainSpec ChainSpec::finite(std::vector<double> birth, std::vector<double> death) {
  if (birth.empty() || birth.size() != death.size())
    throw SpecError("rate arrays must be non-empty and of equal length");
  const auto n = static_cast<std::int64_t>(birth.size());
  // death array holds a_1..a_n; shift so death(i) indexes naturally.
  std::vector<double> shifted(death.size() + 1, 0.0);
  std::copy(death.begin(), death.end(), shifted.begin() + 1);
  return ChainSpec(std::move(birth), std::move(shifted), n);
}

double ChainSpec::birth(std::int64_t i) const {
  if (i < 0 || (top_ && i > *top_ - 1))
    throw SpecError("birth rate index " + std::to_string(i) + " out of range");
  return eval_rate(birth_, i, "birth");
}

double ChainSpec::death(std::int64_t i) const {
  if (i < 1 || (top_ && i > *top_))
    throw SpecError("death rate index " + std::to_string(i) + " out of range");
  return eval_rate(death_, i, "death");
}

std::int64_t ChainSpec::top_state() const {
  if (!top_) throw SpecError("chain has infinite state space");
  return *top_;
}

Interval MuWeights::range_to_inf(std::int64_t k) const {
  const double part = std::exp(log_suffix[static_cast<std::size_t>(k)]);
  if (finite || (tail.kind == SeriesVerdict::Kind::converges))
    return {part * (1.0 - 1e-12) + tail.value.lo, (part + tail.value.hi) * (1.0 + 1e-12)};
  return {part, kInf};  // divergent or uncertified tail
}

Verdict3 MuWeights::summable() const {
  if (finite || tail.kind == SeriesVerdict::Kind::converges) return Verdict3::holds;
  if (tail.kind == SeriesVerdict::Kind::diverges) return Verdict3::fails;
  return Verdict3::inconclusive;
}

MuWeights mu_weights(const ChainSpec& spec, std::int64_t N) {
  if (N < 1) throw SpecError("mu_weights: need N >= 1");
  if (spec.is_finite() && N > spec.top_state())
    throw SpecError("mu_weights: N exceeds the state bound");
  MuWeights w;
  w.N = N;
  w.finite = spec.is_finite() && N == spec.top_state();
  const auto n = static_cast<std::size_t>(N);
  w.log_mu.resize(n + 1);
  w.log_b.resize(n + 1);
  w.log_a.resize(n + 1);
  w.log_prefix.resize(n + 1);
  w.log_suffix.resize(n + 1);
  w.log_phi.resize(n + 1);

  w.log_mu[0] = 0.0;  // mu_0 = 1
  w.log_a[0] = -kInf;
  for (std::size_t i = 0; i + 1 <= n; ++i) {
    w.log_b[i] = std::log(spec.birth(static_cast<std::int64_t>(i)));
    w.log_a[i + 1] = std::log(spec.death(static_cast<std::int64_t>(i + 1)));
    w.log_mu[i + 1] = w.log_mu[i] + w.log_b[i] - w.log_a[i + 1];
  }
  // b_N exists only when the spec continues past N.
  w.log_b[n] = (!spec.is_finite() || spec.top_state() > N)
                   ? std::log(spec.birth(N))
                   : -kInf;

  LogSumAcc pre;
  for (std::size_t i = 0; i <= n; ++i) {
    pre.add_log(w.log_mu[i]);
    w.log_prefix[i] = pre.log_value();
  }
  LogSumAcc suf;
  for (std::size_t i = n + 1; i-- > 0;) {
    suf.add_log(w.log_mu[i]);
    w.log_suffix[i] = suf.log_value();
  }
  LogSumAcc phi;
  w.log_phi[0] = -kInf;
  for (std::size_t i = 1; i <= n; ++i) {
    phi.add_log(-(w.log_mu[i - 1] + w.log_b[i - 1]));
    w.log_phi[i] = phi.log_value();
  }

  if (w.finite) {
    w.tail = {SeriesVerdict::Kind::converges, {0.0, 0.0}, Cert::exact, "finite chain"};
  } else {
    // Probe window over the swept tail half; ratios straight from the rates.
    LogSeq probe;
    probe.n0 = N / 2;
    for (std::int64_t i = N / 2; i <= N; ++i) probe.logv.push_back(w.log_mu[static_cast<std::size_t>(i)]);
    for (std::int64_t i = N / 2; i < N; ++i)
      probe.logr.push_back(w.log_b[static_cast<std::size_t>(i)] - w.log_a[static_cast<std::size_t>(i) + 1]);
    w.tail = certify_sum_tail(probe);
  }
  return w;
}

FiniteChain truncate(const ChainSpec& spec, std::int64_t N) {
  if (N < 1) throw SpecError("truncate: need N >= 1");
  if (spec.is_finite() && N > spec.top_state())
    throw SpecError("truncate: N exceeds the state bound");
  const MuWeights w = mu_weights(spec, N);
  FiniteChain c;
  const auto n = static_cast<std::size_t>(N);
  c.a.assign(n + 1, 0.0);
  c.b.assign(n + 1, 0.0);
  c.pi.assign(n + 1, 0.0);
  c.log_mu = w.log_mu;
  for (std::size_t i = 1; i <= n; ++i) c.a[i] = spec.death(static_cast<std::int64_t>(i));
  for (std::size_t i = 0; i < n; ++i) c.b[i] = spec.birth(static_cast<std::int64_t>(i));
  const double logz = w.log_prefix[n];
  for (std::size_t i = 0; i <= n; ++i) c.pi[i] = std::exp(w.log_mu[i] - logz);
  return c;
}

FiniteChain make_finite_chain(const std::vector<double>& death, const std::vector<double>& birth) {
  return truncate(ChainSpec::finite(birth, death), static_cast<std::int64_t>(birth.size()));
}

Verdict3 NonExplosionReport::full_condition() const {
  const bool ne_holds = verdict == Verdict3::holds;
  const bool mu_fin = mu_total.converges();
  if (ne_holds && mu_fin) return Verdict3::holds;
  if (verdict == Verdict3::fails || mu_total.diverges()) return Verdict3::fails;
  return Verdict3::inconclusive;
}

NonExplosionReport check_nonexplosion(const ChainSpec& spec, std::int64_t horizon) {
  NonExplosionReport rep;
  if (spec.is_finite()) {
    rep.verdict = Verdict3::holds;
    rep.series.kind = SeriesVerdict::Kind::diverges;
    rep.series.cert = Cert::exact;
    rep.series.note = "finite state space";
    rep.mu_total.kind = SeriesVerdict::Kind::converges;
    rep.mu_total.cert = Cert::exact;
    const MuWeights w = mu_weights(spec, spec.top_state());
    rep.mu_total.value = w.total();
    return rep;
  }
  const MuWeights w = mu_weights(spec, horizon);

  // Terms u_k = (b_k mu_k)^{-1} mu[0,k]; ratio assembled from rate logs plus
  // the prefix-sum increment so its absolute error stays tiny.
  LogSeq u;
  u.n0 = 0;
  const auto H = static_cast<std::size_t>(horizon);
  u.logv.reserve(H + 1);
  for (std::size_t k = 0; k <= H; ++k)
    u.logv.push_back(w.log_prefix[k] - w.log_b[k] - w.log_mu[k]);
  for (std::size_t k = 0; k < H; ++k) {
    const double prefix_step = std::log1p(std::exp(w.log_mu[k + 1] - w.log_prefix[k]));
    u.logr.push_back(prefix_step + (w.log_b[k] + w.log_mu[k]) - (w.log_b[k + 1] + w.log_mu[k + 1]));
  }
  rep.series = analyze_series(u);
  switch (rep.series.kind) {
    case SeriesVerdict::Kind::diverges: rep.verdict = Verdict3::holds; break;
    case SeriesVerdict::Kind::converges: rep.verdict = Verdict3::fails; break;
    case SeriesVerdict::Kind::inconclusive: rep.verdict = Verdict3::inconclusive; break;
  }

  LogSeq m;
  m.n0 = 0;
  m.logv.assign(w.log_mu.begin(), w.log_mu.end());
  for (std::size_t k = 0; k < H; ++k) m.logr.push_back(w.log_b[k] - w.log_a[k + 1]);
  rep.mu_total = analyze_series(m);
  return rep;
}

}  // namespace ergogap
