#include "cesaro/criteria.hpp"

#include <cmath>

#include "cesaro/log_math.hpp"

namespace cesaro {

namespace {

// Samples a log-scale quantity L(1..N) on the ladder, keeping the running max over every n.
struct SupTrace {
  std::vector<long> ladder;
  std::vector<double> values;
  std::vector<double> running;
};

template <typename F>
SupTrace trace_sup(long N, F&& quantity, long start = 1) {
  SupTrace t;
  t.ladder = geometric_ladder(N, start);
  double sup = kNegInf;
  std::size_t next = 0;
  for (long n = start; n <= N && next < t.ladder.size(); ++n) {
    const double q = quantity(n);
    sup = std::max(sup, q);
    if (t.ladder[next] == n) {
      t.values.push_back(q);
      t.running.push_back(sup);
      ++next;
    }
  }
  return t;
}

Verdict bounded_verdict(const SupTrace& t, const TrendTolerances& tol) {
  const auto cls = classify_sup(t.ladder, t.values, t.running, tol);
  auto samples = make_samples(t.ladder, t.running);
  Verdict v;
  switch (cls.trend) {
    case SupTrend::bounded:
      v = Verdict::holding(cls.label, std::move(samples));
      break;
    case SupTrend::unbounded:
      v = Verdict::failing({"n", static_cast<double>(cls.argmax)}, cls.label, std::move(samples));
      break;
    case SupTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason, cls.label, std::move(samples));
      break;
  }
  v.with("log_sup", cls.sup).with("tail_slope", cls.slope);
  return v;
}

template <typename Probe>
SearchResult search_l(int k, int lstart, int lmax, Probe&& probe) {
  if (lmax < lstart) throw std::invalid_argument("lmax must be at least " + std::to_string(lstart));
  SearchResult r;
  bool any_inconclusive = false;
  for (int l = lstart; l <= lmax; ++l) {
    Verdict v = probe(l);
    const bool ok = v.holds();
    any_inconclusive = any_inconclusive || v.is_inconclusive();
    r.probes.emplace_back(l, v);
    if (ok) {
      r.l = l;
      r.verdict = Verdict::holding("bounded for l = " + std::to_string(l), v.evidence);
      r.verdict.with("k", k).with("l", l).with("lmax", lmax);
      return r;
    }
  }
  if (any_inconclusive) {
    r.verdict = Verdict::inconclusive("no probed l gives a bounded quantity, growth not established for every l");
  } else {
    r.verdict = Verdict::failing({"k", static_cast<double>(k)}, "unbounded for every l <= " + std::to_string(lmax),
                                 r.probes.back().second.evidence);
  }
  r.verdict.with("k", k).with("lmax", lmax);
  return r;
}

Verdict decay_verdict(const std::vector<long>& ladder, const std::vector<double>& logq, const TrendTolerances& tol,
                      bool vanishing_holds) {
  const auto cls = classify_decay(ladder, logq, tol);
  std::vector<double> q;
  for (double l : logq) q.push_back(std::exp(l));
  auto samples = make_samples(ladder, q);
  const Witness w{"n", static_cast<double>(ladder.back())};
  Verdict v;
  switch (cls.trend) {
    case DecayTrend::vanishing:
      v = vanishing_holds ? Verdict::holding(cls.label, std::move(samples))
                          : Verdict::failing(w, cls.label, std::move(samples));
      break;
    case DecayTrend::limit:
    case DecayTrend::growing:
      v = vanishing_holds ? Verdict::failing(w, cls.label, std::move(samples))
                          : Verdict::holding(cls.label, std::move(samples));
      if (cls.trend == DecayTrend::limit) v.with("limit", cls.limit);
      break;
    case DecayTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason, cls.label, std::move(samples));
      break;
  }
  v.with("slope", cls.slope);
  return v;
}

}  // namespace

Verdict koethe_continuity_check(const LogWeightFamily& log_a, int k, int l, long N, const TrendTolerances& tol) {
  if (!(l > k && k >= 1)) throw std::invalid_argument("need l > k >= 1");
  LogSum inv_sum;
  const auto t = trace_sup(N, [&](long n) {
    inv_sum.add(-log_a(l, n));
    return (log_a(k, n) + inv_sum.value()) - std::log(static_cast<double>(n));
  });
  Verdict v = bounded_verdict(t, tol);
  v.with("k", k).with("l", l);
  return v;
}

SearchResult inverse_continuity_check(const AlphaSequence& seq, int k, int lmax, long N,
                                      const TrendTolerances& tol) {
  return search_l(k, k + 1, lmax, [&](int l) {
    const double c = 1.0 / k - 1.0 / l;
    return bounded_verdict(trace_sup(N, [&](long n) { return std::log(static_cast<double>(n)) - c * seq.value(n); }),
                           tol);
  });
}

SearchResult d_continuity_check(const AlphaSequence& seq, int k, int lmax, long N, const TrendTolerances& tol) {
  return search_l(k, k + 1, lmax, [&](int l) {
    return bounded_verdict(trace_sup(N,
                                     [&](long n) {
                                       return (seq.value(n + 1) / l - seq.value(n) / k) +
                                              std::log(static_cast<double>(n));
                                     }),
                           tol);
  });
}

Verdict noncompactness_witness(const AlphaSequence& seq, int k, long N, const TrendTolerances& tol) {
  const Verdict nuclear = nuclearity_check(seq, N, tol);
  if (!nuclear.holds())
    return Verdict::inconclusive("nuclearity not established; the unboundedness route assumes it");
  const double p = 1.0 / (2.0 * k);
  LogSum inv_sum;
  std::vector<double> lower;
  const auto t = trace_sup(N, [&](long n) {
    inv_sum.add(seq.value(n) / k);
    return (inv_sum.value() - seq.value(n) / (2.0 * k)) - std::log(static_cast<double>(n));
  });
  for (long n : t.ladder) lower.push_back(p * seq.value(n) - std::log(static_cast<double>(n)));
  const auto cls = classify_sup(t.ladder, t.values, t.running, tol);
  auto samples = make_samples(t.ladder, t.values);
  Verdict v;
  switch (cls.trend) {
    case SupTrend::unbounded:
      v = Verdict::holding("A_k unbounded: " + cls.label, std::move(samples));
      break;
    case SupTrend::bounded:
      v = Verdict::failing({"n", static_cast<double>(t.ladder.back())}, "A_k bounded: " + cls.label,
                           std::move(samples));
      break;
    case SupTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason, cls.label, std::move(samples));
      break;
  }
  v.with("k", k).with("log_A_last", t.values.back()).with("log_lower_bound_last", lower.back());
  return v;
}

Verdict banach_step_compactness(const AlphaSequence& seq, int k, long N, const TrendTolerances& tol) {
  const auto ladder = geometric_ladder(N);
  std::vector<double> logq;
  LogSum inv_sum;
  std::size_t next = 0;
  for (long n = 1; n <= N; ++n) {
    inv_sum.add(seq.value(n) / k);
    if (next < ladder.size() && ladder[next] == n) {
      logq.push_back((inv_sum.value() - seq.value(n) / k) - std::log(static_cast<double>(n)));
      ++next;
    }
  }
  Verdict v = decay_verdict(ladder, logq, tol, true);
  v.with("k", k);
  return v;
}

DeltaResult delta_continuity_check(const AlphaSequence& seq, int k, int lmax, long N, const TrendTolerances& tol) {
  if (lmax < k) throw std::invalid_argument("lmax must be >= k");
  DeltaResult out;
  const auto alpha = seq.values(N);
  const LogFactorials lf(N);
  const auto ladder = geometric_ladder(N);

  // Track 1: for every k' <= k look for l >= k' with a bounded binomial sum.
  const auto binomial_probe = [&](int kk, int l) {
    SupTrace t;
    t.ladder = ladder;
    for (long n : ladder) {
      LogSum s;
      for (long m = 1; m <= n; ++m)
        s.add(lf.binomial(n - 1, m - 1) + alpha[static_cast<std::size_t>(m - 1)] / l);
      t.values.push_back(s.value() - alpha[static_cast<std::size_t>(n - 1)] / kk);
    }
    return bounded_verdict(t, tol);
  };
  Verdict track1 = Verdict::holding("bounded for every k' <= " + std::to_string(k));
  for (int kk = 1; kk <= k; ++kk) {
    SearchResult r = search_l(kk, kk, lmax, [&](int l) { return binomial_probe(kk, l); });
    if (r.verdict.holds()) {
      track1.with("l_for_k" + std::to_string(kk), *r.l);
      continue;
    }
    track1 = r.verdict;
    track1.with("k", kk);
    break;
  }
  track1.with("lmax", lmax);

  std::vector<long> lad2 = geometric_ladder(N, 2);
  std::vector<double> logq;
  for (long n : lad2) logq.push_back(std::log(static_cast<double>(n)) - std::log(alpha[static_cast<std::size_t>(n - 1)]));
  Verdict track2 = decay_verdict(lad2, logq, tol, true);

  out.in_scope = nuclearity_check(seq, N, tol).holds();
  const std::string scope = out.in_scope ? "" : " (equivalence out of stated scope: space not nuclear)";
  if (track1.outcome == track2.outcome && !track1.is_inconclusive()) {
    out.verdict = track1.holds() ? Verdict::holding("binomial sums and n/alpha_n agree" + scope)
                                 : Verdict::failing(*track1.witness, "binomial sums and n/alpha_n agree" + scope);
  } else {
    out.verdict = Verdict::inconclusive("tracks disagree or undecided: binomial sums " +
                                            std::string(to_string(track1.outcome)) + ", n/alpha_n -> 0 " +
                                            std::string(to_string(track2.outcome)),
                                        "inconclusive" + scope);
  }
  out.verdict.with("k", k).with("lmax", lmax).with("in_scope", out.in_scope ? 1.0 : 0.0);
  out.binomial_track = std::move(track1);
  out.scalar_track = std::move(track2);
  return out;
}

long effective_resolution(const AlphaSequence& seq, long N) {
  if (seq.generator() == Generator::tower) return std::min(N, seq.default_resolution());
  return seq.resolution(N);
}

SpaceProfile classify_space(const AlphaSequence& seq, long requested, const ClassifyOptions& opt) {
  const long N = effective_resolution(seq, requested);
  const auto& tol = opt.trend;
  SpaceProfile p;
  p.alpha = seq.descriptor();
  p.resolution = N;
  p.K = opt.K;
  p.first_term_above_one = seq.first_term_above_one();
  p.nuclear = nuclearity_check(seq, N, tol);
  p.v_alpha = v_alpha(seq, N, tol);
  p.shift_stable = shift_stability_check(seq, N, tol);

  SkOptions sk;
  sk.trend = tol;
  p.s1_nonempty = sk_convergence(seq, 1, opt.s_cap, N, sk);
  if (p.s1_nonempty.holds()) {
    try {
      p.s0_1 = s0_estimate(seq, 1, N, opt.s0_tol, opt.s_cap, sk);
    } catch (const Error& e) {
      p.warnings.push_back(std::string("s0(1) estimate failed: ") + e.what());
    }
  }

  // Continuity of D and C^{-1}: every k up to K needs some l.
  const auto scan = [&](auto&& check) {
    Verdict agg = Verdict::holding("bounded for every k <= " + std::to_string(opt.K));
    bool undecided = false;
    for (int k = 1; k <= opt.K; ++k) {
      SearchResult r = check(k);
      if (r.verdict.fails()) {
        Verdict v = r.verdict;
        v.trend = "unbounded at k = " + std::to_string(k) + " for every probed l";
        return v;
      }
      if (r.verdict.is_inconclusive()) undecided = true;
      if (r.l) agg.with("l_for_k" + std::to_string(k), *r.l);
    }
    if (undecided) return Verdict::inconclusive("some k has no bounded l and no established growth");
    return agg;
  };
  const auto lmax = [&](int k) { return opt.lmax > 0 ? std::max(opt.lmax, k + 1) : default_lmax(k); };
  p.d_continuous = scan([&](int k) { return d_continuity_check(seq, k, lmax(k), N, tol); });
  p.inverse_continuous = scan([&](int k) { return inverse_continuity_check(seq, k, lmax(k), N, tol); });

  DeltaResult delta = delta_continuity_check(seq, opt.K, lmax(opt.K), N, tol);
  p.delta_continuous = delta.verdict;
  p.delta_binomial_track = delta.binomial_track;
  p.n_over_alpha_zero = delta.scalar_track;
  p.banach_step_compact = banach_step_compactness(seq, 1, N, tol);

  if (!p.first_term_above_one) p.warnings.push_back("alpha_1 <= 1: outside the usual normalisation alpha_n > 1");
  const auto decided = [](const Verdict& v) { return !v.is_inconclusive(); };
  if (decided(p.inverse_continuous) && decided(p.nuclear) && p.inverse_continuous.holds() != p.nuclear.holds())
    p.warnings.push_back("inverse continuity and nuclearity disagree");
  if (decided(p.d_continuous) && decided(p.nuclear) && decided(p.shift_stable) &&
      p.d_continuous.holds() != (p.nuclear.holds() && p.shift_stable.holds()))
    p.warnings.push_back("D-continuity disagrees with nuclear and shift stable");
  if (p.v_alpha.verdict.holds() && p.nuclear.fails())
    p.warnings.push_back("v(alpha) > 0 but nuclearity fails");
  if (p.nuclear.holds() && p.s1_nonempty.holds()) p.warnings.push_back("nuclear space with S_1 nonempty");
  if (delta.verdict.is_inconclusive()) p.warnings.push_back("Delta-continuity tracks disagree or are undecided");
  return p;
}

}  // namespace cesaro
