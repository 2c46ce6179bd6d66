#include "cesaro/spectral.hpp"

#include <cmath>

#include "cesaro/log_math.hpp"

namespace cesaro {

SetDescriptor make_set(SetKind kind) {
  switch (kind) {
    case SetKind::sigma:
      return {kind, "{1/m : m in N}"};
    case SetKind::sigma0:
      return {kind, "{0} U {1/m : m in N}"};
    case SetKind::one:
      return {kind, "{1}"};
    case SetKind::disc_sandwich:
      return {kind, "D(1) U {1} <= sigma <= closure(D(1))"};
    case SetKind::closed_disc:
      return {kind, "closure(D(1))"};
    case SetKind::within_closed_disc:
      return {kind, "{1/m : m in N} <= sigma <= closure(D(1))"};
    case SetKind::undetermined:
      return {kind, "not determined"};
  }
  return {SetKind::undetermined, "not determined"};
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::inside:
      return "inside";
    case Membership::outside:
      return "outside";
    case Membership::boundary:
      return "boundary";
    case Membership::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

Membership contains(const SetDescriptor& s, Complex lambda, double band) {
  const auto pole = nearest_pole(lambda);
  const bool in_sigma = pole.m >= 1 && pole.distance <= band;
  const bool near_zero = std::abs(lambda) <= band;
  const double d = std::abs(lambda - Complex(0.5, 0.0)) - 0.5;  // signed distance to the circle |z - 1/2| = 1/2
  switch (s.kind) {
    case SetKind::sigma:
      if (in_sigma) return Membership::inside;
      return near_zero ? Membership::boundary : Membership::outside;
    case SetKind::sigma0:
      return in_sigma || near_zero ? Membership::inside : Membership::outside;
    case SetKind::one:
      return std::abs(lambda - 1.0) <= band ? Membership::inside : Membership::outside;
    case SetKind::closed_disc:
      if (d < -band) return Membership::inside;
      return d <= band ? Membership::boundary : Membership::outside;
    case SetKind::disc_sandwich:
      if (d < -band || std::abs(lambda - 1.0) <= band) return Membership::inside;
      return d <= band ? Membership::boundary : Membership::outside;
    case SetKind::within_closed_disc:
      if (in_sigma) return Membership::inside;
      return d > band ? Membership::outside : Membership::undetermined;
    case SetKind::undetermined:
      return Membership::undetermined;
  }
  return Membership::undetermined;
}

SpectrumReport predict_spectra(const SpaceProfile& p) {
  SpectrumReport r;
  r.hypotheses = {{"nuclear", p.nuclear}, {"v_alpha_positive", p.v_alpha.verdict}, {"s1_nonempty", p.s1_nonempty}};
  if (p.s0_1) r.discs.push_back({1, *p.s0_1, disc_for(p.s0_1->midpoint())});

  if (p.nuclear.holds()) {
    r.sigma_pt = make_set(SetKind::sigma);
    r.sigma = make_set(SetKind::sigma);
    if (p.v_alpha.verdict.holds()) {
      r.sigma_star = make_set(SetKind::sigma0);
    } else {
      r.sigma_star = make_set(SetKind::undetermined);
      r.notes.push_back(p.v_alpha.verdict.fails() ? "v(alpha) = 0: sigma* not determined by the available results"
                                                  : "hypothesis unverified: v(alpha) > 0 undecided");
    }
    return r;
  }
  if (p.nuclear.fails()) {
    r.sigma_pt = make_set(SetKind::one);
    if (p.s1_nonempty.holds()) {
      r.sigma = make_set(SetKind::disc_sandwich);
      r.sigma_star = make_set(SetKind::closed_disc);
      r.notes.push_back("whether the sandwich for sigma is an equality is open");
    } else {
      r.sigma = make_set(SetKind::within_closed_disc);
      r.sigma_star = make_set(SetKind::undetermined);
      if (p.s1_nonempty.is_inconclusive()) r.notes.push_back("hypothesis unverified: S_1 emptiness undecided");
      else r.notes.push_back("non-nuclear with S_1 empty: only the universal bound is known");
    }
    return r;
  }
  r.sigma_pt = make_set(SetKind::undetermined);
  r.sigma = make_set(SetKind::within_closed_disc);
  r.sigma_star = make_set(SetKind::undetermined);
  r.notes.push_back("hypothesis unverified: nuclearity undecided at this resolution");
  return r;
}

Verdict eigenvector_membership(const AlphaSequence& seq, long m, int K, long N, const TrendTolerances& tol) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  N = effective_resolution(seq, N);
  if (m == 1) {
    Verdict v = Verdict::holding("x = 1 and every weight tends to 0");
    v.with("m", 1).with("K", K);
    return v;
  }
  const auto ladder = geometric_ladder(N, m);
  for (int k = 1; k <= K; ++k) {
    std::vector<double> logq;
    for (long n : ladder) logq.push_back(log_binomial(n - 1, m - 1) - seq.value(n) / k);
    const auto cls = classify_decay(ladder, logq, tol);
    std::vector<double> q;
    for (double l : logq) q.push_back(std::exp(l));
    if (cls.trend == DecayTrend::vanishing) continue;
    Verdict v;
    if (cls.trend == DecayTrend::inconclusive) {
      v = Verdict::inconclusive("k = " + std::to_string(k) + ": " + cls.reason, cls.label, make_samples(ladder, q));
    } else {
      v = Verdict::failing({"k", static_cast<double>(k)}, cls.label, make_samples(ladder, q));
      if (cls.trend == DecayTrend::limit) v.with("limit", cls.limit);
    }
    v.with("m", static_cast<double>(m)).with("k", k);
    return v;
  }
  Verdict v = Verdict::holding("w_k(n)|x_n| -> 0 for every k <= " + std::to_string(K));
  v.with("m", static_cast<double>(m)).with("K", K);
  return v;
}

Verdict verify_resolvent_point(const AlphaSequence& seq, Complex lambda, int k, long N, const TrendTolerances& tol,
                               int columns) {
  check_pole(lambda);
  N = effective_resolution(seq, N);
  const WeightSystem w(seq);
  const auto ladder = geometric_ladder(N, 2);
  std::vector<std::vector<double>> col(static_cast<std::size_t>(columns));
  std::vector<double> row_sums;
  for (long n : ladder) {
    const auto row = e_row(lambda, n);
    const double lwn = w.log_weight(k, n);
    LogSum s;
    for (long m = 1; m < n; ++m) {
      const double le = row[static_cast<std::size_t>(m - 1)].log_abs + lwn - w.log_weight(k + 1, m);
      s.add(le);
      if (m <= columns) col[static_cast<std::size_t>(m - 1)].push_back(le);
    }
    row_sums.push_back(s.value());
  }

  const auto rows = classify_sup(ladder, row_sums, {}, tol);

  // (a) columns tend to zero
  for (int m = 1; m <= columns; ++m) {
    const auto& c = col[static_cast<std::size_t>(m - 1)];
    const std::vector<long> sub(ladder.end() - static_cast<long>(c.size()), ladder.end());
    const auto cls = classify_decay(sub, c, tol);
    if (cls.trend == DecayTrend::vanishing) continue;
    std::vector<double> q;
    for (double l : c) q.push_back(std::exp(l));
    Verdict v = cls.trend == DecayTrend::inconclusive
                    ? Verdict::inconclusive("column " + std::to_string(m) + ": " + cls.reason, cls.label,
                                            make_samples(sub, q))
                    : Verdict::failing({"column", static_cast<double>(m)}, "column does not tend to 0: " + cls.label,
                                       make_samples(sub, q));
    v.with("k", k).with("log_row_sum_sup", rows.sup).with("row_sum_slope", rows.slope);
    return v;
  }

  // (b) absolute row sums bounded
  const auto& cls = rows;
  std::vector<double> q;
  for (double l : row_sums) q.push_back(std::exp(l));
  Verdict v;
  switch (cls.trend) {
    case SupTrend::bounded:
      v = Verdict::holding("columns -> 0, row sums " + cls.label, make_samples(ladder, q));
      break;
    case SupTrend::unbounded:
      v = Verdict::failing({"n", static_cast<double>(cls.argmax)}, "row sums " + cls.label, make_samples(ladder, q));
      break;
    case SupTrend::inconclusive:
      v = Verdict::inconclusive("row sums: " + cls.reason, cls.label, make_samples(ladder, q));
      break;
  }
  v.with("k", k).with("log_row_sum_sup", cls.sup).with("row_sum_slope", cls.slope);
  return v;
}

EnvelopeFit boun_bounds_fit(Complex lambda, long N, const TrendTolerances& tol) {
  check_pole(lambda);
  constexpr long kFirstRow = 10;
  if (N <= kFirstRow) throw std::invalid_argument("envelope fit needs N > 10");
  const double a = (1.0 / lambda).real();
  const auto ladder = geometric_ladder(N, kFirstRow);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<double> spread;
  std::size_t next = 0;
  for (long n = kFirstRow; n <= N; ++n) {
    const auto row = e_row(lambda, n);
    const double ln = (1.0 - a) * std::log(static_cast<double>(n));
    for (long m = 1; m < n; ++m) {
      const double env = ln + a * std::log(static_cast<double>(m)) + row[static_cast<std::size_t>(m - 1)].log_abs;
      lo = std::min(lo, env);
      hi = std::max(hi, env);
    }
    if (next < ladder.size() && ladder[next] == n) {
      spread.push_back(hi - lo);
      ++next;
    }
  }
  const auto cls = classify_sup(ladder, spread, {}, tol);
  Verdict v;
  switch (cls.trend) {
    case SupTrend::bounded:
      v = Verdict::holding("envelope ratio " + cls.label, make_samples(ladder, spread));
      break;
    case SupTrend::unbounded:
      v = Verdict::failing({"n", static_cast<double>(cls.argmax)}, "envelope ratio " + cls.label,
                           make_samples(ladder, spread));
      break;
    case SupTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason, cls.label, make_samples(ladder, spread));
      break;
  }
  v.with("a", a).with("c", std::exp(lo)).with("C", std::exp(hi));
  return {a, std::exp(lo), std::exp(hi), std::move(v)};
}

DiscReport disc_report(const AlphaSequence& seq, int kmax, long N, double tol) {
  DiscReport r;
  for (int k = 1; k <= kmax; ++k) {
    S0Interval s0 = s0_estimate(seq, k, N, tol);
    r.entries.push_back({k, s0, disc_for(s0.midpoint())});
  }
  for (std::size_t i = 1; i < r.entries.size(); ++i) {
    if (r.entries[i].s0.midpoint() > r.entries[i - 1].s0.midpoint() + tol) {
      r.monotone = Verdict::failing({"k", static_cast<double>(r.entries[i].k)}, "s0(k) increased");
      return r;
    }
  }
  r.monotone = Verdict::holding("s0(k) nonincreasing in k");
  r.monotone.with("s0_last", r.entries.empty() ? 0.0 : r.entries.back().s0.midpoint());
  return r;
}

}  // namespace cesaro
