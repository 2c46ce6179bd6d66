#ifndef CESARO_CRITERIA_HPP
#define CESARO_CRITERIA_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cesaro/sequences.hpp"
#include "cesaro/trend.hpp"

namespace cesaro {

/// log a_k(n) of a Koethe matrix.
using LogWeightFamily = std::function<double(int k, long n)>;

/// sup_n (a_k(n)/n) sum_{m<=n} 1/a_l(m) < infinity, judged on the running sup.
Verdict koethe_continuity_check(const LogWeightFamily& log_a, int k, int l, long N,
                                const TrendTolerances& tol = {});

/// Outcome of a search over l for a bounded criterion quantity.
struct SearchResult {
  Verdict verdict;
  std::optional<int> l;
  std::vector<std::pair<int, Verdict>> probes;
};

inline int default_lmax(int k) { return 4 * k + 8; }

/// C^{-1} continuous from c0(w_l) to c0(w_k): sup_n (log n - (1/k - 1/l) alpha_n) bounded.
SearchResult inverse_continuity_check(const AlphaSequence& seq, int k, int lmax, long N,
                                      const TrendTolerances& tol = {});

/// D continuous from c0(w_l) to c0(w_k): sup_n n w_k(n) / w_l(n+1) bounded.
SearchResult d_continuity_check(const AlphaSequence& seq, int k, int lmax, long N,
                                const TrendTolerances& tol = {});

/// A_k(n) = (w_2k(n)/n) sum_{m<=n} 1/w_k(m) unbounded; `holds` confirms unboundedness.
Verdict noncompactness_witness(const AlphaSequence& seq, int k, long N, const TrendTolerances& tol = {});

/// (w_k(n)/n) sum_{m<=n} 1/w_k(m) -> 0, i.e. C compact on the single step c0(w_k).
Verdict banach_step_compactness(const AlphaSequence& seq, int k, long N, const TrendTolerances& tol = {});

struct DeltaResult {
  Verdict verdict;
  /// Weighted binomial sums, for every k' <= k.
  Verdict binomial_track;
  /// lim n / alpha_n = 0.
  Verdict scalar_track;
  /// The equivalence of the two tracks is only known for nuclear spaces.
  bool in_scope = true;
};

DeltaResult delta_continuity_check(const AlphaSequence& seq, int k, int lmax, long N,
                                   const TrendTolerances& tol = {});

struct SpaceProfile {
  std::string alpha;
  long resolution = 0;
  int K = 0;
  bool first_term_above_one = true;
  Verdict nuclear;
  VAlpha v_alpha;
  Verdict shift_stable;
  Verdict s1_nonempty;
  std::optional<S0Interval> s0_1;
  Verdict d_continuous;
  Verdict inverse_continuous;
  Verdict delta_continuous;
  Verdict n_over_alpha_zero;
  Verdict delta_binomial_track;
  Verdict banach_step_compact;
  std::vector<std::string> warnings;
};

struct ClassifyOptions {
  int K = 6;
  double s_cap = 50.0;
  double s0_tol = 0.01;
  /// Largest l searched for each k; 0 means default_lmax(k).
  int lmax = 0;
  TrendTolerances trend{};
};

/// Runs every diagnostic on alpha and cross-checks the equivalences between them.
SpaceProfile classify_space(const AlphaSequence& seq, long N, const ClassifyOptions& opt = {});

/// The resolution classify_space actually uses for a requested N.
long effective_resolution(const AlphaSequence& seq, long N);

}  // namespace cesaro

#endif  // CESARO_CRITERIA_HPP
