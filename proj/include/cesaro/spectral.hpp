#ifndef CESARO_SPECTRAL_HPP
#define CESARO_SPECTRAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "cesaro/criteria.hpp"
#include "cesaro/operators.hpp"

namespace cesaro {

enum class SetKind {
  sigma,             // {1/m : m >= 1}
  sigma0,            // {0} U {1/m}
  one,               // {1}
  disc_sandwich,     // D(1) U {1} within the set, the set within closure(D(1))
  closed_disc,       // closure(D(1)), as the set itself
  within_closed_disc,  // only the universal bound: the set lies in closure(D(1))
  undetermined
};

struct SetDescriptor {
  SetKind kind = SetKind::undetermined;
  std::string text;
};

SetDescriptor make_set(SetKind kind);

enum class Membership { inside, outside, boundary, undetermined };

std::string_view to_string(Membership m);

/// Membership of lambda; points within `band` of a boundary are reported as boundary.
Membership contains(const SetDescriptor& s, Complex lambda, double band = 1e-6);

/// Open disc D(r) with center and radius 1/(2r).
struct Disc {
  double center;
  double radius;
};

inline Disc disc_for(double r) { return {0.5 / r, 0.5 / r}; }

struct DiscEntry {
  int k;
  S0Interval s0;
  Disc disc;  // D(s0(k)) at the interval midpoint
};

struct SpectrumReport {
  SetDescriptor sigma_pt;
  SetDescriptor sigma;
  SetDescriptor sigma_star;
  std::vector<std::pair<std::string, Verdict>> hypotheses;
  std::vector<DiscEntry> discs;
  std::vector<std::string> notes;
};

SpectrumReport predict_spectra(const SpaceProfile& profile);

/// x^(m) = Delta e_m lies in Lambda_0(alpha): w_k(n)|x_n| -> 0 for every k <= K.
Verdict eigenvector_membership(const AlphaSequence& seq, long m, int K, long N, const TrendTolerances& tol = {});

/// Evidence that R(lambda) maps c0(w_{k+1}) into c0(w_k): the columns of E~_{lambda,k}
/// tend to zero and its absolute row sums stay bounded.
Verdict verify_resolvent_point(const AlphaSequence& seq, Complex lambda, int k, long N,
                               const TrendTolerances& tol = {}, int columns = 3);

struct EnvelopeFit {
  double a;        // Re(1/lambda)
  double c;        // min of n^(1-a) m^a |e_nm| over 10 <= n <= N
  double C;        // max of the same
  Verdict verdict;  // holds iff log(C/c) stabilises along n
};

EnvelopeFit boun_bounds_fit(Complex lambda, long N, const TrendTolerances& tol = {});

struct DiscReport {
  std::vector<DiscEntry> entries;
  Verdict monotone;  // s0(k) nonincreasing within tol
};

DiscReport disc_report(const AlphaSequence& seq, int kmax, long N, double tol);

}  // namespace cesaro

#endif  // CESARO_SPECTRAL_HPP
