#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cesaro/dynamics.hpp"
#include "cesaro/suite.hpp"

using namespace cesaro;

namespace {

const char* const kGallery[] = {"linear",       "sqrt",         "log:beta=1", "log:beta=2",    "tower",
                                "power:beta=2", "power:beta=1", "rsw_b",      "psum:beta=0.5", "s1_empty"};

Rational q(long p, long d = 1) { return Rational(p) / Rational(d); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

int report(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0) {
    char b[96];
    std::snprintf(b, sizeof b, "runtime %.2f s over budget %.0f s", s, budget_s);
    o.require(s < budget_s, b);
  }
  std::printf("criterion %d: %s %s (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title, s,
              o.detail.empty() ? "" : "; ", o.detail.c_str());
  for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

Outcome exact_algebra() {
  Outcome o;
  const auto D = delta<Rational>(40).entries;
  o.require(D * D == Matrix<Rational>::Identity(40, 40), "Delta^2 != I at N=40");
  o.require(D * inverse_diagonal<Rational>(40).entries * D == cesaro_matrix<Rational>(40).entries,
            "Delta diag(1/n) Delta != C at N=40");
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> p(-20, 20), d(1, 20);
  for (int r = 0; r < 200; ++r) {
    Vector<Rational> v(100);
    for (auto& e : v) e = q(p(rng), d(rng));
    if (cesaro_inverse_apply(cesaro_apply(CoordinateVector<Rational>(v))).values != v) {
      o.require(false, "C^{-1} C x != x for vector " + std::to_string(r));
      break;
    }
  }
  o.require(a_matrix<Rational>(50).entries * b_matrix<Rational>(50).entries == Matrix<Rational>::Identity(50, 50),
            "A B != I at N=50");
  return o;
}

Outcome eigenpairs() {
  Outcome o;
  double worst = 0;
  for (Index m = 1; m <= 10; ++m) {
    const auto x = delta_eigenvector<Rational>(m, 100);
    o.require(cesaro_apply(x).values == x.values * q(1, m), "exact residual nonzero at m=" + std::to_string(m));
    const auto xl = delta_eigenvector<LogReal>(m, 100);
    const auto yl = cesaro_apply(xl);
    double num = 0, den = 0;
    for (Index n = 0; n < 100; ++n) {
      num = std::max(num, std::abs(yl.values(n).value() - xl.values(n).value() / static_cast<double>(m)));
      den = std::max(den, std::abs(xl.values(n).value()));
    }
    worst = std::max(worst, num / den);
  }
  o.require(worst <= 1e-10, "log-mode relative residual " + std::to_string(worst));
  char b[64];
  std::snprintf(b, sizeof b, "log-mode residual %.2e", worst);
  o.detail = b;
  return o;
}

Outcome resolvents() {
  Outcome o;
  const Index N = 100;
  double worst = 0;
  const std::vector<ComplexRational> points = {ComplexRational(q(2)), ComplexRational(q(-1)),
                                               ComplexRational(q(2, 5), q(3, 10))};
  const Matrix<ComplexRational> I = Matrix<ComplexRational>::Identity(N, N);
  const Matrix<Complex> If = Matrix<Complex>::Identity(N, N);
  const Matrix<Complex> Cf = cesaro_matrix<Complex>(N).entries;
  for (const auto& l : points) {
    const auto R = resolvent_exact(l, N).entries;
    o.require(cesaro_times(R) - R * l == I, "(C - l) R != I exactly at " + format_scalar(l));
    o.require(times_cesaro(R) - R * l == I, "R (C - l) != I exactly at " + format_scalar(l));
    const Complex lf = l.to_complex();
    const Matrix<Complex> Rf = resolvent<Complex>(lf, N).entries;
    worst = std::max(worst, ((Cf - lf * If) * Rf - If).cwiseAbs().maxCoeff());
    worst = std::max(worst, (Rf * (Cf - lf * If) - If).cwiseAbs().maxCoeff());
  }
  const auto R2 = resolvent_exact(ComplexRational(q(2)), 30).entries;
  const auto R3 = resolvent_exact(ComplexRational(q(3)), 30).entries;
  o.require(R2 - R3 == (R2 * R3) * ComplexRational(q(-1)), "resolvent identity fails exactly");
  const Matrix<Complex> F2 = resolvent<Complex>(2.0, 30).entries;
  const Matrix<Complex> F3 = resolvent<Complex>(3.0, 30).entries;
  worst = std::max(worst, ((F2 - F3) + F2 * F3).cwiseAbs().maxCoeff());
  o.require(worst <= 1e-12, "float max-entry error " + std::to_string(worst));
  char b[64];
  std::snprintf(b, sizeof b, "float max-entry error %.2e", worst);
  o.detail = b;
  return o;
}

Outcome golden_table() {
  Outcome o;
  auto profile = [](const char* g) { return classify_space(AlphaSequence::parse(g), 10000); };
  auto expect = [&](const char* g, const char* what, const Verdict& v, bool holds) {
    o.require(holds ? v.holds() : v.fails(), std::string(g) + ": " + what + " expected " +
                                                 (holds ? "holds" : "fails") + ", got " +
                                                 std::string(to_string(v.outcome)));
  };
  {
    const auto p = profile("linear");
    expect("linear", "nuclear", p.nuclear, true);
    expect("linear", "shift stable", p.shift_stable, true);
    expect("linear", "D-continuous", p.d_continuous, true);
    expect("linear", "Delta-continuous", p.delta_continuous, false);
  }
  {
    const auto p = profile("sqrt");
    expect("sqrt", "nuclear", p.nuclear, true);
    expect("sqrt", "v(alpha) > 0", p.v_alpha.verdict, false);
  }
  for (double beta : {1.0, 2.0}) {
    const std::string g = beta == 1.0 ? "log:beta=1" : "log:beta=2";
    const auto p = profile(g.c_str());
    expect(g.c_str(), "nuclear", p.nuclear, false);
    expect(g.c_str(), "shift stable", p.shift_stable, true);
    expect(g.c_str(), "S_1 nonempty", p.s1_nonempty, true);
    o.require(p.s0_1 && std::abs(p.s0_1->midpoint() - (1 + beta)) <= 0.05,
              g + ": s0(1) not within 0.05 of " + std::to_string(1 + beta));
  }
  {
    const auto p = profile("tower");
    expect("tower", "nuclear", p.nuclear, true);
    expect("tower", "shift stable", p.shift_stable, false);
    expect("tower", "Delta-continuous", p.delta_continuous, true);
    expect("tower", "D-continuous", p.d_continuous, false);
  }
  expect("power:beta=2", "Delta-continuous", profile("power:beta=2").delta_continuous, true);
  expect("power:beta=1", "Delta-continuous", profile("power:beta=1").delta_continuous, false);
  {
    const auto p = profile("rsw_b");
    o.require(p.v_alpha.infimum == 1.0, "rsw_b: v(alpha) != 1");
    expect("rsw_b", "v(alpha) > 0", p.v_alpha.verdict, true);
  }
  {
    const auto p = profile("psum:beta=0.5");
    expect("psum:beta=0.5", "nuclear", p.nuclear, true);
    expect("psum:beta=0.5", "Banach step compact", p.banach_step_compact, true);
  }
  {
    const auto p = profile("s1_empty");
    expect("s1_empty", "nuclear", p.nuclear, false);
    expect("s1_empty", "S_1 nonempty", p.s1_nonempty, false);
  }
  return o;
}

Outcome equivalence_suite() {
  Outcome o;
  int agree = 0, undecided = 0;
  for (const char* g : kGallery) {
    for (const auto& e : equivalences(classify_space(AlphaSequence::parse(g), 10000))) {
      if (!e.agree) {
        ++undecided;
      } else if (*e.agree) {
        ++agree;
      } else {
        o.require(false, std::string(g) + ": " + e.name + " disagrees");
      }
    }
  }
  o.detail = std::to_string(agree) + " agree, " + std::to_string(undecided) + " inconclusive or out of scope";
  return o;
}

Outcome dynamics_suite() {
  Outcome o;
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> u(-1, 1);
  double kernel_err = 0;
  std::vector<CoordinateVector<double>> xs;
  for (int r = 0; r < 20; ++r) {
    Vector<double> v(30);
    for (auto& e : v) e = u(rng);
    xs.emplace_back(v);
  }
  for (int m = 1; m <= 5; ++m) {
    const Matrix<double> K = kernel_matrix(m, 30);
    for (const auto& x : xs)
      kernel_err = std::max(kernel_err, (K * x.values - power_apply(x, m).values).cwiseAbs().maxCoeff());
  }
  o.require(kernel_err <= 1e-8, "kernel vs power " + std::to_string(kernel_err));

  double am_err = 0;
  for (int m = 1; m <= 20; ++m) {
    const auto a = gm_sup(m);
    am_err = std::max(am_err, std::abs(a.closed_form - a.numeric));
  }
  o.require(am_err <= 1e-10, "a_m closed form vs numeric " + std::to_string(am_err));
  o.require(std::abs(gm_sup(1).closed_form - 1.0) <= 1e-15, "a_1 != 1");
  o.require(std::abs(gm_sup(2).closed_form - std::exp(-1.0)) <= 1e-15, "a_2 != 1/e");

  const WeightSystem w(AlphaSequence::linear());
  std::uniform_int_distribution<int> p(-20, 20), d(1, 20);
  for (int r = 0; r < 100; ++r) {
    Vector<Rational> v(20);
    for (auto& e : v) e = q(p(rng), d(rng));
    const Verdict vb = power_bound_check(w, CoordinateVector<Rational>(v), 5, 50);
    if (!vb.holds()) {
      o.require(false, "p_k(C^m x) > p_k(x) for vector " + std::to_string(r));
      break;
    }
  }

  int max_m = 0;
  for (const auto& x : xs) {
    const auto lim = iterate_limit_check(x, 30, 1e-6);
    o.require(lim.verdict.holds(), "iterates did not reach x_1 within m_cap");
    for (int m : lim.first_m) max_m = std::max(max_m, m);
  }
  char b[96];
  std::snprintf(b, sizeof b, "kernel err %.1e, a_m err %.1e, largest m to 1e-6 is %d", kernel_err, am_err, max_m);
  o.detail = b;
  return o;
}

Outcome spectral_evidence() {
  Outcome o;
  const auto lin = AlphaSequence::linear();
  for (Complex l : {Complex(2, 0), Complex(0.4, 0.3)}) {
    const Verdict v = verify_resolvent_point(lin, l, 1, 1000);
    o.require(v.holds(), "linear: row sums of E~_{l,1} not stable at " + format_scalar(l));
  }
  // row sums of E~_{0.4,k} behave like n^{3/2 - 2/k}: bounded at k = 1, growing from k = 2
  const auto lg = AlphaSequence::log(2);
  std::string per_k;
  bool grew = false;
  for (int k = 1; k <= 4; ++k) {
    const Verdict v = verify_resolvent_point(lg, 0.4, k, 1000);
    per_k += (k > 1 ? " " : "") + std::string("k=") + std::to_string(k) + ":" + std::string(to_string(v.outcome));
    grew = grew || v.fails();
  }
  o.require(grew, "log:beta=2: no growth of E~_{0.4,k} row sums for k <= 4 (" + per_k + ")");
  for (double l : {2.0, -1.0}) {
    const auto fit = boun_bounds_fit(l, 1000);
    o.require(fit.verdict.holds(), "envelope not bounded at lambda=" + format_double(l));
  }
  o.detail = "log:beta=2 at 0.4: " + per_k;
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("cesaro_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto run_once = [&](const char* g, int i) {
    const auto out = dir / ("run" + std::to_string(i) + ".json");
    const std::string cmd = std::string("\"") + CESARO_CLI + "\" --alpha " + g +
                            " --experiments suite --seed 20240917 > \"" + out.string() + "\" 2> /dev/null";
    const int status = std::system(cmd.c_str());
    std::ifstream f(out, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return std::make_pair(WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str());
  };
  for (const char* g : kGallery) {
    const auto a = run_once(g, 0);
    const auto b = run_once(g, 1);
    o.require(a.first == 0, std::string(g) + ": suite exit code " + std::to_string(a.first));
    o.require(!a.second.empty() && a.second == b.second, std::string(g) + ": reports differ");
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  failed += report(1, "exact algebra suite", 10, exact_algebra);
  failed += report(2, "eigenpair suite", 0, eigenpairs);
  failed += report(3, "resolvent suite", 5, resolvents);
  failed += report(4, "classifier golden table", 60, golden_table);
  failed += report(5, "criterion-equivalence suite", 0, equivalence_suite);
  failed += report(6, "dynamics suite", 120, dynamics_suite);
  failed += report(7, "spectral-evidence suite", 0, spectral_evidence);
  failed += report(8, "CLI determinism over the gallery suite", 0, cli_determinism);
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
