#include "cesaro/suite.hpp"

#include <chrono>
#include <random>

#include "cesaro/dynamics.hpp"
#include "cesaro/spectral.hpp"

namespace cesaro {

namespace {

const std::vector<const char*> kDefaultLambdas = {"2", "-1", "0.4+0.3i"};
const std::vector<long> kDefaultEigen = {1, 2, 3, 5, 10};
const std::vector<long> kDefaultIterates = {1, 2, 3, 4, 5};
constexpr Index kAlgebraN = 100;
constexpr Index kDynamicsN = 30;
constexpr long kResolventN = 1000;

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 20);
  const int p = num(rng);
  return Rational(p) / Rational(den(rng));
}

Vector<double> to_double_vector(const Vector<Rational>& v) {
  Vector<double> d(v.size());
  for (Index i = 0; i < v.size(); ++i) d(i) = cesaro::to_double(v(i));
  return d;
}

Outcome expected(bool holds) { return holds ? Outcome::holds : Outcome::fails; }

class Runner {
 public:
  explicit Runner(const AnalysisConfig& cfg) : cfg_(cfg), seq_(AlphaSequence::parse(cfg.alpha)), w_(seq_) {}

  Json experiment(const Experiment& e, std::vector<std::string>& mm) {
    switch (e.kind) {
      case ExperimentKind::profile:
        return profile_block(mm);
      case ExperimentKind::spectrum:
        return spectrum_block(mm);
      case ExperimentKind::resolvent:
        return resolvent_block(e.lambdas.empty() ? default_lambdas() : e.lambdas, mm);
      case ExperimentKind::eigenpairs:
        return eigen_block(e.ms.empty() ? (cfg_.ms.empty() ? kDefaultEigen : cfg_.ms) : e.ms, mm);
      case ExperimentKind::dynamics:
        return dynamics_block(e.x_spec, e.ms.empty() ? (cfg_.ms.empty() ? kDefaultIterates : cfg_.ms) : e.ms, mm);
      case ExperimentKind::suite:
        return suite_block(mm);
    }
    return {};
  }

 private:
  const SpaceProfile& profile() {
    if (!profile_) {
      ClassifyOptions opt;
      opt.K = cfg_.K;
      opt.s0_tol = cfg_.tol;
      opt.lmax = cfg_.lmax;
      opt.trend = cfg_.trend;
      profile_ = classify_space(seq_, cfg_.N, opt);
    }
    return *profile_;
  }

  const SpectrumReport& spectrum() {
    if (!spectrum_) spectrum_ = predict_spectra(profile());
    return *spectrum_;
  }

  std::vector<ComplexLiteral> default_lambdas() const {
    if (!cfg_.lambdas.empty()) return cfg_.lambdas;
    std::vector<ComplexLiteral> out;
    for (const char* l : kDefaultLambdas) out.push_back(parse_complex(l));
    return out;
  }

  Json profile_block(std::vector<std::string>& mm) {
    const auto& p = profile();
    Json j = to_json(p);
    Json eq = Json::array();
    for (const auto& e : equivalences(p)) {
      eq.push_back(Json{{"name", e.name},
                        {"lhs", std::string(to_string(e.lhs))},
                        {"rhs", std::string(to_string(e.rhs))},
                        {"agree", e.agree ? Json(*e.agree) : Json("undecided")}});
      if (e.agree && !*e.agree) mm.push_back("equivalence violated: " + e.name);
    }
    j["equivalences"] = std::move(eq);
    if (p.v_alpha.verdict.holds() && p.nuclear.fails()) mm.push_back("v(alpha) > 0 without nuclearity");
    if (p.nuclear.holds() && p.s1_nonempty.holds()) mm.push_back("nuclear space with S_1 nonempty");
    return j;
  }

  Json spectrum_block(std::vector<std::string>& mm) {
    Json j = to_json(spectrum());
    if (profile().s1_nonempty.holds()) {
      try {
        const DiscReport d = disc_report(seq_, cfg_.kmax, profile().resolution, cfg_.tol);
        j["disc_report"] = to_json(d);
        if (d.monotone.fails()) mm.push_back("s0(k) not nonincreasing");
      } catch (const Error& e) {
        j["disc_report"] = Json{{"error", e.what()}};
      }
    }
    return j;
  }

  // (C - lambda I) R = I and R (C - lambda I) = I on the truncation.
  template <typename S>
  static std::pair<Matrix<S>, Matrix<S>> resolvent_products(const Matrix<S>& R, const S& lambda) {
    const Matrix<S> lr = R * lambda;
    Matrix<S> left = cesaro_times(R) - lr;
    Matrix<S> right = times_cesaro(R) - lr;
    return {std::move(left), std::move(right)};
  }

  Json resolvent_block(const std::vector<ComplexLiteral>& lambdas, std::vector<std::string>& mm) {
    Json out = Json::array();
    const Index n_alg = std::min<Index>(kAlgebraN, cfg_.N);
    const long n_res = std::min(kResolventN, cfg_.N);
    for (const auto& lit : lambdas) {
      Json j;
      j["lambda"] = lit.text;
      const Complex lambda = lit.value;
      const PoleDistance pole = nearest_pole(lambda);
      if (pole.distance <= kPoleTolerance) {
        j["pole"] = pole.m;
        j["note"] = pole.m == 0 ? "lambda = 0: the resolvent formula is undefined"
                                : "lambda = 1/m: eigenvalue of every truncation, no resolvent";
        out.push_back(std::move(j));
        continue;
      }
      if (lit.exact) {
        const auto R = resolvent_exact(*lit.exact, n_alg).entries;
        const auto [left, right] = resolvent_products<ComplexRational>(R, *lit.exact);
        const bool ok = left == Matrix<ComplexRational>::Identity(n_alg, n_alg) &&
                        right == Matrix<ComplexRational>::Identity(n_alg, n_alg);
        j["inverse_check"] = Json{{"mode", "rational"}, {"N", n_alg}, {"exact", ok}};
        if (!ok) mm.push_back("resolvent is not an exact inverse at lambda = " + lit.text);
      } else {
        const auto R = resolvent<Complex>(lambda, n_alg).entries;
        const auto [left, right] = resolvent_products<Complex>(R, lambda);
        const Matrix<Complex> I = Matrix<Complex>::Identity(n_alg, n_alg);
        const double err = std::max((left - I).cwiseAbs().maxCoeff(), (right - I).cwiseAbs().maxCoeff());
        j["inverse_check"] = Json{{"mode", "float"}, {"N", n_alg}, {"max_entry_error", number(err)}};
        if (!(err <= 1e-12)) mm.push_back("float resolvent residual above 1e-12 at lambda = " + lit.text);
      }

      const Membership in_sigma = contains(spectrum().sigma, lambda);
      j["predicted_sigma_membership"] = std::string(to_string(in_sigma));
      Json per_k = Json::array();
      Outcome summary = Outcome::holds;
      for (int k = 1; k <= cfg_.kmax; ++k) {
        const Verdict v = verify_resolvent_point(seq_, lambda, k, n_res, cfg_.trend);
        per_k.push_back(Json{{"k", k}, {"verdict", to_json(v)}});
        if (v.fails()) summary = Outcome::fails;
        else if (v.is_inconclusive() && summary == Outcome::holds) summary = Outcome::inconclusive;
      }
      j["row_sum_evidence"] = std::move(per_k);
      j["resolvent_bounded"] = std::string(to_string(summary));
      if (in_sigma == Membership::outside && summary == Outcome::fails)
        mm.push_back("lambda = " + lit.text + " predicted outside sigma but the resolvent grows");
      if (in_sigma == Membership::inside && summary == Outcome::holds)
        mm.push_back("lambda = " + lit.text + " predicted inside sigma but the resolvent stays bounded");

      if (cfg_.N > 10) {
        const EnvelopeFit fit = boun_bounds_fit(lambda, n_res, cfg_.trend);
        j["envelope"] = to_json(fit);
        if (fit.verdict.fails()) mm.push_back("entry envelope unbounded at lambda = " + lit.text);
      }
      out.push_back(std::move(j));
    }
    return out;
  }

  Json eigen_block(const std::vector<long>& ms, std::vector<std::string>& mm) {
    const Index n_alg = std::min<Index>(kAlgebraN, cfg_.N);
    const Verdict& nuclear = profile().nuclear;
    Json out = Json::array();
    for (long m : ms) {
      Json j;
      j["m"] = m;
      j["eigenvalue"] = "1/" + std::to_string(m);
      if (m <= n_alg) {
        const auto x = delta_eigenvector<Rational>(m, n_alg);
        const bool exact = cesaro_apply(x).values == x.values * (Rational(1) / Rational(m));
        j["residual_exact_zero"] = exact;
        if (!exact) mm.push_back("C Delta e_m != (1/m) Delta e_m at m = " + std::to_string(m));
      }
      const Verdict v = eigenvector_membership(seq_, m, cfg_.K, cfg_.N, cfg_.trend);
      j["in_space"] = to_json(v);
      if (!nuclear.is_inconclusive() && !v.is_inconclusive()) {
        const Outcome want = expected(nuclear.holds() || m == 1);
        j["predicted"] = std::string(to_string(want));
        if (v.outcome != want) mm.push_back("eigenvector membership at m = " + std::to_string(m) + " contradicts sigma_pt");
      }
      out.push_back(std::move(j));
    }
    return out;
  }

  Json dynamics_block(const std::string& spec, const std::vector<long>& ms, std::vector<std::string>& mm) {
    const Index N = std::min<Index>(kDynamicsN, cfg_.N);
    Vector<Rational> xr(N);
    const auto raw = dynamics_vector(spec, N, cfg_.seed);
    for (Index i = 0; i < N; ++i) xr(i) = raw[static_cast<std::size_t>(i)];
    const CoordinateVector<Rational> x(xr);
    const CoordinateVector<double> xd(to_double_vector(xr));
    Json j;
    j["x"] = spec;
    j["N"] = N;

    Json iters = Json::array();
    for (long m : ms) {
      Json it;
      it["m"] = m;
      const auto power = power_apply(xd, static_cast<int>(m));
      try {
        const auto kernel = iterate_via_kernel(xd, static_cast<int>(m));
        const double diff = (power.values - kernel.values).cwiseAbs().maxCoeff();
        it["kernel_vs_power"] = number(diff);
        if (!(diff <= 1e-8)) mm.push_back("kernel and power iterates differ at m = " + std::to_string(m));
      } catch (const QuadratureError& e) {
        it["kernel_vs_power"] = Json{{"error", e.what()}};
        mm.push_back(e.what());
      }
      const GmSup a = gm_sup(static_cast<int>(m));
      it["a_m"] = number(a.closed_form);
      it["a_m_numeric"] = number(a.numeric);
      it["p_k"] = Json::array();
      for (int k = 1; k <= cfg_.K; ++k) it["p_k"].push_back(number(seminorm(w_, k, power.values)));
      iters.push_back(std::move(it));
    }
    j["iterates"] = std::move(iters);

    const int K = std::min(cfg_.K, 5);
    const auto record = [&](const char* name, const Verdict& v) {
      j[name] = to_json(v);
      if (v.fails()) mm.push_back(std::string(name) + " fails");
    };
    record("power_bound", power_bound_check(w_, x, K, 50));
    record("iterate_limit", iterate_limit_check(xd, N).verdict);
    record("ergodic_decomposition", ergodic_decomposition_check(seq_, x, N));
    record("mean_ergodic", mean_ergodic_proxy(w_, K, {xd}, 200, cfg_.trend));
    return j;
  }

  Json algebra_block(std::vector<std::string>& mm) {
    Json j;
    const auto check = [&](const char* name, bool ok) {
      j[name] = ok;
      if (!ok) mm.push_back(std::string("exact algebra: ") + name);
    };
    constexpr Index Nd = 40;
    const Matrix<Rational> D = delta<Rational>(Nd).entries;
    check("delta_involution", D * D == Matrix<Rational>::Identity(Nd, Nd));
    check("delta_diagonalizes_c", D * inverse_diagonal<Rational>(Nd).entries * D == cesaro_matrix<Rational>(Nd).entries);

    std::mt19937_64 rng(cfg_.seed);
    bool roundtrip = true;
    for (int r = 0; r < 20; ++r) {
      Vector<Rational> v(kAlgebraN);
      for (auto& e : v) e = random_rational(rng);
      const CoordinateVector<Rational> x(v);
      roundtrip = roundtrip && cesaro_inverse_apply(cesaro_apply(x)).values == v;
    }
    check("inverse_roundtrip", roundtrip);
    constexpr Index Nab = 50;
    check("a_times_b", a_matrix<Rational>(Nab).entries * b_matrix<Rational>(Nab).entries ==
                           Matrix<Rational>::Identity(Nab, Nab));

    bool eigen = true;
    for (Index m = 1; m <= 10; ++m) {
      const auto x = delta_eigenvector<Rational>(m, kAlgebraN);
      eigen = eigen && cesaro_apply(x).values == x.values * (Rational(1) / Rational(m));
    }
    check("eigenpairs", eigen);

    constexpr Index Nr = 30;
    const ComplexRational l(Rational(2)), mu(Rational(3));
    const auto Rl = resolvent_exact(l, Nr).entries;
    const auto Rm = resolvent_exact(mu, Nr).entries;
    const Matrix<ComplexRational> lhs = Rl - Rm;
    const Matrix<ComplexRational> rhs = (Rl * Rm) * (l - mu);
    check("resolvent_identity", lhs == rhs);
    return j;
  }

  Json suite_block(std::vector<std::string>& mm) {
    Json j;
    j["algebra"] = algebra_block(mm);
    j["profile"] = profile_block(mm);
    j["spectrum"] = spectrum_block(mm);
    j["resolvent"] = resolvent_block(default_lambdas(), mm);
    j["eigenpairs"] = eigen_block(cfg_.ms.empty() ? kDefaultEigen : cfg_.ms, mm);
    j["dynamics"] = dynamics_block("random", kDefaultIterates, mm);
    return j;
  }

  const AnalysisConfig& cfg_;
  AlphaSequence seq_;
  WeightSystem w_;
  std::optional<SpaceProfile> profile_;
  std::optional<SpectrumReport> spectrum_;
};

}  // namespace

std::vector<Equivalence> equivalences(const SpaceProfile& p) {
  const auto make = [](std::string name, const Verdict& a, Outcome b, bool in_scope = true) {
    Equivalence e{std::move(name), a.outcome, b, std::nullopt};
    if (in_scope && a.outcome != Outcome::inconclusive && b != Outcome::inconclusive) e.agree = a.outcome == b;
    return e;
  };
  std::vector<Equivalence> out;
  out.push_back(make("inverse continuity <=> nuclear", p.inverse_continuous, p.nuclear.outcome));
  out.push_back(make("binomial track <=> n/alpha_n -> 0", p.delta_binomial_track, p.n_over_alpha_zero.outcome,
                     p.nuclear.holds()));
  Outcome both = Outcome::inconclusive;
  if (p.nuclear.fails() || p.shift_stable.fails()) both = Outcome::fails;
  else if (p.nuclear.holds() && p.shift_stable.holds()) both = Outcome::holds;
  out.push_back(make("D-continuity <=> nuclear and shift stable", p.d_continuous, both));
  return out;
}

std::vector<Rational> dynamics_vector(const std::string& spec, Index N, std::uint64_t seed) {
  std::vector<Rational> x(static_cast<std::size_t>(N), Rational(0));
  if (spec == "ones") {
    std::fill(x.begin(), x.end(), Rational(1));
  } else if (spec == "random") {
    std::mt19937_64 rng(seed);
    for (auto& v : x) v = random_rational(rng);
  } else if (spec.size() > 1 && spec[0] == 'e') {
    const long j = std::stol(spec.substr(1));
    if (j < 1) throw std::invalid_argument("e<j> needs j >= 1");
    if (j <= N) x[static_cast<std::size_t>(j - 1)] = 1;
  } else {
    throw std::invalid_argument("unknown dynamics vector '" + spec + "'");
  }
  return x;
}

RunResult run(const AnalysisConfig& cfg) {
  validate(cfg);
  RunResult r;
  Runner runner(cfg);
  Json& rep = r.report;
  rep["schema"] = std::string(kReportSchema);
  rep["version"] = std::string(kVersion);
  rep["config"] = to_json(cfg);
  if (cfg.experiments.empty()) return r;
  Json results = Json::array();
  for (const auto& e : cfg.experiments) {
    std::vector<std::string> mm;
    const auto t0 = std::chrono::steady_clock::now();
    Json block;
    block["experiment"] = e.text;
    block["result"] = runner.experiment(e, mm);
    block["mismatches"] = mm;
    if (cfg.timings) block["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& m : mm) r.mismatches.push_back(e.text + ": " + m);
    results.push_back(std::move(block));
  }
  rep["experiments"] = std::move(results);
  rep["summary"] = Json{{"experiments", cfg.experiments.size()},
                        {"mismatches", r.mismatches.size()},
                        {"exit_code", r.exit_code()}};
  return r;
}

std::string emit(const RunResult& r, OutputFormat format) {
  return format == OutputFormat::json ? emit_json(r.report) : emit_csv(r.report);
}

}  // namespace cesaro
