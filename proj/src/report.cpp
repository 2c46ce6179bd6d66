#include "cesaro/report.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

Json to_json(const Verdict& v) {
  Json j;
  j["outcome"] = std::string(to_string(v.outcome));
  j["trend"] = v.trend;
  if (v.witness) j["witness"] = Json{{"name", v.witness->name}, {"value", number(v.witness->value)}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.params.empty()) {
    Json p = Json::object();
    for (const auto& [key, value] : v.params) p[key] = number(value);
    j["params"] = std::move(p);
  }
  if (!v.evidence.empty()) {
    Json e = Json::array();
    for (const auto& s : v.evidence) e.push_back(Json::array({number(s.index), number(s.value)}));
    j["evidence"] = std::move(e);
  }
  return j;
}

Json to_json(const S0Interval& s) {
  return Json{{"lo", number(s.lo)}, {"hi", number(s.hi)}, {"estimate", number(s.midpoint())}};
}

Json to_json(const SpaceProfile& p) {
  Json j;
  j["alpha"] = p.alpha;
  j["resolution"] = p.resolution;
  j["K"] = p.K;
  j["first_term_above_one"] = p.first_term_above_one;
  j["nuclear"] = to_json(p.nuclear);
  j["v_alpha"] = Json{{"infimum", number(p.v_alpha.infimum)},
                      {"argmin", p.v_alpha.argmin},
                      {"positive", to_json(p.v_alpha.verdict)}};
  j["shift_stable"] = to_json(p.shift_stable);
  j["s1_nonempty"] = to_json(p.s1_nonempty);
  j["s0_1"] = p.s0_1 ? to_json(*p.s0_1) : Json(nullptr);
  j["d_continuous"] = to_json(p.d_continuous);
  j["inverse_continuous"] = to_json(p.inverse_continuous);
  j["delta_continuous"] = to_json(p.delta_continuous);
  j["delta_binomial_track"] = to_json(p.delta_binomial_track);
  j["n_over_alpha_zero"] = to_json(p.n_over_alpha_zero);
  j["banach_step_compact"] = to_json(p.banach_step_compact);
  j["warnings"] = p.warnings;
  return j;
}

Json to_json(const SpectrumReport& r) {
  Json j;
  j["sigma_pt"] = r.sigma_pt.text;
  j["sigma"] = r.sigma.text;
  j["sigma_star"] = r.sigma_star.text;
  Json h = Json::object();
  for (const auto& [name, v] : r.hypotheses) h[name] = std::string(to_string(v.outcome));
  j["hypotheses"] = std::move(h);
  Json discs = Json::array();
  for (const auto& d : r.discs) {
    discs.push_back(Json{{"k", d.k}, {"s0", to_json(d.s0)}, {"center", number(d.disc.center)},
                         {"radius", number(d.disc.radius)}});
  }
  j["discs"] = std::move(discs);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const DiscReport& r) {
  Json entries = Json::array();
  for (const auto& d : r.entries) {
    entries.push_back(Json{{"k", d.k}, {"s0", to_json(d.s0)}, {"center", number(d.disc.center)},
                           {"radius", number(d.disc.radius)}});
  }
  return Json{{"entries", std::move(entries)}, {"monotone", to_json(r.monotone)}};
}

Json to_json(const EnvelopeFit& f) {
  return Json{{"a", number(f.a)}, {"c", number(f.c)}, {"C", number(f.C)}, {"verdict", to_json(f.verdict)}};
}

Json to_json(const AnalysisConfig& c) {
  Json j;
  j["alpha"] = c.alpha;
  j["N"] = c.N;
  j["K"] = c.K;
  j["kmax"] = c.kmax;
  j["lmax"] = c.lmax;
  j["tol"] = number(c.tol);
  Json t;
  t["rel_trend"] = number(c.trend.rel_trend);
  t["stable_band"] = number(c.trend.stable_band);
  t["decay_slope"] = number(c.trend.decay_slope);
  t["growth_slope"] = number(c.trend.growth_slope);
  t["geometric_ratio"] = number(c.trend.geometric_ratio);
  t["tail"] = c.trend.tail;
  j["tolerances"] = std::move(t);
  Json ex = Json::array();
  for (const auto& e : c.experiments) ex.push_back(e.text);
  j["experiments"] = std::move(ex);
  Json lambdas = Json::array();
  for (const auto& l : c.lambdas) lambdas.push_back(l.text);
  j["lambda"] = std::move(lambdas);
  j["m"] = c.ms;
  j["output"] = c.format == OutputFormat::json ? "json" : "csv";
  j["seed"] = c.seed;
  return j;
}

namespace {

std::string scalar_text(const Json& j) {
  switch (j.type()) {
    case Json::value_t::number_float:
      return format_double(j.get<double>());
    case Json::value_t::string:
      return j.get<std::string>();
    default:
      return j.dump();
  }
}

void write_json(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write_json(out, value, indent + 2);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_structured(); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write_json(out, j[i], indent);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_json(out, j[i], indent + 2);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else {
    out += j.dump();
  }
}

void flatten(std::string& out, const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(out, value, path.empty() ? key : path + "." + key);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(out, j[i], path + "[" + std::to_string(i) + "]");
  } else {
    std::string v = scalar_text(j);
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : v) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = quoted + "\"";
    }
    out += path + "," + v + "\n";
  }
}

}  // namespace

std::string emit_json(const Json& j) {
  std::string out;
  write_json(out, j, 0);
  out += '\n';
  return out;
}

std::string emit_csv(const Json& j) {
  std::string out = "key,value\n";
  flatten(out, j, "");
  return out;
}

}  // namespace cesaro
