#include "cesaro/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cesaro/sequences.hpp"

namespace cesaro {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (s[i] == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::string_view strip_brackets(std::string_view s, std::string_view field) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return s.substr(1, s.size() - 2);
  if (s.find_first_of("[]") != std::string_view::npos) throw ConfigError(std::string(field), 0, "unbalanced brackets");
  return s;
}

int line_of(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

int line_of_key(std::string_view text, std::string_view key) {
  const auto pos = text.find("\"" + std::string(key) + "\"");
  return pos == std::string_view::npos ? 0 : line_of(text, pos);
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : Error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "field '" + field + "': " + message),
      field_(std::move(field)),
      line_(line) {}

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::profile:
      return "profile";
    case ExperimentKind::spectrum:
      return "spectrum";
    case ExperimentKind::resolvent:
      return "resolvent";
    case ExperimentKind::eigenpairs:
      return "eigenpairs";
    case ExperimentKind::dynamics:
      return "dynamics";
    case ExperimentKind::suite:
      return "suite";
  }
  return "profile";
}

std::vector<ComplexLiteral> parse_lambda_list(std::string_view list, std::string_view field) {
  std::vector<ComplexLiteral> out;
  for (auto item : split_top_level(strip_brackets(list, field), ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(parse_complex(item));
    } catch (const std::exception& e) {
      throw ConfigError(std::string(field), 0, "bad complex literal '" + std::string(item) + "': " + e.what());
    }
  }
  return out;
}

std::vector<long> parse_int_list(std::string_view list, std::string_view field) {
  std::vector<long> out;
  for (auto item : split_top_level(strip_brackets(list, field), ',')) {
    if (item.empty()) continue;
    long v = 0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size() || v < 1)
      throw ConfigError(std::string(field), 0, "expected a positive integer, got '" + std::string(item) + "'");
    out.push_back(v);
  }
  return out;
}

Experiment parse_experiment(std::string_view token) {
  token = trim(token);
  const auto colon = token.find(':');
  const std::string_view name = token.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
  Experiment e;
  e.text = std::string(token);
  const auto no_args = [&] {
    if (!rest.empty()) throw ConfigError("experiments", 0, std::string(name) + " takes no arguments");
  };
  if (name == "profile") {
    e.kind = ExperimentKind::profile;
    no_args();
  } else if (name == "spectrum") {
    e.kind = ExperimentKind::spectrum;
    no_args();
  } else if (name == "suite") {
    e.kind = ExperimentKind::suite;
    no_args();
  } else if (name == "resolvent") {
    e.kind = ExperimentKind::resolvent;
    if (!rest.empty()) e.lambdas = parse_lambda_list(rest, "experiments");
  } else if (name == "eigenpairs") {
    e.kind = ExperimentKind::eigenpairs;
    if (!rest.empty()) e.ms = parse_int_list(rest, "experiments");
  } else if (name == "dynamics") {
    e.kind = ExperimentKind::dynamics;
    const auto parts = split_top_level(rest, ':');
    e.x_spec = parts[0].empty() ? "random" : std::string(parts[0]);
    const bool is_e = e.x_spec.size() > 1 && e.x_spec[0] == 'e' &&
                      std::all_of(e.x_spec.begin() + 1, e.x_spec.end(), [](char c) { return std::isdigit(c); });
    if (e.x_spec != "ones" && e.x_spec != "random" && !is_e)
      throw ConfigError("experiments", 0, "dynamics vector must be ones, e<j> or random, got '" + e.x_spec + "'");
    if (is_e && std::stol(e.x_spec.substr(1)) < 1) throw ConfigError("experiments", 0, "e<j> needs j >= 1");
    if (parts.size() > 2) throw ConfigError("experiments", 0, "dynamics takes <x>[:<m list>]");
    if (parts.size() == 2) e.ms = parse_int_list(parts[1], "experiments");
  } else {
    throw ConfigError("experiments", 0, "unknown experiment '" + std::string(name) + "'");
  }
  return e;
}

std::vector<Experiment> parse_experiment_list(std::string_view list) {
  std::vector<Experiment> out;
  for (auto token : split_top_level(list, ',')) {
    if (!token.empty()) out.push_back(parse_experiment(token));
  }
  return out;
}

void apply_config_json(AnalysisConfig& cfg, std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<document>", line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", 1, "top level must be an object");

  for (const auto& [key, value] : doc.items()) {
    const int line = line_of_key(text, key);
    const auto fail = [&](const std::string& msg) { throw ConfigError(key, line, msg); };
    const auto as_string_list = [&](const nlohmann::json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (!v.is_array()) fail("expected a string or an array");
      std::string joined;
      for (const auto& item : v) {
        if (!joined.empty()) joined += ',';
        if (item.is_string()) joined += item.get<std::string>();
        else if (item.is_number()) joined += item.dump();
        else fail("array items must be strings or numbers");
      }
      return joined;
    };
    const auto as_int = [&](long lo) {
      if (!value.is_number_integer()) fail("expected an integer");
      const long v = value.get<long>();
      if (v < lo) fail("must be >= " + std::to_string(lo));
      return v;
    };
    const auto rethrow_with_line = [&](auto&& fn) {
      try {
        fn();
      } catch (const ConfigError& e) {
        std::string msg = e.what();
        throw ConfigError(key, line, msg.substr(msg.find(": ") + 2));
      }
    };
    if (key == "alpha") {
      if (!value.is_string()) fail("expected a string");
      cfg.alpha = value.get<std::string>();
    } else if (key == "N") {
      cfg.N = as_int(2);
    } else if (key == "K") {
      cfg.K = static_cast<int>(as_int(1));
    } else if (key == "kmax") {
      cfg.kmax = static_cast<int>(as_int(1));
    } else if (key == "lmax") {
      cfg.lmax = static_cast<int>(as_int(0));
    } else if (key == "tol") {
      if (!value.is_number() || value.get<double>() <= 0) fail("expected a positive number");
      cfg.tol = value.get<double>();
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(as_int(0));
    } else if (key == "output") {
      if (value != "json" && value != "csv") fail("expected \"json\" or \"csv\"");
      cfg.format = value == "json" ? OutputFormat::json : OutputFormat::csv;
    } else if (key == "out") {
      if (!value.is_string()) fail("expected a string");
      cfg.out = value.get<std::string>();
    } else if (key == "experiments") {
      rethrow_with_line([&] { cfg.experiments = parse_experiment_list(as_string_list(value)); });
    } else if (key == "lambda") {
      rethrow_with_line([&] { cfg.lambdas = parse_lambda_list(as_string_list(value)); });
    } else if (key == "m") {
      rethrow_with_line([&] { cfg.ms = parse_int_list(as_string_list(value)); });
    } else if (key == "tolerances") {
      if (!value.is_object()) fail("expected an object");
      for (const auto& [tk, tv] : value.items()) {
        const int tline = line_of_key(text, tk);
        if (!tv.is_number() || tv.get<double>() <= 0) throw ConfigError("tolerances." + tk, tline, "expected a positive number");
        const double x = tv.get<double>();
        if (tk == "rel_trend") cfg.trend.rel_trend = x;
        else if (tk == "stable_band") cfg.trend.stable_band = x;
        else if (tk == "decay_slope") cfg.trend.decay_slope = x;
        else if (tk == "growth_slope") cfg.trend.growth_slope = x;
        else if (tk == "geometric_ratio") cfg.trend.geometric_ratio = x;
        else if (tk == "tail") cfg.trend.tail = static_cast<std::size_t>(x);
        else throw ConfigError("tolerances." + tk, tline, "unknown tolerance");
      }
    } else {
      fail("unknown field");
    }
  }
}

AnalysisConfig load_config_file(const std::string& path, AnalysisConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", 0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_json(base, ss.str());
  return base;
}

void validate(const AnalysisConfig& cfg) {
  try {
    (void)AlphaSequence::parse(cfg.alpha);
  } catch (const std::exception& e) {
    throw ConfigError("alpha", 0, e.what());
  }
  if (cfg.N < 2) throw ConfigError("N", 0, "must be >= 2");
  if (cfg.K < 1) throw ConfigError("K", 0, "must be >= 1");
  if (cfg.kmax < 1) throw ConfigError("kmax", 0, "must be >= 1");
  if (cfg.lmax < 0) throw ConfigError("lmax", 0, "must be >= 0");
  if (!(cfg.tol > 0)) throw ConfigError("tol", 0, "must be positive");
  if (cfg.trend.tail < 3) throw ConfigError("tolerances.tail", 0, "must be >= 3");
}

}  // namespace cesaro
