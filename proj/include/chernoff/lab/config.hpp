#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chernoff/analysis.hpp"
#include "chernoff/error.hpp"

namespace chernoff::lab {

enum class Output { Csv, Json, Svg };

/// A validated experiment description. Built by parse_config from flat
/// `key=value` entries; see known_keys() for the vocabulary.
struct ExperimentConfig {
  std::string name;
  Equation equation = Equation::Transport;
  std::string initial = "sin";  // sin | exp-abs | tabulated:<path>
  Scheme scheme = transport::PowerLawScheme{};
  double t = 1.0;
  double a = 1.0;
  std::string n_spec = "1..256(geometric)";
  std::vector<long long> n_values;
  double grid_lower = 0.0;
  double grid_upper = 2.0 * std::numbers::pi;
  std::size_t grid_count = 20001;
  std::set<Output> outputs{Output::Csv, Output::Json, Output::Svg};
  std::string output_dir;
  long long fit_min = 4;
  long long fit_max = -1;
  double probe_order = 1.0;
  std::optional<double> order;  // leading-coefficient order; theory default when unset
  bool allow_zero_t = false;

  /// Normalized key=value view of the config, stable across runs.
  std::map<std::string, std::string> entries;
};

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"name",   "equation", "initial",     "scheme", "t",     "a",
                                          "n",      "grid",     "outputs",     "out",    "fit_min", "fit_max",
                                          "probe_order", "order", "allow_zero_t"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

/// A real number, optionally written with pi: "pi", "2pi", "-pi", "0.5pi".
inline double parse_real(const std::string& key, const std::string& text) {
  std::string s = trim(text);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.resize(s.size() - 2);
    if (s.empty() || s == "+") s = "1";
    if (s == "-") s = "-1";
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v * factor;
  } catch (const std::exception&) {
    throw ValidationError(key, "expected a real number, got '" + text + "'");
  }
}

inline long long parse_int(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(key, "expected an integer, got '" + text + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ValidationError(key, "expected true or false, got '" + text + "'");
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Composition degrees: "16", "1,2,5,16", "1..100" (every integer) or
/// "1..64(geometric)" (powers of two from the lower bound, upper bound kept).
inline std::vector<long long> parse_n_spec(const std::string& text) {
  const std::string s = detail::trim(text);
  std::vector<long long> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    std::string hi_text = s.substr(dots + 2);
    bool geometric = false;
    if (const auto paren = hi_text.find('('); paren != std::string::npos) {
      const std::string mode = detail::trim(hi_text.substr(paren));
      if (mode == "(geometric)") {
        geometric = true;
      } else if (mode != "(linear)") {
        throw ValidationError("n", "unknown sampling " + mode);
      }
      hi_text = hi_text.substr(0, paren);
    }
    const long long lo = detail::parse_int("n", s.substr(0, dots));
    const long long hi = detail::parse_int("n", hi_text);
    if (lo < 1 || hi < lo) throw ValidationError("n", "range must satisfy 1 <= lo <= hi");
    if (!geometric && hi - lo > 1'000'000) throw ValidationError("n", "linear range too long");
    out = geometric ? geometric_range(lo, hi) : linear_range(lo, hi);
  } else {
    for (const std::string& part : detail::split(s, ',')) {
      const long long v = detail::parse_int("n", part);
      if (v < 1) throw ValidationError("n", "composition degrees must be >= 1");
      if (!out.empty() && v <= out.back()) throw ValidationError("n", "composition degrees must increase");
      out.push_back(v);
    }
  }
  if (out.empty()) throw ValidationError("n", "no composition degrees");
  return out;
}

inline Scheme parse_scheme(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s == "g1") return heat::HeatScheme{heat::SchemeKind::G1};
  if (s == "g2") return heat::HeatScheme{heat::SchemeKind::G2};
  if (s == "g3") return heat::HeatScheme{heat::SchemeKind::G3};
  if (s.rfind("power:", 0) == 0) {
    const auto parts = detail::split(s.substr(6), ',');
    if (parts.size() != 2) throw ValidationError("scheme", "power scheme needs power:a,k");
    const double a = detail::parse_real("scheme", parts[0]);
    const double k = detail::parse_real("scheme", parts[1]);
    if (!(a > 0.0)) throw ValidationError("scheme", "power scheme needs a > 0");
    if (!(k > 0.0)) throw ValidationError("scheme", "power scheme needs k > 0");
    return transport::PowerLawScheme(a, k);
  }
  if (s.rfind("slow:", 0) == 0) {
    const double g = detail::parse_real("scheme", s.substr(5));
    if (!(g > 0.0 && g < 1.0)) throw ValidationError("scheme", "slow scheme needs gamma in (0, 1)");
    return transport::SlowScheme(g);
  }
  throw ValidationError("scheme", "unknown scheme '" + text + "'");
}

/// Splits config text into key=value entries. Whitespace and newlines
/// separate entries; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> tokenize_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos || eq == 0) throw ValidationError(word, "expected key=value");
      out.emplace_back(word.substr(0, eq), word.substr(eq + 1));
    }
  }
  return out;
}

/// Builds a validated config from entry layers; later layers override earlier ones.
inline ExperimentConfig parse_config(const std::vector<std::vector<std::pair<std::string, std::string>>>& layers) {
  std::map<std::string, std::string> raw;
  for (const auto& layer : layers) {
    for (const auto& [key, value] : layer) {
      if (!known_keys().contains(key)) throw ValidationError(key, "unknown key");
      raw[key] = value;
    }
  }

  ExperimentConfig cfg;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("name")) cfg.name = *v;

  const auto* eq = get("equation");
  if (!eq) throw ValidationError("equation", "missing required key");
  if (*eq == "transport") {
    cfg.equation = Equation::Transport;
  } else if (*eq == "heat") {
    cfg.equation = Equation::Heat;
  } else {
    throw ValidationError("equation", "expected transport or heat, got '" + *eq + "'");
  }

  const auto* sc = get("scheme");
  if (!sc) throw ValidationError("scheme", "missing required key");
  cfg.scheme = parse_scheme(*sc);
  if (!scheme_fits(cfg.equation, cfg.scheme)) throw ValidationError("scheme", "scheme incompatible with equation");

  if (const auto* v = get("initial")) {
    if (*v != "sin" && *v != "exp-abs" && !(v->rfind("tabulated:", 0) == 0 && v->size() > 10))
      throw ValidationError("initial", "expected sin, exp-abs or tabulated:<path>");
    cfg.initial = *v;
  }

  if (const auto* v = get("allow_zero_t")) cfg.allow_zero_t = detail::parse_bool("allow_zero_t", *v);
  if (const auto* v = get("t")) cfg.t = detail::parse_real("t", *v);
  if (cfg.t < 0.0 || (cfg.t == 0.0 && !cfg.allow_zero_t))
    throw ValidationError("t", cfg.allow_zero_t ? "t must be >= 0" : "t must be > 0");

  if (const auto* v = get("a")) cfg.a = detail::parse_real("a", *v);
  if (!(cfg.a > 0.0)) throw ValidationError("a", "a must be > 0");

  if (const auto* v = get("n")) cfg.n_spec = *v;
  cfg.n_values = parse_n_spec(cfg.n_spec);

  if (cfg.initial != "sin") {
    cfg.grid_lower = -5.0;
    cfg.grid_upper = 5.0;
  }
  if (const auto* v = get("grid")) {
    const auto parts = detail::split(*v, ',');
    if (parts.size() != 3) throw ValidationError("grid", "expected lower,upper,count");
    cfg.grid_lower = detail::parse_real("grid", parts[0]);
    cfg.grid_upper = detail::parse_real("grid", parts[1]);
    const long long count = detail::parse_int("grid", parts[2]);
    if (!(cfg.grid_lower < cfg.grid_upper)) throw ValidationError("grid", "need lower < upper");
    if (count < 2) throw ValidationError("grid", "need at least 2 points");
    cfg.grid_count = static_cast<std::size_t>(count);
  }

  if (const auto* v = get("outputs")) {
    cfg.outputs.clear();
    for (const std::string& o : detail::split(*v, ',')) {
      if (o == "csv") {
        cfg.outputs.insert(Output::Csv);
      } else if (o == "json") {
        cfg.outputs.insert(Output::Json);
      } else if (o == "svg") {
        cfg.outputs.insert(Output::Svg);
      } else {
        throw ValidationError("outputs", "unknown output '" + o + "'");
      }
    }
  }
  if (const auto* v = get("out")) cfg.output_dir = *v;
  if (const auto* v = get("fit_min")) cfg.fit_min = detail::parse_int("fit_min", *v);
  if (cfg.fit_min < 1) throw ValidationError("fit_min", "must be >= 1");
  if (const auto* v = get("fit_max")) cfg.fit_max = detail::parse_int("fit_max", *v);
  if (const auto* v = get("probe_order")) cfg.probe_order = detail::parse_real("probe_order", *v);
  if (!(cfg.probe_order > 0.0)) throw ValidationError("probe_order", "must be > 0");
  if (const auto* v = get("order")) {
    cfg.order = detail::parse_real("order", *v);
    if (!(*cfg.order > 0.0)) throw ValidationError("order", "must be > 0");
  }

  auto& e = cfg.entries;
  if (!cfg.name.empty()) e["name"] = cfg.name;
  e["equation"] = to_string(cfg.equation);
  e["initial"] = cfg.initial;
  e["scheme"] = scheme_id(cfg.scheme);
  e["t"] = detail::format_real(cfg.t);
  e["a"] = detail::format_real(cfg.a);
  e["n"] = cfg.n_spec;
  e["grid"] = detail::format_real(cfg.grid_lower) + "," + detail::format_real(cfg.grid_upper) + "," +
              std::to_string(cfg.grid_count);
  std::string outs;
  for (Output o : cfg.outputs) {
    if (!outs.empty()) outs += ",";
    outs += o == Output::Csv ? "csv" : o == Output::Json ? "json" : "svg";
  }
  e["outputs"] = outs;
  e["fit_min"] = std::to_string(cfg.fit_min);
  if (cfg.fit_max >= 0) e["fit_max"] = std::to_string(cfg.fit_max);
  e["probe_order"] = detail::format_real(cfg.probe_order);
  if (cfg.order) e["order"] = detail::format_real(*cfg.order);
  return cfg;
}

inline ExperimentConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {}) {
  std::vector<std::pair<std::string, std::string>> flags;
  for (const std::string& o : overrides) {
    auto t = tokenize_config(o);
    flags.insert(flags.end(), t.begin(), t.end());
  }
  return parse_config({tokenize_config(text), flags});
}

/// Reads a two-column table "x y" (whitespace or comma separated, '#' comments).
inline InitialCondition load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tabulated initial condition '" + path + "'");
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream row(line);
    double x = 0.0;
    double y = 0.0;
    if (!(row >> x)) continue;
    if (!(row >> y)) throw ValidationError("initial", "tabulated row needs two columns: '" + line + "'");
    xs.push_back(x);
    ys.push_back(y);
  }
  try {
    return InitialCondition::tabulated(std::move(xs), std::move(ys), "tabulated:" + path);
  } catch (const DomainError& e) {
    throw ValidationError("initial", e.what());
  }
}

inline InitialCondition make_initial(const ExperimentConfig& cfg) {
  if (cfg.initial == "sin") return InitialCondition::sin();
  if (cfg.initial == "exp-abs") return InitialCondition::exp_abs();
  return load_tabulated(cfg.initial.substr(std::string("tabulated:").size()));
}

inline Problem make_problem(const ExperimentConfig& cfg) {
  Problem pr;
  pr.equation = cfg.equation;
  pr.u0 = make_initial(cfg);
  pr.scheme = cfg.scheme;
  pr.heat = heat::HeatParams(cfg.a);
  pr.t = cfg.t;
  pr.grid = Grid(cfg.grid_lower, cfg.grid_upper, cfg.grid_count);
  return pr;
}

}  // namespace chernoff::lab
