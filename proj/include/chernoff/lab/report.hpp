#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chernoff/analysis.hpp"
#include "chernoff/error.hpp"
#include "chernoff/lab/config.hpp"
#include "chernoff/lab/svg.hpp"

namespace chernoff::lab {

struct LeadingCoefficientReport {
  LeadingCoefficient estimate;
  /// Theoretical limit of n * error, when known (heat G1 on sin).
  std::optional<double> theory;
  /// The same constant without the e^{-a^2 t} factor, reported for comparison.
  std::optional<double> theory_without_decay;
  std::string note;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<ErrorRecord> records;
  std::optional<RegressionFit> fit;
  std::optional<LeadingCoefficientReport> leading;
  std::optional<ConjectureProbe> probe;
  double wall_time_seconds = 0.0;
  std::vector<std::string> notes;
};

namespace detail {

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string errors_csv(const std::vector<ErrorRecord>& records) {
  std::string out = "n,measured_error,closed_form_error,abs_gap\n";
  for (const ErrorRecord& r : records) {
    out += std::to_string(r.n) + "," + detail::g17(r.measured_error) + ",";
    if (r.closed_form_error) out += detail::g17(*r.closed_form_error);
    out += ",";
    if (const auto gap = r.abs_gap()) out += detail::g17(*gap);
    out += "\n";
  }
  return out;
}

struct CsvRow {
  long long n = 0;
  double measured_error = 0.0;
  std::optional<double> closed_form_error;
  std::optional<double> abs_gap;
};

inline std::vector<CsvRow> parse_errors_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n,measured_error,closed_form_error,abs_gap")
    throw IoError("errors.csv: unexpected header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split(line, ',');
    if (cells.size() != 4) throw IoError("errors.csv: expected 4 columns in '" + line + "'");
    CsvRow row;
    row.n = std::stoll(cells[0]);
    row.measured_error = std::stod(cells[1]);
    if (!cells[2].empty()) row.closed_form_error = std::stod(cells[2]);
    if (!cells[3].empty()) row.abs_gap = std::stod(cells[3]);
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::ordered_json to_json(const RunReport& rep) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : rep.config.entries) cfg[k] = v;
  j["config"] = cfg;

  ordered_json recs = ordered_json::array();
  for (const ErrorRecord& r : rep.records) {
    ordered_json o;
    o["n"] = r.n;
    o["measured_error"] = r.measured_error;
    o["closed_form_error"] = r.closed_form_error ? ordered_json(*r.closed_form_error) : ordered_json(nullptr);
    o["abs_gap"] = r.abs_gap() ? ordered_json(*r.abs_gap()) : ordered_json(nullptr);
    o["t"] = r.t;
    o["scheme"] = r.scheme;
    o["initial"] = r.initial;
    o["grid"] = r.grid;
    recs.push_back(o);
  }
  j["records"] = recs;

  if (rep.fit) {
    j["fit"] = {{"slope", rep.fit->slope},
                {"intercept", rep.fit->intercept},
                {"r_squared", rep.fit->r_squared},
                {"window", {rep.fit->n_min, rep.fit->n_max}}};
  } else {
    j["fit"] = nullptr;
  }

  if (rep.leading) {
    const auto& l = *rep.leading;
    ordered_json o;
    o["order"] = l.estimate.order;
    o["n_largest"] = l.estimate.n_largest;
    o["at_largest_n"] = l.estimate.at_largest_n;
    o["richardson"] = l.estimate.richardson;
    if (l.theory) o["theory"] = *l.theory;
    if (l.theory_without_decay) o["theory_without_decay_factor"] = *l.theory_without_decay;
    if (!l.note.empty()) o["note"] = l.note;
    j["leading_coefficient"] = o;
  } else {
    j["leading_coefficient"] = nullptr;
  }

  if (rep.probe) {
    j["conjecture_probe"] = {{"order", rep.probe->order},
                             {"sup_value", rep.probe->sup_value},
                             {"attained_at_n", rep.probe->attained_at_n},
                             {"trend", to_string(rep.probe->trend)}};
  } else {
    j["conjecture_probe"] = nullptr;
  }
  j["wall_time_seconds"] = rep.wall_time_seconds;
  j["notes"] = rep.notes;
  return j;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << data;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

/// Exact solution and the two lowest-degree approximations on a coarse copy of the grid.
inline PlotSpec overlay_plot(const Problem& pr, const std::vector<long long>& n_values, const MeasureLimits& limits,
                             const std::string& title) {
  const std::size_t count = std::min<std::size_t>(pr.grid.size(), 801);
  const Grid coarse(pr.grid.lower(), pr.grid.upper(), count);
  const std::vector<double> xs = coarse.points();

  PlotSpec spec;
  spec.title = title;
  spec.x_label = "x";
  spec.y_label = "u(t, x)";
  char name[64];
  std::snprintf(name, sizeof name, "exact solution, t = %g", pr.t);
  Series exact{name, xs, {}};
  for (double x : xs) exact.y.push_back(exact_solution(pr, x));
  spec.series.push_back(std::move(exact));
  for (std::size_t i = 0; i < std::min<std::size_t>(2, n_values.size()); ++i) {
    const ShiftMeasure m = composed_measure(pr, n_values[i], limits);
    std::snprintf(name, sizeof name, "approximation, n = %lld", n_values[i]);
    spec.series.push_back(Series{name, xs, apply_on_grid(m, pr.u0, coarse)});
  }
  return spec;
}

}  // namespace detail

/// Runs one experiment and writes the requested artifacts into cfg.output_dir
/// (no files when it is empty).
inline RunReport run_experiment(const ExperimentConfig& cfg, const MeasureLimits& limits = {}) {
  const auto start = std::chrono::steady_clock::now();
  const Problem pr = make_problem(cfg);

  RunReport rep;
  rep.config = cfg;
  rep.records = error_curve(pr, cfg.n_values, limits);

  try {
    rep.fit = loglog_fit(rep.records, cfg.fit_min, cfg.fit_max);
  } catch (const InsufficientDataError& e) {
    rep.notes.emplace_back(std::string("no regression: ") + e.what());
  }

  const double order = cfg.order.value_or(expected_order(pr));
  try {
    LeadingCoefficientReport lc;
    lc.estimate = leading_coefficient(rep.records, order);
    const auto* hs = std::get_if<heat::HeatScheme>(&pr.scheme);
    if (hs && hs->kind == heat::SchemeKind::G1 && pr.u0.kind() == InitialKind::Sin && order == 1.0) {
      const double a2t = pr.heat.a * pr.heat.a * pr.t;
      lc.theory_without_decay = a2t * a2t / 6.0;
      lc.theory = std::exp(-a2t) * *lc.theory_without_decay;
      lc.note =
          "n * error tends to e^{-a^2 t} a^4 t^2 / 6; the bare a^4 t^2 / 6 misses the e^{-a^2 t} factor "
          "of the exact solution";
    }
    rep.leading = lc;
  } catch (const InsufficientDataError& e) {
    rep.notes.emplace_back(std::string("no leading coefficient: ") + e.what());
  }

  try {
    rep.probe = conjecture_bound_probe(rep.records, cfg.probe_order);
  } catch (const InsufficientDataError& e) {
    rep.notes.emplace_back(std::string("no bound probe: ") + e.what());
  }

  if (!cfg.output_dir.empty()) {
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

    if (cfg.outputs.contains(Output::Svg)) {
      const std::string label = cfg.name.empty() ? std::string(to_string(cfg.equation)) : cfg.name;
      emit_plot(detail::overlay_plot(pr, cfg.n_values, limits, label + ": approximations to the solution"),
                (dir / "overlay.svg").string());
      emit_plot(error_plot(rep.records, label + ": convergence speed"), (dir / "error.svg").string());
      const bool any_positive =
          std::any_of(rep.records.begin(), rep.records.end(), [](const ErrorRecord& r) { return r.loggable(); });
      if (any_positive)
        emit_plot(loglog_plot(rep.records, rep.fit, label + ": convergence speed, log-log scale"),
                  (dir / "loglog.svg").string());
    }
    if (cfg.outputs.contains(Output::Csv)) detail::write_file(dir / "errors.csv", errors_csv(rep.records));
  }

  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!cfg.output_dir.empty() && cfg.outputs.contains(Output::Json))
    detail::write_file(std::filesystem::path(cfg.output_dir) / "report.json", to_json(rep).dump(2) + "\n");
  return rep;
}

}  // namespace chernoff::lab
