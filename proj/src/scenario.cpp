#include "dqlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dqlab/decoherence.hpp"
#include "dqlab/fidelity.hpp"
#include "dqlab/singleatom.hpp"
#include "dqlab/twoatom.hpp"

namespace dqlab {

namespace {

using nlohmann::ordered_json;
using std::numbers::pi;

using ParamValue = std::variant<double, std::vector<double>, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

// Strict parameter access: every key must be consumed exactly once.
class ParamReader {
 public:
  explicit ParamReader(const ParamMap& params) : remaining_(params) {}

  double number(const std::string& key, double fallback) {
    auto node = take(key);
    if (!node) return fallback;
    if (const double* v = std::get_if<double>(&*node)) return *v;
    throw ConfigError("param '" + key + "' must be a number");
  }

  std::vector<double> number_list(const std::string& key, std::vector<double> fallback) {
    auto node = take(key);
    if (!node) return fallback;
    if (const auto* v = std::get_if<std::vector<double>>(&*node)) return *v;
    throw ConfigError("param '" + key + "' must be an array of numbers");
  }

  void finish() const {
    if (remaining_.empty()) return;
    std::string keys;
    for (const auto& [k, v] : remaining_) keys += (keys.empty() ? "" : ", ") + k;
    throw ConfigError("unknown param key(s): " + keys);
  }

 private:
  std::optional<ParamValue> take(const std::string& key) {
    auto it = remaining_.find(key);
    if (it == remaining_.end()) return std::nullopt;
    ParamValue v = it->second;
    remaining_.erase(it);
    return v;
  }

  ParamMap remaining_;
};

long checked_count(double raw, const char* what, long lo, long hi) {
  if (!(raw >= lo) || !(raw <= hi) || raw != std::floor(raw)) {
    throw ConfigError(std::string(what) + " must be an integer in [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  return static_cast<long>(raw);
}

std::vector<double> linspace(double t_max, long n_points) {
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  std::vector<double> grid(n_points);
  for (long k = 0; k < n_points; ++k) {
    grid[k] = t_max * static_cast<double>(k) / static_cast<double>(n_points - 1);
  }
  return grid;
}

void push_matrix_entries(ReportTable& table, const ComplexMatrix& m, double tag,
                         bool with_tag) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::vector<double> row;
      if (with_tag) row.push_back(tag);
      row.insert(row.end(), {static_cast<double>(i), static_cast<double>(j),
                             m(i, j).real(), m(i, j).imag()});
      table.rows.push_back(std::move(row));
    }
  }
}

ScenarioReport run_rabi(const ScenarioConfig& cfg) {
  ParamReader pr(cfg.params);
  const double omega_ratio = pr.number("omega_ratio", 96.0);
  const double t_max = pr.number("t_max", 4.0 * pi);
  const long n_points = checked_count(pr.number("n_points", 201.0), "n_points", 2, 1000000);
  const double delta = pr.number("delta", 0.0);
  pr.finish();

  PhysParams p;
  p.omega = omega_ratio;
  p.validate();

  const auto grid = linspace(t_max, n_points);
  const RabiAmplitudes initial{1.0, 0.0, 0.0, 0.0};
  const ComplexMatrix coupling =
      p.hbar * p.omega_rabi * ComplexMatrix::Identity(2, 2);
  const auto ode = integrate_odes_grid(grid, initial, p, delta, coupling);

  // On resonance the emitted series is the closed form; the integrator is a
  // cross-check reported as a scalar. Off resonance only the integrator runs.
  const bool resonant = delta == 0.0;
  ReportTable table;
  table.name = "timeseries";
  table.columns = {"t",        "alpha0_re", "alpha0_im", "alpha1_re", "alpha1_im",
                   "beta0_re", "beta0_im",  "beta1_re",  "beta1_im",  "p_alpha0",
                   "p_alpha1", "p_beta0",   "p_beta1"};
  double max_ode_dev = 0.0;
  for (size_t k = 0; k < grid.size(); ++k) {
    const RabiAmplitudes a =
        resonant ? rabi_amplitudes(grid[k], initial, p) : ode[k];
    if (resonant) {
      max_ode_dev = std::max(max_ode_dev, std::abs(std::norm(ode[k].beta0) -
                                                   std::norm(a.beta0)));
    }
    table.rows.push_back({grid[k], a.alpha0.real(), a.alpha0.imag(), a.alpha1.real(),
                          a.alpha1.imag(), a.beta0.real(), a.beta0.imag(), a.beta1.real(),
                          a.beta1.imag(), std::norm(a.alpha0), std::norm(a.alpha1),
                          std::norm(a.beta0), std::norm(a.beta1)});
  }

  ScenarioReport report;
  if (resonant) report.scalars.emplace_back("max_ode_deviation_p_beta0", max_ode_dev);
  report.tables.push_back(std::move(table));
  return report;
}

ScenarioReport run_hadamard(const ScenarioConfig& cfg) {
  ParamReader pr(cfg.params);
  PhysParams p;
  p.omega = pr.number("omega_ratio", 96.0);
  p.r = pr.number("r", 0.0);
  p.theta = pr.number("theta", 0.0);
  pr.finish();
  p.validate();

  const ComplexMatrix gate = hadamard_gate(p);

  ScenarioReport report;
  report.scalars.emplace_back("phase_distance_ideal", phase_distance(gate, ideal_hadamard()));
  report.scalars.emplace_back("unitarity_error", unitarity_error(gate));
  ReportTable table;
  table.name = "gate";
  table.columns = {"row", "col", "re", "im"};
  push_matrix_entries(table, gate, 0.0, false);
  report.tables.push_back(std::move(table));
  return report;
}

ScenarioReport run_expand(const ScenarioConfig& cfg) {
  ParamReader pr(cfg.params);
  PhysParams p;
  p.omega = pr.number("omega_ratio", 96.0);
  p.theta = pr.number("theta", 0.0);
  const auto r_values =
      pr.number_list("r_values", {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2});
  pr.finish();
  p.validate();
  if (r_values.size() < 2) throw ConfigError("r_values needs at least 2 entries");
  for (double r : r_values) {
    if (!(r > 0.0) || !(r <= 0.1)) throw ConfigError("r_values must lie in (0, 0.1]");
  }

  const auto coeffs = taylor_expand_gate(p, 2);

  ScenarioReport report;
  ReportTable ctab;
  ctab.name = "coefficients";
  ctab.columns = {"order", "row", "col", "re", "im"};
  for (size_t k = 0; k < coeffs.size(); ++k) {
    push_matrix_entries(ctab, coeffs[k], static_cast<double>(k), true);
  }

  ReportTable cmp;
  cmp.name = "printed_comparison";
  cmp.columns = {"order", "row", "col", "re_numeric", "im_numeric",
                 "re_printed", "im_printed", "abs_diff"};
  const ComplexMatrix printed[2] = {printed_first_order(p), printed_second_order(p)};
  double max_diff[2] = {0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    const ComplexMatrix& num = coeffs[k + 1];
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double diff = std::abs(num(i, j) - printed[k](i, j));
        max_diff[k] = std::max(max_diff[k], diff);
        cmp.rows.push_back({static_cast<double>(k + 1), static_cast<double>(i),
                            static_cast<double>(j), num(i, j).real(), num(i, j).imag(),
                            printed[k](i, j).real(), printed[k](i, j).imag(), diff});
      }
    }
  }

  ReportTable dev;
  dev.name = "deviation";
  dev.columns = {"r", "residual"};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double r : r_values) {
    PhysParams q = p;
    q.r = r;
    ComplexMatrix rem = hadamard_gate(q) - coeffs[0] - r * coeffs[1] - r * r * coeffs[2];
    const double residual = rem.norm();
    dev.rows.push_back({r, residual});
    const double x = std::log(r);
    const double y = std::log(residual);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(r_values.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  report.scalars.emplace_back("residual_loglog_slope", slope);
  report.scalars.emplace_back("max_abs_diff_order1", max_diff[0]);
  report.scalars.emplace_back("max_abs_diff_order2", max_diff[1]);
  report.tables.push_back(std::move(ctab));
  report.tables.push_back(std::move(cmp));
  report.tables.push_back(std::move(dev));
  return report;
}

ScenarioReport run_fidelity_sweep(const ScenarioConfig& cfg) {
  ParamReader pr(cfg.params);
  PhysParams p;
  p.omega = pr.number("omega_ratio", 96.0);
  const auto theta_values = pr.number_list("theta_values", {0.0});
  const auto r_values = pr.number_list("r_values", {0.0, 1e-3, 3e-3, 1e-2, 3e-2});
  const long mc_samples =
      checked_count(pr.number("mc_samples", 0.0), "mc_samples", 0, 100000000);
  pr.finish();
  if (theta_values.empty()) throw ConfigError("theta_values must be non-empty");
  if (r_values.empty()) throw ConfigError("r_values must be non-empty");
  if (mc_samples != 0 && mc_samples < 1000) {
    throw ConfigError("mc_samples must be 0 (off) or >= 1000");
  }

  const ComplexMatrix target = ideal_hadamard();

  ReportTable table;
  table.name = "fidelity";
  table.columns = {"theta", "r", "f_closed"};
  if (mc_samples > 0) {
    table.columns.push_back("f_mc");
    table.columns.push_back("f_mc_stderr");
  }

  std::uint64_t row_index = 0;
  for (double theta : theta_values) {
    for (double r : r_values) {
      PhysParams q = p;
      q.theta = theta;
      q.r = r;
      q.validate();
      const ComplexMatrix gate = hadamard_gate(q);
      std::vector<double> row = {theta, r, avg_fidelity_closed(target, gate, 4)};
      if (mc_samples > 0) {
        auto [mean, se] = avg_fidelity_mc(target, gate, mc_samples,
                                          SplitMix64::derive(cfg.seed, row_index));
        row.push_back(mean);
        row.push_back(se);
      }
      table.rows.push_back(std::move(row));
      ++row_index;
    }
  }

  ScenarioReport report;
  report.scalars.emplace_back("c2_formula",
                              fidelity_series_coefficient(p.omega, p.omega_rabi, p.hbar));

  // Fit 1 - F = c r^2 when the sweep contains enough perturbative points.
  std::vector<double> fit_r;
  std::set<double> distinct;
  for (double r : r_values) {
    if (r > 0.0 && r <= 0.03 && distinct.insert(r).second) fit_r.push_back(r);
  }
  if (fit_r.size() >= 3) {
    ReportTable fit;
    fit.name = "fit";
    fit.columns = {"theta", "c2_fit", "max_rel_residual"};
    for (double theta : theta_values) {
      auto [c_hat, resid] = fit_quadratic_loss(p, fit_r, theta);
      fit.rows.push_back({theta, c_hat, resid});
    }
    report.tables.push_back(std::move(fit));
  }
  report.tables.insert(report.tables.begin(), std::move(table));
  return report;
}

ScenarioReport run_cz(const ScenarioConfig& cfg) {
  ParamReader pr(cfg.params);
  TwoAtomModel model;
  const double wt = pr.number("wt", pi / 4.0);
  const double h_abs = pr.number("h_abs", 1.0);
  const double arg_h = pr.number("arg_h", 0.0);
  pr.finish();
  if (!(h_abs > 0.0)) throw ConfigError("h_abs must be positive");
  if (!(wt >= 0.0)) throw ConfigError("wt must be non-negative");
  model.h = std::polar(h_abs, arg_h);

  const double t = wt / model.omega_prime();
  const ComplexMatrix u = u_ab_closed(t, model);
  const auto [c, d] = extract_cd(u);
  const auto seq = cz_sequence(u, c, d);
  const auto timing = solve_cz_time(model);

  ScenarioReport report;
  report.scalars.emplace_back("c", ScalarValue(seq.diag.c));
  report.scalars.emplace_back("d", ScalarValue(seq.diag.d));
  report.scalars.emplace_back("theta", seq.diag.theta);
  report.scalars.emplace_back("offdiag_max", seq.diag.offdiag_max);
  report.scalars.emplace_back("phase", ScalarValue(seq.diag.phase));
  report.scalars.emplace_back("t_star", timing.t_star);
  report.scalars.emplace_back("t_literal", timing.t_literal);
  report.scalars.emplace_back("timing_discrepancy", timing.discrepancy);

  ReportTable table;
  table.name = "u5_diagonal";
  table.columns = {"index", "re", "im"};
  for (int m = 0; m < 16; ++m) {
    table.rows.push_back({static_cast<double>(m), seq.u5(m, m).real(), seq.u5(m, m).imag()});
  }
  report.tables.push_back(std::move(table));
  return report;
}

ScenarioReport run_dephase(const ScenarioConfig& cfg) {
  ParamReader pr(cfg.params);
  DephasingParams p;
  p.mu = pr.number("mu", 1.0);
  p.b0 = pr.number("b0", 1.0);
  const double t_max = pr.number("t_max", 2.0);
  const long n_points = checked_count(pr.number("n_points", 21.0), "n_points", 2, 100000);
  p.n_traj = checked_count(pr.number("n_traj", 2000.0), "n_traj", 1, 10000000);
  p.n_steps = checked_count(pr.number("n_steps", 400.0), "n_steps", 10, 10000000);
  const double sign_raw = pr.number("sign", 1.0);
  pr.finish();
  if (sign_raw != 1.0 && sign_raw != -1.0) throw ConfigError("sign must be +-1");
  const int sign = static_cast<int>(sign_raw);

  auto grid = linspace(t_max, n_points);
  grid.front() = 0.0;
  p.t_grid = grid;
  p.seed = cfg.seed;

  const auto rhos = mc_dephase_bell(sign, p);

  ReportTable table;
  table.name = "offdiagonal";
  table.columns = {"t", "analytic", "mc"};
  double max_err = 0.0;
  for (size_t k = 0; k < grid.size(); ++k) {
    const double analytic = dephase_offdiagonal(p, grid[k]);
    const double mc = 2.0 * std::abs(rhos[k](0, 3));
    max_err = std::max(max_err, std::abs(mc - analytic));
    table.rows.push_back({grid[k], analytic, mc});
  }

  ScenarioReport report;
  report.scalars.emplace_back("max_abs_err", max_err);
  report.tables.push_back(std::move(table));
  return report;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_csv_scalar(std::ostringstream& out, const std::string& name, const ScalarValue& v) {
  if (const double* x = std::get_if<double>(&v)) {
    out << "# " << name << "," << format_double(*x) << "\n";
  } else {
    const Complex z = std::get<Complex>(v);
    out << "# " << name << "_re," << format_double(z.real()) << "\n";
    out << "# " << name << "_im," << format_double(z.imag()) << "\n";
  }
}

std::string emit_csv(const ScenarioReport& report) {
  std::ostringstream out;
  out << "# dqlab " << report.command << "\n";
  out << "# seed," << report.seed << "\n";
  for (const auto& [name, value] : report.scalars) emit_csv_scalar(out, name, value);
  bool first = true;
  for (const ReportTable& table : report.tables) {
    if (!first) out << "\n";
    first = false;
    out << "# table: " << table.name << "\n";
    for (size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
      for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
      out << "\n";
    }
  }
  return out.str();
}

std::string emit_json(const ScenarioReport& report) {
  ordered_json doc;
  doc["command"] = report.command;
  doc["seed"] = report.seed;
  ordered_json scalars = ordered_json::object();
  for (const auto& [name, value] : report.scalars) {
    if (const double* x = std::get_if<double>(&value)) {
      scalars[name] = *x;
    } else {
      const Complex z = std::get<Complex>(value);
      scalars[name] = {{"re", z.real()}, {"im", z.imag()}};
    }
  }
  doc["scalars"] = std::move(scalars);
  ordered_json tables = ordered_json::array();
  for (const ReportTable& table : report.tables) {
    ordered_json t;
    t["name"] = table.name;
    t["columns"] = table.columns;
    t["rows"] = table.rows;
    tables.push_back(std::move(t));
  }
  doc["tables"] = std::move(tables);
  return doc.dump(2) + "\n";
}

std::pair<long, long> line_and_column(const std::string& text, size_t byte_pos) {
  long line = 1, col = 1;
  for (size_t k = 0; k < byte_pos && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ParamValue convert_param(const std::string& key, const nlohmann::json& node) {
  if (node.is_number()) {
    const double v = node.get<double>();
    if (!std::isfinite(v)) throw ConfigError("param '" + key + "' must be finite");
    return v;
  }
  if (node.is_array()) {
    std::vector<double> values;
    for (const auto& item : node) {
      if (!item.is_number()) {
        throw ConfigError("param '" + key + "' must be an array of numbers");
      }
      const double v = item.get<double>();
      if (!std::isfinite(v)) throw ConfigError("param '" + key + "' must be finite");
      values.push_back(v);
    }
    return values;
  }
  if (node.is_string()) return node.get<std::string>();
  throw ConfigError("param '" + key + "' has an unsupported type");
}

}  // namespace

ScenarioCommand parse_command(const std::string& name) {
  if (name == "rabi") return ScenarioCommand::kRabi;
  if (name == "hadamard") return ScenarioCommand::kHadamard;
  if (name == "expand") return ScenarioCommand::kExpand;
  if (name == "fidelity-sweep") return ScenarioCommand::kFidelitySweep;
  if (name == "cz") return ScenarioCommand::kCz;
  if (name == "dephase") return ScenarioCommand::kDephase;
  throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(ScenarioCommand command) {
  switch (command) {
    case ScenarioCommand::kRabi:
      return "rabi";
    case ScenarioCommand::kHadamard:
      return "hadamard";
    case ScenarioCommand::kExpand:
      return "expand";
    case ScenarioCommand::kFidelitySweep:
      return "fidelity-sweep";
    case ScenarioCommand::kCz:
      return "cz";
    case ScenarioCommand::kDephase:
      return "dephase";
  }
  throw ConfigError("unknown command enum value");
}

ScenarioConfig parse_config(ScenarioCommand command, const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_and_column(json_text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("malformed JSON at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

  ScenarioConfig cfg;
  cfg.command = command;
  for (const auto& [key, node] : doc.items()) {
    if (key == "params") {
      if (!node.is_object()) throw ConfigError("'params' must be an object");
      for (const auto& [pkey, pnode] : node.items()) {
        cfg.params.emplace(pkey, convert_param(pkey, pnode));
      }
    } else if (key == "seed") {
      if (!node.is_number_unsigned()) {
        throw ConfigError("'seed' must be a non-negative integer");
      }
      cfg.seed = node.get<std::uint64_t>();
    } else if (key == "format") {
      const std::string f = node.is_string() ? node.get<std::string>() : "";
      if (f == "csv") {
        cfg.format = ReportFormat::kCsv;
      } else if (f == "json") {
        cfg.format = ReportFormat::kJson;
      } else {
        throw ConfigError("'format' must be \"csv\" or \"json\"");
      }
    } else if (key == "output") {
      if (!node.is_string()) throw ConfigError("'output' must be a string");
      cfg.output_path = node.get<std::string>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  ScenarioReport report;
  switch (cfg.command) {
    case ScenarioCommand::kRabi:
      report = run_rabi(cfg);
      break;
    case ScenarioCommand::kHadamard:
      report = run_hadamard(cfg);
      break;
    case ScenarioCommand::kExpand:
      report = run_expand(cfg);
      break;
    case ScenarioCommand::kFidelitySweep:
      report = run_fidelity_sweep(cfg);
      break;
    case ScenarioCommand::kCz:
      report = run_cz(cfg);
      break;
    case ScenarioCommand::kDephase:
      report = run_dephase(cfg);
      break;
  }
  report.command = command_name(cfg.command);
  report.seed = cfg.seed;
  return report;
}

std::string emit_report(const ScenarioReport& report, ReportFormat format) {
  if (report.tables.empty()) throw ValidationError("emit_report: empty results");
  for (const ReportTable& table : report.tables) {
    for (const auto& row : table.rows) {
      if (row.size() != table.columns.size()) {
        throw ValidationError("emit_report: row width mismatch in table " + table.name);
      }
    }
  }
  return format == ReportFormat::kCsv ? emit_csv(report) : emit_json(report);
}

void run_and_write(const ScenarioConfig& cfg) {
  if (cfg.output_path.empty()) {
    throw ConfigError("no output path: pass --out or set \"output\" in the config");
  }
  const ScenarioReport report = run_scenario(cfg);
  const std::string text = emit_report(report, cfg.format);
  std::ofstream out(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw NumericalError("cannot open output file " + cfg.output_path);
  out << text;
  out.flush();
  if (!out) throw NumericalError("failed writing output file " + cfg.output_path);
}

}  // namespace dqlab
