#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdmdirac/errors.hpp"
#include "pdmdirac/format.hpp"
#include "pdmdirac/model.hpp"
#include "pdmdirac/morse.hpp"
#include "pdmdirac/transform.hpp"
#include "pdmdirac/verify.hpp"

namespace pdmdirac::cli {

using json = nlohmann::ordered_json;

enum class Format { csv, json };

struct RunConfig {
  MorseParams params{1.0, 1.0, 0.25};
  GridSpec grid{};
  Format format = Format::csv;
  std::string output; // empty: standard output
  Normalization normalization = Normalization::component;

  void validate() const {
    if (!(grid.t_min < grid.t_max) || !std::isfinite(grid.t_min) || !std::isfinite(grid.t_max))
      throw parameter_error("grid requires finite t_min < t_max");
    if (grid.n < 65) throw parameter_error("grid requires n >= 65 points");
  }
};

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string csv_quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_cell(const Cell &c) {
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  return csv_quote(std::get<std::string>(c));
}

inline std::string to_csv(const Table &t) {
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + t.columns[j];
  out += '\n';
  for (const auto &row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_cell(row[j]);
    }
    out += '\n';
  }
  return out;
}

// Non-finite doubles become null.
inline json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline json json_cell(const Cell &c) {
  if (auto i = std::get_if<long long>(&c)) return *i;
  if (auto d = std::get_if<double>(&c)) return json_number(*d);
  return std::get<std::string>(c);
}

inline json params_json(const MorseParams &p) {
  return json{{"omega0", p.omega0()}, {"omega1", p.omega1()}, {"alpha", p.alpha()}, {"lambda", p.lambda_shift()}};
}

inline json grid_json(const GridSpec &g) {
  return json{{"t_min", g.t_min}, {"t_max", g.t_max}, {"n", g.n}};
}

inline json table_json(const Table &t, const RunConfig &cfg) {
  json rows = json::array();
  for (const auto &row : t.rows) {
    json r = json::object();
    for (std::size_t j = 0; j < row.size(); ++j) r[t.columns[j]] = json_cell(row[j]);
    rows.push_back(std::move(r));
  }
  return json{{"params", params_json(cfg.params)}, {"grid", grid_json(cfg.grid)}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------------------
// Report serialisation
// ---------------------------------------------------------------------------

inline CheckKind check_kind_from_string(const std::string &s) {
  if (s == "at_most") return CheckKind::at_most;
  if (s == "at_least") return CheckKind::at_least;
  if (s == "informational") return CheckKind::informational;
  throw parameter_error("unknown check kind: " + s);
}

inline json report_to_json(const VerificationReport &r) {
  json checks = json::array();
  for (const auto &c : r.checks)
    checks.push_back({{"name", c.name},
                      {"kind", std::string(to_string(c.kind))},
                      {"value", json_number(c.value)},
                      {"tolerance", json_number(c.tolerance)},
                      {"passed", c.passed},
                      {"detail", c.detail}});
  return json{{"params", params_json(r.params)},
                        {"grid", grid_json(r.grid)},
                        {"passed", r.all_passed()},
                        {"checks", std::move(checks)}};
}

inline double number_or(const json &j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

inline VerificationReport report_from_json(const json &j) {
  const auto &p = j.at("params");
  const auto &g = j.at("grid");
  VerificationReport r{{},
                       MorseParams(p.at("omega0").get<double>(), p.at("omega1").get<double>(),
                                   p.at("alpha").get<double>(), p.at("lambda").get<double>()),
                       GridSpec{g.at("t_min").get<double>(), g.at("t_max").get<double>(), g.at("n").get<std::size_t>()}};
  for (const auto &c : j.at("checks")) {
    const auto kind = check_kind_from_string(c.at("kind").get<std::string>());
    const double inf = std::numeric_limits<double>::infinity();
    r.checks.push_back({c.at("name").get<std::string>(), number_or(c.at("value"), std::nan("")),
                        number_or(c.at("tolerance"), inf), c.at("passed").get<bool>(),
                        c.at("detail").get<std::string>(), kind});
  }
  return r;
}

inline VerificationReport parse_report(const std::string &text) { return report_from_json(json::parse(text)); }

inline std::string format_report(const VerificationReport &r) { return report_to_json(r).dump(2) + "\n"; }

inline Table report_table(const VerificationReport &r) {
  Table t{{"name", "kind", "value", "tolerance", "passed", "detail"}, {}};
  for (const auto &c : r.checks)
    t.rows.push_back({c.name, std::string(to_string(c.kind)), c.value, c.tolerance,
                      static_cast<long long>(c.passed), c.detail});
  return t;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline Table spectrum_table(const RunConfig &cfg) {
  const auto closed = closed_form_spectrum(cfg.params);
  const auto numeric = numeric_spectrum(cfg.params, cfg.grid);
  Table t{{"n", "kappa", "ksq_closed", "E_closed", "ksq_numeric", "abs_error"}, {}};
  for (std::size_t i = 0; i < closed.levels.size(); ++i) {
    const auto &c = closed.levels[i];
    const double num = numeric.levels[i].ksq;
    t.rows.push_back({static_cast<long long>(c.n), c.kappa, c.ksq, c.energy, num, std::abs(num - c.ksq)});
  }
  return t;
}

enum class Component { upper, lower_operator, lower_printed };

inline Grid sampling_grid(const RunConfig &cfg, Coordinate coord) {
  return coord == Coordinate::t ? cfg.grid.t_grid() : cfg.grid.x_grid(cfg.params);
}

inline Table wavefunction_table(const RunConfig &cfg, int level, Coordinate coord, Component component) {
  const Grid g = sampling_grid(cfg, coord);
  ComplexField f = [&] {
    switch (component) {
    case Component::upper: return to_complex(upper_wavefunction(level, cfg.params, g, cfg.normalization).field);
    case Component::lower_operator: return lower_wavefunction_operator(level, cfg.params, g, cfg.normalization).field;
    case Component::lower_printed: break;
    }
    return lower_wavefunction_printed(level, cfg.params, g, cfg.normalization).field;
  }();
  Table t{{std::string(to_string(coord)), "re", "im"}, {}};
  t.rows.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t.rows.push_back({g[i], f[i].real(), f[i].imag()});
  return t;
}

inline Table partner_table(const RunConfig &cfg, Coordinate coord) {
  const Grid g = sampling_grid(cfg, coord);
  const auto pc = coord == Coordinate::t ? PartnerCoordinate::t : PartnerCoordinate::x;
  Table t{{std::string(to_string(coord)), "vplus", "vminus"}, {}};
  t.rows.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto v = partner_potentials(g[i], pc, cfg.params);
    t.rows.push_back({g[i], v.vplus, v.vminus});
  }
  return t;
}

inline Table effective_table(const RunConfig &cfg, const AmbiguityParams &amb) {
  const Grid g = cfg.grid.effective_grid(cfg.params);
  const auto system = ScalarField::sample(g, [&](double x) { return partner_potentials(x, PartnerCoordinate::x, cfg.params).vplus; });
  const auto mass = ScalarField::sample(g, [&](double x) { return eval_profiles(x, cfg.params).mass; });
  const auto veff = effective_potential(system, mass, amb);
  Table t{{"x", "veff_shift"}, {}};
  t.rows.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t.rows.push_back({g[i], veff[i] - system[i]});
  return t;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int verification_failed = 1;
inline constexpr int usage = 2;
inline constexpr int internal = 3;
} // namespace exit_code

inline void emit(const std::string &text, const RunConfig &cfg, std::ostream &out) {
  if (cfg.output.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw parameter_error("cannot open output file: " + cfg.output);
  file << text;
  if (!file) throw parameter_error("failed writing output file: " + cfg.output);
}

inline std::string render(const Table &t, const RunConfig &cfg) {
  return cfg.format == Format::csv ? to_csv(t) : table_json(t, cfg).dump(2) + "\n";
}

/// Runs the command line. argv[0] is the program name.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Dirac equation with position-dependent mass and Fermi velocity: Morse system"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; explicit flags take precedence");
  app.get_config_ptr()->check(CLI::ExistingFile);
  app.allow_config_extras(CLI::config_extras_mode::error);

  double omega0 = 1.0, omega1 = 1.0, alpha = 0.25, lambda = 0.0;
  GridSpec grid;
  std::string format = "csv", normalization = "component", output;
  app.add_option("--omega0", omega0, "superpotential offset")->capture_default_str();
  app.add_option("--omega1", omega1, "superpotential slope")->capture_default_str();
  app.add_option("--alpha", alpha, "Fermi velocity slope")->capture_default_str();
  app.add_option("--lambda", lambda, "cut-off energy added to both partners")->capture_default_str();
  app.add_option("--t-min", grid.t_min, "left end of the t-grid")->capture_default_str();
  app.add_option("--t-max", grid.t_max, "right end of the t-grid")->capture_default_str();
  app.add_option("--points", grid.n, "t-grid points (>= 65)")->capture_default_str();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--output", output, "output file (default: standard output)");
  app.add_option("--normalization", normalization, "normalisation of wavefunctions")
      ->check(CLI::IsMember({"component", "spinor"}))
      ->capture_default_str();

  auto *spectrum = app.add_subcommand("spectrum", "closed-form and numeric bound-state spectrum")->fallthrough();

  auto *wave = app.add_subcommand("wavefunction", "sample a spinor component")->fallthrough();
  int level = 0;
  std::string wave_coord = "t", component = "upper";
  wave->add_option("--n", level, "level index")->required();
  wave->add_option("--coordinate", wave_coord, "sampling coordinate")->check(CLI::IsMember({"x", "t"}))->capture_default_str();
  wave->add_option("--component", component, "spinor component")
      ->check(CLI::IsMember({"upper", "lower-operator", "lower-printed"}))
      ->capture_default_str();

  auto *partner = app.add_subcommand("partner", "sample the partner potentials")->fallthrough();
  std::string partner_coord = "t";
  partner->add_option("--coordinate", partner_coord, "sampling coordinate")->check(CLI::IsMember({"x", "t"}))->capture_default_str();

  auto *effective = app.add_subcommand("effective-potential", "V_eff - V for an ordering-ambiguity triple")->fallthrough();
  double eta = 0.0, beta = -1.0, gamma = 0.0;
  effective->add_option("--eta", eta)->capture_default_str();
  effective->add_option("--beta", beta)->capture_default_str();
  effective->add_option("--gamma", gamma)->capture_default_str();

  auto *verify = app.add_subcommand("verify", "run the verification suite")->fallthrough();
  std::string suite = "all";
  verify->add_option("--suite", suite, "checks to run")
      ->check(CLI::IsMember({"all", "spectrum", "susy", "dirac", "effective"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return exit_code::success;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::success;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  }

  try {
    RunConfig cfg{MorseParams(omega0, omega1, alpha, lambda), grid, format == "json" ? Format::json : Format::csv, output,
                  normalization == "spinor" ? Normalization::spinor : Normalization::component};
    cfg.validate();

    if (spectrum->parsed()) {
      emit(render(spectrum_table(cfg), cfg), cfg, out);
    } else if (wave->parsed()) {
      const auto comp = component == "upper"            ? Component::upper
                        : component == "lower-operator" ? Component::lower_operator
                                                        : Component::lower_printed;
      emit(render(wavefunction_table(cfg, level, wave_coord == "x" ? Coordinate::x : Coordinate::t, comp), cfg), cfg, out);
    } else if (partner->parsed()) {
      emit(render(partner_table(cfg, partner_coord == "x" ? Coordinate::x : Coordinate::t), cfg), cfg, out);
    } else if (effective->parsed()) {
      emit(render(effective_table(cfg, AmbiguityParams(eta, beta, gamma)), cfg), cfg, out);
    } else if (verify->parsed()) {
      static const std::map<std::string, Suite> suites{{"all", Suite::all},
                                                       {"spectrum", Suite::spectrum},
                                                       {"susy", Suite::susy},
                                                       {"dirac", Suite::dirac},
                                                       {"effective", Suite::effective}};
      const auto report = run_verification(cfg.params, cfg.grid, suites.at(suite));
      emit(cfg.format == Format::csv ? to_csv(report_table(report)) : format_report(report), cfg, out);
      if (!report.all_passed()) return exit_code::verification_failed;
    }
    return exit_code::success;
  } catch (const solver_error &e) {
    err << "solver error: " << e.what() << "\n";
    return exit_code::internal;
  } catch (const std::invalid_argument &e) { // parameter_error, grid_error
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  std::vector<const char *> argv{"pdmdirac"};
  for (const auto &a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace pdmdirac::cli
