// Command-line front door: closed-form and quadrature moment routes, the
// contour cross-check, the lattice simulator, and the front analyzer.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pam/contour.hpp"
#include "pam/errors.hpp"
#include "pam/front.hpp"
#include "pam/moments.hpp"
#include "pam/sim.hpp"
#include "pam/specfun.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitValidation = 5;

struct Options {
  double nu = 1.0, lambda = 1.0, t = 1.0;
  double x = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;
  int k = 3;
  double rel_tol = 1e-10;
  long long max_evals = 2'000'000;
  std::vector<double> alphas;  // contour placements, descending
  double half_height = 0.0;
  int nodes_per_unit = 0;
  std::vector<double> t_list{10.0, 20.0, 40.0};
  double alpha_max = -1.0;  // default derived from lambda
  double alpha_step = 0.01;
  // simulator
  double L = 1.0, t_end = 0.01, dt = 0.0, delta_width = 0.0, clip = 500.0;
  int nx = 201, replicas = 100;
  unsigned long long seed = 1;
  int time_stride = 0, space_stride = 1;
  std::string snapshot_csv, snapshot_bin;
  int bertini_k = 0;
  bool one_point_variant = false;
  // output
  std::string format = "json";
  std::string output_path;
  bool log_scale = false;
};

pam::ModelParams params_of(const Options& o) { return {o.nu, o.lambda, o.t}; }

pam::QuadratureConfig quad_of(const Options& o) {
  pam::QuadratureConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.max_evals = o.max_evals;
  return cfg;
}

pam::ContourConfig contour_of(const Options& o, int k, const pam::ModelParams& p) {
  pam::ContourConfig cc = pam::ContourConfig::defaults_for(k, p);
  if (!o.alphas.empty()) cc.alphas = o.alphas;
  cc.half_height = o.half_height;
  cc.nodes_per_unit = o.nodes_per_unit;
  return cc;
}

void put_value(json& out, const std::string& name, const pam::LogValue& v, bool log_scale) {
  const double plain = v.to_value();
  if (std::isfinite(plain)) out[name] = plain;
  if (log_scale || !std::isfinite(plain)) {
    out["log_" + name] = v.log_abs;
    out["sign_" + name] = v.sign;
  }
}

void emit(const json& report, const Options& o) {
  std::string text;
  if (o.format == "json") {
    text = report.dump(2);
    text.push_back('\n');
  } else {
    // Flat CSV: shared input columns, then output columns; array-valued
    // outputs produce one row per entry.
    std::string header, row;
    const json& outs = report.at("outputs");
    for (auto& [k, v] : report.at("inputs").items()) {
      header += k + ",";
      row += v.dump() + ",";
    }
    size_t rows = 1;
    for (auto& [k, v] : outs.items()) {
      header += k + ",";
      if (v.is_array()) rows = std::max(rows, v.size());
    }
    header.pop_back();
    text = header + "\n";
    for (size_t r = 0; r < rows; ++r) {
      std::string line = row;
      for (auto& [k, v] : outs.items()) {
        if (v.is_array())
          line += (r < v.size() ? v[r].dump() : "") + std::string(",");
        else
          line += (r == 0 ? (v.is_structured() ? "\"" + v.dump() + "\"" : v.dump()) : "") +
                  std::string(",");
      }
      line.pop_back();
      text += line + "\n";
    }
  }
  if (o.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.output_path);
    if (!f) throw pam::DomainError("cannot open output path " + o.output_path);
    f << text;
  }
}

json inputs_common(const Options& o) {
  return json{{"nu", o.nu}, {"lambda", o.lambda}, {"t", o.t}};
}

int run_moment2(const Options& o) {
  const pam::ModelParams p = params_of(o);
  const pam::LogValue v = pam::second_moment_two_point_log(p, o.x1, o.x2);
  json report;
  report["command"] = "moment2";
  report["inputs"] = inputs_common(o);
  report["inputs"]["x1"] = o.x1;
  report["inputs"]["x2"] = o.x2;
  report["route"] = "two_point_closed_form";
  json& outs = report["outputs"] = json::object();
  put_value(outs, "value", v, o.log_scale);
  if (o.one_point_variant && o.x1 == o.x2) {
    put_value(outs, "one_point_variant", pam::second_moment_one_point_variant_log(p, o.x1),
              o.log_scale);
    outs["one_point_variant_authoritative"] = false;
  }
  emit(report, o);
  return kExitOk;
}

int run_moment3(const Options& o) {
  const pam::ModelParams p = params_of(o);
  const pam::MomentEval ev = pam::third_moment(p, o.x, quad_of(o));
  json report;
  report["command"] = "moment3";
  report["inputs"] = inputs_common(o);
  report["inputs"]["x"] = o.x;
  report["route"] = "one_dimensional_integral";
  json& outs = report["outputs"] = json::object();
  put_value(outs, "value", ev.log_value, o.log_scale);
  outs["rel_err_est"] = ev.rel_err;
  outs["evals"] = ev.evals;
  emit(report, o);
  return kExitOk;
}

int run_three_point(const Options& o) {
  const pam::ModelParams p = params_of(o);
  const pam::MomentEval ev = pam::third_moment_three_point(p, {o.x1, o.x2, o.x3}, quad_of(o));
  json report;
  report["command"] = "three-point";
  report["inputs"] = inputs_common(o);
  report["inputs"]["x1"] = o.x1;
  report["inputs"]["x2"] = o.x2;
  report["inputs"]["x3"] = o.x3;
  report["route"] = "triple_integral";
  json& outs = report["outputs"] = json::object();
  put_value(outs, "value", ev.log_value, o.log_scale);
  outs["rel_err_est"] = ev.rel_err;
  outs["evals"] = ev.evals;
  emit(report, o);
  return kExitOk;
}

int run_oracle(const Options& o) {
  const pam::ModelParams p = params_of(o);
  std::vector<double> xs;
  if (o.k == 2)
    xs = {o.x1, o.x2};
  else
    xs = {o.x1, o.x2, o.x3};
  const pam::ContourConfig cc = contour_of(o, o.k, p);
  const pam::ContourResult r = pam::bc_contour_moment(o.k, p, xs, cc);
  json report;
  report["command"] = "oracle";
  report["inputs"] = inputs_common(o);
  report["inputs"]["k"] = o.k;
  report["inputs"]["points"] = xs;
  report["route"] = "contour_k" + std::to_string(o.k);
  report["contour"] = {{"alphas", cc.alphas}};
  json& outs = report["outputs"] = json::object();
  outs["value"] = r.value;
  outs["imag_residual"] = r.imag_residual;
  outs["err_est"] = r.err_est;
  outs["evals"] = r.evals;
  emit(report, o);
  return kExitOk;
}

int run_bounds(const Options& o) {
  const pam::ModelParams p = params_of(o);
  const pam::MomentBounds b = pam::third_moment_bounds(p, o.x);
  const pam::ABRange r = pam::ab_range(p);
  json report;
  report["command"] = "bounds";
  report["inputs"] = inputs_common(o);
  report["inputs"]["x"] = o.x;
  report["route"] = "mean_value_bracket";
  json& outs = report["outputs"] = json::object();
  put_value(outs, "lower", b.lower, o.log_scale);
  put_value(outs, "upper", b.upper, o.log_scale);
  outs["ab_range"] = {r.a_lo, r.a_hi, r.b_lo, r.b_hi};
  emit(report, o);
  return kExitOk;
}

int run_front(const Options& o) {
  const pam::ModelParams p = params_of(o);
  const double amax = (o.alpha_max > 0.0) ? o.alpha_max : 1.5 * p.lambda2();
  std::vector<double> grid;
  for (double a = 0.0; a <= amax + 1e-12; a += o.alpha_step) grid.push_back(a);
  const pam::FrontResult fr = pam::empirical_front(p, o.t_list, grid, quad_of(o));
  json report;
  report["command"] = "front";
  report["inputs"] = inputs_common(o);
  report["inputs"]["t_list"] = o.t_list;
  report["inputs"]["alpha_step"] = o.alpha_step;
  report["inputs"]["alpha_max"] = amax;
  json& outs = report["outputs"] = json::object();
  outs["lambda_p"] = fr.lambda_p;
  outs["order"] = fr.p;
  outs["growth_index_closed_form"] = pam::growth_index(3, p.lambda);
  outs["alpha_grid"] = fr.alpha_grid;
  outs["rate_values"] = fr.rate_values;
  emit(report, o);
  return kExitOk;
}

int run_simulate(const Options& o) {
  const pam::ModelParams p = params_of(o);
  pam::SimGrid g;
  g.half_width = o.L;
  g.nx = o.nx;
  g.t_end = o.t_end;
  g.dt = (o.dt > 0.0) ? o.dt : g.dx() * g.dx() / (4.0 * p.nu);
  g.delta_width = o.delta_width;
  g.replicas = o.replicas;
  g.seed = o.seed;
  const pam::SimResult res = pam::simulate_field(p, g);
  json report;
  report["command"] = "simulate";
  report["inputs"] = inputs_common(o);
  report["inputs"]["L"] = g.half_width;
  report["inputs"]["nx"] = g.nx;
  report["inputs"]["t_end"] = g.t_end;
  report["inputs"]["dt"] = g.dt;
  report["inputs"]["delta_width"] = g.delta_width;
  report["inputs"]["replicas"] = g.replicas;
  report["inputs"]["seed"] = o.seed;
  report["inputs"]["x"] = o.x;
  json& outs = report["outputs"] = json::object();
  outs["t_terminal"] = res.t_terminal;
  pam::ModelParams pt = p;
  pt.t = res.t_terminal;
  for (int ord : {1, 2, 3}) {
    const pam::MomentEstimate est = pam::estimate_moment(res, o.x, ord);
    json item;
    item["mean"] = est.mean;
    item["std_err"] = est.std_err;
    item["replicas"] = est.replicas;
    outs["moment_" + std::to_string(ord)] = item;
  }
  outs["exact_first_moment"] = pam::heat_kernel(p.nu, res.t_terminal + g.delta_width, o.x);
  put_value(outs, "exact_second_moment", pam::second_moment_log(pt, o.x), o.log_scale);
  if (!o.snapshot_csv.empty() || !o.snapshot_bin.empty()) {
    const int tstride = (o.time_stride > 0) ? o.time_stride : std::max(1, g.steps() / 256);
    const pam::ConeSnapshot snap = pam::cone_snapshot(p, g, o.clip, tstride, o.space_stride);
    if (!o.snapshot_csv.empty()) pam::write_snapshot_csv(snap, o.snapshot_csv);
    if (!o.snapshot_bin.empty()) pam::write_snapshot_binary(snap, o.snapshot_bin);
    outs["snapshot_times"] = snap.times.size();
    outs["snapshot_nodes"] = snap.xs.size();
  }
  emit(report, o);
  return kExitOk;
}

int run_validate(const Options& o) {
  const pam::ModelParams p = params_of(o);
  pam::QuadratureConfig cfg1d = quad_of(o);
  pam::QuadratureConfig cfg3d = quad_of(o);
  cfg3d.rel_tol = std::max(o.rel_tol, 1e-8);
  cfg3d.max_evals = std::max<long long>(o.max_evals, 50'000'000);

  json report;
  report["command"] = "validate";
  report["inputs"] = inputs_common(o);
  report["inputs"]["x"] = o.x;

  const pam::LogValue m1d = pam::third_moment(p, o.x, cfg1d).log_value;
  const pam::LogValue m3d = pam::third_moment_three_point(p, {o.x, o.x, o.x}, cfg3d).log_value;
  const pam::MomentBounds b = pam::third_moment_bounds(p, o.x);
  const pam::LogValue m2 = pam::second_moment_two_point_log(p, o.x, o.x);

  json& routes = report["routes"] = json::object();
  put_value(routes, "third_moment_1d", m1d, o.log_scale);
  put_value(routes, "third_moment_3d", m3d, o.log_scale);
  put_value(routes, "bounds_lower", b.lower, o.log_scale);
  put_value(routes, "bounds_upper", b.upper, o.log_scale);
  put_value(routes, "second_moment_closed", m2, o.log_scale);

  double dev_contour3 = -1.0, dev_contour2 = -1.0;
  std::string contour_note;
  try {
    const std::vector<double> xs3{o.x, o.x, o.x};
    const pam::ContourResult c3 = pam::bc_contour_moment(3, p, xs3, contour_of(o, 3, p));
    routes["contour_k3"] = c3.value;
    dev_contour3 = std::abs(c3.value - m3d.to_value()) / std::abs(c3.value);
    const std::vector<double> xs2{o.x, o.x};
    const pam::ContourResult c2 = pam::bc_contour_moment(2, p, xs2, contour_of(o, 2, p));
    routes["contour_k2"] = c2.value;
    dev_contour2 = std::abs(c2.value - m2.to_value()) / std::abs(c2.value);
  } catch (const pam::ConfigError& e) {
    contour_note = e.what();
  }

  const double dev_13 = std::abs(m1d.log_abs - m3d.log_abs);
  const bool bracket_ok =
      b.lower.log_abs <= m1d.log_abs + 1e-9 && m1d.log_abs <= b.upper.log_abs + 1e-9;

  json& checks = report["checks"] = json::object();
  checks["rel_dev_1d_vs_3d"] = dev_13;
  checks["tol_1d_vs_3d"] = 1e-6;
  if (dev_contour3 >= 0.0) {
    checks["rel_dev_contour_vs_3d"] = dev_contour3;
    checks["tol_contour_vs_3d"] = 1e-4;
    checks["rel_dev_contour_vs_second_moment"] = dev_contour2;
    checks["tol_contour_vs_second_moment"] = 1e-8;
  } else {
    checks["contour_skipped"] = contour_note;
  }
  checks["bounds_bracket_third_moment"] = bracket_ok;

  if (o.bertini_k > 0) {
    report["reference"] = {
        {"bertini_cancrini_k", o.bertini_k},
        {"value", pam::bertini_cancrini_moment(o.bertini_k, o.nu, o.t)},
        {"authoritative", pam::bertini_cancrini_authoritative(o.bertini_k)},
    };
  }

  bool ok = dev_13 <= 1e-6 && bracket_ok;
  if (dev_contour3 >= 0.0) ok = ok && dev_contour3 <= 1e-4 && dev_contour2 <= 1e-8;
  report["validation_passed"] = ok;
  emit(report, o);
  return ok ? kExitOk : kExitValidation;
}

// Flags from a JSON config file become argv tokens injected ahead of the
// user's own flags, so explicit flags win.
std::vector<std::string> tokens_from_config(const std::string& path, std::string* command) {
  std::ifstream f(path);
  if (!f) throw pam::DomainError("cannot open config file " + path);
  json cfg = json::parse(f);
  std::vector<std::string> tokens;
  for (auto& [key, value] : cfg.items()) {
    if (key == "command") {
      *command = value.get<std::string>();
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    std::string v;
    if (value.is_array()) {
      for (auto& e : value) v += e.dump() + ",";
      if (!v.empty()) v.pop_back();
    } else if (value.is_string()) {
      v = value.get<std::string>();
    } else {
      v = value.dump();
    }
    tokens.push_back("--" + key);
    tokens.push_back(v);
  }
  return tokens;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moments, simulation and front analysis for the delta-seeded "
               "multiplicative-noise heat equation"};
  app.require_subcommand(0, 1);
  Options o;

  std::string config_path;
  app.add_option("--config", config_path, "JSON file supplying flag defaults");

  const auto add_common = [&](CLI::App* cmd, bool with_quad = true, bool with_t = true) {
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--nu", o.nu, "diffusion parameter");
    cmd->add_option("--lambda", o.lambda, "noise intensity");
    if (with_t) cmd->add_option("--t", o.t, "time");
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output_path, "write the report here instead of stdout");
    cmd->add_flag("--log-scale", o.log_scale, "emit log_-prefixed fields");
    if (with_quad) {
      cmd->add_option("--rel-tol", o.rel_tol);
      cmd->add_option("--max-evals", o.max_evals);
    }
  };

  CLI::App* c_m2 = app.add_subcommand("moment2", "two-point second moment");
  add_common(c_m2, false);
  c_m2->add_option("--x1", o.x1);
  c_m2->add_option("--x2", o.x2);
  c_m2->add_flag("--one-point-variant", o.one_point_variant,
                 "also report the non-authoritative one-point closed expression");

  CLI::App* c_m3 = app.add_subcommand("moment3", "third moment, 1d integral route");
  add_common(c_m3);
  c_m3->add_option("--x", o.x);

  CLI::App* c_tp = app.add_subcommand("three-point", "third moment at three points");
  add_common(c_tp);
  c_tp->add_option("--x1", o.x1);
  c_tp->add_option("--x2", o.x2);
  c_tp->add_option("--x3", o.x3);

  CLI::App* c_or = app.add_subcommand("oracle", "contour evaluation of the moment");
  add_common(c_or);
  c_or->add_option("--k", o.k)->check(CLI::IsMember({2, 3}));
  c_or->add_option("--x1", o.x1);
  c_or->add_option("--x2", o.x2);
  c_or->add_option("--x3", o.x3);
  c_or->add_option("--alphas", o.alphas)->delimiter(',');
  c_or->add_option("--half-height", o.half_height);
  c_or->add_option("--nodes-per-unit", o.nodes_per_unit);

  CLI::App* c_bd = app.add_subcommand("bounds", "closed-form third-moment bracket");
  add_common(c_bd, false);
  c_bd->add_option("--x", o.x);

  CLI::App* c_fr = app.add_subcommand("front", "locate the intermittency front");
  add_common(c_fr, true, false);
  c_fr->add_option("--t,--t-list", o.t_list, "times for the limit extrapolation")->delimiter(',');
  c_fr->add_option("--alpha-max", o.alpha_max);
  c_fr->add_option("--alpha-step", o.alpha_step);

  CLI::App* c_sim = app.add_subcommand("simulate", "lattice Monte Carlo run");
  add_common(c_sim, false);
  c_sim->add_option("--L", o.L, "half width of the domain");
  c_sim->add_option("--nx", o.nx);
  c_sim->add_option("--t-end", o.t_end);
  c_sim->add_option("--dt", o.dt, "0 = half the stability bound");
  c_sim->add_option("--delta-width", o.delta_width, "0 = lattice delta");
  c_sim->add_option("--replicas", o.replicas);
  c_sim->add_option("--seed", o.seed);
  c_sim->add_option("--x", o.x, "evaluation point for moment estimates");
  c_sim->add_option("--clip", o.clip);
  c_sim->add_option("--time-stride", o.time_stride);
  c_sim->add_option("--space-stride", o.space_stride);
  c_sim->add_option("--snapshot-csv", o.snapshot_csv);
  c_sim->add_option("--snapshot-bin", o.snapshot_bin);

  CLI::App* c_val = app.add_subcommand("validate", "cross-route consistency report");
  add_common(c_val);
  c_val->add_option("--x", o.x);
  c_val->add_option("--bertini-k", o.bertini_k,
                    "include the flagged historical k-th moment value");

  // Pre-scan for --config so its tokens can be injected before parsing.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        std::string command;
        std::vector<std::string> cfg_tokens = tokens_from_config(args[i + 1], &command);
        args.erase(args.begin() + i, args.begin() + i + 2);
        std::string sub = (!args.empty() && !args[0].starts_with("-")) ? args[0] : command;
        if (!args.empty() && !args[0].starts_with("-")) args.erase(args.begin());
        if (sub.empty()) throw pam::DomainError("config file does not name a command");
        std::vector<std::string> merged{sub};
        merged.insert(merged.end(), cfg_tokens.begin(), cfg_tokens.end());
        merged.insert(merged.end(), args.begin(), args.end());
        args = merged;
        break;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    std::vector<const char*> cargs{argv[0]};
    for (const std::string& a : args) cargs.push_back(a.c_str());
    app.parse((int)cargs.size(), const_cast<char**>(cargs.data()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (c_m2->parsed()) return run_moment2(o);
    if (c_m3->parsed()) return run_moment3(o);
    if (c_tp->parsed()) return run_three_point(o);
    if (c_or->parsed()) return run_oracle(o);
    if (c_bd->parsed()) return run_bounds(o);
    if (c_fr->parsed()) return run_front(o);
    if (c_sim->parsed()) return run_simulate(o);
    if (c_val->parsed()) return run_validate(o);
    std::cerr << app.help();
    return kExitParse;
  } catch (const pam::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (best estimate " << e.best << ")\n";
    return kExitConvergence;
  } catch (const pam::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const pam::FrontNotBracketedError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const pam::FieldBlowupError& e) {
    std::cerr << "numerical overflow: " << e.what() << " (replica " << e.replica << ", step "
              << e.step << ")\n";
    return kExitDomain;
  } catch (const pam::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const pam::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
