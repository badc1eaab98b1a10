#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zenga/estimator.hpp"
#include "zenga/io.hpp"
#include "zenga/models.hpp"
#include "zenga/simulation.hpp"
#include "zenga/surfaces.hpp"
#include "zenga/vbzc.hpp"

namespace {

using namespace zenga;

std::map<std::string, double> parse_params(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--params expects key=value pairs: " + item);
    const std::string key = item.substr(0, eq);
    try {
      out[key] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ValidationError("--params: cannot parse value for '" + key + "'");
    }
  }
  return out;
}

double require_param(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ValidationError("missing model parameter: " + key);
  return it->second;
}

double param_or(const std::map<std::string, double>& p, const std::string& key,
                double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

BivariateQuantileModel make_model(const std::string& name,
                                  const std::map<std::string, double>& p) {
  if (name == "pareto_shifted") return pareto_shifted_model(require_param(p, "alpha"));
  if (name == "pareto_unit") return pareto_unit_model(require_param(p, "c"));
  if (name == "power")
    return power_model(PowerParams{param_or(p, "K1", 1.0), param_or(p, "K2", 1.0),
                                   require_param(p, "b1"), require_param(p, "b2")});
  throw ValidationError("unknown model '" + name +
                        "' (expected pareto_shifted, pareto_unit or power)");
}

// Grid specs: "lo:hi:count" (inclusive linspace) or a comma list of levels.
std::vector<double> parse_grid(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    double lo, hi;
    std::size_t count;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':')
      throw ValidationError("--grid expects lo:hi:count or a comma list");
    return linspace_levels(lo, hi, count);
  }
  std::vector<double> levels;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      levels.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("--grid: cannot parse level '" + item + "'");
    }
  }
  if (levels.empty()) throw ValidationError("--grid: no levels given");
  return levels;
}

void write_output(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << payload;
  if (!out) throw Error("failed writing output file: " + out_path);
}

void emit(const SurfaceGrid& grid, EmitFormat format, const std::string& out_path) {
  write_output(format == EmitFormat::json ? surface_to_json(grid)
                                          : surface_to_csv_long(grid),
               out_path);
}

struct GlobalOpts {
  std::string out;
  std::string format = "json";
  double tol = 0.0;  // 0 keeps the defaults
  bool quiet = false;

  Tolerance tolerance() const {
    Tolerance t;
    if (tol > 0.0) {
      t.abs_tol = tol;
      t.rel_tol = tol;
    }
    return t;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate Zenga inequality surfaces: parametric evaluation, "
               "nonparametric estimation, Monte Carlo"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format: json or csv");
  app.add_option("--tol", g.tol, "Quadrature tolerance override (abs and rel)");
  app.add_flag("--quiet", g.quiet, "Suppress informational stderr output");

  // surface
  auto* surface = app.add_subcommand("surface", "Evaluate a parametric surface on a grid");
  std::string model_name, params_spec, measure = "I", grid_spec = "0.2:0.8:7";
  surface->add_option("--model", model_name, "pareto_shifted | pareto_unit | power")
      ->required();
  surface->add_option("--params", params_spec, "Comma list, e.g. alpha=3 or b1=2,b2=3");
  surface->add_option("--measure", measure, "Z | I | L | vbzc");
  surface->add_option("--grid", grid_spec, "lo:hi:count or comma list of levels");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate the vector surface from data");
  std::string data_path, x1_col = "x1", x2_col = "x2", est_grid_spec = "0.2:0.8:7";
  bool rescale = false;
  estimate->add_option("--data", data_path, "CSV dataset")->required();
  estimate->add_option("--x1-col", x1_col, "Column name for X1");
  estimate->add_option("--x2-col", x2_col, "Column name for X2");
  estimate->add_option("--grid", est_grid_spec, "lo:hi:count or comma list of levels");
  estimate->add_flag("--rescale", rescale, "Divide each column by its maximum first");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo bias/MSE study");
  std::string config_path;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  simulate->add_option("--config", config_path, "JSON configuration file");
  simulate->add_option("--seed", seed_override, "Master seed override")
      ->each([&](const std::string&) { seed_given = true; });

  // slices
  auto* slices = app.add_subcommand("slices", "Extract a fixed-level slice from a surface file");
  std::string slice_input, fix_axis;
  double at_level = 0.0;
  slices->add_option("input", slice_input, "Surface JSON produced by this tool")
      ->required();
  slices->add_option("--fix", fix_axis, "Axis to fix: u1 or u2")->required();
  slices->add_option("--at", at_level, "Level of the fixed axis")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Tolerance tol = g.tolerance();
    const EmitFormat format = emit_format_from_string(g.format);

    if (surface->parsed()) {
      const BivariateQuantileModel model = make_model(model_name, parse_params(params_spec));
      const std::vector<double> levels = parse_grid(grid_spec);
      SurfaceGrid grid;
      if (measure == "vbzc") {
        grid = evaluate_vbzc_surface(model, levels, levels, tol);
      } else {
        grid = evaluate_surface(model, measure_tag_from_string(measure), levels,
                                levels, tol);
      }
      emit(grid, format, g.out);
    } else if (estimate->parsed()) {
      DatasetSpec spec;
      spec.path = data_path;
      spec.x1_col = x1_col;
      spec.x2_col = x2_col;
      BivariateSample sample = load_dataset(spec);
      if (rescale) {
        RescaleResult r = rescale_unit(sample);
        if (!g.quiet)
          std::fprintf(stderr, "rescaled by column maxima: x1/%s x2/%s\n",
                       format_double(r.scale1).c_str(),
                       format_double(r.scale2).c_str());
        sample = std::move(r.sample);
      }
      const std::vector<double> levels = parse_grid(est_grid_spec);
      emit(estimate_surface(sample, levels, levels), format, g.out);
    } else if (simulate->parsed()) {
      McConfig cfg;
      if (!config_path.empty()) cfg = load_mc_config(config_path);
      if (seed_given) cfg.master_seed = seed_override;
      const std::vector<McSummary> rows = run_replications(cfg);
      std::ostringstream csv;
      write_mc_csv(rows, csv);
      write_output(csv.str(), g.out);
    } else if (slices->parsed()) {
      if (fix_axis != "u1" && fix_axis != "u2")
        throw ValidationError("--fix expects u1 or u2");
      const SurfaceGrid grid = load_surface_json(slice_input);
      emit(extract_slice(grid, fix_axis == "u1", at_level), format, g.out);
    }
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
