#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fucikhom/config.hpp"
#include "fucikhom/errors.hpp"
#include "fucikhom/fucik.hpp"
#include "fucikhom/homrates.hpp"
#include "fucikhom/plap.hpp"
#include "fucikhom/report_io.hpp"
#include "fucikhom/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitBound = 4;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
  double tol = 0.0;  // 0: use per-command default
  unsigned seed = 0;
};

json load_config(const GlobalOpts& g) {
  if (g.config_path.empty()) return json::object();
  std::ifstream in(g.config_path);
  if (!in) throw fucikhom::ConfigError("cannot open config " + g.config_path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw fucikhom::ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw fucikhom::ConfigError("config must be an object");
  return j;
}

fucikhom::PeriodicWeight weight_field(const json& cfg, const std::string& key) {
  if (!cfg.contains(key))
    throw fucikhom::ConfigError("missing weight field '" + key + "'");
  return fucikhom::weight_from_json(cfg[key]);
}

fucikhom::Interval interval_field(const json& cfg) {
  if (!cfg.contains("interval")) return fucikhom::Interval(0.0, 1.0);
  return fucikhom::interval_from_json(cfg["interval"]);
}

std::vector<double> grid_field(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || !cfg[key].is_array() || cfg[key].empty())
    throw fucikhom::ConfigError("field '" + key +
                                "' must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : cfg[key]) {
    if (!v.is_number())
      throw fucikhom::ConfigError("field '" + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// eps values are snapped to reciprocals of integers so the oscillating
// weight tiles the normalized cell; off-grid inputs are rounded with a
// warning and the normalization is recorded in the report metadata.
std::vector<double> normalize_eps_grid(const std::vector<double>& in,
                                       ordered_json* meta) {
  std::vector<double> out;
  bool any = false;
  for (double e : in) {
    if (!(e > 0.0)) throw fucikhom::ConfigError("eps values must be > 0");
    const double inv = 1.0 / e;
    const double n = std::max(1.0, std::round(inv));
    if (std::abs(inv - n) > 1e-9 * n) {
      std::cerr << "warning: eps=" << e << " is not 1/integer; using 1/"
                << static_cast<long>(n) << "\n";
      any = true;
    }
    out.push_back(1.0 / n);
  }
  if (meta) (*meta)["eps_normalized"] = any;
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void emit(const GlobalOpts& g, const ordered_json& report_json,
          const std::string& csv, const std::string& plot) {
  if (g.out_dir.empty()) {
    std::cout << report_json.dump(2) << "\n";
    return;
  }
  fs::create_directories(g.out_dir);
  write_file(fs::path(g.out_dir) / "report.json", report_json.dump(2) + "\n");
  write_file(fs::path(g.out_dir) / "report.csv", csv);
  write_file(fs::path(g.out_dir) / "plot.gp", plot);
}

int cmd_eig(const GlobalOpts& g, const json& cfg) {
  fucikhom::reject_unknown_fields(
      cfg, "command,weight,eps,interval,p,method,tol,grid_n", "eig config");
  const auto w = weight_field(cfg, "weight");
  const auto I = interval_field(cfg);
  const double p = cfg.value("p", 2.0);
  const std::optional<double> eps =
      cfg.contains("eps") ? fucikhom::eps_from_json(cfg["eps"]) : std::nullopt;
  const std::string method = cfg.value("method", "shooting");
  const double tol = g.tol > 0.0 ? g.tol : cfg.value("tol", 1e-8);
  const int grid_n = cfg.value("grid_n", 2048);

  ordered_json out;
  if (method == "shooting" || method == "both")
    out["shooting"] = fucikhom::eigen_estimate_json(
        fucikhom::lambda1_shoot(w, eps, I, p, tol));
  if (method == "rayleigh" || method == "both")
    out["rayleigh"] = fucikhom::eigen_estimate_json(
        fucikhom::lambda1_rayleigh(w, eps, I, p, grid_n));
  if (out.empty())
    throw fucikhom::ConfigError("method must be shooting, rayleigh or both");
  if (out.contains("shooting") && out.contains("rayleigh")) {
    const double a = out["shooting"]["lambda"].get<double>();
    const double b = out["rayleigh"]["lambda"].get<double>();
    out["relative_difference"] = std::abs(a - b) / std::max(a, b);
  }
  if (!g.out_dir.empty()) {
    fs::create_directories(g.out_dir);
    write_file(fs::path(g.out_dir) / "report.json", out.dump(2) + "\n");
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_curve(const GlobalOpts& g, const json& cfg) {
  fucikhom::reject_unknown_fields(
      cfg, "command,m,n,interval,p,k,sign,s_grid,eps,tol", "curve config");
  const auto m = weight_field(cfg, "m");
  const auto n = weight_field(cfg, "n");
  const auto I = interval_field(cfg);
  const double p = cfg.value("p", 2.0);
  const int k = cfg.value("k", 1);
  const fucikhom::Sign sign =
      fucikhom::sign_from_string(cfg.value("sign", "plus"));
  const std::optional<double> eps =
      cfg.contains("eps") ? fucikhom::eps_from_json(cfg["eps"]) : std::nullopt;
  const double tol = g.tol > 0.0 ? g.tol : cfg.value("tol", 1e-9);
  const auto s_grid = grid_field(cfg, "s_grid");

  const auto pts = fucikhom::trace_curve(k, sign, s_grid, m, n, eps, I, p, tol);

  ordered_json out;
  out["command"] = "curve";
  out["m"] = fucikhom::weight_to_json(m);
  out["n"] = fucikhom::weight_to_json(n);
  out["p"] = p;
  out["k"] = k;
  out["points"] = ordered_json::array();
  for (const auto& pt : pts) out["points"].push_back(fucikhom::curve_point_json(pt));
  emit(g, out, fucikhom::curve_csv(pts),
       fucikhom::curve_plot_script("report.csv"));
  return 0;
}

int cmd_sweep_eig(const GlobalOpts& g, const json& cfg) {
  fucikhom::reject_unknown_fields(
      cfg, "command,weight,interval,p,eps_grid,tol", "sweep-eig config");
  const auto w = weight_field(cfg, "weight");
  const auto I = interval_field(cfg);
  const double p = cfg.value("p", 2.0);
  const double tol = g.tol > 0.0 ? g.tol : cfg.value("tol", 1e-8);
  ordered_json meta;
  const auto eps = normalize_eps_grid(grid_field(cfg, "eps_grid"), &meta);

  const auto rep = fucikhom::sweep_eigen(w, I, p, eps, tol, g.jobs);
  ordered_json out = fucikhom::sweep_report_json(rep);
  out["eps_normalized"] = meta["eps_normalized"];
  emit(g, out, fucikhom::sweep_report_csv(rep),
       fucikhom::sweep_plot_script("report.csv", false));
  return 0;
}

int cmd_sweep_fucik(const GlobalOpts& g, const json& cfg) {
  fucikhom::reject_unknown_fields(
      cfg, "command,m,n,interval,p,k,sign,s,eps_grid,tol",
      "sweep-fucik config");
  const auto m = weight_field(cfg, "m");
  const auto n = weight_field(cfg, "n");
  const auto I = interval_field(cfg);
  const double p = cfg.value("p", 2.0);
  const int k = cfg.value("k", 1);
  const fucikhom::Sign sign =
      fucikhom::sign_from_string(cfg.value("sign", "plus"));
  const double s = cfg.value("s", 1.0);
  const double tol = g.tol > 0.0 ? g.tol : cfg.value("tol", 1e-9);
  ordered_json meta;
  const auto eps = normalize_eps_grid(grid_field(cfg, "eps_grid"), &meta);

  const auto rep =
      fucikhom::sweep_fucik(k, sign, s, m, n, I, p, eps, tol, g.jobs);
  ordered_json out = fucikhom::fucik_sweep_json(rep);
  out["eps_normalized"] = meta["eps_normalized"];
  emit(g, out, fucikhom::fucik_sweep_csv(rep),
       fucikhom::sweep_plot_script("report.csv", true));
  return 0;
}

int cmd_constants(const GlobalOpts& g, const json& cfg) {
  fucikhom::reject_unknown_fields(cfg, "command,m,n,interval,p,N,mu2",
                                  "constants config");
  const auto m = weight_field(cfg, "m");
  const auto n = cfg.contains("n") ? fucikhom::weight_from_json(cfg["n"]) : m;
  const auto I = interval_field(cfg);
  const double p = cfg.value("p", 2.0);
  const int N = cfg.value("N", 1);

  ordered_json out;
  out["command"] = "constants";
  out["p"] = p;
  out["N"] = N;
  out["pi_p"] = fucikhom::pi_p(p);
  out["C_m"] = fucikhom::constant_Cr(m, p, N);
  out["C_n"] = fucikhom::constant_Cr(n, p, N);
  out["C_1d"] = fucikhom::constant_C_1d(m, n, p, I);
  if (cfg.contains("mu2")) {
    const double mu2 = cfg["mu2"].get<double>();
    out["C_Nd"] = fucikhom::constant_C_Nd(m, n, p, N, mu2);
  }
  if (!g.out_dir.empty()) {
    fs::create_directories(g.out_dir);
    write_file(fs::path(g.out_dir) / "report.json", out.dump(2) + "\n");
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

void error_json(const std::string& type, const std::string& what) {
  ordered_json err{{"error", type}, {"message", what}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fucik eigencurves of the weighted 1D p-Laplacian and homogenization "
      "rate verification"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON experiment config");
  app.add_option("--out", g.out_dir, "output directory for reports");
  app.add_option("--jobs", g.jobs, "concurrent sweep points")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "solver tolerance override");
  app.add_option("--seed", g.seed,
                 "seed for randomized test corpus generation");

  // flag overrides applied on top of the config document
  double opt_p = 0.0, opt_s = 0.0, opt_eps = 0.0;
  int opt_k = -1;
  std::string opt_sign, opt_method;
  for (const char* name :
       {"eig", "curve", "sweep-eig", "sweep-fucik", "constants"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--p", opt_p, "exponent p");
    sub->add_option("--k", opt_k, "number of interior zeros");
    sub->add_option("--s", opt_s, "slope of the ray");
    sub->add_option("--eps", opt_eps, "oscillation scale");
    sub->add_option("--sign", opt_sign, "plus or minus");
    sub->add_option("--method", opt_method, "shooting, rayleigh or both");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    json cfg = load_config(g);
    if (cfg.contains("command")) {
      if (!cfg["command"].is_string() ||
          cfg["command"].get<std::string>() != command)
        throw fucikhom::ConfigError(
            "config 'command' does not match the subcommand");
    }
    if (sub->count("--p")) cfg["p"] = opt_p;
    if (sub->count("--k")) cfg["k"] = opt_k;
    if (sub->count("--s")) cfg["s"] = opt_s;
    if (sub->count("--eps")) cfg["eps"] = opt_eps;
    if (sub->count("--sign")) cfg["sign"] = opt_sign;
    if (sub->count("--method")) cfg["method"] = opt_method;

    if (command == "eig") return cmd_eig(g, cfg);
    if (command == "curve") return cmd_curve(g, cfg);
    if (command == "sweep-eig") return cmd_sweep_eig(g, cfg);
    if (command == "sweep-fucik") return cmd_sweep_fucik(g, cfg);
    if (command == "constants") return cmd_constants(g, cfg);
    error_json("config", "unknown command " + command);
    return kExitConfig;
  } catch (const fucikhom::BoundViolation& e) {
    error_json("bound_violation", e.what());
    return kExitBound;
  } catch (const fucikhom::ConfigError& e) {
    error_json("config", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    error_json("config", e.what());
    return kExitConfig;
  } catch (const fucikhom::SolverError& e) {
    error_json("solver", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    error_json("internal", e.what());
    return kExitSolver;
  }
}
