#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("FUCIKHOM_CLI");
  REQUIRE_MESSAGE(p != nullptr, "FUCIKHOM_CLI must point at the binary");
  return p;
}

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "fucikhom_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = cli_path() + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path dir = fs::temp_directory_path() / "fucikhom_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

}  // namespace

TEST_CASE("eig: constant weight on stdout") {
  const fs::path cfg = write_config(
      "eig.json", json{{"weight", {{"kind", "constant"}, {"value", 2.0}}},
                       {"p", 2.0}});
  const RunResult r = run("--config " + cfg.string() + " eig");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["shooting"]["lambda"].get<double>() ==
        doctest::Approx(9.8696044010893586 / 2.0).epsilon(1e-7));
}

TEST_CASE("eig: both methods report their relative difference") {
  const fs::path cfg = write_config(
      "eig_both.json",
      json{{"weight",
            {{"kind", "piecewise"}, {"breaks", {0.5}}, {"values", {1.0, 3.0}}}},
           {"eps", 0.25},
           {"method", "both"}});
  const RunResult r = run("--config " + cfg.string() + " eig");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["relative_difference"].get<double>() < 1e-3);
}

TEST_CASE("sweep-eig: writes report files and is deterministic") {
  const fs::path cfg = write_config(
      "sweep.json",
      json{{"weight",
            {{"kind", "piecewise"}, {"breaks", {0.5}}, {"values", {1.0, 3.0}}}},
           {"eps_grid", {0.25, 0.125, 0.0625, 0.03125}}});
  const fs::path out1 = fs::temp_directory_path() / "fucikhom_cli_test/run1";
  const fs::path out2 = fs::temp_directory_path() / "fucikhom_cli_test/run2";
  const RunResult r1 =
      run("--config " + cfg.string() + " --out " + out1.string() + " sweep-eig");
  const RunResult r2 = run("--config " + cfg.string() + " --out " +
                           out2.string() + " --jobs 4 sweep-eig");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  for (const char* name : {"report.json", "report.csv", "plot.gp"}) {
    CHECK(fs::exists(out1 / name));
    // byte-identical across runs and thread counts
    CHECK(slurp(out1 / name) == slurp(out2 / name));
  }
  const json rep = json::parse(slurp(out1 / "report.json"));
  for (const auto& rec : rep["records"])
    CHECK(rec["ratio"].get<double>() <= 1.0);
}

TEST_CASE("sweep-fucik: writes reports") {
  const fs::path cfg = write_config(
      "sweep_fucik.json",
      json{{"m",
            {{"kind", "piecewise"}, {"breaks", {0.5}}, {"values", {1.0, 3.0}}}},
           {"n", {{"kind", "constant"}, {"value", 2.0}}},
           {"k", 1},
           {"s", 2.0},
           {"eps_grid", {0.25, 0.125, 0.0625}}});
  const fs::path out = fs::temp_directory_path() / "fucikhom_cli_test/fucik";
  const RunResult r = run("--config " + cfg.string() + " --out " +
                          out.string() + " sweep-fucik");
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(slurp(out / "report.json"));
  CHECK(rep["alpha"]["records"].size() == 3);
  CHECK(rep["beta"]["records"].size() == 3);
}

TEST_CASE("curve command") {
  const fs::path cfg = write_config(
      "curve.json", json{{"m", {{"kind", "constant"}, {"value", 1.0}}},
                         {"n", {{"kind", "constant"}, {"value", 1.0}}},
                         {"k", 1},
                         {"s_grid", {0.5, 1.0, 2.0}}});
  const RunResult r = run("--config " + cfg.string() + " curve");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  REQUIRE(out["points"].size() == 3);
  // s = 1 with unit weights: alpha = beta = 4 pi^2
  CHECK(out["points"][1]["alpha"].get<double>() ==
        doctest::Approx(4.0 * 9.8696044010893586).epsilon(1e-6));
}

TEST_CASE("constants command") {
  const fs::path cfg = write_config(
      "constants.json",
      json{{"m",
            {{"kind", "piecewise"}, {"breaks", {0.5}}, {"values", {1.0, 3.0}}}},
           {"p", 2.0}});
  const RunResult r = run("--config " + cfg.string() + " constants");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  CHECK(out["C_m"].get<double>() == doctest::Approx(3.0));
  CHECK(out["pi_p"].get<double>() == doctest::Approx(3.14159265358979).epsilon(1e-9));
}

TEST_CASE("exit code 2 on malformed configs") {
  // unparseable JSON
  const fs::path dir = fs::temp_directory_path() / "fucikhom_cli_test";
  fs::create_directories(dir);
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run("--config " + bad.string() + " eig").exit_code == 2);

  // missing required field
  const fs::path missing = write_config("missing.json", json{{"p", 2.0}});
  CHECK(run("--config " + missing.string() + " eig").exit_code == 2);

  // unknown field
  const fs::path unknown = write_config(
      "unknown.json", json{{"weight", {{"kind", "constant"}, {"value", 1.0}}},
                           {"bogus", 1}});
  CHECK(run("--config " + unknown.string() + " eig").exit_code == 2);

  // invalid weight kind
  const fs::path kind = write_config(
      "kind.json", json{{"weight", {{"kind", "cubic"}, {"value", 1.0}}}});
  CHECK(run("--config " + kind.string() + " eig").exit_code == 2);

  // nonexistent config file
  CHECK(run("--config /nonexistent/cfg.json eig").exit_code == 2);

  // error report is machine readable json on stderr
  const RunResult r = run("--config " + missing.string() + " eig");
  const json err = json::parse(r.err);
  CHECK(err["error"] == "config");
}

TEST_CASE("command mismatch between config and subcommand") {
  const fs::path cfg = write_config(
      "cmd.json", json{{"command", "curve"},
                       {"weight", {{"kind", "constant"}, {"value", 1.0}}}});
  CHECK(run("--config " + cfg.string() + " eig").exit_code == 2);
}

TEST_CASE("flag overrides beat config values") {
  const fs::path cfg = write_config(
      "override.json", json{{"weight", {{"kind", "constant"}, {"value", 1.0}}},
                            {"p", 2.0}});
  const RunResult r = run("--config " + cfg.string() + " eig --p 3.0");
  REQUIRE(r.exit_code == 0);
  const json out = json::parse(r.out);
  // lambda_1 for p = 3 on (0,1): pi_3^3
  CHECK(out["shooting"]["lambda"].get<double>() ==
        doctest::Approx(28.2887619856147).epsilon(1e-6));
}

TEST_CASE("off-grid eps is snapped with a warning") {
  const fs::path cfg = write_config(
      "snap.json",
      json{{"weight",
            {{"kind", "piecewise"}, {"breaks", {0.5}}, {"values", {1.0, 3.0}}}},
           {"eps_grid", {0.26, 0.125, 0.0625}}});
  const RunResult r = run("--config " + cfg.string() + " sweep-eig");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const json out = json::parse(r.out);
  CHECK(out["eps_normalized"].get<bool>());
  CHECK(out["records"][0]["eps"].get<double>() == doctest::Approx(0.25));
}
