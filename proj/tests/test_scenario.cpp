// test_scenario.cpp — configuration parsing, end-to-end runs, file formats
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynaquant/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dynaquant;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::string fresh_dir(const std::string& name) {
  fs::path p = fs::path("scenario_test_tmp") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

} // namespace

TEST_CASE("parse_config reads every field") {
  const std::string text = R"({
    "scenario": "fokker-planck",
    "dim": 24, "hbar": 0.5, "mass": 2.0, "omega": 1.5, "gamma": 0.3,
    "dt": 0.02, "steps": 11, "method": "rk4",
    "initial_state": {"type": "coherent", "alpha_re": 0.8, "alpha_im": -0.2},
    "fp": {"c_qq": -0.04, "c_qp": 0.9, "c_pq": -1.1, "c_pp": -0.06,
           "d_qq": 0.01, "d_qp": 0.002, "d_pp": 0.03, "h": "auto"},
    "grid": {"q_min": -5, "q_max": 5, "p_min": -4, "p_max": 4, "nq": 65, "np": 33, "dt": 0.001},
    "wigner_stride": 5, "classical_twin": true, "dump_generator": true,
    "out_dir": "somewhere"
  })";
  ScenarioConfig c = parse_config(text);
  CHECK(c.scenario == ScenarioKind::FokkerPlanck);
  CHECK(c.dim == 24);
  CHECK(c.hbar == 0.5);
  CHECK(c.mass == 2.0);
  CHECK(c.omega == 1.5);
  CHECK(c.gamma == 0.3);
  CHECK(c.dt == 0.02);
  CHECK(c.steps == 11);
  CHECK(c.method == EvolveMethod::RK4);
  CHECK(c.state.kind == InitialStateConfig::Kind::Coherent);
  CHECK(c.state.alpha == cxd(0.8, -0.2));
  CHECK(c.fp.c_qq == -0.04);
  CHECK(c.fp.c_pq == -1.1);
  CHECK(c.fp.d_qp == 0.002);
  CHECK(c.h_mode == HMode::Auto);
  REQUIRE(c.grid.has_value());
  CHECK(c.grid->nq == 65);
  CHECK(c.grid->dt == 0.001);
  CHECK(c.wigner_stride == 5);
  CHECK(c.classical_twin);
  CHECK(c.dump_generator);
  CHECK(c.out_dir == "somewhere");
}

TEST_CASE("parse_config fills documented defaults") {
  ScenarioConfig c = parse_config(R"({"scenario": "damped-oscillator"})");
  CHECK(c.dim == 40);
  CHECK(c.hbar == 1.0);
  CHECK(c.mass == 1.0);
  CHECK(c.omega == 1.0);
  CHECK(c.gamma == 0.1);
  CHECK(c.dt == 0.01);
  CHECK(c.steps == 500);
  CHECK(c.method == EvolveMethod::EXPM);
  CHECK(c.state.kind == InitialStateConfig::Kind::Coherent);
  CHECK(c.state.alpha == cxd(1.0, 0.0));
  CHECK(!c.grid.has_value());
  CHECK(c.wigner_stride == 0);
  CHECK(!c.classical_twin);
  CHECK(!c.dump_generator);
  CHECK(c.out_dir == ".");

  ScenarioConfig f = parse_config(R"({"scenario": "fokker-planck"})");
  CHECK(f.fp.c_pq == -1.0);
  CHECK(f.fp.c_qp == 1.0);
  CHECK(f.fp.c_pp == -0.05);
  CHECK(f.fp.c_qq == -0.05);
  CHECK(f.fp.d_qq == 0.025);
  CHECK(f.fp.d_pp == 0.025);
  CHECK(f.fp.d_qp == 0.0);
  CHECK(f.h_mode == HMode::Auto);

  ScenarioConfig a = parse_config(R"({"scenario": "algebra-check"})");
  CHECK(a.check_dim == 32);
  CHECK(a.check_profile == "default");
}

TEST_CASE("parse_config rejects malformed input with the offending path") {
  auto reject = [](const std::string& text, const std::string& fragment) {
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains(fragment.c_str()),
                         ConfigError);
  };
  reject(R"({"scenario": "damped-oscillator", "speed": 3})", "unknown key 'speed'");
  reject(R"({"scenario": "fokker-planck", "fp": {"x": 1}})", "unknown key 'fp.x'");
  reject(R"({"scenario": "damped-oscillator", "dim": 1})", "[2, 96]");
  reject(R"({"scenario": "damped-oscillator", "dim": 97})", "[2, 96]");
  reject(R"({"scenario": "damped-oscillator", "method": "euler"})", "'method'");
  reject(R"({"scenario": "damped-oscillator", "fp": {}})", "only valid for the fokker-planck");
  reject(R"({"scenario": "damped-oscillator", "grid": {}})", "only valid for fokker-planck");
  reject(R"({"scenario": "fokker-planck", "wigner_stride": 2})", "requires a 'grid' block");
  reject(R"({"scenario": "algebra-check", "classical_twin": true})",
         "damped-oscillator and fokker-planck");
  reject(R"({"scenario": "custom"})", "requires a 'custom' block");
  reject(R"({"scenario": "custom", "custom": {"terms": [[1, 0, 0, 0, 0]]}})",
         "custom.terms[0]");
  reject(R"({"scenario": "custom", "custom": {"terms": [[1, 0, 0, 0, 0, -1]]}})",
         "powers must be integers >= 0");
  reject(R"({"scenario": "damped-oscillator", "check": {}})",
         "only valid for the algebra-check");
  reject(R"({"scenario": "damped-oscillator", "initial_state": {"type": "thermal"}})",
         "'coherent' or 'fock'");
  reject(R"({"scenario": "damped-oscillator", "dim": 5,
             "initial_state": {"type": "fock", "level": 5}})",
         "outside [0, dim)");
  reject(R"({"scenario": "damped-oscillator", "hbar": "one"})", "'hbar' must be a number");
  reject(R"({"scenario": "damped-oscillator", "steps": -3})", "'steps' must be >= 0");
  reject(R"({"scenario": "fokker-planck", "grid": {"nq": 7}})", "at least 8 points");
  reject(R"({"scenario": "fokker-planck", "fp": {"h": "magic"}})",
         "'fp.h' must be a number, 'auto' or 'reference'");
  reject(R"({"scenario": "algebra-check", "check": {"dim": 7}})", "[8, 64]");
  reject("{nope", "parse error");
  reject("[1, 2]", "top level must be an object");
  CHECK_THROWS_AS(load_config("does_not_exist_12345.json"), ConfigError);
}

TEST_CASE("canonical_config is a fixed point of parse -> echo") {
  const std::string texts[] = {
      R"({"scenario": "damped-oscillator", "dim": 12, "gamma": 0.25})",
      R"({"scenario": "fokker-planck", "dim": 16, "fp": {"h": "reference", "d_qp": 0.01},
          "grid": {"nq": 33, "np": 33}, "classical_twin": true})",
      R"({"scenario": "custom", "dim": 10,
          "custom": {"form": "symmetric", "terms": [[0.5, -0.25, 1, 0, 1, 0]]}})",
      R"({"scenario": "algebra-check", "check": {"dim": 16, "profile": "strict"}})",
  };
  for (const std::string& text : texts) {
    const std::string once = canonical_config(parse_config(text));
    const std::string twice = canonical_config(parse_config(once));
    CHECK(once == twice);
    CHECK(lines_of(once).size() == 1); // one-line echo
  }
}

TEST_CASE("damped-oscillator run writes the documented files deterministically") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "damped-oscillator", "dim": 12, "steps": 20, "classical_twin": true,
    "dump_generator": true
  })");
  const std::string dir_a = fresh_dir("damped_a");
  const std::string dir_b = fresh_dir("damped_b");
  RunResult a = run_scenario(c, 999, dir_a);
  RunResult b = run_scenario(c, 999, dir_b);

  REQUIRE(a.files_written.size() == 4);
  CHECK(fs::path(a.files_written[0]).filename() == "manifest.txt");
  for (const std::string& f : a.files_written) CHECK(fs::exists(f));

  std::vector<std::string> ts = lines_of(slurp(dir_a + "/timeseries.csv"));
  REQUIRE(ts.size() == 22); // header + initial row + 20 steps
  CHECK(ts[0] == "t,trace_re,herm_defect,mean_q,mean_p,var_qq,var_pp,cov_qp,energy,purity");

  std::vector<std::string> cl = lines_of(slurp(dir_a + "/classical.csv"));
  REQUIRE(cl.size() == 22);
  CHECK(cl[0] == "t,mean_q,mean_p");

  std::vector<std::string> man = lines_of(slurp(dir_a + "/manifest.txt"));
  CHECK(man[0] == "dynaquant manifest");
  CHECK(man[2] == "seed 999");
  CHECK(man.back() == "files manifest.txt timeseries.csv classical.csv generator.dump");

  // bitwise reproducibility
  CHECK(slurp(dir_a + "/timeseries.csv") == slurp(dir_b + "/timeseries.csv"));
  CHECK(slurp(dir_a + "/classical.csv") == slurp(dir_b + "/classical.csv"));
  CHECK(slurp(dir_a + "/manifest.txt") == slurp(dir_b + "/manifest.txt"));
  CHECK(slurp(dir_a + "/generator.dump") == slurp(dir_b + "/generator.dump"));
}

TEST_CASE("kinetic run tracks the fitted trace constant") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "fokker-planck", "dim": 16, "steps": 10
  })");
  const std::string dir = fresh_dir("fp");
  RunResult r = run_scenario(c, 1, dir);
  CHECK(r.used_trace_scan);
  CHECK(r.h_used == r.trace_scan.h_star);
  CHECK(r.h_used == doctest::Approx(-0.1).epsilon(1e-9)); // c_pp + c_qq at defaults
  for (double tr : r.series.trace_re) CHECK(std::abs(tr - 1.0) < 1e-8);

  const std::string man = slurp(dir + "/manifest.txt");
  CHECK(man.find("h_star ") != std::string::npos);
  CHECK(man.find("h_reference ") != std::string::npos);
  CHECK(man.find("h_used ") != std::string::npos);
  CHECK(man.find("h_matches_reference no") != std::string::npos);
}

TEST_CASE("generator dumps round-trip exactly") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "damped-oscillator", "dim": 6, "steps": 0, "dump_generator": true,
    "hbar": 0.75, "mass": 1.25, "omega": 0.8, "gamma": 0.2
  })");
  const std::string dir = fresh_dir("dump");
  run_scenario(c, 5, dir);
  SuperOperator S = read_generator_dump(dir + "/generator.dump");
  CHECK(S.space->dim == 6);
  CHECK(S.space->hbar == 0.75);
  SuperOperator direct =
      quantize_qp(build_space(6, 0.75, 1.25, 0.8), damped_oscillator_dynop(1.25, 0.8, 0.2));
  CHECK((S.mat - direct.mat).norm() == 0.0); // %.17g round-trips doubles
  CHECK_THROWS_AS(read_generator_dump(dir + "/manifest.txt"), std::runtime_error);
}

TEST_CASE("custom runs feed dequantize back to the configured terms") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "custom", "dim": 12, "steps": 2, "dump_generator": true,
    "custom": {"form": "qp", "terms": [[0.0, 0.5, 1, 0, 1, 0], [-0.2, 0.0, 0, 0, 0, 1]]}
  })");
  const std::string dir = fresh_dir("custom");
  run_scenario(c, 7, dir);
  DynOperator rec = dequantize(read_generator_dump(dir + "/generator.dump"), 2);
  bool saw_qdq = false, saw_dp = false;
  for (const DynTerm& t : rec.terms) {
    if (std::abs(t.coeff) < 1e-8) continue;
    if (t.qpow == 1 && t.ppow == 0 && t.dqpow == 1 && t.dppow == 0) {
      CHECK(std::abs(t.coeff - cxd(0.0, 0.5)) < 1e-8);
      saw_qdq = true;
    } else if (t.qpow == 0 && t.ppow == 0 && t.dqpow == 0 && t.dppow == 1) {
      CHECK(std::abs(t.coeff - cxd(-0.2, 0.0)) < 1e-8);
      saw_dp = true;
    } else {
      FAIL("unexpected recovered term");
    }
  }
  CHECK(saw_qdq);
  CHECK(saw_dp);
}

TEST_CASE("algebra-check scenario writes a report and reflects the verdict") {
  ScenarioConfig c = parse_config(R"({
    "scenario": "algebra-check", "check": {"dim": 8, "profile": "default"}
  })");
  const std::string dir = fresh_dir("check_default");
  RunResult r = run_scenario(c, 2024, dir);
  CHECK(r.check_passed);
  const std::string rep = slurp(dir + "/report.txt");
  CHECK(rep.find("RESULT PASS") != std::string::npos);
  CHECK(lines_of(slurp(dir + "/manifest.txt")).back() == "files manifest.txt report.txt");

  // the strict profile pins composition tolerances small spaces cannot meet
  ScenarioConfig s = parse_config(R"({
    "scenario": "algebra-check", "check": {"dim": 8, "profile": "strict"}
  })");
  const std::string dir2 = fresh_dir("check_strict");
  RunResult r2 = run_scenario(s, 2024, dir2);
  CHECK(!r2.check_passed);
  CHECK(slurp(dir2 + "/report.txt").find("RESULT FAIL") != std::string::npos);
}
