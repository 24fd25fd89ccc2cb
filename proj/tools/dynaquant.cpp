// dynaquant.cpp — command-line interface
#include "dynaquant/scenario.hpp"
#include "dynaquant/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>

using namespace dynaquant;

int main(int argc, char** argv) {
  CLI::App app{"dynaquant — dynamical quantization of classical kinetic operators"};
  app.set_version_flag("--version", std::string(kVersion));

  std::uint64_t seed = 12345;
  std::string out_dir;
  app.add_option("--seed", seed, "seed for randomized self-checks (default 12345)");
  app.add_option("--out", out_dir, "output directory override");

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "execute a scenario from a JSON config");
  run->add_option("config", config_path, "path to JSON configuration")->required();
  run->fallthrough();

  int check_dim = 32;
  std::string profile = "default";
  CLI::App* chk = app.add_subcommand("check-algebra", "run the algebra identity battery");
  chk->add_option("--n", check_dim, "space dimension, 8..64 (default 32)");
  chk->add_option("--profile", profile, "'default' (dimension-scaled) or 'strict'");
  chk->fallthrough();

  std::string dump_path;
  int degree = 3;
  CLI::App* deq =
      app.add_subcommand("dequantize", "recover a dynamical operator from a generator dump");
  deq->add_option("dump", dump_path, "path to a generator dump file")->required();
  deq->add_option("--degree", degree, "maximum total term degree, 0..4 (default 3)");
  deq->fallthrough();

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ScenarioConfig cfg = load_config(config_path);
      RunResult res = run_scenario(cfg, seed, out_dir);
      for (const std::string& f : res.files_written) std::printf("wrote %s\n", f.c_str());
      if (cfg.scenario == ScenarioKind::AlgebraCheck && !res.check_passed) {
        std::fprintf(stderr, "algebra check reported failures (see report.txt)\n");
        return 1;
      }
      return 0;
    }
    if (chk->parsed()) {
      AlgebraReport rep = check_algebra(check_dim, profile, seed);
      std::printf("%s\n", format_report(rep).c_str());
      return rep.all_pass() ? 0 : 1;
    }
    if (deq->parsed()) {
      SuperOperator S = read_generator_dump(dump_path);
      DynOperator L = dequantize(S, degree);
      const FockSpace& sp = *S.space;
      std::printf("dynaquant dequantize degree %d\n", degree);
      std::printf("dim %d hbar %.17g mass %.17g omega %.17g\n", sp.dim, sp.hbar, sp.mass,
                  sp.omega);
      double maxc = 0.0;
      for (const DynTerm& t : L.terms) maxc = std::max(maxc, std::abs(t.coeff));
      const double cut = 1e-9 * std::max(1.0, maxc); // hide least-squares noise
      for (const DynTerm& t : L.terms) {
        if (std::abs(t.coeff) <= cut) continue;
        std::printf("term q^%d p^%d dq^%d dp^%d coeff %.12g %.12g\n", t.qpow, t.ppow, t.dqpow,
                    t.dppow, t.coeff.real(), t.coeff.imag());
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const RankDeficientError& e) {
    std::fprintf(stderr, "error: %s (rank %ld of %ld columns)\n", e.what(), long(e.rank()),
                 long(e.cols()));
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
