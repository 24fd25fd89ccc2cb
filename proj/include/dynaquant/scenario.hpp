// scenario.hpp — configuration, end-to-end runs, self-checks, file output
#pragma once

#include "dynaquant/evolve.hpp"
#include "dynaquant/phasegrid.hpp"
#include "dynaquant/quantize.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace dynaquant {

// ---------- configuration ----------

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ScenarioKind { DampedOscillator, FokkerPlanck, AlgebraCheck, Custom };

struct InitialStateConfig {
  enum class Kind { Coherent, Fock } kind = Kind::Coherent;
  cxd alpha{1.0, 0.0};
  int level = 0;
};

// How the constant term of the kinetic generator is chosen.
enum class HMode { Auto, Reference, Fixed };

struct GridConfig {
  double q_min = -6, q_max = 6, p_min = -6, p_max = 6;
  int nq = 97, np = 97;
  double dt = 0.0025; // classical integrator step
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::DampedOscillator;
  int dim = 40;
  double hbar = 1.0, mass = 1.0, omega = 1.0, gamma = 0.1;
  FpCoefficients fp;                 // kinetic coefficients (defaults filled at parse)
  HMode h_mode = HMode::Auto;
  double h_value = 0.0;              // used when h_mode == Fixed
  double dt = 0.01;
  int steps = 500;
  EvolveMethod method = EvolveMethod::EXPM;
  InitialStateConfig state;
  std::optional<GridConfig> grid;
  int wigner_stride = 0;             // phase-space snapshots every k steps (0 = off)
  bool classical_twin = false;       // also integrate the classical counterpart
  bool dump_generator = false;       // write the assembled generator matrix
  std::string out_dir = ".";
  DynForm custom_form = DynForm::QP; // custom scenario term list
  std::vector<DynTerm> custom_terms;
  int check_dim = 32;                // algebra-check scenario
  std::string check_profile = "default";
};

// Strict JSON parsing: unknown keys and malformed values raise ConfigError
// with the offending field path in the message.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

// Canonical one-line JSON echo of a parsed configuration (stable field order).
std::string canonical_config(const ScenarioConfig& c);

// ---------- end-to-end runs ----------

struct RunResult {
  std::vector<std::string> files_written; // absolute or out_dir-relative paths
  EvolutionResult series;
  TraceScan trace_scan;                   // filled for kinetic scenarios
  bool used_trace_scan = false;
  double h_used = 0.0;
  bool check_passed = true;               // algebra-check scenario verdict
};

RunResult run_scenario(const ScenarioConfig& c, std::uint64_t seed,
                       const std::string& out_override = "");

// ---------- algebra self-check ----------

struct CheckLine {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;     // informational lines carry tol < 0
  bool pass = true;
  std::string note;
};

struct AlgebraReport {
  int dim = 0;
  std::string profile;
  std::uint64_t seed = 0;
  std::vector<CheckLine> lines;
  bool all_pass() const;
};

// Battery of identity checks on the lifted algebra at the given dimension.
// profile "default" scales composition tolerances with dim; "strict" pins
// them at 1e-6 regardless (small spaces are expected to fail there).
AlgebraReport check_algebra(int dim, const std::string& profile, std::uint64_t seed);

std::string format_report(const AlgebraReport& r);

// ---------- file output ----------

void write_timeseries_csv(const std::string& path, const EvolutionResult& r);
void write_wigner_csv(const std::string& path, const GridSymbol& s);
void write_classical_csv(const std::string& path, const ClassicalEvolution& r);

// Plain-text generator dump: a header line, a size line, then dim⁴
// column-major "re im" rows.
void write_generator_dump(const std::string& path, const SuperOperator& S);
SuperOperator read_generator_dump(const std::string& path);

} // namespace dynaquant
