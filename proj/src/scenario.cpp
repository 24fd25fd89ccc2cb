// scenario.cpp — configuration parsing, end-to-end runs, file output
#include "dynaquant/scenario.hpp"
#include "dynaquant/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dynaquant {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------- parsing helpers ----------

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool ok =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* k) { return it.key() == k; });
    if (!ok) fail("unknown key '" + path + it.key() + "'");
  }
}

double get_num(const json& o, const char* key, double dflt, const std::string& path) {
  if (!o.contains(key)) return dflt;
  const json& v = o.at(key);
  if (!v.is_number()) fail("field '" + path + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& o, const char* key, int dflt, const std::string& path) {
  if (!o.contains(key)) return dflt;
  const json& v = o.at(key);
  if (!v.is_number_integer()) fail("field '" + path + key + "' must be an integer");
  return v.get<int>();
}

bool get_bool(const json& o, const char* key, bool dflt, const std::string& path) {
  if (!o.contains(key)) return dflt;
  const json& v = o.at(key);
  if (!v.is_boolean()) fail("field '" + path + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_str(const json& o, const char* key, const std::string& dflt,
                    const std::string& path) {
  if (!o.contains(key)) return dflt;
  const json& v = o.at(key);
  if (!v.is_string()) fail("field '" + path + key + "' must be a string");
  return v.get<std::string>();
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

// ---------- parse_config ----------

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("parse error: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  check_keys(root,
             {"scenario", "dim", "hbar", "mass", "omega", "gamma", "dt", "steps", "method",
              "initial_state", "fp", "grid", "wigner_stride", "classical_twin",
              "dump_generator", "out_dir", "custom", "check"},
             "");

  ScenarioConfig c;
  if (!root.contains("scenario")) fail("missing required field 'scenario'");
  const std::string sc = get_str(root, "scenario", "", "");
  if (sc == "damped-oscillator")
    c.scenario = ScenarioKind::DampedOscillator;
  else if (sc == "fokker-planck")
    c.scenario = ScenarioKind::FokkerPlanck;
  else if (sc == "algebra-check")
    c.scenario = ScenarioKind::AlgebraCheck;
  else if (sc == "custom")
    c.scenario = ScenarioKind::Custom;
  else
    fail("field 'scenario' must be one of damped-oscillator, fokker-planck, algebra-check, "
         "custom");

  c.dim = get_int(root, "dim", 40, "");
  if (c.dim < 2 || c.dim > 96) fail("field 'dim' out of supported range [2, 96]");
  c.hbar = get_num(root, "hbar", 1.0, "");
  c.mass = get_num(root, "mass", 1.0, "");
  c.omega = get_num(root, "omega", 1.0, "");
  if (!(c.hbar > 0) || !(c.mass > 0) || !(c.omega > 0))
    fail("fields 'hbar', 'mass', 'omega' must be > 0");
  c.gamma = get_num(root, "gamma", 0.1, "");
  c.dt = get_num(root, "dt", 0.01, "");
  if (!(c.dt > 0)) fail("field 'dt' must be > 0");
  c.steps = get_int(root, "steps", 500, "");
  if (c.steps < 0) fail("field 'steps' must be >= 0");

  const std::string method = get_str(root, "method", "expm", "");
  if (method == "expm")
    c.method = EvolveMethod::EXPM;
  else if (method == "rk4")
    c.method = EvolveMethod::RK4;
  else
    fail("field 'method' must be 'expm' or 'rk4'");

  if (root.contains("initial_state")) {
    const json& st = root.at("initial_state");
    if (!st.is_object()) fail("field 'initial_state' must be an object");
    const std::string type = get_str(st, "type", "", "initial_state.");
    if (type == "coherent") {
      check_keys(st, {"type", "alpha_re", "alpha_im"}, "initial_state.");
      c.state.kind = InitialStateConfig::Kind::Coherent;
      c.state.alpha = cxd(get_num(st, "alpha_re", 1.0, "initial_state."),
                          get_num(st, "alpha_im", 0.0, "initial_state."));
    } else if (type == "fock") {
      check_keys(st, {"type", "level"}, "initial_state.");
      c.state.kind = InitialStateConfig::Kind::Fock;
      c.state.level = get_int(st, "level", 0, "initial_state.");
      if (c.state.level < 0 || c.state.level >= c.dim)
        fail("field 'initial_state.level' outside [0, dim)");
    } else {
      fail("field 'initial_state.type' must be 'coherent' or 'fock'");
    }
  }

  // kinetic coefficient defaults (diffusion scales with hbar)
  c.fp.c_pq = -1.0;
  c.fp.c_qp = 1.0;
  c.fp.c_pp = c.fp.c_qq = -0.05;
  c.fp.d_qq = c.fp.d_pp = 0.05 * c.hbar / 2.0;
  c.fp.d_qp = 0.0;
  c.fp.h = 0.0;
  if (root.contains("fp")) {
    if (c.scenario != ScenarioKind::FokkerPlanck)
      fail("'fp' block is only valid for the fokker-planck scenario");
    const json& fp = root.at("fp");
    if (!fp.is_object()) fail("field 'fp' must be an object");
    check_keys(fp, {"c_qq", "c_qp", "c_pq", "c_pp", "d_qq", "d_qp", "d_pp", "h"}, "fp.");
    c.fp.c_qq = get_num(fp, "c_qq", c.fp.c_qq, "fp.");
    c.fp.c_qp = get_num(fp, "c_qp", c.fp.c_qp, "fp.");
    c.fp.c_pq = get_num(fp, "c_pq", c.fp.c_pq, "fp.");
    c.fp.c_pp = get_num(fp, "c_pp", c.fp.c_pp, "fp.");
    c.fp.d_qq = get_num(fp, "d_qq", c.fp.d_qq, "fp.");
    c.fp.d_qp = get_num(fp, "d_qp", c.fp.d_qp, "fp.");
    c.fp.d_pp = get_num(fp, "d_pp", c.fp.d_pp, "fp.");
    if (fp.contains("h")) {
      const json& h = fp.at("h");
      if (h.is_number()) {
        c.h_mode = HMode::Fixed;
        c.h_value = h.get<double>();
      } else if (h.is_string() && h.get<std::string>() == "auto") {
        c.h_mode = HMode::Auto;
      } else if (h.is_string() && h.get<std::string>() == "reference") {
        c.h_mode = HMode::Reference;
      } else {
        fail("field 'fp.h' must be a number, 'auto' or 'reference'");
      }
    }
  }

  if (root.contains("grid")) {
    if (c.scenario != ScenarioKind::FokkerPlanck && c.scenario != ScenarioKind::Custom)
      fail("'grid' block is only valid for fokker-planck and custom scenarios");
    const json& g = root.at("grid");
    if (!g.is_object()) fail("field 'grid' must be an object");
    check_keys(g, {"q_min", "q_max", "p_min", "p_max", "nq", "np", "dt"}, "grid.");
    GridConfig gc;
    gc.q_min = get_num(g, "q_min", gc.q_min, "grid.");
    gc.q_max = get_num(g, "q_max", gc.q_max, "grid.");
    gc.p_min = get_num(g, "p_min", gc.p_min, "grid.");
    gc.p_max = get_num(g, "p_max", gc.p_max, "grid.");
    gc.nq = get_int(g, "nq", gc.nq, "grid.");
    gc.np = get_int(g, "np", gc.np, "grid.");
    gc.dt = get_num(g, "dt", gc.dt, "grid.");
    if (!(gc.q_max > gc.q_min) || !(gc.p_max > gc.p_min))
      fail("grid box must have positive extent");
    if (gc.nq < 8 || gc.np < 8) fail("grid needs at least 8 points per axis");
    if (!(gc.dt > 0)) fail("field 'grid.dt' must be > 0");
    c.grid = gc;
  }

  c.wigner_stride = get_int(root, "wigner_stride", 0, "");
  if (c.wigner_stride < 0) fail("field 'wigner_stride' must be >= 0");
  if (c.wigner_stride > 0) {
    if (c.scenario != ScenarioKind::FokkerPlanck && c.scenario != ScenarioKind::Custom)
      fail("'wigner_stride' applies only to density-picture scenarios (fokker-planck, custom)");
    if (!c.grid) fail("'wigner_stride' requires a 'grid' block");
  }

  c.classical_twin = get_bool(root, "classical_twin", false, "");
  if (c.classical_twin) {
    if (c.scenario == ScenarioKind::FokkerPlanck) {
      if (!c.grid) fail("'classical_twin' for fokker-planck requires a 'grid' block");
    } else if (c.scenario != ScenarioKind::DampedOscillator) {
      fail("'classical_twin' applies only to damped-oscillator and fokker-planck scenarios");
    }
  }

  c.dump_generator = get_bool(root, "dump_generator", false, "");
  c.out_dir = get_str(root, "out_dir", ".", "");

  if (c.scenario == ScenarioKind::Custom) {
    if (!root.contains("custom")) fail("custom scenario requires a 'custom' block");
    const json& cu = root.at("custom");
    if (!cu.is_object()) fail("field 'custom' must be an object");
    check_keys(cu, {"form", "terms"}, "custom.");
    const std::string form = get_str(cu, "form", "qp", "custom.");
    if (form == "qp")
      c.custom_form = DynForm::QP;
    else if (form == "symmetric")
      c.custom_form = DynForm::Symmetric;
    else
      fail("field 'custom.form' must be 'qp' or 'symmetric'");
    if (!cu.contains("terms") || !cu.at("terms").is_array())
      fail("field 'custom.terms' must be an array");
    for (size_t i = 0; i < cu.at("terms").size(); ++i) {
      const json& t = cu.at("terms")[i];
      const std::string where = "custom.terms[" + std::to_string(i) + "]";
      if (!t.is_array() || t.size() != 6)
        fail("field '" + where + "' must be [coeff_re, coeff_im, qpow, ppow, dqpow, dppow]");
      for (int k = 0; k < 2; ++k)
        if (!t[k].is_number()) fail("field '" + where + "': coefficients must be numbers");
      DynTerm term;
      term.coeff = cxd(t[0].get<double>(), t[1].get<double>());
      int pows[4];
      for (int k = 2; k < 6; ++k) {
        if (!t[k].is_number_integer() || t[k].get<int>() < 0)
          fail("field '" + where + "': powers must be integers >= 0");
        pows[k - 2] = t[k].get<int>();
      }
      term.qpow = pows[0];
      term.ppow = pows[1];
      term.dqpow = pows[2];
      term.dppow = pows[3];
      c.custom_terms.push_back(term);
    }
    if (c.custom_terms.empty()) fail("field 'custom.terms' must not be empty");
  } else if (root.contains("custom")) {
    fail("'custom' block is only valid for the custom scenario");
  }

  if (root.contains("check")) {
    if (c.scenario != ScenarioKind::AlgebraCheck)
      fail("'check' block is only valid for the algebra-check scenario");
    const json& ch = root.at("check");
    if (!ch.is_object()) fail("field 'check' must be an object");
    check_keys(ch, {"dim", "profile"}, "check.");
    c.check_dim = get_int(ch, "dim", 32, "check.");
    if (c.check_dim < 8 || c.check_dim > 64)
      fail("field 'check.dim' out of supported range [8, 64]");
    c.check_profile = get_str(ch, "profile", "default", "check.");
    if (c.check_profile != "default" && c.check_profile != "strict")
      fail("field 'check.profile' must be 'default' or 'strict'");
  }

  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  switch (c.scenario) {
    case ScenarioKind::DampedOscillator: j["scenario"] = "damped-oscillator"; break;
    case ScenarioKind::FokkerPlanck: j["scenario"] = "fokker-planck"; break;
    case ScenarioKind::AlgebraCheck: j["scenario"] = "algebra-check"; break;
    case ScenarioKind::Custom: j["scenario"] = "custom"; break;
  }
  j["dim"] = c.dim;
  j["hbar"] = c.hbar;
  j["mass"] = c.mass;
  j["omega"] = c.omega;
  j["gamma"] = c.gamma;
  j["dt"] = c.dt;
  j["steps"] = c.steps;
  j["method"] = (c.method == EvolveMethod::EXPM) ? "expm" : "rk4";
  nlohmann::ordered_json st;
  if (c.state.kind == InitialStateConfig::Kind::Coherent) {
    st["type"] = "coherent";
    st["alpha_re"] = c.state.alpha.real();
    st["alpha_im"] = c.state.alpha.imag();
  } else {
    st["type"] = "fock";
    st["level"] = c.state.level;
  }
  j["initial_state"] = st;
  if (c.scenario == ScenarioKind::FokkerPlanck) {
    nlohmann::ordered_json fp;
    fp["c_qq"] = c.fp.c_qq;
    fp["c_qp"] = c.fp.c_qp;
    fp["c_pq"] = c.fp.c_pq;
    fp["c_pp"] = c.fp.c_pp;
    fp["d_qq"] = c.fp.d_qq;
    fp["d_qp"] = c.fp.d_qp;
    fp["d_pp"] = c.fp.d_pp;
    if (c.h_mode == HMode::Auto)
      fp["h"] = "auto";
    else if (c.h_mode == HMode::Reference)
      fp["h"] = "reference";
    else
      fp["h"] = c.h_value;
    j["fp"] = fp;
  }
  if (c.grid) {
    nlohmann::ordered_json g;
    g["q_min"] = c.grid->q_min;
    g["q_max"] = c.grid->q_max;
    g["p_min"] = c.grid->p_min;
    g["p_max"] = c.grid->p_max;
    g["nq"] = c.grid->nq;
    g["np"] = c.grid->np;
    g["dt"] = c.grid->dt;
    j["grid"] = g;
  }
  j["wigner_stride"] = c.wigner_stride;
  j["classical_twin"] = c.classical_twin;
  j["dump_generator"] = c.dump_generator;
  j["out_dir"] = c.out_dir;
  if (c.scenario == ScenarioKind::Custom) {
    nlohmann::ordered_json cu;
    cu["form"] = (c.custom_form == DynForm::QP) ? "qp" : "symmetric";
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const DynTerm& t : c.custom_terms)
      terms.push_back({t.coeff.real(), t.coeff.imag(), t.qpow, t.ppow, t.dqpow, t.dppow});
    cu["terms"] = terms;
    j["custom"] = cu;
  }
  if (c.scenario == ScenarioKind::AlgebraCheck) {
    nlohmann::ordered_json ch;
    ch["dim"] = c.check_dim;
    ch["profile"] = c.check_profile;
    j["check"] = ch;
  }
  return j.dump();
}

// ---------- file output ----------

namespace {

class OutFile {
public:
  explicit OutFile(const std::string& path) : f_(std::fopen(path.c_str(), "wb")) {
    if (!f_) throw std::runtime_error("cannot open for writing: " + path);
  }
  ~OutFile() {
    if (f_) std::fclose(f_);
  }
  OutFile(const OutFile&) = delete;
  OutFile& operator=(const OutFile&) = delete;
  void line(const std::string& s) {
    std::fwrite(s.data(), 1, s.size(), f_);
    std::fputc('\n', f_);
  }

private:
  std::FILE* f_;
};

} // namespace

void write_timeseries_csv(const std::string& path, const EvolutionResult& r) {
  OutFile out(path);
  out.line("t,trace_re,herm_defect,mean_q,mean_p,var_qq,var_pp,cov_qp,energy,purity");
  for (size_t k = 0; k < r.times.size(); ++k) {
    std::string row = fmt17(r.times[k]);
    for (const auto* col : {&r.trace_re, &r.herm_defect, &r.mean_q, &r.mean_p, &r.var_qq,
                            &r.var_pp, &r.cov_qp, &r.energy, &r.purity}) {
      row += ',';
      row += fmt17((*col)[k]);
    }
    out.line(row);
  }
}

void write_wigner_csv(const std::string& path, const GridSymbol& s) {
  OutFile out(path);
  out.line("q,p,value");
  for (int i = 0; i < s.grid.nq; ++i)
    for (int j = 0; j < s.grid.np; ++j)
      out.line(fmt17(s.grid.q(i)) + "," + fmt17(s.grid.p(j)) + "," +
               fmt17(s.values(i, j).real()));
}

void write_classical_csv(const std::string& path, const ClassicalEvolution& r) {
  OutFile out(path);
  out.line("t,mass,mean_q,mean_p,var_qq,var_pp,cov_qp");
  for (size_t k = 0; k < r.times.size(); ++k) {
    const GridMoments& m = r.moments[k];
    out.line(fmt17(r.times[k]) + "," + fmt17(m.mass) + "," + fmt17(m.mean_q) + "," +
             fmt17(m.mean_p) + "," + fmt17(m.var_qq) + "," + fmt17(m.var_pp) + "," +
             fmt17(m.cov_qp));
  }
}

void write_generator_dump(const std::string& path, const SuperOperator& S) {
  OutFile out(path);
  out.line("dynaquant-generator v1");
  const FockSpace& s = *S.space;
  out.line("dim " + std::to_string(s.dim) + " hbar " + fmt17(s.hbar) + " mass " +
           fmt17(s.mass) + " omega " + fmt17(s.omega));
  const Index n2 = Index(s.dim) * s.dim;
  for (Index j = 0; j < n2; ++j)
    for (Index i = 0; i < n2; ++i)
      out.line(fmt17(S.mat(i, j).real()) + " " + fmt17(S.mat(i, j).imag()));
}

SuperOperator read_generator_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_generator_dump: cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  if (header != "dynaquant-generator v1")
    throw std::runtime_error("read_generator_dump: unrecognized header");
  std::string tag_dim, tag_hbar, tag_mass, tag_omega;
  int dim = 0;
  double hbar = 0, mass = 0, omega = 0;
  in >> tag_dim >> dim >> tag_hbar >> hbar >> tag_mass >> mass >> tag_omega >> omega;
  if (!in || tag_dim != "dim" || tag_hbar != "hbar" || tag_mass != "mass" ||
      tag_omega != "omega")
    throw std::runtime_error("read_generator_dump: malformed size line");
  FockSpacePtr space = build_space(dim, hbar, mass, omega);
  const Index n2 = Index(dim) * dim;
  Matrix M(n2, n2);
  for (Index j = 0; j < n2; ++j)
    for (Index i = 0; i < n2; ++i) {
      double re = 0, im = 0;
      if (!(in >> re >> im))
        throw std::runtime_error("read_generator_dump: truncated matrix data");
      M(i, j) = cxd(re, im);
    }
  return {space, M};
}

// ---------- run_scenario ----------

namespace {

Operator initial_state_op(const FockSpacePtr& space, const InitialStateConfig& st) {
  if (st.kind == InitialStateConfig::Kind::Coherent) return coherent_state(space, st.alpha);
  return fock_state(space, st.level);
}

// Observable-picture series: evolve the quadrature observables under S and
// take expectations against the fixed initial density.
EvolutionResult heisenberg_series(const SuperOperator& S, const Operator& rho0, double dt,
                                  int steps, EvolveMethod method) {
  const FockSpacePtr& s = S.space;
  const int n = s->dim;
  const Matrix& q = s->q;
  const Matrix& p = s->p;
  const Matrix q2 = q * q, p2 = p * p;
  const Matrix qp_sym = 0.5 * (q * p + p * q);
  const Matrix H = harmonic_hamiltonian(*s, s->mass, s->omega * s->omega);

  Matrix cols(Index(n) * n, 6);
  cols.col(0) = vec(q);
  cols.col(1) = vec(p);
  cols.col(2) = vec(q2);
  cols.col(3) = vec(p2);
  cols.col(4) = vec(qp_sym);
  cols.col(5) = vec(H);

  Propagator prop(S, dt, method);
  const double trace0 = rho0.mat.trace().real();
  const double purity0 = (rho0.mat * rho0.mat).trace().real();

  EvolutionResult out;
  auto record = [&](int step) {
    double herm = 0.0;
    std::array<double, 6> ex{};
    for (int k = 0; k < 6; ++k) {
      Matrix O = unvec(cols.col(k), n, n);
      herm = std::max(herm, (O - O.adjoint().eval()).norm());
      ex[k] = (rho0.mat * O).trace().real();
    }
    out.times.push_back(step * dt);
    out.trace_re.push_back(trace0);
    out.herm_defect.push_back(herm);
    out.mean_q.push_back(ex[0]);
    out.mean_p.push_back(ex[1]);
    out.var_qq.push_back(ex[2] - ex[0] * ex[0]);
    out.var_pp.push_back(ex[3] - ex[1] * ex[1]);
    out.cov_qp.push_back(ex[4] - ex[0] * ex[1]);
    out.energy.push_back(ex[5]);
    out.purity.push_back(purity0);
  };
  record(0);
  for (int k = 1; k <= steps; ++k) {
    prop.step(cols);
    record(k);
  }
  return out;
}

// Exact mean flow of the damped oscillator: d/dt (q,p) = A (q,p).
void write_ode_twin_csv(const std::string& path, double mass, double omega, double gamma,
                        double q0, double p0, double dt, int steps) {
  Matrix A(2, 2);
  A << 0.0, 1.0 / mass, -mass * omega * omega, -gamma / mass;
  Matrix P = expm(A * dt);
  Eigen::Vector2cd x(q0, p0);
  OutFile out(path);
  out.line("t,mean_q,mean_p");
  for (int k = 0; k <= steps; ++k) {
    out.line(fmt17(k * dt) + "," + fmt17(x[0].real()) + "," + fmt17(x[1].real()));
    x = P * x;
  }
}

} // namespace

RunResult run_scenario(const ScenarioConfig& c, std::uint64_t seed,
                       const std::string& out_override) {
  const std::string out_dir = out_override.empty() ? c.out_dir : out_override;
  fs::create_directories(out_dir);
  auto path_of = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

  RunResult result;
  std::vector<std::string> names; // manifest-relative file names
  std::string report_text;

  if (c.scenario == ScenarioKind::AlgebraCheck) {
    AlgebraReport report = check_algebra(c.check_dim, c.check_profile, seed);
    report_text = format_report(report);
    OutFile rep(path_of("report.txt"));
    rep.line(report_text);
    names.push_back("report.txt");
    result.check_passed = report.all_pass();
  } else {
    FockSpacePtr space = build_space(c.dim, c.hbar, c.mass, c.omega);
    Operator rho0 = initial_state_op(space, c.state);

    SuperOperator S = zero_super(space);
    if (c.scenario == ScenarioKind::DampedOscillator) {
      S = quantize_qp(space, damped_oscillator_dynop(c.mass, c.omega, c.gamma));
    } else if (c.scenario == ScenarioKind::FokkerPlanck) {
      result.trace_scan = trace_preservation_scan(space, c.fp);
      result.used_trace_scan = true;
      double h = c.h_value;
      if (c.h_mode == HMode::Auto) h = result.trace_scan.h_star;
      if (c.h_mode == HMode::Reference) h = result.trace_scan.h_reference;
      result.h_used = h;
      FpCoefficients fp = c.fp;
      fp.h = h;
      S = quantize_qp(space, fokker_planck_dynop(fp));
    } else { // Custom
      DynOperator L;
      L.form = c.custom_form;
      L.terms = c.custom_terms;
      L = normalized(L);
      S = (c.custom_form == DynForm::QP) ? quantize_qp(space, L)
                                         : quantize_symmetric(space, L);
    }

    const bool heisenberg = (c.scenario == ScenarioKind::DampedOscillator);
    if (heisenberg) {
      result.series = heisenberg_series(S, rho0, c.dt, c.steps, c.method);
    } else {
      result.series =
          evolve_quantum(S, rho0, c.dt, c.steps, c.method, c.wigner_stride);
    }
    write_timeseries_csv(path_of("timeseries.csv"), result.series);
    names.push_back("timeseries.csv");

    if (c.wigner_stride > 0 && c.grid) {
      PhaseGrid grid = make_grid(c.grid->q_min, c.grid->q_max, c.grid->p_min, c.grid->p_max,
                                 c.grid->nq, c.grid->np);
      for (size_t k = 0; k < result.series.snapshots.size(); ++k) {
        GridSymbol w = weyl_symbol(result.series.snapshots[k], grid);
        const std::string name = "wigner_" + std::to_string(k) + ".csv";
        write_wigner_csv(path_of(name), w);
        names.push_back(name);
      }
    }

    if (c.classical_twin) {
      if (c.scenario == ScenarioKind::DampedOscillator) {
        write_ode_twin_csv(path_of("classical.csv"), c.mass, c.omega, c.gamma,
                           result.series.mean_q.front(), result.series.mean_p.front(), c.dt,
                           c.steps);
        names.push_back("classical.csv");
      } else {
        if (c.state.kind != InitialStateConfig::Kind::Coherent)
          throw std::invalid_argument(
              "run_scenario: classical twin requires a coherent initial state");
        PhaseGrid grid = make_grid(c.grid->q_min, c.grid->q_max, c.grid->p_min, c.grid->p_max,
                                   c.grid->nq, c.grid->np);
        const double q0 = std::sqrt(2.0 * c.hbar / (c.mass * c.omega)) * c.state.alpha.real();
        const double p0 = std::sqrt(2.0 * c.hbar * c.mass * c.omega) * c.state.alpha.imag();
        const double sq = std::sqrt(c.hbar / (2.0 * c.mass * c.omega));
        const double sp = std::sqrt(c.hbar * c.mass * c.omega / 2.0);
        GridSymbol f0 = gaussian_symbol(grid, q0, p0, sq, sp);
        FpCoefficients fp = c.fp;
        fp.h = result.h_used;
        DynOperator L = fokker_planck_dynop(fp);
        const double total_t = c.steps * c.dt;
        const int csteps =
            (c.steps == 0) ? 0 : std::max(1, int(std::llround(total_t / c.grid->dt)));
        const double cdt = (csteps == 0) ? c.grid->dt : total_t / csteps;
        ClassicalEvolution ce = evolve_classical(L, f0, cdt, csteps);
        write_classical_csv(path_of("classical.csv"), ce);
        names.push_back("classical.csv");
      }
    }

    if (c.dump_generator) {
      write_generator_dump(path_of("generator.dump"), S);
      names.push_back("generator.dump");
    }
  }

  // manifest (written last so it can list everything, including itself)
  names.insert(names.begin(), "manifest.txt");
  {
    OutFile man(path_of("manifest.txt"));
    man.line("dynaquant manifest");
    man.line(std::string("version ") + kVersion);
    man.line("seed " + std::to_string(seed));
    man.line("config " + canonical_config(c));
    if (result.used_trace_scan) {
      man.line("h_star " + fmt17(result.trace_scan.h_star));
      man.line("h_reference " + fmt17(result.trace_scan.h_reference));
      man.line("h_used " + fmt17(result.h_used));
      man.line(std::string("h_matches_reference ") +
               (result.trace_scan.matches_reference ? "yes" : "no"));
    }
    std::string files = "files";
    for (const std::string& n : names) files += " " + n;
    man.line(files);
  }
  for (const std::string& n : names) result.files_written.push_back(path_of(n));
  return result;
}

} // namespace dynaquant
