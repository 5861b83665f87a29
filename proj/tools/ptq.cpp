// ptq: run no-signaling scenarios, parameter sweeps, and single-system
// validation for two-level PT-symmetric quantum mechanics.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ptq/experiments.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInvariantViolation = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitConsistencyError = 3;

struct RunFlags {
  std::string scenario;
  double gamma1 = -1, zeta1 = -1, gamma2 = -1, zeta2 = -1;
  std::string coeffs;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double t_start = 0, t_end = 0, tolerance = 0;
  int steps = 0;
  std::string format;
  std::string out;
  std::string config_file;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--scenario", f.scenario,
                  "pt_pt_right|pt_pt_left|pt_sqm_evolve_pt|pt_sqm_evolve_sqm|broken_demo");
  cmd->add_option("--gamma1", f.gamma1, "gain/loss strength of subsystem 1");
  cmd->add_option("--zeta1", f.zeta1, "coupling of subsystem 1");
  cmd->add_option("--gamma2", f.gamma2, "gain/loss strength of subsystem 2");
  cmd->add_option("--zeta2", f.zeta2, "coupling of subsystem 2");
  cmd->add_option("--coeffs", f.coeffs,
                  "c11r,c11i,c12r,c12i,c21r,c21i,c22r,c22i");
  cmd->add_option("--seed", f.seed, "seed for a random coefficient draw");
  cmd->add_option("--t-start", f.t_start, "start of the time grid");
  cmd->add_option("--t-end", f.t_end, "end of the time grid");
  cmd->add_option("--steps", f.steps, "number of grid points (inclusive)");
  cmd->add_option("--tolerance", f.tolerance, "invariance tolerance (default 1e-11)");
  cmd->add_option("--format", f.format, "csv|json");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--config", f.config_file, "JSON config file; flags override");
}

ptq::BipartiteState::Coeffs parse_coeffs(const std::string& text) {
  std::stringstream ss(text);
  double v[8];
  char comma;
  for (int i = 0; i < 8; ++i) {
    if (i > 0 && (!(ss >> comma) || comma != ',')) {
      throw ptq::ContractError("--coeffs expects 8 comma-separated reals");
    }
    if (!(ss >> v[i])) {
      throw ptq::ContractError("--coeffs expects 8 comma-separated reals");
    }
  }
  ptq::BipartiteState::Coeffs c;
  for (int i = 0; i < 4; ++i) c[i / 2][i % 2] = ptq::cplx(v[2 * i], v[2 * i + 1]);
  return c;
}

ptq::ScenarioConfig build_config(const CLI::App* cmd, const RunFlags& f) {
  ptq::ScenarioConfig c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw ptq::ContractError("cannot read config file: " + f.config_file);
    std::stringstream buf;
    buf << in.rdbuf();
    c = ptq::config_from_json(buf.str());
  }
  auto set = [cmd](const char* name) { return cmd->count(name) > 0; };
  if (set("--scenario")) c.scenario = ptq::scenario_from_name(f.scenario);
  if (set("--gamma1")) c.params1.gamma = f.gamma1;
  if (set("--zeta1")) c.params1.zeta = f.zeta1;
  if (set("--gamma2")) c.params2.gamma = f.gamma2;
  if (set("--zeta2")) c.params2.zeta = f.zeta2;
  if (set("--coeffs")) c.coeffs = parse_coeffs(f.coeffs);
  if (set("--seed")) c.seed = f.seed;
  if (set("--t-start")) c.t_start = f.t_start;
  if (set("--t-end")) c.t_end = f.t_end;
  if (set("--steps")) c.steps = f.steps;
  if (set("--tolerance")) c.tolerance = f.tolerance;
  if (set("--format")) {
    if (f.format == "csv") c.format = ptq::OutputFormat::Csv;
    else if (f.format == "json") c.format = ptq::OutputFormat::Json;
    else throw ptq::ContractError("--format must be csv or json");
  }
  return c;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ptq::ContractError("cannot write output file: " + out_path);
  out << text;
}

int cmd_run(const CLI::App* cmd, const RunFlags& flags) {
  const ptq::ScenarioConfig config = build_config(cmd, flags);
  const ptq::RunReport report = ptq::run_scenario(config);
  write_output(ptq::emit_report(report), flags.out);
  return report.pass ? kExitPass : kExitInvariantViolation;
}

int cmd_sweep(const CLI::App* cmd, const RunFlags& flags, const std::string& axis,
              const std::string& values_text) {
  const ptq::ScenarioConfig base = build_config(cmd, flags);
  std::vector<double> values;
  std::stringstream ss(values_text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  if (values.empty()) throw ptq::ContractError("--values expects at least one value");

  const auto reports = ptq::sweep(base, ptq::axis_from_name(axis), values);
  std::string out;
  bool all_pass = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ptq::RunReport& r = reports[i];
    out += "# sweep " + std::string(ptq::to_string(ptq::axis_from_name(axis))) + "=" +
           std::to_string(values[i]);
    if (r.skipped) {
      out += " " + r.skip_reason + "\n";
      continue;
    }
    out += "\n" + ptq::emit_report(r);
    all_pass = all_pass && r.pass;
  }
  write_output(out, flags.out);
  return all_pass ? kExitPass : kExitInvariantViolation;
}

int cmd_validate(double gamma, double zeta) {
  const ptq::PTSystem sys = ptq::PTSystem::build({gamma, zeta});
  std::printf("phase: %s\n", ptq::to_string(sys.phase()));
  const ptq::EigenDecomposition2 ed = ptq::eig2(sys.hamiltonian());
  std::printf("eigenvalues: (%.17g%+.17gi), (%.17g%+.17gi)\n",
              ed.eigenvalues[0].real(), ed.eigenvalues[0].imag(),
              ed.eigenvalues[1].real(), ed.eigenvalues[1].imag());
  if (sys.phase() == ptq::PhaseClass::Unbroken) {
    const ptq::CMat residual = sys.metric() * sys.hamiltonian() *
                                   ptq::inverse2(sys.metric()) -
                               sys.hamiltonian().adjoint();
    std::printf("pseudo-hermiticity residual: %.17g\n", residual.norm_inf());
  } else {
    std::printf("pseudo-hermiticity residual: n/a (metric undefined)\n");
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-level PT-symmetric no-signaling toolkit"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one scenario over a time grid");
  add_run_flags(run, run_flags);

  RunFlags sweep_flags;
  std::string axis, values_text;
  CLI::App* sweep = app.add_subcommand("sweep", "run a scenario across an axis");
  sweep->add_option("--axis", axis, "gamma1|zeta1|gamma2|zeta2")->required();
  sweep->add_option("--values", values_text, "comma-separated axis values")->required();
  add_run_flags(sweep, sweep_flags);

  double v_gamma = 0, v_zeta = 0;
  CLI::App* validate = app.add_subcommand("validate", "inspect one PT system");
  validate->add_option("--gamma", v_gamma)->required();
  validate->add_option("--zeta", v_zeta)->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run, run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep, sweep_flags, axis, values_text);
    return cmd_validate(v_gamma, v_zeta);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  } catch (const ptq::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kExitConsistencyError;
  } catch (const ptq::PhaseError& e) {
    std::cerr << "phase error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
