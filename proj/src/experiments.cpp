#include "ptq/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

namespace ptq {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SubsystemKind left_kind(const ScenarioConfig& c) {
  return SubsystemKind::pt(c.params1);
}

SubsystemKind right_kind(const ScenarioConfig& c) {
  switch (c.scenario) {
    case Scenario::PtPtRight:
    case Scenario::PtPtLeft:
      return SubsystemKind::pt(c.params2);
    default:
      return SubsystemKind::standard();
  }
}

Side evolving_side(Scenario s) {
  switch (s) {
    case Scenario::PtPtRight:
    case Scenario::PtSqmEvolveSqm:
      return Side::Right;
    default:
      return Side::Left;
  }
}

// Spectrum of the coefficient Gram matrix after renormalization; valid
// for non-unitary (broken-phase) coefficient matrices too.
Spectrum2 normalized_gram_spectrum(const BipartiteState::Coeffs& c) {
  double n2 = 0.0;
  for (const auto& row : c)
    for (const cplx& z : row) n2 += std::norm(z);
  const cplx det = (c[0][0] * c[1][1] - c[0][1] * c[1][0]) * (1.0 / n2);
  const double radicand = std::max(1.0 - 4.0 * std::norm(det), 0.0);
  const double root = std::sqrt(radicand);
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

void cross_check_representations(const BipartiteState& state) {
  for (Side keep : {Side::Left, Side::Right}) {
    const CMat numeric = reduced_density(state, keep);
    const CMat closed = reduced_closed_form(state, keep).matrix();
    if ((numeric - closed).norm_inf() > 1e-10) {
      throw ConsistencyError(
          "partial-trace and closed-form reduced densities disagree by " +
          std::to_string((numeric - closed).norm_inf()));
    }
  }
}

RunReport run_unbroken(const ScenarioConfig& config,
                       const BipartiteState::Coeffs& coeffs) {
  const SubsystemKind lk = left_kind(config);
  const SubsystemKind rk = right_kind(config);
  const BipartiteState state = BipartiteState::make(coeffs, lk, rk);
  const Side side = evolving_side(config.scenario);

  RunReport report;
  report.config = config;
  report.coeffs_used = state.coeffs();
  report.phase_left = lk.phase();
  report.phase_right = rk.phase();

  report.e_initial = entropy(state);  // step 1
  report.samples.reserve(static_cast<std::size_t>(config.steps));
  for (int k = 0; k < config.steps; ++k) {  // step 2
    const double t =
        config.t_start + k * (config.t_end - config.t_start) / (config.steps - 1);
    const BipartiteState evolved = evolve(state, side, t);
    cross_check_representations(evolved);
    const EigenDecomposition2 ed = eig2(reduced_density(evolved, Side::Left));
    const double wp = ed.eigenvalues[0].real();
    const double wm = ed.eigenvalues[1].real();
    const double e = entropy_of_spectrum(wp, wm);
    report.samples.push_back({t, wp, wm, e});
    report.max_deviation = std::max(report.max_deviation, std::abs(e - report.e_initial));
  }
  report.pass = report.max_deviation <= config.tolerance;  // step 3
  return report;
}

RunReport run_broken_demo(const ScenarioConfig& config,
                          const BipartiteState::Coeffs& coeffs) {
  const SubsystemKind lk = left_kind(config);
  if (lk.phase() != PhaseClass::Broken) {
    throw PhaseError("broken_demo requires gamma1 > zeta1");
  }
  const SubsystemKind rk = right_kind(config);
  const BipartiteState state = BipartiteState::make(coeffs, lk, rk, true);

  RunReport report;
  report.config = config;
  report.coeffs_used = state.coeffs();
  report.phase_left = lk.phase();
  report.phase_right = rk.phase();
  report.non_unitary = true;

  const Spectrum2 w0 = normalized_gram_spectrum(state.coeffs());
  report.e_initial = entropy_of_spectrum(w0.omega_plus, w0.omega_minus);
  for (int k = 0; k < config.steps; ++k) {
    const double t =
        config.t_start + k * (config.t_end - config.t_start) / (config.steps - 1);
    const BipartiteState evolved = evolve(state, Side::Left, t, true);
    const Spectrum2 w = normalized_gram_spectrum(evolved.coeffs());
    const double e = entropy_of_spectrum(w.omega_plus, w.omega_minus);
    report.samples.push_back({t, w.omega_plus, w.omega_minus, e});
    report.max_deviation = std::max(report.max_deviation, std::abs(e - report.e_initial));
  }

  // Norm drift by t = 1/|Im lambda|; invariance is expected to fail here.
  const double im = std::abs(lk.spectrum()[0].imag());
  const BipartiteState drifted = evolve(state, Side::Left, 1.0 / im, true);
  report.norm_drift = std::abs(drifted.coeff_norm() - 1.0);
  report.pass = report.norm_drift >= 0.10;
  return report;
}

}  // namespace

Scenario scenario_from_name(const std::string& name) {
  if (name == "pt_pt_right") return Scenario::PtPtRight;
  if (name == "pt_pt_left") return Scenario::PtPtLeft;
  if (name == "pt_sqm_evolve_pt") return Scenario::PtSqmEvolvePt;
  if (name == "pt_sqm_evolve_sqm") return Scenario::PtSqmEvolveSqm;
  if (name == "broken_demo") return Scenario::BrokenDemo;
  throw ContractError("unknown scenario: " + name);
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::PtPtRight: return "pt_pt_right";
    case Scenario::PtPtLeft: return "pt_pt_left";
    case Scenario::PtSqmEvolvePt: return "pt_sqm_evolve_pt";
    case Scenario::PtSqmEvolveSqm: return "pt_sqm_evolve_sqm";
    case Scenario::BrokenDemo: return "broken_demo";
  }
  return "?";
}

SweepAxis axis_from_name(const std::string& name) {
  if (name == "gamma1") return SweepAxis::Gamma1;
  if (name == "zeta1") return SweepAxis::Zeta1;
  if (name == "gamma2") return SweepAxis::Gamma2;
  if (name == "zeta2") return SweepAxis::Zeta2;
  throw ContractError("unknown sweep axis: " + name);
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Gamma1: return "gamma1";
    case SweepAxis::Zeta1: return "zeta1";
    case SweepAxis::Gamma2: return "gamma2";
    case SweepAxis::Zeta2: return "zeta2";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (!(t_end > t_start)) throw ContractError("t_end must exceed t_start");
  if (steps < 2) throw ContractError("steps must be >= 2");
  if (!(tolerance > 0.0)) throw ContractError("tolerance must be positive");
  if (!coeffs && !seed) throw ContractError("either coeffs or seed is required");
}

BipartiteState::Coeffs random_coeffs(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Box-Muller on explicitly constructed uniforms, so the draw is
  // identical across standard-library implementations.
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  auto gaussian_pair = [&](double& a, double& b) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = 2.0 * M_PI * uniform();
    a = r * std::cos(th);
    b = r * std::sin(th);
  };
  double g[8];
  for (int i = 0; i < 8; i += 2) gaussian_pair(g[i], g[i + 1]);
  BipartiteState::Coeffs c;
  double n2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    c[i / 2][i % 2] = cplx(g[2 * i], g[2 * i + 1]);
    n2 += std::norm(c[i / 2][i % 2]);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& row : c)
    for (cplx& z : row) z *= inv;
  return c;
}

RunReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  const BipartiteState::Coeffs coeffs =
      config.coeffs ? *config.coeffs : random_coeffs(*config.seed);
  return config.scenario == Scenario::BrokenDemo ? run_broken_demo(config, coeffs)
                                                 : run_unbroken(config, coeffs);
}

std::vector<RunReport> sweep(const ScenarioConfig& base, SweepAxis axis,
                             const std::vector<double>& values) {
  std::vector<RunReport> reports;
  reports.reserve(values.size());
  std::optional<Spectrum2> reference;
  for (double v : values) {
    ScenarioConfig config = base;
    switch (axis) {
      case SweepAxis::Gamma1: config.params1.gamma = v; break;
      case SweepAxis::Zeta1: config.params1.zeta = v; break;
      case SweepAxis::Gamma2: config.params2.gamma = v; break;
      case SweepAxis::Zeta2: config.params2.zeta = v; break;
    }
    config.validate();
    const SubsystemKind lk = left_kind(config);
    const SubsystemKind rk = right_kind(config);
    if (config.scenario != Scenario::BrokenDemo &&
        (lk.phase() != PhaseClass::Unbroken || rk.phase() != PhaseClass::Unbroken)) {
      RunReport skippedReport;
      skippedReport.config = config;
      skippedReport.phase_left = lk.phase();
      skippedReport.phase_right = rk.phase();
      skippedReport.skipped = true;
      skippedReport.skip_reason =
          std::string("phase-skipped: left ") + to_string(lk.phase()) + ", right " +
          to_string(rk.phase());
      reports.push_back(std::move(skippedReport));
      continue;
    }
    RunReport report = run_scenario(config);
    // Eq.-43-style parameter independence: the reduced spectrum may not
    // move across the sweep when the coefficients are fixed.
    if (!report.samples.empty()) {
      const Spectrum2 w{report.samples.front().omega_plus,
                        report.samples.front().omega_minus};
      if (!reference) {
        reference = w;
      } else if (std::abs(w.omega_plus - reference->omega_plus) > 1e-11) {
        throw ConsistencyError("reduced spectrum varied across sweep by " +
                               std::to_string(w.omega_plus - reference->omega_plus));
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::string emit_csv(const RunReport& report) {
  std::string out = "t,omega_plus,omega_minus,entropy_bits\n";
  for (const EntropySample& s : report.samples) {
    out += fmt17(s.t) + "," + fmt17(s.omega_plus) + "," + fmt17(s.omega_minus) + "," +
           fmt17(s.entropy_bits) + "\n";
  }
  out += "# e_initial=" + fmt17(report.e_initial) +
         " max_deviation=" + fmt17(report.max_deviation) +
         " pass=" + (report.pass ? "true" : "false") + "\n";
  return out;
}

namespace {

ordered_json coeffs_to_json(const BipartiteState::Coeffs& c) {
  ordered_json a = ordered_json::array();
  for (const auto& row : c)
    for (const cplx& z : row) {
      a.push_back(z.real());
      a.push_back(z.imag());
    }
  return a;
}

BipartiteState::Coeffs coeffs_from_json(const ordered_json& a) {
  if (!a.is_array() || a.size() != 8) {
    throw ContractError("coeffs must be an array of 8 reals");
  }
  BipartiteState::Coeffs c;
  for (int i = 0; i < 4; ++i) {
    c[i / 2][i % 2] = cplx(a[static_cast<std::size_t>(2 * i)].get<double>(),
                           a[static_cast<std::size_t>(2 * i + 1)].get<double>());
  }
  return c;
}

ordered_json config_to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["scenario"] = to_string(c.scenario);
  j["gamma1"] = c.params1.gamma;
  j["zeta1"] = c.params1.zeta;
  j["gamma2"] = c.params2.gamma;
  j["zeta2"] = c.params2.zeta;
  if (c.coeffs) j["coeffs"] = coeffs_to_json(*c.coeffs);
  if (c.seed) j["seed"] = *c.seed;
  j["t_start"] = c.t_start;
  j["t_end"] = c.t_end;
  j["steps"] = c.steps;
  j["tolerance"] = c.tolerance;
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

ScenarioConfig config_from_json_obj(const ordered_json& j) {
  ScenarioConfig c;
  if (j.contains("scenario")) c.scenario = scenario_from_name(j["scenario"]);
  if (j.contains("gamma1")) c.params1.gamma = j["gamma1"];
  if (j.contains("zeta1")) c.params1.zeta = j["zeta1"];
  if (j.contains("gamma2")) c.params2.gamma = j["gamma2"];
  if (j.contains("zeta2")) c.params2.zeta = j["zeta2"];
  if (j.contains("coeffs")) c.coeffs = coeffs_from_json(j["coeffs"]);
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("t_start")) c.t_start = j["t_start"];
  if (j.contains("t_end")) c.t_end = j["t_end"];
  if (j.contains("steps")) c.steps = j["steps"];
  if (j.contains("tolerance")) c.tolerance = j["tolerance"];
  if (j.contains("format")) {
    const std::string f = j["format"];
    if (f == "csv") c.format = OutputFormat::Csv;
    else if (f == "json") c.format = OutputFormat::Json;
    else throw ContractError("unknown format: " + f);
  }
  return c;
}

}  // namespace

std::string emit_json(const RunReport& report) {
  ordered_json j;
  j["config"] = config_to_json(report.config);
  j["coeffs_used"] = coeffs_to_json(report.coeffs_used);
  j["samples"] = ordered_json::array();
  for (const EntropySample& s : report.samples) {
    j["samples"].push_back({{"t", s.t},
                            {"omega_plus", s.omega_plus},
                            {"omega_minus", s.omega_minus},
                            {"entropy_bits", s.entropy_bits}});
  }
  j["e_initial"] = report.e_initial;
  j["max_deviation"] = report.max_deviation;
  j["pass"] = report.pass;
  j["phase_info"] = {{"left", to_string(report.phase_left)},
                     {"right", to_string(report.phase_right)}};
  j["non_unitary"] = report.non_unitary;
  j["norm_drift"] = report.norm_drift;
  j["skipped"] = report.skipped;
  j["skip_reason"] = report.skip_reason;
  return j.dump(2) + "\n";
}

namespace {

PhaseClass phase_from_name(const std::string& s) {
  if (s == "unbroken") return PhaseClass::Unbroken;
  if (s == "exceptional_point") return PhaseClass::ExceptionalPoint;
  if (s == "broken") return PhaseClass::Broken;
  throw ContractError("unknown phase: " + s);
}

}  // namespace

RunReport parse_json_report(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  RunReport r;
  r.config = config_from_json_obj(j.at("config"));
  r.coeffs_used = coeffs_from_json(j.at("coeffs_used"));
  for (const auto& s : j.at("samples")) {
    r.samples.push_back({s.at("t"), s.at("omega_plus"), s.at("omega_minus"),
                         s.at("entropy_bits")});
  }
  r.e_initial = j.at("e_initial");
  r.max_deviation = j.at("max_deviation");
  r.pass = j.at("pass");
  r.phase_left = phase_from_name(j.at("phase_info").at("left"));
  r.phase_right = phase_from_name(j.at("phase_info").at("right"));
  r.non_unitary = j.at("non_unitary");
  r.norm_drift = j.at("norm_drift");
  r.skipped = j.at("skipped");
  r.skip_reason = j.at("skip_reason");
  return r;
}

std::string emit_report(const RunReport& report) {
  return report.config.format == OutputFormat::Csv ? emit_csv(report)
                                                   : emit_json(report);
}

ScenarioConfig config_from_json(const std::string& text) {
  return config_from_json_obj(ordered_json::parse(text));
}

}  // namespace ptq
