#include "ivgreen/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ivgreen/chebyshev.hpp"
#include "ivgreen/errors.hpp"
#include "ivgreen/green.hpp"
#include "ivgreen/oracles.hpp"
#include "ivgreen/quadrature.hpp"
#include "ivgreen/report.hpp"

namespace ivgreen::cli {

namespace {

const std::vector<cplx> kDefaultSweepProbes = {{0.0, 2.0}, {-3.0, 1.0}, {0.5, 0.5}};
constexpr int kDefaultRefinements = 7;
constexpr int kDefaultDegree = 8;
constexpr int kInverseImageSamples = 10000;
constexpr double kCapacityOracleTol = 1e-3;
constexpr double kWalkSigmas = 3.0;
constexpr double kPvTol = 1e-6;

IntervalSystem load_system(const std::string& path) {
  if (path.empty()) throw ValidationError("--system is required");
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read system file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return IntervalSystem::from_json(ss.str());
}

Json cplx_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json probes_json(const std::vector<cplx>& probes) {
  Json a = Json::array();
  for (cplx p : probes) a.push_back(cplx_json(p));
  return a;
}

std::string cell(double d) { return format_double(d); }

Placement parse_placement(const std::string& s) {
  if (s == "centered") return Placement::Centered;
  if (s == "left") return Placement::AtLeft;
  if (s == "right") return Placement::AtRight;
  throw ValidationError("unknown placement '" + s + "' (expected centered, left or right)");
}

// Common config echo; commands add their resolved parameters.
Json base_config(const RunConfig& cfg, const IntervalSystem& sys) {
  Json c;
  c["command"] = cfg.command;
  c["format"] = cfg.format;
  c["seed"] = cfg.seed;
  c["system"] = Json::parse(sys.to_json());
  return c;
}

struct Outcome {
  Json report;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::string csv_text;  // overrides header/rows when set
  bool pass = true;
  std::string fail_message;
};

Outcome cmd_cap(const RunConfig& cfg, const IntervalSystem& sys) {
  InfinityGreen g(sys);
  Outcome o;
  o.report["config"] = base_config(cfg, sys);
  o.report["capacity"] = g.capacity();
  o.report["robin_constant"] = g.robin_constant();
  o.report["gap_residuals"] = g.gap_residuals();
  const auto mono = g.r().monomial();
  o.report["r_infinity_coefficients"] = std::vector<double>(mono.coefficients().begin(), mono.coefficients().end());
  o.csv_header = {"quantity", "value"};
  o.csv_rows = {{"capacity", cell(g.capacity())}, {"robin_constant", cell(g.robin_constant())}};
  return o;
}

std::unique_ptr<AbelianGreen> make_green(const IntervalSystem& sys, const std::optional<double>& x0) {
  if (x0) return std::make_unique<PoleGreen>(sys, *x0);
  return std::make_unique<InfinityGreen>(sys);
}

Outcome cmd_green(const RunConfig& cfg, const IntervalSystem& sys) {
  if (cfg.probes.empty()) throw ValidationError("green: at least one --probe is required");
  auto g = make_green(sys, cfg.x0);
  Outcome o;
  Json c = base_config(cfg, sys);
  c["probes"] = probes_json(cfg.probes);
  c["pole"] = cfg.x0 ? Json(*cfg.x0) : Json("infinity");
  o.report["config"] = c;
  Json rows = Json::array();
  o.csv_header = {"probe_id", "re", "im", "g", "phi_re", "phi_im"};
  for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
    auto ev = (*g)(cfg.probes[i]);
    Json r;
    r["probe_id"] = i;
    r["probe"] = cplx_json(cfg.probes[i]);
    r["g"] = ev.g;
    r["phi"] = cplx_json(ev.phi);
    r["exponent"] = cplx_json(ev.exponent);
    r["branch_note"] = ev.branch_note;
    rows.push_back(r);
    o.csv_rows.push_back({std::to_string(i), cell(cfg.probes[i].real()), cell(cfg.probes[i].imag()), cell(ev.g),
                          cell(ev.phi.real()), cell(ev.phi.imag())});
  }
  o.report["values"] = rows;
  return o;
}

Outcome cmd_hm(const RunConfig& cfg, const IntervalSystem& sys) {
  auto g = make_green(sys, cfg.x0);
  Outcome o;
  Json c = base_config(cfg, sys);
  c["pole"] = cfg.x0 ? Json(*cfg.x0) : Json("infinity");
  if (cfg.band) c["band"] = *cfg.band;
  o.report["config"] = c;
  auto m = g->harmonic_measures();
  double sum = 0.0;
  for (double w : m) sum += w;
  o.report["harmonic_measures"] = m;
  o.report["sum"] = sum;
  o.report["gap_residuals"] = g->gap_residuals();
  if (cfg.band) o.report["value"] = g->harmonic_measure(*cfg.band);
  o.csv_header = {"band", "omega"};
  for (std::size_t j = 0; j < m.size(); ++j)
    if (!cfg.band || *cfg.band == static_cast<int>(j)) o.csv_rows.push_back({std::to_string(j), cell(m[j])});
  return o;
}

Outcome cmd_sweep(const RunConfig& cfg, const IntervalSystem& sys) {
  const int k = cfg.refinements.value_or(kDefaultRefinements);
  if (k < 4) throw ValidationError("asym-sweep: --refinements must be >= 4");
  std::vector<double> widths;
  if (cfg.eps0) {
    for (int n = 0; n < k; ++n) widths.push_back(std::ldexp(*cfg.eps0, -n));
  } else {
    widths = ShrinkFamily::default_schedule(sys, cfg.centers, k);
  }
  const auto probes = cfg.probes.empty() ? kDefaultSweepProbes : cfg.probes;
  DegenerateAsymptotics da(ShrinkFamily::make(sys, cfg.centers, widths, parse_placement(cfg.placement)));
  auto sweep = da.convergence_sweep(probes);

  Outcome o;
  Json c = base_config(cfg, sys);
  c["centers"] = cfg.centers;
  c["refinements"] = k;
  c["schedule"] = widths;
  c["placement"] = cfg.placement;
  c["probes"] = probes_json(probes);
  c["probe_margin_factor"] = 0.5;
  c["noise_floor"] = kSweepNoiseFloor;
  o.report["config"] = c;
  o.report["sweep"] = sweep_json(sweep);
  o.csv_text = sweep_csv(sweep, static_cast<int>(cfg.centers.size()));
  o.pass = sweep.verdict.bounded;
  if (!o.pass) {
    o.fail_message = "asym-sweep: error/omega^2 ratio grows:";
    for (const auto& f : sweep.verdict.failures) o.fail_message += " " + f + ";";
  }
  return o;
}

Outcome cmd_cheb(const RunConfig& cfg, const IntervalSystem& sys) {
  ChebAsymSpec spec{sys, cfg.centers, cfg.nus.empty() ? std::vector<int>(cfg.centers.size(), 1) : cfg.nus,
                    cfg.degree.value_or(kDefaultDegree)};
  ChebyshevAsymptotics ca(spec);

  Outcome o;
  Json c = base_config(cfg, sys);
  c["centers"] = spec.centers;
  c["nus"] = spec.nus;
  c["degree"] = spec.n;
  c["probes"] = probes_json(cfg.probes);
  o.report["config"] = c;
  o.report["norm_asym"] = ca.norm_asym();
  o.report["norm_asym_dual_reading"] = ca.norm_asym_dual();
  std::vector<double> est;
  for (int j = 0; j < sys.band_count(); ++j) est.push_back(ca.alternation_estimate(j));
  o.report["alternation_estimates"] = est;

  Json vals = Json::array();
  for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
    Json r;
    r["probe_id"] = i;
    r["probe"] = cplx_json(cfg.probes[i]);
    const cplx psi = ca.psi(cfg.probes[i]);
    r["psi"] = cplx_json(psi);
    r["psi_modulus"] = std::abs(psi);
    r["pn_asym"] = cplx_json(ca.pn_asym(cfg.probes[i]));
    vals.push_back(r);
  }
  o.report["values"] = vals;

  o.csv_header = {"band", "alternation_estimate", "exact_count"};
  // Exact comparison for symmetric two-band sets with m = 0 and even n.
  bool composed = sys.band_count() == 2 && spec.centers.empty() && spec.n % 2 == 0 &&
                  sys.band(0).lo == -sys.band(1).hi && sys.band(0).hi == -sys.band(1).lo && sys.band(1).lo > 0.0;
  std::vector<int> counts;
  if (composed) {
    ComposedChebyshev cc(sys.band(1).lo, sys.band(1).hi, spec.n / 2);
    counts = cc.alternation_counts();
    const double rel = std::abs(cc.monic_norm() - ca.norm_asym()) / cc.monic_norm();
    const int total = counts[0] + counts[1];
    const int bad = cc.inverse_image_violations(kInverseImageSamples);
    Json x;
    x["a"] = cc.a();
    x["b"] = cc.b();
    x["s"] = cc.s();
    x["leading_coefficient"] = cc.leading_coefficient();
    x["sup_norm"] = cc.sup_norm();
    x["monic_norm"] = cc.monic_norm();
    x["norm_relative_error"] = rel;
    x["alternation_counts"] = counts;
    x["alternation_total"] = total;
    x["inverse_image_samples"] = kInverseImageSamples;
    x["inverse_image_violations"] = bad;
    o.report["composed"] = x;
    bool ok = total == spec.n + 1 && bad == 0;
    for (int j = 0; j < 2; ++j) ok = ok && std::abs(est[static_cast<std::size_t>(j)] - counts[static_cast<std::size_t>(j)]) <= 2.0;
    o.pass = ok;
    if (!ok) o.fail_message = "cheb-check: composed-family alternation or inverse-image check failed";
    o.report["verdict"] = ok ? "PASS" : "FAIL";
  } else {
    o.report["verdict"] = "NOT_APPLICABLE";
  }
  for (int j = 0; j < sys.band_count(); ++j)
    o.csv_rows.push_back({std::to_string(j), cell(est[static_cast<std::size_t>(j)]),
                          counts.empty() ? "" : std::to_string(counts[static_cast<std::size_t>(j)])});
  return o;
}

Outcome cmd_verify(const RunConfig& cfg, const IntervalSystem& sys) {
  Outcome o;
  Json c = base_config(cfg, sys);
  c["nodes_per_band"] = cfg.nodes;
  c["paths"] = cfg.paths;
  c["walk_sigmas"] = kWalkSigmas;
  c["capacity_tolerance"] = kCapacityOracleTol;
  c["pv_tolerance"] = kPvTol;
  WalkConfig walk;
  walk.paths = cfg.paths;
  walk.seed = cfg.seed;
  c["h_factor"] = walk.h_factor;
  c["far_factor"] = walk.far_factor;
  if (cfg.x0) c["x0"] = *cfg.x0;
  o.report["config"] = c;
  o.csv_header = {"check", "core", "oracle", "tolerance", "pass"};

  Json checks = Json::array();
  auto add = [&](const std::string& name, double core, double oracle, double tol, double diff) {
    const bool ok = diff <= tol;
    Json j;
    j["check"] = name;
    j["core"] = core;
    j["oracle"] = oracle;
    j["tolerance"] = tol;
    j["difference"] = diff;
    j["pass"] = ok;
    checks.push_back(j);
    o.csv_rows.push_back({name, cell(core), cell(oracle), cell(tol), ok ? "true" : "false"});
    if (!ok) {
      o.pass = false;
      o.fail_message += "verify: " + name + " differs by " + format_double(diff) + " (tolerance " + format_double(tol) + "); ";
    }
  };

  InfinityGreen g(sys);
  auto eq = equilibrium_capacity(sys, cfg.nodes);
  add("capacity", g.capacity(), eq.capacity, kCapacityOracleTol, std::abs(eq.capacity - g.capacity()) / g.capacity());

  auto walk_checks = [&](const std::string& label, const AbelianGreen& core, std::optional<cplx> start) {
    walk.start = start;
    auto est = brownian_hm_all(sys, walk);
    for (int j = 0; j < sys.band_count(); ++j) {
      const double se = est.stderrs[static_cast<std::size_t>(j)];
      const double diff = std::abs(est.fractions[static_cast<std::size_t>(j)] - core.harmonic_measure(j));
      add(label + "[" + std::to_string(j) + "]", core.harmonic_measure(j), est.fractions[static_cast<std::size_t>(j)],
          kWalkSigmas * se + 1e-12, diff);
    }
  };
  walk_checks("hm_inf", g, std::nullopt);
  if (cfg.x0) {
    PoleGreen pg(sys, *cfg.x0);
    walk_checks("hm_x0", pg, cplx(*cfg.x0, 0.0));
  }

  for (int j = 0; j < sys.band_count(); ++j) {
    const auto b = sys.band(j);
    const double x0 = b.lo + 0.37 * b.length();
    auto f = [](double t) { return std::cos(t) + t * t; };
    const double core = pv_singular_integral(f, b.lo, b.hi, x0);
    const double oracle = pv_excision(f, b.lo, b.hi, x0, default_excision_sequence(b.lo, b.hi, x0));
    add("pv[" + std::to_string(j) + "]", core, oracle, kPvTol, std::abs(core - oracle));
  }
  o.report["checks"] = checks;
  o.report["verdict"] = o.pass ? "PASS" : "FAIL";
  return o;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult res;
  try {
    if (cfg.format != "json" && cfg.format != "csv")
      throw ValidationError("unknown format '" + cfg.format + "' (expected json or csv)");
    const auto sys = load_system(cfg.system_file);
    Outcome o;
    if (cfg.command == "cap") {
      o = cmd_cap(cfg, sys);
    } else if (cfg.command == "green") {
      o = cmd_green(cfg, sys);
    } else if (cfg.command == "hm") {
      o = cmd_hm(cfg, sys);
    } else if (cfg.command == "asym-sweep") {
      o = cmd_sweep(cfg, sys);
    } else if (cfg.command == "cheb-check") {
      o = cmd_cheb(cfg, sys);
    } else if (cfg.command == "verify") {
      o = cmd_verify(cfg, sys);
    } else {
      throw ValidationError("unknown command '" + cfg.command + "'");
    }
    if (cfg.format == "json") {
      res.report = render_json(o.report);
    } else {
      res.report = o.csv_text.empty() ? render_csv(o.csv_header, o.csv_rows) : o.csv_text;
    }
    if (!o.pass) {
      res.exit_code = kVerificationFail;
      res.message = o.fail_message;
    }
  } catch (const ValidationError& e) {
    res.exit_code = kValidation;
    res.message = e.what();
  } catch (const NumericalError& e) {
    res.exit_code = kNumerical;
    res.message = e.what();
  } catch (const std::exception& e) {
    res.exit_code = kNumerical;
    res.message = e.what();
  }
  return res;
}

namespace {

cplx parse_probe(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("probe '" + s + "' is not of the form RE,IM");
  try {
    std::size_t used_re = 0, used_im = 0;
    const std::string re = s.substr(0, comma), im = s.substr(comma + 1);
    double x = std::stod(re, &used_re), y = std::stod(im, &used_im);
    if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument("trailing characters");
    return {x, y};
  } catch (const std::logic_error&) {
    throw ValidationError("probe '" + s + "' is not of the form RE,IM");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green's functions, capacities and harmonic measures of finite unions of real intervals"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> probe_text;
  std::optional<int> refinements, degree, band;
  std::optional<double> eps0, x0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--system", cfg.system_file, "interval system JSON file")->required();
    sub->add_option("--out", cfg.out, "report path (default: stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "random seed");
  };
  auto* cap = app.add_subcommand("cap", "logarithmic capacity");
  common(cap);
  auto* green = app.add_subcommand("green", "Green's function and complex Green's map at probe points");
  common(green);
  green->add_option("--probe", probe_text, "probe point RE,IM (repeatable)");
  green->add_option("--x0", x0, "finite real pole (default: infinity)");
  auto* hm = app.add_subcommand("hm", "harmonic measures of the bands");
  common(hm);
  hm->add_option("--x0", x0, "finite real pole (default: infinity)");
  hm->add_option("--band", band, "report a single band");
  auto* sweep = app.add_subcommand("asym-sweep", "exact versus asymptotic quantities along a shrinking schedule");
  common(sweep);
  sweep->add_option("--center", cfg.centers, "limit point c_k (repeatable)");
  sweep->add_option("--probe", probe_text, "probe point RE,IM (repeatable)");
  sweep->add_option("--refinements", refinements, "schedule length");
  sweep->add_option("--eps0", eps0, "first width; widths halve");
  sweep->add_option("--placement", cfg.placement, "centered, left or right");
  auto* cheb = app.add_subcommand("cheb-check", "asymptotics of extremal polynomials");
  common(cheb);
  cheb->add_option("--degree", degree, "polynomial degree n");
  cheb->add_option("--center", cfg.centers, "limit point c_k (repeatable)");
  cheb->add_option("--nu", cfg.nus, "alternation multiplicity nu_k (repeatable)");
  cheb->add_option("--probe", probe_text, "probe point RE,IM (repeatable)");
  auto* verify = app.add_subcommand("verify", "cross-check core results against brute-force oracles");
  common(verify);
  verify->add_option("--x0", x0, "also check harmonic measures from this pole");
  verify->add_option("--nodes", cfg.nodes, "equilibrium panels per band");
  verify->add_option("--paths", cfg.paths, "random walks per start point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.refinements = refinements;
  cfg.degree = degree;
  cfg.band = band;
  cfg.eps0 = eps0;
  cfg.x0 = x0;
  try {
    for (const auto& p : probe_text) cfg.probes.push_back(parse_probe(p));
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }

  auto res = run(cfg);
  if (!res.report.empty()) {
    if (cfg.out.empty()) {
      std::cout << res.report;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << cfg.out << "'\n";
        return kValidation;
      }
      out << res.report;
    }
  }
  if (!res.message.empty()) std::cerr << (res.exit_code == kVerificationFail ? "FAIL: " : "error: ") << res.message << "\n";
  return res.exit_code;
}

}  // namespace ivgreen::cli
