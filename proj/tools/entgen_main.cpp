// Command-line front end: bound curves, channel-length sweeps, protocol
// simulation, Monte Carlo verification, and hull reconstruction.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli_commands.hpp"
#include "entgen/strategies.hpp"
#include "entgen/verifier.hpp"

namespace {

using namespace entgen;
using nlohmann::json;

double resolve_transmittance(const std::optional<double>& transmittance,
                             const std::optional<double>& length_km, double l0_km) {
  if (transmittance.has_value() == length_km.has_value()) {
    throw std::domain_error("specify exactly one of --T and --length-km");
  }
  const double value = transmittance ? *transmittance
                                     : cli::transmittance_from_length(*length_km, l0_km);
  if (!(value > 0.0 && value < 1.0)) {
    throw std::domain_error("transmittance must lie in (0,1)");
  }
  return value;
}

int run_bound(const std::optional<double>& transmittance,
              const std::optional<double>& length_km, double l0_km, int grid,
              const std::string& out, const std::string& format) {
  const double t = resolve_transmittance(transmittance, length_km, l0_km);
  const auto rows = cli::bound_table(t, grid);
  std::ostringstream text;
  if (format == "csv") {
    text << "Ps,F_sym,F_opt,PsF_opt\n";
    for (const auto& r : rows) {
      text << cli::format_double(r.ps) << ',' << cli::format_double(r.f_sym) << ','
           << cli::format_double(r.f_opt) << ',' << cli::format_double(r.psf_opt)
           << '\n';
    }
  } else {
    json doc{{"T", t}, {"grid", grid}, {"rows", json::array()}};
    for (const auto& r : rows) {
      doc["rows"].push_back(
          {{"Ps", r.ps}, {"F_sym", r.f_sym}, {"F_opt", r.f_opt}, {"PsF_opt", r.psf_opt}});
    }
    text << doc.dump(2) << '\n';
  }
  cli::write_output(text.str(), out);
  return 0;
}

int run_fig3(const std::string& lengths_spec, double l0_km, int grid,
             const std::string& out, const std::string& format) {
  const auto lengths = cli::parse_range_spec(lengths_spec);
  const auto curves = cli::attenuation_table(lengths, l0_km, grid);
  std::ostringstream text;
  if (format == "csv") {
    text << "l_km,T,Ps,F_opt\n";
    for (const auto& curve : curves) {
      for (const auto& r : curve.rows) {
        text << cli::format_double(curve.length_km) << ','
             << cli::format_double(curve.transmittance) << ','
             << cli::format_double(r.ps) << ',' << cli::format_double(r.f_opt) << '\n';
      }
    }
  } else {
    json doc{{"l0_km", l0_km}, {"curves", json::array()}};
    for (const auto& curve : curves) {
      json rows = json::array();
      for (const auto& r : curve.rows) rows.push_back({r.ps, r.f_opt});
      doc["curves"].push_back({{"l_km", curve.length_km},
                               {"T", curve.transmittance},
                               {"rows", rows}});
    }
    text << doc.dump(2) << '\n';
  }
  cli::write_output(text.str(), out);
  return 0;
}

json outcome_to_json(const strategies::OutcomeRecord& rec) {
  return {{"k", rec.k},
          {"p", rec.probability},
          {"F", rec.fidelity},
          {"a", rec.bell_a},
          {"b", {rec.bell_b.real(), rec.bell_b.imag()}},
          {"z", rec.alice_z}};
}

int run_simulate(const std::string& strategy_name, double q0, double alpha,
                 double theta, double transmittance, std::uint64_t seed,
                 int n_outcomes, const std::string& out, const std::string& format) {
  auto params = protocol::ProtocolParams::phase_rotation(q0, alpha, theta, transmittance);
  params.validate();

  strategies::MeasurementStrategy strategy;
  if (strategy_name == "usd") {
    strategy = strategies::usd_strategy(params);
  } else if (strategy_name == "trivial") {
    strategy = strategies::trivial_strategy();
  } else if (strategy_name == "random") {
    RandomStream rng(seed);
    strategy = strategies::sample_compliant_strategy(
        rng, n_outcomes,
        fock::coherent_overlap(params.transmitted_amplitude(0),
                               params.transmitted_amplitude(1)));
  } else {
    throw std::domain_error("unknown strategy '" + strategy_name +
                            "' (expected usd | trivial | random)");
  }

  const auto eval = strategies::evaluate_strategy(params, strategy);
  const double u = strategy.trivial ? std::abs(params.pulse_overlap())
                                    : eval.pulse_overlap;
  const auto tri = bounds::triangle(u, transmittance);

  std::ostringstream text;
  if (format == "csv") {
    text << "k,p,F,a,b_re,b_im,z,Ps,F_avg,u,f,F_cap,PsF_cap\n";
    for (const auto& rec : eval.outcomes) {
      text << rec.k << ',' << cli::format_double(rec.probability) << ','
           << cli::format_double(rec.fidelity) << ','
           << cli::format_double(rec.bell_a) << ','
           << cli::format_double(rec.bell_b.real()) << ','
           << cli::format_double(rec.bell_b.imag()) << ','
           << cli::format_double(rec.alice_z) << ','
           << cli::format_double(eval.point.ps) << ','
           << cli::format_double(eval.point.fidelity()) << ','
           << cli::format_double(u) << ',' << cli::format_double(eval.phase_flip)
           << ',' << cli::format_double(bounds::fidelity_cap(u, transmittance)) << ','
           << cli::format_double(
                  bounds::tradeoff_max_psf(eval.point.ps, u, transmittance))
           << '\n';
    }
  } else {
    json doc;
    doc["params"] = {{"q0", q0},
                     {"alpha", alpha},
                     {"theta", theta},
                     {"T", transmittance},
                     {"strategy", strategy_name},
                     {"seed", seed}};
    doc["outcomes"] = json::array();
    for (const auto& rec : eval.outcomes) doc["outcomes"].push_back(outcome_to_json(rec));
    doc["point"] = {{"Ps", eval.point.ps},
                    {"PsF", eval.point.ps_f},
                    {"F", eval.point.vacuous() ? json() : json(eval.point.fidelity())}};
    doc["bound"] = {{"u", u},
                    {"f", eval.phase_flip},
                    {"F_cap", bounds::fidelity_cap(u, transmittance)},
                    {"PsF_cap", bounds::tradeoff_max_psf(eval.point.ps, u, transmittance)},
                    {"triangle",
                     {{"X0", tri.x0}, {"X1", tri.x1}, {"X2", tri.x2}, {"X3", tri.x3}}}};
    text << doc.dump(2) << '\n';
  }
  cli::write_output(text.str(), out);
  return 0;
}

verify::Range parse_lo_hi(const std::string& spec, const char* name) {
  double lo = 0.0, hi = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf", &lo, &hi) != 2) {
    throw std::invalid_argument(std::string("malformed ") + name +
                                " range, expected lo:hi");
  }
  return {lo, hi};
}

int run_verify(std::int64_t trials, std::uint64_t seed, int max_outcomes,
               int cross_checks, const std::string& strategy_name,
               const std::string& q0_spec, const std::string& alpha_spec,
               const std::string& theta_spec, const std::string& t_spec,
               const std::string& out) {
  verify::TrialConfig config;
  config.n_trials = trials;
  config.seed = seed;
  config.max_outcomes = max_outcomes;
  config.n_cross_checks = cross_checks;
  if (!q0_spec.empty()) config.q0 = parse_lo_hi(q0_spec, "q0");
  if (!alpha_spec.empty()) config.alpha = parse_lo_hi(alpha_spec, "alpha");
  if (!theta_spec.empty()) config.theta = parse_lo_hi(theta_spec, "theta");
  if (!t_spec.empty()) config.transmittance = parse_lo_hi(t_spec, "T");
  if (strategy_name == "usd") {
    config.strategy = verify::StrategyKind::usd;
  } else if (strategy_name == "trivial") {
    config.strategy = verify::StrategyKind::trivial;
  } else if (strategy_name != "random") {
    throw std::domain_error("unknown strategy '" + strategy_name + "'");
  }

  const auto report = verify::run_monte_carlo(config);
  cli::write_output(report.to_json().dump(2) + "\n", out);
  std::cerr << "verify: " << report.trials << " trials, "
            << report.failures.size() << " violation(s), cross_check_max="
            << cli::format_double(report.cross_check_max) << '\n';
  return report.all_passed() ? 0 : 1;
}

int run_hull(double transmittance, int grid, double tol, const std::string& out) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw std::domain_error("transmittance must lie in (0,1)");
  }
  const double deviation = verify::hull_check(transmittance, grid);
  json doc{{"T", transmittance}, {"grid", grid}, {"max_deviation", deviation}, {"tol", tol}};
  cli::write_output(doc.dump(2) + "\n", out);
  return deviation <= tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state entanglement generation over lossy channels: "
               "bound curves, protocol simulation, and Monte Carlo verification"};
  app.require_subcommand(1);

  auto* bound = app.add_subcommand("bound", "Tabulate the bound curves at fixed T");
  std::optional<double> bound_t, bound_length;
  double bound_l0 = 25.0;
  int bound_grid = 201;
  std::string bound_out, bound_format = "csv";
  bound->add_option("--T", bound_t, "channel transmittance in (0,1)");
  bound->add_option("--length-km", bound_length, "channel length; T = exp(-l/l0)");
  bound->add_option("--l0-km", bound_l0, "attenuation length (default 25)");
  bound->add_option("--grid", bound_grid, "number of Ps samples");
  bound->add_option("--out", bound_out, "output path ('-' = stdout)");
  bound->add_option("--format", bound_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* fig3 = app.add_subcommand(
      "fig3", "Optimal curves for a sweep of channel lengths");
  std::string fig3_lengths = "10:100:10";
  double fig3_l0 = 25.0;
  int fig3_grid = 201;
  std::string fig3_out, fig3_format = "csv";
  fig3->add_option("--lengths", fig3_lengths, "start:stop:step in km");
  fig3->add_option("--l0-km", fig3_l0, "attenuation length (default 25)");
  fig3->add_option("--grid", fig3_grid, "number of Ps samples per curve");
  fig3->add_option("--out", fig3_out, "output path ('-' = stdout)");
  fig3->add_option("--format", fig3_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Evaluate one measurement strategy");
  std::string sim_strategy = "usd";
  double sim_q0 = 0.5, sim_alpha = 1.0, sim_theta = M_PI / 4.0, sim_t = 0.5;
  std::uint64_t sim_seed = 1;
  int sim_outcomes = 2;
  std::string sim_out, sim_format = "json";
  simulate->add_option("--strategy", sim_strategy, "usd | trivial | random");
  simulate->add_option("--q0", sim_q0, "weight of the |0> memory branch");
  simulate->add_option("--alpha", sim_alpha, "pulse amplitude modulus");
  simulate->add_option("--theta", sim_theta, "phase-rotation half-angle");
  simulate->add_option("--T", sim_t, "channel transmittance");
  simulate->add_option("--seed", sim_seed, "seed for the random strategy");
  simulate->add_option("--n-outcomes", sim_outcomes,
                       "success outcomes of the random strategy");
  simulate->add_option("--out", sim_out, "output path ('-' = stdout)");
  simulate->add_option("--format", sim_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* verify_cmd = app.add_subcommand(
      "verify", "Monte Carlo bound verification; exit 0 iff no violation");
  std::int64_t ver_trials = 10000;
  std::uint64_t ver_seed = 42;
  int ver_outcomes = 3, ver_cross = 8;
  std::string ver_strategy = "random";
  std::string ver_q0, ver_alpha, ver_theta, ver_t, ver_out;
  verify_cmd->add_option("--trials", ver_trials, "number of trials")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", ver_seed, "reproducibility seed");
  verify_cmd->add_option("--max-outcomes", ver_outcomes, "max success outcomes per draw");
  verify_cmd->add_option("--cross-checks", ver_cross, "Fock-oracle cross validations");
  verify_cmd->add_option("--strategy", ver_strategy, "random | usd | trivial");
  verify_cmd->add_option("--q0", ver_q0, "q0 range lo:hi");
  verify_cmd->add_option("--alpha", ver_alpha, "amplitude range lo:hi");
  verify_cmd->add_option("--theta", ver_theta, "half-angle range lo:hi");
  verify_cmd->add_option("--T", ver_t, "transmittance range lo:hi");
  verify_cmd->add_option("--out", ver_out, "report path ('-' = stdout)");

  auto* hull = app.add_subcommand("hull", "Convex-hull reconstruction check");
  double hull_t = 0.25, hull_tol = 5e-4;
  int hull_grid = 10000;
  std::string hull_out;
  hull->add_option("--T", hull_t, "channel transmittance")->required();
  hull->add_option("--grid", hull_grid, "number of curve samples");
  hull->add_option("--tol", hull_tol, "acceptance tolerance on the deviation");
  hull->add_option("--out", hull_out, "output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) {
      return run_bound(bound_t, bound_length, bound_l0, bound_grid, bound_out,
                       bound_format);
    }
    if (fig3->parsed()) {
      return run_fig3(fig3_lengths, fig3_l0, fig3_grid, fig3_out, fig3_format);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_strategy, sim_q0, sim_alpha, sim_theta, sim_t, sim_seed,
                          sim_outcomes, sim_out, sim_format);
    }
    if (verify_cmd->parsed()) {
      return run_verify(ver_trials, ver_seed, ver_outcomes, ver_cross, ver_strategy,
                        ver_q0, ver_alpha, ver_theta, ver_t, ver_out);
    }
    if (hull->parsed()) {
      return run_hull(hull_t, hull_grid, hull_tol, hull_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
