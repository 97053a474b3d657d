// Python bindings for the main operations: bound curves, protocol
// construction, strategy simulation, and the Monte Carlo verifier.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entgen/strategies.hpp"
#include "entgen/verifier.hpp"

namespace py = pybind11;
using namespace entgen;

namespace {

fock::TruncationPolicy policy_for(const protocol::ProtocolParams& params, int cutoff,
                                  double tail_tol) {
  if (cutoff > 0) return {cutoff, tail_tol};
  std::vector<fock::Complex> amps;
  for (int j = 0; j < 2; ++j) {
    amps.push_back(params.transmitted_amplitude(j));
    amps.push_back(params.environment_amplitude(j));
  }
  return fock::TruncationPolicy::for_amplitudes(
      std::span<const fock::Complex>(amps.data(), amps.size()), tail_tol);
}

strategies::MeasurementStrategy make_strategy(const protocol::ProtocolParams& params,
                                              const std::string& name,
                                              std::uint64_t seed, int n_outcomes) {
  if (name == "usd") return strategies::usd_strategy(params);
  if (name == "trivial") return strategies::trivial_strategy();
  if (name == "random") {
    RandomStream rng(seed);
    return strategies::sample_compliant_strategy(
        rng, n_outcomes,
        fock::coherent_overlap(params.transmitted_amplitude(0),
                               params.transmitted_amplitude(1)));
  }
  throw std::domain_error("unknown strategy '" + name +
                          "' (expected usd | trivial | random)");
}

py::dict evaluation_to_dict(const strategies::StrategyEvaluation& eval) {
  py::list outcomes;
  for (const auto& rec : eval.outcomes) {
    py::dict d;
    d["k"] = rec.k;
    d["p"] = rec.probability;
    d["F"] = rec.fidelity;
    d["a"] = rec.bell_a;
    d["b"] = rec.bell_b;
    d["z"] = rec.alice_z;
    outcomes.append(d);
  }
  py::dict result;
  result["outcomes"] = outcomes;
  result["Ps"] = eval.point.ps;
  result["PsF"] = eval.point.ps_f;
  if (!eval.point.vacuous()) result["F"] = eval.point.fidelity();
  result["u"] = eval.pulse_overlap;
  result["f"] = eval.phase_flip;
  py::dict marginals;
  marginals["x0"] = eval.marginals.x0;
  marginals["y0"] = eval.marginals.y0;
  marginals["z0"] = eval.marginals.z0;
  marginals["zs"] = eval.marginals.success_z;
  marginals["xf"] = eval.marginals.failure_x;
  marginals["yf"] = eval.marginals.failure_y;
  marginals["zf"] = eval.marginals.failure_z;
  result["marginals"] = marginals;
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent-state entanglement generation over lossy channels: exact "
            "protocol states, measurement strategies, performance bounds, and "
            "Monte Carlo verification.";

  py::class_<protocol::ProtocolParams>(m, "ProtocolParams")
      .def(py::init([](double q0, std::complex<double> alpha0,
                       std::complex<double> alpha1, double transmittance,
                       double theta0, double theta1) {
             protocol::ProtocolParams p;
             p.q0 = q0;
             p.alpha0 = alpha0;
             p.alpha1 = alpha1;
             p.transmittance = transmittance;
             p.theta0 = theta0;
             p.theta1 = theta1;
             p.validate();
             return p;
           }),
           py::arg("q0"), py::arg("alpha0"), py::arg("alpha1"), py::arg("T"),
           py::arg("theta0") = 0.0, py::arg("theta1") = 0.0)
      .def_static(
          "phase_rotation",
          [](double q0, double alpha, double theta, double transmittance) {
            auto p = protocol::ProtocolParams::phase_rotation(q0, alpha, theta,
                                                              transmittance);
            p.validate();
            return p;
          },
          py::arg("q0"), py::arg("alpha"), py::arg("theta"), py::arg("T"))
      .def_readwrite("q0", &protocol::ProtocolParams::q0)
      .def_readwrite("theta0", &protocol::ProtocolParams::theta0)
      .def_readwrite("theta1", &protocol::ProtocolParams::theta1)
      .def_readwrite("alpha0", &protocol::ProtocolParams::alpha0)
      .def_readwrite("alpha1", &protocol::ProtocolParams::alpha1)
      .def_readwrite("T", &protocol::ProtocolParams::transmittance)
      .def("pulse_overlap", &protocol::ProtocolParams::pulse_overlap)
      .def("env_overlap", &protocol::ProtocolParams::env_overlap);

  m.def("coherent_overlap", &fock::coherent_overlap, py::arg("alpha"), py::arg("beta"),
        "Exact overlap <alpha|beta> of two coherent states.");
  m.def(
      "coherent_amplitudes",
      [](std::complex<double> alpha, int cutoff, double tail_tol) {
        fock::TruncationPolicy policy{cutoff, tail_tol};
        if (cutoff <= 0) {
          policy = fock::TruncationPolicy::for_amplitudes({alpha}, tail_tol);
        }
        const auto state = fock::coherent_vector(alpha, policy);
        return std::vector<std::complex<double>>(
            state.amplitudes.data(), state.amplitudes.data() + state.dim());
      },
      py::arg("alpha"), py::arg("cutoff") = 0, py::arg("tail_tol") = 1e-12,
      "Photon-number amplitudes of |alpha>; cutoff <= 0 picks one automatically.");

  m.def("f_sym", &bounds::f_sym, py::arg("ps"), py::arg("T"),
        "Fidelity of the symmetric protocol family at success probability ps.");
  m.def("f_opt", &bounds::f_opt, py::arg("ps"), py::arg("T"),
        "Tight upper envelope of achievable fidelity at success probability ps.");
  m.def("ps_star", &bounds::ps_star, py::arg("T"),
        "Kink position T/(1-T) of the optimal curve (reached only for T < 1/2).");
  m.def("fidelity_cap", &bounds::fidelity_cap, py::arg("u"), py::arg("T"));
  m.def("tradeoff_max_psf", &bounds::tradeoff_max_psf, py::arg("ps"), py::arg("u"),
        py::arg("T"));
  m.def("g_polynomial", &bounds::g_polynomial, py::arg("ps"), py::arg("z0"),
        py::arg("zs"), py::arg("u"));
  m.def(
      "fsym_derivatives",
      [](double ps, double transmittance) {
        const auto d = bounds::fsym_curve_derivatives(ps, transmittance);
        return py::make_tuple(d.first, d.second);
      },
      py::arg("ps"), py::arg("T"),
      "First and second derivative of ps * f_sym(ps) in ps.");
  m.def(
      "triangle",
      [](double u, double transmittance) {
        const auto t = bounds::triangle(u, transmittance);
        py::dict d;
        d["X0"] = t.x0;
        d["X1"] = t.x1;
        d["X2"] = t.x2;
        d["X3"] = t.x3;
        return d;
      },
      py::arg("u"), py::arg("T"),
      "Apexes of the bounding triangle in the (Ps, Ps*F) plane.");
  m.def("upper_convex_hull", &bounds::upper_convex_hull, py::arg("points"),
        "Upper boundary of the convex hull of plane points, sorted by abscissa.");

  m.def("phase_flip_f", &protocol::phase_flip_f, py::arg("params"),
        "Weight of the identity branch of the equivalent dephasing channel.");
  m.def(
      "equivalence_check",
      [](const protocol::ProtocolParams& params, int cutoff, double tail_tol) {
        return protocol::equivalence_check(params, policy_for(params, cutoff, tail_tol));
      },
      py::arg("params"), py::arg("cutoff") = 0, py::arg("tail_tol") = 1e-12,
      "Trace distance between the lossy-channel output and the dephased "
      "equivalent picture.");

  m.def(
      "simulate",
      [](const protocol::ProtocolParams& params, const std::string& strategy,
         std::uint64_t seed, int n_outcomes) {
        return evaluation_to_dict(strategies::evaluate_strategy(
            params, make_strategy(params, strategy, seed, n_outcomes)));
      },
      py::arg("params"), py::arg("strategy") = "usd", py::arg("seed") = 0,
      py::arg("n_outcomes") = 2,
      "Evaluate a measurement strategy: outcome records, performance point, "
      "and marginal decomposition.");

  m.def(
      "cross_validate",
      [](const protocol::ProtocolParams& params, const std::string& strategy,
         std::uint64_t seed, int n_outcomes, int cutoff) {
        return verify::cross_validate_representations(
            params, make_strategy(params, strategy, seed, n_outcomes),
            policy_for(params, cutoff, 1e-12));
      },
      py::arg("params"), py::arg("strategy") = "usd", py::arg("seed") = 0,
      py::arg("n_outcomes") = 2, py::arg("cutoff") = 0,
      "Max deviation between the component representation and the Fock oracle.");

  m.def(
      "run_monte_carlo",
      [](std::int64_t trials, std::uint64_t seed, int max_outcomes, int cross_checks,
         const std::string& strategy) {
        verify::TrialConfig config;
        config.n_trials = trials;
        config.seed = seed;
        config.max_outcomes = max_outcomes;
        config.n_cross_checks = cross_checks;
        if (strategy == "usd") {
          config.strategy = verify::StrategyKind::usd;
        } else if (strategy == "trivial") {
          config.strategy = verify::StrategyKind::trivial;
        } else if (strategy != "random") {
          throw std::domain_error("unknown strategy '" + strategy + "'");
        }
        const auto report = verify::run_monte_carlo(config);
        return py::module_::import("json").attr("loads")(report.to_json().dump());
      },
      py::arg("trials") = 10000, py::arg("seed") = 42, py::arg("max_outcomes") = 3,
      py::arg("cross_checks") = 8, py::arg("strategy") = "random",
      "Sample protocols and strategies and assert every bound inequality; "
      "returns the verification report.");

  m.def("hull_check", &verify::hull_check, py::arg("T"), py::arg("grid") = 10000,
        "Max deviation between the hull of the symmetric family and the "
        "optimal curve.");

#ifdef ENTGEN_VERSION
  m.attr("__version__") = ENTGEN_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
