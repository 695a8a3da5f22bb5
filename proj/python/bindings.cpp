#include "harqee/allocator.hpp"
#include "harqee/baselines.hpp"
#include "harqee/channel_sim.hpp"
#include "harqee/corefns.hpp"
#include "harqee/limits.hpp"
#include "harqee/optimizer.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace harqee;

namespace {

ChannelSpec make_channel(int rounds, double rho, py::object sigma2)
{
    ChannelSpec spec;
    spec.rounds = rounds;
    spec.rho = rho;
    if (py::isinstance<py::float_>(sigma2) || py::isinstance<py::int_>(sigma2))
        spec.sigma2.assign(static_cast<std::size_t>(std::max(rounds, 0)), sigma2.cast<double>());
    else
        spec.sigma2 = sigma2.cast<std::vector<double>>();
    spec.validate_for_simulation();  // rho = 1 is only usable by the simulator
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Energy-efficient HARQ power allocation and rate selection";

    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);

    py::enum_<Scheme>(m, "Scheme")
        .value("TypeI", Scheme::TypeI)
        .value("CC", Scheme::CC)
        .value("IR", Scheme::IR);

    py::class_<ChannelSpec>(m, "ChannelSpec")
        .def(py::init(&make_channel), py::arg("L"), py::arg("rho") = 0.0, py::arg("sigma2") = 1.0)
        .def_readwrite("L", &ChannelSpec::rounds)
        .def_readwrite("rho", &ChannelSpec::rho)
        .def_readwrite("sigma2", &ChannelSpec::sigma2)
        .def("validate", &ChannelSpec::validate)
        .def("__repr__", [](const ChannelSpec& s) {
            return "ChannelSpec(L=" + std::to_string(s.rounds) + ", rho=" + std::to_string(s.rho) + ")";
        });

    py::class_<QosSpec>(m, "QosSpec")
        .def(py::init([](double epsilon, double t0) { return QosSpec{epsilon, t0}; }), py::arg("epsilon"),
             py::arg("t0"))
        .def_readwrite("epsilon", &QosSpec::epsilon)
        .def_readwrite("t0", &QosSpec::t0);

    py::class_<AllocationResult>(m, "AllocationResult")
        .def_property_readonly("ladder", [](const AllocationResult& a) { return a.ladder.powers; })
        .def_readonly("avg_power", &AllocationResult::avg_power)
        .def_readonly("alpha", &AllocationResult::alpha);

    py::class_<Solution>(m, "Solution")
        .def_readonly("scheme", &Solution::scheme)
        .def_property_readonly("ladder", [](const Solution& s) { return s.ladder.powers; })
        .def_readonly("rate", &Solution::rate)
        .def_readonly("alpha", &Solution::alpha)
        .def_readonly("avg_power", &Solution::avg_power)
        .def_readonly("ee", &Solution::ee)
        .def_readonly("goodput", &Solution::goodput)
        .def_readonly("spectral_efficiency", &Solution::spectral_efficiency)
        .def_readonly("feasible", &Solution::feasible)
        .def_readonly("reason", &Solution::reason);

    py::class_<MonteCarloReport>(m, "MonteCarloReport")
        .def_readonly("trials", &MonteCarloReport::trials)
        .def_readonly("seed", &MonteCarloReport::seed)
        .def_readonly("outage", &MonteCarloReport::outage)
        .def_readonly("outage_halfwidth", &MonteCarloReport::outage_halfwidth)
        .def_readonly("avg_power", &MonteCarloReport::avg_power)
        .def_readonly("energy_efficiency", &MonteCarloReport::energy_efficiency)
        .def_readonly("goodput", &MonteCarloReport::goodput)
        .def_readonly("spectral_efficiency", &MonteCarloReport::spectral_efficiency);

    py::class_<AsymptoticReport>(m, "AsymptoticReport")
        .def_readonly("scheme", &AsymptoticReport::scheme)
        .def_readonly("theta_inf", &AsymptoticReport::theta_inf)
        .def_readonly("kappa_inf", &AsymptoticReport::kappa_inf)
        .def_readonly("ee_limit", &AsymptoticReport::ee_limit)
        .def_readonly("ee_lower", &AsymptoticReport::ee_lower)
        .def_readonly("ceiling", &AsymptoticReport::ceiling);

    m.def("g", &g, py::arg("L"), py::arg("R"));
    m.def("g_prime", &g_prime, py::arg("L"), py::arg("R"));
    m.def("ell", &ell, py::arg("L"), py::arg("rho"));
    m.def("varsigma", py::overload_cast<const ChannelSpec&>(&varsigma), py::arg("spec"));
    m.def("phi", &phi, py::arg("scheme"), py::arg("spec"), py::arg("l"), py::arg("R"));
    m.def("theta", &theta, py::arg("spec"));
    m.def("kappa", &kappa, py::arg("L"));
    m.def("f_alpha", &f_alpha, py::arg("alpha"), py::arg("L"));
    m.def("psi", &psi, py::arg("L"));

    m.def("allocate", &allocate, py::arg("scheme"), py::arg("spec"), py::arg("R"), py::arg("alpha"));
    m.def(
        "avg_power_of_ladder",
        [](Scheme scheme, const ChannelSpec& spec, std::vector<double> ladder, double rate) {
            return avg_power_of_ladder(scheme, spec, PowerLadder{std::move(ladder)}, rate);
        },
        py::arg("scheme"), py::arg("spec"), py::arg("ladder"), py::arg("R"));

    m.def("optimal_alpha", &optimal_alpha, py::arg("L"), py::arg("qos"), py::arg("R"));
    m.def("optimal_rate_typei_cc", &optimal_rate_typei_cc, py::arg("L"), py::arg("qos"));
    m.def("optimal_rate_ir", &optimal_rate_ir, py::arg("L"), py::arg("qos"));
    m.def("lambda_direct_rate_ir", &lambda_direct_rate_ir, py::arg("spec"), py::arg("qos"));
    m.def("solve", &solve, py::arg("scheme"), py::arg("spec"), py::arg("qos"));
    m.def(
        "spectral_efficiency",
        [](Scheme scheme, const ChannelSpec& spec, std::vector<double> ladder, double rate) {
            return spectral_efficiency(scheme, spec, PowerLadder{std::move(ladder)}, rate);
        },
        py::arg("scheme"), py::arg("spec"), py::arg("ladder"), py::arg("R"));

    m.def(
        "uniform_power_solve",
        [](Scheme scheme, const ChannelSpec& spec, const QosSpec& qos) {
            return uniform_power_solve(scheme, spec, qos).solution;
        },
        py::arg("scheme"), py::arg("spec"), py::arg("qos"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "estimate_outage",
        [](Scheme scheme, const ChannelSpec& spec, std::vector<double> ladder, double rate, std::uint64_t seed,
           std::uint64_t trials, unsigned workers) {
            return estimate_outage(scheme, spec, PowerLadder{std::move(ladder)}, rate, seed, trials, workers);
        },
        py::arg("scheme"), py::arg("spec"), py::arg("ladder"), py::arg("R"), py::arg("seed"), py::arg("trials"),
        py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());

    m.def("kappa_inf", &kappa_inf);
    m.def(
        "theta_inf", [](double rho, double tol) { return theta_inf(rho, unit_variance, tol); }, py::arg("rho"),
        py::arg("tol") = 1e-8);
    m.def(
        "ee_limit", [](Scheme scheme, double rho, double t0) { return ee_limit(scheme, rho, t0); },
        py::arg("scheme"), py::arg("rho"), py::arg("t0"));
}
