#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wexpfam/bootstrap.hpp"
#include "wexpfam/errors.hpp"
#include "wexpfam/estimators.hpp"
#include "wexpfam/family.hpp"
#include "wexpfam/moments.hpp"
#include "wexpfam/named.hpp"
#include "wexpfam/random.hpp"

namespace py = pybind11;
using namespace wexpfam;

namespace {

py::array_t<double> to_array(const std::vector<double>& values) {
  return py::array_t<double>(static_cast<py::ssize_t>(values.size()), values.data());
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& data) {
  return {data.data(), data.data() + data.size()};
}

}  // namespace

PYBIND11_MODULE(wexpfam, m) {
  m.doc() = "Weighted exponential family with power generators T(x) = x^(-s): "
            "density, exact sampling, closed-form moments and moment-type "
            "estimators, bootstrap bias reduction.";

  // Translators run newest-first, so the base class goes first.
  py::register_exception<Error>(m, "WexpfamError", PyExc_ValueError);
  py::register_exception<MomentUndefined>(m, "MomentUndefined", PyExc_ArithmeticError);
  py::register_exception<EstimationFailed>(m, "EstimationFailed", PyExc_ArithmeticError);
  py::register_exception<BootstrapDegenerate>(m, "BootstrapDegenerate", PyExc_ArithmeticError);
  py::register_exception<OptimizationFailed>(m, "OptimizationFailed", PyExc_ArithmeticError);

  py::class_<FamilySpec>(m, "FamilySpec")
      .def(py::init<double, int>(), py::arg("s"), py::arg("delta"))
      .def_readonly("s", &FamilySpec::s)
      .def_readonly("delta", &FamilySpec::delta)
      .def("__repr__", [](const FamilySpec& spec) {
        return "FamilySpec(s=" + std::to_string(spec.s) + ", delta=" + std::to_string(spec.delta) + ")";
      });

  py::class_<Params>(m, "Params")
      .def(py::init<double, double>(), py::arg("mu"), py::arg("sigma"))
      .def_readonly("mu", &Params::mu)
      .def_readonly("sigma", &Params::sigma)
      .def("__repr__", [](const Params& p) {
        return "Params(mu=" + std::to_string(p.mu) + ", sigma=" + std::to_string(p.sigma) + ")";
      });

  py::class_<HVector>(m, "HVector")
      .def_readonly("h1", &HVector::h1)
      .def_readonly("h2", &HVector::h2)
      .def_readonly("h3", &HVector::h3)
      .def_readonly("h4", &HVector::h4)
      .def("__repr__", [](const HVector& h) {
        return "HVector(h1=" + std::to_string(h.h1) + ", h2=" + std::to_string(h.h2) +
               ", h3=" + std::to_string(h.h3) + ", h4=" + std::to_string(h.h4) + ")";
      });

  py::class_<NamedModel>(m, "NamedModel")
      .def_property_readonly("name", [](const NamedModel& model) {
        return std::string(family_name(model.family));
      })
      .def_readonly("native", &NamedModel::native)
      .def_readonly("spec", &NamedModel::spec)
      .def_readonly("params", &NamedModel::params);

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("mu_hat", &EstimateReport::mu_hat)
      .def_readonly("sigma_hat", &EstimateReport::sigma_hat)
      .def_readonly("native", &EstimateReport::native)
      .def_readonly("covariance", &EstimateReport::covariance)
      .def_readonly("ci_level", &EstimateReport::ci_level)
      .def_readonly("ci_mu", &EstimateReport::ci_mu)
      .def_readonly("ci_sigma", &EstimateReport::ci_sigma)
      .def_readonly("n", &EstimateReport::n);

  py::class_<BiasReducedEstimate>(m, "BiasReducedEstimate")
      .def_readonly("names", &BiasReducedEstimate::names)
      .def_readonly("raw", &BiasReducedEstimate::raw)
      .def_readonly("reduced", &BiasReducedEstimate::reduced)
      .def_readonly("replicate_mean", &BiasReducedEstimate::replicate_mean)
      .def_readonly("replicates_used", &BiasReducedEstimate::replicates_used)
      .def_readonly("failures", &BiasReducedEstimate::failures)
      .def_readonly("nonpositive_reduced", &BiasReducedEstimate::nonpositive_reduced);

  m.def("density", &density, py::arg("spec"), py::arg("params"), py::arg("x"));
  m.def("log_density", &log_density, py::arg("spec"), py::arg("params"), py::arg("x"));
  m.def("mixture_weights", &mixture_weights, py::arg("spec"), py::arg("params"));
  m.def("component_density", &component_density, py::arg("spec"), py::arg("params"), py::arg("j"),
        py::arg("x"));

  m.def("from_named",
        [](const std::string& name, const std::map<std::string, double>& native) {
          NativeParams params(native.begin(), native.end());
          return from_named(name, params);
        },
        py::arg("name"), py::arg("params"));
  m.def("to_named",
        [](const std::string& name, const FamilySpec& spec, const Params& params) {
          return to_named(parse_family_name(name), spec, params);
        },
        py::arg("name"), py::arg("spec"), py::arg("params"));

  m.def("sample",
        [](const FamilySpec& spec, const Params& params, std::size_t n, std::uint64_t master_seed,
           std::uint64_t stream_id) {
          return to_array(sample(spec, params, n, SeededStream{master_seed, stream_id}));
        },
        py::arg("spec"), py::arg("params"), py::arg("n"), py::arg("master_seed"),
        py::arg("stream_id") = 0);

  m.def("digamma", &digamma, py::arg("z"));
  m.def("moment", &moment, py::arg("spec"), py::arg("params"), py::arg("q"));
  m.def("neg_power_log_moment", &neg_power_log_moment, py::arg("spec"), py::arg("params"),
        py::arg("p"));
  m.def("weighted_log_moment", &weighted_log_moment, py::arg("spec"), py::arg("params"));
  m.def("population_h", &population_h, py::arg("spec"), py::arg("params"));

  m.def("summary_stats",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           const FamilySpec& spec) {
          const auto stats = summary_stats(to_vector(data), spec);
          return py::make_tuple(stats.hstats, stats.n);
        },
        py::arg("data"), py::arg("spec"));
  m.def("g1", &g1, py::arg("h"), py::arg("delta"));
  m.def("g2", &g2, py::arg("h"), py::arg("sigma"), py::arg("delta"));

  m.def("estimate",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           const FamilySpec& spec, const std::optional<std::string>& model, double ci_level) {
          std::optional<NamedFamily> family;
          if (model) family = parse_family_name(*model);
          return estimate(to_vector(data), spec, family, ci_level);
        },
        py::arg("data"), py::arg("spec"), py::arg("model") = std::nullopt,
        py::arg("ci_level") = 0.95);

  m.def("mle_numeric",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           const FamilySpec& spec) { return mle_numeric(to_vector(data), spec); },
        py::arg("data"), py::arg("spec"));

  m.def("bootstrap_bias_reduce",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           const FamilySpec& spec, int replications, const std::string& scheme,
           std::uint64_t master_seed, std::uint64_t stream_id,
           const std::optional<std::string>& model) {
          BootstrapConfig config;
          config.replications = replications;
          if (scheme == "nonparametric") {
            config.scheme = BootstrapScheme::nonparametric;
          } else if (scheme == "parametric") {
            config.scheme = BootstrapScheme::parametric;
          } else {
            throw DomainError("scheme must be nonparametric or parametric");
          }
          config.stream = SeededStream{master_seed, stream_id};
          std::optional<NamedFamily> family;
          if (model) family = parse_family_name(*model);
          return bootstrap_bias_reduce(to_vector(data), spec, config, family);
        },
        py::arg("data"), py::arg("spec"), py::arg("replications") = 200,
        py::arg("scheme") = "nonparametric", py::arg("master_seed") = 0, py::arg("stream_id") = 0,
        py::arg("model") = std::nullopt);
}
