#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exittime/exit_time.hpp"
#include "exittime/harness.hpp"
#include "exittime/hypoexp.hpp"
#include "exittime/model_io.hpp"
#include "exittime/ssa.hpp"
#include "exittime/stats.hpp"

namespace py = pybind11;
using namespace exittime;

namespace {

py::array_t<double> to_numpy(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

SystemState state_of(const ModelDefinition& m, std::vector<Count> counts) {
  SystemState s{std::move(counts), 0.0};
  m.system.validate_state(s);
  return s;
}

const char* status_name(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Exited: return "exited";
    case TrajectoryStatus::Absorbed: return "absorbed";
    case TrajectoryStatus::StepLimit: return "step_limit";
  }
  return "unknown";
}

py::dict outcome_dict(const TrajectoryOutcome& o) {
  py::dict d;
  d["status"] = status_name(o.status);
  d["exit_time"] = o.exit_time;
  d["steps"] = o.steps;
  d["final_counts"] = o.final_state.counts;
  if (o.propensity_log) {
    d["lambdas"] = to_numpy(o.propensity_log->lambdas);
  }
  return d;
}

py::dict counters_dict(const DrawCounters& c) {
  py::dict d;
  d["uniform"] = c.uniform;
  d["exponential"] = c.exponential;
  d["gamma"] = c.gamma;
  return d;
}

py::dict samples_dict(const EnsembleSamples& s) {
  py::dict d;
  d["exit_times"] = to_numpy(s.exit_times);
  d["n_exited"] = s.n_exited();
  d["n_censored"] = s.n_censored();
  d["n_absorbed"] = s.n_absorbed;
  d["n_step_limit"] = s.n_step_limit;
  d["total_steps"] = s.total_steps;
  d["counters"] = counters_dict(s.counters);
  return d;
}

py::dict histogram_dict(const EnsembleHistogram& h) {
  py::dict d;
  std::vector<double> edges(h.grid.bins + 1);
  for (std::size_t i = 0; i <= h.grid.bins; ++i) {
    edges[i] = h.grid.edge(i);
  }
  d["edges"] = to_numpy(edges);
  d["densities"] = to_numpy(h.densities);
  d["n_exited"] = h.n_exited;
  d["n_censored"] = h.n_censored;
  return d;
}

Method method_of(const std::string& name, double epsilon) {
  if (name == "ssa") return Method::ssa();
  if (name == "exit") return Method::exit_time(epsilon);
  throw std::invalid_argument("method must be 'ssa' or 'exit'");
}

}  // namespace

PYBIND11_MODULE(_exittime, m) {
  m.doc() = "Exit-time stochastic simulation core";

  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<IllegalFiring>(m, "IllegalFiring", PyExc_RuntimeError);
  py::register_exception<IllConditioned>(m, "IllConditioned", PyExc_ValueError);
  py::register_exception<GridMismatch>(m, "GridMismatch", PyExc_ValueError);
  py::register_exception<AllCensored>(m, "AllCensored", PyExc_RuntimeError);

  py::class_<ModelDefinition>(m, "Model")
      .def_property_readonly("species",
                             [](const ModelDefinition& md) {
                               std::vector<std::string> names;
                               for (const auto& s : md.system.species()) names.push_back(s.name);
                               return names;
                             })
      .def_property_readonly("omega", [](const ModelDefinition& md) { return md.system.omega(); })
      .def_property_readonly("initial", [](const ModelDefinition& md) { return md.initial.counts; })
      .def_property_readonly("n_reactions",
                             [](const ModelDefinition& md) { return md.system.reactions().size(); })
      .def("stoichiometry", [](const ModelDefinition& md, std::size_t i) {
        return md.system.reactions().at(i).stoichiometry();
      });

  m.def("load_model", [](const std::string& path) { return load_model(path); }, py::arg("path"));
  m.def("parse_model", [](const std::string& text) { return parse_model(text); }, py::arg("text"));

  m.def("propensity",
        [](const ModelDefinition& md, std::vector<Count> counts, std::size_t i) {
          if (i >= md.system.reactions().size()) throw py::index_error("reaction index");
          return propensity(md.system, state_of(md, std::move(counts)), i);
        },
        py::arg("model"), py::arg("counts"), py::arg("reaction"));
  m.def("total_propensity",
        [](const ModelDefinition& md, std::vector<Count> counts) {
          return total_propensity(md.system, state_of(md, std::move(counts)));
        },
        py::arg("model"), py::arg("counts"));
  m.def("apply_reaction",
        [](const ModelDefinition& md, std::vector<Count> counts, std::size_t i) {
          const auto& r = md.system.reactions().at(i);
          return apply_reaction(state_of(md, std::move(counts)), r).counts;
        },
        py::arg("model"), py::arg("counts"), py::arg("reaction"));

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_id"))
      .def("uniform", &RandomStream::uniform)
      .def("exponential", &RandomStream::exponential, py::arg("rate"))
      .def("discrete_index",
           [](RandomStream& s, const std::vector<double>& w) { return s.discrete_index(w); },
           py::arg("weights"))
      .def("gamma", &RandomStream::gamma, py::arg("scale"), py::arg("shape"))
      .def_property_readonly("counters",
                             [](const RandomStream& s) { return counters_dict(s.counters()); });

  m.def("run_ssa",
        [](const ModelDefinition& md, std::uint64_t seed, std::uint64_t stream_id) {
          RandomStream stream(seed, stream_id);
          return outcome_dict(run_ssa(md.system, md.initial, md.exit, stream));
        },
        py::arg("model"), py::arg("seed"), py::arg("stream_id") = 0);
  m.def("run_timefree",
        [](const ModelDefinition& md, std::uint64_t seed, std::uint64_t stream_id) {
          RandomStream stream(seed, stream_id);
          return outcome_dict(run_timefree(md.system, md.initial, md.exit, stream));
        },
        py::arg("model"), py::arg("seed"), py::arg("stream_id") = 0);

  py::class_<PropensityGroup>(m, "PropensityGroup")
      .def(py::init<double, std::uint64_t>(), py::arg("lambda_tilde"), py::arg("count"))
      .def_readonly("lambda_tilde", &PropensityGroup::lambda_tilde)
      .def_readonly("count", &PropensityGroup::count)
      .def("__repr__", [](const PropensityGroup& g) {
        return "PropensityGroup(lambda_tilde=" + std::to_string(g.lambda_tilde) +
               ", count=" + std::to_string(g.count) + ")";
      });
  py::class_<GroupedPropensities>(m, "GroupedPropensities")
      .def_readonly("groups", &GroupedPropensities::groups)
      .def_readonly("epsilon", &GroupedPropensities::epsilon)
      .def("total_count", &GroupedPropensities::total_count)
      .def("mean_time", &GroupedPropensities::mean_time);

  m.def("partition",
        [](std::vector<double> lambdas, double epsilon) {
          return partition(PropensityLog{std::move(lambdas)}, epsilon);
        },
        py::arg("lambdas"), py::arg("epsilon"));
  m.def("sample_exit_time", &sample_exit_time, py::arg("groups"), py::arg("stream"));

  py::class_<HypoexpDistribution>(m, "HypoexpDistribution")
      .def(py::init<std::vector<double>>(), py::arg("rates"))
      .def_property_readonly("rates", &HypoexpDistribution::rates)
      .def_property_readonly("coefficients", &HypoexpDistribution::coefficients)
      .def("pdf", &HypoexpDistribution::pdf, py::arg("t"))
      .def("cdf", &HypoexpDistribution::cdf, py::arg("t"))
      .def("inverse", &HypoexpDistribution::inverse, py::arg("r"))
      .def("transform", &HypoexpDistribution::transform, py::arg("s"));
  py::class_<ErlangDistribution>(m, "ErlangDistribution")
      .def(py::init<double, std::uint64_t>(), py::arg("rate"), py::arg("shape"))
      .def("pdf", &ErlangDistribution::pdf, py::arg("t"))
      .def("transform", &ErlangDistribution::transform, py::arg("s"));
  m.def("laplace_of_pdf",
        [](const std::function<double(double)>& f, double s) { return laplace_of_pdf(f, s); },
        py::arg("pdf"), py::arg("s"));
  m.def("approximation_gap", &approximation_gap, py::arg("lambda_tilde"), py::arg("epsilon"),
        py::arg("s"));
  m.def("pdf_by_numerical_convolution",
        [](const std::vector<double>& rates, double t_max, std::size_t points) {
          const auto d = pdf_by_numerical_convolution(rates, TimeGrid{t_max, points});
          return py::make_tuple(to_numpy(d.t), to_numpy(d.density));
        },
        py::arg("rates"), py::arg("t_max"), py::arg("points"));

  m.def("ks_statistic",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return ks_statistic(a, b);
        },
        py::arg("a"), py::arg("b"));
  m.def("ks_critical_value", &ks_critical_value, py::arg("n"), py::arg("m"),
        py::arg("alpha") = 0.01);

  m.def("run_ensemble",
        [](const ModelDefinition& md, const std::string& method, double epsilon, std::uint64_t n,
           std::uint64_t seed, unsigned workers) {
          const Method meth = method_of(method, epsilon);
          EnsembleSamples s;
          {
            py::gil_scoped_release release;
            s = run_ensemble(md.system, md.initial, md.exit, meth, n, seed, workers);
          }
          return samples_dict(s);
        },
        py::arg("model"), py::arg("method"), py::arg("epsilon") = 0.0, py::arg("n"),
        py::arg("seed"), py::arg("workers") = 0);

  m.def("compare",
        [](const ModelDefinition& md, double epsilon, std::uint64_t n, std::uint64_t seed,
           std::size_t bins, unsigned workers) {
          Comparison c;
          {
            py::gil_scoped_release release;
            c = compare_methods(md.system, md.initial, md.exit, epsilon, n, seed, bins, workers);
          }
          py::dict d;
          d["ssa"] = histogram_dict(c.ssa_histogram);
          d["method"] = histogram_dict(c.method_histogram);
          d["l1"] = c.error.l1;
          d["l2"] = c.error.l2;
          d["per_bin"] = to_numpy(c.error.per_bin);
          d["rho"] = c.rho;
          d["ks_statistic"] = c.ks.statistic;
          d["ks_critical"] = c.ks.critical;
          d["ks_equivalent"] = c.ks.equivalent;
          return d;
        },
        py::arg("model"), py::arg("epsilon"), py::arg("n"), py::arg("seed"),
        py::arg("bins") = 200, py::arg("workers") = 0);

  m.def("convergence_study",
        [](const ModelDefinition& md, const std::vector<double>& epsilons, std::uint64_t n,
           std::uint64_t seed, std::size_t bins, unsigned workers) {
          ConvergenceStudy study;
          {
            py::gil_scoped_release release;
            study = convergence_study(md.system, md.initial, md.exit, epsilons, n, seed, bins,
                                      workers);
          }
          py::list rows;
          for (const auto& r : study.records) {
            py::dict d;
            d["epsilon"] = r.epsilon;
            d["l1"] = r.l1;
            d["l2"] = r.l2;
            d["rho"] = r.rho;
            d["n_exited"] = r.n_exited;
            d["n_censored"] = r.n_censored;
            d["gamma_draws"] = r.gamma_draws;
            d["exp_draws"] = r.exp_draws;
            d["order"] = r.order ? py::cast(*r.order) : py::none();
            rows.append(d);
          }
          return rows;
        },
        py::arg("model"), py::arg("epsilons"), py::arg("n"), py::arg("seed"),
        py::arg("bins") = 200, py::arg("workers") = 0);
}
