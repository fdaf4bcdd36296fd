#include <algorithm>
#include <filesystem>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparse_ising/sparse_ising.hpp"

namespace py = pybind11;
namespace si = sparse_ising;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace {

si::SpinConfig to_config(const std::vector<int>& spins) {
  std::vector<si::Spin> out(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) out[i] = static_cast<si::Spin>(spins[i]);
  return si::SpinConfig(std::move(out));
}

std::vector<int> from_config(const si::SpinConfig& cfg) {
  return {cfg.spins().begin(), cfg.spins().end()};
}

// nlohmann::json -> Python object through the json module.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

si::SolverParams params_from_kwargs(const py::kwargs& kwargs) {
  si::SolverParams params;
  for (const auto& [key, value] : kwargs) {
    std::string k = py::str(key);
    std::replace(k.begin(), k.end(), '_', '-');
    std::string v;
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) v += (v.empty() ? "" : ",") + std::string(py::str(item));
    } else {
      v = py::str(value);
    }
    params.set(k, v);
  }
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse Ising / weighted MaxCut workbench: Gset instances, certification, baseline solvers, metrics";

  py::register_exception<si::Error>(m, "Error", PyExc_RuntimeError);

  py::class_<si::ProblemInstance>(m, "ProblemInstance")
      .def_readonly("id", &si::ProblemInstance::id)
      .def_readonly("n", &si::ProblemInstance::n)
      .def_property_readonly("m", &si::ProblemInstance::m)
      .def_readonly("source_path", &si::ProblemInstance::source_path)
      .def_property_readonly("edges",
                             [](const si::ProblemInstance& inst) {
                               py::list out;
                               for (const auto& e : inst.edges) out.append(py::make_tuple(e.u, e.v, e.w));
                               return out;
                             })
      .def("__repr__", [](const si::ProblemInstance& inst) {
        return "<ProblemInstance " + inst.id + " n=" + std::to_string(inst.n) + " m=" + std::to_string(inst.m()) +
               ">";
      });

  m.def(
      "parse_gset", [](const std::string& text, const std::string& id) { return si::parse_gset_text(text, id); },
      py::arg("text"), py::arg("id") = "", "Parse Gset text ('n m' header, then 'u v w' lines).");
  m.def(
      "load_instance",
      [](const std::string& id, std::optional<std::string> cache_dir, bool offline) {
        return si::load_instance(id, cache_dir ? std::filesystem::path(*cache_dir) : si::default_cache_dir(),
                                 offline);
      },
      py::arg("id"), py::arg("cache_dir") = py::none(), py::arg("offline") = false);
  m.def("serialize_gset", &si::serialize_gset);
  m.def("instance_stats", [](const si::ProblemInstance& inst) {
    const auto s = si::instance_stats(inst);
    py::dict d;
    d["n"] = s.n;
    d["m"] = s.m;
    d["total_weight"] = s.total_weight;
    d["weight_histogram"] = s.weight_histogram;
    d["min_degree"] = s.min_degree;
    d["max_degree"] = s.max_degree;
    d["mean_degree"] = s.mean_degree;
    return d;
  });
  m.def("registry", [] {
    py::list out;
    for (const auto& meta : si::registry()) {
      py::dict d;
      d["id"] = std::string(meta.id);
      d["n"] = meta.n;
      d["m"] = meta.m;
      d["problem_type"] = std::string(si::to_string(meta.problem_type));
      d["best_known"] = meta.best_known;
      d["best_known_source"] = std::string(meta.best_known_source);
      d["default_sweeps_per_run"] = meta.default_sweeps_per_run;
      out.append(d);
    }
    return out;
  });

  m.def(
      "cut_value", [](const si::ProblemInstance& inst, const std::vector<int>& spins) {
        return si::cut_value(inst, to_config(spins));
      },
      "Weighted cut of a +1/-1 spin list.");
  m.def("ising_energy", [](const si::ProblemInstance& inst, const std::vector<int>& spins) {
    return si::ising_energy(inst, to_config(spins));
  });
  m.def(
      "random_config", [](std::size_t n, std::uint64_t seed) { return from_config(si::random_config(n, seed)); },
      py::arg("n"), py::arg("seed"));

  m.def(
      "decode_hex_solution",
      [](const std::string& hex, std::size_t n) { return from_config(si::decode_hex_solution({hex, n})); },
      py::arg("hex"), py::arg("n"), "Expand hex (MSB first) to spins; bit 1 is spin -1.");
  m.def(
      "encode_hex_solution", [](const std::vector<int>& spins) { return si::encode_hex_solution(to_config(spins)); },
      py::arg("spins"));
  m.def(
      "certify",
      [](const si::ProblemInstance& inst, const std::vector<int>& spins, std::optional<si::CutValue> claimed) {
        const auto r = si::certify(inst, to_config(spins), claimed);
        py::dict d;
        d["cut"] = r.cut;
        d["best_known"] = r.best_known;
        d["quality"] = r.quality;
        d["claimed"] = r.claimed;
        d["matches_claim"] = r.matches_claim;
        return d;
      },
      py::arg("instance"), py::arg("spins"), py::arg("claimed") = py::none());
  m.def("bundled_solution", [](const std::string& name) {
    auto text = si::bundled_solution(name);
    if (!text) throw si::Error("no bundled solution named '" + name + "'");
    const auto file = si::parse_solution_file(*text);
    py::dict d;
    d["instance"] = file.instance;
    d["n"] = file.n;
    d["claimed"] = file.claimed;
    d["hex"] = file.hex;
    return d;
  });

  m.def(
      "run_trials",
      [](const si::ProblemInstance& inst, std::uint32_t trials, std::optional<si::CutValue> target,
         std::uint32_t workers, std::uint64_t seed, const py::kwargs& kwargs) {
        const auto params = params_from_kwargs(kwargs);
        params.validate();
        si::BenchRecord record;
        {
          py::gil_scoped_release release;
          record = si::run_trials(inst, params, trials, target, workers, seed);
        }
        return to_python(si::to_json(si::make_report(inst, params, record, workers, seed)));
      },
      py::arg("instance"), py::arg("trials") = 1, py::arg("target") = py::none(), py::arg("workers") = 1,
      py::arg("seed") = 1,
      "Run a batch of trials and return the JSON report as a dict. Solver settings are keyword arguments "
      "(solver='sa', sweeps=200, t_cold=0.05, betas=[...], ...).");

  auto metrics = m.def_submodule("metrics", "Time-to-target and related benchmark arithmetic");
  metrics.def("repetitions", &si::metrics::repetitions, py::arg("p_s"));
  metrics.def("time_to_target", &si::metrics::time_to_target, py::arg("t_trial"), py::arg("p_s"));
  metrics.def("sweeps_to_target", &si::metrics::sweeps_to_target, py::arg("sweeps_per_run"), py::arg("p_s"));
  metrics.def("solution_quality", &si::metrics::solution_quality, py::arg("value"), py::arg("best_known"));
  metrics.def("speedup", &si::metrics::speedup, py::arg("ttt_reference"), py::arg("ttt_new"));
  metrics.def("energy_to_target", &si::metrics::energy_to_target, py::arg("ttt"), py::arg("power"));
  metrics.def(
      "bls_projection",
      [](double avg, std::int64_t successes, std::int64_t runs) {
        const auto p = si::metrics::bls_projection(avg, successes, runs);
        py::dict d;
        d["p_s"] = p.p_s;
        d["total_time"] = p.total_time;
        d["time_per_run"] = p.time_per_run;
        d["projected_ttt"] = p.projected_ttt;
        return d;
      },
      py::arg("avg_time_per_success"), py::arg("successes"), py::arg("runs"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
