#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oddl/discrepancy.hpp"
#include "oddl/harness.hpp"

namespace py = pybind11;
using namespace oddl;

namespace {

run_config build_config(const std::string& config_path,
                        const std::map<std::string, std::string>& overrides) {
  run_config cfg;
  if (!config_path.empty()) cfg = load_run_config(config_path);
  for (const auto& [k, v] : overrides) apply_override(cfg, k, v);
  return cfg;
}

py::dict result_dict(const run_result& result) {
  py::dict d;
  d["method"] = method_name(result.method);
  d["final_components"] = result.final_components;
  d["final_test_acc"] = result.final_test_acc;
  d["steps_run"] = result.steps_run;
  d["runtime_seconds"] = result.runtime_seconds;
  d["frozen_checksums_intact"] = result.frozen_checksums_intact;
  py::list expansions;
  for (const auto& e : result.expansions) {
    py::dict ev;
    ev["step"] = e.step;
    ev["component_id"] = e.new_component_id;
    ev["min_score"] = e.min_score;
    expansions.append(ev);
  }
  d["expansions"] = expansions;
  py::list metrics;
  for (const auto& m : result.metrics) {
    py::dict row;
    row["step"] = m.step;
    row["source_risk"] = m.source_risk;
    row["target_risk"] = m.target_risk;
    row["test_acc"] = m.test_acc;
    row["n_components"] = m.n_components;
    row["min_discrepancy"] = m.min_discrepancy;
    row["expanded"] = m.expanded;
    metrics.append(row);
  }
  d["metrics"] = metrics;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "task-free continual learning: expanding classifier+vae mixture "
            "driven by an empirical discrepancy distance";

  m.def(
      "run",
      [](const std::string& config_path,
         const std::map<std::string, std::string>& overrides) {
        return result_dict(run_experiment(build_config(config_path, overrides)));
      },
      py::arg("config_path") = std::string(),
      py::arg("overrides") = std::map<std::string, std::string>{},
      "execute one experiment; overrides use the config-file keys as strings");

  m.def("eval_run", &eval_run, py::arg("run_dir"), py::arg("data_dir") = "",
        "load a finished run's checkpoint and return test accuracy");

  m.def(
      "gradcheck",
      [](int n_nets, std::uint64_t seed) {
        gradcheck_report rep = run_gradcheck(n_nets, seed);
        py::dict d;
        d["pass"] = rep.pass;
        d["n_nets"] = rep.n_nets;
        d["n_coordinates"] = rep.n_coordinates;
        d["worst_rel_err"] = rep.worst_rel_err;
        return d;
      },
      py::arg("n_nets") = 20, py::arg("seed") = 1,
      "finite-difference check of both training losses on random small nets");

  m.def("config_keys", &config_keys, "recognized config-file keys");

  m.def(
      "default_config_text",
      [](const std::map<std::string, std::string>& overrides) {
        return config_to_text(build_config("", overrides));
      },
      py::arg("overrides") = std::map<std::string, std::string>{},
      "render a config (defaults plus overrides) as config-file text");

  m.def(
      "pairwise_losses",
      [](const Mat& p, const Mat& q) { return pairwise_losses(p, q); },
      py::arg("p"), py::arg("q"),
      "rowwise L1 distance between two probability matrices, bounded by 2");

  m.def(
      "discrepancy_from_losses",
      [](const Vec& a, const Vec& b) { return discrepancy_from_losses(a, b); },
      py::arg("losses_a"), py::arg("losses_b"),
      "absolute difference of the two loss means");

  m.attr("__version__") = "0.1.0";
}
