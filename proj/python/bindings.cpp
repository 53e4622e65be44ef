#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "farofangs/error.hpp"
#include "farofangs/fangs.hpp"
#include "farofangs/faro.hpp"
#include "farofangs/io.hpp"
#include "farofangs/lap.hpp"

namespace py = pybind11;
using namespace farofangs;

namespace {

using IntArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

FeatureAllocation to_matrix(const IntArray& arr) {
  if (arr.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto v = arr.unchecked<2>();
  const auto n = static_cast<std::size_t>(v.shape(0));
  const auto k = static_cast<std::size_t>(v.shape(1));
  FeatureAllocation z(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto x = v(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
      if (x != 0 && x != 1) throw ConfigError("entries must be 0 or 1");
      z.set(i, j, x == 1);
    }
  return z;
}

py::array_t<std::uint8_t> to_array(const FeatureAllocation& z) {
  py::array_t<std::uint8_t> out({z.rows(), z.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j)
      v(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = z.get(i, j);
  return out;
}

SampleSet to_samples(const std::vector<IntArray>& arrays) {
  std::vector<FeatureAllocation> draws;
  draws.reserve(arrays.size());
  for (const auto& a : arrays) draws.push_back(to_matrix(a));
  return SampleSet(std::move(draws));
}

std::vector<py::array_t<std::uint8_t>> from_samples(const SampleSet& s) {
  std::vector<py::array_t<std::uint8_t>> out;
  for (const auto& z : s) out.push_back(to_array(z));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "FARO loss, FANGS estimation and baselines for binary feature "
            "allocation matrices";
  m.attr("__version__") = std::string(io::kToolVersion);

  auto base = py::register_exception<Error>(m, "FarofangsError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("left_order", [](const IntArray& z) { return to_array(left_order(to_matrix(z))); },
        py::arg("z"), "Canonical left-ordered form, zero columns dropped.");

  m.def("adjacency",
        [](const IntArray& z) {
          const auto adj = adjacency(to_matrix(z));
          py::array_t<std::uint32_t> out({adj.size(), adj.size()});
          auto v = out.mutable_unchecked<2>();
          for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = 0; j < adj.size(); ++j)
              v(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = adj(i, j);
          return out;
        },
        py::arg("z"));

  m.def("gen_hamming",
        [](const IntArray& x, const IntArray& y, double a) {
          return gen_hamming(to_matrix(x), to_matrix(y), LossParams(a));
        },
        py::arg("x"), py::arg("y"), py::arg("a") = 1.0);

  m.def("solve_lap",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> cost) {
          if (cost.ndim() != 2 || cost.shape(0) != cost.shape(1))
            throw DimensionError("cost matrix must be square");
          const auto k = static_cast<std::size_t>(cost.shape(0));
          CostMatrix c(k);
          const auto v = cost.unchecked<2>();
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
              c(i, j) = v(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
          const auto r = solve_lap(c);
          return py::make_tuple(r.perm, r.cost);
        },
        py::arg("cost"), "Returns (perm, cost); row i is assigned column perm[i].");

  m.def("faro_loss",
        [](const IntArray& x, const IntArray& y, double a) {
          const auto r = faro_loss(to_matrix(x), to_matrix(y), LossParams(a));
          py::dict d;
          d["loss"] = r.loss;
          d["alignment"] = r.alignment.perm;
          d["k_aligned"] = r.k_aligned;
          return d;
        },
        py::arg("estimate"), py::arg("sample"), py::arg("a") = 1.0);

  m.def("expected_loss",
        [](const IntArray& cand, const std::vector<IntArray>& samples, double a,
           unsigned threads) {
          const auto z = to_matrix(cand);
          const auto s = to_samples(samples);
          py::gil_scoped_release release;
          return expected_loss(z, s, LossParams(a), threads);
        },
        py::arg("candidate"), py::arg("samples"), py::arg("a") = 1.0,
        py::arg("threads") = 0);

  m.def("fangs",
        [](const std::vector<IntArray>& samples, double a, std::size_t n_init,
           std::size_t n_sweet, std::size_t n_iter, std::uint64_t seed,
           unsigned threads) {
          const auto s = to_samples(samples);
          SearchConfig cfg;
          cfg.a = a;
          cfg.n_init = n_init;
          cfg.n_sweet = n_sweet;
          cfg.n_iter = n_iter;
          cfg.seed = seed;
          cfg.threads = threads;
          SearchResult r;
          {
            py::gil_scoped_release release;
            r = fangs(s, cfg);
          }
          py::dict d;
          d["estimate"] = to_array(r.estimate);
          d["expected_loss"] = r.expected_loss;
          d["seconds"] = r.seconds;
          d["baseline_indices"] = r.baseline_indices;
          d["baseline_losses"] = r.baseline_losses;
          d["n_accepted_flips"] = r.n_accepted_flips;
          return d;
        },
        py::arg("samples"), py::arg("a") = 1.0, py::arg("n_init") = 16,
        py::arg("n_sweet") = 4, py::arg("n_iter") = 1000, py::arg("seed") = 0,
        py::arg("threads") = 0);

  m.def("draws",
        [](const std::vector<IntArray>& samples, double a, unsigned threads) {
          const auto s = to_samples(samples);
          DrawsResult r;
          {
            py::gil_scoped_release release;
            r = draws_method(s, LossParams(a), threads);
          }
          py::dict d;
          d["index"] = r.index;
          d["estimate"] = to_array(r.estimate);
          d["expected_loss"] = r.expected_loss;
          d["losses"] = r.losses;
          return d;
        },
        py::arg("samples"), py::arg("a") = 1.0, py::arg("threads") = 0);

  m.def("sifa",
        [](const std::vector<IntArray>& samples, double a) {
          return to_array(sifa_estimate(to_samples(samples), LossParams(a)));
        },
        py::arg("samples"), py::arg("a") = 1.0);

  m.def("psm_score",
        [](const IntArray& cand, const std::vector<IntArray>& samples) {
          return psm_score(to_matrix(cand), psm(to_samples(samples)));
        },
        py::arg("candidate"), py::arg("samples"));

  m.def("read_faz", [](const std::string& path) { return from_samples(io::parse_samples(path)); },
        py::arg("path"));
  m.def("parse_faz",
        [](const std::string& text) { return from_samples(io::parse_samples_text(text)); },
        py::arg("text"));
  m.def("format_faz",
        [](const std::vector<IntArray>& samples) { return io::format_faz(to_samples(samples)); },
        py::arg("samples"));
}
