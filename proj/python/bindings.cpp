#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isomer/analytics.hpp"
#include "isomer/graph.hpp"
#include "isomer/oracle.hpp"
#include "isomer/qubo.hpp"
#include "isomer/sampler.hpp"
#include "isomer/serialize.hpp"

namespace py = pybind11;
using namespace isomer;

namespace {

py::list triangular_entries(const UpperTriangular& matrix, bool diagonal) {
  py::list out;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = diagonal ? i : i + 1; j < matrix.size(); ++j) {
      if (matrix(i, j) != 0.0) out.append(py::make_tuple(i, j, matrix(i, j)));
    }
  }
  return out;
}

void bind_qubo(py::module_& m) {
  py::class_<PenaltyConfig>(m, "PenaltyConfig")
      .def(py::init<>())
      .def(py::init([](double p1, double p2) { return PenaltyConfig{p1, p2}; }), py::arg("p1"),
           py::arg("p2"))
      .def_readwrite("p1", &PenaltyConfig::p1)
      .def_readwrite("p2", &PenaltyConfig::p2);

  py::class_<QuboProblem>(m, "QuboProblem")
      .def_readonly("carbons", &QuboProblem::carbons)
      .def_readonly("penalties", &QuboProblem::penalties)
      .def_readonly("offset", &QuboProblem::offset)
      .def_property_readonly("num_variables", &QuboProblem::num_variables)
      .def("coefficient", [](const QuboProblem& p, std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        if (j >= p.num_variables()) throw py::index_error();
        return p.q(i, j);
      })
      .def("entries", [](const QuboProblem& p) { return triangular_entries(p.q, true); })
      .def("to_json", [](const QuboProblem& p) { return problem_to_json(p); })
      .def_static("from_json", &problem_from_json);

  py::class_<IsingProblem>(m, "IsingProblem")
      .def_readonly("h", &IsingProblem::h)
      .def_readonly("offset", &IsingProblem::offset)
      .def_readonly("scale", &IsingProblem::scale)
      .def("couplings", [](const IsingProblem& p) { return triangular_entries(p.j, false); })
      .def("to_json", [](const IsingProblem& p) { return ising_to_json(p); });

  m.def("build_qubo", &build_qubo, py::arg("carbons"), py::arg("penalties") = PenaltyConfig{});
  m.def("objective_eval",
        [](const BitString& y, int n, const PenaltyConfig& p) { return objective_eval(y, n, p); },
        py::arg("bits"), py::arg("carbons"), py::arg("penalties") = PenaltyConfig{});
  m.def("matrix_eval", [](const QuboProblem& p, const BitString& y) { return matrix_eval(p, y); });
  m.def("qubo_to_ising", &qubo_to_ising);
  m.def("ising_energy", [](const IsingProblem& p, const BitString& y) {
    return ising_energy(p, to_spins(y));
  }, "Ising energy of the spins 2*bits - 1, without the offset");
  m.def("scale_ising",
        [](const IsingProblem& p, double h, double j, std::optional<double> floor) {
          return scale_ising(p, h, j, floor.value_or(j));
        },
        py::arg("problem"), py::arg("h_bound") = 2.0, py::arg("j_bound") = 1.0,
        py::arg("j_negative_bound") = py::none());
  m.def("perturb", [](const QuboProblem& p, const BitString& psi, double lambda) {
    return perturb(p, psi, lambda);
  });
}

void bind_graph(py::module_& m) {
  py::register_exception<OneHotViolation>(m, "OneHotViolation", PyExc_ValueError);
  py::register_exception<NonConstructible>(m, "NonConstructible", PyExc_ValueError);

  py::class_<MolecularTree>(m, "MolecularTree")
      .def_readonly("carbons", &MolecularTree::carbons)
      .def_readonly("edges", &MolecularTree::edges)
      .def_readonly("degree", &MolecularTree::degree)
      .def("hydrogens", &MolecularTree::hydrogens)
      .def("valid", &MolecularTree::valid);

  m.def("decode_onehot", [](const BitString& y, int n) { return decode_onehot(y, n).degrees; });
  m.def("encode_onehot", [](std::vector<int> d) { return encode_onehot(DegreeSequence{std::move(d)}); });
  m.def("sequence_to_tree", [](std::vector<int> d) { return sequence_to_tree(DegreeSequence{std::move(d)}); });
  m.def("canonicalize", [](const MolecularTree& t) { return canonicalize(t).certificate; });
  m.def("realize_multiset", &realize_multiset);

  py::class_<IsomerRegistry>(m, "IsomerRegistry")
      .def(py::init<>())
      .def("add", py::overload_cast<const MolecularTree&, int>(&IsomerRegistry::add), py::arg("tree"),
           py::arg("iteration") = 0)
      .def("__len__", &IsomerRegistry::size)
      .def("certificates", &IsomerRegistry::certificates)
      .def("count", [](const IsomerRegistry& r, const std::string& cert) -> std::size_t {
        const auto* e = r.find(CanonicalForm{cert});
        return e ? e->count : 0;
      })
      .def("dump", &isomer_dump);
}

void bind_sampler(py::module_& m) {
  py::enum_<Interpolation>(m, "Interpolation")
      .value("linear", Interpolation::kLinear)
      .value("geometric", Interpolation::kGeometric);
  py::enum_<MoveSet>(m, "MoveSet")
      .value("single_flip", MoveSet::kSingleFlip)
      .value("block_swap", MoveSet::kBlockSwap);

  py::class_<AnnealSchedule>(m, "AnnealSchedule")
      .def(py::init<>())
      .def_readwrite("sweeps", &AnnealSchedule::sweeps)
      .def_readwrite("beta_start", &AnnealSchedule::beta_start)
      .def_readwrite("beta_end", &AnnealSchedule::beta_end)
      .def_readwrite("interpolation", &AnnealSchedule::interpolation)
      .def_readwrite("moves", &AnnealSchedule::moves)
      .def("beta_at", &AnnealSchedule::beta_at);
  m.def("default_schedule", &default_schedule);

  py::class_<SamplerConfig>(m, "SamplerConfig")
      .def(py::init<>())
      .def_readwrite("batch_size", &SamplerConfig::batch_size)
      .def_readwrite("lambda_", &SamplerConfig::lambda)
      .def_readwrite("perturb_enabled", &SamplerConfig::perturb_enabled)
      .def_readwrite("reverse_enabled", &SamplerConfig::reverse_enabled)
      .def_readwrite("s_star", &SamplerConfig::s_star)
      .def_readwrite("pause_sweeps", &SamplerConfig::pause_sweeps)
      .def_readwrite("rng_seed", &SamplerConfig::rng_seed)
      .def_readwrite("max_iterations", &SamplerConfig::max_iterations)
      .def_readwrite("target_isomers", &SamplerConfig::target_isomers)
      .def_readwrite("threads", &SamplerConfig::threads)
      .def_readwrite("keep_samples", &SamplerConfig::keep_samples)
      .def_readwrite("schedule", &SamplerConfig::schedule);

  py::class_<SampleRecord>(m, "SampleRecord")
      .def_readonly("bits", &SampleRecord::bits)
      .def_readonly("energy_original", &SampleRecord::energy_original)
      .def_readonly("energy_sampling", &SampleRecord::energy_sampling)
      .def_readonly("iteration", &SampleRecord::iteration)
      .def_readonly("chain_id", &SampleRecord::chain_id);

  py::class_<PipelineReport>(m, "PipelineReport")
      .def_readonly("iterations_used", &PipelineReport::iterations_used)
      .def_readonly("isomers_found", &PipelineReport::isomers_found)
      .def_readonly("reached_target", &PipelineReport::reached_target)
      .def_readonly("samples", &PipelineReport::samples)
      .def("to_json", [](const PipelineReport& r) { return report_to_json(r); });

  m.def("ground_energy", &ground_energy);
  m.def("simulated_anneal", &simulated_anneal, py::arg("problem"), py::arg("schedule"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("reverse_refine",
        [](const QuboProblem& p, const BitString& start, double s_star, int pause,
           const AnnealSchedule& schedule, std::uint64_t seed) {
          return reverse_refine(p, start, s_star, pause, schedule, seed);
        },
        py::arg("problem"), py::arg("start"), py::arg("s_star"), py::arg("pause_sweeps"),
        py::arg("schedule"), py::arg("seed"));
  m.def("run_pipeline", &run_pipeline, py::arg("problem"), py::arg("config"), py::arg("registry"),
        py::call_guard<py::gil_scoped_release>());
}

void bind_oracle(py::module_& m) {
  m.def("brute_force_ground_states", &oracle::brute_force_ground_states);
  m.def("brute_force_isomers", &oracle::brute_force_isomers);
  m.def("enumerate_free_trees", &oracle::enumerate_free_trees);
  m.def("constraint_check", [](const BitString& y, int n) { return oracle::constraint_check(y, n); });
}

void bind_analytics(py::module_& m) {
  m.def("hamming_report", [](const std::vector<BitString>& isomers, int n) {
    const auto r = analytics::hamming_report(isomers, n);
    return py::make_tuple(r.pairwise, r.per_isomer_min);
  }, "Returns (sorted pairwise distances, per-isomer minimum distances)");
  m.def("representative_encodings", [](int n) {
    py::list out;
    for (const auto& r : analytics::representative_encodings(n)) {
      out.append(py::make_tuple(r.certificate, r.sequence.degrees, r.encoding));
    }
    return out;
  });
  m.def("energy_histogram", [](const std::vector<SampleRecord>& samples, double offset) {
    return analytics::energy_histogram(samples, offset).bins;
  }, py::arg("samples"), py::arg("offset") = 0.0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Alkane isomer search on a degenerate QUBO";
  bind_qubo(m);
  bind_graph(m);
  bind_sampler(m);
  bind_oracle(m);
  bind_analytics(m);
}
