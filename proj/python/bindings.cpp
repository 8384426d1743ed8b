// Copyright 2026 The tokenprune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "tokenprune/cli.hpp"
#include "tokenprune/dominance.hpp"
#include "tokenprune/io.hpp"
#include "tokenprune/losses.hpp"
#include "tokenprune/lp.hpp"
#include "tokenprune/prune.hpp"
#include "tokenprune/reduce.hpp"
#include "tokenprune/scoring.hpp"
#include "tokenprune/verify.hpp"

namespace py = pybind11;
namespace tp = tokenprune;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

tp::Matrix to_matrix(const DoubleArray& a) {
  if (a.ndim() == 1) {
    return tp::Matrix(1, static_cast<std::size_t>(a.shape(0)),
                      std::vector<double>(a.data(), a.data() + a.size()));
  }
  if (a.ndim() != 2) throw tp::Error(tp::ErrorCode::kShapeMismatch, "expected a 2-D array");
  return tp::Matrix(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)),
                    std::vector<double>(a.data(), a.data() + a.size()));
}

std::vector<double> to_vector(const DoubleArray& a) {
  return std::vector<double>(a.data(), a.data() + a.size());
}

py::array_t<double> to_numpy(const tp::Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

tp::TokenMatrix doc_of(const DoubleArray& a, const std::string& id = "") {
  return tp::validate_token_matrix(tp::TokenMatrix(id, to_matrix(a)));
}

tp::QueryMatrix query_of(const DoubleArray& a) {
  return tp::validate_query_matrix(tp::QueryMatrix("", to_matrix(a)));
}

tp::PruneConfig config(double theta_lp, double lp_feas_tol, double svd_tol) {
  tp::PruneConfig cfg;
  cfg.theta_lp = theta_lp;
  cfg.lp_feas_tol = lp_feas_tol;
  cfg.svd_tol = svd_tol;
  tp::validate_config(cfg);
  return cfg;
}

py::object loss_to_py(const tp::LossValue& v) {
  py::object grad = v.gradient ? py::object(to_numpy(*v.gradient)) : py::none();
  return py::make_tuple(v.value, grad);
}

tp::LossKind loss_kind(const std::string& name) {
  if (name == "nuclear") return tp::LossKind::kNuclear;
  if (name == "sim") return tp::LossKind::kSim;
  if (name == "l1") return tp::LossKind::kL1;
  throw py::value_error("loss must be one of 'nuclear', 'sim', 'l1'");
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lossless dominance-based token pruning for late-interaction retrieval";

  static py::exception<tp::Error> error_type(m, "TokenpruneError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const tp::Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("code") = std::string(tp::error_code_name(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<tp::FeasibilityResult>(m, "FeasibilityResult")
      .def_property_readonly("feasible", &tp::FeasibilityResult::feasible)
      .def_readonly("witness", &tp::FeasibilityResult::witness)
      .def_readonly("certificate", &tp::FeasibilityResult::certificate)
      .def_readonly("iterations", &tp::FeasibilityResult::iterations);

  py::class_<tp::DominancePartition>(m, "DominancePartition")
      .def_readonly("doc_id", &tp::DominancePartition::doc_id)
      .def_readonly("kept", &tp::DominancePartition::kept)
      .def_readonly("pruned", &tp::DominancePartition::pruned)
      .def_property_readonly("evidence", [](const tp::DominancePartition& p) {
        std::vector<std::string> names;
        for (auto e : p.evidence) names.emplace_back(tp::evidence_name(e));
        return names;
      });

  py::class_<tp::CorpusIndex>(m, "CorpusIndex")
      .def(py::init<>())
      .def("add", [](tp::CorpusIndex& self, const std::string& id,
                     const DoubleArray& v) { self.add(tp::TokenMatrix(id, to_matrix(v))); })
      .def_property_readonly("dim", &tp::CorpusIndex::dim)
      .def("__len__", &tp::CorpusIndex::size)
      .def_property_readonly("total_tokens", &tp::CorpusIndex::total_tokens)
      .def("doc_ids", [](const tp::CorpusIndex& self) {
        std::vector<std::string> ids;
        for (const auto& d : self.docs()) ids.push_back(d.doc_id());
        return ids;
      })
      .def("vectors", [](const tp::CorpusIndex& self, std::size_t i) {
        if (i >= self.size()) throw py::index_error("document index out of range");
        return to_numpy(self.docs()[i].vectors());
      })
      .def("__eq__", [](const tp::CorpusIndex& a, const tp::CorpusIndex& b) { return a == b; });

  m.def("colbert_score", [](const DoubleArray& q, const DoubleArray& d) {
    return tp::colbert_score(query_of(q), doc_of(d));
  }, py::arg("query"), py::arg("doc"));
  m.def("colbert_p_score", [](const DoubleArray& q, const DoubleArray& d) {
    return tp::colbert_p_score(query_of(q), doc_of(d));
  }, py::arg("query"), py::arg("doc"));
  m.def("project", [](const DoubleArray& hidden, const DoubleArray& w1, const DoubleArray& w2) {
    return tp::project(to_vector(hidden), to_matrix(w1), to_matrix(w2));
  }, py::arg("hidden"), py::arg("w1"), py::arg("w2"));

  m.def("lp_feasible", [](const DoubleArray& a, const DoubleArray& b, double tol) {
    return tp::lp_feasible(to_matrix(a), to_vector(b), tol);
  }, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);

  m.def("self_match_prefilter", [](const DoubleArray& d) {
    return tp::self_match_prefilter(doc_of(d));
  }, py::arg("doc"));
  m.def("local_dominance_test", [](std::size_t i, const DoubleArray& d,
                                   std::vector<std::size_t> active, double tol) {
    tp::PruneConfig cfg;
    cfg.lp_feas_tol = tol;
    return tp::local_dominance_test(i, doc_of(d), active, cfg) == tp::LocalDominance::kDominated;
  }, py::arg("i"), py::arg("doc"), py::arg("active"), py::arg("tol") = 1e-9);
  m.def("global_partition", [](const DoubleArray& d, double tol) {
    return tp::global_partition(doc_of(d), config(1.0, tol, 1e-12));
  }, py::arg("doc"), py::arg("lp_feas_tol") = 1e-9);
  m.def("oracle_2d", [](const DoubleArray& d) { return tp::oracle_2d(doc_of(d)); },
        py::arg("doc"));
  m.def("falsify_by_sampling", [](const DoubleArray& d, const tp::DominancePartition& p,
                                  std::size_t samples, std::uint64_t seed) {
    return tp::falsify_by_sampling(doc_of(d), p, samples, seed);
  }, py::arg("doc"), py::arg("partition"), py::arg("samples"), py::arg("seed") = 0);

  m.def("svd", [](const DoubleArray& d) {
    const auto f = tp::svd(doc_of(d));
    return py::make_tuple(to_numpy(f.u), f.sigma, to_numpy(f.v));
  }, py::arg("doc"));
  m.def("select_rank", [](const std::vector<double>& sigma, double theta_lp) {
    return tp::select_rank(sigma, theta_lp);
  }, py::arg("sigma"), py::arg("theta_lp"));
  m.def("reduced_document", [](const DoubleArray& d, double theta_lp) {
    return to_numpy(tp::reduced_document(doc_of(d), theta_lp));
  }, py::arg("doc"), py::arg("theta_lp"));

  m.def("lp_prune", [](const DoubleArray& d, double theta_lp, double tol) {
    return tp::lp_prune(doc_of(d), config(theta_lp, tol, 1e-12));
  }, py::arg("doc"), py::arg("theta_lp") = 1.0, py::arg("lp_feas_tol") = 1e-9);
  m.def("norm_prune", [](const DoubleArray& d, double theta_n) {
    return tp::norm_prune(doc_of(d), theta_n);
  }, py::arg("doc"), py::arg("theta_n"));

  m.def("nuclear_loss", [](const DoubleArray& d) {
    return loss_to_py(tp::nuclear_loss(tp::TokenMatrix("", to_matrix(d))));
  }, py::arg("doc"));
  m.def("sim_loss", [](const DoubleArray& d, double eps) {
    return loss_to_py(tp::sim_loss(tp::TokenMatrix("", to_matrix(d)), eps));
  }, py::arg("doc"), py::arg("epsilon") = tp::kSimLossEpsilon);
  m.def("l1_loss", [](const DoubleArray& d) {
    return loss_to_py(tp::l1_loss(tp::TokenMatrix("", to_matrix(d))));
  }, py::arg("doc"));
  m.def("ir_loss", [](std::pair<double, double> s, std::pair<double, double> t,
                      std::vector<double> all) { return tp::ir_loss(s, t, all); },
        py::arg("student_hard"), py::arg("teacher_hard"), py::arg("student_all"));
  m.def("finite_diff_check", [](const std::string& kind, const DoubleArray& d, double step) {
    return tp::finite_diff_check(loss_kind(kind), tp::TokenMatrix("", to_matrix(d)), step);
  }, py::arg("loss"), py::arg("doc"), py::arg("step") = 1e-5);

  m.def("read_corpus_jsonl", py::overload_cast<const std::filesystem::path&>(&tp::read_corpus_jsonl));
  m.def("read_index_binary", py::overload_cast<const std::filesystem::path&>(&tp::read_index_binary));
  m.def("write_index_binary",
        py::overload_cast<const tp::CorpusIndex&, const std::filesystem::path&>(
            &tp::write_index_binary));
  m.def("load_corpus", &tp::load_corpus);

  m.def("prune_corpus", [](const tp::CorpusIndex& index, const std::string& strategy,
                           double theta, unsigned workers) {
    tp::PruneConfig cfg;
    cfg.workers = workers;
    if (strategy == "lp") {
      cfg.theta_lp = theta;
    } else if (strategy == "norm") {
      cfg.strategy = tp::Strategy::kNorm;
      cfg.theta_n = theta;
    } else {
      throw py::value_error("strategy must be 'lp' or 'norm'");
    }
    std::pair<tp::CorpusIndex, tp::PruneReport> result;
    {
      py::gil_scoped_release release;
      result = tp::prune_corpus(index, cfg);
    }
    return py::make_tuple(std::move(result.first), json_to_py(tp::to_json(result.second)));
  }, py::arg("index"), py::arg("strategy") = "lp", py::arg("theta") = 1.0,
        py::arg("workers") = 1);

  m.def("verify_lossless", [](const tp::CorpusIndex& original, const tp::CorpusIndex& pruned,
                              std::size_t samples, std::uint64_t seed, unsigned workers) {
    tp::VerifyReport report;
    {
      py::gil_scoped_release release;
      report = tp::verify_lossless(original, pruned, samples, seed, workers);
    }
    return json_to_py(tp::to_json(report));
  }, py::arg("original"), py::arg("pruned"), py::arg("samples") = 10000, py::arg("seed") = 0,
        py::arg("workers") = 1);

  m.def("rank_correlation", [](const DoubleArray& q, const tp::CorpusIndex& original,
                               const tp::CorpusIndex& pruned) {
    return tp::rank_correlation(query_of(q), original, pruned);
  }, py::arg("query"), py::arg("original"), py::arg("pruned"));

  m.def("cli_main", [](std::vector<std::string> args) {
    args.insert(args.begin(), "tokenprune");
    std::ostringstream out, err;
    const int code = tp::cli_main(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
