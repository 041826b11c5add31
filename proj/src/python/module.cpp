#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "normopt/attainment.hpp"
#include "normopt/lineability.hpp"
#include "normopt/norm_solver.hpp"
#include "normopt/operators.hpp"
#include "normopt/report.hpp"
#include "normopt/sequence_space.hpp"
#include "normopt/spec_io.hpp"
#include "normopt/verify.hpp"

namespace py = pybind11;
using namespace normopt;

namespace {

SeqVec to_seqvec(const std::vector<double>& coords) { return SeqVec(coords); }

std::vector<double> from_seqvec(const SeqVec& v) { return v.coords(); }

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

SolverConfig make_config(double tol, int max_iter, int restarts,
                         std::uint64_t seed,
                         const std::vector<std::size_t>& ladder) {
  SolverConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  cfg.restarts = restarts;
  cfg.seed = seed;
  if (!ladder.empty()) cfg.ladder = ladder;
  return cfg;
}

DenseMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
  return DenseMatrix(rows);
}

MaximizingTrace trace_from_certificates(
    const OperatorSpec& spec, const std::vector<std::vector<double>>& certs) {
  MaximizingTrace trace;
  trace.p = spec.source_p();
  trace.q = spec.target_q();
  for (std::size_t i = 0; i < certs.size(); ++i) {
    SeqVec c = to_seqvec(certs[i]);
    double value = norm(apply(spec, c), spec.target_q());
    trace.steps.push_back({i + 2, std::move(c), value});
  }
  return trace;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "operator norms on sequence-space sections";

  py::class_<Partition>(m, "Partition")
      .def_static("dyadic", &Partition::dyadic)
      .def("element", &Partition::element, py::arg("k"), py::arg("j"))
      .def("locate", &Partition::locate, py::arg("n"))
      .def_property_readonly("rule", &Partition::rule);

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return spec_from_json(nlohmann::json::parse(text));
          },
          py::arg("text"))
      .def_static(
          "novo1",
          [](double p, double q) {
            return op_novo1(Exponent(p), Exponent(q));
          },
          py::arg("p") = 2.0, py::arg("q") = 2.0)
      .def_static(
          "reciprocal",
          [](double p, double q) {
            return op_reciprocal(Exponent(p), Exponent(q));
          },
          py::arg("p") = 2.0, py::arg("q") = 2.0)
      .def_static(
          "diagonal",
          [](const std::vector<double>& entries, double p, double q) {
            return OperatorSpec::diagonal(DiagonalRule::Explicit, Exponent(p),
                                          Exponent(q), entries);
          },
          py::arg("entries"), py::arg("p") = 2.0, py::arg("q") = 2.0)
      .def_static(
          "dense",
          [](const std::vector<std::vector<double>>& rows, double p,
             double q) {
            return OperatorSpec::dense(make_matrix(rows), Exponent(p),
                                       Exponent(q));
          },
          py::arg("rows"), py::arg("p") = 2.0, py::arg("q") = 2.0)
      .def_static(
          "disjoint_sum",
          [](const OperatorSpec& base,
             const std::vector<std::pair<double, std::uint64_t>>& terms) {
            std::vector<SumTerm> ts;
            for (const auto& [coeff, k] : terms) ts.push_back({coeff, k});
            return disjoint_sum(ts, base, dyadic_partition());
          },
          py::arg("base"), py::arg("terms"))
      .def("apply",
           [](const OperatorSpec& T, const std::vector<double>& x) {
             return from_seqvec(apply(T, to_seqvec(x)));
           })
      .def("finite_section",
           [](const OperatorSpec& T, std::size_t n) {
             DenseMatrix sec = finite_section(T, n);
             std::vector<std::vector<double>> rows(sec.rows);
             for (std::size_t i = 0; i < sec.rows; ++i) {
               rows[i].resize(sec.cols);
               for (std::size_t j = 0; j < sec.cols; ++j) {
                 rows[i][j] = sec.at(i, j);
               }
             }
             return rows;
           })
      .def("to_json",
           [](const OperatorSpec& T) { return spec_to_json(T).dump(); })
      .def_property_readonly(
          "p", [](const OperatorSpec& T) { return T.source_p().value(); })
      .def_property_readonly(
          "q", [](const OperatorSpec& T) { return T.target_q().value(); });

  m.def("interleave",
        [](const OperatorSpec& u, std::uint64_t k) {
          return interleave(u, k, dyadic_partition());
        },
        py::arg("u"), py::arg("k"));

  m.def("lp_norm",
        [](const std::vector<double>& x, double r) {
          return norm(to_seqvec(x), Exponent(r));
        },
        py::arg("x"), py::arg("r"));
  m.def("sup_norm",
        [](const std::vector<double>& x) { return sup_norm(to_seqvec(x)); });
  m.def("rearrange", [](const std::vector<double>& x) {
    return from_seqvec(rearrange(to_seqvec(x)));
  });
  m.def("duality_map",
        [](const std::vector<double>& y, double r) {
          return from_seqvec(duality_map(to_seqvec(y), Exponent(r)));
        },
        py::arg("y"), py::arg("r"));
  m.def("phi",
        [](double r, double X) { return phi(Exponent(r), X); }, py::arg("r"),
        py::arg("X"));
  m.def("splitting_bound_constants",
        [](double r, double eps) {
          SplittingConstants c = splitting_bound_constants(Exponent(r), eps);
          return std::make_pair(c.C, c.delta);
        },
        py::arg("r"), py::arg("eps"));
  m.def("concavity_check", &concavity_check, py::arg("alpha"), py::arg("beta"),
        py::arg("theta"));
  m.def("interpolation_bound",
        [](const std::vector<double>& x, double p, double eps) {
          InterpolationBound b =
              interpolation_bound(to_seqvec(x), Exponent(p), eps);
          return std::make_pair(b.lhs, b.rhs);
        },
        py::arg("x"), py::arg("p"), py::arg("eps"));
  m.def("scalar_dichotomy",
        [](double t, double p, double q) {
          return scalar_dichotomy(t, Exponent(p), Exponent(q));
        },
        py::arg("t"), py::arg("p"), py::arg("q"));
  m.def("cross_term",
        [](const std::vector<double>& Tu, const std::vector<double>& Tv,
           double q) {
          return cross_term(to_seqvec(Tu), to_seqvec(Tv), Exponent(q));
        },
        py::arg("Tu"), py::arg("Tv"), py::arg("q"));
  m.def("splitting_residual_q",
        [](const OperatorSpec& T, const std::vector<double>& u,
           const std::vector<double>& v, double q) {
          return splitting_residual_q(T, to_seqvec(u), to_seqvec(v),
                                      Exponent(q));
        },
        py::arg("T"), py::arg("u"), py::arg("v"), py::arg("q"));
  m.def("splitting_residual_p",
        [](const std::vector<double>& u, const std::vector<double>& w,
           double p) {
          return splitting_residual_p(to_seqvec(u), to_seqvec(w), Exponent(p));
        },
        py::arg("u"), py::arg("w"), py::arg("p"));

  m.def("power_norm",
        [](const std::vector<std::vector<double>>& rows, double p, double q,
           double tol, int max_iter, int restarts, std::uint64_t seed) {
          NormEstimate e = power_norm(make_matrix(rows), Exponent(p),
                                      Exponent(q),
                                      make_config(tol, max_iter, restarts,
                                                  seed, {}));
          return json_to_py(estimate_to_json(e));
        },
        py::arg("rows"), py::arg("p"), py::arg("q"), py::arg("tol") = 1e-10,
        py::arg("max_iter") = 400, py::arg("restarts") = 8,
        py::arg("seed") = 0);
  m.def("bruteforce_norm",
        [](const std::vector<std::vector<double>>& rows, double p, double q,
           int density) {
          NormEstimate e = bruteforce_norm(make_matrix(rows), Exponent(p),
                                           Exponent(q), density);
          return json_to_py(estimate_to_json(e));
        },
        py::arg("rows"), py::arg("p"), py::arg("q"), py::arg("density") = 0);
  m.def("ladder_norm",
        [](const OperatorSpec& spec, const std::vector<std::size_t>& ladder,
           double tol, int restarts, std::uint64_t seed) {
          LadderResult r = ladder_norm(
              spec, make_config(tol, 400, restarts, seed, ladder));
          nlohmann::ordered_json j;
          j["overall"] = estimate_to_json(r.overall);
          auto sections = nlohmann::ordered_json::array();
          for (const auto& s : r.sections) {
            sections.push_back(estimate_to_json(s));
          }
          j["sections"] = std::move(sections);
          return json_to_py(j);
        },
        py::arg("spec"), py::arg("ladder") = std::vector<std::size_t>{},
        py::arg("tol") = 1e-10, py::arg("restarts") = 8, py::arg("seed") = 0);

  m.def("diagnose",
        [](const OperatorSpec& spec, const std::vector<std::size_t>& ladder,
           int window, double tau, double tol, std::uint64_t seed) {
          DiagnoseConfig cfg;
          cfg.solver = make_config(tol, 400, 8, seed, ladder);
          cfg.window = window;
          cfg.tau = tau;
          DiagnoseOutcome out = diagnose_with_trace(spec, cfg);
          nlohmann::ordered_json j = attainment_to_json(out.report);
          j["trace"] = trace_to_json(out.trace);
          return json_to_py(j);
        },
        py::arg("spec"), py::arg("ladder") = std::vector<std::size_t>{},
        py::arg("window") = 32, py::arg("tau") = 1e-3, py::arg("tol") = 1e-10,
        py::arg("seed") = 0);
  m.def("weak_null_proxy",
        [](const OperatorSpec& spec,
           const std::vector<std::vector<double>>& certificates, int window,
           double tau) {
          return weak_null_proxy(trace_from_certificates(spec, certificates),
                                 window, tau);
        },
        py::arg("spec"), py::arg("certificates"), py::arg("window") = 32,
        py::arg("tau") = 1e-3);
  m.def("precompactness_check",
        [](const OperatorSpec& spec,
           const std::vector<std::vector<double>>& certificates,
           const std::vector<std::size_t>& ladder, double tol_cauchy,
           std::uint64_t seed) {
          MaximizingTrace trace =
              certificates.empty()
                  ? build_maximizing_sequence(
                        spec, make_config(1e-10, 400, 8, seed, ladder))
                  : trace_from_certificates(spec, certificates);
          PrecompactnessResult r =
              precompactness_check(spec, trace, tol_cauchy);
          return std::make_pair(r.is_cauchy_like, r.max_tail_gap);
        },
        py::arg("spec"),
        py::arg("certificates") = std::vector<std::vector<double>>{},
        py::arg("ladder") = std::vector<std::size_t>{},
        py::arg("tol_cauchy") = 1e-6, py::arg("seed") = 0);
  m.def("monotone_check",
        [](const OperatorSpec& spec, int samples, std::uint64_t seed) {
          MonotoneCheckResult r = monotone_check(
              spec, spec.source_p(), spec.target_q(), samples, seed);
          py::dict d;
          d["is_monotone_on_samples"] = r.is_monotone_on_samples;
          d["column_condition"] = r.column_condition;
          return d;
        },
        py::arg("spec"), py::arg("samples") = 64, py::arg("seed") = 0);
  m.def("theorem_monotone_verify",
        [](const OperatorSpec& spec, double p, double q, double eps,
           std::uint64_t seed) {
          DiagnoseConfig cfg;
          cfg.solver.seed = seed;
          AttainmentReport r = theorem_monotone_verify(
              spec, Exponent(p), Exponent(q), eps, cfg);
          return json_to_py(attainment_to_json(r));
        },
        py::arg("spec"), py::arg("p"), py::arg("q"), py::arg("eps"),
        py::arg("seed") = 0);
  m.def("block_extraction",
        [](const OperatorSpec& spec, double overlap_tol, int coeff_samples,
           std::uint64_t seed) {
          DiagnoseConfig cfg;
          cfg.solver.seed = seed;
          DiagnoseOutcome out = diagnose_with_trace(spec, cfg);
          BlockExtraction b = block_extraction(spec, out.trace, overlap_tol,
                                               coeff_samples, seed);
          py::dict d;
          py::list blocks;
          for (const auto& blk : b.blocks) blocks.append(from_seqvec(blk));
          d["blocks"] = blocks;
          d["isometry_defect"] = b.isometry_defect;
          d["image_equivalence_defect"] = b.image_equivalence_defect;
          d["image_constants"] =
              py::make_tuple(b.image_constant_lo, b.image_constant_hi);
          return d;
        },
        py::arg("spec"), py::arg("overlap_tol") = 1e-9,
        py::arg("coeff_samples") = 100, py::arg("seed") = 0);

  m.def("build_attaining_family",
        [](const OperatorSpec& u, const std::vector<double>& x0, int K) {
          return build_attaining_family(u, to_seqvec(x0), K,
                                        dyadic_partition());
        },
        py::arg("u"), py::arg("x0"), py::arg("K"));
  m.def("build_nonattaining_family",
        [](const OperatorSpec& T, int K) {
          return build_nonattaining_family(T, K, dyadic_partition());
        },
        py::arg("T"), py::arg("K"));
  m.def("verify_span_attains",
        [](const std::vector<OperatorSpec>& family,
           const std::vector<double>& x0, int coeff_samples,
           std::uint64_t seed) {
          return json_to_py(family_to_json(
              verify_span_attains(family, to_seqvec(x0), coeff_samples,
                                  seed)));
        },
        py::arg("family"), py::arg("x0"), py::arg("coeff_samples") = 32,
        py::arg("seed") = 0);
  m.def("verify_span_nonattaining",
        [](const std::vector<OperatorSpec>& family, int coeff_samples,
           int unit_samples, std::uint64_t seed) {
          return json_to_py(family_to_json(verify_span_nonattaining(
              family, coeff_samples, unit_samples, seed)));
        },
        py::arg("family"), py::arg("coeff_samples") = 16,
        py::arg("unit_samples") = 16, py::arg("seed") = 0);
  m.def("independence_check", &independence_check, py::arg("family"),
        py::arg("probe_count") = 16);

  m.def("run_suite",
        [](const std::string& name, std::uint64_t seed) {
          SuiteResult r = run_suite(name, seed);
          py::dict d;
          d["suite"] = r.suite;
          d["all_pass"] = r.all_pass();
          py::list checks;
          for (const auto& c : r.checks) {
            py::dict cd;
            cd["name"] = c.name;
            cd["pass"] = c.pass;
            cd["detail"] = c.detail;
            checks.append(cd);
          }
          d["checks"] = checks;
          return d;
        },
        py::arg("name"), py::arg("seed") = 0);
}
