#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "opnormlab/cli.hpp"
#include "opnormlab/cocycle.hpp"
#include "opnormlab/counterexample.hpp"
#include "opnormlab/linalg.hpp"
#include "opnormlab/random.hpp"
#include "opnormlab/sdp.hpp"
#include "opnormlab/superop.hpp"
#include "opnormlab/tensornorm.hpp"

namespace py = pybind11;
using opnormlab::ComplexMatrix;
using opnormlab::cplx;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using PairList = std::vector<std::pair<CArray, CArray>>;

ComplexMatrix to_matrix(const CArray& arr) {
  if (arr.ndim() != 2) throw py::value_error("expected a 2-D array");
  ComplexMatrix out(static_cast<std::size_t>(arr.shape(0)),
                    static_cast<std::size_t>(arr.shape(1)));
  auto view = arr.unchecked<2>();
  for (py::ssize_t i = 0; i < arr.shape(0); ++i)
    for (py::ssize_t j = 0; j < arr.shape(1); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = view(i, j);
  return out;
}

py::array_t<cplx> from_matrix(const ComplexMatrix& a) {
  py::array_t<cplx> arr({a.rows(), a.cols()});
  auto view = arr.mutable_unchecked<2>();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = a(i, j);
  return arr;
}

opnormlab::tensornorm::TensorElement to_element(const PairList& pairs) {
  std::vector<opnormlab::tensornorm::TensorElement::Pair> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.emplace_back(to_matrix(a), to_matrix(b));
  return opnormlab::tensornorm::TensorElement(std::move(out));
}

opnormlab::superop::Superoperator to_superop(const PairList& pairs) {
  std::vector<opnormlab::superop::Superoperator::Pair> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.emplace_back(to_matrix(a), to_matrix(b));
  return opnormlab::superop::Superoperator(std::move(out));
}

py::list from_pairs(const std::vector<opnormlab::superop::Superoperator::Pair>& pairs) {
  py::list out;
  for (const auto& [a, b] : pairs) out.append(py::make_tuple(from_matrix(a), from_matrix(b)));
  return out;
}

opnormlab::linalg::Schatten parse_p(const std::string& p) {
  if (p == "1" || p == "one") return opnormlab::linalg::Schatten::one;
  if (p == "2" || p == "two") return opnormlab::linalg::Schatten::two;
  if (p == "inf" || p == "infinity") return opnormlab::linalg::Schatten::inf;
  throw py::value_error("p must be one of '1', '2', 'inf'");
}

opnormlab::linalg::Leg parse_leg(const std::string& leg) {
  if (leg == "first") return opnormlab::linalg::Leg::first;
  if (leg == "second") return opnormlab::linalg::Leg::second;
  throw py::value_error("leg must be 'first' or 'second'");
}

py::dict certificate_dict(const opnormlab::tensornorm::Theorem1Report& c) {
  py::dict d;
  d["lower"] = c.lower;
  d["upper"] = c.upper;
  d["consistent"] = c.consistent;
  return d;
}

const char* verdict_name(opnormlab::superop::InterpolationVerdict v) {
  switch (v) {
    case opnormlab::superop::InterpolationVerdict::holds: return "holds";
    case opnormlab::superop::InterpolationVerdict::inconclusive: return "inconclusive";
    default: return "failed";
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-dimensional operator-space tensor norm laboratory";
  m.attr("__version__") = opnormlab::cli::kVersion;

  py::register_exception<opnormlab::ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<opnormlab::SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<opnormlab::NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def(
      "spectral_norm", [](const CArray& a) { return opnormlab::linalg::spectral_norm(to_matrix(a)); },
      py::arg("a"), "largest singular value");
  m.def(
      "schatten_norm",
      [](const CArray& a, const std::string& p) {
        return opnormlab::linalg::schatten_norm(to_matrix(a), parse_p(p));
      },
      py::arg("a"), py::arg("p"), "Schatten p-norm for p in {'1','2','inf'}");
  m.def(
      "singular_values",
      [](const CArray& a) {
        const auto svd = opnormlab::linalg::svd(to_matrix(a));
        return py::array_t<double>(static_cast<py::ssize_t>(svd.singular_values.size()),
                                   svd.singular_values.data());
      },
      py::arg("a"), "singular values, descending");
  m.def(
      "partial_transpose",
      [](const CArray& x, std::size_t m_, std::size_t n_, const std::string& leg) {
        return from_matrix(opnormlab::linalg::partial_transpose(to_matrix(x), m_, n_,
                                                                parse_leg(leg)));
      },
      py::arg("x"), py::arg("m"), py::arg("n"), py::arg("leg"),
      "transpose one tensor factor of an (m*n) x (m*n) matrix");

  m.def(
      "min_norm", [](const PairList& u) { return opnormlab::tensornorm::min_norm(to_element(u)); },
      py::arg("pairs"), "minimal tensor norm of sum_i a_i (x) b_i");
  m.def(
      "haagerup_upper",
      [](const PairList& u) { return opnormlab::tensornorm::haagerup_upper(to_element(u)); },
      py::arg("pairs"), "balanced Haagerup-type upper bound from the representation");
  m.def(
      "projective_upper",
      [](const PairList& u) { return opnormlab::tensornorm::projective_upper(to_element(u)); },
      py::arg("pairs"), "sum of spectral norm products");
  m.def(
      "haagerup_optimize",
      [](const PairList& u, std::size_t restarts, std::size_t iterations, std::uint64_t seed) {
        opnormlab::tensornorm::HaagerupOptimizeOptions opt;
        opt.restarts = restarts;
        opt.iterations = iterations;
        opt.seed = seed;
        const auto r = opnormlab::tensornorm::haagerup_optimize(to_element(u), opt);
        py::dict d;
        d["value"] = r.value;
        d["restarts_used"] = r.restarts_used;
        d["rejected_evals"] = r.rejected_evals;
        return d;
      },
      py::arg("pairs"), py::arg("restarts") = 8, py::arg("iterations") = 300,
      py::arg("seed") = 1, "gauge-descent refinement of haagerup_upper");
  m.def(
      "opposite",
      [](const PairList& u, const std::string& leg) {
        const auto v = opnormlab::tensornorm::opposite(to_element(u), parse_leg(leg));
        std::vector<opnormlab::superop::Superoperator::Pair> pairs(v.pairs().begin(),
                                                                   v.pairs().end());
        return from_pairs(pairs);
      },
      py::arg("pairs"), py::arg("leg") = "second",
      "transpose one leg after zero-padding it square");
  m.def(
      "theorem1_certificate",
      [](const PairList& u) {
        return certificate_dict(opnormlab::tensornorm::theorem1_certificate(to_element(u)));
      },
      py::arg("pairs"), "min-norm lower vs projective upper certificate");

  m.def(
      "gap_experiment",
      [](std::size_t nmax, std::size_t d) {
        py::list rows;
        for (const auto& row : opnormlab::counterexample::gap_experiment(nmax, d)) {
          py::dict r;
          r["n"] = row.n;
          r["h_upper"] = row.h_upper;
          r["min_flipped"] = row.min_flipped;
          r["ratio"] = row.ratio;
          r["certificate"] = certificate_dict(row.certificate);
          rows.append(std::move(r));
        }
        return rows;
      },
      py::arg("nmax"), py::arg("d") = 1,
      "Haagerup-vs-min gap table for the shift family, rows n = 2..nmax");

  m.def(
      "s2_norm", [](const PairList& u) { return opnormlab::superop::s2_norm(to_superop(u)); },
      py::arg("pairs"), "Schatten-2 induced norm of c -> sum_i a_i c b_i");
  m.def(
      "schatten_induced_lower",
      [](const PairList& u, const std::string& p, std::size_t restarts,
         std::size_t iterations, std::uint64_t seed) {
        opnormlab::superop::SeesawOptions opt;
        opt.restarts = restarts;
        opt.iterations = iterations;
        opt.seed = seed;
        return opnormlab::superop::schatten_induced_lower(to_superop(u), parse_p(p), opt);
      },
      py::arg("pairs"), py::arg("p"), py::arg("restarts") = 16, py::arg("iterations") = 100,
      py::arg("seed") = 1, "seesaw witness lower bound for the induced p -> p norm");
  m.def(
      "interpolation_check",
      [](const PairList& u, std::size_t restarts, std::uint64_t seed) {
        opnormlab::superop::SeesawOptions opt;
        opt.restarts = restarts;
        opt.seed = seed;
        const auto rep = opnormlab::superop::interpolation_check(to_superop(u), opt);
        py::dict d;
        d["s2"] = rep.s2;
        d["lower1"] = rep.lower1;
        d["lower_inf"] = rep.lower_inf;
        d["rt_bound_holds"] = rep.rt_bound_holds;
        d["verdict"] = verdict_name(rep.verdict);
        d["restarts"] = rep.restarts;
        return d;
      },
      py::arg("pairs"), py::arg("restarts") = 16, py::arg("seed") = 1,
      "Riesz-Thorin midpoint bound s2^2 <= lower1 * lower_inf");

  m.def(
      "choi", [](const PairList& u) { return from_matrix(opnormlab::superop::choi(to_superop(u))); },
      py::arg("pairs"), "Choi matrix J[(i,k),(j,l)] = Phi(E_ij)[k,l]");
  m.def(
      "kraus_from_choi",
      [](const CArray& j, std::size_t d_in, std::size_t d_out) {
        return from_pairs(
            opnormlab::superop::kraus_from_choi(to_matrix(j), d_in, d_out).pairs());
      },
      py::arg("choi"), py::arg("d_in"), py::arg("d_out"),
      "operator-Schmidt pair recovery from a Choi matrix");
  m.def(
      "identity_map", [](std::size_t d) { return from_pairs(opnormlab::superop::identity_map(d).pairs()); },
      py::arg("d"));
  m.def(
      "transpose_map", [](std::size_t d) { return from_pairs(opnormlab::superop::transpose_map(d).pairs()); },
      py::arg("d"));
  m.def(
      "diamond_norm",
      [](const PairList& u) { return opnormlab::superop::diamond_norm(to_superop(u)); },
      py::arg("pairs"), "completely bounded trace norm via the Watrous SDP");
  m.def(
      "cb_operator_norm",
      [](const PairList& u) { return opnormlab::superop::cb_operator_norm(to_superop(u)); },
      py::arg("pairs"), "completely bounded operator norm");

  m.def(
      "spectral_norm_via_sdp",
      [](const CArray& a) {
        const auto r = opnormlab::sdp::spectral_norm_via_sdp(to_matrix(a));
        py::dict d;
        d["value"] = r.value;
        d["gap"] = r.gap;
        d["iterations"] = r.iterations;
        d["status"] = opnormlab::sdp::status_name(r.status);
        return d;
      },
      py::arg("a"), "spectral norm through the interior-point SDP solver");

  m.def(
      "cocycle_report",
      [](std::size_t degree, std::uint64_t seed) {
        namespace cc = opnormlab::cocycle;
        const cc::TruncatedPoly tp = cc::truncated_poly(degree);
        const cc::FinAlgebra ta = cc::tensor_algebra(tp.algebra, tp.algebra);
        const cc::FinModule tm = cc::tensor_module(tp.module, tp.module);
        const cc::Cochain2 f = cc::wedge_cocycle(tp.algebra, tp.algebra, tp.module,
                                                 tp.module, tp.derivation, tp.derivation);
        const auto witness = cc::nonvanishing_witness(tp.algebra, tp.algebra, tp.derivation,
                                                      tp.derivation, f, seed);
        const auto polar = cc::polarization_check(tp.algebra, seed, 200);
        const auto spans = cc::power_span_check(tp.algebra);
        py::dict d;
        d["degree"] = degree;
        d["cocycle"] = cc::cocycle_check(f, ta, tm);
        d["antisymmetric"] = cc::antisymmetry_check(f);
        d["witness_found"] = witness.has_value();
        d["witness_value_norm"] = witness ? witness->value_norm : 0.0;
        d["witness_identity_residual"] = witness ? witness->identity_residual : 0.0;
        d["polarization"] = polar.ok;
        d["span_pair_equal"] = spans.pair_equal;
        d["span_quartic_equal"] = spans.quartic_equal;
        return d;
      },
      py::arg("degree"), py::arg("seed") = 1,
      "wedge 2-cocycle suite on the truncated polynomial algebra");
}
