#include "opnormlab/json_io.hpp"

#include <utility>

namespace opnormlab::json_io {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ShapeError(msg);
}

std::size_t get_size(const json& j, const char* key) {
  require(j.contains(key) && j[key].is_number_unsigned(), "expected unsigned field");
  return j[key].get<std::size_t>();
}

}  // namespace

json matrix_to_json(const ComplexMatrix& a) {
  json entries = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      entries.push_back({a(i, j).real(), a(i, j).imag()});
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  require(j.is_object(), "matrix JSON must be an object");
  const std::size_t rows = get_size(j, "rows");
  const std::size_t cols = get_size(j, "cols");
  require(j.contains("entries") && j["entries"].is_array(), "matrix entries missing");
  const json& entries = j["entries"];
  require(entries.size() == rows * cols, "matrix entry count mismatch");
  ComplexMatrix a(rows, cols);
  std::size_t t = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c, ++t) {
      const json& e = entries[t];
      require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
              "matrix entry must be [re, im]");
      a(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  return a;
}

json element_to_json(const tensornorm::TensorElement& u) {
  json pairs = json::array();
  for (const auto& [a, b] : u.pairs())
    pairs.push_back({{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}});
  return json{{"left_shape", {u.left_rows(), u.left_cols()}},
              {"right_shape", {u.right_rows(), u.right_cols()}},
              {"pairs", std::move(pairs)}};
}

tensornorm::TensorElement element_from_json(const json& j) {
  require(j.is_object() && j.contains("pairs") && j["pairs"].is_array(),
          "tensor element JSON must carry a pairs array");
  std::vector<tensornorm::TensorElement::Pair> pairs;
  for (const json& p : j["pairs"]) {
    require(p.is_object() && p.contains("a") && p.contains("b"),
            "tensor element pair must carry a and b");
    pairs.emplace_back(matrix_from_json(p["a"]), matrix_from_json(p["b"]));
  }
  tensornorm::TensorElement u(std::move(pairs));
  if (j.contains("left_shape")) {
    const json& ls = j["left_shape"];
    require(ls.is_array() && ls.size() == 2 && ls[0].get<std::size_t>() == u.left_rows() &&
                ls[1].get<std::size_t>() == u.left_cols(),
            "left_shape does not match pairs");
  }
  if (j.contains("right_shape")) {
    const json& rs = j["right_shape"];
    require(rs.is_array() && rs.size() == 2 && rs[0].get<std::size_t>() == u.right_rows() &&
                rs[1].get<std::size_t>() == u.right_cols(),
            "right_shape does not match pairs");
  }
  return u;
}

json problem_to_json(const sdp::SdpProblem& p) {
  json blocks = json::array();
  for (std::size_t d : p.block_dims()) blocks.push_back(d);
  json objective = json::array();
  for (const ComplexMatrix& c : p.objective()) objective.push_back(matrix_to_json(c));
  json constraints = json::array();
  for (const auto& con : p.constraints()) {
    json mats = json::array();
    for (const ComplexMatrix& a : con.blocks) mats.push_back(matrix_to_json(a));
    constraints.push_back({{"blocks", std::move(mats)}, {"rhs", con.rhs}});
  }
  return json{{"blocks", std::move(blocks)},
              {"objective", std::move(objective)},
              {"constraints", std::move(constraints)}};
}

sdp::SdpProblem problem_from_json(const json& j) {
  require(j.is_object() && j.contains("blocks") && j["blocks"].is_array(),
          "SDP JSON must carry block dims");
  std::vector<std::size_t> dims;
  for (const json& d : j["blocks"]) {
    require(d.is_number_unsigned(), "block dims must be unsigned");
    dims.push_back(d.get<std::size_t>());
  }
  sdp::SdpProblem p(std::move(dims));
  if (j.contains("objective")) {
    std::vector<ComplexMatrix> obj;
    for (const json& m : j["objective"]) obj.push_back(matrix_from_json(m));
    p.set_objective(std::move(obj));
  }
  if (j.contains("constraints")) {
    for (const json& con : j["constraints"]) {
      require(con.is_object() && con.contains("blocks") && con.contains("rhs") &&
                  con["rhs"].is_number(),
              "constraint must carry blocks and rhs");
      std::vector<ComplexMatrix> mats;
      for (const json& m : con["blocks"]) mats.push_back(matrix_from_json(m));
      p.add_constraint(std::move(mats), con["rhs"].get<double>());
    }
  }
  return p;
}

json solution_to_json(const sdp::SdpSolution& s) {
  json blocks = json::array();
  for (const ComplexMatrix& x : s.primal_blocks) blocks.push_back(matrix_to_json(x));
  return json{{"status", sdp::status_name(s.status)},
              {"primal_value", s.primal_value},
              {"dual_value", s.dual_value},
              {"relative_gap", s.relative_gap},
              {"primal_residual", s.primal_residual},
              {"dual_residual", s.dual_residual},
              {"iterations", s.iterations},
              {"constraints_dependent", s.constraints_dependent},
              {"primal_blocks", std::move(blocks)},
              {"dual_vector", s.dual_vector}};
}

sdp::SdpSolution solution_from_json(const json& j) {
  require(j.is_object() && j.contains("status"), "solution JSON must carry status");
  sdp::SdpSolution s;
  const std::string st = j["status"].get<std::string>();
  if (st == "optimal")
    s.status = sdp::SdpStatus::optimal;
  else if (st == "max_iterations")
    s.status = sdp::SdpStatus::max_iterations;
  else if (st == "infeasible_suspected")
    s.status = sdp::SdpStatus::infeasible_suspected;
  else
    throw ShapeError("unknown SDP status string");
  s.primal_value = j.value("primal_value", 0.0);
  s.dual_value = j.value("dual_value", 0.0);
  s.relative_gap = j.value("relative_gap", 0.0);
  s.primal_residual = j.value("primal_residual", 0.0);
  s.dual_residual = j.value("dual_residual", 0.0);
  s.iterations = j.value("iterations", std::size_t{0});
  s.constraints_dependent = j.value("constraints_dependent", false);
  if (j.contains("primal_blocks"))
    for (const json& m : j["primal_blocks"]) s.primal_blocks.push_back(matrix_from_json(m));
  if (j.contains("dual_vector"))
    for (const json& v : j["dual_vector"]) s.dual_vector.push_back(v.get<double>());
  return s;
}

}  // namespace opnormlab::json_io
