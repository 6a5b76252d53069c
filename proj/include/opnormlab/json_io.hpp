#pragma once

#include <json.hpp>

#include "opnormlab/matrix.hpp"
#include "opnormlab/sdp.hpp"
#include "opnormlab/tensornorm.hpp"

namespace opnormlab::json_io {

using nlohmann::json;

/// {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const json& j);

/// {"left_shape": [n1, n2], "right_shape": [m1, m2],
///  "pairs": [{"a": Matrix, "b": Matrix}, ...]}.
json element_to_json(const tensornorm::TensorElement& u);
tensornorm::TensorElement element_from_json(const json& j);

/// Self-describing block SDP: {"blocks": [n, ...], "objective": [Matrix, ...],
///  "constraints": [{"blocks": [Matrix, ...], "rhs": r}, ...]}.
json problem_to_json(const sdp::SdpProblem& p);
sdp::SdpProblem problem_from_json(const json& j);

json solution_to_json(const sdp::SdpSolution& s);
sdp::SdpSolution solution_from_json(const json& j);

}  // namespace opnormlab::json_io
