#pragma once

// JSON schemas for the library's value types and CSV formatting helpers.
//
//   StochMatrix  {"domain": [labels], "codomain": [labels],
//                 "entries": [[row of f_yx] per codomain label]}
//   ProbDist     {"space": [labels], "weights": [reals]}
//   DiagMap      {"domain": [labels], "codomain": [labels],
//                 "matrix_re": [[...]], "matrix_im": [[...]]}
//   complex matrix  {"re": [[...]], "im": [[...]]}
//   KrausChannel    {"operators": [complex matrices]}
//
// CSV output uses '.' decimals and 17 significant digits so values survive
// a round trip through text.

#include <string>

#include <json.hpp>

#include "stochdual/calgebra.hpp"
#include "stochdual/finstoch.hpp"
#include "stochdual/quantum.hpp"

namespace stochdual {

using json = nlohmann::json;

json to_json(const ProbDist& p);
ProbDist prob_dist_from_json(const json& j);

json to_json(const StochMatrix& f);
StochMatrix stoch_matrix_from_json(const json& j);

json to_json(const DiagMap& phi);
DiagMap diag_map_from_json(const json& j);

json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j);

json to_json(const KrausChannel& k);
KrausChannel kraus_channel_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

// 17 significant digits, C locale.
std::string format_real(double v);

}  // namespace stochdual
