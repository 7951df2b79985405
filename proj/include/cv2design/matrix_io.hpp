#pragma once

// JSON interchange for dense complex matrices:
//   {"rows": n, "cols": m, "re": [...], "im": [...]}
// with row-major entry order and re/im of length n*m.

#include <string>

#include <json.hpp>

#include "cv2design/opalg.hpp"

namespace cv2design {

nlohmann::json matrix_to_json(const ComplexMatrix& m);

// Validates field presence, array lengths and finiteness of every entry.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

void save_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

}  // namespace cv2design
