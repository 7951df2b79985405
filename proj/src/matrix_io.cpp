#include "cv2design/matrix_io.hpp"

#include <cmath>
#include <fstream>

namespace cv2design {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(size_t(m.size()));
    im.reserve(size_t(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    for (const char* key : {"rows", "cols", "re", "im"}) {
        if (!j.contains(key)) {
            throw ParameterError(std::string("matrix_from_json: missing \"") +
                                 key + "\"");
        }
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0) {
        throw DimensionError("matrix_from_json: non-positive shape");
    }
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (Eigen::Index(re.size()) != rows * cols ||
        Eigen::Index(im.size()) != rows * cols) {
        throw DimensionError(
            "matrix_from_json: re/im length does not match rows*cols");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const size_t k = size_t(r * cols + c);
            const double x = re.at(k).get<double>();
            const double y = im.at(k).get<double>();
            if (!std::isfinite(x) || !std::isfinite(y)) {
                throw NumericalError("matrix_from_json: non-finite entry");
            }
            m(r, c) = Complex(x, y);
        }
    }
    return m;
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ParameterError("save_matrix: cannot open " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("load_matrix: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("load_matrix: bad JSON: ") + e.what());
    }
    return matrix_from_json(j);
}

}  // namespace cv2design
