#pragma once

#include "facefit/common.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace facefit {

using Json = nlohmann::json;

inline Json matrix_to_json(const MatX& m) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
    return a;
}

inline MatX matrix_from_json(const Json& a, Eigen::Index rows, Eigen::Index cols) {
    require(static_cast<Eigen::Index>(a.size()) == rows * cols, "json: array size mismatch");
    MatX m(rows, cols);
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = a[i++].get<double>();
    return m;
}

inline Json vector_to_json(const VecX& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline VecX vector_from_json(const Json& a) {
    VecX v(a.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = a[i].get<double>();
    return v;
}

inline void write_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(1, '\t') << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return Json::parse(in);
}

inline void check_format(const Json& j, const std::string& format, int version) {
    require(j.value("format", "") == format, "file is not a " + format + " container");
    require(j.value("version", -1) == version,
            "unsupported " + format + " version " + std::to_string(j.value("version", -1)));
}

} // namespace facefit
