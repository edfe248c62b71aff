#include "gres/cm_json.hpp"

#include <json.hpp>

namespace gres {

CovarianceMatrix cm_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::InvalidArgument, "CM JSON must be an object");
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1)
        fail(ErrorKind::InvalidArgument, "CM JSON needs a positive integer \"n\"");
    if (!j.contains("ordering") || j["ordering"] != "xxpp")
        fail(ErrorKind::InvalidArgument, "CM JSON \"ordering\" must be \"xxpp\"");
    if (!j.contains("matrix") || !j["matrix"].is_array())
        fail(ErrorKind::InvalidArgument, "CM JSON needs a \"matrix\" array");
    const long n = j["n"].get<long>();
    const auto& rows = j["matrix"];
    if (static_cast<long>(rows.size()) != 2 * n)
        fail(ErrorKind::InvalidArgument, "matrix has " + std::to_string(rows.size()) + " rows, expected " +
                                             std::to_string(2 * n));
    Matrix m(2 * n, 2 * n);
    for (long i = 0; i < 2 * n; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<long>(row.size()) != 2 * n)
            fail(ErrorKind::InvalidArgument, "matrix row " + std::to_string(i) + " must have " +
                                                 std::to_string(2 * n) + " entries");
        for (long k = 0; k < 2 * n; ++k) {
            if (!row[k].is_number()) fail(ErrorKind::InvalidArgument, "matrix entries must be numbers");
            m(i, k) = row[k].get<double>();
        }
    }
    return CovarianceMatrix(m);
}

std::string cm_to_json(const CovarianceMatrix& gamma) {
    nlohmann::json j;
    j["n"] = gamma.modes();
    j["ordering"] = "xxpp";
    j["matrix"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < gamma.matrix().rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < gamma.matrix().cols(); ++k) row.push_back(gamma(i, k));
        j["matrix"].push_back(row);
    }
    return j.dump();
}

}  // namespace gres
