#pragma once

#include <string>

#include "gres/symplectic.hpp"

namespace gres {

// {"n": int, "ordering": "xxpp", "matrix": [[...2n...], ...2n rows]}
CovarianceMatrix cm_from_json(const std::string& text);
std::string cm_to_json(const CovarianceMatrix& gamma);

}  // namespace gres
