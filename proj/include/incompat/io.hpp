#pragma once

#include "incompat/povm.hpp"

#include <json.hpp>

#include <string>
#include <utility>

namespace incompat {
namespace io {

/// {"dim": d, "re": [[...]], "im": [[...]]}, row-major.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json effect_to_json(const BinaryObservable& M);
BinaryObservable effect_from_json(const nlohmann::json& j);

/// Pair file: {"M": matrix, "N": matrix}; effects validated on load.
std::pair<BinaryObservable, BinaryObservable> load_pair(const std::string& path);
void save_pair(const std::string& path, const BinaryObservable& M, const BinaryObservable& N);

}  // namespace io
}  // namespace incompat
