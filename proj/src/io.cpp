#include "incompat/io.hpp"

#include <fstream>
#include <stdexcept>

namespace incompat {
namespace io {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    const int d = static_cast<int>(m.rows());
    json re = json::array(), im = json::array();
    for (int i = 0; i < d; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < d; ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"dim", d}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("matrix json: expected keys dim, re, im");
    const int d = j.at("dim").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
        throw std::invalid_argument("matrix json: row count does not match dim");
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(re[i].size()) != d || static_cast<int>(im[i].size()) != d)
            throw std::invalid_argument("matrix json: column count does not match dim");
        for (int k = 0; k < d; ++k)
            m(i, k) = cxd(re[i][k].get<double>(), im[i][k].get<double>());
    }
    return m;
}

json effect_to_json(const BinaryObservable& M) { return matrix_to_json(M.effect().mat()); }

BinaryObservable effect_from_json(const json& j) {
    return BinaryObservable(HermitianOperator(matrix_from_json(j)));
}

std::pair<BinaryObservable, BinaryObservable> load_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pair file: " + path);
    json j = json::parse(in);
    if (!j.contains("M") || !j.contains("N"))
        throw std::invalid_argument("pair file: expected keys M and N");
    return {effect_from_json(j.at("M")), effect_from_json(j.at("N"))};
}

void save_pair(const std::string& path, const BinaryObservable& M, const BinaryObservable& N) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pair file: " + path);
    out << json{{"M", effect_to_json(M)}, {"N", effect_to_json(N)}}.dump(2) << "\n";
}

}  // namespace io
}  // namespace incompat
