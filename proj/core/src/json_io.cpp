#include "povmkit/json_io.hpp"

#include <algorithm>

#include "json.hpp"

namespace povmkit {

namespace {

using nlohmann::json;

json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json &j, Eigen::Index dim, const char *what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
        throw FormatError(std::string(what) + ": expected " + std::to_string(dim) + " rows");
    }
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const json &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw FormatError(std::string(what) + ": expected " + std::to_string(dim) +
                              " entries per row");
        }
        for (Eigen::Index k = 0; k < dim; ++k) {
            const json &cell = row[static_cast<std::size_t>(k)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number()) {
                throw FormatError(std::string(what) + ": entries must be [re, im] pairs");
            }
            m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

json parse(const std::string &text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError("malformed JSON");
    return j;
}

Eigen::Index read_dim(const json &j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer()) {
        throw FormatError("expected an object with an integer \"dim\" field");
    }
    const auto dim = j["dim"].get<Eigen::Index>();
    if (dim < 1 || dim > 64) throw FormatError("dim out of supported range [1, 64]");
    return dim;
}

Povm povm_from_json_value(const json &j) {
    const Eigen::Index dim = read_dim(j);
    if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty()) {
        throw FormatError("POVM: expected a non-empty \"elements\" array");
    }
    std::vector<HermitianMatrix> elements;
    elements.reserve(j["elements"].size());
    for (const json &el : j["elements"]) {
        try {
            elements.push_back(HermitianMatrix(matrix_from_json(el, dim, "POVM element")));
        } catch (const std::invalid_argument &e) {
            throw FormatError(std::string("POVM element: ") + e.what());
        }
    }
    return Povm(std::move(elements));
}

json povm_to_json_value(const Povm &p) {
    json j;
    j["dim"] = p.dim();
    json elements = json::array();
    for (int e = 0; e < p.size(); ++e) elements.push_back(matrix_to_json(p.element(e).matrix()));
    j["elements"] = std::move(elements);
    return j;
}

}  // namespace

std::string povm_to_json(const Povm &p) { return povm_to_json_value(p).dump(); }

Povm povm_from_json(const std::string &text) { return povm_from_json_value(parse(text)); }

std::string density_to_json(const DensityMatrix &rho) {
    json j;
    j["dim"] = rho.dim();
    j["matrix"] = matrix_to_json(rho.matrix());
    return j.dump();
}

DensityMatrix density_from_json(const std::string &text) {
    const json j = parse(text);
    const Eigen::Index dim = read_dim(j);
    if (!j.contains("matrix")) throw FormatError("density matrix: missing \"matrix\" field");
    try {
        return DensityMatrix(HermitianMatrix(matrix_from_json(j["matrix"], dim, "density matrix")));
    } catch (const std::invalid_argument &e) {
        throw FormatError(std::string("density matrix: ") + e.what());
    }
}

CVector state_vector_from_json(const std::string &text) {
    const json j = parse(text);
    const Eigen::Index dim = read_dim(j);
    if (!j.contains("vector") || !j["vector"].is_array() ||
        static_cast<Eigen::Index>(j["vector"].size()) != dim) {
        throw FormatError("state vector: expected a \"vector\" array of length dim");
    }
    CVector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const json &cell = j["vector"][static_cast<std::size_t>(k)];
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
            throw FormatError("state vector: entries must be [re, im] pairs");
        }
        v(k) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
    return v;
}

std::string validation_to_json(const ValidationReport &report) {
    json j;
    j["passed"] = report.passed;
    j["completeness_residual"] = report.completeness_residual;
    j["completeness_ok"] = report.completeness_ok;
    json elements = json::array();
    for (const auto &check : report.elements) {
        elements.push_back({{"index", check.index},
                            {"min_eigenvalue", check.min_eigenvalue},
                            {"psd_ok", check.psd_ok}});
    }
    j["elements"] = std::move(elements);
    j["violations"] = report.violations;
    return j.dump();
}

std::string extremality_to_json(const ExtremalityReport &report) {
    json j;
    j["r"] = report.r;
    j["l"] = report.l;
    j["b"] = report.b;
    j["is_extremal"] = report.is_extremal;
    j["on_boundary"] = report.on_boundary;
    json screens = json::array();
    for (const auto &s : report.screens) {
        screens.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
    }
    j["screens"] = std::move(screens);
    return j.dump();
}

std::string decomposition_to_json(const Decomposition &dec) {
    json j;
    json weights = json::array();
    json extremals = json::array();
    for (const auto &entry : dec.entries) {
        weights.push_back(entry.weight);
        extremals.push_back(povm_to_json_value(entry.povm));
    }
    j["weights"] = std::move(weights);
    j["extremals"] = std::move(extremals);
    j["residual"] = recombination_residual(dec);
    j["tree_depth"] = dec.tree_depth;
    return j.dump();
}

std::pair<std::vector<double>, std::vector<Povm>> decomposition_parts_from_json(
    const std::string &text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("weights") || !j.contains("extremals") ||
        !j["weights"].is_array() || !j["extremals"].is_array() ||
        j["weights"].size() != j["extremals"].size() || j["weights"].empty()) {
        throw FormatError("decomposition: expected matching \"weights\" and \"extremals\" arrays");
    }
    std::vector<double> weights;
    std::vector<Povm> povms;
    for (std::size_t i = 0; i < j["weights"].size(); ++i) {
        if (!j["weights"][i].is_number()) throw FormatError("decomposition: weights must be numbers");
        weights.push_back(j["weights"][i].get<double>());
        povms.push_back(povm_from_json_value(j["extremals"][i]));
    }
    return {std::move(weights), std::move(povms)};
}

std::string probabilities_to_json(const std::vector<double> &probs) {
    json values = json::array();
    for (double p : probs) values.push_back(std::clamp(p, 0.0, 1.0));
    json j;
    j["probabilities"] = std::move(values);
    return j.dump();
}

}  // namespace povmkit
