#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "povmkit/decompose.hpp"
#include "povmkit/extremality.hpp"
#include "povmkit/povm.hpp"

namespace povmkit {

/// Raised on malformed or out-of-schema JSON input.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// POVM wire format: {"dim": d, "elements": [matrix, ...]} where a matrix is
// a row-major d x d array of [re, im] pairs. Numbers are emitted with full
// round-trip precision, so parse(dump(p)) == p exactly.
std::string povm_to_json(const Povm &p);
Povm povm_from_json(const std::string &text);

// Density matrix wire format: {"dim": d, "matrix": [[[re, im], ...], ...]}.
std::string density_to_json(const DensityMatrix &rho);
DensityMatrix density_from_json(const std::string &text);

// Fiducial vector wire format: {"dim": d, "vector": [[re, im], ...]}.
CVector state_vector_from_json(const std::string &text);

std::string validation_to_json(const ValidationReport &report);
std::string extremality_to_json(const ExtremalityReport &report);

// {"weights": [...], "extremals": [POVM, ...], "residual": r, "tree_depth": t}
std::string decomposition_to_json(const Decomposition &dec);
std::pair<std::vector<double>, std::vector<Povm>> decomposition_parts_from_json(const std::string &text);

// {"probabilities": [...]}; values are clamped into [0, 1] for presentation.
std::string probabilities_to_json(const std::vector<double> &probs);

}  // namespace povmkit
