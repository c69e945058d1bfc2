#pragma once

#include <vector>

#include "povmkit/povm.hpp"

namespace povmkit {

/// One qubit POVM element in the form P = alpha * (I + n . sigma).
/// alpha > 0 for retained elements, |n| <= 1, and |n| = 1 exactly for
/// rank-one elements. Across a POVM: sum alpha = 1 and sum alpha*n = 0.
struct BlochElement {
    double alpha = 0.0;
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
};

/// Bloch parametrization of a qubit POVM with no zero elements
/// (prune first). alpha_e = Tr[P_e]/2, n_e = Tr[P_e sigma]/(2 alpha_e).
std::vector<BlochElement> bloch_form(const Povm &p);

/// Inverse of bloch_form. Throws std::invalid_argument when the weights or
/// vectors violate the qubit POVM constraints.
Povm from_bloch(const std::vector<BlochElement> &elems);

/// Closed-form extremality verdict for qubit POVMs: after pruning zeros,
/// N = 1 requires the identity; all-rank-one POVMs are classified by the
/// geometry of their unit vectors (pairwise non-proportional for N = 2, 3;
/// additionally non-coplanar for N = 4; never extremal for N >= 5).
/// Cases with a higher-rank element and 2 <= N <= 4 are delegated to the
/// general rank-based checker.
bool classify_qubit_extremal(const Povm &p, const ToleranceConfig &cfg = {});

/// Five rank-one elements with weight 1/5 and unit vectors at the vertices
/// of a regular pentagon in the equatorial plane. Pairwise disjoint supports
/// but not extremal (b = 2).
Povm pentagon_povm();

/// Three rank-one elements with weight 1/3 at 120 degrees in a plane. Extremal.
Povm trine_povm();

/// Four rank-one elements with weight 1/4 at regular tetrahedron vertices. Extremal.
Povm tetrahedron_povm();

/// Four rank-one elements made of two antipodal pairs in one plane:
/// directions at angles theta1, theta1+pi, theta2, theta2+pi with weights
/// (a/2, a/2, (1-a)/2, (1-a)/2). Coplanar, hence never extremal.
Povm coplanar_quad_povm(double theta1, double theta2, double a);

/// Random qubit POVM mixing rank-one and full-rank elements.
Povm random_qubit_povm(int outcomes, std::mt19937_64 &rng);

}  // namespace povmkit
