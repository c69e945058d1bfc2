#pragma once

#include <string>
#include <vector>

#include "povmkit/povm.hpp"

namespace povmkit {

/// Frobenius tolerance on |sum_e D_e| and on the support sandwich residual
/// of admissible perturbations.
inline constexpr double perturbation_tol = 1e-9;

/// The outer products |v_m><v_n| of support eigenvectors, per outcome.
///
/// A POVM is extremal exactly when this family is linearly independent; the
/// deficiency b = r - l counts its independent symmetric perturbations, i.e.
/// the dimension of the face of the POVM convex set the point lies on.
struct OuterProductFamily {
    struct Member {
        int outcome;
        int row;  // m of |v_m><v_n|
        int col;  // n of |v_m><v_n|
    };

    Eigen::Index dim = 0;
    std::vector<CMatrix> support_bases;  // per outcome, d x rank columns
    std::vector<int> ranks;
    std::vector<Member> members;  // lexicographic in (outcome, row, col)

    int total() const { return static_cast<int>(members.size()); }
    CMatrix member_matrix(std::size_t idx) const;
    /// d^2 x r matrix whose columns are the vectorized members.
    CMatrix vectorized() const;
};

OuterProductFamily outer_product_family(const Povm &p, const ToleranceConfig &cfg = {});

struct ScreenResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Outcomes of the cheap necessary conditions for extremality. Any failure
/// certifies non-extremality; passing all screens decides nothing.
struct ScreenReport {
    std::vector<ScreenResult> screens;
    bool all_passed = true;
};

ScreenReport quick_screen(const Povm &p, const ToleranceConfig &cfg = {});

struct ExtremalityReport {
    int r = 0;  // sum of squared support ranks
    int l = 0;  // rank of the outer-product family
    int b = 0;  // r - l, independent perturbations
    bool is_extremal = false;
    bool on_boundary = false;
    std::vector<ScreenResult> screens;
};

/// Full extremality/boundary analysis: counts the outer-product family,
/// ranks it, and evaluates the screens. is_extremal <=> b == 0;
/// on_boundary <=> some element has a nontrivial kernel.
ExtremalityReport face_dimension(const Povm &p, const ToleranceConfig &cfg = {});

/// Screens first (any failure is a certificate of non-extremality and skips
/// the rank computation), then decides by b == 0.
bool is_extremal(const Povm &p, const ToleranceConfig &cfg = {});

/// True iff some element has rank < d.
bool on_boundary(const Povm &p, const ToleranceConfig &cfg = {});

/// A direction D = {D_e} with sum_e D_e = 0 and Supp(D_e) inside Supp(P_e),
/// so that P +/- eps*D stay POVMs for small eps > 0.
struct Perturbation {
    std::vector<HermitianMatrix> deltas;

    Eigen::Index dim() const { return deltas.front().dim(); }
    int size() const { return static_cast<int>(deltas.size()); }
    double frobenius_norm() const;
};

/// Verifies the perturbation invariants against p; on failure *why (if given)
/// receives a one-line description.
bool is_admissible_perturbation(const Povm &p, const Perturbation &d,
                                const ToleranceConfig &cfg = {}, std::string *why = nullptr);

/// Basis of b(P) linearly independent admissible perturbations, built from
/// the Hermitian family of the support eigenvector outer products (diagonal
/// projectors plus real and imaginary parts of the off-diagonal products).
/// The independent subfamily is chosen greedily by column-pivoted
/// orthogonalization, ties broken by (outcome, row, col) order, and each
/// dependent member W yields one perturbation from its expansion W = sum c V.
/// Perturbations are normalized to unit total Frobenius norm.
/// Returns an empty list for extremal input.
std::vector<Perturbation> perturbation_basis(const Povm &p, const ToleranceConfig &cfg = {});

}  // namespace povmkit
