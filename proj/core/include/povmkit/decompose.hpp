#pragma once

#include <vector>

#include "povmkit/extremality.hpp"

namespace povmkit {

/// Maximal steps +/- along a perturbation that keep the POVM valid.
struct LineSearchResult {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
};

/// Bisection on the boundary indicator min_e lambda_min(P_e + lambda D_e):
/// lambda_plus (resp. lambda_minus) is the largest step in direction +D
/// (resp. -D) with the indicator still at the starting level, located to
/// absolute width line_search_tol. The initial bracket
/// 2 * max_e Tr[P_e] / max_e |extreme eigenvalue of D_e| always overshoots.
/// Throws std::invalid_argument for a zero or inadmissible direction.
LineSearchResult line_search_lambda(const Povm &p, const Perturbation &d,
                                    const ToleranceConfig &cfg = {});

struct SplitResult {
    double weight_plus = 0.0;
    Povm plus;
    double weight_minus = 0.0;
    Povm minus;
};

/// Convex split P = w+ P+ + w- P- with P± = P ± lambda± D and
/// w+ = lambda- / (lambda+ + lambda-), w- = lambda+ / (lambda+ + lambda-).
/// Both children lie on strictly smaller faces. Elements whose norm falls
/// below psd_abs_tol are snapped to exact zero.
SplitResult split(const Povm &p, const Perturbation &d, const ToleranceConfig &cfg = {});

struct TreeLeaf {
    double weight = 0.0;
    Povm povm;
    int depth = 0;
};

/// Raw binary splitting tree: leaves in depth-first order (+ branch first),
/// each weighted by the product of split weights along its root path.
/// Can hold up to 2^depth leaves; callers normally reduce afterwards.
struct TreeResult {
    std::vector<TreeLeaf> leaves;
    int max_depth = 0;
};

/// Recursively splits along the first member of the locally recomputed
/// perturbation basis until every node has b = 0. Recursion is capped at
/// d^2(N-1) + 2 levels; exceeding the cap throws std::runtime_error (it
/// signals rank-tolerance trouble, not a valid decomposition path).
TreeResult decompose_tree(const Povm &p, const ToleranceConfig &cfg = {});

struct DecompositionEntry {
    double weight = 0.0;
    Povm povm;
};

/// Convex decomposition into extremal POVMs.
struct Decomposition {
    std::vector<DecompositionEntry> entries;
    Povm source;
    int tree_depth = 0;
};

/// Sum over elements of the Frobenius distance between the weighted
/// recombination of the entries and the source.
double recombination_residual(const Decomposition &dec);

/// Full pipeline: splitting tree, duplicate-leaf merge, and a Caratheodory
/// reduction to at most d^2(N-1) + 1 entries. Extremal input yields a single
/// entry of weight 1.
Decomposition decompose_to_extremals(const Povm &p, const ToleranceConfig &cfg = {});

/// Caratheodory reduction: while more than d^2(N-1) + 1 entries remain, find
/// affine null-space coefficients of the difference vectors vec(P) - vec(P_i)
/// (smallest right singular vector, sign fixed so some coefficient is
/// positive), move the weights by the largest step keeping them nonnegative,
/// and drop the entries that reach zero. Recombination and weight sum are
/// preserved at every iteration.
Decomposition caratheodory_reduce(const Decomposition &dec, const ToleranceConfig &cfg = {});

}  // namespace povmkit
