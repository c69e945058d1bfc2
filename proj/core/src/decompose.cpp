#include "povmkit/decompose.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace povmkit {

namespace {

// Smallest eigenvalue for the line-search indicator. Qubit blocks take the
// closed 2x2 form; larger blocks go through the iterative solver.
double min_eig_fast(const CMatrix &m) {
    if (m.rows() == 1) return m(0, 0).real();
    if (m.rows() == 2) {
        const double a = m(0, 0).real();
        const double c = m(1, 1).real();
        const double half_gap = 0.5 * (a - c);
        return 0.5 * (a + c) - std::sqrt(half_gap * half_gap + std::norm(m(0, 1)));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

// min_e lambda_min(P_e + lambda * D_e), positive inside the POVM set,
// zero on its boundary, negative outside.
double indicator(const Povm &p, const Perturbation &d, double lambda) {
    double worst = std::numeric_limits<double>::infinity();
    for (int e = 0; e < p.size(); ++e) {
        const CMatrix m =
            p.element(e).matrix() + lambda * d.deltas[static_cast<std::size_t>(e)].matrix();
        worst = std::min(worst, min_eig_fast(m));
    }
    return worst;
}

Povm child_povm(const Povm &p, const Perturbation &d, double lambda,
                const ToleranceConfig &cfg) {
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(p.size()));
    for (int e = 0; e < p.size(); ++e) {
        HermitianMatrix h = p.element(e) + lambda * d.deltas[static_cast<std::size_t>(e)];
        if (h.frobenius_norm() <= cfg.psd_abs_tol) h = HermitianMatrix::zero(p.dim());
        elements.push_back(std::move(h));
    }
    return Povm(std::move(elements));
}

double element_distance(const Povm &a, const Povm &b) {
    double total = 0.0;
    for (int e = 0; e < a.size(); ++e) {
        total += (a.element(e).matrix() - b.element(e).matrix()).norm();
    }
    return total;
}

int affine_dim(const Povm &p) {
    return static_cast<int>(p.dim() * p.dim()) * (p.size() - 1);
}

}  // namespace

LineSearchResult line_search_lambda(const Povm &p, const Perturbation &d,
                                    const ToleranceConfig &cfg) {
    std::string why;
    if (!is_admissible_perturbation(p, d, cfg, &why)) {
        throw std::invalid_argument("line_search_lambda: " + why);
    }
    const double start = indicator(p, d, 0.0);
    if (start < -cfg.psd_abs_tol) {
        throw std::invalid_argument("line_search_lambda: POVM is not PSD within tolerance");
    }
    // Accept levels down to a hair below the starting one, so each split
    // descends by at most line_search_tol per level.
    const double floor_level = std::min(0.0, start) - cfg.line_search_tol;

    double max_trace = 0.0;
    for (int e = 0; e < p.size(); ++e) max_trace = std::max(max_trace, p.element(e).trace());

    auto search = [&](double sign) {
        // The element with the largest opposing eigenvalue limits the step:
        // lambda <= Tr[P_e] / |that eigenvalue|.
        double opposing = 0.0;
        for (int e = 0; e < p.size(); ++e) {
            const CMatrix m = sign * d.deltas[static_cast<std::size_t>(e)].matrix();
            opposing = std::max(opposing, -min_eig_fast(m));
        }
        if (!(opposing > 0.0)) {
            throw std::runtime_error("line_search_lambda: direction has no opposing eigenvalue");
        }
        double hi = 2.0 * std::max(max_trace, 1e-12) / opposing;
        int growth = 0;
        while (indicator(p, d, sign * hi) >= floor_level) {
            hi *= 2.0;
            if (++growth > 64) {
                throw std::runtime_error("line_search_lambda: bracket never left the POVM set");
            }
        }
        double lo = 0.0;
        for (int it = 0; it < 60 && hi - lo > cfg.line_search_tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (indicator(p, d, sign * mid) >= floor_level) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (hi - lo > cfg.line_search_tol) {
            throw std::runtime_error("line_search_lambda: bisection did not reach the target width");
        }
        return lo;
    };

    LineSearchResult result;
    result.lambda_plus = search(+1.0);
    result.lambda_minus = search(-1.0);
    return result;
}

SplitResult split(const Povm &p, const Perturbation &d, const ToleranceConfig &cfg) {
    const LineSearchResult ls = line_search_lambda(p, d, cfg);
    const double span = ls.lambda_plus + ls.lambda_minus;
    if (!(span > 10.0 * cfg.line_search_tol)) {
        throw std::runtime_error("split: direction admits no symmetric step");
    }
    return SplitResult{
        ls.lambda_minus / span,
        child_povm(p, d, ls.lambda_plus, cfg),
        ls.lambda_plus / span,
        child_povm(p, d, -ls.lambda_minus, cfg),
    };
}

TreeResult decompose_tree(const Povm &p, const ToleranceConfig &cfg) {
    TreeResult tree;
    const int cap = affine_dim(p) + 2;

    auto recurse = [&](auto &&self, const Povm &node, double weight, int depth) -> void {
        const ExtremalityReport report = face_dimension(node, cfg);
        if (report.b == 0) {
            tree.leaves.push_back({weight, node, depth});
            tree.max_depth = std::max(tree.max_depth, depth);
            return;
        }
        if (depth >= cap) {
            throw std::runtime_error(
                "decompose_tree: recursion cap exceeded; face dimension is not decreasing "
                "(check rank tolerances)");
        }
        const std::vector<Perturbation> basis = perturbation_basis(node, cfg);
        if (basis.empty()) {
            throw std::runtime_error("decompose_tree: b > 0 but no perturbation was constructed");
        }
        const SplitResult s = split(node, basis.front(), cfg);
        self(self, s.plus, weight * s.weight_plus, depth + 1);
        self(self, s.minus, weight * s.weight_minus, depth + 1);
    };
    recurse(recurse, p, 1.0, 0);
    return tree;
}

double recombination_residual(const Decomposition &dec) {
    const Eigen::Index d = dec.source.dim();
    double total = 0.0;
    for (int e = 0; e < dec.source.size(); ++e) {
        CMatrix sum = CMatrix::Zero(d, d);
        for (const auto &entry : dec.entries) {
            sum += entry.weight * entry.povm.element(e).matrix();
        }
        total += (sum - dec.source.element(e).matrix()).norm();
    }
    return total;
}

Decomposition decompose_to_extremals(const Povm &p, const ToleranceConfig &cfg) {
    const TreeResult tree = decompose_tree(p, cfg);

    Decomposition dec{{}, p, tree.max_depth};
    for (const auto &leaf : tree.leaves) {
        bool merged = false;
        for (auto &entry : dec.entries) {
            if (element_distance(entry.povm, leaf.povm) <= 1e-10) {
                entry.weight += leaf.weight;
                merged = true;
                break;
            }
        }
        if (!merged) dec.entries.push_back({leaf.weight, leaf.povm});
    }

    if (static_cast<int>(dec.entries.size()) > affine_dim(p) + 1) {
        dec = caratheodory_reduce(dec, cfg);
    }
    return dec;
}

Decomposition caratheodory_reduce(const Decomposition &dec, const ToleranceConfig &cfg) {
    (void)cfg;
    Decomposition out = dec;
    const int bound = affine_dim(out.source) + 1;
    const Eigen::Index d = out.source.dim();
    const Eigen::Index block = d * d;
    const Eigen::Index rows = 2 * block * out.source.size() + 1;

    const CVector source_vec = [&] {
        CVector v(block * out.source.size());
        for (int e = 0; e < out.source.size(); ++e) {
            v.segment(block * e, block) = vectorize(out.source.element(e).matrix());
        }
        return v;
    }();

    int guard = static_cast<int>(out.entries.size());
    while (static_cast<int>(out.entries.size()) > bound && guard-- > 0) {
        const int k = static_cast<int>(out.entries.size());
        // Any rows+1 columns are affinely dependent already, so a reduction
        // step never needs to look at more entries than that.
        const int subset = std::min<int>(k, static_cast<int>(rows) + 1);
        RMatrix m(rows, subset);
        for (int i = 0; i < subset; ++i) {
            CVector vi(block * out.source.size());
            for (int e = 0; e < out.source.size(); ++e) {
                vi.segment(block * e, block) =
                    vectorize(out.entries[static_cast<std::size_t>(i)].povm.element(e).matrix());
            }
            const CVector diff = source_vec - vi;
            m.col(i).head(diff.size()) = diff.real();
            m.col(i).segment(diff.size(), diff.size()) = diff.imag();
            // Affine row: forces sum lambda_i = 0, so the weight sum survives
            // the update exactly.
            m(rows - 1, i) = 1.0;
        }

        Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
        RVector lambda = svd.matrixV().col(subset - 1);
        if (lambda.maxCoeff() <= 0.0) lambda = -lambda;

        double mu = std::numeric_limits<double>::infinity();
        for (int i = 0; i < subset; ++i) {
            if (lambda(i) > 0.0) {
                mu = std::min(mu, out.entries[static_cast<std::size_t>(i)].weight / lambda(i));
            }
        }
        if (!std::isfinite(mu)) {
            throw std::runtime_error("caratheodory_reduce: no positive null-space coefficient");
        }

        std::vector<DecompositionEntry> next;
        next.reserve(out.entries.size());
        int dropped = 0;
        for (int i = 0; i < k; ++i) {
            const double w = i < subset
                                 ? out.entries[static_cast<std::size_t>(i)].weight - mu * lambda(i)
                                 : out.entries[static_cast<std::size_t>(i)].weight;
            if (i < subset && w <= 1e-12) {
                ++dropped;
                continue;
            }
            next.push_back({w, out.entries[static_cast<std::size_t>(i)].povm});
        }
        if (dropped == 0) {
            throw std::runtime_error("caratheodory_reduce: reduction step removed no entry");
        }
        out.entries = std::move(next);
    }

    double weight_sum = 0.0;
    for (const auto &entry : out.entries) weight_sum += entry.weight;
    if (!(weight_sum > 0.0)) {
        throw std::runtime_error("caratheodory_reduce: weights collapsed");
    }
    for (auto &entry : out.entries) entry.weight /= weight_sum;
    return out;
}

}  // namespace povmkit
