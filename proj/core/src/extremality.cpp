#include "povmkit/extremality.hpp"

#include <Eigen/QR>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace povmkit {

namespace {

// Hermitian basis member X(e, i, j) built from the support eigenvectors of
// outcome e. Diagonal slots carry the projectors |v_i><v_i|; off-diagonal
// slots carry the real part (i > j) or imaginary part (i < j) of |v_i><v_j|,
// so for each outcome the k^2 members span the Hermitian operators on its
// support.
CMatrix hermitian_member(const CMatrix &basis, int i, int j) {
    const CVector vi = basis.col(i);
    const CVector vj = basis.col(j);
    if (i == j) return vi * vi.adjoint();
    if (i > j) {
        return 0.5 * (vi * vj.adjoint() + vj * vi.adjoint());
    }
    const CMatrix x = basis.col(j) * basis.col(i).adjoint();
    return (x - x.adjoint()) / Complex(0.0, 2.0);
}

RVector realify(const CMatrix &m) {
    const CVector v = vectorize(m);
    RVector out(2 * v.size());
    out.head(v.size()) = v.real();
    out.tail(v.size()) = v.imag();
    return out;
}

// Greedy column-pivoted orthogonalization: returns the indices of `count`
// columns selected by largest residual norm, first index on ties.
std::vector<int> greedy_pivots(const RMatrix &a, int count) {
    const Eigen::Index cols = a.cols();
    RMatrix residual = a;
    RMatrix q(a.rows(), count);
    std::vector<char> used(static_cast<std::size_t>(cols), 0);
    std::vector<int> pivots;
    pivots.reserve(static_cast<std::size_t>(count));
    for (int step = 0; step < count; ++step) {
        int best = -1;
        double best_norm = -1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double n = residual.col(j).norm();
            if (n > best_norm) {
                best_norm = n;
                best = static_cast<int>(j);
            }
        }
        if (best < 0 || !(best_norm > 0.0)) {
            throw std::runtime_error(
                "perturbation_basis: pivot search exhausted before reaching the family rank");
        }
        used[static_cast<std::size_t>(best)] = 1;
        RVector col = residual.col(best);
        for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize for stability
            for (int t = 0; t < step; ++t) col -= q.col(t) * q.col(t).dot(col);
        }
        const double n = col.norm();
        if (!(n > 0.0)) {
            throw std::runtime_error("perturbation_basis: degenerate pivot column");
        }
        q.col(step) = col / n;
        pivots.push_back(best);
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (!used[static_cast<std::size_t>(j)]) {
                residual.col(j) -= q.col(step) * q.col(step).dot(residual.col(j));
            }
        }
    }
    return pivots;
}

struct FaceMetrics {
    OuterProductFamily family;
    int r = 0;
    int l = 0;
    int b = 0;
    bool boundary = false;
};

FaceMetrics face_metrics(const Povm &p, const ToleranceConfig &cfg) {
    FaceMetrics m;
    m.family = outer_product_family(p, cfg);
    m.r = m.family.total();
    m.l = numerical_rank(m.family.vectorized(), cfg);
    m.b = m.r - m.l;
    for (int k : m.family.ranks) {
        if (k < p.dim()) m.boundary = true;
    }
    return m;
}

std::vector<ScreenResult> run_screens(const OuterProductFamily &fam, const Povm &p,
                                      const ToleranceConfig &cfg) {
    std::vector<ScreenResult> screens;
    const Eigen::Index d = p.dim();

    {
        ScreenResult s;
        s.name = "support-dimension-budget";
        int total = 0;
        for (int k : fam.ranks) total += k * k;
        s.passed = total <= static_cast<int>(d * d);
        std::ostringstream detail;
        detail << "sum of squared support dimensions " << total << " vs d^2 = " << d * d;
        s.detail = detail.str();
        screens.push_back(std::move(s));
    }

    {
        ScreenResult s;
        s.name = "pairwise-disjoint-supports";
        s.passed = true;
        for (int e = 0; e < p.size() && s.passed; ++e) {
            for (int f = e + 1; f < p.size() && s.passed; ++f) {
                const int ke = fam.ranks[static_cast<std::size_t>(e)];
                const int kf = fam.ranks[static_cast<std::size_t>(f)];
                if (ke == 0 || kf == 0) continue;
                CMatrix joint(d, ke + kf);
                joint.leftCols(ke) = fam.support_bases[static_cast<std::size_t>(e)];
                joint.rightCols(kf) = fam.support_bases[static_cast<std::size_t>(f)];
                if (numerical_rank(joint, cfg) < ke + kf) {
                    s.passed = false;
                    std::ostringstream detail;
                    detail << "supports of elements " << e << " and " << f << " intersect";
                    s.detail = detail.str();
                }
            }
        }
        if (s.passed) s.detail = "all nonzero supports are pairwise disjoint";
        screens.push_back(std::move(s));
    }

    {
        ScreenResult s;
        s.name = "independent-elements";
        std::vector<CVector> vecs;
        for (int e = 0; e < p.size(); ++e) {
            if (fam.ranks[static_cast<std::size_t>(e)] > 0) {
                vecs.push_back(vectorize(p.element(e).matrix()));
            }
        }
        const int rank = numerical_rank(vecs, cfg);
        s.passed = rank == static_cast<int>(vecs.size());
        std::ostringstream detail;
        detail << "rank " << rank << " of " << vecs.size() << " nonzero elements";
        s.detail = detail.str();
        screens.push_back(std::move(s));
    }

    return screens;
}

}  // namespace

CMatrix OuterProductFamily::member_matrix(std::size_t idx) const {
    const Member &m = members.at(idx);
    const CMatrix &basis = support_bases.at(static_cast<std::size_t>(m.outcome));
    return basis.col(m.row) * basis.col(m.col).adjoint();
}

CMatrix OuterProductFamily::vectorized() const {
    CMatrix out(dim * dim, static_cast<Eigen::Index>(members.size()));
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
        out.col(static_cast<Eigen::Index>(idx)) = vectorize(member_matrix(idx));
    }
    return out;
}

OuterProductFamily outer_product_family(const Povm &p, const ToleranceConfig &cfg) {
    OuterProductFamily fam;
    fam.dim = p.dim();
    for (int e = 0; e < p.size(); ++e) {
        CMatrix basis = support_basis(p.element(e), cfg);
        const int k = static_cast<int>(basis.cols());
        fam.ranks.push_back(k);
        for (int m = 0; m < k; ++m) {
            for (int n = 0; n < k; ++n) {
                fam.members.push_back({e, m, n});
            }
        }
        fam.support_bases.push_back(std::move(basis));
    }
    return fam;
}

ScreenReport quick_screen(const Povm &p, const ToleranceConfig &cfg) {
    const OuterProductFamily fam = outer_product_family(p, cfg);
    ScreenReport report;
    report.screens = run_screens(fam, p, cfg);
    for (const auto &s : report.screens) report.all_passed = report.all_passed && s.passed;
    return report;
}

ExtremalityReport face_dimension(const Povm &p, const ToleranceConfig &cfg) {
    const FaceMetrics m = face_metrics(p, cfg);
    ExtremalityReport report;
    report.r = m.r;
    report.l = m.l;
    report.b = m.b;
    report.is_extremal = m.b == 0;
    report.on_boundary = m.boundary;
    report.screens = run_screens(m.family, p, cfg);
    return report;
}

bool is_extremal(const Povm &p, const ToleranceConfig &cfg) {
    const OuterProductFamily fam = outer_product_family(p, cfg);
    for (const auto &s : run_screens(fam, p, cfg)) {
        if (!s.passed) return false;  // necessary condition failed, skip the rank
    }
    return numerical_rank(fam.vectorized(), cfg) == fam.total();
}

bool on_boundary(const Povm &p, const ToleranceConfig &cfg) {
    for (int e = 0; e < p.size(); ++e) {
        if (support_basis(p.element(e), cfg).cols() < p.dim()) return true;
    }
    return false;
}

double Perturbation::frobenius_norm() const {
    double sq = 0.0;
    for (const auto &d : deltas) sq += d.frobenius_norm() * d.frobenius_norm();
    return std::sqrt(sq);
}

bool is_admissible_perturbation(const Povm &p, const Perturbation &d,
                                const ToleranceConfig &cfg, std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why != nullptr) *why = msg;
        return false;
    };
    if (d.size() != p.size() || d.dim() != p.dim()) {
        return fail("perturbation shape does not match the POVM");
    }
    if (!(d.frobenius_norm() > 1e-14)) return fail("perturbation vanishes");
    CMatrix sum = CMatrix::Zero(p.dim(), p.dim());
    for (const auto &delta : d.deltas) sum += delta.matrix();
    if (sum.norm() > perturbation_tol) return fail("perturbation elements do not sum to zero");
    for (int e = 0; e < p.size(); ++e) {
        const CMatrix basis = support_basis(p.element(e), cfg);
        const CMatrix z = basis * basis.adjoint();
        const CMatrix &de = d.deltas[static_cast<std::size_t>(e)].matrix();
        if ((de - z * de * z).norm() > perturbation_tol) {
            std::ostringstream msg;
            msg << "support containment fails at element " << e;
            return fail(msg.str());
        }
    }
    return true;
}

std::vector<Perturbation> perturbation_basis(const Povm &p, const ToleranceConfig &cfg) {
    const FaceMetrics metrics = face_metrics(p, cfg);
    if (metrics.b == 0) return {};

    const OuterProductFamily &fam = metrics.family;
    const Eigen::Index d = p.dim();
    const int r = metrics.r;

    // Real-linear picture of the Hermitian family, one column per member.
    std::vector<CMatrix> hermitians(static_cast<std::size_t>(r));
    RMatrix stacked(2 * d * d, r);
    for (int idx = 0; idx < r; ++idx) {
        const auto &m = fam.members[static_cast<std::size_t>(idx)];
        hermitians[static_cast<std::size_t>(idx)] =
            hermitian_member(fam.support_bases[static_cast<std::size_t>(m.outcome)], m.row, m.col);
        stacked.col(idx) = realify(hermitians[static_cast<std::size_t>(idx)]);
    }

    const std::vector<int> pivots = greedy_pivots(stacked, metrics.l);
    std::vector<char> selected(static_cast<std::size_t>(r), 0);
    for (int idx : pivots) selected[static_cast<std::size_t>(idx)] = 1;

    RMatrix independent(stacked.rows(), metrics.l);
    for (int t = 0; t < metrics.l; ++t) independent.col(t) = stacked.col(pivots[static_cast<std::size_t>(t)]);
    Eigen::ColPivHouseholderQR<RMatrix> solver(independent);

    std::vector<Perturbation> basis;
    basis.reserve(static_cast<std::size_t>(metrics.b));
    for (int w = 0; w < r; ++w) {
        if (selected[static_cast<std::size_t>(w)]) continue;
        const RVector coeff = solver.solve(stacked.col(w));

        std::vector<CMatrix> sums(static_cast<std::size_t>(p.size()));
        for (int e = 0; e < p.size(); ++e) sums[static_cast<std::size_t>(e)] = CMatrix::Zero(d, d);
        for (int t = 0; t < metrics.l; ++t) {
            const int idx = pivots[static_cast<std::size_t>(t)];
            const int e = fam.members[static_cast<std::size_t>(idx)].outcome;
            sums[static_cast<std::size_t>(e)] += coeff(t) * hermitians[static_cast<std::size_t>(idx)];
        }
        const int f = fam.members[static_cast<std::size_t>(w)].outcome;
        sums[static_cast<std::size_t>(f)] -= hermitians[static_cast<std::size_t>(w)];

        Perturbation pert;
        pert.deltas.reserve(sums.size());
        for (auto &s : sums) pert.deltas.push_back(HermitianMatrix(0.5 * (s + s.adjoint().eval())));
        const double norm = pert.frobenius_norm();
        if (!(norm > 0.0)) {
            throw std::runtime_error("perturbation_basis: constructed a vanishing direction");
        }
        for (auto &delta : pert.deltas) delta = (1.0 / norm) * delta;
        // The expansion residual is exactly the zero-sum defect; a violation
        // here means the rank cut and the pivot search disagree.
        CMatrix defect = CMatrix::Zero(d, d);
        for (const auto &delta : pert.deltas) defect += delta.matrix();
        if (defect.norm() > perturbation_tol) {
            throw std::runtime_error("perturbation_basis: direction does not sum to zero");
        }
        basis.push_back(std::move(pert));
    }
    return basis;
}

}  // namespace povmkit
