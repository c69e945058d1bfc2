#include "povmkit/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "povmkit/extremality.hpp"

namespace povmkit {

namespace {

const CMatrix &pauli(int k) {
    static const CMatrix sx = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
    static const CMatrix sy = (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    static const CMatrix sz = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
    switch (k) {
        case 0: return sx;
        case 1: return sy;
        default: return sz;
    }
}

Povm povm_from_unit_vectors(const std::vector<double> &alphas,
                            const std::vector<Eigen::Vector3d> &ns) {
    std::vector<BlochElement> elems;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        elems.push_back({alphas[i], ns[i]});
    }
    return from_bloch(elems);
}

bool rank_one(const BlochElement &e) { return std::abs(e.n.norm() - 1.0) <= 1e-10; }

bool proportional(const BlochElement &a, const BlochElement &b) {
    return std::abs(a.n.dot(b.n) - 1.0) <= 1e-9;
}

}  // namespace

std::vector<BlochElement> bloch_form(const Povm &p) {
    if (p.dim() != 2) throw std::invalid_argument("bloch_form: qubit POVMs only");
    std::vector<BlochElement> out;
    out.reserve(static_cast<std::size_t>(p.size()));
    for (int e = 0; e < p.size(); ++e) {
        BlochElement elem;
        elem.alpha = 0.5 * p.element(e).trace();
        if (!(elem.alpha > 1e-12)) {
            throw std::invalid_argument("bloch_form: zero element present, prune first");
        }
        for (int k = 0; k < 3; ++k) {
            elem.n(k) = (p.element(e).matrix() * pauli(k)).trace().real() / (2.0 * elem.alpha);
        }
        out.push_back(elem);
    }
    return out;
}

Povm from_bloch(const std::vector<BlochElement> &elems) {
    if (elems.empty()) throw std::invalid_argument("from_bloch: no elements");
    double alpha_sum = 0.0;
    Eigen::Vector3d vec_sum = Eigen::Vector3d::Zero();
    for (const auto &e : elems) {
        if (!(e.alpha > 0.0)) throw std::invalid_argument("from_bloch: weights must be positive");
        if (e.n.norm() > 1.0 + 1e-9) {
            throw std::invalid_argument("from_bloch: Bloch vector longer than 1");
        }
        alpha_sum += e.alpha;
        vec_sum += e.alpha * e.n;
    }
    if (std::abs(alpha_sum - 1.0) > 1e-9 || vec_sum.norm() > 1e-9) {
        throw std::invalid_argument("from_bloch: weight or vector constraint violated");
    }
    std::vector<HermitianMatrix> elements;
    elements.reserve(elems.size());
    for (const auto &e : elems) {
        CMatrix m = CMatrix::Identity(2, 2);
        for (int k = 0; k < 3; ++k) m += e.n(k) * pauli(k);
        elements.push_back(HermitianMatrix(e.alpha * m));
    }
    return Povm(std::move(elements));
}

bool classify_qubit_extremal(const Povm &p, const ToleranceConfig &cfg) {
    if (p.dim() != 2) throw std::invalid_argument("classify_qubit_extremal: qubit POVMs only");
    const Povm pruned = prune_zero_elements(p, cfg).povm;
    const int n = pruned.size();

    if (n == 1) {
        return (pruned.element(0).matrix() - CMatrix::Identity(2, 2)).norm() <= 1e-9;
    }
    if (n >= 5) return false;

    const std::vector<BlochElement> elems = bloch_form(pruned);
    bool all_rank_one = true;
    for (const auto &e : elems) all_rank_one = all_rank_one && rank_one(e);
    if (!all_rank_one) {
        // Higher-rank supports overlap for d = 2, so these cases sit with the
        // general checker rather than a dedicated closed form.
        return is_extremal(pruned, cfg);
    }

    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            if (proportional(elems[i], elems[j])) return false;
        }
    }
    if (n == 2) return std::abs(elems[0].n.dot(elems[1].n) + 1.0) <= 1e-9;
    if (n == 3) return true;

    // n == 4: extremal iff the unit vectors do not lie in a common plane.
    Eigen::Matrix<double, 3, 4> dirs;
    for (int e = 0; e < 4; ++e) dirs.col(e) = elems[static_cast<std::size_t>(e)].n;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dirs);
    const auto &sv = svd.singularValues();
    return sv(2) > cfg.rank_rel_tol * sv(0);
}

Povm pentagon_povm() {
    std::vector<double> alphas(5, 0.2);
    std::vector<Eigen::Vector3d> ns;
    for (int k = 0; k < 5; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 5.0;
        ns.emplace_back(std::cos(phi), std::sin(phi), 0.0);
    }
    return povm_from_unit_vectors(alphas, ns);
}

Povm trine_povm() {
    std::vector<double> alphas(3, 1.0 / 3.0);
    std::vector<Eigen::Vector3d> ns;
    for (int k = 0; k < 3; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 3.0;
        ns.emplace_back(std::cos(phi), std::sin(phi), 0.0);
    }
    return povm_from_unit_vectors(alphas, ns);
}

Povm tetrahedron_povm() {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<double> alphas(4, 0.25);
    std::vector<Eigen::Vector3d> ns = {
        {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    return povm_from_unit_vectors(alphas, ns);
}

Povm coplanar_quad_povm(double theta1, double theta2, double a) {
    if (!(a > 0.0 && a < 1.0)) {
        throw std::invalid_argument("coplanar_quad_povm: a must lie in (0, 1)");
    }
    auto planar = [](double t) { return Eigen::Vector3d(std::cos(t), std::sin(t), 0.0); };
    std::vector<double> alphas = {a / 2.0, a / 2.0, (1.0 - a) / 2.0, (1.0 - a) / 2.0};
    std::vector<Eigen::Vector3d> ns = {planar(theta1), -planar(theta1), planar(theta2),
                                       -planar(theta2)};
    return povm_from_unit_vectors(alphas, ns);
}

Povm random_qubit_povm(int outcomes, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> rank_dist(1, 2);
    std::vector<int> ranks(static_cast<std::size_t>(outcomes));
    for (auto &r : ranks) r = rank_dist(rng);
    return random_povm(2, ranks, rng);
}

}  // namespace povmkit
