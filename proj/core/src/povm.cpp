#include "povmkit/povm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace povmkit {

namespace {

CMatrix gaussian_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            g(i, j) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
        }
    }
    return g;
}

CMatrix inverse_sqrt(const CMatrix &s) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(s);
    const RVector &ev = solver.eigenvalues();
    if (!(ev(0) > 1e-12 * ev(ev.size() - 1))) {
        throw std::runtime_error("inverse_sqrt: matrix is numerically singular");
    }
    RVector inv = ev.cwiseSqrt().cwiseInverse();
    return solver.eigenvectors() * inv.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("Povm: needs at least one element");
    }
    const Eigen::Index d = elements_.front().dim();
    for (const auto &e : elements_) {
        if (e.dim() != d) {
            throw std::invalid_argument("Povm: element dimensions differ");
        }
    }
}

DensityMatrix::DensityMatrix(const HermitianMatrix &rho) : rho_(rho) {
    if (min_eigenvalue(rho_) < -ToleranceConfig{}.psd_abs_tol) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
    if (std::abs(rho_.trace() - 1.0) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix((1.0 / static_cast<double>(dim)) * HermitianMatrix::identity(dim));
}

DensityMatrix DensityMatrix::pure(const CVector &psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw std::invalid_argument("DensityMatrix::pure: zero vector");
    const CVector u = psi / n;
    return DensityMatrix(HermitianMatrix(u * u.adjoint()));
}

ValidationReport validate(const Povm &p, const ToleranceConfig &cfg) {
    ValidationReport report;
    CMatrix sum = CMatrix::Zero(p.dim(), p.dim());
    for (int e = 0; e < p.size(); ++e) {
        ElementCheck check;
        check.index = e;
        check.min_eigenvalue = min_eigenvalue(p.element(e));
        check.psd_ok = check.min_eigenvalue >= -cfg.psd_abs_tol;
        if (!check.psd_ok) {
            std::ostringstream msg;
            msg << "element " << e << " has eigenvalue " << check.min_eigenvalue
                << " below -" << cfg.psd_abs_tol;
            report.violations.push_back(msg.str());
        }
        report.elements.push_back(check);
        sum += p.element(e).matrix();
    }
    report.completeness_residual = (sum - CMatrix::Identity(p.dim(), p.dim())).norm();
    report.completeness_ok = report.completeness_residual <= completeness_tol;
    if (!report.completeness_ok) {
        std::ostringstream msg;
        msg << "completeness residual " << report.completeness_residual
            << " exceeds " << completeness_tol;
        report.violations.push_back(msg.str());
    }
    report.passed = report.completeness_ok;
    for (const auto &check : report.elements) report.passed = report.passed && check.psd_ok;
    return report;
}

std::vector<double> born_probabilities(const Povm &p, const DensityMatrix &rho) {
    if (p.dim() != rho.dim()) {
        throw std::invalid_argument("born_probabilities: dimension mismatch");
    }
    std::vector<double> probs(static_cast<std::size_t>(p.size()));
    for (int e = 0; e < p.size(); ++e) {
        probs[static_cast<std::size_t>(e)] =
            (rho.matrix() * p.element(e).matrix()).trace().real();
    }
    return probs;
}

Povm mix(const Povm &a, const Povm &b, double p) {
    if (a.dim() != b.dim() || a.size() != b.size()) {
        throw std::invalid_argument("mix: POVM shapes differ");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("mix: weight must lie in [0, 1]");
    }
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(a.size()));
    for (int e = 0; e < a.size(); ++e) {
        elements.push_back(p * a.element(e) + (1.0 - p) * b.element(e));
    }
    return Povm(std::move(elements));
}

PruneResult prune_zero_elements(const Povm &p, const ToleranceConfig &cfg) {
    std::vector<HermitianMatrix> kept;
    std::vector<int> indices;
    for (int e = 0; e < p.size(); ++e) {
        if (p.element(e).frobenius_norm() > cfg.psd_abs_tol) {
            kept.push_back(p.element(e));
            indices.push_back(e);
        }
    }
    if (kept.empty()) {
        throw std::invalid_argument("prune_zero_elements: all elements vanish");
    }
    return PruneResult{Povm(std::move(kept)), std::move(indices)};
}

Povm pvm_z(Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("pvm_z: dimension must be positive");
    std::vector<HermitianMatrix> elements;
    for (Eigen::Index j = 0; j < dim; ++j) {
        CMatrix proj = CMatrix::Zero(dim, dim);
        proj(j, j) = 1.0;
        elements.push_back(HermitianMatrix(proj));
    }
    return Povm(std::move(elements));
}

Povm random_povm(Eigen::Index dim, int outcomes, std::mt19937_64 &rng) {
    if (outcomes < 1) throw std::invalid_argument("random_povm: needs at least one element");
    std::vector<int> ranks(static_cast<std::size_t>(outcomes), static_cast<int>(dim));
    return random_povm(dim, ranks, rng);
}

Povm random_povm(Eigen::Index dim, const std::vector<int> &ranks, std::mt19937_64 &rng) {
    if (ranks.empty()) throw std::invalid_argument("random_povm: needs at least one element");
    int total = 0;
    for (int r : ranks) {
        if (r < 1 || r > dim) throw std::invalid_argument("random_povm: rank out of range");
        total += r;
    }
    if (total < dim) {
        throw std::invalid_argument("random_povm: ranks cannot sum below the dimension");
    }
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<CMatrix> factors;
        factors.reserve(ranks.size());
        CMatrix sum = CMatrix::Zero(dim, dim);
        for (int r : ranks) {
            CMatrix g = gaussian_complex(dim, r, rng);
            sum += g * g.adjoint();
            factors.push_back(std::move(g));
        }
        try {
            const CMatrix t = inverse_sqrt(sum);
            std::vector<HermitianMatrix> elements;
            elements.reserve(factors.size());
            for (const CMatrix &g : factors) {
                const CMatrix b = t * g;
                elements.push_back(HermitianMatrix(b * b.adjoint()));
            }
            return Povm(std::move(elements));
        } catch (const std::runtime_error &) {
            continue;  // singular sum, redraw
        }
    }
    throw std::runtime_error("random_povm: failed to draw an invertible operator sum");
}

DensityMatrix random_density(Eigen::Index dim, std::mt19937_64 &rng) {
    const CMatrix g = gaussian_complex(dim, dim, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(HermitianMatrix(rho));
}

}  // namespace povmkit
