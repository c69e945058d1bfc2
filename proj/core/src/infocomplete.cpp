#include "povmkit/infocomplete.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace povmkit {

WeylFamily weyl_ops(Eigen::Index dim) {
    if (dim < 2) throw std::invalid_argument("weyl_ops: dimension must be at least 2");
    CMatrix z = CMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) z((j + 1) % dim, j) = 1.0;
    CMatrix w = CMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(dim);
        w(j, j) = Complex(std::cos(phase), std::sin(phase));
    }

    WeylFamily fam;
    fam.dim = dim;
    fam.ops.reserve(static_cast<std::size_t>(dim * dim));
    CMatrix zp = CMatrix::Identity(dim, dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
        CMatrix u = zp;
        for (Eigen::Index q = 0; q < dim; ++q) {
            fam.ops.push_back(u);
            u = u * w;
        }
        zp = z * zp;
    }
    return fam;
}

Fiducial::Fiducial(const CVector &psi) : psi_(psi) {
    if (psi_.size() < 1 || std::abs(psi_.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("Fiducial: vector must be normalized");
    }
}

Fiducial Fiducial::normalized(const CVector &v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw std::invalid_argument("Fiducial: zero vector");
    return Fiducial(v / n);
}

Fiducial geometric_fiducial(Eigen::Index dim, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("geometric_fiducial: alpha must lie in (0, 1)");
    }
    // The real ratio fails the overlap gate identically for even d: pairing
    // k with k + d/2 in Tr[U_{d/2,q}^dag nu] cancels term by term when q is
    // odd. Rotating the ratio restores the gate, so try a fixed angle
    // schedule starting at zero and keep the first phase with a safe margin
    // (odd dimensions accept the plain real family immediately).
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Complex> omega_pow(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(dim);
        omega_pow[static_cast<std::size_t>(k)] = Complex(std::cos(phase), std::sin(phase));
    }

    auto min_overlap = [&](const CVector &psi) {
        double worst = std::numeric_limits<double>::infinity();
        for (Eigen::Index p = 0; p < dim; ++p) {
            for (Eigen::Index q = 0; q < dim; ++q) {
                Complex t = 0.0;
                for (Eigen::Index k = 0; k < dim; ++k) {
                    const Eigen::Index idx = (dim - (q * k) % dim) % dim;  // omega^{-qk}
                    t += std::conj(psi(k)) * omega_pow[static_cast<std::size_t>(idx)] *
                         psi((k + p) % dim);
                }
                worst = std::min(worst, std::abs(t));
            }
        }
        return worst;
    };

    double best_margin = -1.0;
    CVector best;
    for (int step = 0; step < 64; ++step) {
        const double theta = golden_angle * step;
        const Complex ratio = alpha * Complex(std::cos(theta), std::sin(theta));
        CVector v(dim);
        Complex a = 1.0;
        for (Eigen::Index j = 0; j < dim; ++j) {
            v(j) = a;
            a *= ratio;
        }
        v /= v.norm();
        const double margin = min_overlap(v);
        if (margin > 1e-6) return Fiducial(v);
        if (margin > best_margin) {
            best_margin = margin;
            best = v;
        }
    }
    if (best_margin > fiducial_gate_tol) return Fiducial(best);
    throw std::invalid_argument(
        "geometric_fiducial: no ratio phase clears the overlap gate for this alpha and dim");
}

FiducialCheck fiducial_ok(const Fiducial &psi, Eigen::Index dim) {
    if (psi.dim() != dim) throw std::invalid_argument("fiducial_ok: dimension mismatch");
    const WeylFamily fam = weyl_ops(dim);
    FiducialCheck check;
    check.magnitudes = RMatrix(dim, dim);
    check.min_magnitude = std::numeric_limits<double>::infinity();
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q < dim; ++q) {
            // Tr[U_pq^dag nu] = <psi| U_pq^dag |psi>
            const double mag = std::abs(psi.vector().dot(fam.op(p, q).adjoint() * psi.vector()));
            check.magnitudes(p, q) = mag;
            if (mag < check.min_magnitude) {
                check.min_magnitude = mag;
                check.argmin_p = p;
                check.argmin_q = q;
            }
        }
    }
    check.ok = check.min_magnitude > fiducial_gate_tol;
    return check;
}

Povm wh_povm_unchecked(const Fiducial &psi, Eigen::Index dim) {
    if (psi.dim() != dim) throw std::invalid_argument("wh_povm: dimension mismatch");
    const WeylFamily fam = weyl_ops(dim);
    std::vector<HermitianMatrix> elements;
    elements.reserve(static_cast<std::size_t>(dim * dim));
    const double scale = 1.0 / static_cast<double>(dim);
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q < dim; ++q) {
            const CVector u = fam.op(p, q) * psi.vector();
            elements.push_back(HermitianMatrix(scale * (u * u.adjoint())));
        }
    }
    return Povm(std::move(elements));
}

Povm wh_povm(const Fiducial &psi, Eigen::Index dim) {
    const FiducialCheck check = fiducial_ok(psi, dim);
    if (!check.ok) {
        std::ostringstream msg;
        msg << "wh_povm: fiducial violates the nondegeneracy constraint at (p, q) = ("
            << check.argmin_p << ", " << check.argmin_q << "), magnitude "
            << check.min_magnitude;
        throw std::invalid_argument(msg.str());
    }
    return wh_povm_unchecked(psi, dim);
}

FrameOperator frame_operator(const Povm &p, const ToleranceConfig &cfg) {
    const Eigen::Index d2 = p.dim() * p.dim();
    CMatrix f = CMatrix::Zero(d2, d2);
    for (int e = 0; e < p.size(); ++e) {
        const CVector v = vectorize(p.element(e).matrix());
        f += v * v.adjoint();
    }
    FrameOperator out{HermitianMatrix(f), 0, false};
    const SpectralDecomposition sd = eig_hermitian(out.matrix);
    const double lmax = sd.eigenvalues(0);
    if (lmax > 0.0) {
        for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
            if (sd.eigenvalues(k) > cfg.rank_rel_tol * lmax) ++out.rank;
        }
    }
    out.informationally_complete = out.rank == static_cast<int>(d2);
    return out;
}

}  // namespace povmkit
