#include "povmkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace povmkit {

void ToleranceConfig::require_valid() const {
    if (!(rank_rel_tol > 0.0) || !(psd_abs_tol > 0.0) || !(line_search_tol > 0.0)) {
        throw std::invalid_argument("tolerances must be strictly positive");
    }
}

HermitianMatrix::HermitianMatrix(const CMatrix &entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw std::invalid_argument("HermitianMatrix: matrix must be square and non-empty");
    }
    const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= hermitian_abs_tol)) {
        throw std::invalid_argument("HermitianMatrix: input is not Hermitian within tolerance");
    }
    entries_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
    return HermitianMatrix(unchecked_t{}, CMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(unchecked_t{}, CMatrix::Identity(dim, dim));
}

HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b) {
    return HermitianMatrix(HermitianMatrix::unchecked_t{}, a.entries_ + b.entries_);
}

HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b) {
    return HermitianMatrix(HermitianMatrix::unchecked_t{}, a.entries_ - b.entries_);
}

HermitianMatrix operator-(const HermitianMatrix &a) {
    return HermitianMatrix(HermitianMatrix::unchecked_t{}, -a.entries_);
}

HermitianMatrix operator*(double s, const HermitianMatrix &a) {
    return HermitianMatrix(HermitianMatrix::unchecked_t{}, s * a.entries_);
}

HermitianMatrix operator*(const HermitianMatrix &a, double s) { return s * a; }

SpectralDecomposition eig_hermitian(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    }
    // Eigen sorts ascending; flip to descending.
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

int numerical_rank(const CMatrix &columns, const ToleranceConfig &cfg) {
    if (columns.rows() == 0 || columns.cols() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(columns);
    const RVector &sv = svd.singularValues();
    const double smax = sv(0);
    if (!(smax > 0.0)) return 0;
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cfg.rank_rel_tol * smax) ++rank;
    }
    return rank;
}

int numerical_rank(const std::vector<CVector> &vectors, const ToleranceConfig &cfg) {
    if (vectors.empty()) return 0;
    const Eigen::Index rows = vectors.front().size();
    CMatrix stacked(rows, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != rows) {
            throw std::invalid_argument("numerical_rank: vectors must have equal length");
        }
        stacked.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return numerical_rank(stacked, cfg);
}

CMatrix support_basis(const HermitianMatrix &p, const ToleranceConfig &cfg) {
    const SpectralDecomposition sd = eig_hermitian(p);
    if (sd.eigenvalues(sd.eigenvalues.size() - 1) < -cfg.psd_abs_tol) {
        throw std::invalid_argument("support_basis: operator is not PSD within tolerance");
    }
    const double lmax = sd.eigenvalues(0);
    if (!(lmax > 0.0)) return CMatrix(p.dim(), 0);
    const double threshold = cfg.rank_rel_tol * lmax;
    Eigen::Index k = 0;
    while (k < sd.eigenvalues.size() && sd.eigenvalues(k) > threshold) ++k;
    return sd.eigenvectors.leftCols(k);
}

double min_eigenvalue(const HermitianMatrix &h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue: eigensolver failed to converge");
    }
    return solver.eigenvalues()(0);
}

CVector vectorize(const CMatrix &a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("vectorize: matrix must be square");
    }
    return Eigen::Map<const CVector>(a.data(), a.size());
}

}  // namespace povmkit
