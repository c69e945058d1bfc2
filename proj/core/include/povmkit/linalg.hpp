#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace povmkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Numerical tolerances shared across the library.
///
/// Rank decisions use a threshold relative to the largest singular value
/// (or eigenvalue), so they are invariant under global rescaling; positive
/// semidefiniteness and line searches use absolute thresholds.
struct ToleranceConfig {
    double rank_rel_tol = 1e-9;
    double psd_abs_tol = 1e-10;
    double line_search_tol = 1e-12;

    /// Throws std::invalid_argument unless all tolerances are strictly positive.
    void require_valid() const;
};

/// Absolute tolerance on |H - H^dag| accepted at construction.
inline constexpr double hermitian_abs_tol = 1e-12;

/// A square complex matrix that is Hermitian by construction.
///
/// The constructor rejects inputs whose antisymmetric part exceeds
/// hermitian_abs_tol and stores the exactly symmetrized (H + H^dag)/2.
/// Sums, differences and real scalar multiples of Hermitian matrices stay
/// Hermitian bit-exactly, so those operators skip revalidation.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(const CMatrix &entries);

    static HermitianMatrix zero(Eigen::Index dim);
    static HermitianMatrix identity(Eigen::Index dim);

    Eigen::Index dim() const { return entries_.rows(); }
    const CMatrix &matrix() const { return entries_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    double trace() const { return entries_.trace().real(); }
    double frobenius_norm() const { return entries_.norm(); }

    friend HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b);
    friend HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b);
    friend HermitianMatrix operator-(const HermitianMatrix &a);
    friend HermitianMatrix operator*(double s, const HermitianMatrix &a);
    friend HermitianMatrix operator*(const HermitianMatrix &a, double s);

  private:
    struct unchecked_t {};
    HermitianMatrix(unchecked_t, CMatrix m) : entries_(std::move(m)) {}

    CMatrix entries_;
};

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
struct SpectralDecomposition {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

/// Full spectral decomposition of a Hermitian matrix.
/// Reconstruction error is bounded by 1e-10 * max(1, |H|_F) and the
/// eigenvector Gram matrix equals the identity within 1e-10.
SpectralDecomposition eig_hermitian(const HermitianMatrix &h);

/// Rank of a set of complex vectors: the number of singular values
/// sigma_k of the stacked matrix with sigma_k > rank_rel_tol * sigma_max.
/// Empty input or an all-zero set has rank 0.
int numerical_rank(const CMatrix &columns, const ToleranceConfig &cfg);
int numerical_rank(const std::vector<CVector> &vectors, const ToleranceConfig &cfg);

/// Orthonormal basis of the support of a positive semidefinite matrix:
/// the eigenvectors whose eigenvalue exceeds rank_rel_tol * lambda_max,
/// returned as columns. The zero matrix yields a 0-column result.
/// Throws std::invalid_argument if p is not PSD within psd_abs_tol.
CMatrix support_basis(const HermitianMatrix &p, const ToleranceConfig &cfg);

double min_eigenvalue(const HermitianMatrix &h);

/// Column-major flattening of a square matrix. The Hilbert-Schmidt inner
/// product Tr[A^dag B] equals vectorize(A).dot(vectorize(B)).
CVector vectorize(const CMatrix &a);

}  // namespace povmkit
