#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "povmkit/linalg.hpp"

namespace povmkit {

/// Frobenius tolerance on |sum_e P_e - I| accepted by validate().
inline constexpr double completeness_tol = 1e-9;

/// Ordered sequence of Hermitian operators on a d-dimensional space.
///
/// Construction only enforces structure (at least one element, equal
/// dimensions). Positivity and completeness are semantic properties checked
/// by validate(), so invalid candidates can be represented and diagnosed.
class Povm {
  public:
    explicit Povm(std::vector<HermitianMatrix> elements);

    Eigen::Index dim() const { return elements_.front().dim(); }
    int size() const { return static_cast<int>(elements_.size()); }
    const HermitianMatrix &element(int e) const { return elements_.at(static_cast<std::size_t>(e)); }
    const std::vector<HermitianMatrix> &elements() const { return elements_; }

  private:
    std::vector<HermitianMatrix> elements_;
};

/// Unit-trace positive semidefinite state.
class DensityMatrix {
  public:
    explicit DensityMatrix(const HermitianMatrix &rho);

    Eigen::Index dim() const { return rho_.dim(); }
    const HermitianMatrix &operator*() const { return rho_; }
    const CMatrix &matrix() const { return rho_.matrix(); }

    static DensityMatrix maximally_mixed(Eigen::Index dim);
    static DensityMatrix pure(const CVector &psi);

  private:
    HermitianMatrix rho_;
};

struct ElementCheck {
    int index = 0;
    double min_eigenvalue = 0.0;
    bool psd_ok = false;
};

struct ValidationReport {
    bool passed = false;
    double completeness_residual = 0.0;
    bool completeness_ok = false;
    std::vector<ElementCheck> elements;
    std::vector<std::string> violations;
};

/// Checks every element for positive semidefiniteness (within psd_abs_tol)
/// and the sum for completeness (within completeness_tol), reporting each
/// violated condition with its magnitude.
ValidationReport validate(const Povm &p, const ToleranceConfig &cfg = {});

/// p_e = Tr[rho P_e]. Values are reported as computed; nothing is clamped.
std::vector<double> born_probabilities(const Povm &p, const DensityMatrix &rho);

/// Element-wise convex combination p*A + (1-p)*B of two same-shape POVMs.
Povm mix(const Povm &a, const Povm &b, double p);

struct PruneResult {
    Povm povm;
    std::vector<int> original_indices;  // original_indices[new] = old
};

/// Drops elements with Frobenius norm <= psd_abs_tol, recording the original
/// index of every retained element. Zero elements are legitimate POVM
/// members, so pruning is always explicit.
PruneResult prune_zero_elements(const Povm &p, const ToleranceConfig &cfg = {});

/// Projective measurement onto the computational basis of dimension d.
Povm pvm_z(Eigen::Index dim);

/// Random POVM with every element of full rank (an interior point): draws
/// Gaussian square roots A_e = G_e G_e^dag and normalizes with the sandwich
/// S^{-1/2} A_e S^{-1/2}, S = sum_e A_e.
Povm random_povm(Eigen::Index dim, int outcomes, std::mt19937_64 &rng);

/// Same construction with a prescribed rank per element (ranks[e] in [1, d]).
/// Element ranks are exact: a rank-r factor G_e has r columns.
Povm random_povm(Eigen::Index dim, const std::vector<int> &ranks, std::mt19937_64 &rng);

DensityMatrix random_density(Eigen::Index dim, std::mt19937_64 &rng);

}  // namespace povmkit
