#pragma once

#include <vector>

#include "povmkit/povm.hpp"

namespace povmkit {

/// Magnitude below which Tr[U_pq^dag nu] counts as vanishing.
inline constexpr double fiducial_gate_tol = 1e-9;

/// Shift-and-multiply unitaries U_pq = Z^p W^q, p,q in {0,...,d-1}, with
/// Z|j> = |j+1 mod d> and W = diag(w^j), w = exp(2 pi i / d). They form an
/// orthogonal operator basis: Tr[U_pq^dag U_p'q'] = d delta_pp' delta_qq'.
struct WeylFamily {
    Eigen::Index dim = 0;
    std::vector<CMatrix> ops;  // index p*d + q

    const CMatrix &op(int p, int q) const {
        return ops.at(static_cast<std::size_t>(p) * static_cast<std::size_t>(dim) +
                      static_cast<std::size_t>(q));
    }
};

WeylFamily weyl_ops(Eigen::Index dim);

/// Normalized pure state |psi>, carrier of the projector nu = |psi><psi|.
class Fiducial {
  public:
    explicit Fiducial(const CVector &psi);  // throws unless ||psi| - 1| <= 1e-12
    static Fiducial normalized(const CVector &v);

    Eigen::Index dim() const { return psi_.size(); }
    const CVector &vector() const { return psi_; }
    CMatrix projector() const { return psi_ * psi_.adjoint(); }

  private:
    CVector psi_;
};

/// The geometric family psi ~ sum_j alpha^j |j> for 0 < alpha < 1, which
/// meets the nondegeneracy constraint for every d.
Fiducial geometric_fiducial(Eigen::Index dim, double alpha = 0.5);

struct FiducialCheck {
    bool ok = false;
    RMatrix magnitudes;  // (p, q) -> |Tr[U_pq^dag nu]|
    double min_magnitude = 0.0;
    int argmin_p = 0;
    int argmin_q = 0;
};

/// Evaluates |Tr[U_pq^dag nu]| for all (p, q); ok iff every magnitude
/// exceeds fiducial_gate_tol.
FiducialCheck fiducial_ok(const Fiducial &psi, Eigen::Index dim);

/// The d^2-outcome POVM P_pq = (1/d) U_pq nu U_pq^dag, ordered with p major.
/// All elements are rank-one with trace 1/d; the POVM is extremal and
/// informationally complete. Throws std::invalid_argument naming the first
/// offending (p, q) when the fiducial fails its nondegeneracy constraint.
Povm wh_povm(const Fiducial &psi, Eigen::Index dim);

/// Same construction without the fiducial gate, for probing the failure mode.
Povm wh_povm_unchecked(const Fiducial &psi, Eigen::Index dim);

struct FrameOperator {
    HermitianMatrix matrix;  // d^2 x d^2, F = sum_e |P_e>><<P_e|
    int rank = 0;
    bool informationally_complete = false;  // rank == d^2
};

/// Frame operator of the vectorized POVM elements. Invertibility (full rank
/// at rank_rel_tol) is equivalent to informational completeness.
FrameOperator frame_operator(const Povm &p, const ToleranceConfig &cfg = {});

}  // namespace povmkit
