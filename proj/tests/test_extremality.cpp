#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "povmkit/decompose.hpp"
#include "povmkit/extremality.hpp"
#include "povmkit/qubit.hpp"

using namespace povmkit;

namespace {

Povm two_outcome_example() {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 0.5;
    CMatrix b = CMatrix::Zero(2, 2);
    b(0, 0) = 0.5;
    b(1, 1) = 1.0;
    return Povm({HermitianMatrix(a), HermitianMatrix(b)});
}

CMatrix random_unitary(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    CMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    }
    return Eigen::HouseholderQR<CMatrix>(g).householderQ();
}

std::vector<int> random_ranks(Eigen::Index d, int n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> dist(1, static_cast<int>(d));
    while (true) {
        std::vector<int> ranks(static_cast<std::size_t>(n));
        int total = 0;
        for (auto &r : ranks) {
            r = dist(rng);
            total += r;
        }
        if (total >= d) return ranks;
    }
}

const ScreenResult &screen_named(const std::vector<ScreenResult> &screens, const std::string &name) {
    for (const auto &s : screens) {
        if (s.name == name) return s;
    }
    REQUIRE(false);
    return screens.front();
}

}  // namespace

TEST_SUITE("extremality") {

TEST_CASE("outer product family counts") {
    const auto fam_pvm = outer_product_family(pvm_z(2));
    CHECK(fam_pvm.total() == 2);
    CHECK(fam_pvm.ranks == std::vector<int>{1, 1});

    const auto fam_trivial = outer_product_family(Povm({HermitianMatrix::identity(2)}));
    CHECK(fam_trivial.total() == 4);

    // Element ranks 1 and 2 confirmed by the closed 2x2 form, so r = 1 + 4.
    const Povm example = two_outcome_example();
    CHECK(oracles::eig2(0.5, 0.0, 0.0).low == doctest::Approx(0.0));
    CHECK(oracles::eig2(0.5, 0.0, 1.0).low == doctest::Approx(0.5));
    const auto fam = outer_product_family(example);
    CHECK(fam.ranks == std::vector<int>{1, 2});
    CHECK(fam.total() == 5);
}

TEST_CASE("face dimension of a PVM") {
    const auto report = face_dimension(pvm_z(2));
    CHECK(report.r == 2);
    CHECK(report.l == 2);
    CHECK(report.b == 0);
    CHECK(report.is_extremal);
    CHECK(report.on_boundary);
}

TEST_CASE("face dimension of the two-outcome example") {
    const Povm example = two_outcome_example();
    const auto fam = outer_product_family(example);
    // Independent oracle: Gaussian elimination on the vectorized family.
    CHECK(oracles::gauss_rank(fam.vectorized()) == 4);

    const auto report = face_dimension(example);
    CHECK(report.r == 5);
    CHECK(report.l == 4);
    CHECK(report.b == 1);
    CHECK_FALSE(report.is_extremal);
    CHECK(report.on_boundary);
}

TEST_CASE("face dimension of the pentagon") {
    const Povm pentagon = pentagon_povm();
    const auto fam = outer_product_family(pentagon);
    CHECK(oracles::gauss_rank(fam.vectorized()) == 3);

    const auto report = face_dimension(pentagon);
    CHECK(report.r == 5);
    CHECK(report.l == 3);
    CHECK(report.b == 2);
    CHECK_FALSE(report.is_extremal);
}

TEST_CASE("is_extremal on fixtures") {
    CHECK(is_extremal(Povm({HermitianMatrix::zero(2), HermitianMatrix::identity(2)})));
    CHECK_FALSE(is_extremal(pentagon_povm()));
    CHECK(is_extremal(trine_povm()));
}

TEST_CASE("on_boundary fixtures") {
    CHECK(on_boundary(pvm_z(2)));
    const Povm interior({0.5 * HermitianMatrix::identity(2), 0.5 * HermitianMatrix::identity(2)});
    CHECK_FALSE(on_boundary(interior));
    CHECK(on_boundary(two_outcome_example()));
    // Single-outcome POVM: the set is one point, so no boundary to sit on.
    const auto report = face_dimension(Povm({HermitianMatrix::identity(2)}));
    CHECK_FALSE(report.on_boundary);
    CHECK(report.b == 0);
}

TEST_CASE("screens catch the known violations") {
    const auto pentagon = quick_screen(pentagon_povm());
    CHECK_FALSE(pentagon.all_passed);
    CHECK_FALSE(screen_named(pentagon.screens, "support-dimension-budget").passed);
    CHECK(screen_named(pentagon.screens, "pairwise-disjoint-supports").passed);

    const auto overlap = quick_screen(two_outcome_example());
    CHECK_FALSE(screen_named(overlap.screens, "pairwise-disjoint-supports").passed);

    const Povm dependent({0.5 * HermitianMatrix::identity(2), 0.25 * HermitianMatrix::identity(2),
                          0.25 * HermitianMatrix::identity(2)});
    const auto dep = quick_screen(dependent);
    CHECK_FALSE(screen_named(dep.screens, "independent-elements").passed);

    const auto clean = quick_screen(pvm_z(3));
    CHECK(clean.all_passed);
}

TEST_CASE("screen failures always accompany b > 0") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 150; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const int n = 2 + trial % 5;
        const Povm p = random_povm(d, random_ranks(d, n, rng), rng);
        const auto report = face_dimension(p);
        bool any_failed = false;
        for (const auto &s : report.screens) any_failed = any_failed || !s.passed;
        if (any_failed) REQUIRE(report.b > 0);
        REQUIRE(report.b >= 0);
        REQUIRE(is_extremal(p) == report.is_extremal);
    }
}

TEST_CASE("perturbation basis is empty for extremal POVMs") {
    CHECK(perturbation_basis(pvm_z(2)).empty());
    CHECK(perturbation_basis(tetrahedron_povm()).empty());
}

TEST_CASE("perturbation basis recovers the two-outcome direction") {
    const Povm example = two_outcome_example();
    const auto basis = perturbation_basis(example);
    REQUIRE(basis.size() == 1);

    // Known direction (|0><0|, -|0><0|), compared up to scale and sign.
    CMatrix proj = CMatrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    const Perturbation expected{{HermitianMatrix(proj), HermitianMatrix(-proj)}};
    const double scale = basis[0].deltas[0].matrix()(0, 0).real();
    REQUIRE(scale != 0.0);
    for (int e = 0; e < 2; ++e) {
        CHECK((basis[0].deltas[static_cast<std::size_t>(e)].matrix() / scale -
               expected.deltas[static_cast<std::size_t>(e)].matrix())
                  .norm() < 1e-9);
    }

    std::string why;
    CHECK(is_admissible_perturbation(example, basis[0], {}, &why));
}

TEST_CASE("pentagon has two independent perturbations") {
    const auto basis = perturbation_basis(pentagon_povm());
    REQUIRE(basis.size() == 2);
    CMatrix stacked(8, 2);
    for (int i = 0; i < 2; ++i) {
        CVector flat(8);
        flat.head(4) = vectorize(basis[static_cast<std::size_t>(i)].deltas[0].matrix());
        flat.tail(4) = vectorize(basis[static_cast<std::size_t>(i)].deltas[1].matrix());
        stacked.col(i) = flat;
    }
    CHECK(oracles::gauss_rank(stacked) == 2);
    for (const auto &d : basis) {
        std::string why;
        CHECK(is_admissible_perturbation(pentagon_povm(), d, {}, &why));
    }
}

TEST_CASE("perturbations admit symmetric steps on random POVMs") {
    std::mt19937_64 rng(7);
    int found = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const int n = 2 + trial % 3;
        const Povm p = random_povm(d, random_ranks(d, n, rng), rng);
        const auto basis = perturbation_basis(p);
        const auto report = face_dimension(p);
        REQUIRE(static_cast<int>(basis.size()) == report.b);
        for (const auto &dir : basis) {
            std::string why;
            REQUIRE_MESSAGE(is_admissible_perturbation(p, dir, {}, &why), why);
            const auto ls = line_search_lambda(p, dir);
            REQUIRE(ls.lambda_plus > 0.0);
            REQUIRE(ls.lambda_minus > 0.0);
            const double eps = 0.5 * std::min(ls.lambda_plus, ls.lambda_minus);
            std::vector<HermitianMatrix> up, down;
            for (int e = 0; e < p.size(); ++e) {
                up.push_back(p.element(e) + eps * dir.deltas[static_cast<std::size_t>(e)]);
                down.push_back(p.element(e) - eps * dir.deltas[static_cast<std::size_t>(e)]);
            }
            REQUIRE(validate(Povm(up)).passed);
            REQUIRE(validate(Povm(down)).passed);
            ++found;
        }
    }
    REQUIRE(found > 0);
}

TEST_CASE("kernel and face-dimension boundary criteria agree") {
    std::mt19937_64 rng(13);
    const ToleranceConfig cfg;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const int n = 2 + trial % 5;
        const bool interior = trial % 3 == 0;
        const Povm p = interior ? random_povm(d, n, rng)
                                : random_povm(d, random_ranks(d, n, rng), rng);
        const auto report = face_dimension(p, cfg);
        const int full = static_cast<int>(d * d) * (n - 1);
        REQUIRE(on_boundary(p, cfg) == (report.b < full));
        if (interior) REQUIRE(report.b == full);
    }
}

TEST_CASE("outer-product null space is trivial exactly for extremal POVMs") {
    // The linear map (coefficients) -> sum_e sum_mn c |v_m><v_n| is the
    // vectorized family itself, so weak independence of the supports is the
    // statement rank == r.
    std::mt19937_64 rng(19);
    const ToleranceConfig cfg;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const int n = 2 + trial % 4;
        const Povm p = random_povm(d, random_ranks(d, n, rng), rng);
        const auto fam = outer_product_family(p, cfg);
        const bool trivial_null = numerical_rank(fam.vectorized(), cfg) == fam.total();
        REQUIRE(trivial_null == is_extremal(p, cfg));
    }
    const auto fam = outer_product_family(trine_povm(), cfg);
    CHECK(numerical_rank(fam.vectorized(), cfg) == fam.total());
}

TEST_CASE("reports are invariant under global unitary conjugation") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const int n = 2 + trial % 3;
        const Povm p = random_povm(d, random_ranks(d, n, rng), rng);
        const CMatrix u = random_unitary(d, rng);
        std::vector<HermitianMatrix> rotated;
        for (int e = 0; e < p.size(); ++e) {
            rotated.push_back(HermitianMatrix(u * p.element(e).matrix() * u.adjoint()));
        }
        const auto base = face_dimension(p);
        const auto conj = face_dimension(Povm(rotated));
        REQUIRE(base.r == conj.r);
        REQUIRE(base.l == conj.l);
        REQUIRE(base.b == conj.b);
        REQUIRE(base.is_extremal == conj.is_extremal);
        REQUIRE(base.on_boundary == conj.on_boundary);
    }
}

TEST_CASE("reports depend on supports, not on eigenvector gauge") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    for (int trial = 0; trial < 25; ++trial) {
        const Povm p = random_povm(2, random_ranks(2, 3, rng), rng);
        // Rebuild every element from a re-phased eigenbasis; the operator is
        // unchanged mathematically but differs in floating point.
        std::vector<HermitianMatrix> rebuilt;
        for (int e = 0; e < p.size(); ++e) {
            const auto sd = eig_hermitian(p.element(e));
            CMatrix sum = CMatrix::Zero(2, 2);
            for (Eigen::Index k = 0; k < 2; ++k) {
                const double t = angle(rng);
                const CVector v = sd.eigenvectors.col(k) * Complex(std::cos(t), std::sin(t));
                sum += sd.eigenvalues(k) * (v * v.adjoint());
            }
            rebuilt.push_back(HermitianMatrix(0.5 * (sum + sum.adjoint().eval())));
        }
        const auto base = face_dimension(p);
        const auto other = face_dimension(Povm(rebuilt));
        REQUIRE(base.r == other.r);
        REQUIRE(base.l == other.l);
        REQUIRE(base.b == other.b);
    }
}

TEST_CASE("admissibility checks reject bad directions") {
    const Povm pvm = pvm_z(2);
    std::string why;

    Perturbation zero{{HermitianMatrix::zero(2), HermitianMatrix::zero(2)}};
    CHECK_FALSE(is_admissible_perturbation(pvm, zero, {}, &why));

    CMatrix x = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
    Perturbation off_support{{HermitianMatrix(x), HermitianMatrix(-x)}};
    CHECK_FALSE(is_admissible_perturbation(pvm, off_support, {}, &why));

    CMatrix proj = CMatrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    Perturbation unbalanced{{HermitianMatrix(proj), HermitianMatrix::zero(2)}};
    CHECK_FALSE(is_admissible_perturbation(pvm, unbalanced, {}, &why));
}

}  // TEST_SUITE
