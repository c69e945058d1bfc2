#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "povmkit/decompose.hpp"
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

Perturbation projector_direction(double scale) {
    CMatrix proj = CMatrix::Zero(2, 2);
    proj(0, 0) = scale;
    return Perturbation{{HermitianMatrix(proj), HermitianMatrix(-proj)}};
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

void check_decomposition(const Decomposition &dec, const ToleranceConfig &cfg) {
    const int bound =
        static_cast<int>(dec.source.dim() * dec.source.dim()) * (dec.source.size() - 1) + 1;
    REQUIRE(static_cast<int>(dec.entries.size()) <= bound);
    double weight_sum = 0.0;
    for (const auto &entry : dec.entries) {
        REQUIRE(entry.weight > 0.0);
        weight_sum += entry.weight;
        REQUIRE(validate(entry.povm, cfg).passed);
        REQUIRE(is_extremal(entry.povm, cfg));
    }
    REQUIRE(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(recombination_residual(dec) <= 1e-8);
}

}  // namespace

TEST_SUITE("decompose") {

TEST_CASE("line search on the two-outcome example") {
    const Povm p = two_outcome_example();
    const Perturbation d = projector_direction(0.5);
    const auto ls = line_search_lambda(p, d);
    CHECK(ls.lambda_plus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ls.lambda_minus == doctest::Approx(1.0).epsilon(1e-9));

    // Stepping 10 line-search widths past lambda_plus leaves the set.
    const double beyond = ls.lambda_plus + 10.0 * ToleranceConfig{}.line_search_tol;
    double worst = 1.0;
    for (int e = 0; e < 2; ++e) {
        const HermitianMatrix moved =
            p.element(e) + beyond * d.deltas[static_cast<std::size_t>(e)];
        worst = std::min(worst, min_eigenvalue(moved));
    }
    CHECK(worst < 0.0);
}

TEST_CASE("line search scales inversely with the direction") {
    const Povm p = two_outcome_example();
    for (double c : {0.25, 2.0, 7.5}) {
        const auto base = line_search_lambda(p, projector_direction(0.5));
        const auto scaled = line_search_lambda(p, projector_direction(0.5 * c));
        CHECK(scaled.lambda_plus == doctest::Approx(base.lambda_plus / c).epsilon(1e-8));
        CHECK(scaled.lambda_minus == doctest::Approx(base.lambda_minus / c).epsilon(1e-8));
    }
}

TEST_CASE("line search from an interior point has the closed form") {
    const Povm interior({0.5 * HermitianMatrix::identity(2), 0.5 * HermitianMatrix::identity(2)});
    const double eps = 0.1;
    CMatrix z = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
    const Perturbation d{{HermitianMatrix(eps * z), HermitianMatrix(-eps * z)}};
    // lambda_min(I/2 +- lambda*eps*sigma_z) = 1/2 - lambda*eps crosses zero
    // at lambda = 1/(2 eps).
    const auto ls = line_search_lambda(interior, d);
    CHECK(ls.lambda_plus == doctest::Approx(1.0 / (2.0 * eps)).epsilon(1e-8));
    CHECK(ls.lambda_minus == doctest::Approx(1.0 / (2.0 * eps)).epsilon(1e-8));
}

TEST_CASE("line search rejects bad directions") {
    const Povm p = two_outcome_example();
    CHECK_THROWS_AS(
        line_search_lambda(p, Perturbation{{HermitianMatrix::zero(2), HermitianMatrix::zero(2)}}),
        std::invalid_argument);
    CMatrix x = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
    CHECK_THROWS_AS(line_search_lambda(p, Perturbation{{HermitianMatrix(x), HermitianMatrix(-x)}}),
                    std::invalid_argument);
}

TEST_CASE("split reproduces the known children") {
    const Povm p = two_outcome_example();
    const auto s = split(p, projector_direction(0.5));
    CHECK(s.weight_plus == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(s.weight_minus == doctest::Approx(0.5).epsilon(1e-9));

    const Povm expected_plus = pvm_z(2);
    const Povm expected_minus({HermitianMatrix::zero(2), HermitianMatrix::identity(2)});
    for (int e = 0; e < 2; ++e) {
        CHECK((s.plus.element(e).matrix() - expected_plus.element(e).matrix()).norm() < 1e-9);
        CHECK((s.minus.element(e).matrix() - expected_minus.element(e).matrix()).norm() < 1e-9);
    }

    const Povm recombined = mix(s.plus, s.minus, s.weight_plus);
    for (int e = 0; e < 2; ++e) {
        CHECK((recombined.element(e).matrix() - p.element(e).matrix()).norm() < 1e-9);
    }

    const int b_parent = face_dimension(p).b;
    CHECK(face_dimension(s.plus).b < b_parent);
    CHECK(face_dimension(s.minus).b < b_parent);
}

TEST_CASE("splitting the pentagon strictly shrinks the face") {
    const Povm p = pentagon_povm();
    const auto basis = perturbation_basis(p);
    REQUIRE_FALSE(basis.empty());
    const auto s = split(p, basis.front());
    CHECK(validate(s.plus).passed);
    CHECK(validate(s.minus).passed);
    CHECK(face_dimension(s.plus).b < 2);
    CHECK(face_dimension(s.minus).b < 2);
}

TEST_CASE("decomposing an extremal POVM is trivial") {
    const Decomposition dec = decompose_to_extremals(pvm_z(2));
    REQUIRE(dec.entries.size() == 1);
    CHECK(dec.entries[0].weight == doctest::Approx(1.0));
    CHECK(dec.tree_depth == 0);
    CHECK(recombination_residual(dec) < 1e-12);
}

TEST_CASE("decomposing the two-outcome example") {
    const Povm p = two_outcome_example();
    const Decomposition dec = decompose_to_extremals(p);
    REQUIRE(dec.entries.size() == 2);
    CHECK(dec.tree_depth == 1);

    // Match the known extremal pair regardless of ordering.
    const Povm expected_plus = pvm_z(2);
    const Povm expected_minus({HermitianMatrix::zero(2), HermitianMatrix::identity(2)});
    for (const auto &target : {expected_plus, expected_minus}) {
        bool found = false;
        for (const auto &entry : dec.entries) {
            double dist = 0.0;
            for (int e = 0; e < 2; ++e) {
                dist += (entry.povm.element(e).matrix() - target.element(e).matrix()).norm();
            }
            if (dist < 1e-8) {
                found = true;
                CHECK(entry.weight == doctest::Approx(0.5).epsilon(1e-8));
            }
        }
        CHECK(found);
    }
    check_decomposition(dec, {});
}

TEST_CASE("zero elements in leaves survive pruning") {
    const Decomposition dec = decompose_to_extremals(two_outcome_example());
    for (const auto &entry : dec.entries) {
        const auto pruned = prune_zero_elements(entry.povm);
        CHECK(validate(pruned.povm).passed);
        CHECK(is_extremal(pruned.povm));
    }
}

TEST_CASE("random POVMs decompose soundly") {
    std::mt19937_64 rng(67);
    const ToleranceConfig cfg;
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index d = 2 + trial % 2;
        const int n = 2 + trial % 3;
        const Povm p = trial % 2 == 0 ? random_povm(d, n, rng)
                                      : random_povm(d, random_ranks(d, n, rng), rng);
        const Decomposition dec = decompose_to_extremals(p, cfg);
        check_decomposition(dec, cfg);
        REQUIRE(dec.tree_depth <= face_dimension(p, cfg).b);
    }
}

TEST_CASE("decomposed statistics reproduce the source") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const Povm p = random_povm(2, 3, rng);
        const Decomposition dec = decompose_to_extremals(p);
        const DensityMatrix rho = random_density(2, rng);
        const auto direct = born_probabilities(p, rho);
        std::vector<double> recombined(direct.size(), 0.0);
        for (const auto &entry : dec.entries) {
            const auto probs = born_probabilities(entry.povm, rho);
            for (std::size_t e = 0; e < probs.size(); ++e) {
                recombined[e] += entry.weight * probs[e];
            }
        }
        for (std::size_t e = 0; e < direct.size(); ++e) {
            REQUIRE(recombined[e] == doctest::Approx(direct[e]).epsilon(1e-8));
        }
    }
}

TEST_CASE("caratheodory reduction leaves small decompositions alone") {
    const Decomposition dec = decompose_to_extremals(two_outcome_example());
    const Decomposition reduced = caratheodory_reduce(dec);
    CHECK(reduced.entries.size() == dec.entries.size());
}

TEST_CASE("caratheodory reduction collapses a redundant segment") {
    // Scalar POVMs (d = 1): the set of (p, 1-p) pairs is a segment with
    // affine dimension 1, so three points must reduce to two.
    auto scalar_povm = [](double p) {
        CMatrix a(1, 1), b(1, 1);
        a(0, 0) = p;
        b(0, 0) = 1.0 - p;
        return Povm({HermitianMatrix(a), HermitianMatrix(b)});
    };
    Decomposition dec{{{0.25, scalar_povm(1.0)}, {0.25, scalar_povm(0.0)}, {0.5, scalar_povm(0.5)}},
                      scalar_povm(0.5),
                      0};
    REQUIRE(recombination_residual(dec) < 1e-12);
    const Decomposition reduced = caratheodory_reduce(dec);
    REQUIRE(reduced.entries.size() == 2);
    double weight_sum = 0.0;
    for (const auto &entry : reduced.entries) weight_sum += entry.weight;
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(recombination_residual(reduced) < 1e-9);
}

TEST_CASE("caratheodory reduction tames a raw tree") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        const Povm p = random_povm(2, 3, rng);
        const TreeResult tree = decompose_tree(p);
        Decomposition raw{{}, p, tree.max_depth};
        for (const auto &leaf : tree.leaves) raw.entries.push_back({leaf.weight, leaf.povm});
        const double raw_residual = recombination_residual(raw);

        const Decomposition reduced = caratheodory_reduce(raw);
        REQUIRE(static_cast<int>(reduced.entries.size()) <= 4 * 2 + 1);
        REQUIRE(recombination_residual(reduced) <= raw_residual + 1e-9);
        double weight_sum = 0.0;
        for (const auto &entry : reduced.entries) weight_sum += entry.weight;
        REQUIRE(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("tree depth stays within the face dimension") {
    const Povm p = pentagon_povm();
    const TreeResult tree = decompose_tree(p);
    CHECK(tree.max_depth <= 2);
    double weight_sum = 0.0;
    for (const auto &leaf : tree.leaves) weight_sum += leaf.weight;
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
