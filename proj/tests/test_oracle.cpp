#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "overlap/oracle.hpp"
#include "overlap/schur_stats.hpp"

using namespace overlap;

namespace {
HalfInt w(int n) { return HalfInt::whole(n); }
HalfInt h(int twice) { return HalfInt::from_twice(twice); }
} // namespace

TEST_CASE("casimir block structure") {
    const BlockSpectrum two = casimir_projectors(2);
    CHECK(two.blocks.size() == 2);
    CHECK(two.block(w(0)).basis.cols() == 1);
    CHECK(two.block(w(1)).basis.cols() == 3);

    const BlockSpectrum three = casimir_projectors(3);
    CHECK(three.block(h(3)).basis.cols() == 4);
    CHECK(three.block(h(1)).basis.cols() == 4); // dim 2, multiplicity 2

    // completeness: total column count = 2^n
    for (int n : {1, 2, 3, 4, 6}) {
        const BlockSpectrum spec = casimir_projectors(n);
        long cols = 0;
        for (const auto& b : spec.blocks) cols += b.basis.cols();
        CHECK(cols == (1L << n));
    }
    CHECK_THROWS_AS(casimir_projectors(13), TooLarge);
}

TEST_CASE("projector algebra") {
    for (int n : {2, 3, 5}) {
        const BlockSpectrum spec = casimir_projectors(n);
        const long dim = 1L << n;
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
        for (const auto& b : spec.blocks) {
            const Eigen::MatrixXd p = spec.projector(b.J);
            CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);   // idempotent
            sum += p;
            for (const auto& o : spec.blocks) {
                if (o.J == b.J) continue;
                CHECK((p * spec.projector(o.J)).cwiseAbs().maxCoeff() < 1e-10); // orthogonal
            }
        }
        CHECK((sum - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("oracle pmf against closed forms") {
    // M = N = 1 triplet law
    for (double c : {0.0, 0.5, 1.0}) {
        const auto pj = oracle_p_j(1, 1, c);
        for (const auto& [J, p] : pj) {
            if (J == w(1)) CHECK(p == doctest::Approx(0.5 * (1 + c)).epsilon(1e-12));
            if (J == w(0)) CHECK(p == doctest::Approx(0.5 * (1 - c)).epsilon(1e-12));
        }
    }
    // keystone at small scale: exact match with the analytic k-sum
    for (int total = 2; total <= 6; ++total) {
        for (int M = 1; M < total; ++M) {
            const int N = total - M;
            const Scenario s(2, M, N);
            for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const auto pj = oracle_p_j(M, N, c);
                for (const auto& [J, p] : pj) {
                    if (J < s.j_min()) {
                        REQUIRE(std::abs(p) < 1e-12);
                        continue;
                    }
                    REQUIRE(std::abs(p - p_j_given_c(s, J, c)) < 1e-10);
                }
            }
        }
    }
    CHECK_THROWS_AS(oracle_p_j(12, 1, 0.5), TooLarge);
}

TEST_CASE("oracle fidelity") {
    for (double c : {0.0, 0.3, 1.0})
        CHECK(oracle_fidelity_optimal(1, 1, c) == doctest::Approx(0.5 * (1 + c * c)).epsilon(1e-12));
    CHECK(oracle_fidelity_optimal(2, 2, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    const Scenario s(2, 2, 2);
    double direct = 0.0;
    for (HalfInt J : s.j_ladder()) {
        const double p = p_j_given_c(s, J, 0.0);
        direct += p * p;
    }
    CHECK(oracle_fidelity_optimal(2, 2, 0.0) == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("mixed joint oracle") {
    // pure states: point mass at (J0, J1) = (N/2, M/2) and the J marginal
    // reproduces the pure-state pmf
    const int M = 3, N = 2;
    const auto joint = oracle_mixed_joint(M, N, 0.4, 1.0, 1.0);
    const Scenario s(2, M, N);
    double mass = 0.0;
    for (const auto& e : joint) {
        mass += e.prob;
        if (e.J0 == w(1) && e.J1 == h(3)) {
            CHECK(std::abs(e.prob - p_j_given_c(s, e.J, 0.4)) < 1e-10);
        } else {
            CHECK(std::abs(e.prob) < 1e-12);
        }
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));

    // M = N = 1 Werner-like pair: J0 = J1 = 1/2 always; triplet weight
    // interpolates between pure (1+c)/2 and maximally mixed 3/4
    for (double r : {0.0, 0.5, 1.0}) {
        const double c = 0.6;
        const auto jw = oracle_mixed_joint(1, 1, c, r, r);
        double mass_w = 0.0, triplet = 0.0;
        for (const auto& e : jw) {
            mass_w += e.prob;
            CHECK(e.J0 == h(1));
            CHECK(e.J1 == h(1));
            if (e.J == w(1)) triplet = e.prob;
        }
        CHECK(mass_w == doctest::Approx(1.0).epsilon(1e-10));
        // 4x4 two-qubit computation by hand: rho = rho_psi x rho_phi,
        // tr(Pi_triplet rho) = 1/2 (1 + r^2 (1 + c)/2 - r^2/2 ... ) reduces to
        // 3/4 + r^2 (2 c - 1)/4
        CHECK(triplet == doctest::Approx(0.75 + r * r * (2.0 * c - 1.0) / 4.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(oracle_mixed_joint(10, 1, 0.5, 0.5, 0.5), TooLarge);
}

TEST_CASE("finite-difference fisher oracle") {
    const Scenario s(2, 2, 1);
    for (double c : {0.3, 0.5}) {
        const double expect = (4.0 / 3.0) * (1.0 / (1.0 + 2.0 * c) + 1.0 / (2.0 - 2.0 * c));
        CHECK(fisher_fd(s, c) == doctest::Approx(expect).epsilon(1e-5));
    }
    CHECK_THROWS_AS(fisher_fd(s, 1e-7), Endpoint);
}
