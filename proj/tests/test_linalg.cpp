#include <doctest.h>

#include <cmath>
#include <random>

#include "iota/linalg.hpp"
#include "oracles.hpp"

using namespace iota;

TEST_CASE("frobenius_eigen on textbook cases") {
    SUBCASE("1x1") {
        const EigenResult r = frobenius_eigen(Matrix{{0.5}});
        CHECK(r.lambda == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.right[0] == doctest::Approx(1.0));
    }
    SUBCASE("2-cycle permutation (imprimitive)") {
        const EigenResult r = frobenius_eigen(Matrix{{0, 1}, {1, 0}});
        CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.right[0] == doctest::Approx(1.0));
        CHECK(r.right[1] == doctest::Approx(1.0));
    }
    SUBCASE("wheat-iron technology") {
        // characteristic polynomial l^2 - 1.1 l + 0.1, roots 1 and 0.1
        const Matrix c{{0.7, 6.0}, {0.03, 0.4}};
        const EigenResult r = frobenius_eigen(c);
        CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.right[0] == doctest::Approx(1.0));
        CHECK(r.right[1] == doctest::Approx(0.05).epsilon(1e-9)); // q = [400, 20]
    }
    SUBCASE("zero matrix") {
        const EigenResult r = frobenius_eigen(Matrix(2, 2, 0.0));
        CHECK(r.lambda == doctest::Approx(0.0));
    }
}

TEST_CASE("frobenius_eigen rejects bad input") {
    CHECK_THROWS_AS(frobenius_eigen(Matrix(2, 3, 0.5)), NonSquare);
    CHECK_THROWS_AS(frobenius_eigen(Matrix{{-0.1}}), NegativeEntry);
    CHECK_THROWS_AS(frobenius_eigen(Matrix{{0.5}}, 0.0), ValidationError);
}

TEST_CASE("frobenius_eigen matches the characteristic-polynomial oracle") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        const Matrix m = oracles::random_positive(rng, n, 0.05, 2.0);
        const EigenResult r = frobenius_eigen(m);
        CHECK(r.lambda == doctest::Approx(oracles::charpoly_dominant_root(m)).epsilon(1e-9));
    }
}

TEST_CASE("frobenius eigenvalue lies between the row-sum bounds") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix m = oracles::random_positive(rng, 4, 0.0, 3.0);
        const EigenResult r = frobenius_eigen(m);
        double lo = 1e300, hi = 0.0;
        for (double s : m.row_sums()) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        CHECK(r.lambda >= lo - 1e-9);
        CHECK(r.lambda <= hi + 1e-9);
    }
}

TEST_CASE("left and right eigenvectors satisfy their residual bounds") {
    const Matrix c{{0.7, 6.0}, {0.03, 0.4}};
    const EigenResult r = frobenius_eigen(c);
    const Vector mr = c.apply(r.right);
    const Vector ml = c.apply_transposed(r.left);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::fabs(mr[i] - r.lambda * r.right[i]) <= 1e-10);
        CHECK(std::fabs(ml[i] - r.lambda * r.left[i]) <= 1e-10);
    }
    CHECK(*std::max_element(r.right.begin(), r.right.end()) == doctest::Approx(1.0));
    CHECK(*std::max_element(r.left.begin(), r.left.end()) == doctest::Approx(1.0));
}

TEST_CASE("solve_linear on small systems") {
    CHECK(solve_linear(Matrix::identity(2), {3, 4}) == Vector{3, 4});
    const Vector d = solve_linear(Matrix{{2, 0}, {0, 4}}, {2, 8});
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(2.0));
    const Vector s = solve_linear(Matrix{{1, -0.5}, {-0.5, 1}}, {1, 1});
    CHECK(s[0] == doctest::Approx(2.0));
    CHECK(s[1] == doctest::Approx(2.0));
}

TEST_CASE("solve_linear detects singularity") {
    CHECK_THROWS_AS(solve_linear(Matrix{{1, 1}, {1, 1}}, {1, 1}), SingularMatrix);
    CHECK_THROWS_AS(solve_linear(Matrix(3, 3, 0.0), {1, 1, 1}), SingularMatrix);
}

TEST_CASE("invert on small matrices") {
    const Matrix i3 = invert(Matrix::identity(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(i3(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
    CHECK(invert(Matrix{{2}})(0, 0) == doctest::Approx(0.5));
    const Matrix inv = invert(Matrix{{1, -0.5}, {-0.5, 1}});
    CHECK(inv(0, 0) == doctest::Approx(4.0 / 3.0));
    CHECK(inv(0, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(inv(1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(inv(1, 1) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("invert times original reproduces the identity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m(5, 5);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j)
                m(i, j) = dist(rng);
            m(i, i) += 5.0; // keep it well conditioned
        }
        const Matrix prod = m * invert(m);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(std::fabs(prod(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-9);
    }
}

TEST_CASE("leading principal minors") {
    CHECK(leading_principal_minors(Matrix{{0.5}}) == Vector{0.5});
    const Vector id = leading_principal_minors(Matrix::identity(2));
    CHECK(id[0] == doctest::Approx(1.0));
    CHECK(id[1] == doctest::Approx(1.0));
    const Vector m = leading_principal_minors(Matrix{{0.5, -0.5}, {-0.5, 0.5}});
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(0.0));
}

TEST_CASE("is_irreducible") {
    CHECK(is_irreducible(Matrix{{0, 1}, {1, 0}}));
    CHECK_FALSE(is_irreducible(Matrix{{1, 1}, {0, 1}}));
    CHECK(is_irreducible(Matrix{{0.7, 6.0}, {0.03, 0.4}}));
    CHECK(is_irreducible(Matrix{{0.5}}));
    CHECK_FALSE(is_irreducible(Matrix{{0.0}}));
    CHECK_THROWS_AS(is_irreducible(Matrix{{0, -1}, {1, 0}}), NegativeEntry);
}

TEST_CASE("dominant_eigen handles signed matrices") {
    // eigenvalues 3 and 1
    const Matrix m{{2, 1}, {1, 2}};
    CHECK(dominant_eigen(m).lambda == doctest::Approx(3.0).epsilon(1e-10));
    const Matrix neg{{-2, 0}, {0, 1}};
    CHECK(dominant_eigen(neg).lambda == doctest::Approx(-2.0).epsilon(1e-9));
}
