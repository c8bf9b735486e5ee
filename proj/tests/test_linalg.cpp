#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "srl/linalg.hpp"

using srl::Matrix;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

Matrix random_matrix(int rows, int cols, std::mt19937_64& gen) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = 2.0 * srl::uniform_unit(gen()) - 1.0;
    return m;
}

}  // namespace

TEST_CASE("spectral radius on closed-form inputs") {
    CHECK(srl::spectral_radius(from_rows({{0, 1}, {0, 0}})) == 0.0);
    CHECK(srl::spectral_radius(Matrix::Identity(3, 3)) == Catch::Approx(1.0).epsilon(1e-12));
    // roots of x^2 - 3x + 1
    const double expected = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(srl::spectral_radius(from_rows({{2, 1}, {1, 1}})) ==
          Catch::Approx(expected).epsilon(1e-10));
}

TEST_CASE("spectral radius input validation") {
    Matrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(srl::spectral_radius(rect), srl::dimension_error);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(srl::spectral_radius(bad), srl::validation_error);
    CHECK_THROWS_AS(srl::operator_norm(bad), srl::validation_error);
}

TEST_CASE("operator norm on closed-form inputs") {
    CHECK(srl::operator_norm(Matrix::Zero(3, 3)) == 0.0);
    Matrix d = from_rows({{3, 0}, {0, 1}});
    CHECK(srl::operator_norm(d) == Catch::Approx(3.0).epsilon(1e-12));
    // rank-one: the largest singular value equals the Frobenius norm
    CHECK(srl::operator_norm(from_rows({{0, 2}, {0, 0}})) == Catch::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("singular spectrum") {
    auto s = srl::singular_values(from_rows({{3, 0}, {0, 1}}));
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == Catch::Approx(3.0));
    CHECK(s.values[1] == Catch::Approx(1.0));

    auto z = srl::singular_values(Matrix::Zero(2, 2));
    CHECK(z.values[0] == 0.0);
    CHECK(z.values[1] == 0.0);

    // eigenvalues of A^T A for [[1,1],[0,1]] are (3 +- sqrt 5)/2
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    auto g = srl::singular_values(from_rows({{1, 1}, {0, 1}}));
    CHECK(g.values[0] == Catch::Approx(phi).epsilon(1e-12));
    CHECK(g.values[1] == Catch::Approx(1.0 / phi).epsilon(1e-12));
}

TEST_CASE("distance to rank k") {
    Matrix d = from_rows({{3, 0}, {0, 1}});
    CHECK(srl::distance_to_rank(d, 1) == Catch::Approx(1.0));
    CHECK(srl::distance_to_rank(d, 0) == Catch::Approx(3.0));
    CHECK(srl::distance_to_rank(d, 2) == 0.0);
    CHECK(srl::distance_to_rank(d, 7) == 0.0);
    CHECK_THROWS_AS(srl::distance_to_rank(d, -1), srl::validation_error);
}

TEST_CASE("norm properties on random matrices") {
    std::mt19937_64 gen(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(gen() % 5);
        Matrix a = random_matrix(d, d, gen);
        Matrix b = random_matrix(d, d, gen);

        const double na = srl::operator_norm(a);
        const double nb = srl::operator_norm(b);
        CHECK(srl::operator_norm(a * b) <= na * nb + 1e-12);
        CHECK(std::abs(na - nb) <= srl::operator_norm(a - b) + 1e-12);
        CHECK(srl::spectral_radius(a) <= na + 1e-12);
    }
}

TEST_CASE("Eckart-Young optimality against random low-rank competitors") {
    std::mt19937_64 gen(7);
    const int d = 5;
    Matrix a = random_matrix(d, d, gen);
    for (int k = 0; k <= 3; ++k) {
        const double dist = srl::distance_to_rank(a, k);
        for (int trial = 0; trial < 100; ++trial) {
            Matrix r = k == 0 ? Matrix::Zero(d, d).eval()
                              : (random_matrix(d, k, gen) * random_matrix(k, d, gen)).eval();
            CHECK(dist <= srl::operator_norm(a - r) + 1e-12);
        }
    }
}

TEST_CASE("power law of the spectral radius") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_matrix(3, 3, gen);
        const double rho = srl::spectral_radius(a);
        Matrix p = a;
        for (int n = 2; n <= 6; ++n) {
            p = p * a;
            const double expected = std::pow(rho, n);
            CHECK(srl::spectral_radius(p) ==
                  Catch::Approx(expected).epsilon(1e-8).margin(1e-12));
        }
    }
}

TEST_CASE("make_matrix validates shape and entries") {
    CHECK_THROWS_AS(srl::make_matrix(2, 2, {1, 2, 3}), srl::dimension_error);
    CHECK_THROWS_AS(srl::make_matrix(0, 2, {}), srl::dimension_error);
    CHECK_THROWS_AS(srl::make_matrix(1, 2, {1.0, std::nan("")}), srl::validation_error);
    Matrix m = srl::make_matrix(2, 2, {1, 2, 3, 4});
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 0) == 3.0);
}
