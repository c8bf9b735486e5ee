#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "srl/extension.hpp"

using srl::AlphaSequence;
using srl::Matrix;
using srl::MatrixSet;
using srl::SubadditiveSequence;
using srl::Word;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

MatrixSet random_set(std::uint64_t seed, int members) {
    std::mt19937_64 gen(seed);
    auto rnd = [&] { return 2.0 * srl::uniform_unit(gen()) - 1.0; };
    std::vector<Matrix> ms;
    for (int i = 0; i < members; ++i) ms.push_back(mat2(rnd(), rnd(), rnd(), rnd()));
    return srl::make_matrix_set(std::move(ms));
}

}  // namespace

TEST_CASE("alpha sequence closed forms") {
    AlphaSequence a{1.0};
    CHECK(a.alpha(1) == Catch::Approx(std::exp(-2.0)));
    CHECK(a.alpha(2) < a.alpha(1));  // strictly decreasing, in (0,1]
    CHECK(a.alpha(1) <= 1.0);
    // s_k = -beta * k(k+3)/2 against direct summation
    double s = 0.0;
    for (int k = 1; k <= 12; ++k) {
        s += std::log(a.alpha(k));
        CHECK(a.partial_log_sum(k) == Catch::Approx(s).margin(1e-12));
    }
    CHECK(a.partial_log_sum(0) == 0.0);
    CHECK_THROWS_AS(AlphaSequence{0.0}.validate(), srl::validation_error);
}

TEST_CASE("alpha averaging property on linear generators") {
    AlphaSequence a{1.0};
    for (double lambda : {-1.0, 0.0, 0.7}) {
        auto rep = srl::verify_alpha_property(SubadditiveSequence::linear(lambda, 0.5), 10000, a);
        CHECK_FALSE(rep.diverged);
        CHECK(std::abs(rep.difference) <= 0.01);
        CHECK(rep.passed);
        CHECK(rep.direct_estimate == Catch::Approx(lambda).margin(0.01));
    }
}

TEST_CASE("alpha averaging property detects joint divergence") {
    auto rep = srl::verify_alpha_property(SubadditiveSequence::neg_square(), 10000, AlphaSequence{1.0});
    CHECK(rep.diverged);
    CHECK(rep.direct_estimate < -1e3);
    CHECK(rep.formula_estimate < -1e3);
    CHECK(rep.passed);
}

TEST_CASE("alpha averaging property on min of linear forms") {
    auto seq = SubadditiveSequence::min_linear(0.3, 2.0, -0.4, 5.0);
    auto rep = srl::verify_alpha_property(seq, 10000, AlphaSequence{1.0});
    CHECK(rep.passed);
    CHECK(rep.direct_estimate == Catch::Approx(-0.4).margin(0.01));
}

TEST_CASE("non-subadditive input is rejected") {
    // linear with negative offset violates a_{n+m} <= a_n + a_m
    CHECK_THROWS_AS(
        srl::verify_alpha_property(SubadditiveSequence::linear(0.5, -1.0), 1000, AlphaSequence{1.0}),
        srl::validation_error);
}

TEST_CASE("extended norm closed forms") {
    AlphaSequence a{1.0};

    MatrixSet zero = srl::make_matrix_set({Matrix::Zero(2, 2).eval()});
    CHECK(srl::extended_norm(zero, Word{{0}}, a) == Catch::Approx(std::exp(-2.0)).epsilon(1e-12));

    MatrixSet id = srl::make_matrix_set({Matrix::Identity(2, 2).eval()});
    for (int n = 1; n <= 6; ++n)
        CHECK(srl::extended_norm(id, Word{std::vector<int>(n, 0)}, a) ==
              Catch::Approx(1.0).epsilon(1e-12));

    // nilpotent L: max(||L^2||, ||L|| a_1, a_1 a_2) = max(0, e^-2, e^-5)
    MatrixSet nil = srl::make_matrix_set({mat2(0, 1, 0, 0)});
    CHECK(srl::extended_norm(nil, Word{{0, 0}}, a) == Catch::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("extended f-seminorm closed forms") {
    AlphaSequence a{1.0};
    srl::OperatorFamily shift{{srl::weighted_shift(1.0, 1)}, ""};
    CHECK(srl::extended_seminorm_f(shift, Word{{0}}, a) == Catch::Approx(1.0).epsilon(1e-12));

    srl::OperatorFamily finite{{[] {
                                   srl::ShiftFinRankOperator f;
                                   f.finite_part.push_back({1, 1, 5.0});
                                   return f;
                               }()},
                               ""};
    CHECK(srl::extended_seminorm_f(finite, Word{{0}}, a) ==
          Catch::Approx(std::exp(-2.0)).epsilon(1e-12));

    // matrix words: the pure alpha tail
    MatrixSet set = random_set(5, 2);
    for (int n = 1; n <= 5; ++n)
        CHECK(srl::extended_seminorm_f(set, Word{std::vector<int>(n, 0)}, a) ==
              Catch::Approx(std::exp(a.partial_log_sum(n))).epsilon(1e-12));
}

TEST_CASE("truncated oracle equals the max formula") {
    AlphaSequence a{1.0};
    MatrixSet id = srl::make_matrix_set({Matrix::Identity(2, 2).eval()});
    CHECK(srl::truncated_extension_norm(id, Word{{0, 0, 0}}, a, 8) ==
          Catch::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 gen(90210);
    for (int trial = 0; trial < 100; ++trial) {
        MatrixSet set = random_set(gen(), 2);
        const int len = 1 + static_cast<int>(gen() % 8);
        Word w;
        for (int k = 0; k < len; ++k) w.indices.push_back(static_cast<int>(gen() % 2));
        const double formula = srl::extended_norm(set, w, a);
        const double oracle = srl::truncated_extension_norm(set, w, a, len + 1 + static_cast<int>(gen() % 3));
        CHECK(formula == Catch::Approx(oracle).margin(1e-12));
    }

    CHECK_THROWS_AS(srl::truncated_extension_norm(id, Word{{0, 0, 0}}, a, 3),
                    srl::validation_error);
}

TEST_CASE("truncated extension is injective even for L = 0") {
    // smallest singular value restricted to the first N-1 block columns is
    // at least min alpha_i: the lower block rows are scaled identities
    AlphaSequence a{1.0};
    const int d = 2, levels = 6;
    MatrixSet zero = srl::make_matrix_set({Matrix::Zero(d, d).eval()});
    Matrix e = Matrix::Zero(levels * d, levels * d);
    e.block(0, 0, d, d) = zero.members[0];
    for (int i = 1; i < levels; ++i)
        e.block(i * d, (i - 1) * d, d, d) = a.alpha(i) * Matrix::Identity(d, d);
    const Matrix restricted = e.leftCols((levels - 1) * d);
    const auto spectrum = srl::singular_values(restricted);
    const double smallest = spectrum.values.back();
    CHECK(smallest >= a.alpha(levels - 1) * (1.0 - 1e-12));
}

TEST_CASE("extended radii preserve the rho column and track the base set") {
    AlphaSequence a{1.0};
    MatrixSet golden = srl::make_matrix_set({mat2(1, 1, 0, 1), mat2(1, 0, 1, 1)}, "golden");
    auto rep = srl::extended_radii(golden, 10, a);
    REQUIRE(rep.complete);
    for (const auto& row : rep.rows) {
        CHECK(row.ext_gelfand_max == row.base_gelfand_max);  // exact, by the identity
        // the k = 0 term of the identity already reproduces the base sup
        CHECK(row.ext_norm_sup >= row.base_norm_sup - 1e-12);
    }

    // {0}: the extended norm column is the pure alpha tail
    MatrixSet zero = srl::make_matrix_set({Matrix::Zero(2, 2).eval()});
    auto zrep = srl::extended_radii(zero, 8, a);
    for (const auto& row : zrep.rows) {
        CHECK(row.ext_norm_sup ==
              Catch::Approx(std::exp(a.partial_log_sum(row.n) / row.n)).epsilon(1e-12));
        CHECK(row.base_norm_sup == 0.0);
    }

    // {diag(2)}: the k = 0 term dominates at every n
    MatrixSet two = srl::make_matrix_set({(2.0 * Matrix::Identity(2, 2)).eval()});
    auto trep = srl::extended_radii(two, 8, a);
    for (const auto& row : trep.rows) {
        CHECK(row.ext_norm_sup == Catch::Approx(2.0).epsilon(1e-12));
        CHECK(row.base_norm_sup == Catch::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("alpha property in action: extended norms of powers recover rho") {
    // (1/n) log ||E(L)^n|| -> log rho(L): the alpha term cannot drag the
    // norm column below the spectral radius
    AlphaSequence a{1.0};
    std::mt19937_64 gen(4242);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix l = mat2(2.0 * srl::uniform_unit(gen()) - 1.0, 2.0 * srl::uniform_unit(gen()) - 1.0,
                        2.0 * srl::uniform_unit(gen()) - 1.0, 2.0 * srl::uniform_unit(gen()) - 1.0);
        const double rho = srl::spectral_radius(l);
        if (rho < 0.05) continue;  // quasinilpotent draws have -inf log rate
        const int n = 1000;
        // log ||L^j|| via renormalized powers
        std::vector<double> log_norm{0.0};
        Matrix p = l;
        double ledger = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double f = srl::operator_norm(p);
            ledger += std::log(f);
            log_norm.push_back(ledger);
            p /= f;
            if (j < n) p = l * p;
        }
        double best = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= n; ++k)
            best = std::max(best, log_norm[static_cast<std::size_t>(n - k)] + a.partial_log_sum(k));
        CHECK(best / n == Catch::Approx(std::log(rho)).margin(0.02));
    }
}
