#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "srl/common.hpp"

namespace srl {

/// Strictly decreasing sequence alpha_i = exp(-beta*(i+1)) in (0,1].
/// The quadratic decay of the partial log sums
///   s_k = sum_{i=1..k} log alpha_i = -beta * k(k+3)/2
/// dominates any linear rate, which is what the averaging identity below
/// needs from the sequence.  Indexing starts at i = 1 with s_0 = 0; the
/// k = n term of the product identities carries the empty-product norm.
struct AlphaSequence {
    double beta = 1.0;

    void validate() const {
        if (!(beta > 0.0)) throw validation_error("AlphaSequence: beta must be positive");
    }

    double alpha(int i) const {
        if (i < 1) throw validation_error("AlphaSequence: index starts at 1");
        return std::exp(-beta * (i + 1));
    }

    double log_alpha(int i) const { return -beta * (i + 1); }

    /// Closed form of the partial log sum s_k.
    double partial_log_sum(int k) const {
        if (k < 0) throw validation_error("AlphaSequence: k must be >= 0");
        return -beta * (static_cast<double>(k) * (k + 3)) / 2.0;
    }
};

/// Built-in certified-subadditive sequence generators.
struct SubadditiveSequence {
    enum class Kind { linear, neg_square, min_linear };

    Kind kind = Kind::linear;
    double lambda = 0.0;   // linear slope
    double c = 0.0;        // linear offset, must be >= 0 for subadditivity
    double lambda2 = 0.0;  // second form for min_linear
    double c2 = 0.0;

    double eval(std::int64_t n) const {
        const double x = static_cast<double>(n);
        switch (kind) {
            case Kind::linear: return lambda * x + c;
            case Kind::neg_square: return -x * x;
            case Kind::min_linear: return std::min(lambda * x + c, lambda2 * x + c2);
        }
        return 0.0;
    }

    static SubadditiveSequence linear(double lambda, double c = 0.0) {
        SubadditiveSequence s;
        s.kind = Kind::linear;
        s.lambda = lambda;
        s.c = c;
        return s;
    }
    static SubadditiveSequence neg_square() {
        SubadditiveSequence s;
        s.kind = Kind::neg_square;
        return s;
    }
    static SubadditiveSequence min_linear(double l1, double c1, double l2, double c2) {
        SubadditiveSequence s;
        s.kind = Kind::min_linear;
        s.lambda = l1;
        s.c = c1;
        s.lambda2 = l2;
        s.c2 = c2;
        return s;
    }
};

struct AlphaPropertyReport {
    double direct_estimate = 0.0;   // a_n / n at n = n_max
    double formula_estimate = 0.0;  // (1/n) max_k (a_{n-k} + s_k)
    double difference = 0.0;
    bool diverged = false;  // both estimates below the -1e3 divergence floor
    bool passed = false;
};

/// Checks the defining property of the alpha sequence on a certified
/// subadditive input:  lim a_n/n  =  lim (1/n) max_{0<=k<=n} (a_{n-k} + s_k).
/// Subadditivity itself is validated by sampling a_{n+m} <= a_n + a_m on
/// 10^4 random index pairs before anything else runs.
inline AlphaPropertyReport verify_alpha_property(const SubadditiveSequence& seq,
                                                 std::int64_t n_max, const AlphaSequence& alpha) {
    alpha.validate();
    if (n_max < 2) throw validation_error("verify_alpha_property: n_max must be >= 2");

    std::mt19937_64 gen(0x5eedULL);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(n_max));
        const std::int64_t m = 1 + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(n_max));
        const double lhs = seq.eval(n + m);
        const double rhs = seq.eval(n) + seq.eval(m);
        const double slack = 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (lhs > rhs + slack)
            throw validation_error("verify_alpha_property: sequence is not subadditive (a_" +
                                   std::to_string(n + m) + " > a_" + std::to_string(n) + " + a_" +
                                   std::to_string(m) + ")");
    }

    AlphaPropertyReport rep;
    rep.direct_estimate = seq.eval(n_max) / static_cast<double>(n_max);
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = 0; k <= n_max; ++k)
        best = std::max(best, seq.eval(n_max - k) + alpha.partial_log_sum(static_cast<int>(k)));
    rep.formula_estimate = best / static_cast<double>(n_max);
    rep.difference = rep.formula_estimate - rep.direct_estimate;
    rep.diverged = rep.direct_estimate < -1e3 && rep.formula_estimate < -1e3;
    rep.passed = rep.diverged || std::abs(rep.difference) <= 0.01;
    return rep;
}

}  // namespace srl
