#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "srl/alpha.hpp"
#include "srl/jsr.hpp"
#include "srl/matrix_set.hpp"
#include "srl/operator_family.hpp"
#include "srl/radii_report.hpp"

namespace srl {

// The injectivization E sends an operator L on X to the operator on the
// sup-norm sequence space X_inf acting by
//     E(L)(v_1, v_2, v_3, ...) = (L v_1, alpha_1 v_1, alpha_2 v_2, ...).
// E(L) is injective even when L = 0, and products satisfy
//     ||E(L_n)...E(L_1)|| = max_{0<=k<=n} ( ||L_{n-k}...L_1|| * prod_{i<=k} alpha_i ),
// the k = n term carrying the empty-product norm 1.  All extended
// quantities flow through this identity; the extension is materialized only
// in the truncated test oracle below.

namespace detail {

/// max_{0<=k<=n} prefix_value(n-k) * exp(s_k), where prefix_value(j) is the
/// norm (or seminorm) of the product of the first j letters.
inline double extension_max_formula(const std::vector<double>& prefix_value,
                                    const AlphaSequence& alpha) {
    const int n = static_cast<int>(prefix_value.size()) - 1;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k)
        best = std::max(best, prefix_value[static_cast<std::size_t>(n - k)] *
                                  std::exp(alpha.partial_log_sum(k)));
    return best;
}

template <class Base, class Element, class FirstFn, class NextFn, class ValueFn>
std::vector<double> prefix_values(const Base& base, const Word& w, FirstFn first, NextFn next,
                                  ValueFn value, double empty_value) {
    w.validate(base.size());
    std::vector<double> out;
    out.reserve(w.length() + 1);
    out.push_back(empty_value);
    Element p = first(w.indices.front());
    out.push_back(value(p));
    for (std::size_t k = 1; k < w.indices.size(); ++k) {
        p = next(w.indices[k], p);
        out.push_back(value(p));
    }
    return out;
}

}  // namespace detail

inline double extended_norm(const MatrixSet& set, const Word& w, const AlphaSequence& alpha) {
    set.validate();
    alpha.validate();
    auto values = detail::prefix_values<MatrixSet, Matrix>(
        set, w, [&](int i) { return set.members[static_cast<std::size_t>(i)]; },
        [&](int i, const Matrix& p) -> Matrix { return set.members[static_cast<std::size_t>(i)] * p; },
        [](const Matrix& p) { return operator_norm(p); }, 1.0);
    return detail::extension_max_formula(values, alpha);
}

inline double extended_norm(const OperatorFamily& fam, const Word& w,
                            const AlphaSequence& alpha) {
    fam.validate();
    alpha.validate();
    auto values = detail::prefix_values<OperatorFamily, ShiftFinRankOperator>(
        fam, w, [&](int i) { return fam.members[static_cast<std::size_t>(i)]; },
        [&](int i, const ShiftFinRankOperator& p) {
            return compose(fam.members[static_cast<std::size_t>(i)], p);
        },
        [](const ShiftFinRankOperator& p) { return op_norm(p); }, 1.0);
    return detail::extension_max_formula(values, alpha);
}

/// Same identity with the f seminorm in place of the norm.  The empty
/// product contributes ||I||_f = 1 (the ambient space is infinite
/// dimensional), so for matrix words, whose seminorms all vanish, the value
/// reduces to the pure alpha tail exp(s_n).
inline double extended_seminorm_f(const OperatorFamily& fam, const Word& w,
                                  const AlphaSequence& alpha) {
    fam.validate();
    alpha.validate();
    auto values = detail::prefix_values<OperatorFamily, ShiftFinRankOperator>(
        fam, w, [&](int i) { return fam.members[static_cast<std::size_t>(i)]; },
        [&](int i, const ShiftFinRankOperator& p) {
            return compose(fam.members[static_cast<std::size_t>(i)], p);
        },
        [](const ShiftFinRankOperator& p) { return seminorm_f(p); }, 1.0);
    return detail::extension_max_formula(values, alpha);
}

inline double extended_seminorm_f(const MatrixSet& set, const Word& w,
                                  const AlphaSequence& alpha) {
    set.validate();
    alpha.validate();
    w.validate(set.size());
    return std::exp(alpha.partial_log_sum(static_cast<int>(w.length())));
}

/// Independent oracle: materialize the first N levels of the extension as a
/// block operator on X^N, compose the word densely, and take the sup-norm
/// operator norm.  Every block row of such a product has exactly one
/// nonzero block, so the norm is the largest block-wise 2-norm.
inline double truncated_extension_norm(const MatrixSet& set, const Word& w,
                                       const AlphaSequence& alpha, int levels) {
    set.validate();
    alpha.validate();
    w.validate(set.size());
    const int n = static_cast<int>(w.length());
    if (levels < n + 1)
        throw validation_error("truncated_extension_norm: need levels >= word length + 1");
    const int d = set.dim;
    const int big = levels * d;

    auto lift = [&](const Matrix& l) {
        Matrix e = Matrix::Zero(big, big);
        e.block(0, 0, d, d) = l;
        for (int i = 1; i < levels; ++i)
            e.block(i * d, (i - 1) * d, d, d) = alpha.alpha(i) * Matrix::Identity(d, d);
        return e;
    };

    Matrix prod = lift(set.members[static_cast<std::size_t>(w.indices.front())]);
    for (std::size_t k = 1; k < w.indices.size(); ++k)
        prod = lift(set.members[static_cast<std::size_t>(w.indices[k])]) * prod;

    double best = 0.0;
    for (int r = 0; r < levels; ++r) {
        int nonzero = 0;
        for (int c = 0; c < levels; ++c) {
            const Matrix blk = prod.block(r * d, c * d, d, d);
            if (blk.lpNorm<Eigen::Infinity>() > 0.0) {
                ++nonzero;
                best = std::max(best, operator_norm(blk));
            }
        }
        if (nonzero > 1)
            throw std::logic_error("truncated_extension_norm: block row with multiple blocks");
    }
    return best;
}

/// Per-n radii columns of the extended set E(A) next to the base set's.
struct ExtendedRadiiRow {
    int n = 0;
    double base_norm_sup = 0.0;
    double base_gelfand_max = 0.0;
    double ext_norm_sup = 0.0;
    double ext_f_sup = 0.0;
    double ext_gelfand_max = 0.0;  // equal to the base column: rho is preserved
};

struct ExtendedRadiiReport {
    std::string label;
    std::vector<ExtendedRadiiRow> rows;
    bool complete = true;
};

/// The sup over E(A)^n factorizes level-by-level through the identity:
///     sup ||E-word of length n||  =  max_k ( sup ||A^{n-k} word|| * exp(s_k) ),
/// so the extended columns come from the base set's raw per-n sups.  The
/// rho column transfers unchanged, which the report asserts by copying.
inline ExtendedRadiiReport extended_radii(const MatrixSet& set, int n_max,
                                          const AlphaSequence& alpha,
                                          std::uint64_t budget = default_word_budget) {
    alpha.validate();
    bool complete = true;
    auto stats = detail::enumerate_matrix_words(set, n_max, budget, true, true, complete);

    ExtendedRadiiReport rep;
    rep.label = set.label;
    rep.complete = complete;
    std::vector<double> raw_norm_sup{1.0};  // raw sups, index = word length
    for (int n = 1; n <= n_max; ++n)
        raw_norm_sup.push_back(stats[static_cast<std::size_t>(n - 1)].norm_sup);

    for (int n = 1; n <= n_max; ++n) {
        const auto& s = stats[static_cast<std::size_t>(n - 1)];
        ExtendedRadiiRow row;
        row.n = n;
        row.base_norm_sup = detail::root_or_nan(s.norm_sup, n);
        row.base_gelfand_max = detail::root_or_nan(s.rho_max, n);
        double ext_raw = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= n; ++k)
            ext_raw = std::max(ext_raw, raw_norm_sup[static_cast<std::size_t>(n - k)] *
                                            std::exp(alpha.partial_log_sum(k)));
        row.ext_norm_sup = detail::nth_root(ext_raw, n);
        row.ext_f_sup = std::exp(alpha.partial_log_sum(n) / n);
        row.ext_gelfand_max = row.base_gelfand_max;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace srl
