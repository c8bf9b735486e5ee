#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "srl/linalg.hpp"
#include "srl/matrix_set.hpp"
#include "srl/radii_report.hpp"
#include "srl/word_search.hpp"

namespace srl {

inline constexpr std::uint64_t default_word_budget = 1u << 22;

namespace detail {

struct PerLengthStats {
    double norm_sup = -1.0;
    double rho_max = -1.0;
    Word best_norm_word;
    Word best_rho_word;
};

/// Exhaustive per-length sups of ||.|| and rho over all words.  Shared by
/// the norm/gelfand bound operations and by the operator-family report.
inline std::vector<PerLengthStats> enumerate_matrix_words(const MatrixSet& set, int n_max,
                                                          std::uint64_t budget, bool want_norm,
                                                          bool want_rho, bool& complete) {
    set.validate();
    if (n_max < 1) throw validation_error("enumerate_matrix_words: n_max must be >= 1");
    std::vector<PerLengthStats> stats(static_cast<std::size_t>(n_max));
    complete = for_each_word<Matrix>(
        set.size(), n_max, budget,
        [&](int i) { return set.members[static_cast<std::size_t>(i)]; },
        [&](int i, const Matrix& p) -> Matrix { return set.members[static_cast<std::size_t>(i)] * p; },
        [&](const std::vector<int>& word, const Matrix& p) {
            PerLengthStats& s = stats[word.size() - 1];
            if (want_norm) {
                const double v = operator_norm(p);
                if (v > s.norm_sup) {  // strict: depth-first order keeps the lex-least maximizer
                    s.norm_sup = v;
                    s.best_norm_word.indices = word;
                }
            }
            if (want_rho) {
                const double v = spectral_radius(p);
                if (v > s.rho_max) {
                    s.rho_max = v;
                    s.best_rho_word.indices = word;
                }
            }
        });
    return stats;
}

inline double nth_root(double v, int n) {
    return v <= 0.0 ? 0.0 : std::pow(v, 1.0 / static_cast<double>(n));
}

/// Per-length stats use -1 as the "never visited" sentinel; map it to nan.
inline double root_or_nan(double v, int n) {
    return v < 0.0 ? std::nan("") : nth_root(v, n);
}

}  // namespace detail

/// Exhaustive per-n sup of ||product||^(1/n) together with the running inf,
/// which certifies an upper bound for the joint spectral radius.
/// On budget exhaustion the report is flagged incomplete and the
/// certification columns are withheld (partial sups underestimate).
inline RadiiReport norm_upper_bound(const MatrixSet& set, int n_max,
                                    std::uint64_t budget = default_word_budget) {
    bool complete = true;
    auto stats = detail::enumerate_matrix_words(set, n_max, budget, true, false, complete);
    RadiiReport rep;
    rep.label = set.label;
    rep.complete = complete;
    double running_upper = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        const auto& s = stats[static_cast<std::size_t>(n - 1)];
        RadiiRow row;
        row.n = n;
        row.norm_sup = detail::root_or_nan(s.norm_sup, n);
        row.best_norm_word = s.best_norm_word;
        running_upper = std::min(running_upper, row.norm_sup);
        row.upper = complete ? running_upper : std::nan("");
        row.gelfand_max = std::nan("");
        row.lower = std::nan("");
        row.gap = std::nan("");
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/// Exhaustive per-n max of rho(product)^(1/n) with the running max, a lower
/// bound for the joint spectral radius valid by the Berger-Wang formula.
/// Doubles as the periodic-orbit evaluation of the subadditive variational
/// principle: a length-n word is a period-n orbit of the full shift, and its
/// mean value is rho(product)^(1/n).
inline RadiiReport gelfand_lower_bound(const MatrixSet& set, int n_max,
                                       std::uint64_t budget = default_word_budget) {
    bool complete = true;
    auto stats = detail::enumerate_matrix_words(set, n_max, budget, false, true, complete);
    RadiiReport rep;
    rep.label = set.label;
    rep.complete = complete;
    double running_lower = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const auto& s = stats[static_cast<std::size_t>(n - 1)];
        RadiiRow row;
        row.n = n;
        row.gelfand_max = detail::root_or_nan(s.rho_max, n);
        row.best_rho_word = s.best_rho_word;
        running_lower = std::max(running_lower, row.gelfand_max);
        row.lower = running_lower;
        row.norm_sup = std::nan("");
        row.upper = std::nan("");
        row.gap = std::nan("");
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

/// Combined norm/gelfand report: the per-n witness of Berger-Wang
/// convergence.  lower <= upper holds at every n for complete reports.
inline RadiiReport bw_report(const MatrixSet& set, int n_max,
                             std::uint64_t budget = default_word_budget) {
    bool complete = true;
    auto stats = detail::enumerate_matrix_words(set, n_max, budget, true, true, complete);
    RadiiReport rep;
    rep.label = set.label;
    rep.complete = complete;
    double running_upper = std::numeric_limits<double>::infinity();
    double running_lower = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const auto& s = stats[static_cast<std::size_t>(n - 1)];
        RadiiRow row;
        row.n = n;
        row.norm_sup = detail::root_or_nan(s.norm_sup, n);
        row.gelfand_max = detail::root_or_nan(s.rho_max, n);
        row.best_norm_word = s.best_norm_word;
        row.best_rho_word = s.best_rho_word;
        // A partially enumerated rho column still certifies a lower bound;
        // a partial norm sup certifies nothing, so upper/gap are withheld.
        running_lower = std::max(running_lower, row.gelfand_max);
        row.lower = running_lower;
        if (complete) {
            running_upper = std::min(running_upper, row.norm_sup);
            row.upper = running_upper;
            row.gap = row.upper - row.lower;
        } else {
            row.upper = row.gap = std::nan("");
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace srl
