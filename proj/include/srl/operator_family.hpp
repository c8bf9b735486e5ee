#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "srl/jsr.hpp"
#include "srl/radii_report.hpp"
#include "srl/shift_operator.hpp"
#include "srl/word_search.hpp"

namespace srl {

/// Nonempty finite set of shift-plus-finite-rank operators; finiteness makes
/// the family precompact, which is the standing hypothesis of the
/// generalized Berger-Wang formula.
struct OperatorFamily {
    std::vector<ShiftFinRankOperator> members;
    std::string label;

    std::size_t size() const { return members.size(); }

    void validate() const {
        if (members.empty()) throw validation_error("OperatorFamily: member list is empty");
        for (const auto& m : members) m.validate();
    }
};

/// Per-n sups of ||.||^(1/n), ||.||_f^(1/n), ||.||_chi^(1/n) and the max of
/// rho^(1/n) over all words, with the four limiting radius estimates.
/// Word products are exact compositions, so only the n -> infinity
/// extrapolation carries error.
inline FamilyRadiiReport family_radii(const OperatorFamily& fam, int n_max, double rho_tol = 1e-6,
                                      std::uint64_t budget = default_word_budget) {
    fam.validate();
    if (n_max < 1) throw validation_error("family_radii: n_max must be >= 1");

    struct Level {
        double norm_sup = -1.0;
        double f_sup = -1.0;
        double rho_max = -1.0;
        bool rho_flagged = false;
    };
    std::vector<Level> levels(static_cast<std::size_t>(n_max));

    const bool complete = for_each_word<ShiftFinRankOperator>(
        fam.size(), n_max, budget,
        [&](int i) { return fam.members[static_cast<std::size_t>(i)]; },
        [&](int i, const ShiftFinRankOperator& p) {
            return compose(fam.members[static_cast<std::size_t>(i)], p);
        },
        [&](const std::vector<int>& word, const ShiftFinRankOperator& p) {
            Level& lv = levels[word.size() - 1];
            lv.norm_sup = std::max(lv.norm_sup, op_norm(p));
            lv.f_sup = std::max(lv.f_sup, seminorm_f(p));
            const SpectralRadiusEstimate est = op_spectral_radius(p, rho_tol);
            lv.rho_max = std::max(lv.rho_max, est.value);
            lv.rho_flagged = lv.rho_flagged || est.flagged;
        });

    FamilyRadiiReport rep;
    rep.label = fam.label;
    rep.complete = complete;
    double run_upper = std::numeric_limits<double>::infinity();
    double run_chi = std::numeric_limits<double>::infinity();
    double run_lower = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const Level& lv = levels[static_cast<std::size_t>(n - 1)];
        FamilyRadiiRow row;
        row.n = n;
        row.norm_sup = detail::root_or_nan(lv.norm_sup, n);
        row.f_sup = detail::root_or_nan(lv.f_sup, n);
        row.chi_sup = row.f_sup;  // Hilbert model: the chi and f seminorms coincide
        row.gelfand_max = detail::root_or_nan(lv.rho_max, n);
        run_lower = std::max(run_lower, row.gelfand_max);
        row.lower = run_lower;
        if (complete) {
            run_upper = std::min(run_upper, row.norm_sup);
            run_chi = std::min(run_chi, row.chi_sup);
            row.upper = run_upper;
            row.gap = row.upper - row.lower;
        } else {
            row.upper = row.gap = std::nan("");
        }
        rep.rows.push_back(row);
    }
    rep.rho_r = run_lower;
    if (complete) {
        rep.rho_hat = run_upper;
        rep.rho_chi = run_chi;
        rep.rho_f = run_chi;
    } else {
        rep.rho_hat = rep.rho_chi = rep.rho_f = std::nan("");
    }
    return rep;
}

}  // namespace srl
