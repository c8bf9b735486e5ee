#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "srl/matrix_set.hpp"

namespace srl {

/// One row of a joint-spectral-radius report.
///
/// norm_sup    : sup over words of length n of ||product||^(1/n)
/// gelfand_max : max over words of length n of rho(product)^(1/n)
/// upper       : running inf of the norm column (certified upper bound)
/// lower       : running max of the gelfand column (certified lower bound)
/// gap         : upper - lower
struct RadiiRow {
    int n = 0;
    double norm_sup = 0.0;
    double gelfand_max = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    double gap = 0.0;
    Word best_norm_word;  // lexicographically least maximizer
    Word best_rho_word;
};

struct RadiiReport {
    std::string label;
    std::vector<RadiiRow> rows;
    bool complete = true;  // false when the enumeration budget ran out

    // Reported unconditionally for finite-dimensional input: every matrix is
    // a compact operator, so the chi and f seminorms vanish identically.
    double rho_chi = 0.0;
    double rho_f = 0.0;

    double upper() const { return rows.empty() ? std::nan("") : rows.back().upper; }
    double lower() const { return rows.empty() ? std::nan("") : rows.back().lower; }
    double gap() const { return rows.empty() ? std::nan("") : rows.back().gap; }
};

/// Report for operator families: the jsr columns plus per-n sups of the
/// f and chi seminorms, and the four limiting radius estimates.
struct FamilyRadiiRow {
    int n = 0;
    double norm_sup = 0.0;
    double gelfand_max = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    double gap = 0.0;
    double f_sup = 0.0;    // sup ||.||_f^(1/n)
    double chi_sup = 0.0;  // sup ||.||_chi^(1/n)
};

struct FamilyRadiiReport {
    std::string label;
    std::vector<FamilyRadiiRow> rows;
    bool complete = true;

    double rho_hat = 0.0;  // running inf of norm column
    double rho_chi = 0.0;  // running inf of chi column
    double rho_f = 0.0;    // running inf of f column
    double rho_r = 0.0;    // running max of gelfand column

    /// Residual of the generalized Berger-Wang identity
    /// rho_hat = max(rho_chi, rho_r) at the reported estimates.
    double gbwf_residual() const { return rho_hat - std::max(rho_chi, rho_r); }
};

/// Certified interval for the joint spectral radius, from branch and bound.
struct JsrInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool certified = true;  // false when the budget ran out before the
                            // frontier emptied; the interval is still valid
    std::uint64_t nodes_visited = 0;
    Word best_word;  // word attaining the reported lower bound

    double width() const { return upper - lower; }
};

}  // namespace srl
