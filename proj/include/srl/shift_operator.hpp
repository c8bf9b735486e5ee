#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "srl/common.hpp"
#include "srl/linalg.hpp"

namespace srl {

/// Exact representation of L = F + D*S^m on l2(N), where S e_i = e_{i+1},
/// F is finite rank with sparse entries, and the weighted shift acts by
/// (D*S^m) e_i = d_i e_{i+m} with d_i = diag_prefix[i-1] for i <= prefix
/// length and d_i = tail_weight beyond it.  Basis indices are 1-based.
///
/// The class is closed under composition, and the seminorms have closed
/// forms: the distance to the finite-rank operators and the Hausdorff
/// measure of noncompactness both equal |tail_weight|, because everything
/// except the constant-weight tail is a compact perturbation.
struct ShiftFinRankOperator {
    struct Entry {
        int row = 0;
        int col = 0;
        double value = 0.0;
    };

    std::vector<Entry> finite_part;
    std::vector<double> diag_prefix;
    double tail_weight = 0.0;
    int shift_power = 0;

    /// Shift weight applied to source index i (1-based).
    double weight(int i) const {
        if (i < 1) throw validation_error("ShiftFinRankOperator: basis index must be >= 1");
        const std::size_t k = static_cast<std::size_t>(i - 1);
        return k < diag_prefix.size() ? diag_prefix[k] : tail_weight;
    }

    int prefix_length() const { return static_cast<int>(diag_prefix.size()); }

    /// Largest 1-based row/column index touched by the finite part or the
    /// prefix deviation; the operator acts as the pure w*S^m tail beyond it.
    int support_bound() const {
        int b = prefix_length();
        for (const Entry& e : finite_part) b = std::max({b, e.row, e.col});
        return b;
    }

    void validate() const {
        if (shift_power < 0) throw validation_error("ShiftFinRankOperator: shift_power must be >= 0");
        if (!std::isfinite(tail_weight))
            throw validation_error("ShiftFinRankOperator: tail_weight is not finite");
        for (double d : diag_prefix)
            if (!std::isfinite(d)) throw validation_error("ShiftFinRankOperator: non-finite prefix weight");
        for (const Entry& e : finite_part) {
            if (e.row < 1 || e.col < 1)
                throw validation_error("ShiftFinRankOperator: finite_part indices must be >= 1");
            if (!std::isfinite(e.value))
                throw validation_error("ShiftFinRankOperator: non-finite finite_part value");
        }
    }
};

inline ShiftFinRankOperator shift_operator_identity() {
    ShiftFinRankOperator id;
    id.tail_weight = 1.0;
    return id;
}

/// Pure forward shift power w * S^m.
inline ShiftFinRankOperator weighted_shift(double w, int m, std::vector<double> prefix = {}) {
    ShiftFinRankOperator l;
    l.tail_weight = w;
    l.shift_power = m;
    l.diag_prefix = std::move(prefix);
    return l;
}

namespace detail {

inline void accumulate_entry(std::map<std::pair<int, int>, double>& acc, int row, int col,
                             double value) {
    if (value == 0.0) return;
    acc[{row, col}] += value;
}

inline std::vector<ShiftFinRankOperator::Entry> collect_entries(
    const std::map<std::pair<int, int>, double>& acc) {
    std::vector<ShiftFinRankOperator::Entry> out;
    out.reserve(acc.size());
    for (const auto& [rc, v] : acc)
        if (v != 0.0) out.push_back({rc.first, rc.second, v});
    return out;
}

}  // namespace detail

/// Exact composition l1 o l2 (apply l2 first).  Shift powers add, tail
/// weights multiply, weights compose with the index offset of the inner
/// shift, and every term with a finite-rank factor folds into the new
/// finite part.
inline ShiftFinRankOperator compose(const ShiftFinRankOperator& l1,
                                    const ShiftFinRankOperator& l2) {
    ShiftFinRankOperator out;
    out.shift_power = l1.shift_power + l2.shift_power;
    out.tail_weight = l1.tail_weight * l2.tail_weight;

    // (W1 W2) e_i = d2_i * d1_{i+m2} e_{i+m1+m2}: the composed weight
    // deviates from the tail only while either factor does.
    const int t = std::max(l2.prefix_length(), l1.prefix_length() - l2.shift_power);
    out.diag_prefix.resize(static_cast<std::size_t>(std::max(t, 0)));
    for (int i = 1; i <= t; ++i)
        out.diag_prefix[static_cast<std::size_t>(i - 1)] =
            l2.weight(i) * l1.weight(i + l2.shift_power);

    std::map<std::pair<int, int>, double> acc;
    // F1 * F2
    for (const auto& e1 : l1.finite_part)
        for (const auto& e2 : l2.finite_part)
            if (e1.col == e2.row) detail::accumulate_entry(acc, e1.row, e2.col, e1.value * e2.value);
    // F1 * W2: W2 sends e_i to d2_i e_{i+m2}, then F1 picks column i+m2
    for (const auto& e1 : l1.finite_part) {
        const int i = e1.col - l2.shift_power;
        if (i >= 1) detail::accumulate_entry(acc, e1.row, i, e1.value * l2.weight(i));
    }
    // W1 * F2: each target e_r of F2 is shifted to e_{r+m1} with weight d1_r
    for (const auto& e2 : l2.finite_part)
        detail::accumulate_entry(acc, e2.row + l1.shift_power, e2.col,
                                 l1.weight(e2.row) * e2.value);
    out.finite_part = detail::collect_entries(acc);
    return out;
}

/// Sum of two class members.  Only defined for equal shift powers; the sum
/// would otherwise leave the class.
inline ShiftFinRankOperator add(const ShiftFinRankOperator& a, const ShiftFinRankOperator& b) {
    if (a.shift_power != b.shift_power)
        throw validation_error("add: operands must share the shift power");
    ShiftFinRankOperator out;
    out.shift_power = a.shift_power;
    out.tail_weight = a.tail_weight + b.tail_weight;
    const int t = std::max(a.prefix_length(), b.prefix_length());
    out.diag_prefix.resize(static_cast<std::size_t>(t));
    for (int i = 1; i <= t; ++i)
        out.diag_prefix[static_cast<std::size_t>(i - 1)] = a.weight(i) + b.weight(i);
    std::map<std::pair<int, int>, double> acc;
    for (const auto& e : a.finite_part) detail::accumulate_entry(acc, e.row, e.col, e.value);
    for (const auto& e : b.finite_part) detail::accumulate_entry(acc, e.row, e.col, e.value);
    out.finite_part = detail::collect_entries(acc);
    return out;
}

inline ShiftFinRankOperator scale(const ShiftFinRankOperator& l, double c) {
    ShiftFinRankOperator out = l;
    out.tail_weight *= c;
    for (double& d : out.diag_prefix) d *= c;
    for (auto& e : out.finite_part) e.value *= c;
    return out;
}

inline ShiftFinRankOperator subtract(const ShiftFinRankOperator& a,
                                     const ShiftFinRankOperator& b) {
    return add(a, scale(b, -1.0));
}

/// Dense truncation: the action restricted to sources 1..cols and targets
/// 1..rows, as a rows x cols matrix.
inline Matrix dense_block(const ShiftFinRankOperator& l, int rows, int cols) {
    Matrix m = Matrix::Zero(rows, cols);
    for (const auto& e : l.finite_part)
        if (e.row <= rows && e.col <= cols) m(e.row - 1, e.col - 1) += e.value;
    for (int i = 1; i <= cols; ++i) {
        const int target = i + l.shift_power;
        if (target <= rows) m(target - 1, i - 1) += l.weight(i);
    }
    return m;
}

/// Exact operator 2-norm.  Sources beyond the corner bound are mapped to
/// orthogonal basis vectors of weight tail_weight, and those images cannot
/// collide with corner images, so L*L block-diagonalizes into an N x N
/// corner plus w^2 * identity:  ||L|| = max(sigma_max(corner), |w|).
inline double op_norm(const ShiftFinRankOperator& l) {
    l.validate();
    const int n = l.support_bound() + l.shift_power + 1;
    const Matrix corner = dense_block(l, n + l.shift_power, n);
    return std::max(operator_norm(corner), std::abs(l.tail_weight));
}

/// Distance to the finite-rank operators.  The finite part and the prefix
/// deviation are finite rank, so only the constant-weight shift tail
/// remains, and w*S^m sits at distance exactly |w| from the finite-rank
/// operators (the shift is an isometry modulo compacts).
inline double seminorm_f(const ShiftFinRankOperator& l) {
    l.validate();
    return std::abs(l.tail_weight);
}

/// Hausdorff measure of noncompactness.  On Hilbert space it coincides with
/// the essential norm, and compact operators are the closure of the
/// finite-rank ones, so the value equals seminorm_f on this class.
inline double seminorm_chi(const ShiftFinRankOperator& l) { return seminorm_f(l); }

/// Spectral radius estimate with truncation-doubling stabilization.
struct SpectralRadiusEstimate {
    double value = 0.0;
    bool flagged = false;      // discrete spectrum failed to stabilize
    double candidate_small = 0.0;  // last two candidates when flagged
    double candidate_large = 0.0;
};

/// max(essential radius, stabilized discrete spectrum).  The essential
/// spectral radius of every class member is |tail_weight|; eigenvalues of
/// square truncations that exceed w(1+tol) and move less than tol when the
/// truncation size doubles are accepted as discrete spectrum.  Truncations
/// of the shift tail itself are nilpotent and spectrally misleading, which
/// is why eigenvalues at or below the essential circle are discarded.
inline SpectralRadiusEstimate op_spectral_radius(const ShiftFinRankOperator& l, double tol,
                                                 int size_cap = 4096) {
    l.validate();
    if (!(tol > 0.0)) throw validation_error("op_spectral_radius: tol must be positive");
    const double w = std::abs(l.tail_weight);
    const int base = std::max(l.support_bound() + l.shift_power + 1, 16);

    std::vector<int> sizes;
    for (int s = base, k = 0; k < 3; ++k, s *= 2) {
        sizes.push_back(std::min(s, size_cap));
        if (sizes.back() == size_cap) break;
    }
    std::vector<double> candidates;
    for (int s : sizes) {
        const Matrix t = dense_block(l, s, s);
        double best = 0.0;
        if (s == 1) {
            best = std::abs(t(0, 0));
        } else {
            Eigen::EigenSolver<Matrix> es(t, false);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("op_spectral_radius: truncation eigensolve failed");
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                const double mod = std::abs(es.eigenvalues()(i));
                if (mod > w * (1.0 + tol)) best = std::max(best, mod);
            }
        }
        candidates.push_back(best);
        if (candidates.size() >= 2) {
            const double prev = candidates[candidates.size() - 2];
            if (std::abs(best - prev) < tol) {
                SpectralRadiusEstimate est;
                est.value = std::max(w, best);
                return est;
            }
        }
    }
    SpectralRadiusEstimate est;
    est.flagged = candidates.size() >= 2;
    if (candidates.size() >= 2) {
        est.candidate_small = candidates[candidates.size() - 2];
        est.candidate_large = candidates.back();
        est.value = std::max(w, candidates.back());
    } else {
        // a single admissible size (cap at or below the structural bound):
        // nothing to compare against, flag the lone candidate
        est.flagged = true;
        est.candidate_small = est.candidate_large = candidates.back();
        est.value = std::max(w, candidates.back());
    }
    return est;
}

}  // namespace srl
