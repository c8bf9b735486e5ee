#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "srl/jsr.hpp"
#include "srl/linalg.hpp"
#include "srl/matrix_set.hpp"
#include "srl/radii_report.hpp"

namespace srl {

/// Branch-and-bound bracketing of the joint spectral radius.
///
/// The search keeps a running lower bound L = max rho(product)^(1/n) over
/// visited words and prunes a word w of length n once
/// ||product(w)||^(1/n) <= L + delta.  Every long word then factorizes into
/// blocks that terminate at pruned nodes, so rho_hat <= L + delta when the
/// word tree has been exhausted by pruning.  Nodes left unexpanded for any
/// other reason (depth cap, exhausted budget) contribute their own
/// ||product||^(1/n) to the certified upper bound instead.
///
/// delta is an additive gap target on the radius, not a relative one, so
/// the contract stays meaningful when rho_hat = 0.
inline JsrInterval gripenberg_bounds(const MatrixSet& set, double delta, std::uint64_t budget,
                                     int max_depth = 64) {
    set.validate();
    if (!(delta > 0.0)) throw validation_error("gripenberg_bounds: delta must be positive");
    if (max_depth < 1) throw validation_error("gripenberg_bounds: max_depth must be >= 1");
    const std::size_t m = set.size();
    if (budget < m)
        throw validation_error("gripenberg_bounds: budget smaller than the alphabet");

    JsrInterval out;
    double lower = 0.0;
    Word best_word;
    std::uint64_t visited = 0;

    std::vector<double> level_sup(static_cast<std::size_t>(max_depth) + 1,
                                  -std::numeric_limits<double>::infinity());
    int complete_depth = 0;   // levels 1..complete_depth were exhaustively enumerated
    double leak = -std::numeric_limits<double>::infinity();  // unexpanded non-pruned nodes

    // Short exhaustive pass: enumerating rho over all short words seeds the
    // lower bound before the depth-first dive, which makes the prune
    // threshold tight from the start.
    int seed_depth = 0;
    {
        std::uint64_t count = 0, level = 1;
        while (seed_depth < std::min(max_depth, 8)) {
            level *= m;
            if (count + level > std::min<std::uint64_t>(budget / 2, 8192)) break;
            count += level;
            ++seed_depth;
        }
    }
    if (seed_depth >= 1) {
        bool seed_complete = true;
        auto stats = detail::enumerate_matrix_words(set, seed_depth, budget, true, true,
                                                    seed_complete);
        for (int n = 1; n <= seed_depth; ++n) {
            const auto& s = stats[static_cast<std::size_t>(n - 1)];
            const double r = detail::nth_root(s.rho_max, n);
            if (r > lower) {
                lower = r;
                best_word = s.best_rho_word;
            }
            level_sup[static_cast<std::size_t>(n)] = s.norm_sup;
            visited += static_cast<std::uint64_t>(std::pow(double(m), n));
        }
        complete_depth = seed_depth;
    }

    // Depth-first dive with prefix-norm pruning.
    struct Frame {
        std::size_t cursor = 0;
        Matrix product;     // product of the word ending at this frame
        double root_norm = 0.0;  // ||product||^(1/depth)
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{});  // root: empty word, cursor over first letters
    int first_cut = std::numeric_limits<int>::max();
    bool aborted = false;

    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.cursor == m) {
            stack.pop_back();
            continue;
        }
        if (visited >= budget) {
            aborted = true;  // top.cursor still points at the unvisited child
            break;
        }
        const int letter = static_cast<int>(top.cursor++);
        ++visited;
        const int depth = static_cast<int>(stack.size());  // depth of the child node
        Frame child;
        child.product = (depth == 1) ? set.members[static_cast<std::size_t>(letter)]
                                     : set.members[static_cast<std::size_t>(letter)] * top.product;
        const double norm = operator_norm(child.product);
        child.root_norm = detail::nth_root(norm, depth);
        if (depth <= max_depth)
            level_sup[static_cast<std::size_t>(depth)] =
                std::max(level_sup[static_cast<std::size_t>(depth)], norm);
        const double rho = detail::nth_root(spectral_radius(child.product), depth);
        if (rho > lower) {
            lower = rho;
            // Cursors are post-incremented, so cursor-1 along the stack spells
            // out the child's word, the new letter included.
            best_word.indices.clear();
            for (const Frame& f : stack)
                best_word.indices.push_back(static_cast<int>(f.cursor) - 1);
        }
        if (child.root_norm <= lower + delta) {
            first_cut = std::min(first_cut, depth);  // pruned: bounded by lower+delta
            continue;
        }
        if (depth == max_depth) {
            leak = std::max(leak, child.root_norm);  // depth cap, not a certified prune
            first_cut = std::min(first_cut, depth);
            continue;
        }
        stack.push_back(std::move(child));
    }

    if (aborted) {
        // A frame with letters left has an unvisited child, so the levels
        // below it are incomplete and factorization blocks may terminate at
        // it.  Unvisited level-1 subtrees are bounded by the member norms.
        for (std::size_t k = 0; k < stack.size(); ++k) {
            if (stack[k].cursor == m) continue;
            first_cut = std::min(first_cut, static_cast<int>(k));
            if (k >= 1) leak = std::max(leak, stack[k].root_norm);
        }
        for (std::size_t j = stack.empty() ? 0 : stack.front().cursor; j < m; ++j)
            leak = std::max(leak, operator_norm(set.members[j]));
    }

    if (first_cut != std::numeric_limits<int>::max())
        complete_depth = std::max(complete_depth, first_cut);
    double upper_exact = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= complete_depth; ++n)
        if (level_sup[static_cast<std::size_t>(n)] >= 0.0)
            upper_exact =
                std::min(upper_exact, detail::nth_root(level_sup[static_cast<std::size_t>(n)], n));

    double upper_cert = lower + delta;
    if (std::isfinite(leak) || aborted) upper_cert = std::max(upper_cert, leak);

    out.lower = lower;
    out.upper = std::max(lower, std::min(upper_exact, upper_cert));
    out.certified = !aborted;
    out.nodes_visited = visited;
    out.best_word = best_word;
    return out;
}

}  // namespace srl
