#pragma once

#include <string>
#include <vector>

#include "srl/common.hpp"
#include "srl/linalg.hpp"

namespace srl {

/// Finite alphabet of square d x d real matrices.
struct MatrixSet {
    int dim = 0;
    std::vector<Matrix> members;
    std::string label;

    std::size_t size() const { return members.size(); }

    void validate() const {
        if (members.empty()) throw validation_error("MatrixSet: member list is empty");
        if (dim <= 0) throw validation_error("MatrixSet: dim must be positive");
        for (std::size_t i = 0; i < members.size(); ++i) {
            const Matrix& m = members[i];
            if (m.rows() != dim || m.cols() != dim)
                throw dimension_error("MatrixSet: member " + std::to_string(i) +
                                      " is not " + std::to_string(dim) + "x" + std::to_string(dim));
            require_finite(m, "MatrixSet");
        }
    }
};

inline MatrixSet make_matrix_set(std::vector<Matrix> members, std::string label = "") {
    MatrixSet s;
    s.members = std::move(members);
    s.dim = s.members.empty() ? 0 : static_cast<int>(s.members.front().rows());
    s.label = std::move(label);
    s.validate();
    return s;
}

/// Index sequence into a set of matrices or operators.  The word
/// (i_1, ..., i_n) denotes the product A_{i_n} ... A_{i_1}: the first index
/// names the rightmost (first applied) factor.
struct Word {
    std::vector<int> indices;

    std::size_t length() const { return indices.size(); }

    void validate(std::size_t alphabet) const {
        if (indices.empty()) throw validation_error("Word: length must be >= 1");
        for (int i : indices)
            if (i < 0 || static_cast<std::size_t>(i) >= alphabet)
                throw validation_error("Word: index " + std::to_string(i) +
                                       " out of range [0, " + std::to_string(alphabet) + ")");
    }
};

/// Ordered product realizing the word: extending a word by one letter
/// left-multiplies the cached prefix product by the new factor.
inline Matrix product_of_word(const MatrixSet& set, const Word& w) {
    set.validate();
    w.validate(set.size());
    Matrix p = set.members[static_cast<std::size_t>(w.indices.front())];
    for (std::size_t k = 1; k < w.indices.size(); ++k)
        p = set.members[static_cast<std::size_t>(w.indices[k])] * p;
    return p;
}

}  // namespace srl
