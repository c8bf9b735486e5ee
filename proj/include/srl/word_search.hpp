#pragma once

#include <cstdint>
#include <vector>

#include "srl/common.hpp"

namespace srl {

/// Depth-first enumeration of the word tree over an alphabet of `alphabet`
/// letters, up to length `max_len`.  Products are cached per prefix so each
/// extension costs one multiplication; memory is O(depth).
///
/// `extend(letter)` builds the length-1 product for `letter`;
/// `extend(letter, prefix)` left-multiplies a cached prefix product.
/// `visit(word, product)` is called for every word in depth-first order,
/// which enumerates the words of each fixed length in lexicographic order.
///
/// Returns true if the whole tree was enumerated within `budget` visited
/// nodes, false if the budget ran out (the traversal stops immediately).
template <class Element, class ExtendFirst, class ExtendNext, class Visit>
bool for_each_word(std::size_t alphabet, int max_len, std::uint64_t budget,
                   ExtendFirst extend_first, ExtendNext extend_next, Visit visit) {
    if (alphabet == 0) throw validation_error("for_each_word: empty alphabet");
    if (max_len < 1) throw validation_error("for_each_word: max_len must be >= 1");

    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(max_len));
    std::vector<Element> prefix;  // prefix[k] is the product of word[0..k]
    prefix.reserve(static_cast<std::size_t>(max_len));
    std::uint64_t visited = 0;

    // Explicit stack of next-letter cursors, one per depth.
    std::vector<std::size_t> cursor{0};
    while (!cursor.empty()) {
        std::size_t& next = cursor.back();
        if (next == alphabet) {
            cursor.pop_back();
            if (!word.empty()) {
                word.pop_back();
                prefix.pop_back();
            }
            continue;
        }
        const int letter = static_cast<int>(next++);
        if (++visited > budget) return false;
        if (word.empty())
            prefix.push_back(extend_first(letter));
        else
            prefix.push_back(extend_next(letter, prefix.back()));
        word.push_back(letter);
        visit(word, prefix.back());
        if (static_cast<int>(word.size()) < max_len) {
            cursor.push_back(0);
        } else {
            word.pop_back();
            prefix.pop_back();
        }
    }
    return true;
}

}  // namespace srl
