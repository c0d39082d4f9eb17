#ifndef UHOM_ENUMERATE_HPP
#define UHOM_ENUMERATE_HPP

#include <vector>

#include "uhom/finite_structure.hpp"

namespace uhom {

inline constexpr int kHardSizeCap = 12;

struct EnumOptions {
    int cap = 8;           // resource error above this
    int nested_arity = 2;  // arity used for Family::NestedEq
};

/**
 * One representative per isomorphism class of the family on exactly n
 * elements, in a deterministic canonical order.
 */
std::vector<FiniteStructure> enumerate_structures(Family fam, int n, const EnumOptions& opts = {});

// All sizes 1..n concatenated.
std::vector<FiniteStructure> enumerate_up_to(Family fam, int n, const EnumOptions& opts = {});

// Partitions of n into non-increasing positive parts, lexicographically descending.
std::vector<std::vector<int>> integer_partitions(int n);

// Canonical parent vectors (root = 0, parent[0] = 0), one per rooted-tree
// isomorphism class on n nodes.
std::vector<std::vector<int>> rooted_trees(int n);

} // namespace uhom

#endif
