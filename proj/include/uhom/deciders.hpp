#ifndef UHOM_DECIDERS_HPP
#define UHOM_DECIDERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "uhom/presentation.hpp"
#include "uhom/report.hpp"

namespace uhom {

// ------------------------------------------------------------------ linear

/** Coordinate of an element in a block presentation: 1-based position
 * inside the block (per the materialization order for infinite blocks). */
struct LinCoord {
    int block = 0;
    std::uint64_t pos = 1;

    auto operator<=>(const LinCoord&) const = default;
};

Report analyze_linear(const LinOrderPres& p);

struct LinExceptionalTrace {
    bool holds = true;
    int violated_condition = 0;        // 1 or 2 on failure
    std::string witness;               // offending special point / pair
};

// Conditions: (i) the complement contains no successor pair, and
// (ii) the set contains each block-final point followed by a dense copy
// and each block-initial point preceded by one. Non-special coordinates
// are ignored.
LinExceptionalTrace is_exceptional_linear(const LinOrderPres& p, const std::vector<LinCoord>& set);

// The definable closure of an exceptional set: the set plus all special
// points. Precondition error when the set is not exceptional.
std::vector<LinCoord> definable_closure_linear(const LinOrderPres& p,
                                               const std::vector<LinCoord>& set);

// All minimal exceptional sets as global special-point indices (1-based,
// matching the a1,a2,... materialization labels).
std::vector<std::vector<std::uint64_t>> minimal_exceptional_sets_linear(const LinOrderPres& p);

// ------------------------------------------------------------------ equivalence

Report analyze_equivalence(const EqCharacter& c);

// ------------------------------------------------------------------ injection

Report analyze_injection(const InjSpectrum& sp);

// ------------------------------------------------------------------ graphs

Report analyze_graph(const GraphPres& g);

// ------------------------------------------------------------------ trees

Report analyze_tree_po(const TreePres& t);

/** Node address in a tree presentation: child-entry index and copy index
 * at every step from the root. */
struct TreeAddr {
    std::vector<std::pair<int, std::uint64_t>> path;  // (child entry, copy)

    auto operator<=>(const TreeAddr&) const = default;
};

struct TreeExceptionalTrace {
    bool holds = true;
    int violated_condition = 0;  // 1 or 2
    std::string witness;
    // L_{K,T} and U_{K,T} at the failure witness
    std::vector<std::string> lower, upper;
};

// Exceptional-set predicate for weakly ultrahomogeneous (T, <):
// (i) every node of rank >= 1 lies below-or-at some member, and
// (ii) for a < b, either b is a member or some member is above a but not b.
TreeExceptionalTrace is_exceptional_tree_po(const TreePres& t, const std::vector<TreeAddr>& set);

// Finite-structure variant used for oracle cross-checks.
TreeExceptionalTrace is_exceptional_tree_po_finite(const FiniteStructure& s,
                                                   const std::vector<int>& set);

// The rooted view T_U[a]: the chain below a, a itself, and the full
// subtrees over children of a outside U.
TreePres rooted_view(const TreePres& t, const TreeAddr& a, const std::vector<TreeAddr>& u);

Report analyze_tree_pred(const TreePres& t);

// Closed forms for low heights, evaluated independently of the general
// recursion (internal consistency checks and tests).
bool tree_pred_wuh_height2(const TreePres& t);
bool tree_pred_wuh_height3(const TreePres& t);

// Subtree embedding on presentations (order embedding of one tree into
// another, multiplicity-aware).
bool tree_embeds(const TreePres& a, const TreePres& b);

bool tree_strongly_finite_type(const TreePres& t);
bool tree_finite_type(const TreePres& t);

// ------------------------------------------------------------------ nested

// The class tree of a finite nested structure as an explicit predecessor
// tree: root = whole set, next levels = E_i classes, leaves = elements.
// Returns the tree and the element -> leaf map.
std::pair<FiniteStructure, std::vector<int>> build_TA(const FiniteStructure& nested);

Report analyze_nested(const NestedEqPres& p);

// The per-level "every E_i class splits into k_i many E_{i+1} classes"
// criterion, evaluated directly on a finite nested structure.
bool nested_ki_condition(const FiniteStructure& nested);

// Dispatch on presentation family.
Report analyze(const Presentation& p);

} // namespace uhom

#endif
