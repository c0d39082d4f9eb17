#ifndef UHOM_FINITE_STRUCTURE_HPP
#define UHOM_FINITE_STRUCTURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "uhom/error.hpp"

namespace uhom {

enum class Family {
    Order,        // total order <=
    Equivalence,  // single equivalence relation
    Injection,    // unary injective f, possibly partial
    Graph,        // irreflexive symmetric adjacency
    TreePO,       // tree as strict partial order with root constant
    TreePred,     // tree as total predecessor function, f(root) = root
    NestedEq,     // E_1 ⊇ E_2 ⊇ ... ⊇ E_arity
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

inline constexpr int kNoImage = -1;

/**
 * Explicit finite model on universe {0, ..., n-1}.
 *
 * Relations are stored as row-major n*n boolean matrices, functions as
 * value vectors with kNoImage marking undefined points (injection
 * structures may be open-ended prefixes of infinite orbits; every other
 * family keeps its functions total).
 */
struct FiniteStructure {
    Family family = Family::Equivalence;
    int n = 0;
    int arity = 1;  // only meaningful for NestedEq
    std::vector<std::vector<std::uint8_t>> rels;
    std::vector<std::vector<int>> funcs;
    std::vector<std::string> labels;  // optional, display only

    bool rel(int r, int a, int b) const { return rels[r][static_cast<size_t>(a) * n + b] != 0; }
    void set_rel(int r, int a, int b, bool v) { rels[r][static_cast<size_t>(a) * n + b] = v ? 1 : 0; }
    int func(int k, int a) const { return funcs[k][a]; }

    int num_rels() const { return static_cast<int>(rels.size()); }
    int num_funcs() const { return static_cast<int>(funcs.size()); }

    std::string label(int a) const {
        if (a >= 0 && a < static_cast<int>(labels.size()) && !labels[a].empty()) return labels[a];
        return std::to_string(a);
    }

    bool operator==(const FiniteStructure& o) const {
        return family == o.family && n == o.n && arity == o.arity && rels == o.rels && funcs == o.funcs;
    }
};

// Constructors; all validate their input.
FiniteStructure make_order(int n);
FiniteStructure make_order_from_positions(const std::vector<int>& pos);  // pos[i] = rank of element i
FiniteStructure make_equivalence(int n, const std::vector<std::vector<int>>& classes);
FiniteStructure make_injection(const std::vector<int>& f);  // kNoImage allowed
FiniteStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges);
FiniteStructure make_tree_po(const std::vector<int>& parent);    // parent[root] = root
FiniteStructure make_tree_pred(const std::vector<int>& parent);  // parent[root] = root
FiniteStructure make_nested(int n, const std::vector<std::vector<std::vector<int>>>& class_lists);

// Checks the family invariants; throws Error(Input) with a description on failure.
void validate(const FiniteStructure& s);

// Root of a tree structure (unique minimum / predecessor fixpoint).
int root_of(const FiniteStructure& s);

// Parent vector of a tree structure (either formulation).
std::vector<int> tree_parents(const FiniteStructure& s);

// Relabels the structure by permutation: element i becomes perm[i].
FiniteStructure apply_perm(const FiniteStructure& s, const std::vector<int>& perm);

/**
 * Closure of a tuple under the structure's functions (and the root
 * constant of TreePO). Equals the tuple itself for purely relational
 * families. Result is sorted and duplicate-free.
 */
std::vector<int> generated_substructure(const FiniteStructure& s, const std::vector<int>& tuple);

// Flat encoding of all relations/functions; equal encodings <=> equal structures.
std::vector<int> encode(const FiniteStructure& s);

// Lexicographically minimal encoding over all permutations (branch-and-bound).
std::vector<int> canonical_encoding(const FiniteStructure& s);

// A permutation realizing the canonical encoding (element i -> position perm[i]).
std::vector<int> canonical_permutation(const FiniteStructure& s);

// Isomorphism test via canonical encodings.
bool isomorphic(const FiniteStructure& a, const FiniteStructure& b);

} // namespace uhom

#endif
