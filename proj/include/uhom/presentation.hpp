#ifndef UHOM_PRESENTATION_HPP
#define UHOM_PRESENTATION_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uhom/ext_count.hpp"
#include "uhom/finite_structure.hpp"

namespace uhom {

// ---------------------------------------------------------------- linear

enum class BlockKind { Fin, Omega, OmegaStar, Zeta, Eta };

struct Block {
    BlockKind kind = BlockKind::Fin;
    std::uint64_t size = 1;  // only for Fin, >= 1

    bool operator==(const Block&) const = default;
};

inline Block fin(std::uint64_t k) { return Block{BlockKind::Fin, k}; }
inline Block omega_block() { return Block{BlockKind::Omega, 0}; }
inline Block omega_star_block() { return Block{BlockKind::OmegaStar, 0}; }
inline Block zeta_block() { return Block{BlockKind::Zeta, 0}; }
inline Block eta_block() { return Block{BlockKind::Eta, 0}; }

/**
 * A countable linear order as a finite concatenation of blocks drawn
 * from finite chains, omega, omega*, zeta and eta.
 */
struct LinOrderPres {
    std::vector<Block> blocks;

    bool operator==(const LinOrderPres&) const = default;
};

// Rewrites to the unique normal form: adjacent finite chains merge,
// eta absorbs single points between two copies and its own repeats,
// finite prefixes of omega / suffixes of omega* are absorbed, and
// omega* followed by omega fuses into zeta.
LinOrderPres normalize_linear(const LinOrderPres& p);

std::string block_str(const Block& b);
std::string linear_str(const LinOrderPres& p);

// ---------------------------------------------------------------- equivalence

/** Number of equivalence classes of each size. */
struct EqCharacter {
    std::map<ExtCount, ExtCount> entries;  // size (>=1) -> count (>=1)
    bool unbounded_tail = false;           // infinitely many distinct finite sizes occur

    bool operator==(const EqCharacter&) const = default;
};

// ---------------------------------------------------------------- injection

/** Orbit spectrum of an injection structure. */
struct InjSpectrum {
    std::map<std::uint64_t, ExtCount> cycles;  // finite cycle size (>=1) -> count (>=1)
    ExtCount omega_orbits = 0;
    ExtCount zeta_orbits = 0;
    bool unbounded_cycle_tail = false;

    bool operator==(const InjSpectrum&) const = default;
};

// ---------------------------------------------------------------- trees

/**
 * Finite-height tree presentation: a node with child subtrees, each
 * carried with a multiplicity in {1, 2, ...} ∪ {omega}.
 */
struct TreePres {
    std::vector<std::pair<TreePres, ExtCount>> children;

    bool operator==(const TreePres&) const = default;
};

inline TreePres tree_leaf() { return {}; }
TreePres tree_node(std::vector<std::pair<TreePres, ExtCount>> children);

// Deterministic subtree key; equal keys <=> isomorphic presentations.
std::string tree_key(const TreePres& t);

// Children canonicalised recursively, equal subtrees merged, sorted by key.
TreePres canonical_tree(const TreePres& t);

int tree_height(const TreePres& t);                  // leaf = 0
ExtCount tree_node_count(const TreePres& t);         // all nodes
ExtCount tree_internal_count(const TreePres& t);     // nodes of rank >= 1
ExtCount tree_child_count(const TreePres& t);        // immediate successors of the root

// Child-count sets per depth (depth 0 = root). Each entry also records
// whether some node at that depth occurs with infinite multiplicity.
struct LevelProfile {
    std::vector<ExtCount> child_counts;  // distinct counts, sorted
};
std::vector<LevelProfile> tree_level_profiles(const TreePres& t);

// True when every node at each depth has the same child count; fills beta.
bool tree_uniform(const TreePres& t, std::vector<ExtCount>* beta = nullptr);

// ---------------------------------------------------------------- graphs

struct GraphComponent {
    FiniteStructure graph;  // finite connected graph
    ExtCount multiplicity = 1;
};

struct GraphPres {
    std::vector<GraphComponent> components;
    // m disjoint copies of the complete graph K_n
    std::optional<std::pair<ExtCount, ExtCount>> bulk;  // (copies, order)
    std::optional<std::string> catalog_tag;             // classification metadata only
};

// ---------------------------------------------------------------- nested

struct NestedEqPres {
    int arity = 1;
    std::optional<TreePres> tree;               // class tree of height arity+1
    std::optional<FiniteStructure> concrete;    // finite nested structure
};

// ---------------------------------------------------------------- presentation

using PresData = std::variant<LinOrderPres, EqCharacter, InjSpectrum, GraphPres, TreePres, NestedEqPres>;

struct Presentation {
    Family family = Family::Order;
    PresData data;
};

Presentation make_pres(LinOrderPres p);
Presentation make_pres(EqCharacter c);
Presentation make_pres(InjSpectrum sp);
Presentation make_pres(GraphPres g);
Presentation make_pres(TreePres t, Family tree_family);
Presentation make_pres(NestedEqPres ne);

// Validates field invariants (multiplicities >= 1, nested tree height, ...).
void validate(const Presentation& p);

// Presentation-level isomorphism; input error on cross-family queries.
bool pres_isomorphic(const Presentation& a, const Presentation& b);

// The exact presentation of an explicit finite structure.
Presentation presentation_of(const FiniteStructure& s);

// Class tree of a nested presentation (root = whole set, leaves = elements).
TreePres nested_class_tree(const NestedEqPres& p);

// Tree presentation of a finite tree structure (either formulation).
TreePres tree_pres_of(const FiniteStructure& s);

// ---------------------------------------------------------------- materialize

/**
 * Placement metadata for a materialized prefix: which symbolic part of
 * the presentation each element instantiates. Fields are family-specific;
 * unused ones stay at their defaults.
 */
struct MaterializeInfo {
    struct Element {
        int instance = -1;  // class / orbit / component / block instance
        int index = 0;      // arrival index within the instance
    };
    struct Instance {
        int blueprint = -1;          // entry ordinal in the presentation
        ExtCount capacity = 0;       // declared size (omega = unbounded)
        int kind = 0;                // family-specific tag
    };
    std::vector<Element> elements;
    std::vector<Instance> instances;

    // tree families: the grown node set (elements may be a subset for
    // nested structures, where only leaves become elements)
    std::vector<int> node_parent;
    std::vector<int> node_depth;
    std::vector<std::string> node_key;   // subtree key of the shape this node instantiates
    std::vector<int> element_node;       // element -> grown node id
};

/**
 * Deterministic finite prefix of the presented structure on n elements.
 * materialize(p, n) embeds into materialize(p, n+1) via the identity.
 */
FiniteStructure materialize(const Presentation& p, int n, MaterializeInfo* info = nullptr);

} // namespace uhom

#endif
