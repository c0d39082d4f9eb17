#ifndef UHOM_ORACLE_HPP
#define UHOM_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "uhom/finite_structure.hpp"

namespace uhom {

/**
 * A finite partial map between elements, with a subset that must be
 * mapped identically. Counterexamples to (weak) ultrahomogeneity are
 * reported in this form.
 */
struct PartialMap {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> fixed;
};

struct OracleOptions {
    int cap = 8;  // resource error above this; the hard cap is kHardSizeCap
};

void check_oracle_cap(const FiniteStructure& s, const OracleOptions& opts);

/**
 * Extends `m` (together with the identity on `m.fixed`) to the closure
 * of its domain and verifies it is an isomorphism of generated
 * substructures. Returns the closure-extended pair list, or nullopt.
 */
std::optional<std::vector<std::pair<int, int>>> close_partial_iso(const FiniteStructure& s,
                                                                  const PartialMap& m);

struct ExtendResult {
    bool ok = false;
    std::vector<int> automorphism;  // total, when ok
    int obstruction_level = 0;      // deepest consistent extension size on failure
};

// Exhaustive search for an automorphism extending a partial isomorphism.
ExtendResult extend_to_automorphism(const FiniteStructure& s, const PartialMap& m);

// All automorphisms fixing `fix` pointwise, in deterministic order.
std::vector<std::vector<int>> automorphisms_fixing(const FiniteStructure& s,
                                                   const std::vector<int>& fix);

struct UhVerdict {
    bool holds = true;
    std::optional<PartialMap> counterexample;  // a verified non-extendible isomorphism
};

UhVerdict is_uh_bruteforce(const FiniteStructure& s, const OracleOptions& opts = {});

UhVerdict is_exceptional_bruteforce(const FiniteStructure& s, const std::vector<int>& set,
                                    const OracleOptions& opts = {});

std::vector<std::vector<int>> minimal_exceptional_sets_bruteforce(const FiniteStructure& s,
                                                                  const OracleOptions& opts = {});

struct DefinableClosureResult {
    std::vector<int> base;
    std::vector<int> closure;
    // for each element outside the closure, an automorphism fixing the
    // base pointwise and moving it
    std::map<int, std::vector<int>> witness;
};

DefinableClosureResult definable_closure_bruteforce(const FiniteStructure& s,
                                                    const std::vector<int>& set,
                                                    const OracleOptions& opts = {});

// Direct exhaustive isomorphism search between two structures (used as an
// independent cross-check for the back-and-forth engine).
std::optional<std::vector<int>> find_isomorphism(const FiniteStructure& a, const FiniteStructure& b);

} // namespace uhom

#endif
