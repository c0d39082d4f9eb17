#ifndef UHOM_BACKFORTH_HPP
#define UHOM_BACKFORTH_HPP

#include <vector>

#include "uhom/oracle.hpp"
#include "uhom/presentation.hpp"

namespace uhom {

/**
 * Matched pairs in selection order: even positions match the least
 * unmatched left element, odd positions the least unmatched right one.
 */
struct IsoSchedule {
    std::vector<std::pair<int, int>> pairs;
    std::vector<bool> verified;  // per prefix
    bool total = false;          // covers both universes (finite inputs)
};

class NoIsomorphism : public Error {
public:
    NoIsomorphism(std::string msg, IsoSchedule prefix)
        : Error(ErrorKind::Verdict, std::move(msg)), failing_prefix(std::move(prefix)) {}
    IsoSchedule failing_prefix;
};

/**
 * Compares the stage-s term sets over the two base tuples: definedness,
 * equality pattern and every relation must agree on corresponding terms.
 * For stages past the closure depth this equals isomorphism of the
 * generated substructures.
 */
bool stage_iso(const FiniteStructure& s1, const std::vector<int>& xs, const FiniteStructure& s2,
               const std::vector<int>& ys, int stage);

// Full closure depth for a finite structure.
int closure_depth(const FiniteStructure& s);

/**
 * Alternating least-unmatched schedule between two finite structures,
 * backtracking over images; returns the full verified isomorphism or
 * throws NoIsomorphism carrying the deepest failing prefix.
 */
IsoSchedule back_and_forth(const FiniteStructure& a, const FiniteStructure& b);

/**
 * Schedule of `steps` pairs between two symbolically presented
 * structures. Extension checks consult presentation metadata (orbit
 * types, class sizes, block and subtree shapes) in place of term-stage
 * comparison on the infinite structures.
 */
IsoSchedule back_and_forth_symbolic(const Presentation& a, const Presentation& b, int steps);

} // namespace uhom

#endif
