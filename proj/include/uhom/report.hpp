#ifndef UHOM_REPORT_HPP
#define UHOM_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "uhom/ext_count.hpp"
#include "uhom/finite_structure.hpp"

namespace uhom {

enum class Verdict { True, False, Unknown, NotApplicable };

inline std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::Unknown: return "unknown";
        case Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

/** Symbolic description of an exceptional set, with concrete element
 * coordinates when the presentation pins them down. */
struct ExceptionalDescriptor {
    std::string text;
    std::vector<std::string> elements;
};

struct Report {
    Family family = Family::Order;
    Verdict uh = Verdict::Unknown;
    Verdict wuh = Verdict::Unknown;
    Verdict cc = Verdict::NotApplicable;
    Verdict delta2 = Verdict::NotApplicable;

    std::vector<ExceptionalDescriptor> minimal_exceptional;

    // family-specific surfaces
    std::vector<std::string> special_points;       // linear orders
    std::vector<std::string> exceptional_classes;  // equivalence structures
    std::vector<std::string> omega_orbit_reps;     // injection structures
    Verdict strongly_finite_type = Verdict::NotApplicable;  // trees
    Verdict finite_type = Verdict::NotApplicable;           // trees
    std::optional<std::vector<ExtCount>> beta;              // predecessor trees, when uh

    std::vector<std::string> citations;
    std::vector<std::string> notes;
};

// The implication chain every report must satisfy.
inline bool report_chain_ok(const Report& r) {
    if (r.uh == Verdict::True && r.wuh == Verdict::False) return false;
    if (r.wuh == Verdict::True && r.cc == Verdict::False) return false;
    if (r.cc == Verdict::True && r.delta2 == Verdict::False) return false;
    return true;
}

} // namespace uhom

#endif
