#ifndef UHOM_GENERATORS_HPP
#define UHOM_GENERATORS_HPP

#include <map>
#include <string>
#include <vector>

#include "uhom/finite_structure.hpp"
#include "uhom/presentation.hpp"

namespace uhom {

enum class ReductionKind {
    LinInf,       // density driven by an infinite enumeration
    LinCof,       // successor pairs split once both members are enumerated
    EqInf,        // classes of size two driven by an infinite enumeration
    EqCof,        // even elements pair up exactly when enumerated
    InjInf,       // single orbit, Z-type when the enumeration is infinite
    InjCof,       // orbit of 2i+1 rewired to Z-type when i is enumerated
    TreeOrdChain, // descending chains below odd nodes along enumerated runs
    TreeOrdUh,    // nodes of height 2 appear once the enumeration is nonempty
    TreeOrdWuh,   // rank-1 nodes created one per enumerated stage
    TreePredUh,   // two siblings, one growing only on enumerated stages
    TreePredWuh,  // successor counts of 2^n driven by enumerated runs
};

std::string kind_name(ReductionKind k);
ReductionKind kind_from_name(const std::string& name);
std::vector<ReductionKind> all_reduction_kinds();

/**
 * Finite enumeration schedule standing in for a c.e. set: (element,
 * stage) events, at most one per stage, element < stage.
 */
struct Schedule {
    std::vector<std::pair<int, int>> events;
};

void validate_schedule(const Schedule& w);

// elements enumerated by the given stage
std::vector<int> enumerated_by(const Schedule& w, int stage);

struct StageSnapshot {
    ReductionKind kind;
    int stage = 0;
    FiniteStructure structure;
    std::map<std::string, std::string> metadata;
};

// Runs the construction for exactly `stages` stages.
StageSnapshot build_reduction(ReductionKind kind, const Schedule& w, int stages);

struct InvariantCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// Re-derives the construction facts independently and checks the
// per-stage invariants stated for the kind.
InvariantCheck check_stage_invariants(ReductionKind kind, const StageSnapshot& snap,
                                      const Schedule& w);

enum class TailFlag { Finite, Infinite, Cofinite };

/**
 * The symbolic limit of the construction when the schedule is the whole
 * enumeration (finite), extends to an infinite set, or is cofinite with
 * the given missing elements.
 */
Presentation limit_presentation(ReductionKind kind, const Schedule& w_total, TailFlag tail,
                                const std::vector<int>& missing = {});

/**
 * Prefix of the computably homogeneous union of Z-chains: universe
 * {1..n} with f(2^k m) = 2^k g(m) for odd m, where g(4i+1) = 4i+5,
 * g(4i+7) = 4i+3, g(3) = 1.
 */
FiniteStructure build_odd_zchain(int n);

// Closed-form value of the odd-chain map (0 when the value is undefined
// on the positive integers).
std::uint64_t odd_zchain_value(std::uint64_t x);

// -------------------------------------------------------------- inj degrees

/**
 * The multi-orbit injection structure whose e-th orbit tracks the e-th
 * schedule: i enters W_e exactly when 2^e 3^{i+1} joins the orbit of 2^e.
 * Elements are tuples (e, i, branch, j) standing for 2^e 3^i 5^j or
 * 2^e 3^i 7^j.
 */
struct InjDegreesSnapshot {
    int stage = 0;
    int e_max = 0;
    FiniteStructure structure;         // partial injection over the tuples
    std::vector<std::string> names;    // factored element names
    // element lookup: (e, i, branch 0=five 1=seven, j) -> id
    std::map<std::tuple<int, int, int, int>, int> index;
};

InjDegreesSnapshot build_inj_degrees(int e_max, const std::vector<Schedule>& w_per_e, int stages);

// The membership invariant: i in W_{e,s} iff 2^e 3^{i+1} lies in the
// orbit of 2^e at stage s.
InvariantCheck check_inj_degrees_invariant(const InjDegreesSnapshot& snap,
                                           const std::vector<Schedule>& w_per_e);

} // namespace uhom

#endif
