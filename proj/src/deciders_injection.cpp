#include "uhom/deciders.hpp"

namespace uhom {

namespace {

const char* kCiteUhInj = "uh injection structure = no omega-orbits";
const char* kCiteWuhInj = "wuh injection structure = finitely many omega-orbits";
const char* kCiteCcInj = "cc injection structure = finitely many infinite orbits";
const char* kCiteD2Inj = "Delta2 injection structure = finitely many Z-orbits or finitely many omega-orbits";
const char* kCiteMinInj = "minimal exceptional set = one member per omega-orbit";
const char* kCiteDclInj = "definable closure = the union of the omega-orbits (no size-1 orbits)";

} // namespace

Report analyze_injection(const InjSpectrum& sp) {
    Report r;
    r.family = Family::Injection;
    for (const auto& [size, count] : sp.cycles) {
        if (size < 1) throw_input("cycle size must be at least 1");
        if (count.is_zero()) throw_input("cycle count must be at least 1");
    }

    bool uh = sp.omega_orbits.is_zero();
    bool wuh = sp.omega_orbits.is_finite();
    bool cc = sp.omega_orbits.is_finite() && sp.zeta_orbits.is_finite();
    bool delta2 = sp.omega_orbits.is_finite() || sp.zeta_orbits.is_finite();

    r.uh = uh ? Verdict::True : Verdict::False;
    r.wuh = wuh ? Verdict::True : Verdict::False;
    r.cc = cc ? Verdict::True : Verdict::False;
    r.delta2 = delta2 ? Verdict::True : Verdict::False;
    r.citations = {kCiteUhInj, kCiteWuhInj, kCiteCcInj, kCiteD2Inj};
    if (!wuh) return r;

    for (std::uint64_t i = 0; i < sp.omega_orbits.finite(); ++i)
        r.omega_orbit_reps.push_back("initial element of omega-orbit " + std::to_string(i));
    ExceptionalDescriptor d;
    d.text = sp.omega_orbits.is_zero()
                 ? "empty set"
                 : "one member per omega-orbit (" + sp.omega_orbits.str() + " orbits)";
    d.elements = r.omega_orbit_reps;
    r.minimal_exceptional.push_back(d);
    r.citations.push_back(kCiteMinInj);

    if (!sp.cycles.count(1)) {
        r.notes.push_back(
            "definable closure of a minimal exceptional set: the union of the omega-orbits");
        r.citations.push_back(kCiteDclInj);
    } else {
        r.notes.push_back(
            "size-1 orbits present: the closure formula for minimal sets does not apply; a unique size-1 orbit is definable outright");
    }
    return r;
}

} // namespace uhom
