#include <algorithm>

#include "uhom/deciders.hpp"

namespace uhom {

namespace {

const char* kCiteUhEq = "uh equivalence structure = all classes of one size";
const char* kCiteWuhEq = "wuh equivalence structure = all but finitely many classes of one size";
const char* kCiteCcEq = "cc equivalence structure = wuh (bounded character with one unbounded size)";
const char* kCiteMinEq = "minimal exceptional set = one element per exceptional class";
const char* kCiteDclEq = "definable closure = the set plus exceptional classes of size at most 2";

} // namespace

Report analyze_equivalence(const EqCharacter& c) {
    Report r;
    r.family = Family::Equivalence;
    for (const auto& [size, count] : c.entries) {
        if (size.is_zero()) throw_input("class size must be at least 1");
        if (count.is_zero()) throw_input("class count must be at least 1");
    }

    bool uh = !c.unbounded_tail && c.entries.size() == 1;
    std::size_t omega_counts = 0;
    for (const auto& [size, count] : c.entries)
        if (count.is_omega()) ++omega_counts;
    bool wuh = !c.unbounded_tail && omega_counts <= 1;

    r.uh = uh ? Verdict::True : Verdict::False;
    r.wuh = wuh ? Verdict::True : Verdict::False;
    r.cc = r.wuh;
    r.citations = {kCiteUhEq, kCiteWuhEq, kCiteCcEq};
    if (!wuh) return r;

    // majority size: the unique infinitely-repeated size when present,
    // otherwise the most frequent declared size (largest size on ties)
    std::optional<ExtCount> majority;
    for (const auto& [size, count] : c.entries)
        if (count.is_omega()) majority = size;
    if (!majority && !c.entries.empty()) {
        ExtCount best_count = 0;
        for (const auto& [size, count] : c.entries)
            if (count > best_count || (count == best_count && (!majority || size > *majority))) {
                best_count = count;
                majority = size;
            }
    }

    ExtCount reps = 0;
    for (const auto& [size, count] : c.entries) {
        if (majority && size == *majority) continue;
        reps += count;
        r.exceptional_classes.push_back("size " + size.str() + " x " + count.str());
    }
    ExceptionalDescriptor d;
    d.text = reps.is_zero() ? "empty set"
                            : "one representative per exceptional class (" + reps.str() + " classes)";
    r.minimal_exceptional.push_back(d);
    r.citations.push_back(kCiteMinEq);
    ExtCount small = 0;
    for (const auto& [size, count] : c.entries) {
        if (majority && size == *majority) continue;
        if (size <= ExtCount(2)) small += count * size;
    }
    r.notes.push_back("definable closure of a minimal exceptional set: the set plus all exceptional classes of size <= 2 (" +
                      small.str() + " elements)");
    r.citations.push_back(kCiteDclEq);
    return r;
}

} // namespace uhom
