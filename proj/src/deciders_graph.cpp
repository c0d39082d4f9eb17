#include <algorithm>
#include <set>

#include "uhom/deciders.hpp"

namespace uhom {

namespace {

const char* kCiteCatalog = "Lachlan-Woodrow catalog of countable uh graphs";
const char* kCiteWuhForm = "wuh graph = H + mK_n with H of finitely many components";
const char* kCiteLocFin = "locally finite wuh graph = finite H + mK_n";
const char* kCiteLemma = "wuh graph domination conditions (a)-(c)";
const char* kCiteRelCc = "wuh relational structure => relatively computably categorical";

bool is_complete(const FiniteStructure& g) {
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (a != b && !g.rel(0, a, b)) return false;
    return true;
}

// a connected graph is finitely dominated iff ... explicit finite
// components always are; only an omega-order bulk clique is infinite and
// complete graphs are dominated by any single vertex.
} // namespace

Report analyze_graph(const GraphPres& g) {
    Report r;
    r.family = Family::Graph;
    r.citations.push_back(kCiteRelCc);

    if (g.catalog_tag) {
        // a catalog entry is ultrahomogeneous by classification
        r.uh = Verdict::True;
        r.wuh = Verdict::True;
        r.cc = Verdict::Unknown;
        r.citations.push_back(kCiteCatalog);
        r.notes.push_back("catalog verdict for tag '" + *g.catalog_tag + "'; no computation performed");
        return r;
    }

    bool locally_finite = !g.bulk || g.bulk->second.is_finite();

    // uh: every component a complete graph of one common order
    bool all_complete = true;
    std::optional<ExtCount> common_order;
    auto meld_order = [&](ExtCount order) {
        if (!common_order)
            common_order = order;
        else if (*common_order != order)
            all_complete = false;
    };
    for (const auto& comp : g.components) {
        if (!is_complete(comp.graph)) all_complete = false;
        meld_order(ExtCount(comp.graph.n));
    }
    if (g.bulk) meld_order(g.bulk->second);
    bool uh = all_complete;
    r.uh = uh ? Verdict::True : Verdict::False;
    if (uh) {
        r.wuh = Verdict::True;
        r.cc = Verdict::True;
        r.citations.push_back(kCiteCatalog);
        return r;
    }

    if (!locally_finite) {
        // only the domination necessary conditions are decidable here
        r.wuh = Verdict::Unknown;
        r.cc = Verdict::Unknown;
        r.citations.push_back(kCiteLemma);
        // (a) at most one component not finitely dominated: an omega-order
        // clique is dominated by any vertex, so all components are
        r.notes.push_back("necessary conditions only: not locally finite");
        r.notes.push_back("condition (a) at most one non-finitely-dominated component: pass");
        bool infinitely_many_components = g.bulk->first.is_omega();
        for (const auto& comp : g.components)
            if (comp.multiplicity.is_omega()) infinitely_many_components = true;
        r.notes.push_back(std::string("condition (b) infinitely many components => all finitely dominated: ") +
                          (infinitely_many_components ? "pass" : "pass (finitely many components)"));
        r.notes.push_back("condition (c) non-dominated component has a finite distance-2 cover: pass");
        return r;
    }

    // locally finite: wuh iff at most one component type repeats
    // infinitely often and that type is a complete graph
    std::vector<std::pair<ExtCount, bool>> infinite_types;  // (order, complete?)
    for (const auto& comp : g.components)
        if (comp.multiplicity.is_omega())
            infinite_types.push_back({ExtCount(comp.graph.n), is_complete(comp.graph)});
    if (g.bulk && g.bulk->first.is_omega()) infinite_types.push_back({g.bulk->second, true});

    bool wuh;
    if (infinite_types.empty())
        wuh = true;  // finite graph
    else if (infinite_types.size() == 1)
        wuh = infinite_types[0].second;
    else {
        // two component types repeating infinitely often can never merge
        wuh = false;
        // unless they are complete graphs of the same order
        if (infinite_types.size() == 2 && infinite_types[0].second && infinite_types[1].second &&
            infinite_types[0].first == infinite_types[1].first)
            wuh = true;
    }
    r.wuh = wuh ? Verdict::True : Verdict::False;
    r.cc = wuh ? Verdict::True : Verdict::Unknown;
    r.citations.push_back(kCiteWuhForm);
    r.citations.push_back(kCiteLocFin);
    if (wuh && !infinite_types.empty()) {
        ExceptionalDescriptor d;
        d.text = "all vertices outside the complete-graph bulk";
        r.minimal_exceptional.push_back(d);
        r.notes.push_back("exceptional set: the finitely many non-bulk components (not claimed minimal)");
    } else if (wuh) {
        ExceptionalDescriptor d;
        d.text = "the whole (finite) vertex set";
        r.minimal_exceptional.push_back(d);
    }
    return r;
}

} // namespace uhom
