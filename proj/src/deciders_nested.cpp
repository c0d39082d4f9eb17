#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "uhom/deciders.hpp"

namespace uhom {

namespace {

const char* kCiteUhNested = "uh nested structure = every E_i class splits into k_i many E_{i+1} classes";
const char* kCiteTransfer = "nested structure (weakly) uh = its class tree (weakly) uh under predecessor";
const char* kCiteCorN2 = "nested 2-equivalence form: E_1 wuh, restrictions wuh, common (h,k) pattern";
const char* kCiteCorFin = "all-finite-class shortcut: uh = each E_i individually uh";

ExtCount tree_leaf_count(const TreePres& t) {
    if (t.children.empty()) return 1;
    ExtCount total = 0;
    for (const auto& [c, m] : t.children) total += m * tree_leaf_count(c);
    return total;
}

} // namespace

std::pair<FiniteStructure, std::vector<int>> build_TA(const FiniteStructure& nested) {
    if (nested.family != Family::NestedEq) throw_input("expected a nested equivalence structure");
    validate(nested);  // rejects non-nested relations
    int n = nested.n;
    int arity = nested.arity;

    // nodes per level: level 0 = the whole set, level i = E_i classes
    // (tagged by level), level arity+1 = singletons
    std::vector<int> parent;
    std::vector<int> leaf_of(n, -1);
    parent.push_back(0);  // root
    std::vector<std::vector<int>> prev_members{std::vector<int>()};
    for (int x = 0; x < n; ++x) prev_members[0].push_back(x);
    std::vector<int> prev_ids{0};
    for (int level = 1; level <= arity + 1; ++level) {
        std::vector<std::vector<int>> cur_members;
        std::vector<int> cur_ids;
        for (size_t p = 0; p < prev_members.size(); ++p) {
            std::set<int> done;
            for (int x : prev_members[p]) {
                if (done.count(x)) continue;
                std::vector<int> cls;
                for (int y : prev_members[p]) {
                    bool rel = (level <= arity) ? nested.rel(level - 1, x, y) : (x == y);
                    if (rel) cls.push_back(y);
                }
                for (int y : cls) done.insert(y);
                int id = static_cast<int>(parent.size());
                parent.push_back(prev_ids[p]);
                cur_members.push_back(cls);
                cur_ids.push_back(id);
                if (level == arity + 1) leaf_of[cls[0]] = id;
            }
        }
        prev_members = std::move(cur_members);
        prev_ids = std::move(cur_ids);
    }
    FiniteStructure tree = make_tree_pred(parent);
    tree.labels.resize(parent.size());
    tree.labels[0] = "A";
    for (int x = 0; x < n; ++x) tree.labels[leaf_of[x]] = "{" + nested.label(x) + "}";
    return {tree, leaf_of};
}

bool nested_ki_condition(const FiniteStructure& nested) {
    if (nested.family != Family::NestedEq) throw_input("expected a nested equivalence structure");
    validate(nested);
    int n = nested.n;
    int arity = nested.arity;
    auto classes_at = [&](int level) {  // level 0 = whole set, arity+1 = equality
        std::vector<std::vector<int>> out;
        std::vector<char> seen(n, 0);
        for (int x = 0; x < n; ++x) {
            if (seen[x]) continue;
            std::vector<int> cls;
            for (int y = 0; y < n; ++y) {
                bool rel = (level == 0) ? true
                                        : (level <= arity ? nested.rel(level - 1, x, y) : x == y);
                if (rel) cls.push_back(y);
            }
            for (int y : cls) seen[y] = 1;
            out.push_back(cls);
        }
        return out;
    };
    for (int i = 0; i <= arity; ++i) {
        auto upper = classes_at(i);
        auto lower = classes_at(i + 1);
        std::optional<size_t> k;
        for (const auto& cls : upper) {
            size_t parts = 0;
            for (const auto& sub : lower)
                if (std::find(cls.begin(), cls.end(), sub[0]) != cls.end()) ++parts;
            if (k && *k != parts) return false;
            k = parts;
        }
    }
    return true;
}

namespace {

// the three conditions of the nested 2-equivalence characterization,
// evaluated on the class tree independently of the general recursion
bool nested2_closed_form(const TreePres& tree) {
    // (a) E_1 weakly ultrahomogeneous: cofinitely many E_1 classes share a size
    std::optional<ExtCount> size1;
    for (const auto& [c, m] : tree.children) {
        if (!m.is_omega()) continue;
        ExtCount sz = tree_leaf_count(c);
        if (size1 && *size1 != sz) return false;
        size1 = sz;
    }
    // (b) E_2 restricted to each E_1 class weakly ultrahomogeneous
    for (const auto& [c, m] : tree.children) {
        std::optional<ExtCount> sub;
        for (const auto& [d, md] : c.children) {
            if (!md.is_omega()) continue;
            ExtCount sz = tree_leaf_count(d);
            if (sub && *sub != sz) return false;
            sub = sz;
        }
    }
    // (c) fixed h,k: cofinitely many restrictions uh with h 2-classes of size k
    std::optional<std::vector<ExtCount>> hk;
    for (const auto& [c, m] : tree.children) {
        if (!m.is_omega()) continue;
        std::vector<ExtCount> beta;
        if (!tree_uniform(c, &beta)) return false;
        if (hk && *hk != beta) return false;
        hk = beta;
    }
    return true;
}

} // namespace

Report analyze_nested(const NestedEqPres& p) {
    Presentation wrapped = make_pres(p);
    validate(wrapped);  // rejects non-nested concretes and bad trees
    const auto& ne = std::get<NestedEqPres>(wrapped.data);
    TreePres tree = nested_class_tree(ne);

    Report tr = analyze_tree_pred(tree);
    Report r;
    r.family = Family::NestedEq;
    r.uh = tr.uh;
    r.wuh = tr.wuh;
    r.cc = tr.wuh == Verdict::True ? Verdict::True : Verdict::Unknown;  // relational
    r.beta = tr.beta;
    r.citations = {kCiteUhNested, kCiteTransfer};

    if (ne.arity == 2) {
        bool closed = nested2_closed_form(tree);
        if (closed != (tr.wuh == Verdict::True))
            throw_internal("nested 2-equivalence closed form disagrees with the tree recursion");
        r.citations.push_back(kCiteCorN2);
    }

    // all classes finite: uh iff each individual relation is uh
    bool all_finite = true;
    for (const auto& [c, m] : tree.children)
        if (tree_leaf_count(c).is_omega()) all_finite = false;
    if (all_finite) {
        // each (A, E_i) uh iff all level-i classes share one leaf count
        bool each_uh = true;
        std::vector<std::set<std::string>> level_sizes(tree_height(tree) + 1);
        auto rec = [&](auto&& self, const TreePres& t, int depth) -> void {
            level_sizes[depth].insert(tree_leaf_count(t).str());
            for (const auto& [c, m] : t.children) self(self, c, depth + 1);
        };
        rec(rec, tree, 0);
        for (size_t d = 1; d + 1 < level_sizes.size(); ++d)
            if (level_sizes[d].size() > 1) each_uh = false;
        if (each_uh != (tr.uh == Verdict::True))
            throw_internal("all-finite-class shortcut disagrees with the tree criterion");
        r.citations.push_back(kCiteCorFin);
    }

    if (tr.wuh == Verdict::True) {
        // leaves of the exceptional subtree become class representatives
        ExceptionalDescriptor d;
        if (tr.uh == Verdict::True) {
            d.text = "empty set";
        } else if (!tr.minimal_exceptional.empty()) {
            const auto& s = tr.minimal_exceptional[0].elements;
            std::set<std::string> in_s(s.begin(), s.end());
            std::vector<std::string> leaves;
            for (const auto& a : s) {
                bool has_child = false;
                for (const auto& b : s)
                    if (b.size() > a.size() && b.compare(0, a.size(), a) == 0 &&
                        (a == "e" || b[a.size()] == '/'))
                        has_child = true;
                if (!has_child) leaves.push_back(a);
            }
            d.text = "one representative per class at each leaf of the exceptional subtree (" +
                     std::to_string(leaves.size()) + " classes)";
            d.elements = leaves;
        }
        r.minimal_exceptional.push_back(d);
    }
    return r;
}

Report analyze(const Presentation& p) {
    switch (p.family) {
        case Family::Order: return analyze_linear(std::get<LinOrderPres>(p.data));
        case Family::Equivalence: return analyze_equivalence(std::get<EqCharacter>(p.data));
        case Family::Injection: return analyze_injection(std::get<InjSpectrum>(p.data));
        case Family::Graph: return analyze_graph(std::get<GraphPres>(p.data));
        case Family::TreePO: return analyze_tree_po(std::get<TreePres>(p.data));
        case Family::TreePred: return analyze_tree_pred(std::get<TreePres>(p.data));
        case Family::NestedEq: return analyze_nested(std::get<NestedEqPres>(p.data));
    }
    throw_internal("bad family");
}

} // namespace uhom
