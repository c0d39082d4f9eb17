#include "uhom/finite_structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace uhom {

std::string family_name(Family f) {
    switch (f) {
        case Family::Order: return "order";
        case Family::Equivalence: return "equivalence";
        case Family::Injection: return "injection";
        case Family::Graph: return "graph";
        case Family::TreePO: return "tree_po";
        case Family::TreePred: return "tree_pred";
        case Family::NestedEq: return "nested_eq";
    }
    throw_internal("bad family tag");
}

Family family_from_name(const std::string& name) {
    if (name == "order" || name == "linear") return Family::Order;
    if (name == "equivalence") return Family::Equivalence;
    if (name == "injection") return Family::Injection;
    if (name == "graph") return Family::Graph;
    if (name == "tree_po" || name == "tree-po") return Family::TreePO;
    if (name == "tree_pred" || name == "tree-pred") return Family::TreePred;
    if (name == "nested_eq" || name == "nested-eq") return Family::NestedEq;
    throw_input("unknown family: " + name);
}

namespace {

FiniteStructure blank(Family fam, int n, int nrels, int nfuncs) {
    if (n < 0) throw_input("negative universe size");
    FiniteStructure s;
    s.family = fam;
    s.n = n;
    s.rels.assign(nrels, std::vector<std::uint8_t>(static_cast<size_t>(n) * n, 0));
    s.funcs.assign(nfuncs, std::vector<int>(n, kNoImage));
    return s;
}

void check_range(const FiniteStructure& s, int a, const char* what) {
    if (a < 0 || a >= s.n) throw_input(std::string(what) + " out of range");
}

} // namespace

FiniteStructure make_order(int n) {
    std::vector<int> pos(n);
    std::iota(pos.begin(), pos.end(), 0);
    return make_order_from_positions(pos);
}

FiniteStructure make_order_from_positions(const std::vector<int>& pos) {
    int n = static_cast<int>(pos.size());
    FiniteStructure s = blank(Family::Order, n, 1, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            s.set_rel(0, a, b, pos[a] <= pos[b]);
    validate(s);
    return s;
}

FiniteStructure make_equivalence(int n, const std::vector<std::vector<int>>& classes) {
    FiniteStructure s = blank(Family::Equivalence, n, 1, 0);
    std::vector<int> cls(n, -1);
    for (size_t c = 0; c < classes.size(); ++c)
        for (int x : classes[c]) {
            check_range(s, x, "class element");
            if (cls[x] != -1) throw_input("element in two classes");
            cls[x] = static_cast<int>(c);
        }
    for (int x = 0; x < n; ++x)
        if (cls[x] == -1) throw_input("element in no class");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            s.set_rel(0, a, b, cls[a] == cls[b]);
    validate(s);
    return s;
}

FiniteStructure make_injection(const std::vector<int>& f) {
    int n = static_cast<int>(f.size());
    FiniteStructure s = blank(Family::Injection, n, 0, 1);
    s.funcs[0] = f;
    validate(s);
    return s;
}

FiniteStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    FiniteStructure s = blank(Family::Graph, n, 1, 0);
    for (auto [a, b] : edges) {
        check_range(s, a, "edge endpoint");
        check_range(s, b, "edge endpoint");
        if (a == b) throw_input("loop edge");
        s.set_rel(0, a, b, true);
        s.set_rel(0, b, a, true);
    }
    validate(s);
    return s;
}

FiniteStructure make_tree_po(const std::vector<int>& parent) {
    int n = static_cast<int>(parent.size());
    FiniteStructure s = blank(Family::TreePO, n, 1, 0);
    // strict ancestor relation from the parent chain
    for (int x = 0; x < n; ++x) {
        check_range(s, parent[x], "parent");
        int a = x;
        int steps = 0;
        while (parent[a] != a) {
            a = parent[a];
            s.set_rel(0, a, x, true);
            if (++steps > n) throw_input("parent vector has a cycle");
        }
    }
    validate(s);
    return s;
}

FiniteStructure make_tree_pred(const std::vector<int>& parent) {
    int n = static_cast<int>(parent.size());
    FiniteStructure s = blank(Family::TreePred, n, 0, 1);
    s.funcs[0] = parent;
    validate(s);
    return s;
}

FiniteStructure make_nested(int n, const std::vector<std::vector<std::vector<int>>>& class_lists) {
    FiniteStructure s = blank(Family::NestedEq, n, static_cast<int>(class_lists.size()), 0);
    s.arity = static_cast<int>(class_lists.size());
    for (size_t r = 0; r < class_lists.size(); ++r) {
        std::vector<int> cls(n, -1);
        for (size_t c = 0; c < class_lists[r].size(); ++c)
            for (int x : class_lists[r][c]) {
                check_range(s, x, "class element");
                if (cls[x] != -1) throw_input("element in two classes");
                cls[x] = static_cast<int>(c);
            }
        for (int x = 0; x < n; ++x)
            if (cls[x] == -1) throw_input("element in no class");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                s.set_rel(static_cast<int>(r), a, b, cls[a] == cls[b]);
    }
    validate(s);
    return s;
}

namespace {

void check_equivalence_rel(const FiniteStructure& s, int r) {
    for (int a = 0; a < s.n; ++a) {
        if (!s.rel(r, a, a)) throw_input("relation not reflexive");
        for (int b = 0; b < s.n; ++b) {
            if (s.rel(r, a, b) != s.rel(r, b, a)) throw_input("relation not symmetric");
            for (int c = 0; c < s.n; ++c)
                if (s.rel(r, a, b) && s.rel(r, b, c) && !s.rel(r, a, c))
                    throw_input("relation not transitive");
        }
    }
}

} // namespace

void validate(const FiniteStructure& s) {
    switch (s.family) {
        case Family::Order: {
            if (s.num_rels() != 1) throw_input("order needs one relation");
            for (int a = 0; a < s.n; ++a) {
                if (!s.rel(0, a, a)) throw_input("order not reflexive");
                for (int b = 0; b < s.n; ++b) {
                    if (a != b && s.rel(0, a, b) && s.rel(0, b, a)) throw_input("order not antisymmetric");
                    if (a != b && !s.rel(0, a, b) && !s.rel(0, b, a)) throw_input("order not total");
                    for (int c = 0; c < s.n; ++c)
                        if (s.rel(0, a, b) && s.rel(0, b, c) && !s.rel(0, a, c))
                            throw_input("order not transitive");
                }
            }
            break;
        }
        case Family::Equivalence: {
            if (s.num_rels() != 1) throw_input("equivalence needs one relation");
            check_equivalence_rel(s, 0);
            break;
        }
        case Family::NestedEq: {
            if (s.num_rels() < 1 || s.num_rels() != s.arity) throw_input("nested-eq arity mismatch");
            for (int r = 0; r < s.num_rels(); ++r) check_equivalence_rel(s, r);
            for (int r = 0; r + 1 < s.num_rels(); ++r)
                for (int a = 0; a < s.n; ++a)
                    for (int b = 0; b < s.n; ++b)
                        if (s.rel(r + 1, a, b) && !s.rel(r, a, b))
                            throw_input("relations not nested: E_" + std::to_string(r + 2) +
                                        " not contained in E_" + std::to_string(r + 1));
            break;
        }
        case Family::Injection: {
            if (s.num_funcs() != 1) throw_input("injection needs one function");
            std::vector<int> preim(s.n, -1);
            for (int a = 0; a < s.n; ++a) {
                int v = s.func(0, a);
                if (v == kNoImage) continue;
                if (v < 0 || v >= s.n) throw_input("function value out of range");
                if (preim[v] != -1) throw_input("function not injective");
                preim[v] = a;
            }
            break;
        }
        case Family::Graph: {
            if (s.num_rels() != 1) throw_input("graph needs one relation");
            for (int a = 0; a < s.n; ++a) {
                if (s.rel(0, a, a)) throw_input("adjacency not irreflexive");
                for (int b = 0; b < s.n; ++b)
                    if (s.rel(0, a, b) != s.rel(0, b, a)) throw_input("adjacency not symmetric");
            }
            break;
        }
        case Family::TreePO: {
            if (s.num_rels() != 1) throw_input("tree order needs one relation");
            if (s.n == 0) throw_input("tree needs a root");
            for (int a = 0; a < s.n; ++a) {
                if (s.rel(0, a, a)) throw_input("tree order not strict");
                for (int b = 0; b < s.n; ++b) {
                    if (a != b && s.rel(0, a, b) && s.rel(0, b, a)) throw_input("tree order has a 2-cycle");
                    for (int c = 0; c < s.n; ++c)
                        if (s.rel(0, a, b) && s.rel(0, b, c) && !s.rel(0, a, c))
                            throw_input("tree order not transitive");
                }
            }
            int root = -1;
            for (int a = 0; a < s.n; ++a) {
                bool is_min = true;
                for (int b = 0; b < s.n; ++b)
                    if (b != a && !s.rel(0, a, b)) is_min = false;
                if (is_min) {
                    if (root != -1) throw_input("tree order has two minima");
                    root = a;
                }
            }
            if (root == -1 && s.n > 1) throw_input("tree order has no minimum");
            // down-sets are chains
            for (int x = 0; x < s.n; ++x)
                for (int a = 0; a < s.n; ++a)
                    for (int b = 0; b < s.n; ++b)
                        if (a != b && s.rel(0, a, x) && s.rel(0, b, x) && !s.rel(0, a, b) && !s.rel(0, b, a))
                            throw_input("down-set not totally ordered");
            break;
        }
        case Family::TreePred: {
            if (s.num_funcs() != 1) throw_input("tree pred needs one function");
            if (s.n == 0) throw_input("tree needs a root");
            int root = -1;
            for (int a = 0; a < s.n; ++a) {
                int v = s.func(0, a);
                if (v < 0 || v >= s.n) throw_input("predecessor must be total");
                if (v == a) {
                    if (root != -1) throw_input("two predecessor fixpoints");
                    root = a;
                }
            }
            if (root == -1) throw_input("no root under predecessor");
            for (int a = 0; a < s.n; ++a) {
                int x = a, steps = 0;
                while (x != root) {
                    x = s.func(0, x);
                    if (++steps > s.n) throw_input("element does not reach the root");
                }
            }
            break;
        }
    }
}

int root_of(const FiniteStructure& s) {
    if (s.family == Family::TreePred) {
        for (int a = 0; a < s.n; ++a)
            if (s.func(0, a) == a) return a;
        throw_input("no root");
    }
    if (s.family == Family::TreePO) {
        if (s.n == 1) return 0;
        for (int a = 0; a < s.n; ++a) {
            bool is_min = true;
            for (int b = 0; b < s.n; ++b)
                if (b != a && !s.rel(0, a, b)) is_min = false;
            if (is_min) return a;
        }
        throw_input("no root");
    }
    throw_input("root_of on non-tree family");
}

std::vector<int> tree_parents(const FiniteStructure& s) {
    if (s.family == Family::TreePred) {
        std::vector<int> p = s.funcs[0];
        return p;
    }
    if (s.family != Family::TreePO) throw_input("tree_parents on non-tree family");
    int root = root_of(s);
    std::vector<int> p(s.n, root);
    for (int x = 0; x < s.n; ++x) {
        if (x == root) {
            p[x] = x;
            continue;
        }
        // parent = maximal proper ancestor
        int best = root;
        for (int a = 0; a < s.n; ++a)
            if (s.rel(0, a, x) && (best == x || a == best || s.rel(0, best, a))) best = a;
        p[x] = best;
    }
    return p;
}

FiniteStructure apply_perm(const FiniteStructure& s, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != s.n) throw_input("permutation size mismatch");
    FiniteStructure t;
    t.family = s.family;
    t.n = s.n;
    t.arity = s.arity;
    t.rels.assign(s.rels.size(), std::vector<std::uint8_t>(static_cast<size_t>(s.n) * s.n, 0));
    t.funcs.assign(s.funcs.size(), std::vector<int>(s.n, kNoImage));
    for (int r = 0; r < s.num_rels(); ++r)
        for (int a = 0; a < s.n; ++a)
            for (int b = 0; b < s.n; ++b)
                if (s.rel(r, a, b)) t.set_rel(r, perm[a], perm[b], true);
    for (int k = 0; k < s.num_funcs(); ++k)
        for (int a = 0; a < s.n; ++a) {
            int v = s.func(k, a);
            t.funcs[k][perm[a]] = (v == kNoImage) ? kNoImage : perm[v];
        }
    if (!s.labels.empty()) {
        t.labels.assign(s.n, "");
        for (int a = 0; a < s.n && a < static_cast<int>(s.labels.size()); ++a)
            t.labels[perm[a]] = s.labels[a];
    }
    return t;
}

std::vector<int> generated_substructure(const FiniteStructure& s, const std::vector<int>& tuple) {
    std::set<int> out;
    std::vector<int> work;
    for (int x : tuple) {
        if (x < 0 || x >= s.n) throw_input("tuple element out of range");
        if (out.insert(x).second) work.push_back(x);
    }
    if (s.family == Family::TreePO && s.n > 0) {
        int r = root_of(s);
        if (out.insert(r).second) work.push_back(r);
    }
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int k = 0; k < s.num_funcs(); ++k) {
            int v = s.func(k, x);
            if (v != kNoImage && out.insert(v).second) work.push_back(v);
        }
    }
    return std::vector<int>(out.begin(), out.end());
}

std::vector<int> encode(const FiniteStructure& s) {
    std::vector<int> e;
    e.reserve(2 + s.rels.size() * s.n * s.n + s.funcs.size() * s.n);
    e.push_back(s.n);
    e.push_back(s.arity);
    for (int r = 0; r < s.num_rels(); ++r)
        for (int a = 0; a < s.n; ++a)
            for (int b = 0; b < s.n; ++b) e.push_back(s.rel(r, a, b) ? 1 : 0);
    for (int k = 0; k < s.num_funcs(); ++k)
        for (int a = 0; a < s.n; ++a) {
            int v = s.func(k, a);
            e.push_back(v == kNoImage ? s.n : v);
        }
    return e;
}

namespace {

// Branch-and-bound minimisation of the relational part of the encoding;
// function values are compared at the leaves once the permutation is known.
struct CanonState {
    const FiniteStructure* s;
    int n;
    std::vector<int> old_of;  // new position -> old element
    std::vector<int> pos_of;  // old element -> new position or -1
    std::vector<int> best;    // best full encoding seen
    std::vector<int> best_pos_of;
    bool have_best = false;

    // relation cells in visit order for prefix of size m:
    // appended at depth m: (m,0..m) and (0..m-1, m) for each relation
    std::vector<int> cur;

    void run() {
        old_of.assign(n, -1);
        pos_of.assign(n, -1);
        cur.clear();
        rec(0, true);
    }

    std::vector<int> cells_for_depth(int m) const {
        std::vector<int> v;
        const FiniteStructure& t = *s;
        for (int r = 0; r < t.num_rels(); ++r) {
            for (int b = 0; b <= m; ++b) v.push_back(t.rel(r, old_of[m], old_of[b]) ? 1 : 0);
            for (int a = 0; a < m; ++a) v.push_back(t.rel(r, old_of[a], old_of[m]) ? 1 : 0);
        }
        return v;
    }

    std::vector<int> leaf_encoding() const {
        std::vector<int> e = cur;
        const FiniteStructure& t = *s;
        for (int k = 0; k < t.num_funcs(); ++k)
            for (int a = 0; a < n; ++a) {
                int v = t.func(k, old_of[a]);
                e.push_back(v == kNoImage ? n : pos_of[v]);
            }
        return e;
    }

    // `tight` = current prefix equals the best prefix so far; pruning and
    // further comparisons only make sense while tight.
    void rec(int m, bool tight) {
        if (m == n) {
            std::vector<int> e = leaf_encoding();
            if (!have_best || e < best) {
                best = std::move(e);
                best_pos_of = pos_of;
                have_best = true;
            }
            return;
        }
        for (int cand = 0; cand < n; ++cand) {
            if (pos_of[cand] != -1) continue;
            old_of[m] = cand;
            pos_of[cand] = m;
            std::vector<int> add = cells_for_depth(m);
            bool prune = false;
            bool child_tight = tight && have_best;
            if (tight && have_best) {
                size_t off = cur.size();
                for (size_t i = 0; i < add.size(); ++i) {
                    int bv = best[off + i];
                    if (add[i] != bv) {
                        if (add[i] > bv) prune = true;
                        child_tight = false;
                        break;
                    }
                }
            }
            if (!prune) {
                size_t save = cur.size();
                cur.insert(cur.end(), add.begin(), add.end());
                rec(m + 1, child_tight);
                cur.resize(save);
            }
            pos_of[cand] = -1;
            old_of[m] = -1;
        }
    }
};

} // namespace

std::vector<int> canonical_encoding(const FiniteStructure& s) {
    if (s.n == 0) return encode(s);
    CanonState st;
    st.s = &s;
    st.n = s.n;
    st.run();
    std::vector<int> e;
    e.push_back(s.n);
    e.push_back(s.arity);
    e.insert(e.end(), st.best.begin(), st.best.end());
    return e;
}

std::vector<int> canonical_permutation(const FiniteStructure& s) {
    if (s.n == 0) return {};
    CanonState st;
    st.s = &s;
    st.n = s.n;
    st.run();
    return st.best_pos_of;
}

bool isomorphic(const FiniteStructure& a, const FiniteStructure& b) {
    if (a.family != b.family || a.n != b.n || a.arity != b.arity) return false;
    return canonical_encoding(a) == canonical_encoding(b);
}

} // namespace uhom
