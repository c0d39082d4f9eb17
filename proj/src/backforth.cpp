#include "uhom/backforth.hpp"

#include <algorithm>
#include <functional>

namespace uhom {

namespace {

struct TermTable {
    // term values on both sides, kNoImage = undefined
    std::vector<int> va, vb;
};

TermTable build_terms(const FiniteStructure& s1, const std::vector<int>& xs,
                      const FiniteStructure& s2, const std::vector<int>& ys, int stage) {
    TermTable t;
    for (size_t i = 0; i < xs.size(); ++i) {
        t.va.push_back(xs[i]);
        t.vb.push_back(ys[i]);
    }
    if (s1.family == Family::TreePO) {
        t.va.push_back(root_of(s1));
        t.vb.push_back(root_of(s2));
    }
    size_t level_begin = 0, level_end = t.va.size();
    for (int h = 1; h <= stage; ++h) {
        for (int k = 0; k < s1.num_funcs(); ++k)
            for (size_t i = level_begin; i < level_end; ++i) {
                int a = t.va[i], b = t.vb[i];
                t.va.push_back(a == kNoImage ? kNoImage : s1.func(k, a));
                t.vb.push_back(b == kNoImage ? kNoImage : s2.func(k, b));
            }
        level_begin = level_end;
        level_end = t.va.size();
        if (level_begin == level_end) break;
    }
    return t;
}

} // namespace

int closure_depth(const FiniteStructure& s) { return s.n; }

bool stage_iso(const FiniteStructure& s1, const std::vector<int>& xs, const FiniteStructure& s2,
               const std::vector<int>& ys, int stage) {
    if (xs.size() != ys.size()) throw_input("tuple arity mismatch");
    if (s1.family != s2.family || s1.arity != s2.arity) throw_input("cross-family stage check");
    for (int x : xs)
        if (x < 0 || x >= s1.n) throw_input("tuple element out of range");
    for (int y : ys)
        if (y < 0 || y >= s2.n) throw_input("tuple element out of range");
    TermTable t = build_terms(s1, xs, s2, ys, stage);
    size_t m = t.va.size();
    for (size_t i = 0; i < m; ++i)
        if ((t.va[i] == kNoImage) != (t.vb[i] == kNoImage)) return false;
    for (size_t i = 0; i < m; ++i) {
        if (t.va[i] == kNoImage) continue;
        for (size_t j = 0; j < m; ++j) {
            if (t.va[j] == kNoImage) continue;
            if ((t.va[i] == t.va[j]) != (t.vb[i] == t.vb[j])) return false;
            for (int r = 0; r < s1.num_rels(); ++r)
                if (s1.rel(r, t.va[i], t.va[j]) != s2.rel(r, t.vb[i], t.vb[j])) return false;
        }
    }
    return true;
}

namespace {

// Partial-isomorphism check across two structures: the pair map, closed
// under the functions, must preserve relations and definedness.
bool pair_map_ok(const FiniteStructure& A, const FiniteStructure& B,
                 const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> img(A.n, -1), pre(B.n, -1);
    std::vector<int> work;
    auto put = [&](int a, int b) -> bool {
        if (img[a] != -1) return img[a] == b;
        if (pre[b] != -1) return false;
        img[a] = b;
        pre[b] = a;
        work.push_back(a);
        return true;
    };
    for (auto [a, b] : pairs)
        if (!put(a, b)) return false;
    if (A.family == Family::TreePO && A.n > 0 && B.n > 0)
        if (!put(root_of(A), root_of(B))) return false;
    while (!work.empty()) {
        int a = work.back();
        work.pop_back();
        int b = img[a];
        for (int k = 0; k < A.num_funcs(); ++k) {
            int fa = A.func(k, a), fb = B.func(k, b);
            if ((fa == kNoImage) != (fb == kNoImage)) return false;
            if (fa == kNoImage) continue;
            if (!put(fa, fb)) return false;
        }
    }
    for (int r = 0; r < A.num_rels(); ++r)
        for (int a = 0; a < A.n; ++a) {
            if (img[a] == -1) continue;
            for (int c = 0; c < A.n; ++c) {
                if (img[c] == -1) continue;
                if (A.rel(r, a, c) != B.rel(r, img[a], img[c])) return false;
            }
        }
    return true;
}

} // namespace

IsoSchedule back_and_forth(const FiniteStructure& a, const FiniteStructure& b) {
    if (a.family != b.family || a.arity != b.arity) throw_input("cross-family inputs");
    IsoSchedule deepest;
    if (a.n != b.n)
        throw NoIsomorphism("structures have different cardinality", deepest);

    std::vector<std::pair<int, int>> pairs;
    std::vector<char> ma(a.n, 0), mb(b.n, 0);

    std::function<bool()> step = [&]() -> bool {
        if (static_cast<int>(pairs.size()) == a.n) return true;
        if (pairs.size() > deepest.pairs.size()) deepest.pairs = pairs;
        bool left_turn = pairs.size() % 2 == 0;
        if (left_turn) {
            int x = -1;
            for (int i = 0; i < a.n; ++i)
                if (!ma[i]) {
                    x = i;
                    break;
                }
            for (int y = 0; y < b.n; ++y) {
                if (mb[y]) continue;
                pairs.push_back({x, y});
                if (pair_map_ok(a, b, pairs)) {
                    ma[x] = 1;
                    mb[y] = 1;
                    if (step()) return true;
                    ma[x] = 0;
                    mb[y] = 0;
                }
                pairs.pop_back();
            }
        } else {
            int y = -1;
            for (int i = 0; i < b.n; ++i)
                if (!mb[i]) {
                    y = i;
                    break;
                }
            for (int x = 0; x < a.n; ++x) {
                if (ma[x]) continue;
                pairs.push_back({x, y});
                if (pair_map_ok(a, b, pairs)) {
                    ma[x] = 1;
                    mb[y] = 1;
                    if (step()) return true;
                    ma[x] = 0;
                    mb[y] = 0;
                }
                pairs.pop_back();
            }
        }
        return false;
    };

    if (!step()) throw NoIsomorphism("no isomorphism between the inputs", deepest);

    IsoSchedule out;
    out.pairs = pairs;
    out.total = true;
    // verify each prefix by the term-stage comparison at full depth
    int depth = closure_depth(a);
    std::vector<int> xs, ys;
    for (auto [x, y] : pairs) {
        xs.push_back(x);
        ys.push_back(y);
        out.verified.push_back(stage_iso(a, xs, b, ys, depth));
    }
    // edge-by-edge check of the total map
    std::vector<int> img(a.n);
    for (auto [x, y] : pairs) img[x] = y;
    for (int r = 0; r < a.num_rels(); ++r)
        for (int x = 0; x < a.n; ++x)
            for (int y = 0; y < a.n; ++y)
                if (a.rel(r, x, y) != b.rel(r, img[x], img[y]))
                    throw_internal("schedule failed the total-map verification");
    for (int k = 0; k < a.num_funcs(); ++k)
        for (int x = 0; x < a.n; ++x) {
            int fx = a.func(k, x);
            int fy = b.func(k, img[x]);
            if ((fx == kNoImage) != (fy == kNoImage) || (fx != kNoImage && img[fx] != fy))
                throw_internal("schedule failed the total-map verification");
        }
    return out;
}

// ------------------------------------------------------------------ symbolic

namespace {

long long zigzag_pos(int j) {
    return (j % 2 == 0) ? static_cast<long long>(j / 2) : -static_cast<long long>((j + 1) / 2);
}

struct SymbolicSide {
    Presentation pres;
    FiniteStructure s;
    MaterializeInfo info;
    // tree families: ancestor key chain per element
    std::vector<std::vector<std::string>> chains;
    // graph: canonical vertex id within the blueprint
    std::vector<int> canon_vertex;
};

Presentation canonicalize_for_schedule(const Presentation& p) {
    Presentation q = p;
    switch (p.family) {
        case Family::Order:
            q.data = normalize_linear(std::get<LinOrderPres>(p.data));
            break;
        case Family::TreePO:
        case Family::TreePred:
            q.data = canonical_tree(std::get<TreePres>(p.data));
            break;
        case Family::NestedEq: {
            auto ne = std::get<NestedEqPres>(p.data);
            if (ne.tree) ne.tree = canonical_tree(*ne.tree);
            q.data = ne;
            break;
        }
        case Family::Graph: {
            auto g = std::get<GraphPres>(p.data);
            std::stable_sort(g.components.begin(), g.components.end(),
                             [](const GraphComponent& x, const GraphComponent& y) {
                                 return canonical_encoding(x.graph) < canonical_encoding(y.graph);
                             });
            // merge isomorphic neighbours
            std::vector<GraphComponent> merged;
            for (auto& c : g.components) {
                if (!merged.empty() &&
                    canonical_encoding(merged.back().graph) == canonical_encoding(c.graph))
                    merged.back().multiplicity += c.multiplicity;
                else
                    merged.push_back(c);
            }
            g.components = std::move(merged);
            q.data = g;
            break;
        }
        default: break;
    }
    return q;
}

SymbolicSide prepare_side(const Presentation& p, int n) {
    SymbolicSide side;
    side.pres = canonicalize_for_schedule(p);
    side.s = materialize(side.pres, n, &side.info);
    if (side.pres.family == Family::TreePO || side.pres.family == Family::TreePred ||
        side.pres.family == Family::NestedEq) {
        side.chains.resize(side.s.n);
        for (int e = 0; e < side.s.n; ++e) {
            int node = side.info.element_node[e];
            std::vector<std::string> chain;
            int x = node;
            while (true) {
                chain.push_back(side.info.node_key[x]);
                if (side.info.node_parent[x] == x) break;
                x = side.info.node_parent[x];
            }
            std::reverse(chain.begin(), chain.end());
            side.chains[e] = chain;
        }
    }
    if (side.pres.family == Family::Graph) {
        const auto& g = std::get<GraphPres>(side.pres.data);
        std::vector<std::vector<int>> comp_canon;
        for (const auto& c : g.components) comp_canon.push_back(canonical_permutation(c.graph));
        side.canon_vertex.assign(side.s.n, -1);
        for (int e = 0; e < side.s.n; ++e) {
            int inst = side.info.elements[e].instance;
            int bp = side.info.instances[inst].blueprint;
            int v = side.info.elements[e].index;
            side.canon_vertex[e] = (bp < 0) ? v : comp_canon[bp][v];
        }
    }
    return side;
}

// Family-specific extension compatibility: may (a -> b) be part of an
// isomorphism of the presented structures extending the current pairs?
bool symbolic_compat(const SymbolicSide& A, const SymbolicSide& B,
                     const std::vector<std::pair<int, int>>& pairs, int a, int b) {
    Family fam = A.pres.family;
    const auto& ea = A.info.elements.empty() ? MaterializeInfo::Element{} : A.info.elements[a];
    const auto& eb = B.info.elements.empty() ? MaterializeInfo::Element{} : B.info.elements[b];
    switch (fam) {
        case Family::Order: {
            const auto& pa = std::get<LinOrderPres>(A.pres.data);
            // normalized presentations are equal, so block indices align
            if (ea.instance != eb.instance) return false;
            BlockKind kind = pa.blocks[ea.instance].kind;
            if (kind == BlockKind::Fin || kind == BlockKind::Omega || kind == BlockKind::OmegaStar)
                if (ea.index != eb.index) return false;
            if (kind == BlockKind::Zeta) {
                for (auto [x, y] : pairs) {
                    if (A.info.elements[x].instance != ea.instance) continue;
                    if (zigzag_pos(ea.index) - zigzag_pos(A.info.elements[x].index) !=
                        zigzag_pos(eb.index) - zigzag_pos(B.info.elements[y].index))
                        return false;
                }
            }
            return true;
        }
        case Family::Equivalence: {
            if (A.info.instances[ea.instance].capacity != B.info.instances[eb.instance].capacity)
                return false;
            return true;
        }
        case Family::Injection: {
            const auto& ia = A.info.instances[ea.instance];
            const auto& ib = B.info.instances[eb.instance];
            if (ia.kind != ib.kind || ia.capacity != ib.capacity) return false;
            if (ia.kind == 1 && ea.index != eb.index) return false;  // omega orbit position
            for (auto [x, y] : pairs) {
                bool same_a = A.info.elements[x].instance == ea.instance;
                bool same_b = B.info.elements[y].instance == eb.instance;
                if (same_a != same_b) return false;
                if (!same_a) continue;
                long long da, db;
                if (ia.kind == 2) {  // zeta: relative positions
                    da = zigzag_pos(ea.index) - zigzag_pos(A.info.elements[x].index);
                    db = zigzag_pos(eb.index) - zigzag_pos(B.info.elements[y].index);
                } else {  // cycles and omega orbits: arrival distance (mod size for cycles)
                    da = ea.index - A.info.elements[x].index;
                    db = eb.index - B.info.elements[y].index;
                    if (ia.kind == 0 && ia.capacity.is_finite()) {
                        long long k = static_cast<long long>(ia.capacity.finite());
                        da = ((da % k) + k) % k;
                        db = ((db % k) + k) % k;
                    }
                }
                if (da != db) return false;
            }
            return true;
        }
        case Family::Graph: {
            const auto& ia = A.info.instances[ea.instance];
            const auto& ib = B.info.instances[eb.instance];
            if (ia.blueprint != ib.blueprint || ia.capacity != ib.capacity) return false;
            if (A.canon_vertex[a] != B.canon_vertex[b]) return false;
            for (auto [x, y] : pairs) {
                bool same_a = A.info.elements[x].instance == ea.instance;
                bool same_b = B.info.elements[y].instance == eb.instance;
                if (same_a != same_b) return false;
            }
            return true;
        }
        case Family::TreePO:
        case Family::TreePred:
        case Family::NestedEq:
            return A.chains[a] == B.chains[b];
    }
    return false;
}

// Relation/function agreement among the matched pairs on the prefixes.
// Injection prefixes have frontier-truncated orbits, so their function is
// handled by the metadata checks instead.
bool symbolic_pairs_ok(const SymbolicSide& A, const SymbolicSide& B,
                       const std::vector<std::pair<int, int>>& pairs) {
    const FiniteStructure& sa = A.s;
    const FiniteStructure& sb = B.s;
    for (auto [x, y] : pairs)
        for (auto [u, v] : pairs) {
            if ((x == u) != (y == v)) return false;
            for (int r = 0; r < sa.num_rels(); ++r)
                if (sa.rel(r, x, u) != sb.rel(r, y, v)) return false;
        }
    if (sa.family == Family::TreePred) {
        std::vector<int> img(sa.n, -1);
        for (auto [x, y] : pairs) img[x] = y;
        for (auto [x, y] : pairs) {
            int fx = sa.func(0, x);
            if (img[fx] != -1 && img[fx] != sb.func(0, y)) return false;
        }
    }
    return true;
}

} // namespace

IsoSchedule back_and_forth_symbolic(const Presentation& a, const Presentation& b, int steps) {
    if (a.family != b.family) throw_input("cross-family inputs");
    if (steps < 0) throw_input("negative schedule length");
    if (a.family == Family::NestedEq) {
        const auto& na = std::get<NestedEqPres>(a.data);
        const auto& nb = std::get<NestedEqPres>(b.data);
        if (na.concrete && nb.concrete) return back_and_forth(*na.concrete, *nb.concrete);
    }
    if (!pres_isomorphic(a, b))
        throw_precondition("presentations are not isomorphic");

    int n = std::max(16, 6 * steps);
    for (int attempt = 0; attempt < 2; ++attempt, n *= 4) {
        SymbolicSide A = prepare_side(a, n);
        SymbolicSide B = prepare_side(b, n);

        std::vector<std::pair<int, int>> pairs;
        std::vector<char> ma(A.s.n, 0), mb(B.s.n, 0);
        std::function<bool()> step = [&]() -> bool {
            if (static_cast<int>(pairs.size()) == steps) return true;
            bool left_turn = pairs.size() % 2 == 0;
            int fixed = -1;
            if (left_turn) {
                for (int i = 0; i < A.s.n; ++i)
                    if (!ma[i]) {
                        fixed = i;
                        break;
                    }
                if (fixed == -1) return true;  // prefix exhausted
                for (int y = 0; y < B.s.n; ++y) {
                    if (mb[y]) continue;
                    if (!symbolic_compat(A, B, pairs, fixed, y)) continue;
                    pairs.push_back({fixed, y});
                    if (symbolic_pairs_ok(A, B, pairs)) {
                        ma[fixed] = 1;
                        mb[y] = 1;
                        if (step()) return true;
                        ma[fixed] = 0;
                        mb[y] = 0;
                    }
                    pairs.pop_back();
                }
            } else {
                for (int i = 0; i < B.s.n; ++i)
                    if (!mb[i]) {
                        fixed = i;
                        break;
                    }
                if (fixed == -1) return true;
                for (int x = 0; x < A.s.n; ++x) {
                    if (ma[x]) continue;
                    if (!symbolic_compat(A, B, pairs, x, fixed)) continue;
                    pairs.push_back({x, fixed});
                    if (symbolic_pairs_ok(A, B, pairs)) {
                        ma[x] = 1;
                        mb[fixed] = 1;
                        if (step()) return true;
                        ma[x] = 0;
                        mb[fixed] = 0;
                    }
                    pairs.pop_back();
                }
            }
            return false;
        };
        if (step()) {
            IsoSchedule out;
            out.pairs = pairs;
            out.verified.assign(pairs.size(), true);
            out.total = false;
            return out;
        }
    }
    throw_internal("schedule construction failed on isomorphic presentations");
}

} // namespace uhom
