#include "uhom/presentation.hpp"

#include <algorithm>
#include <set>

namespace uhom {

// ---------------------------------------------------------------- linear

std::string block_str(const Block& b) {
    switch (b.kind) {
        case BlockKind::Fin: return "fin" + std::to_string(b.size);
        case BlockKind::Omega: return "omega";
        case BlockKind::OmegaStar: return "omega*";
        case BlockKind::Zeta: return "zeta";
        case BlockKind::Eta: return "eta";
    }
    throw_internal("bad block kind");
}

std::string linear_str(const LinOrderPres& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        if (i) s += "+";
        s += block_str(p.blocks[i]);
    }
    return s + "]";
}

LinOrderPres normalize_linear(const LinOrderPres& p) {
    for (const Block& b : p.blocks)
        if (b.kind == BlockKind::Fin && b.size < 1) throw_input("finite chain block must be nonempty");
    std::vector<Block> cur = p.blocks;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Block> next;
        for (size_t i = 0; i < cur.size(); ++i) {
            Block b = cur[i];
            if (!next.empty()) {
                Block& prev = next.back();
                if (prev.kind == BlockKind::Fin && b.kind == BlockKind::Fin) {
                    prev.size += b.size;
                    changed = true;
                    continue;
                }
                if (prev.kind == BlockKind::Eta && b.kind == BlockKind::Eta) {
                    changed = true;
                    continue;
                }
                if (prev.kind == BlockKind::Fin && b.kind == BlockKind::Omega) {
                    prev = b;
                    changed = true;
                    continue;
                }
                if (prev.kind == BlockKind::OmegaStar && b.kind == BlockKind::Fin) {
                    changed = true;
                    continue;
                }
                if (prev.kind == BlockKind::OmegaStar && b.kind == BlockKind::Omega) {
                    prev = zeta_block();
                    changed = true;
                    continue;
                }
                if (next.size() >= 2 && prev.kind == BlockKind::Fin && prev.size == 1 &&
                    next[next.size() - 2].kind == BlockKind::Eta && b.kind == BlockKind::Eta) {
                    next.pop_back();
                    changed = true;
                    continue;
                }
            }
            next.push_back(b);
        }
        cur = std::move(next);
    }
    return LinOrderPres{cur};
}

// ---------------------------------------------------------------- trees

TreePres tree_node(std::vector<std::pair<TreePres, ExtCount>> children) {
    for (const auto& [c, m] : children)
        if (m.is_zero()) throw_input("child multiplicity must be at least 1");
    TreePres t;
    t.children = std::move(children);
    return t;
}

std::string tree_key(const TreePres& t) {
    std::vector<std::pair<std::string, ExtCount>> ks;
    for (const auto& [c, m] : t.children) ks.push_back({tree_key(c), m});
    std::sort(ks.begin(), ks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge equal subtrees
    std::string s = "(";
    for (size_t i = 0; i < ks.size();) {
        size_t j = i;
        ExtCount total = 0;
        while (j < ks.size() && ks[j].first == ks[i].first) {
            total += ks[j].second;
            ++j;
        }
        s += ks[i].first + "^" + total.str();
        i = j;
    }
    return s + ")";
}

TreePres canonical_tree(const TreePres& t) {
    std::vector<std::pair<TreePres, ExtCount>> cs;
    for (const auto& [c, m] : t.children) cs.push_back({canonical_tree(c), m});
    std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
        return tree_key(a.first) < tree_key(b.first);
    });
    std::vector<std::pair<TreePres, ExtCount>> merged;
    for (auto& [c, m] : cs) {
        if (!merged.empty() && merged.back().first == c)
            merged.back().second += m;
        else
            merged.push_back({c, m});
    }
    TreePres out;
    out.children = std::move(merged);
    return out;
}

int tree_height(const TreePres& t) {
    int h = 0;
    for (const auto& [c, m] : t.children) h = std::max(h, 1 + tree_height(c));
    return h;
}

ExtCount tree_node_count(const TreePres& t) {
    ExtCount total = 1;
    for (const auto& [c, m] : t.children) total += m * tree_node_count(c);
    return total;
}

ExtCount tree_internal_count(const TreePres& t) {
    ExtCount total = t.children.empty() ? ExtCount(0) : ExtCount(1);
    for (const auto& [c, m] : t.children) total += m * tree_internal_count(c);
    return total;
}

ExtCount tree_child_count(const TreePres& t) {
    ExtCount total = 0;
    for (const auto& [c, m] : t.children) total += m;
    return total;
}

namespace {

void collect_profiles(const TreePres& t, int depth, std::vector<std::set<ExtCount>>& acc) {
    if (static_cast<int>(acc.size()) <= depth) acc.resize(depth + 1);
    acc[depth].insert(tree_child_count(t));
    for (const auto& [c, m] : t.children) collect_profiles(c, depth + 1, acc);
}

} // namespace

std::vector<LevelProfile> tree_level_profiles(const TreePres& t) {
    std::vector<std::set<ExtCount>> acc;
    collect_profiles(t, 0, acc);
    std::vector<LevelProfile> out;
    for (auto& s : acc) {
        LevelProfile lp;
        lp.child_counts.assign(s.begin(), s.end());
        out.push_back(std::move(lp));
    }
    return out;
}

bool tree_uniform(const TreePres& t, std::vector<ExtCount>* beta) {
    auto profiles = tree_level_profiles(t);
    std::vector<ExtCount> b;
    for (const auto& lp : profiles) {
        if (lp.child_counts.size() != 1) return false;
        b.push_back(lp.child_counts[0]);
    }
    // the deepest level is all leaves; drop the trailing zero
    if (!b.empty() && b.back().is_zero()) b.pop_back();
    if (beta) *beta = b;
    return true;
}

// ---------------------------------------------------------------- presentation

Presentation make_pres(LinOrderPres p) { return {Family::Order, std::move(p)}; }
Presentation make_pres(EqCharacter c) { return {Family::Equivalence, std::move(c)}; }
Presentation make_pres(InjSpectrum sp) { return {Family::Injection, std::move(sp)}; }
Presentation make_pres(GraphPres g) { return {Family::Graph, std::move(g)}; }
Presentation make_pres(TreePres t, Family tree_family) {
    if (tree_family != Family::TreePO && tree_family != Family::TreePred)
        throw_input("tree presentation must use a tree family");
    return {tree_family, std::move(t)};
}
Presentation make_pres(NestedEqPres ne) { return {Family::NestedEq, std::move(ne)}; }

namespace {

bool graph_connected(const FiniteStructure& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::vector<int> work{0};
    seen[0] = 1;
    int cnt = 1;
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (int y = 0; y < g.n; ++y)
            if (g.rel(0, x, y) && !seen[y]) {
                seen[y] = 1;
                ++cnt;
                work.push_back(y);
            }
    }
    return cnt == g.n;
}

void validate_tree_pres(const TreePres& t) {
    for (const auto& [c, m] : t.children) {
        if (m.is_zero()) throw_input("child multiplicity must be at least 1");
        validate_tree_pres(c);
    }
}

} // namespace

void validate(const Presentation& p) {
    switch (p.family) {
        case Family::Order: {
            const auto& lp = std::get<LinOrderPres>(p.data);
            for (const Block& b : lp.blocks)
                if (b.kind == BlockKind::Fin && b.size < 1)
                    throw_input("finite chain block must be nonempty");
            break;
        }
        case Family::Equivalence: {
            const auto& c = std::get<EqCharacter>(p.data);
            for (const auto& [size, count] : c.entries) {
                if (size.is_zero()) throw_input("class size must be at least 1");
                if (count.is_zero()) throw_input("class count must be at least 1");
            }
            break;
        }
        case Family::Injection: {
            const auto& sp = std::get<InjSpectrum>(p.data);
            for (const auto& [size, count] : sp.cycles) {
                if (size < 1) throw_input("cycle size must be at least 1");
                if (count.is_zero()) throw_input("cycle count must be at least 1");
            }
            break;
        }
        case Family::Graph: {
            const auto& g = std::get<GraphPres>(p.data);
            if (g.catalog_tag) {
                if (!g.components.empty() || g.bulk)
                    throw_input("catalog-tagged presentation must have no other fields");
                break;
            }
            for (const auto& comp : g.components) {
                if (comp.graph.family != Family::Graph) throw_input("component must be a graph");
                validate(comp.graph);
                if (!graph_connected(comp.graph)) throw_input("explicit component must be connected");
                if (comp.multiplicity.is_zero()) throw_input("component multiplicity must be at least 1");
            }
            if (g.bulk) {
                if (g.bulk->first.is_zero()) throw_input("bulk copy count must be at least 1");
                if (g.bulk->second.is_zero()) throw_input("bulk clique order must be at least 1");
            }
            break;
        }
        case Family::TreePO:
        case Family::TreePred: {
            validate_tree_pres(std::get<TreePres>(p.data));
            break;
        }
        case Family::NestedEq: {
            const auto& ne = std::get<NestedEqPres>(p.data);
            if (ne.arity < 1) throw_input("nested-eq arity must be at least 1");
            if (ne.tree && ne.concrete) throw_input("nested presentation is either symbolic or concrete");
            if (ne.tree) {
                validate_tree_pres(*ne.tree);
                if (tree_height(*ne.tree) != ne.arity + 1)
                    throw_input("class tree height must be arity+1");
                // all leaves at uniform depth
                auto profiles = tree_level_profiles(*ne.tree);
                for (int d = 0; d < ne.arity + 1; ++d)
                    for (const auto& c : profiles[d].child_counts)
                        if (c.is_zero())
                            throw_input("class tree must have all leaves at depth arity+1");
            } else if (ne.concrete) {
                if (ne.concrete->family != Family::NestedEq) throw_input("concrete part must be nested-eq");
                if (ne.concrete->arity != ne.arity) throw_input("concrete arity mismatch");
                validate(*ne.concrete);
            } else {
                throw_input("nested presentation needs a tree or a concrete structure");
            }
            break;
        }
    }
}

namespace {

// canonical multiset of components: canonical encoding -> total multiplicity
std::map<std::vector<int>, ExtCount> graph_component_multiset(const GraphPres& g) {
    std::map<std::vector<int>, ExtCount> out;
    for (const auto& comp : g.components) {
        auto key = canonical_encoding(comp.graph);
        auto it = out.find(key);
        if (it == out.end())
            out[key] = comp.multiplicity;
        else
            it->second += comp.multiplicity;
    }
    return out;
}

} // namespace

bool pres_isomorphic(const Presentation& a, const Presentation& b) {
    if (a.family != b.family) throw_input("cross-family presentation comparison");
    switch (a.family) {
        case Family::Order:
            return normalize_linear(std::get<LinOrderPres>(a.data)) ==
                   normalize_linear(std::get<LinOrderPres>(b.data));
        case Family::Equivalence:
            return std::get<EqCharacter>(a.data) == std::get<EqCharacter>(b.data);
        case Family::Injection:
            return std::get<InjSpectrum>(a.data) == std::get<InjSpectrum>(b.data);
        case Family::Graph: {
            const auto& ga = std::get<GraphPres>(a.data);
            const auto& gb = std::get<GraphPres>(b.data);
            if (ga.catalog_tag || gb.catalog_tag) return ga.catalog_tag == gb.catalog_tag;
            return graph_component_multiset(ga) == graph_component_multiset(gb) && ga.bulk == gb.bulk;
        }
        case Family::TreePO:
        case Family::TreePred:
            return tree_key(std::get<TreePres>(a.data)) == tree_key(std::get<TreePres>(b.data));
        case Family::NestedEq: {
            const auto& na = std::get<NestedEqPres>(a.data);
            const auto& nb = std::get<NestedEqPres>(b.data);
            if (na.arity != nb.arity) return false;
            return tree_key(nested_class_tree(na)) == tree_key(nested_class_tree(nb));
        }
    }
    throw_internal("bad family");
}

TreePres tree_pres_of(const FiniteStructure& s) {
    auto parent = tree_parents(s);
    int n = s.n;
    int root = root_of(s);
    std::vector<std::vector<int>> children(n);
    for (int x = 0; x < n; ++x)
        if (x != root) children[parent[x]].push_back(x);
    auto rec = [&](auto&& self, int v) -> TreePres {
        std::vector<std::pair<TreePres, ExtCount>> cs;
        for (int c : children[v]) cs.push_back({self(self, c), ExtCount(1)});
        return canonical_tree(tree_node(std::move(cs)));
    };
    return rec(rec, root);
}

TreePres nested_class_tree(const NestedEqPres& p) {
    if (p.tree) return canonical_tree(*p.tree);
    if (!p.concrete) throw_input("empty nested presentation");
    const FiniteStructure& s = *p.concrete;
    // build the class tree level by level: depth i nodes are E_i classes,
    // E_0 = one class, E_{arity+1} = singletons
    int n = s.n;
    int arity = s.arity;
    auto class_of = [&](int level, int x) -> std::vector<int> {
        std::vector<int> cls;
        for (int y = 0; y < n; ++y) {
            bool rel = (level == 0) ? true : (level <= arity ? s.rel(level - 1, x, y) : (x == y));
            if (rel) cls.push_back(y);
        }
        return cls;
    };
    auto rec = [&](auto&& self, int level, const std::vector<int>& cls) -> TreePres {
        if (level == arity + 1) return tree_leaf();
        // split cls into E_{level+1} classes
        std::vector<std::pair<TreePres, ExtCount>> cs;
        std::set<int> done;
        for (int x : cls) {
            if (done.count(x)) continue;
            auto sub = class_of(level + 1, x);
            std::vector<int> subin;
            for (int y : sub)
                if (std::find(cls.begin(), cls.end(), y) != cls.end()) subin.push_back(y);
            for (int y : subin) done.insert(y);
            cs.push_back({self(self, level + 1, subin), ExtCount(1)});
        }
        return tree_node(std::move(cs));
    };
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    return canonical_tree(rec(rec, 0, all));
}

Presentation presentation_of(const FiniteStructure& s) {
    validate(s);
    switch (s.family) {
        case Family::Order: {
            LinOrderPres p;
            if (s.n > 0) p.blocks.push_back(fin(static_cast<std::uint64_t>(s.n)));
            return make_pres(p);
        }
        case Family::Equivalence: {
            std::map<std::uint64_t, std::uint64_t> sizes;  // class size -> count
            std::vector<char> seen(s.n, 0);
            for (int x = 0; x < s.n; ++x) {
                if (seen[x]) continue;
                std::uint64_t size = 0;
                for (int y = 0; y < s.n; ++y)
                    if (s.rel(0, x, y)) {
                        seen[y] = 1;
                        ++size;
                    }
                sizes[size] += 1;
            }
            EqCharacter c;
            for (auto [size, count] : sizes) c.entries[ExtCount(size)] = ExtCount(count);
            return make_pres(c);
        }
        case Family::Injection: {
            for (int x = 0; x < s.n; ++x)
                if (s.func(0, x) == kNoImage)
                    throw_unsupported("open orbit prefix has no exact spectrum");
            InjSpectrum sp;
            std::vector<char> seen(s.n, 0);
            for (int x = 0; x < s.n; ++x) {
                if (seen[x]) continue;
                std::uint64_t len = 0;
                int y = x;
                do {
                    seen[y] = 1;
                    ++len;
                    y = s.func(0, y);
                } while (y != x);
                auto it = sp.cycles.find(len);
                if (it == sp.cycles.end())
                    sp.cycles[len] = 1;
                else
                    it->second += 1;
            }
            return make_pres(sp);
        }
        case Family::Graph: {
            GraphPres g;
            std::vector<int> comp(s.n, -1);
            int ncomp = 0;
            for (int x = 0; x < s.n; ++x) {
                if (comp[x] != -1) continue;
                std::vector<int> work{x};
                comp[x] = ncomp;
                while (!work.empty()) {
                    int u = work.back();
                    work.pop_back();
                    for (int v = 0; v < s.n; ++v)
                        if (s.rel(0, u, v) && comp[v] == -1) {
                            comp[v] = ncomp;
                            work.push_back(v);
                        }
                }
                ++ncomp;
            }
            for (int c = 0; c < ncomp; ++c) {
                std::vector<int> verts;
                for (int x = 0; x < s.n; ++x)
                    if (comp[x] == c) verts.push_back(x);
                std::vector<std::pair<int, int>> edges;
                for (size_t i = 0; i < verts.size(); ++i)
                    for (size_t j = i + 1; j < verts.size(); ++j)
                        if (s.rel(0, verts[i], verts[j]))
                            edges.push_back({static_cast<int>(i), static_cast<int>(j)});
                g.components.push_back({make_graph(static_cast<int>(verts.size()), edges), ExtCount(1)});
            }
            return make_pres(g);
        }
        case Family::TreePO:
            return make_pres(tree_pres_of(s), Family::TreePO);
        case Family::TreePred:
            return make_pres(tree_pres_of(s), Family::TreePred);
        case Family::NestedEq: {
            NestedEqPres ne;
            ne.arity = s.arity;
            ne.concrete = s;
            return make_pres(ne);
        }
    }
    throw_internal("bad family");
}

} // namespace uhom
