#include "uhom/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace uhom {

std::vector<std::vector<int>> integer_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // parts non-increasing, generated largest-first
    auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(remaining, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace {

// AHU canonical key of a rooted tree given as a parent vector.
std::string ahu_key(const std::vector<int>& parent, int root) {
    int n = static_cast<int>(parent.size());
    std::vector<std::vector<int>> children(n);
    for (int x = 0; x < n; ++x)
        if (x != root) children[parent[x]].push_back(x);
    auto rec = [&](auto&& self, int v) -> std::string {
        std::vector<std::string> ks;
        for (int c : children[v]) ks.push_back(self(self, c));
        std::sort(ks.begin(), ks.end());
        std::string s = "(";
        for (auto& k : ks) s += k;
        s += ")";
        return s;
    };
    return rec(rec, root);
}

struct TreeCatalog {
    // trees indexed by size then position; each entry: (key, parent vector)
    std::vector<std::vector<std::pair<std::string, std::vector<int>>>> by_size;

    void ensure(int n) {
        if (by_size.empty()) {
            by_size.resize(1);  // size 0 unused
        }
        while (static_cast<int>(by_size.size()) <= n) {
            int sz = static_cast<int>(by_size.size());
            std::vector<std::pair<std::string, std::vector<int>>> list;
            if (sz == 1) {
                list.push_back({"()", {0}});
            } else {
                // choose a multiset of subtrees with total size sz-1,
                // picked with non-increasing (size, index) to avoid duplicates
                std::vector<std::pair<int, int>> chosen;  // (size, index)
                auto rec = [&](auto&& self, int remaining, int max_size, int max_index) -> void {
                    if (remaining == 0) {
                        // assemble parent vector: root 0, subtrees appended
                        std::vector<int> parent{0};
                        for (auto [s, i] : chosen) {
                            const auto& sub = by_size[s][i].second;
                            int base = static_cast<int>(parent.size());
                            for (int v = 0; v < s; ++v) {
                                int p = sub[v];
                                parent.push_back(v == 0 ? 0 : base + p);
                            }
                        }
                        list.push_back({ahu_key(parent, 0), parent});
                        return;
                    }
                    for (int s = std::min(remaining, max_size); s >= 1; --s) {
                        int start = (s == max_size) ? max_index : static_cast<int>(by_size[s].size()) - 1;
                        for (int i = start; i >= 0; --i) {
                            chosen.push_back({s, i});
                            self(self, remaining - s, s, i);
                            chosen.pop_back();
                        }
                    }
                };
                rec(rec, sz - 1, sz - 1, static_cast<int>(by_size[sz - 1].size()) - 1);
            }
            std::sort(list.begin(), list.end());
            by_size.push_back(std::move(list));
        }
    }
};

TreeCatalog& tree_catalog() {
    static TreeCatalog cat;
    return cat;
}

// Nested-eq structures of given arity on n elements, as class lists per level.
// Represented canonically as a multiset of sub-structures per E_1 class.
struct NestedShape {
    // level-wise class sizes are implied; store the canonical key and the
    // class lists, outermost relation first
    std::string key;
    std::vector<std::vector<std::vector<int>>> class_lists;  // [level][class] -> elements
};

std::vector<NestedShape> nested_shapes(int arity, int n) {
    if (arity == 0) {
        NestedShape s;
        s.key = "b" + std::to_string(n);
        s.class_lists = {};
        return {s};
    }
    // catalog of inner shapes by size
    std::vector<std::vector<NestedShape>> inner(n + 1);
    for (int m = 1; m <= n; ++m) {
        inner[m] = nested_shapes(arity - 1, m);
        std::sort(inner[m].begin(), inner[m].end(),
                  [](const NestedShape& a, const NestedShape& b) { return a.key < b.key; });
    }
    std::vector<NestedShape> out;
    std::vector<std::pair<int, int>> chosen;  // (size, index into inner[size])
    auto rec = [&](auto&& self, int remaining, int max_size, int max_index) -> void {
        if (remaining == 0) {
            NestedShape shape;
            shape.class_lists.assign(arity, {});
            std::string key = "{";
            int offset = 0;
            for (auto [sz, idx] : chosen) {
                const NestedShape& in = inner[sz][idx];
                key += in.key + ",";
                // outer class = all elements of this block
                std::vector<int> block(sz);
                std::iota(block.begin(), block.end(), offset);
                shape.class_lists[0].push_back(block);
                // inner levels shifted by offset
                for (int lev = 0; lev < arity - 1; ++lev)
                    for (const auto& cls : in.class_lists[lev]) {
                        std::vector<int> c;
                        for (int x : cls) c.push_back(x + offset);
                        shape.class_lists[lev + 1].push_back(c);
                    }
                offset += sz;
            }
            key += "}";
            shape.key = key;
            out.push_back(std::move(shape));
            return;
        }
        for (int s = std::min(remaining, max_size); s >= 1; --s) {
            int start = (s == max_size) ? max_index : static_cast<int>(inner[s].size()) - 1;
            for (int i = start; i >= 0; --i) {
                chosen.push_back({s, i});
                self(self, remaining - s, s, i);
                chosen.pop_back();
            }
        }
    };
    rec(rec, n, n, static_cast<int>(inner[n].size()) - 1);
    return out;
}

std::vector<FiniteStructure> enumerate_graphs(int n) {
    // grow by one vertex at a time, dedup by canonical encoding
    std::vector<FiniteStructure> cur;
    cur.push_back(make_graph(1, {}));
    for (int m = 2; m <= n; ++m) {
        std::map<std::vector<int>, FiniteStructure> seen;
        for (const auto& g : cur) {
            for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
                FiniteStructure h = make_graph(m, {});
                for (int a = 0; a < m - 1; ++a)
                    for (int b = 0; b < m - 1; ++b)
                        if (g.rel(0, a, b)) h.set_rel(0, a, b, true);
                for (int a = 0; a < m - 1; ++a)
                    if (mask & (1u << a)) {
                        h.set_rel(0, a, m - 1, true);
                        h.set_rel(0, m - 1, a, true);
                    }
                auto key = canonical_encoding(h);
                seen.emplace(std::move(key), std::move(h));
            }
        }
        cur.clear();
        for (auto& [k, g] : seen) cur.push_back(std::move(g));
    }
    return cur;
}

} // namespace

std::vector<std::vector<int>> rooted_trees(int n) {
    auto& cat = tree_catalog();
    cat.ensure(n);
    std::vector<std::vector<int>> out;
    for (const auto& [k, p] : cat.by_size[n]) out.push_back(p);
    return out;
}

std::vector<FiniteStructure> enumerate_structures(Family fam, int n, const EnumOptions& opts) {
    if (n < 1) throw_input("enumeration size must be at least 1");
    if (opts.cap > kHardSizeCap) throw_input("configured cap exceeds the hard size cap");
    if (n > opts.cap) throw_resource("enumeration size " + std::to_string(n) + " above cap " +
                                     std::to_string(opts.cap));
    std::vector<FiniteStructure> out;
    switch (fam) {
        case Family::Order:
            out.push_back(make_order(n));
            break;
        case Family::Equivalence:
            for (const auto& part : integer_partitions(n)) {
                std::vector<std::vector<int>> classes;
                int next = 0;
                for (int p : part) {
                    std::vector<int> c(p);
                    std::iota(c.begin(), c.end(), next);
                    next += p;
                    classes.push_back(c);
                }
                out.push_back(make_equivalence(n, classes));
            }
            break;
        case Family::Injection:
            for (const auto& part : integer_partitions(n)) {
                std::vector<int> f(n, kNoImage);
                int next = 0;
                for (int p : part) {
                    for (int i = 0; i < p; ++i) f[next + i] = next + (i + 1) % p;
                    next += p;
                }
                out.push_back(make_injection(f));
            }
            break;
        case Family::Graph:
            out = enumerate_graphs(n);
            break;
        case Family::TreePO:
            for (const auto& p : rooted_trees(n)) out.push_back(make_tree_po(p));
            break;
        case Family::TreePred:
            for (const auto& p : rooted_trees(n)) out.push_back(make_tree_pred(p));
            break;
        case Family::NestedEq: {
            if (opts.nested_arity < 1) throw_input("nested-eq arity must be at least 1");
            for (const auto& shape : nested_shapes(opts.nested_arity, n))
                out.push_back(make_nested(n, shape.class_lists));
            break;
        }
    }
    return out;
}

std::vector<FiniteStructure> enumerate_up_to(Family fam, int n, const EnumOptions& opts) {
    std::vector<FiniteStructure> out;
    for (int m = 1; m <= n; ++m) {
        auto batch = enumerate_structures(fam, m, opts);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

} // namespace uhom
