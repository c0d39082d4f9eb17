#include "uhom/oracle.hpp"

#include <algorithm>

#include "uhom/enumerate.hpp"

namespace uhom {

void check_oracle_cap(const FiniteStructure& s, const OracleOptions& opts) {
    if (s.n > kHardSizeCap)
        throw_resource("structure size " + std::to_string(s.n) + " above hard cap");
    if (s.n > opts.cap)
        throw_resource("structure size " + std::to_string(s.n) + " above cap " + std::to_string(opts.cap));
}

namespace {

// Per-element invariant used to prune automorphism/isomorphism candidates.
std::vector<std::vector<int>> element_invariants(const FiniteStructure& s) {
    std::vector<std::vector<int>> inv(s.n);
    for (int a = 0; a < s.n; ++a) {
        std::vector<int>& v = inv[a];
        for (int r = 0; r < s.num_rels(); ++r) {
            int out = 0, in = 0;
            for (int b = 0; b < s.n; ++b) {
                if (s.rel(r, a, b)) ++out;
                if (s.rel(r, b, a)) ++in;
            }
            v.push_back(out);
            v.push_back(in);
            v.push_back(s.rel(r, a, a) ? 1 : 0);
        }
        for (int k = 0; k < s.num_funcs(); ++k) {
            int fa = s.func(k, a);
            v.push_back(fa == kNoImage ? 0 : 1);
            v.push_back(fa == a ? 1 : 0);
            int indeg = 0;
            for (int b = 0; b < s.n; ++b)
                if (s.func(k, b) == a) ++indeg;
            v.push_back(indeg);
        }
    }
    return inv;
}

// Backtracking matcher between two structures with the same signature.
struct Matcher {
    const FiniteStructure* A;
    const FiniteStructure* B;
    std::vector<int> img;  // A-element -> B-element or -1
    std::vector<int> pre;  // B-element -> A-element or -1

    Matcher(const FiniteStructure& a, const FiniteStructure& b)
        : A(&a), B(&b), img(a.n, -1), pre(b.n, -1) {}

    bool consistent(int a, int b) const {
        for (int r = 0; r < A->num_rels(); ++r) {
            if (A->rel(r, a, a) != B->rel(r, b, b)) return false;
            for (int x = 0; x < A->n; ++x) {
                int y = img[x];
                if (y == -1) continue;
                if (A->rel(r, a, x) != B->rel(r, b, y)) return false;
                if (A->rel(r, x, a) != B->rel(r, y, b)) return false;
            }
        }
        for (int k = 0; k < A->num_funcs(); ++k) {
            int fa = A->func(k, a);
            int fb = B->func(k, b);
            if ((fa == kNoImage) != (fb == kNoImage)) return false;
            if (fa == a && fb != b) return false;
            if (fb == b && fa != a) return false;
            if (fa != kNoImage && fa != a) {
                if (img[fa] != -1 && img[fa] != fb) return false;
            }
            for (int x = 0; x < A->n; ++x) {
                int y = img[x];
                if (y == -1 || x == a) continue;
                if ((A->func(k, x) == a) != (B->func(k, y) == b)) return false;
                if (A->func(k, x) == a && B->func(k, y) != b) return false;
            }
        }
        return true;
    }

    void assign(int a, int b) {
        img[a] = b;
        pre[b] = a;
    }
    void unassign(int a, int b) {
        img[a] = -1;
        pre[b] = -1;
    }
};

// Searches for a total extension of the current assignment of `m` to an
// isomorphism A -> B. Fills `out` and returns true on success; tracks the
// deepest assignment count reached in `deepest`.
bool complete_matching(Matcher& m, const std::vector<std::vector<int>>& invA,
                       const std::vector<std::vector<int>>& invB, int assigned, int* deepest,
                       std::vector<int>* out) {
    if (deepest && assigned > *deepest) *deepest = assigned;
    int a = -1;
    for (int x = 0; x < m.A->n; ++x)
        if (m.img[x] == -1) {
            a = x;
            break;
        }
    if (a == -1) {
        if (out) *out = m.img;
        return true;
    }
    for (int b = 0; b < m.B->n; ++b) {
        if (m.pre[b] != -1) continue;
        if (invA[a] != invB[b]) continue;
        if (!m.consistent(a, b)) continue;
        m.assign(a, b);
        if (complete_matching(m, invA, invB, assigned + 1, deepest, out)) {
            m.unassign(a, b);
            return true;
        }
        m.unassign(a, b);
    }
    return false;
}

void enumerate_matchings(Matcher& m, const std::vector<std::vector<int>>& invA,
                         const std::vector<std::vector<int>>& invB,
                         std::vector<std::vector<int>>& out) {
    int a = -1;
    for (int x = 0; x < m.A->n; ++x)
        if (m.img[x] == -1) {
            a = x;
            break;
        }
    if (a == -1) {
        out.push_back(m.img);
        return;
    }
    for (int b = 0; b < m.B->n; ++b) {
        if (m.pre[b] != -1) continue;
        if (invA[a] != invB[b]) continue;
        if (!m.consistent(a, b)) continue;
        m.assign(a, b);
        enumerate_matchings(m, invA, invB, out);
        m.unassign(a, b);
    }
}

bool mask_closed(const FiniteStructure& s, unsigned mask, int tree_root) {
    if (tree_root >= 0 && !(mask & (1u << tree_root))) return false;
    for (int x = 0; x < s.n; ++x) {
        if (!(mask & (1u << x))) continue;
        for (int k = 0; k < s.num_funcs(); ++k) {
            int v = s.func(k, x);
            if (v != kNoImage && !(mask & (1u << v))) return false;
        }
    }
    return true;
}

} // namespace

std::optional<std::vector<std::pair<int, int>>> close_partial_iso(const FiniteStructure& s,
                                                                  const PartialMap& m) {
    std::vector<int> img(s.n, -1), pre(s.n, -1);
    std::vector<int> work;
    auto put = [&](int a, int b) -> bool {
        if (a < 0 || a >= s.n || b < 0 || b >= s.n) throw_input("map element out of range");
        if (img[a] != -1) return img[a] == b;
        if (pre[b] != -1) return false;
        img[a] = b;
        pre[b] = a;
        work.push_back(a);
        return true;
    };
    for (int x : m.fixed)
        if (!put(x, x)) return std::nullopt;
    for (auto [a, b] : m.pairs)
        if (!put(a, b)) return std::nullopt;
    if (s.family == Family::TreePO && s.n > 0) {
        int r = root_of(s);
        if (!put(r, r)) return std::nullopt;
    }
    // close under the functions, propagating images
    while (!work.empty()) {
        int a = work.back();
        work.pop_back();
        int b = img[a];
        for (int k = 0; k < s.num_funcs(); ++k) {
            int fa = s.func(k, a);
            int fb = s.func(k, b);
            if ((fa == kNoImage) != (fb == kNoImage)) return std::nullopt;
            if (fa == kNoImage) continue;
            if (!put(fa, fb)) return std::nullopt;
        }
    }
    // relation agreement over the whole (closed) domain
    for (int r = 0; r < s.num_rels(); ++r)
        for (int a = 0; a < s.n; ++a) {
            if (img[a] == -1) continue;
            for (int c = 0; c < s.n; ++c) {
                if (img[c] == -1) continue;
                if (s.rel(r, a, c) != s.rel(r, img[a], img[c])) return std::nullopt;
            }
        }
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < s.n; ++a)
        if (img[a] != -1) out.push_back({a, img[a]});
    return out;
}

ExtendResult extend_to_automorphism(const FiniteStructure& s, const PartialMap& m) {
    auto closed = close_partial_iso(s, m);
    if (!closed) throw_input("map is not a partial isomorphism of generated substructures");
    Matcher mt(s, s);
    for (auto [a, b] : *closed) mt.assign(a, b);
    auto inv = element_invariants(s);
    ExtendResult res;
    res.obstruction_level = 0;
    std::vector<int> out;
    int deepest = static_cast<int>(closed->size());
    if (complete_matching(mt, inv, inv, deepest, &deepest, &out)) {
        res.ok = true;
        res.automorphism = out;
    } else {
        res.ok = false;
        res.obstruction_level = deepest;
    }
    return res;
}

std::vector<std::vector<int>> automorphisms_fixing(const FiniteStructure& s,
                                                   const std::vector<int>& fix) {
    Matcher mt(s, s);
    for (int x : fix) {
        if (x < 0 || x >= s.n) throw_input("fixed element out of range");
        if (mt.img[x] == -1) mt.assign(x, x);
    }
    auto inv = element_invariants(s);
    std::vector<std::vector<int>> out;
    enumerate_matchings(mt, inv, inv, out);
    return out;
}

namespace {

UhVerdict exceptional_check(const FiniteStructure& s, const std::vector<int>& set,
                            const OracleOptions& opts) {
    check_oracle_cap(s, opts);
    if (s.n == 0) return {};
    std::vector<int> sclo = generated_substructure(s, set);
    unsigned smask = 0;
    for (int x : sclo) smask |= 1u << x;
    int tree_root = (s.family == Family::TreePO) ? root_of(s) : -1;
    auto inv = element_invariants(s);

    UhVerdict verdict;
    // iterate closed domains containing the fixed part
    for (unsigned mask = 0; mask < (1u << s.n) && verdict.holds; ++mask) {
        if ((mask & smask) != smask) continue;
        if (!mask_closed(s, mask, tree_root)) continue;
        std::vector<int> dom;
        for (int x = 0; x < s.n; ++x)
            if (mask & (1u << x)) dom.push_back(x);

        // DFS over target choices for the domain, fixed part pinned
        std::vector<int> img(s.n, -1), pre(s.n, -1);
        Matcher probe(s, s);
        auto try_map = [&](auto&& self, size_t idx, bool identity) -> bool {
            if (idx == dom.size()) {
                if (identity) return true;  // extends by the identity
                // verified partial isomorphism; search for an extension
                Matcher full(s, s);
                for (int x : dom) full.assign(x, probe.img[x]);
                if (!complete_matching(full, inv, inv, static_cast<int>(dom.size()), nullptr,
                                       nullptr)) {
                    PartialMap ce;
                    for (int x : dom) ce.pairs.push_back({x, probe.img[x]});
                    ce.fixed = set;
                    verdict.holds = false;
                    verdict.counterexample = ce;
                    return false;
                }
                return true;
            }
            int a = dom[idx];
            bool pinned = (smask & (1u << a)) || (a == tree_root);
            for (int b = 0; b < s.n; ++b) {
                if (pinned && b != a) continue;
                if (probe.pre[b] != -1) continue;
                // definedness of functions must match for the image to be closed
                bool ok = true;
                for (int k = 0; k < s.num_funcs() && ok; ++k)
                    if ((s.func(k, a) == kNoImage) != (s.func(k, b) == kNoImage)) ok = false;
                if (!ok) continue;
                if (!probe.consistent(a, b)) continue;
                probe.assign(a, b);
                bool cont = self(self, idx + 1, identity && a == b);
                probe.unassign(a, b);
                if (!cont) return false;
            }
            return true;
        };
        try_map(try_map, 0, true);
    }
    return verdict;
}

} // namespace

UhVerdict is_uh_bruteforce(const FiniteStructure& s, const OracleOptions& opts) {
    return exceptional_check(s, {}, opts);
}

UhVerdict is_exceptional_bruteforce(const FiniteStructure& s, const std::vector<int>& set,
                                    const OracleOptions& opts) {
    for (int x : set)
        if (x < 0 || x >= s.n) throw_input("set element out of range");
    return exceptional_check(s, set, opts);
}

std::vector<std::vector<int>> minimal_exceptional_sets_bruteforce(const FiniteStructure& s,
                                                                  const OracleOptions& opts) {
    check_oracle_cap(s, opts);
    unsigned total = 1u << s.n;
    std::vector<char> exc(total, 0);
    for (unsigned mask = 0; mask < total; ++mask) {
        std::vector<int> set;
        for (int x = 0; x < s.n; ++x)
            if (mask & (1u << x)) set.push_back(x);
        exc[mask] = exceptional_check(s, set, opts).holds ? 1 : 0;
    }
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < total; ++mask) {
        if (!exc[mask]) continue;
        bool minimal = true;
        for (unsigned sub = mask; sub != 0 && minimal; sub = (sub - 1) & mask)
            if (sub != mask && exc[sub]) minimal = false;
        if (minimal) {
            std::vector<int> set;
            for (int x = 0; x < s.n; ++x)
                if (mask & (1u << x)) set.push_back(x);
            out.push_back(set);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

DefinableClosureResult definable_closure_bruteforce(const FiniteStructure& s,
                                                    const std::vector<int>& set,
                                                    const OracleOptions& opts) {
    check_oracle_cap(s, opts);
    for (int x : set)
        if (x < 0 || x >= s.n) throw_input("set element out of range");
    DefinableClosureResult res;
    res.base = set;
    std::sort(res.base.begin(), res.base.end());
    res.base.erase(std::unique(res.base.begin(), res.base.end()), res.base.end());
    auto autos = automorphisms_fixing(s, res.base);
    for (int x = 0; x < s.n; ++x) {
        bool fixed_everywhere = true;
        for (const auto& a : autos)
            if (a[x] != x) {
                fixed_everywhere = false;
                if (!res.witness.count(x)) res.witness[x] = a;
            }
        if (fixed_everywhere) res.closure.push_back(x);
    }
    return res;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteStructure& a,
                                                 const FiniteStructure& b) {
    if (a.family != b.family || a.arity != b.arity) throw_input("cross-family isomorphism query");
    if (a.n != b.n) return std::nullopt;
    Matcher mt(a, b);
    auto invA = element_invariants(a);
    auto invB = element_invariants(b);
    std::vector<int> out;
    if (complete_matching(mt, invA, invB, 0, nullptr, &out)) return out;
    return std::nullopt;
}

} // namespace uhom
