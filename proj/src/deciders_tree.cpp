#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "uhom/deciders.hpp"

namespace uhom {

namespace {

const char* kCiteUhPo = "uh tree under < = rank at most 1";
const char* kCiteWuhPo = "wuh tree under < = finitely many nodes of rank >= 1";
const char* kCiteExcPo = "exceptional set conditions: member above every rank>=1 node; comparable pairs separated";
const char* kCiteSft = "Lempp-McCoy-Miller-Solomon: cc tree of finite height = finite type";
const char* kCiteUhPred = "uh tree under predecessor = equal successor counts per height";
const char* kCiteWuhPred = "wuh tree under predecessor = finite subtree with ultrahomogeneous rooted views";
const char* kCiteH2 = "height-2 form: all but finitely many height-1 nodes share a successor count";
const char* kCiteH3 = "height-3 form: per-node cofinite successor counts and a common (h,k) pattern";
const char* kCiteRelCc = "wuh locally finite structure => relatively computably categorical";

std::string addr_label(const TreeAddr& a) {
    if (a.path.empty()) return "e";
    std::string s = "e";
    for (auto [entry, copy] : a.path)
        s += "/" + std::to_string(entry) + "." + std::to_string(copy);
    return s;
}

const TreePres* subtree_at(const TreePres& t, const TreeAddr& a) {
    const TreePres* cur = &t;
    for (auto [entry, copy] : a.path) {
        if (entry < 0 || entry >= static_cast<int>(cur->children.size()))
            throw_input("address entry out of range");
        const auto& [child, mult] = cur->children[entry];
        if (mult.is_finite() && copy >= mult.finite()) throw_input("address copy out of range");
        cur = &child;
    }
    return cur;
}

bool is_prefix(const TreeAddr& a, const TreeAddr& b) {
    if (a.path.size() > b.path.size()) return false;
    return std::equal(a.path.begin(), a.path.end(), b.path.begin());
}

// all addresses of nodes with children (rank >= 1); requires finitely many
std::vector<TreeAddr> internal_addresses(const TreePres& t) {
    std::vector<TreeAddr> out;
    TreeAddr cur;
    auto rec = [&](auto&& self, const TreePres& node) -> void {
        if (node.children.empty()) return;
        out.push_back(cur);
        for (size_t i = 0; i < node.children.size(); ++i) {
            const auto& [child, mult] = node.children[i];
            if (tree_internal_count(child).is_zero()) continue;
            if (mult.is_omega())
                throw_precondition("infinitely many nodes of rank >= 1");
            for (std::uint64_t c = 0; c < mult.finite(); ++c) {
                cur.path.push_back({static_cast<int>(i), c});
                self(self, child);
                cur.path.pop_back();
            }
        }
    };
    rec(rec, t);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

// ------------------------------------------------------------ embedding

namespace {

// Hall-condition feasibility for matching demand entries (count alpha_i)
// to host entries (capacity m_j) along the compatibility matrix.
bool transportation_feasible(const std::vector<ExtCount>& alpha, const std::vector<ExtCount>& cap,
                             const std::vector<std::vector<char>>& compat) {
    size_t na = alpha.size();
    for (unsigned mask = 1; mask < (1u << na); ++mask) {
        ExtCount demand = 0;
        std::vector<char> hosts(cap.size(), 0);
        for (size_t i = 0; i < na; ++i)
            if (mask & (1u << i)) {
                demand += alpha[i];
                for (size_t j = 0; j < cap.size(); ++j)
                    if (compat[i][j]) hosts[j] = 1;
            }
        ExtCount supply = 0;
        for (size_t j = 0; j < cap.size(); ++j)
            if (hosts[j]) supply += cap[j];
        if (demand > supply) return false;
    }
    return true;
}

struct EmbedMemo {
    std::map<std::pair<std::string, std::string>, bool> rooted, anywhere;
};

bool embeds_rooted(const TreePres& a, const TreePres& b, EmbedMemo& memo);

bool embeds_anywhere(const TreePres& a, const TreePres& b, EmbedMemo& memo) {
    auto key = std::make_pair(tree_key(a), tree_key(b));
    auto it = memo.anywhere.find(key);
    if (it != memo.anywhere.end()) return it->second;
    bool res = embeds_rooted(a, b, memo);
    if (!res)
        for (const auto& [child, mult] : b.children)
            if (embeds_anywhere(a, child, memo)) {
                res = true;
                break;
            }
    memo.anywhere[key] = res;
    return res;
}

// root -> root; child copies matched injectively to host child copies
bool embeds_rooted(const TreePres& a, const TreePres& b, EmbedMemo& memo) {
    auto key = std::make_pair(tree_key(a), tree_key(b));
    auto it = memo.rooted.find(key);
    if (it != memo.rooted.end()) return it->second;
    std::vector<ExtCount> alpha, cap;
    for (const auto& [c, m] : a.children) alpha.push_back(m);
    for (const auto& [d, m] : b.children) cap.push_back(m);
    std::vector<std::vector<char>> compat(alpha.size(), std::vector<char>(cap.size(), 0));
    for (size_t i = 0; i < a.children.size(); ++i)
        for (size_t j = 0; j < b.children.size(); ++j)
            compat[i][j] = embeds_rooted(a.children[i].first, b.children[j].first, memo) ? 1 : 0;
    bool res = transportation_feasible(alpha, cap, compat);
    memo.rooted[key] = res;
    return res;
}

} // namespace

bool tree_embeds(const TreePres& a, const TreePres& b) {
    EmbedMemo memo;
    return embeds_anywhere(canonical_tree(a), canonical_tree(b), memo);
}

namespace {

// nodes of the canonicalised tree, for the finite-type conditions
void collect_nodes(const TreePres& t, std::vector<const TreePres*>& out) {
    out.push_back(&t);
    for (const auto& [c, m] : t.children) collect_nodes(c, out);
}

bool strongly_finite_type_node(const TreePres& a, EmbedMemo& memo) {
    // finitely many isomorphism types is automatic for presentations;
    // check: comparable sibling subtrees are isomorphic or the larger
    // type occurs only finitely often
    for (size_t i = 0; i < a.children.size(); ++i)
        for (size_t j = 0; j < a.children.size(); ++j) {
            if (i == j) continue;
            const auto& [x, mx] = a.children[i];
            const auto& [y, my] = a.children[j];
            if (embeds_anywhere(x, y, memo) && my.is_omega()) return false;
        }
    return true;
}

bool finite_type_node(const TreePres& a, EmbedMemo& memo) {
    for (const auto& [x, mx] : a.children) {
        if (!mx.is_omega()) continue;
        std::vector<const TreePres*> nodes;
        collect_nodes(x, nodes);
        bool sft = true;
        for (const TreePres* n : nodes)
            if (!strongly_finite_type_node(*n, memo)) sft = false;
        if (!sft) return false;
    }
    for (size_t i = 0; i < a.children.size(); ++i)
        for (size_t j = 0; j < a.children.size(); ++j) {
            if (i == j) continue;
            const auto& [x, mx] = a.children[i];
            const auto& [y, my] = a.children[j];
            if (embeds_anywhere(x, y, memo) && mx.is_omega() && my.is_omega()) return false;
        }
    return true;
}

} // namespace

bool tree_strongly_finite_type(const TreePres& t) {
    TreePres c = canonical_tree(t);
    EmbedMemo memo;
    std::vector<const TreePres*> nodes;
    collect_nodes(c, nodes);
    for (const TreePres* n : nodes)
        if (!strongly_finite_type_node(*n, memo)) return false;
    return true;
}

bool tree_finite_type(const TreePres& t) {
    TreePres c = canonical_tree(t);
    EmbedMemo memo;
    std::vector<const TreePres*> nodes;
    collect_nodes(c, nodes);
    for (const TreePres* n : nodes)
        if (!finite_type_node(*n, memo)) return false;
    return true;
}

// ------------------------------------------------------------ tree under <

Report analyze_tree_po(const TreePres& raw) {
    TreePres t = canonical_tree(raw);
    Report r;
    r.family = Family::TreePO;
    bool uh = tree_height(t) <= 1;
    ExtCount internal = tree_internal_count(t);
    bool wuh = internal.is_finite();
    r.uh = uh ? Verdict::True : Verdict::False;
    r.wuh = wuh ? Verdict::True : Verdict::False;
    r.strongly_finite_type = tree_strongly_finite_type(t) ? Verdict::True : Verdict::False;
    r.finite_type = tree_finite_type(t) ? Verdict::True : Verdict::False;
    if (r.strongly_finite_type == Verdict::True && r.finite_type == Verdict::False)
        throw_internal("strongly finite type must imply finite type");
    // finite type characterises computable categoricity at finite height
    r.cc = (wuh || r.finite_type == Verdict::True) ? Verdict::True : Verdict::False;
    r.citations = {kCiteUhPo, kCiteWuhPo, kCiteSft, kCiteRelCc};
    if (wuh) {
        ExceptionalDescriptor d;
        d.text = internal.is_zero() ? "empty set" : "all nodes of rank >= 1";
        for (const TreeAddr& a : internal_addresses(t)) d.elements.push_back(addr_label(a));
        r.minimal_exceptional.push_back(d);
        r.notes.push_back("reported exceptional set is canonical, not claimed minimal");
        r.citations.push_back(kCiteExcPo);
    }
    return r;
}

TreeExceptionalTrace is_exceptional_tree_po(const TreePres& raw, const std::vector<TreeAddr>& set) {
    TreePres t = canonical_tree(raw);
    if (!tree_internal_count(t).is_finite())
        throw_precondition("tree is not weakly ultrahomogeneous");
    for (const TreeAddr& a : set) subtree_at(t, a);  // validates

    TreeExceptionalTrace tr;
    std::set<TreeAddr> k(set.begin(), set.end());
    auto in_k = [&](const TreeAddr& a) { return k.count(a) > 0; };
    auto fill_lu = [&](const TreeAddr& a) {
        for (const TreeAddr& z : k) {
            if (is_prefix(z, a)) tr.lower.push_back(addr_label(z));
            if (is_prefix(a, z)) tr.upper.push_back(addr_label(z));
        }
    };

    for (const TreeAddr& a : internal_addresses(t)) {
        // (i): some member weakly above a
        std::vector<const TreeAddr*> above;
        for (const TreeAddr& z : k)
            if (is_prefix(a, z)) above.push_back(&z);
        if (above.empty()) {
            tr.holds = false;
            tr.violated_condition = 1;
            tr.witness = addr_label(a);
            fill_lu(a);
            return tr;
        }
        // (ii): nodes strictly between a and the meet of the members above
        // it must themselves be members
        TreeAddr meet = *above[0];
        for (const TreeAddr* z : above) {
            size_t l = 0;
            while (l < meet.path.size() && l < z->path.size() && meet.path[l] == z->path[l]) ++l;
            meet.path.resize(l);
        }
        TreeAddr b = a;
        for (size_t l = a.path.size(); l < meet.path.size(); ++l) {
            b.path.push_back(meet.path[l]);
            if (!in_k(b)) {
                tr.holds = false;
                tr.violated_condition = 2;
                tr.witness = "(" + addr_label(a) + ", " + addr_label(b) + ")";
                fill_lu(b);
                return tr;
            }
        }
    }
    return tr;
}

TreeExceptionalTrace is_exceptional_tree_po_finite(const FiniteStructure& s,
                                                   const std::vector<int>& set) {
    if (s.family != Family::TreePO) throw_input("expected a tree partial order");
    TreeExceptionalTrace tr;
    std::set<int> k(set.begin(), set.end());
    auto leq = [&](int a, int b) { return a == b || s.rel(0, a, b); };
    auto fill_lu = [&](int a) {
        for (int z : k) {
            if (leq(z, a)) tr.lower.push_back(s.label(z));
            if (leq(a, z)) tr.upper.push_back(s.label(z));
        }
    };
    for (int a = 0; a < s.n; ++a) {
        bool internal = false;
        for (int b = 0; b < s.n; ++b)
            if (s.rel(0, a, b)) internal = true;
        if (!internal) continue;
        bool covered = false;
        for (int z : k)
            if (leq(a, z)) covered = true;
        if (!covered) {
            tr.holds = false;
            tr.violated_condition = 1;
            tr.witness = s.label(a);
            fill_lu(a);
            return tr;
        }
        for (int b = 0; b < s.n; ++b) {
            if (!s.rel(0, a, b)) continue;
            if (k.count(b)) continue;
            bool separated = false;
            for (int z : k)
                if (leq(a, z) && !leq(b, z)) separated = true;
            if (!separated) {
                tr.holds = false;
                tr.violated_condition = 2;
                tr.witness = "(" + s.label(a) + ", " + s.label(b) + ")";
                fill_lu(b);
                return tr;
            }
        }
    }
    return tr;
}

TreePres rooted_view(const TreePres& raw, const TreeAddr& a, const std::vector<TreeAddr>& u) {
    TreePres t = canonical_tree(raw);
    const TreePres* node = subtree_at(t, a);
    // children of a outside U keep their full subtrees
    TreePres core;
    for (size_t i = 0; i < node->children.size(); ++i) {
        const auto& [child, mult] = node->children[i];
        std::uint64_t removed = 0;
        for (const TreeAddr& x : u)
            if (x.path.size() == a.path.size() + 1 && is_prefix(a, x) &&
                x.path.back().first == static_cast<int>(i))
                ++removed;
        if (mult.is_omega()) {
            core.children.push_back({child, ExtCount::omega()});
        } else {
            if (removed > mult.finite()) throw_input("subtree removes more copies than exist");
            if (mult.finite() > removed)
                core.children.push_back({child, ExtCount(mult.finite() - removed)});
        }
    }
    // the chain below a
    TreePres out = core;
    for (size_t d = 0; d < a.path.size(); ++d) {
        TreePres wrap;
        wrap.children.push_back({out, ExtCount(1)});
        out = wrap;
    }
    return canonical_tree(out);
}

// ------------------------------------------------------------ tree under f

namespace {

struct PredWuhMemo {
    struct Entry {
        bool feasible = false;
        std::uint64_t cost = 0;          // |S| inside this subtree, root included
        std::vector<int> excluded;       // child entry indices sent to S
    };
    std::map<std::string, Entry> memo;

    const Entry& compute(const TreePres& t) {
        std::string key = tree_key(t);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Entry e;
        size_t k = t.children.size();
        std::vector<std::optional<std::vector<ExtCount>>> beta(k);
        for (size_t i = 0; i < k; ++i) {
            std::vector<ExtCount> b;
            if (tree_uniform(t.children[i].first, &b)) beta[i] = b;
        }
        // candidate kept classes: each uniform child's beta, plus keeping nothing
        std::vector<std::optional<std::vector<ExtCount>>> candidates;
        std::set<std::string> seen;
        for (size_t i = 0; i < k; ++i)
            if (beta[i]) {
                std::string bs;
                for (const auto& x : (*beta[i])) bs += x.str() + ",";
                if (seen.insert(bs).second) candidates.push_back(beta[i]);
            }
        candidates.push_back(std::nullopt);  // keep nothing
        for (const auto& cand : candidates) {
            bool ok = true;
            std::uint64_t cost = 1;
            std::vector<int> excluded;
            for (size_t i = 0; i < k && ok; ++i) {
                bool keep = cand && beta[i] && *beta[i] == *cand;
                if (keep) continue;
                const auto& [child, mult] = t.children[i];
                if (mult.is_omega()) {
                    ok = false;  // cannot move infinitely many copies into S
                    break;
                }
                const Entry& sub = compute(child);
                if (!sub.feasible) {
                    ok = false;
                    break;
                }
                cost += mult.finite() * sub.cost;
                excluded.push_back(static_cast<int>(i));
            }
            if (ok && (!e.feasible || cost < e.cost)) {
                e.feasible = true;
                e.cost = cost;
                e.excluded = excluded;
            }
        }
        return memo.emplace(key, std::move(e)).first->second;
    }
};

void collect_s_addresses(const TreePres& t, PredWuhMemo& memo, TreeAddr& cur,
                         std::vector<TreeAddr>& out) {
    const auto& e = memo.compute(t);
    out.push_back(cur);
    for (int i : e.excluded) {
        const auto& [child, mult] = t.children[i];
        for (std::uint64_t c = 0; c < mult.finite(); ++c) {
            cur.path.push_back({i, c});
            collect_s_addresses(child, memo, cur, out);
            cur.path.pop_back();
        }
    }
}

} // namespace

bool tree_pred_wuh_height2(const TreePres& t) {
    if (tree_height(t) > 2) throw_input("height-2 form needs a tree of height at most 2");
    std::optional<ExtCount> common;
    for (const auto& [child, mult] : t.children) {
        if (!mult.is_omega()) continue;
        ExtCount cnt = tree_child_count(child);
        if (common && *common != cnt) return false;
        common = cnt;
    }
    return true;
}

bool tree_pred_wuh_height3(const TreePres& t) {
    if (tree_height(t) > 3) throw_input("height-3 form needs a tree of height at most 3");
    // (a) inside each height-1 node, cofinitely many successors share one count
    for (const auto& [child, mult] : t.children) {
        std::optional<ExtCount> common;
        for (const auto& [grand, gm] : child.children) {
            if (!gm.is_omega()) continue;
            ExtCount cnt = tree_child_count(grand);
            if (common && *common != cnt) return false;
            common = cnt;
        }
    }
    // (b) one (h, k): cofinitely many height-1 nodes uniform with that pattern
    std::optional<std::vector<ExtCount>> common;
    for (const auto& [child, mult] : t.children) {
        if (!mult.is_omega()) continue;
        std::vector<ExtCount> beta;
        if (!tree_uniform(child, &beta)) return false;
        if (common && *common != beta) return false;
        common = beta;
    }
    return true;
}

Report analyze_tree_pred(const TreePres& raw) {
    TreePres t = canonical_tree(raw);
    Report r;
    r.family = Family::TreePred;
    std::vector<ExtCount> beta;
    bool uh = tree_uniform(t, &beta);
    PredWuhMemo memo;
    bool wuh = uh || memo.compute(t).feasible;
    r.uh = uh ? Verdict::True : Verdict::False;
    r.wuh = wuh ? Verdict::True : Verdict::False;
    r.cc = wuh ? Verdict::True : Verdict::Unknown;  // locally finite
    if (uh) r.beta = beta;
    r.strongly_finite_type = tree_strongly_finite_type(t) ? Verdict::True : Verdict::False;
    r.finite_type = tree_finite_type(t) ? Verdict::True : Verdict::False;
    r.citations = {kCiteUhPred, kCiteWuhPred, kCiteRelCc};

    int h = tree_height(t);
    if (h <= 2 && wuh != tree_pred_wuh_height2(t))
        throw_internal("height-2 closed form disagrees with the recursion");
    if (h == 3 && wuh != tree_pred_wuh_height3(t))
        throw_internal("height-3 closed form disagrees with the recursion");
    if (h <= 2) r.citations.push_back(kCiteH2);
    if (h == 3) r.citations.push_back(kCiteH3);

    if (wuh) {
        ExceptionalDescriptor d;
        if (uh) {
            d.text = "empty set";
        } else {
            const auto& e = memo.compute(t);
            d.text = "finite exceptional subtree (" + std::to_string(e.cost) + " nodes)";
            TreeAddr cur;
            std::vector<TreeAddr> addrs;
            collect_s_addresses(t, memo, cur, addrs);
            std::sort(addrs.begin(), addrs.end());
            for (const TreeAddr& a : addrs) d.elements.push_back(addr_label(a));
        }
        r.minimal_exceptional.push_back(d);
        r.notes.push_back("smallest exceptional subtree under the exclusion recursion; uniqueness not claimed");
    }
    return r;
}

} // namespace uhom
