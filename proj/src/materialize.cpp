#include <algorithm>
#include <cmath>
#include <functional>

#include "uhom/presentation.hpp"

namespace uhom {

namespace {

struct Emitted {
    int block;
    double key;
    std::string label;
};

int dyadic_level(int j) { return static_cast<int>(std::floor(std::log2(j + 1))); }

std::string dyadic_label(int j) {
    // 1/2, 1/4, 3/4, 1/8, 3/8, ...
    int level = dyadic_level(j);
    std::uint64_t den = 1ull << (level + 1);
    std::uint64_t num = 2 * (static_cast<std::uint64_t>(j) + 1 - (1ull << level)) + 1;
    return std::to_string(num) + "/" + std::to_string(den);
}

double dyadic_value(int j) {
    int level = dyadic_level(j);
    std::uint64_t den = 1ull << (level + 1);
    std::uint64_t num = 2 * (static_cast<std::uint64_t>(j) + 1 - (1ull << level)) + 1;
    return static_cast<double>(num) / static_cast<double>(den);
}

FiniteStructure materialize_linear(const LinOrderPres& p, int n, MaterializeInfo* info) {
    struct BlockState {
        Block b;
        std::uint64_t emitted = 0;
        std::uint64_t special_offset = 0;  // global index of first slot, Fin only
    };
    std::vector<BlockState> bs;
    std::uint64_t special = 0;
    for (const Block& b : p.blocks) {
        BlockState st{b, 0, special};
        if (b.kind == BlockKind::Fin) special += b.size;
        bs.push_back(st);
    }
    if (info) {
        for (size_t i = 0; i < p.blocks.size(); ++i) {
            MaterializeInfo::Instance inst;
            inst.blueprint = static_cast<int>(i);
            inst.kind = static_cast<int>(p.blocks[i].kind);
            inst.capacity = p.blocks[i].kind == BlockKind::Fin ? ExtCount(p.blocks[i].size)
                                                               : ExtCount::omega();
            info->instances.push_back(inst);
        }
    }
    std::vector<Emitted> ems;
    bool single_block = p.blocks.size() == 1;
    while (static_cast<int>(ems.size()) < n) {
        bool any = false;
        for (size_t i = 0; i < bs.size() && static_cast<int>(ems.size()) < n; ++i) {
            BlockState& st = bs[i];
            if (st.b.kind == BlockKind::Fin && st.emitted >= st.b.size) continue;
            any = true;
            std::uint64_t j = st.emitted++;
            Emitted e;
            e.block = static_cast<int>(i);
            switch (st.b.kind) {
                case BlockKind::Fin:
                    e.key = static_cast<double>(j);
                    e.label = "a" + std::to_string(st.special_offset + j + 1);
                    break;
                case BlockKind::Omega:
                    e.key = static_cast<double>(j);
                    e.label = "b" + std::to_string(i) + ":w" + std::to_string(j);
                    break;
                case BlockKind::OmegaStar:
                    e.key = -static_cast<double>(j);
                    e.label = "b" + std::to_string(i) + ":w*" + std::to_string(j);
                    break;
                case BlockKind::Zeta: {
                    long long pos = (j % 2 == 0) ? static_cast<long long>(j / 2)
                                                 : -static_cast<long long>((j + 1) / 2);
                    e.key = static_cast<double>(pos);
                    e.label = "b" + std::to_string(i) + ":z" + std::to_string(pos);
                    break;
                }
                case BlockKind::Eta:
                    e.key = dyadic_value(static_cast<int>(j));
                    e.label = single_block ? dyadic_label(static_cast<int>(j))
                                           : "b" + std::to_string(i) + ":" +
                                                 dyadic_label(static_cast<int>(j));
                    break;
            }
            if (info) info->elements.push_back({static_cast<int>(i), static_cast<int>(j)});
            ems.push_back(e);
        }
        if (!any) throw_input("presentation describes fewer than n elements");
    }
    std::vector<int> order(ems.size());
    for (size_t i = 0; i < ems.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (ems[x].block != ems[y].block) return ems[x].block < ems[y].block;
        return ems[x].key < ems[y].key;
    });
    std::vector<int> pos(ems.size());
    for (size_t r = 0; r < order.size(); ++r) pos[order[r]] = static_cast<int>(r);
    FiniteStructure s = make_order_from_positions(pos);
    s.labels.resize(ems.size());
    for (size_t i = 0; i < ems.size(); ++i) s.labels[i] = ems[i].label;
    return s;
}

/**
 * Round-robin filler shared by the class-like presentations: every open
 * instance receives one element per round, then the infinite families
 * open their next instances.
 */
struct InstanceSchedule {
    std::vector<ExtCount> capacity;
    std::vector<int> blueprint;
    std::vector<int> kind;
    std::vector<int> fill;
    std::vector<MaterializeInfo::Element> slots;
    std::function<void(int round)> open_round_instances;

    int add_instance(ExtCount cap, int bp, int k) {
        capacity.push_back(cap);
        blueprint.push_back(bp);
        kind.push_back(k);
        fill.push_back(0);
        return static_cast<int>(capacity.size()) - 1;
    }

    void run(int n) {
        int emitted = 0;
        int round = 0;
        while (emitted < n) {
            bool any = false;
            size_t count_at_start = capacity.size();
            for (size_t i = 0; i < count_at_start && emitted < n; ++i) {
                if (capacity[i].is_finite() &&
                    static_cast<std::uint64_t>(fill[i]) >= capacity[i].finite())
                    continue;
                slots.push_back({static_cast<int>(i), fill[i]});
                ++fill[i];
                ++emitted;
                any = true;
            }
            if (emitted < n) {
                size_t before = capacity.size();
                open_round_instances(round);
                if (capacity.size() > before) any = true;
            }
            if (!any) throw_input("presentation describes fewer than n elements");
            ++round;
        }
    }

    void export_info(MaterializeInfo* info) const {
        if (!info) return;
        info->elements = slots;
        for (size_t i = 0; i < capacity.size(); ++i)
            info->instances.push_back({blueprint[i], capacity[i], kind[i]});
    }
};

FiniteStructure materialize_equivalence(const EqCharacter& c, int n, MaterializeInfo* info) {
    std::vector<std::pair<ExtCount, ExtCount>> entries(c.entries.begin(), c.entries.end());
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    InstanceSchedule sched;
    std::vector<size_t> omega_entries;
    for (size_t i = 0; i < entries.size(); ++i) {
        auto [size, count] = entries[i];
        if (count.is_finite()) {
            for (std::uint64_t k = 0; k < count.finite(); ++k)
                sched.add_instance(size, static_cast<int>(i), 0);
        } else {
            sched.add_instance(size, static_cast<int>(i), 0);
            omega_entries.push_back(i);
        }
    }
    if (c.unbounded_tail) sched.add_instance(1, -1, 1);
    std::uint64_t next_tail = 2;
    sched.open_round_instances = [&](int) {
        for (size_t i : omega_entries) sched.add_instance(entries[i].first, static_cast<int>(i), 0);
        if (c.unbounded_tail) sched.add_instance(next_tail++, -1, 1);
    };
    sched.run(n);
    sched.export_info(info);
    std::vector<std::vector<int>> classes(sched.capacity.size());
    for (int e = 0; e < n; ++e) classes[sched.slots[e].instance].push_back(e);
    classes.erase(std::remove_if(classes.begin(), classes.end(),
                                 [](const auto& v) { return v.empty(); }),
                  classes.end());
    FiniteStructure s = make_equivalence(n, classes);
    s.labels.resize(n);
    for (int e = 0; e < n; ++e)
        s.labels[e] = "c" + std::to_string(sched.slots[e].instance) + "." +
                      std::to_string(sched.slots[e].index);
    return s;
}

enum OrbitKind { kCycle = 0, kOmegaOrbit = 1, kZetaOrbit = 2 };

FiniteStructure materialize_injection(const InjSpectrum& sp, int n, MaterializeInfo* info) {
    InstanceSchedule sched;
    std::vector<std::pair<std::uint64_t, ExtCount>> centries(sp.cycles.begin(), sp.cycles.end());
    std::sort(centries.begin(), centries.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<size_t> omega_cycle_entries;
    for (size_t i = 0; i < centries.size(); ++i) {
        auto [size, count] = centries[i];
        if (count.is_finite())
            for (std::uint64_t k = 0; k < count.finite(); ++k)
                sched.add_instance(size, static_cast<int>(i), kCycle);
        else {
            sched.add_instance(size, static_cast<int>(i), kCycle);
            omega_cycle_entries.push_back(i);
        }
    }
    if (sp.omega_orbits.is_finite()) {
        for (std::uint64_t k = 0; k < sp.omega_orbits.finite(); ++k)
            sched.add_instance(ExtCount::omega(), -1, kOmegaOrbit);
    } else {
        sched.add_instance(ExtCount::omega(), -1, kOmegaOrbit);
    }
    if (sp.zeta_orbits.is_finite()) {
        for (std::uint64_t k = 0; k < sp.zeta_orbits.finite(); ++k)
            sched.add_instance(ExtCount::omega(), -1, kZetaOrbit);
    } else {
        sched.add_instance(ExtCount::omega(), -1, kZetaOrbit);
    }
    std::uint64_t next_tail = 1;
    if (sp.unbounded_cycle_tail) sched.add_instance(next_tail++, -2, kCycle);
    sched.open_round_instances = [&](int) {
        for (size_t i : omega_cycle_entries)
            sched.add_instance(centries[i].first, static_cast<int>(i), kCycle);
        if (sp.omega_orbits.is_omega()) sched.add_instance(ExtCount::omega(), -1, kOmegaOrbit);
        if (sp.zeta_orbits.is_omega()) sched.add_instance(ExtCount::omega(), -1, kZetaOrbit);
        if (sp.unbounded_cycle_tail) sched.add_instance(next_tail++, -2, kCycle);
    };
    sched.run(n);
    sched.export_info(info);
    std::vector<std::vector<int>> members(sched.capacity.size());
    for (int e = 0; e < n; ++e) members[sched.slots[e].instance].push_back(e);
    std::vector<int> f(n, kNoImage);
    for (size_t i = 0; i < members.size(); ++i) {
        const auto& mem = members[i];
        if (mem.empty()) continue;
        switch (sched.kind[i]) {
            case kCycle: {
                bool complete =
                    sched.capacity[i].is_finite() && mem.size() == sched.capacity[i].finite();
                for (size_t j = 0; j + 1 < mem.size(); ++j) f[mem[j]] = mem[j + 1];
                if (complete && mem.size() > 0) f[mem.back()] = mem.front();
                break;
            }
            case kOmegaOrbit:
                for (size_t j = 0; j + 1 < mem.size(); ++j) f[mem[j]] = mem[j + 1];
                break;
            case kZetaOrbit: {
                std::vector<std::pair<long long, int>> by_pos;
                for (size_t j = 0; j < mem.size(); ++j) {
                    long long pos = (j % 2 == 0) ? static_cast<long long>(j / 2)
                                                 : -static_cast<long long>((j + 1) / 2);
                    by_pos.push_back({pos, mem[j]});
                }
                std::sort(by_pos.begin(), by_pos.end());
                for (size_t j = 0; j + 1 < by_pos.size(); ++j)
                    f[by_pos[j].second] = by_pos[j + 1].second;
                break;
            }
        }
    }
    FiniteStructure s = make_injection(f);
    s.labels.resize(n);
    for (int e = 0; e < n; ++e)
        s.labels[e] = "o" + std::to_string(sched.slots[e].instance) + "." +
                      std::to_string(sched.slots[e].index);
    return s;
}

FiniteStructure materialize_graph(const GraphPres& g, int n, MaterializeInfo* info) {
    if (g.catalog_tag) throw_unsupported("catalog-tagged graph presentations cannot be materialized");
    InstanceSchedule sched;
    std::vector<size_t> omega_components;
    for (size_t i = 0; i < g.components.size(); ++i) {
        const auto& comp = g.components[i];
        ExtCount cap = comp.graph.n;
        if (comp.multiplicity.is_finite())
            for (std::uint64_t k = 0; k < comp.multiplicity.finite(); ++k)
                sched.add_instance(cap, static_cast<int>(i), 0);
        else {
            sched.add_instance(cap, static_cast<int>(i), 0);
            omega_components.push_back(i);
        }
    }
    bool bulk_omega_copies = false;
    if (g.bulk) {
        auto [copies, order] = *g.bulk;
        if (copies.is_finite())
            for (std::uint64_t k = 0; k < copies.finite(); ++k) sched.add_instance(order, -1, 1);
        else {
            sched.add_instance(order, -1, 1);
            bulk_omega_copies = true;
        }
    }
    sched.open_round_instances = [&](int) {
        for (size_t i : omega_components)
            sched.add_instance(ExtCount(g.components[i].graph.n), static_cast<int>(i), 0);
        if (bulk_omega_copies) sched.add_instance(g.bulk->second, -1, 1);
    };
    sched.run(n);
    sched.export_info(info);
    std::vector<std::vector<int>> members(sched.capacity.size());
    for (int e = 0; e < n; ++e) members[sched.slots[e].instance].push_back(e);
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < members.size(); ++i) {
        const auto& mem = members[i];
        int bp = sched.blueprint[i];
        for (size_t a = 0; a < mem.size(); ++a)
            for (size_t b = a + 1; b < mem.size(); ++b) {
                bool adj = (bp < 0) ? true
                                    : g.components[bp].graph.rel(0, static_cast<int>(a),
                                                                 static_cast<int>(b));
                if (adj) edges.push_back({mem[a], mem[b]});
            }
    }
    FiniteStructure s = make_graph(n, edges);
    s.labels.resize(n);
    for (int e = 0; e < n; ++e)
        s.labels[e] = "g" + std::to_string(sched.slots[e].instance) + "." +
                      std::to_string(sched.slots[e].index);
    return s;
}

/**
 * Round-based breadth-fair expansion of a tree presentation; every
 * pending (parent, child-shape) obligation produces one node per round.
 */
struct TreeGrower {
    struct Obligation {
        int parent;
        const TreePres* child;
        ExtCount remaining;
    };
    std::vector<Obligation> obligations;
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<std::string> label;
    std::vector<std::string> key;
    std::vector<int> child_seq;

    int add_node(int par, const TreePres& shape) {
        int id = static_cast<int>(parent.size());
        parent.push_back(par == -1 ? id : par);
        depth.push_back(par == -1 ? 0 : depth[par] + 1);
        if (par == -1)
            label.push_back("e");
        else {
            std::string base = label[par] == "e" ? "" : label[par] + ".";
            label.push_back(base + std::to_string(child_seq[par]++));
        }
        key.push_back(tree_key(shape));
        child_seq.push_back(0);
        for (const auto& [c, m] : shape.children) obligations.push_back({id, &c, m});
        return id;
    }

    template <typename Done>
    bool grow(const TreePres& root, Done done) {
        add_node(-1, root);
        if (done()) return true;
        while (true) {
            bool any = false;
            size_t count_at_start = obligations.size();
            for (size_t i = 0; i < count_at_start; ++i) {
                if (obligations[i].remaining.is_zero()) continue;
                any = true;
                if (obligations[i].remaining.is_finite())
                    obligations[i].remaining = ExtCount(obligations[i].remaining.finite() - 1);
                add_node(obligations[i].parent, *obligations[i].child);
                if (done()) return true;
            }
            if (!any) return false;
        }
    }

    void export_info(MaterializeInfo* info) const {
        if (!info) return;
        info->node_parent = parent;
        info->node_depth = depth;
        info->node_key = key;
    }
};

FiniteStructure materialize_tree(const TreePres& t, Family fam, int n, MaterializeInfo* info) {
    if (n < 1) throw_input("a tree prefix needs at least the root");
    TreeGrower tg;
    if (!tg.grow(t, [&] { return static_cast<int>(tg.parent.size()) >= n; }))
        throw_input("presentation describes fewer than n elements");
    std::vector<int> par(tg.parent.begin(), tg.parent.begin() + n);
    FiniteStructure s = (fam == Family::TreePred) ? make_tree_pred(par) : make_tree_po(par);
    s.labels.assign(tg.label.begin(), tg.label.begin() + n);
    tg.export_info(info);
    if (info) {
        for (int e = 0; e < n; ++e) {
            info->elements.push_back({-1, 0});
            info->element_node.push_back(e);
        }
    }
    return s;
}

FiniteStructure materialize_nested(const NestedEqPres& ne, int n, MaterializeInfo* info) {
    if (ne.concrete) {
        const FiniteStructure& c = *ne.concrete;
        if (n > c.n) throw_input("presentation describes fewer than n elements");
        std::vector<std::vector<std::vector<int>>> class_lists(c.arity);
        for (int r = 0; r < c.arity; ++r) {
            std::vector<char> seen(n, 0);
            for (int x = 0; x < n; ++x) {
                if (seen[x]) continue;
                std::vector<int> cls;
                for (int y = 0; y < n; ++y)
                    if (c.rel(r, x, y)) {
                        cls.push_back(y);
                        seen[y] = 1;
                    }
                class_lists[r].push_back(cls);
            }
        }
        FiniteStructure s = make_nested(n, class_lists);
        if (!c.labels.empty())
            s.labels.assign(c.labels.begin(),
                            c.labels.begin() + std::min<size_t>(n, c.labels.size()));
        return s;
    }
    const TreePres& t = *ne.tree;
    int leaf_depth = ne.arity + 1;
    TreeGrower tg;
    int leaves_seen = 0;
    if (!tg.grow(t, [&] {
            if (tg.depth.back() == leaf_depth) ++leaves_seen;
            return leaves_seen >= n;
        }))
        throw_input("presentation describes fewer than n elements");
    std::vector<int> leaves;
    for (size_t i = 0; i < tg.depth.size(); ++i)
        if (tg.depth[i] == leaf_depth) leaves.push_back(static_cast<int>(i));
    auto ancestor = [&](int node, int d) {
        int x = node;
        while (tg.depth[x] > d) x = tg.parent[x];
        return x;
    };
    std::vector<std::vector<std::vector<int>>> class_lists(ne.arity);
    for (int lev = 1; lev <= ne.arity; ++lev) {
        std::map<int, std::vector<int>> by_anc;
        for (int e = 0; e < n; ++e) by_anc[ancestor(leaves[e], lev)].push_back(e);
        for (auto& [a, cls] : by_anc) class_lists[lev - 1].push_back(cls);
    }
    FiniteStructure s = make_nested(n, class_lists);
    s.labels.resize(n);
    for (int e = 0; e < n; ++e) s.labels[e] = tg.label[leaves[e]];
    tg.export_info(info);
    if (info) {
        for (int e = 0; e < n; ++e) {
            info->elements.push_back({-1, 0});
            info->element_node.push_back(leaves[e]);
        }
    }
    return s;
}

} // namespace

FiniteStructure materialize(const Presentation& p, int n, MaterializeInfo* info) {
    if (n < 0) throw_input("materialization size must be nonnegative");
    validate(p);
    switch (p.family) {
        case Family::Order: return materialize_linear(std::get<LinOrderPres>(p.data), n, info);
        case Family::Equivalence:
            return materialize_equivalence(std::get<EqCharacter>(p.data), n, info);
        case Family::Injection:
            return materialize_injection(std::get<InjSpectrum>(p.data), n, info);
        case Family::Graph: return materialize_graph(std::get<GraphPres>(p.data), n, info);
        case Family::TreePO:
            return materialize_tree(std::get<TreePres>(p.data), Family::TreePO, n, info);
        case Family::TreePred:
            return materialize_tree(std::get<TreePres>(p.data), Family::TreePred, n, info);
        case Family::NestedEq: return materialize_nested(std::get<NestedEqPres>(p.data), n, info);
    }
    throw_internal("bad family");
}

} // namespace uhom
