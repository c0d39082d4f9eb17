#include <algorithm>
#include <set>

#include "uhom/deciders.hpp"

namespace uhom {

namespace {

const char* kCiteUhDense = "uh linear order = dense without endpoints";
const char* kCiteWuhSucc = "wuh linear order = finitely many successivities";
const char* kCiteRemmel = "Remmel: cc linear order = finitely many successivities";
const char* kCiteExcCond = "exceptional special-point set = no uncovered successor pair + block boundary points";
const char* kCiteDcl = "definable closure of a minimal exceptional set = the special points";

struct FinBlockInfo {
    int block;                 // index into the normalized block list
    std::uint64_t size;
    std::uint64_t offset;      // global index of its first slot (0-based)
    bool need_first;           // preceded by a dense copy
    bool need_last;            // followed by a dense copy
};

std::vector<FinBlockInfo> fin_blocks(const LinOrderPres& p) {
    std::vector<FinBlockInfo> out;
    std::uint64_t offset = 0;
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        const Block& b = p.blocks[i];
        if (b.kind != BlockKind::Fin) continue;
        FinBlockInfo info;
        info.block = static_cast<int>(i);
        info.size = b.size;
        info.offset = offset;
        info.need_first = i > 0;
        info.need_last = i + 1 < p.blocks.size();
        offset += b.size;
        out.push_back(info);
    }
    return out;
}

bool linear_wuh(const LinOrderPres& p) {
    for (const Block& b : p.blocks)
        if (b.kind == BlockKind::Omega || b.kind == BlockKind::OmegaStar ||
            b.kind == BlockKind::Zeta)
            return false;
    return true;
}

bool linear_uh(const LinOrderPres& p) {
    // the empty order, a single point, and the dense endpoint-free order
    if (p.blocks.empty()) return true;
    if (p.blocks.size() != 1) return false;
    const Block& b = p.blocks[0];
    return b.kind == BlockKind::Eta || (b.kind == BlockKind::Fin && b.size == 1);
}

// minimal admissible subsets of one finite block: vertex covers of the
// slot path containing the required boundary slots, no proper subset
// admissible; slots are 1-based
std::vector<std::vector<std::uint64_t>> minimal_block_sets(const FinBlockInfo& fb) {
    if (fb.size > 24) throw_resource("finite block too large for exceptional-set enumeration");
    int m = static_cast<int>(fb.size);
    auto admissible = [&](unsigned mask) {
        if (fb.need_first && !(mask & 1u)) return false;
        if (fb.need_last && !(mask & (1u << (m - 1)))) return false;
        for (int i = 0; i + 1 < m; ++i)
            if (!(mask & (1u << i)) && !(mask & (1u << (i + 1)))) return false;
        return true;
    };
    std::vector<unsigned> adm;
    for (unsigned mask = 0; mask < (1u << m); ++mask)
        if (admissible(mask)) adm.push_back(mask);
    std::vector<std::vector<std::uint64_t>> out;
    for (unsigned mask : adm) {
        bool minimal = true;
        for (unsigned sub = mask; sub != 0 && minimal; sub = (sub - 1) & mask)
            if (sub != mask && admissible(sub)) minimal = false;
        if (!minimal) continue;
        std::vector<std::uint64_t> set;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) set.push_back(fb.offset + i + 1);
        out.push_back(set);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace

Report analyze_linear(const LinOrderPres& raw) {
    LinOrderPres p = normalize_linear(raw);
    Report r;
    r.family = Family::Order;
    bool wuh = linear_wuh(p);
    bool uh = linear_uh(p);
    r.uh = uh ? Verdict::True : Verdict::False;
    r.wuh = wuh ? Verdict::True : Verdict::False;
    r.cc = r.wuh;
    r.citations = {kCiteUhDense, kCiteWuhSucc, kCiteRemmel};
    if (!wuh) return r;

    auto fbs = fin_blocks(p);
    for (const auto& fb : fbs)
        for (std::uint64_t i = 0; i < fb.size; ++i)
            r.special_points.push_back("a" + std::to_string(fb.offset + i + 1));

    // minimal exceptional sets: independent products over the blocks
    std::vector<std::vector<std::vector<std::uint64_t>>> per_block;
    for (const auto& fb : fbs) per_block.push_back(minimal_block_sets(fb));
    std::vector<std::vector<std::uint64_t>> sets{{}};
    for (const auto& choices : per_block) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& base : sets)
            for (const auto& c : choices) {
                auto merged = base;
                merged.insert(merged.end(), c.begin(), c.end());
                next.push_back(merged);
            }
        sets = std::move(next);
    }
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& set : sets) {
        ExceptionalDescriptor d;
        d.text = set.empty() ? "empty set" : "special points";
        for (auto i : set) d.elements.push_back("a" + std::to_string(i));
        r.minimal_exceptional.push_back(d);
    }
    r.citations.push_back(kCiteExcCond);
    return r;
}

std::vector<std::vector<std::uint64_t>> minimal_exceptional_sets_linear(const LinOrderPres& raw) {
    Report r = analyze_linear(raw);
    if (r.wuh != Verdict::True)
        throw_precondition("order with infinitely many successivities has no exceptional set");
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& d : r.minimal_exceptional) {
        std::vector<std::uint64_t> set;
        for (const auto& e : d.elements) set.push_back(std::stoull(e.substr(1)));
        out.push_back(set);
    }
    return out;
}

LinExceptionalTrace is_exceptional_linear(const LinOrderPres& raw, const std::vector<LinCoord>& set) {
    LinOrderPres p = normalize_linear(raw);
    LinExceptionalTrace tr;
    if (!linear_wuh(p)) {
        tr.holds = false;
        tr.violated_condition = 1;
        tr.witness = "infinitely many successivities";
        return tr;
    }
    for (const LinCoord& c : set) {
        if (c.block < 0 || c.block >= static_cast<int>(p.blocks.size()))
            throw_input("block index out of range");
        const Block& b = p.blocks[c.block];
        if (c.pos < 1 || (b.kind == BlockKind::Fin && c.pos > b.size))
            throw_input("position out of range");
    }
    auto fbs = fin_blocks(p);
    // chosen slots per finite block; non-special coordinates are ignored
    for (const auto& fb : fbs) {
        std::set<std::uint64_t> chosen;
        for (const LinCoord& c : set)
            if (c.block == fb.block) chosen.insert(c.pos);
        if (fb.need_first && !chosen.count(1)) {
            tr.holds = false;
            tr.violated_condition = 2;
            tr.witness = "a" + std::to_string(fb.offset + 1);
            return tr;
        }
        if (fb.need_last && !chosen.count(fb.size)) {
            tr.holds = false;
            tr.violated_condition = 2;
            tr.witness = "a" + std::to_string(fb.offset + fb.size);
            return tr;
        }
        for (std::uint64_t i = 1; i < fb.size; ++i)
            if (!chosen.count(i) && !chosen.count(i + 1)) {
                tr.holds = false;
                tr.violated_condition = 1;
                tr.witness = "(a" + std::to_string(fb.offset + i) + ", a" +
                             std::to_string(fb.offset + i + 1) + ")";
                return tr;
            }
    }
    return tr;
}

std::vector<LinCoord> definable_closure_linear(const LinOrderPres& raw,
                                               const std::vector<LinCoord>& set) {
    LinOrderPres p = normalize_linear(raw);
    auto tr = is_exceptional_linear(p, set);
    if (!tr.holds) throw_precondition("set is not exceptional");
    (void)kCiteDcl;
    std::set<LinCoord> out(set.begin(), set.end());
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        const Block& b = p.blocks[i];
        if (b.kind != BlockKind::Fin) continue;
        for (std::uint64_t pos = 1; pos <= b.size; ++pos)
            out.insert({static_cast<int>(i), pos});
    }
    return std::vector<LinCoord>(out.begin(), out.end());
}

} // namespace uhom
