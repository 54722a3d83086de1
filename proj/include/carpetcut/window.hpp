#pragma once

// Finite-state view of the components of E_k, the union of all level-k cells
// outside a deleted region (one cell, or the 2-4 cells holding a point).
//
// Components of E_k only change by merging, and a new piece (a child of a
// deleted cell) can only touch level-k cells adjacent to the deleted squares.
// So it is enough to remember, for those adjacent cells whose fractal actually
// meets the deleted region (the window), which component each belongs to.
// Components with no window cell never change again and are only counted.
//
// Children of two different window cells are never compared: if they touch,
// their parents touch, so the parents were already in one block.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "carpetcut/adjacency.hpp"
#include "carpetcut/core.hpp"
#include "carpetcut/fragility.hpp"

namespace carpetcut {

class WindowState {
public:
    std::vector<Offset> center;    // sorted, bounding box at the origin
    std::vector<Offset> window;    // sorted, same frame as center
    std::vector<int> block_of;     // parallel to window, blocks numbered by first appearance
    std::vector<bool> has_subtree; // per block
    int frozen_with_subtree = 0;   // saturates at 2
    int frozen_any = 0;            // saturates at 2
    bool at_root = true;

    std::size_t block_count() const noexcept { return has_subtree.size(); }

    int subtree_classes() const {
        int n = frozen_with_subtree;
        for (bool f : has_subtree) n += f ? 1 : 0;
        return n;
    }

    /// Two level-1 subtrees lie in different components.
    bool sep() const { return subtree_classes() >= 2; }

    std::vector<int> key() const {
        std::vector<int> out;
        out.reserve(4 + 2 * center.size() + 3 * window.size() + has_subtree.size());
        out.push_back(static_cast<int>(center.size()));
        for (const Offset& o : center) {
            out.push_back(o.x);
            out.push_back(o.y);
        }
        out.push_back(static_cast<int>(window.size()));
        for (std::size_t k = 0; k < window.size(); ++k) {
            out.push_back(window[k].x);
            out.push_back(window[k].y);
            out.push_back(block_of[k]);
        }
        for (bool f : has_subtree) out.push_back(f ? 1 : 0);
        out.push_back(frozen_with_subtree);
        out.push_back(frozen_any);
        out.push_back(at_root ? 1 : 0);
        return out;
    }

    bool operator==(const WindowState& o) const { return key() == o.key(); }
};

struct WindowTransition {
    WindowState state;
    std::vector<int> block_map; // old block -> new block, -1 when frozen
    int frozen_any = 0;         // exact number of components frozen in this step
    int frozen_with_subtree = 0;
};

inline WindowState window_root() {
    WindowState s;
    s.center = {Offset{0, 0}};
    return s;
}

class WindowAutomaton {
public:
    explicit WindowAutomaton(GscSpec spec) : spec_(std::move(spec)), table_(neighbor_table(spec_)) {
        for (Direction d : kAllDirections) {
            if (table_.touches(d)) touching_.push_back(offset_of(d));
        }
    }

    const GscSpec& spec() const noexcept { return spec_; }
    const NeighborTable& table() const noexcept { return table_; }

    /// Replace the deleted cells by the given children, written as N*c + e in
    /// the frame of s (c an old center cell, e a digit).
    WindowTransition advance(const WindowState& s, const std::vector<Offset>& children) const {
        const int n = spec_.base();
        const std::set<Offset> old_center(s.center.begin(), s.center.end());
        std::map<Offset, int> old_block;
        for (std::size_t k = 0; k < s.window.size(); ++k) old_block.emplace(s.window[k], s.block_of[k]);

        const std::set<Offset> next(children.begin(), children.end());
        if (next.empty()) throw Error(ErrorCode::InvalidDigit, "no deleted cell at the next level");
        for (const Offset& c : next) {
            const Offset parent = floor_div(c, n);
            const Offset digit = c - Offset{parent.x * n, parent.y * n};
            if (!old_center.contains(parent) || !spec_.contains(digit.x, digit.y)) {
                throw Error(ErrorCode::InvalidDigit, "(" + std::to_string(digit.x) + "," + std::to_string(digit.y) +
                                                         ") is not a digit of a deleted cell");
            }
        }

        std::map<Offset, std::size_t> sibling;
        for (const Offset& c : s.center) {
            for (const Digit& d : spec_.digits()) {
                const Offset p{c.x * n + d.x, c.y * n + d.y};
                if (!next.contains(p)) sibling.emplace(p, 0);
            }
        }
        const std::size_t blocks = s.block_count();
        std::size_t idx = blocks;
        for (auto& [pos, id] : sibling) id = idx++;
        detail::DisjointSets sets(idx);

        // Element of the cell at p (same level as the children), if it exists
        // and is not deleted.
        auto element_at = [&](const Offset& p) -> std::optional<std::size_t> {
            if (auto it = sibling.find(p); it != sibling.end()) return it->second;
            if (next.contains(p)) return std::nullopt;
            const Offset parent = floor_div(p, n);
            auto it = old_block.find(parent);
            if (it == old_block.end()) return std::nullopt;
            const Offset digit = p - Offset{parent.x * n, parent.y * n};
            if (!spec_.contains(digit.x, digit.y)) return std::nullopt;
            return static_cast<std::size_t>(it->second);
        };

        for (const auto& [pos, id] : sibling) {
            for (const Offset& t : touching_) {
                if (auto e = element_at(pos + t)) sets.unite(id, *e);
            }
        }

        std::map<Offset, std::size_t> window_elem;
        for (const Offset& c : next) {
            for (const Offset& t : touching_) {
                const Offset p = c + t;
                if (auto e = element_at(p)) window_elem.emplace(p, *e);
            }
        }

        std::vector<bool> flag(idx, false);
        for (std::size_t b = 0; b < blocks; ++b) {
            if (s.has_subtree[b]) flag[sets.find(b)] = true;
        }
        if (s.at_root) {
            for (const auto& [pos, id] : sibling) flag[sets.find(id)] = true;
        }

        WindowTransition out;
        WindowState& ns = out.state;
        ns.at_root = false;
        Offset origin = *next.begin();
        for (const Offset& c : next) {
            origin.x = std::min(origin.x, c.x);
            origin.y = std::min(origin.y, c.y);
        }
        for (const Offset& c : next) ns.center.push_back(c - origin);

        std::map<std::size_t, int> renumber;
        for (const auto& [pos, e] : window_elem) {
            const std::size_t root = sets.find(e);
            auto [it, fresh] = renumber.emplace(root, static_cast<int>(renumber.size()));
            if (fresh) ns.has_subtree.push_back(flag[root]);
            ns.window.push_back(pos - origin);
            ns.block_of.push_back(it->second);
        }

        std::set<std::size_t> departed;
        for (std::size_t e = 0; e < idx; ++e) {
            const std::size_t root = sets.find(e);
            if (!renumber.contains(root)) departed.insert(root);
        }
        for (std::size_t root : departed) {
            ++out.frozen_any;
            if (flag[root]) ++out.frozen_with_subtree;
        }
        ns.frozen_any = std::min(2, s.frozen_any + out.frozen_any);
        ns.frozen_with_subtree = std::min(2, s.frozen_with_subtree + out.frozen_with_subtree);

        out.block_map.assign(blocks, -1);
        for (std::size_t b = 0; b < blocks; ++b) {
            if (auto it = renumber.find(sets.find(b)); it != renumber.end()) out.block_map[b] = it->second;
        }
        return out;
    }

    /// Single deleted cell: descend into its child `d`.
    WindowState step(const WindowState& s, Digit d) const {
        if (!spec_.contains(d)) throw Error(ErrorCode::InvalidDigit, to_string(d) + " is not a digit");
        if (s.center.size() != 1) throw Error(ErrorCode::InvalidDigit, "step by digit needs a single deleted cell");
        const Offset c = s.center.front();
        return advance(s, {Offset{c.x * spec_.base() + d.x, c.y * spec_.base() + d.y}}).state;
    }

    WindowState run(const CellWord& w) const {
        WindowState s = window_root();
        for (const Digit& d : w.letters) s = step(s, d);
        return s;
    }

private:
    static int floor_div(int a, int n) { return a >= 0 ? a / n : -((-a + n - 1) / n); }
    static Offset floor_div(Offset o, int n) { return {floor_div(o.x, n), floor_div(o.y, n)}; }

    GscSpec spec_;
    NeighborTable table_;
    std::vector<Offset> touching_;
};

inline WindowState window_initial(const GscSpec& spec, Digit i1) {
    return WindowAutomaton(spec).step(window_root(), i1);
}

inline WindowState window_step(const GscSpec& spec, const WindowState& s, Digit next) {
    return WindowAutomaton(spec).step(s, next);
}

} // namespace carpetcut
