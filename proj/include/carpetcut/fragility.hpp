#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "carpetcut/adjacency.hpp"
#include "carpetcut/core.hpp"

namespace carpetcut {

struct FragilityWitness {
    RationalPoint point;
    std::vector<Digit> first;  // contains the least digit
    std::vector<Digit> second;
};

/// Pairwise classes of the level-1 cells, indexed by digit index.
class LevelOneClasses {
public:
    explicit LevelOneClasses(const GscSpec& spec) : size_(spec.size()), classes_(size_ * size_) {
        const NeighborTable table = neighbor_table(spec);
        for (std::size_t a = 0; a < size_; ++a) {
            for (std::size_t b = a + 1; b < size_; ++b) {
                const CellWord wa{{spec.digits()[a]}};
                const CellWord wb{{spec.digits()[b]}};
                classes_[a * size_ + b] = classes_[b * size_ + a] = cells_intersection_class(spec, table, wa, wb);
            }
        }
    }

    std::size_t size() const noexcept { return size_; }
    const IntersectionClass& at(std::size_t a, std::size_t b) const { return classes_[a * size_ + b]; }

private:
    std::size_t size_;
    std::vector<IntersectionClass> classes_;
};

namespace detail {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

} // namespace detail

inline bool is_connected_gsc(const GscSpec& spec) {
    const LevelOneClasses classes(spec);
    detail::DisjointSets sets(classes.size());
    std::size_t parts = classes.size();
    for (std::size_t a = 0; a < classes.size(); ++a) {
        for (std::size_t b = a + 1; b < classes.size(); ++b) {
            if (!classes.at(a, b).is_empty() && sets.unite(a, b)) --parts;
        }
    }
    return parts == 1;
}

/// Every crossing pair is Empty or Singleton(point), and at least one is Singleton(point).
inline bool verify_witness(const GscSpec& spec, const FragilityWitness& w) {
    if (w.first.empty() || w.second.empty()) return false;
    if (w.first.size() + w.second.size() != spec.size()) return false;
    const NeighborTable table = neighbor_table(spec);
    bool touched = false;
    for (const Digit& a : w.first) {
        for (const Digit& b : w.second) {
            if (a == b) return false;
            const auto c = cells_intersection_class(spec, table, CellWord{{a}}, CellWord{{b}});
            if (c.is_empty()) continue;
            if (!c.is_singleton() || !(c.point == w.point)) return false;
            touched = true;
        }
    }
    return touched;
}

/// Candidate points are the pairwise singleton contacts: a fragile split has
/// all its crossing contacts equal to the splitting point. For each candidate
/// p, the graph keeping only contacts other than {p} must fall apart.
inline std::optional<FragilityWitness> fragility_witness(const GscSpec& spec) {
    const LevelOneClasses classes(spec);
    const std::size_t n = classes.size();
    {
        detail::DisjointSets sets(n);
        std::size_t parts = n;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!classes.at(a, b).is_empty() && sets.unite(a, b)) --parts;
            }
        }
        if (parts != 1) throw Error(ErrorCode::DisconnectedCarpet, "fragility is defined for connected carpets");
    }
    std::vector<RationalPoint> candidates;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (classes.at(a, b).is_singleton()) candidates.push_back(classes.at(a, b).point);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const RationalPoint& p : candidates) {
        detail::DisjointSets sets(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                const auto& c = classes.at(a, b);
                if (c.is_empty() || (c.is_singleton() && c.point == p)) continue;
                sets.unite(a, b);
            }
        }
        const std::size_t root = sets.find(0);
        FragilityWitness w{p, {}, {}};
        for (std::size_t a = 0; a < n; ++a) {
            (sets.find(a) == root ? w.first : w.second).push_back(spec.digits()[a]);
        }
        if (!w.second.empty()) return w;
    }
    return std::nullopt;
}

inline bool is_fragile(const GscSpec& spec) { return fragility_witness(spec).has_value(); }

} // namespace carpetcut
