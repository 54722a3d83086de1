#pragma once

#include <array>
#include <optional>
#include <vector>

#include "carpetcut/core.hpp"
#include "carpetcut/radix.hpp"

namespace carpetcut {

struct IntersectionClass {
    IntersectionTag tag = IntersectionTag::Empty;
    RationalPoint point; // only for Singleton

    static IntersectionClass empty() { return {}; }
    static IntersectionClass multiple() { return {IntersectionTag::Multiple, {}}; }
    static IntersectionClass singleton(RationalPoint p) { return {IntersectionTag::Singleton, std::move(p)}; }

    bool is_empty() const noexcept { return tag == IntersectionTag::Empty; }
    bool is_singleton() const noexcept { return tag == IntersectionTag::Singleton; }
    bool is_multiple() const noexcept { return tag == IntersectionTag::Multiple; }

    bool operator==(const IntersectionClass& o) const {
        return tag == o.tag && (tag != IntersectionTag::Singleton || point == o.point);
    }

    /// Union of two contact sets.
    IntersectionClass merged(const IntersectionClass& o) const {
        if (is_empty()) return o;
        if (o.is_empty()) return *this;
        if (is_singleton() && o.is_singleton() && point == o.point) return *this;
        return multiple();
    }
};

inline std::string to_string(const IntersectionClass& c) {
    if (c.is_singleton()) return std::string("Singleton ") + to_string(c.point);
    return tag_name(c.tag);
}

/// Intersection of F with its translate by each unit offset. Points are in the
/// coordinates of the unit square that is not translated.
class NeighborTable {
public:
    const IntersectionClass& at(Direction d) const { return entries_[static_cast<std::size_t>(d)]; }
    bool touches(Direction d) const { return !at(d).is_empty(); }
    bool touches(Offset o) const {
        auto d = direction_from_offset(o);
        return d && touches(*d);
    }

    friend NeighborTable neighbor_table(const GscSpec& spec);

private:
    std::array<IntersectionClass, 8> entries_;
};

inline NeighborTable neighbor_table(const GscSpec& spec) {
    NeighborTable table;
    const int n = spec.base();
    auto edge = [&](Side mine, Side theirs, auto make_point) {
        const auto a = boundary_digit_set(spec, mine);
        const auto b = boundary_digit_set(spec, theirs);
        if (a.empty() || b.empty()) return IntersectionClass::empty();
        switch (intersect_class(a, b, n)) {
        case IntersectionTag::Empty: return IntersectionClass::empty();
        case IntersectionTag::Multiple: return IntersectionClass::multiple();
        case IntersectionTag::Singleton: return IntersectionClass::singleton(make_point(singleton_value(a, b, n)));
        }
        return IntersectionClass::empty();
    };
    auto corner = [&](int cx, int cy) {
        // Our corner (cx, cy) meets the opposite corner of the diagonal neighbor.
        if (corner_in_F(spec, cx, cy) && corner_in_F(spec, 1 - cx, 1 - cy)) {
            return IntersectionClass::singleton(RationalPoint{Rational(cx), Rational(cy)});
        }
        return IntersectionClass::empty();
    };
    auto set = [&](Direction d, IntersectionClass c) { table.entries_[static_cast<std::size_t>(d)] = std::move(c); };
    set(Direction::Right, edge(Side::Right, Side::Left, [](Rational v) { return RationalPoint{1, v}; }));
    set(Direction::Left, edge(Side::Left, Side::Right, [](Rational v) { return RationalPoint{0, v}; }));
    set(Direction::Up, edge(Side::Top, Side::Bottom, [](Rational v) { return RationalPoint{v, 1}; }));
    set(Direction::Down, edge(Side::Bottom, Side::Top, [](Rational v) { return RationalPoint{v, 0}; }));
    set(Direction::UpRight, corner(1, 1));
    set(Direction::UpLeft, corner(0, 1));
    set(Direction::DownLeft, corner(0, 0));
    set(Direction::DownRight, corner(1, 0));
    return table;
}

/// Map a point given in the unit coordinates of the square w into [0,1]^2.
inline RationalPoint to_absolute(const GscSpec& spec, const CellWord& w, const RationalPoint& local) {
    const GridPosition g = word_to_grid(spec, w);
    const BigInt scale = ipow(spec.base(), w.level());
    return RationalPoint{(Rational(g.x) + local.x) / Rational(scale), (Rational(g.y) + local.y) / Rational(scale)};
}

inline bool letters_in(const GscSpec& spec, const CellWord& w, std::size_t from = 0) {
    for (std::size_t k = from; k < w.letters.size(); ++k) {
        if (!spec.contains(w.letters[k])) return false;
    }
    return true;
}

/// phi_i(F) ∩ phi_j(F) for valid words i, j. A cell meeting itself or one of
/// its own subcells counts as Multiple.
inline IntersectionClass cells_intersection_class(const GscSpec& spec, const NeighborTable& table,
                                                  const CellWord& i, const CellWord& j) {
    require_valid_word(spec, i);
    require_valid_word(spec, j);
    if (i.level() > j.level()) return cells_intersection_class(spec, table, j, i);
    if (i.is_prefix_of(j)) return IntersectionClass::multiple();
    const CellWord coarse_at_fine = j.prefix(i.level());
    if (i.level() == j.level() || relative_position(spec, i, coarse_at_fine).kind != RelativePosition::Kind::Far) {
        // Collect the level-|j| squares around j that lie inside the square of i.
        IntersectionClass out;
        for (Direction d : kAllDirections) {
            auto q = shifted_word(spec, j, offset_of(d));
            if (!q || !i.is_prefix_of(*q) || !letters_in(spec, *q, i.level())) continue;
            const IntersectionClass& c = table.at(reverse(d));
            if (c.is_empty()) continue;
            IntersectionClass here = c;
            if (here.is_singleton()) here.point = to_absolute(spec, *q, here.point);
            out = out.merged(here);
            if (out.is_multiple()) break;
        }
        return out;
    }
    return IntersectionClass::empty();
}

inline IntersectionClass cells_intersection_class(const GscSpec& spec, const CellWord& i, const CellWord& j) {
    return cells_intersection_class(spec, neighbor_table(spec), i, j);
}

/// The same-level neighbor w(t) when it exists in D^|w| and touches w.
inline std::optional<CellWord> position_neighbor(const GscSpec& spec, const NeighborTable& table,
                                                 const CellWord& w, Direction t) {
    if (!table.touches(t)) return std::nullopt;
    auto q = shifted_word(spec, w, offset_of(t));
    if (!q || !letters_in(spec, *q)) return std::nullopt;
    return q;
}

inline std::optional<CellWord> position_neighbor(const GscSpec& spec, const CellWord& w, Direction t) {
    return position_neighbor(spec, neighbor_table(spec), w, t);
}

} // namespace carpetcut
