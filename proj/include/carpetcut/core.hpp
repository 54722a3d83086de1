#pragma once

// Carpet specifications, words over the digit set, lattice coordinates and
// exact rational points. Every decision path downstream uses only the integer
// and rational arithmetic defined here.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "carpetcut/error.hpp"

namespace carpetcut {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Digit {
    int x = 0;
    int y = 0;

    auto operator<=>(const Digit&) const = default;
};

/// A validated pair (N, D). Digits are kept sorted by (x, y), which is the
/// canonical order for every enumeration in the library.
class GscSpec {
public:
    GscSpec() = default;

    int base() const noexcept { return base_; }
    const std::vector<Digit>& digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }

    /// Index of (x, y) in digits(), or -1 when the pair is not a digit or lies
    /// outside {0..N-1}^2.
    int index_of(int x, int y) const noexcept {
        if (x < 0 || y < 0 || x >= base_ || y >= base_) return -1;
        return lookup_[static_cast<std::size_t>(x * base_ + y)];
    }
    int index_of(Digit d) const noexcept { return index_of(d.x, d.y); }
    bool contains(int x, int y) const noexcept { return index_of(x, y) >= 0; }
    bool contains(Digit d) const noexcept { return index_of(d) >= 0; }

    bool operator==(const GscSpec& other) const {
        return base_ == other.base_ && digits_ == other.digits_;
    }

    friend GscSpec validate_spec(int n_base, std::vector<Digit> digits);

private:
    int base_ = 0;
    std::vector<Digit> digits_;
    std::vector<int> lookup_;
};

inline GscSpec validate_spec(int n_base, std::vector<Digit> digits) {
    if (n_base < 2) throw Error(ErrorCode::BadBase, "N must be at least 2, got " + std::to_string(n_base));
    for (const Digit& d : digits) {
        if (d.x < 0 || d.y < 0 || d.x >= n_base || d.y >= n_base) {
            throw Error(ErrorCode::DigitOutOfRange, "digit (" + std::to_string(d.x) + "," +
                                                        std::to_string(d.y) + ") outside {0.." +
                                                        std::to_string(n_base - 1) + "}^2");
        }
    }
    std::sort(digits.begin(), digits.end());
    if (auto dup = std::adjacent_find(digits.begin(), digits.end()); dup != digits.end()) {
        throw Error(ErrorCode::DuplicateDigit,
                    "digit (" + std::to_string(dup->x) + "," + std::to_string(dup->y) + ") repeated");
    }
    const auto cells = static_cast<std::size_t>(n_base) * static_cast<std::size_t>(n_base);
    if (digits.size() <= 1 || digits.size() >= cells) {
        throw Error(ErrorCode::TrivialDigitSet,
                    "need 1 < |D| < N^2, got |D| = " + std::to_string(digits.size()));
    }
    GscSpec spec;
    spec.base_ = n_base;
    spec.lookup_.assign(cells, -1);
    for (std::size_t k = 0; k < digits.size(); ++k) {
        spec.lookup_[static_cast<std::size_t>(digits[k].x * n_base + digits[k].y)] = static_cast<int>(k);
    }
    spec.digits_ = std::move(digits);
    return spec;
}

/// A finite word over D. The empty word is the level-0 cell (identity map).
struct CellWord {
    std::vector<Digit> letters;

    std::size_t level() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }

    auto operator<=>(const CellWord&) const = default;

    CellWord prefix(std::size_t k) const {
        return CellWord{std::vector<Digit>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(k))};
    }
    CellWord suffix_from(std::size_t k) const {
        return CellWord{std::vector<Digit>(letters.begin() + static_cast<std::ptrdiff_t>(k), letters.end())};
    }
    bool is_prefix_of(const CellWord& other) const {
        return level() <= other.level() && std::equal(letters.begin(), letters.end(), other.letters.begin());
    }
    CellWord operator+(const CellWord& tail) const {
        CellWord out = *this;
        out.letters.insert(out.letters.end(), tail.letters.begin(), tail.letters.end());
        return out;
    }
    CellWord repeated(std::size_t times) const {
        CellWord out;
        for (std::size_t t = 0; t < times; ++t) out.letters.insert(out.letters.end(), letters.begin(), letters.end());
        return out;
    }
};

inline void require_valid_word(const GscSpec& spec, const CellWord& w) {
    for (const Digit& d : w.letters) {
        if (!spec.contains(d)) {
            throw Error(ErrorCode::InvalidWord,
                        "letter (" + std::to_string(d.x) + "," + std::to_string(d.y) + ") is not a digit");
        }
    }
}

struct GridPosition {
    BigInt x;
    BigInt y;
    std::size_t level = 0;

    bool operator==(const GridPosition&) const = default;
};

/// Lower-left lattice corner of the level-|w| square, i.e. sum of w_k * N^(|w|-k).
inline GridPosition word_to_grid(const GscSpec& spec, const CellWord& w) {
    GridPosition g;
    g.level = w.level();
    for (const Digit& d : w.letters) {
        g.x = g.x * spec.base() + d.x;
        g.y = g.y * spec.base() + d.y;
    }
    return g;
}

/// Inverse of word_to_grid at a fixed level. Letters are plain lattice digits;
/// membership in D is checked separately (require_valid_word).
inline CellWord grid_to_word(const GscSpec& spec, const GridPosition& g) {
    CellWord w;
    w.letters.resize(g.level);
    BigInt x = g.x;
    BigInt y = g.y;
    for (std::size_t k = g.level; k-- > 0;) {
        w.letters[k] = Digit{static_cast<int>(x % spec.base()), static_cast<int>(y % spec.base())};
        x /= spec.base();
        y /= spec.base();
    }
    if (x != 0 || y != 0 || g.x < 0 || g.y < 0) {
        throw Error(ErrorCode::InvalidWord, "grid position outside the level-" + std::to_string(g.level) + " lattice");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Directions

struct Offset {
    int x = 0;
    int y = 0;

    auto operator<=>(const Offset&) const = default;
    Offset operator+(Offset o) const { return {x + o.x, y + o.y}; }
    Offset operator-(Offset o) const { return {x - o.x, y - o.y}; }
    Offset operator-() const { return {-x, -y}; }
};

enum class Direction : int { Right, Up, Left, Down, UpRight, UpLeft, DownLeft, DownRight };

inline constexpr std::array<Direction, 8> kAllDirections = {
    Direction::Right, Direction::Up, Direction::Left, Direction::Down,
    Direction::UpRight, Direction::UpLeft, Direction::DownLeft, Direction::DownRight};

constexpr Offset offset_of(Direction d) {
    switch (d) {
    case Direction::Right: return {1, 0};
    case Direction::Up: return {0, 1};
    case Direction::Left: return {-1, 0};
    case Direction::Down: return {0, -1};
    case Direction::UpRight: return {1, 1};
    case Direction::UpLeft: return {-1, 1};
    case Direction::DownLeft: return {-1, -1};
    case Direction::DownRight: return {1, -1};
    }
    return {0, 0};
}

constexpr bool is_edge_direction(Direction d) { return static_cast<int>(d) < 4; }

constexpr Direction reverse(Direction d) {
    switch (d) {
    case Direction::Right: return Direction::Left;
    case Direction::Up: return Direction::Down;
    case Direction::Left: return Direction::Right;
    case Direction::Down: return Direction::Up;
    case Direction::UpRight: return Direction::DownLeft;
    case Direction::UpLeft: return Direction::DownRight;
    case Direction::DownLeft: return Direction::UpRight;
    case Direction::DownRight: return Direction::UpLeft;
    }
    return d;
}

inline std::optional<Direction> direction_from_offset(Offset o) {
    for (Direction d : kAllDirections) {
        if (offset_of(d) == o) return d;
    }
    return std::nullopt;
}

inline const char* direction_name(Direction d) {
    switch (d) {
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Left: return "left";
    case Direction::Down: return "down";
    case Direction::UpRight: return "up-right";
    case Direction::UpLeft: return "up-left";
    case Direction::DownLeft: return "down-left";
    case Direction::DownRight: return "down-right";
    }
    return "?";
}

struct RelativePosition {
    enum class Kind { Same, Edge, Corner, Far };
    Kind kind = Kind::Far;
    Direction direction = Direction::Right; // meaningful for Edge and Corner

    bool operator==(const RelativePosition& o) const {
        if (kind != o.kind) return false;
        return kind == Kind::Same || kind == Kind::Far || direction == o.direction;
    }
};

/// Clamped lattice offset of j relative to i; each coordinate is exact in
/// {-1,0,1} and saturates at +-2 once the squares are at least two apart.
inline Offset clamped_offset(const GscSpec& spec, std::span<const Digit> i, std::span<const Digit> j) {
    int dx = 0;
    int dy = 0;
    const int n = spec.base();
    auto advance = [n](int d, int delta) {
        if (d >= 2 || d <= -2) return d;
        return std::clamp(n * d + delta, -2, 2);
    };
    for (std::size_t k = 0; k < i.size(); ++k) {
        dx = advance(dx, j[k].x - i[k].x);
        dy = advance(dy, j[k].y - i[k].y);
    }
    return {dx, dy};
}

/// Where square j sits as seen from square i (same level).
inline RelativePosition relative_position(const GscSpec& spec, const CellWord& i, const CellWord& j) {
    if (i.level() != j.level()) {
        throw Error(ErrorCode::LevelMismatch,
                    "levels " + std::to_string(i.level()) + " and " + std::to_string(j.level()));
    }
    const Offset o = clamped_offset(spec, i.letters, j.letters);
    RelativePosition rp;
    if (o == Offset{0, 0}) {
        rp.kind = RelativePosition::Kind::Same;
    } else if (auto d = direction_from_offset(o)) {
        rp.kind = is_edge_direction(*d) ? RelativePosition::Kind::Edge : RelativePosition::Kind::Corner;
        rp.direction = *d;
    } else {
        rp.kind = RelativePosition::Kind::Far;
    }
    return rp;
}

/// The same-level square at lattice offset `o` from w (|o.x|,|o.y| <= 1),
/// computed by carrying through the letters. Returns nullopt when the square
/// leaves [0,1]^2. Letters of the result are lattice digits and need not be in D.
inline std::optional<CellWord> shifted_word(const GscSpec& spec, const CellWord& w, Offset o) {
    CellWord out = w;
    const int n = spec.base();
    int cx = o.x;
    int cy = o.y;
    for (std::size_t k = out.letters.size(); k-- > 0 && (cx != 0 || cy != 0);) {
        int x = out.letters[k].x + cx;
        int y = out.letters[k].y + cy;
        cx = x < 0 ? -1 : (x >= n ? 1 : 0);
        cy = y < 0 ? -1 : (y >= n ? 1 : 0);
        out.letters[k] = Digit{x - cx * n, y - cy * n};
    }
    if (cx != 0 || cy != 0) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------
// Static boundary geometry

enum class Side { Left, Right, Top, Bottom };

/// Digits of the 1-D self-similar set F meets along a side of the unit square.
inline std::vector<int> boundary_digit_set(const GscSpec& spec, Side side) {
    std::vector<int> out;
    const int last = spec.base() - 1;
    for (const Digit& d : spec.digits()) {
        switch (side) {
        case Side::Left: if (d.x == 0) out.push_back(d.y); break;
        case Side::Right: if (d.x == last) out.push_back(d.y); break;
        case Side::Bottom: if (d.y == 0) out.push_back(d.x); break;
        case Side::Top: if (d.y == last) out.push_back(d.x); break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Corner (cx, cy) in {0,1}^2 of the unit square lies in F iff the matching
/// extreme digit is present.
inline bool corner_in_F(const GscSpec& spec, int cx, int cy) {
    const int last = spec.base() - 1;
    return spec.contains(cx * last, cy * last);
}

// ---------------------------------------------------------------------------
// Rational points

struct RationalPoint {
    Rational x;
    Rational y;

    bool operator==(const RationalPoint&) const = default;
    friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

/// Unique fixed point of phi_w: the value of the periodic expansion w^infinity.
inline RationalPoint fixed_point(const GscSpec& spec, const CellWord& w) {
    if (w.empty()) throw Error(ErrorCode::EmptyWord, "fixed point needs a non-empty word");
    const GridPosition g = word_to_grid(spec, w);
    BigInt scale = 1;
    for (std::size_t k = 0; k < w.level(); ++k) scale *= spec.base();
    const BigInt denom = scale - 1;
    return RationalPoint{Rational(g.x, denom), Rational(g.y, denom)};
}

/// phi_w(p) in exact arithmetic.
inline RationalPoint apply_word(const GscSpec& spec, const CellWord& w, const RationalPoint& p) {
    RationalPoint out = p;
    for (std::size_t k = w.level(); k-- > 0;) {
        out.x = (out.x + w.letters[k].x) / spec.base();
        out.y = (out.y + w.letters[k].y) / spec.base();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Eventually periodic base-N expansions of rationals in [0,1]

struct DigitExpansion {
    std::vector<int> preperiod;
    std::vector<int> period; // never empty

    int at(std::size_t k) const {
        if (k < preperiod.size()) return preperiod[k];
        return period[(k - preperiod.size()) % period.size()];
    }
    bool operator==(const DigitExpansion&) const = default;
};

/// All base-N expansions of x in [0,1]: one, or two when x is a non-zero
/// N-adic rational (terminating form and the (N-1)-tail form).
inline std::vector<DigitExpansion> base_expansions(const Rational& x, int n_base) {
    if (x < 0 || x > 1) return {};
    if (x == 1) return {DigitExpansion{{}, {n_base - 1}}};
    const BigInt q = boost::multiprecision::denominator(x);
    BigInt r = boost::multiprecision::numerator(x);
    std::map<BigInt, std::size_t> seen;
    std::vector<int> digits;
    while (!seen.contains(r)) {
        seen.emplace(r, digits.size());
        r *= n_base;
        digits.push_back(static_cast<int>(r / q));
        r %= q;
    }
    const std::size_t start = seen.at(r);
    DigitExpansion main{std::vector<int>(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start)),
                        std::vector<int>(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end())};
    std::vector<DigitExpansion> out;
    if (r == 0 && x != 0) {
        // Terminating: period is {0}; build the twin ending in (N-1)^infinity.
        std::vector<int> pre = main.preperiod;
        while (!pre.empty() && pre.back() == 0) pre.pop_back();
        DigitExpansion finite{pre, {0}};
        std::vector<int> twin_pre = pre;
        twin_pre.back() -= 1;
        out.push_back(finite);
        out.push_back(DigitExpansion{twin_pre, {n_base - 1}});
    } else if (x == 0) {
        out.push_back(DigitExpansion{{}, {0}});
    } else {
        out.push_back(main);
    }
    std::sort(out.begin(), out.end(), [](const DigitExpansion& a, const DigitExpansion& b) {
        return std::tie(a.preperiod, a.period) < std::tie(b.preperiod, b.period);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Text forms

inline std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string to_string(const RationalPoint& p) { return to_string(p.x) + "," + to_string(p.y); }

inline std::string to_string(Digit d) { return "(" + std::to_string(d.x) + "," + std::to_string(d.y) + ")"; }

inline std::string to_string(const CellWord& w) {
    std::string out;
    for (const Digit& d : w.letters) out += to_string(d);
    return out.empty() ? "()" : out;
}

inline BigInt ipow(int base, std::size_t exp) {
    BigInt out = 1;
    for (std::size_t k = 0; k < exp; ++k) out *= base;
    return out;
}

} // namespace carpetcut
