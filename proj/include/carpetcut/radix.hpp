#pragma once

// Intersections of two 1-D digit systems C_A = { sum a_k N^-k : a_k in A }.
//
// Write x = sum a_k N^-k, y = sum b_k N^-k and s_k = N^k * sum_{j<=k} (a_j - b_j) N^-j,
// an integer obeying s_k = N s_{k-1} + (a_k - b_k). Then
//     N^k (x - y) = s_k + N^k * sum_{j>k} (a_j - b_j) N^-j,
// and the tail satisfies |sum_{j>k} (a_j - b_j) N^-j| <= (N-1) * sum_{j>k} N^-j = N^-k.
// So x = y forces |s_k| <= 1 for every k, and conversely an infinite run with
// s_k in {-1,0,1} gives |x - y| <= 2 N^-k for all k, i.e. x = y. The carry
// automaton on {-1,0,1} therefore decides C_A ∩ C_B exactly.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "carpetcut/core.hpp"

namespace carpetcut {

enum class IntersectionTag { Empty = 0, Singleton = 1, Multiple = 2 };

inline const char* tag_name(IntersectionTag t) {
    switch (t) {
    case IntersectionTag::Empty: return "Empty";
    case IntersectionTag::Singleton: return "Singleton";
    case IntersectionTag::Multiple: return "Multiple";
    }
    return "?";
}

class CarryAutomaton {
public:
    struct Move {
        int a;
        int b;
        int to;
    };

    /// `bound` is the largest carry magnitude kept; 1 is exact, larger values
    /// only add states that can never survive.
    CarryAutomaton(std::vector<int> a_digits, std::vector<int> b_digits, int n_base, int bound = 1)
        : n_(n_base), bound_(bound), a_(std::move(a_digits)), b_(std::move(b_digits)) {
        if (n_ < 2) throw Error(ErrorCode::BadBase, "N must be at least 2");
        if (a_.empty() || b_.empty()) throw Error(ErrorCode::EmptyDigitSet, "digit sets must be non-empty");
        std::sort(a_.begin(), a_.end());
        a_.erase(std::unique(a_.begin(), a_.end()), a_.end());
        std::sort(b_.begin(), b_.end());
        b_.erase(std::unique(b_.begin(), b_.end()), b_.end());
        alive_.assign(static_cast<std::size_t>(2 * bound_ + 1), true);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int s = -bound_; s <= bound_; ++s) {
                if (!alive_[idx(s)]) continue;
                if (moves(s).empty()) {
                    alive_[idx(s)] = false;
                    changed = true;
                }
            }
        }
    }

    int base() const noexcept { return n_; }
    int bound() const noexcept { return bound_; }
    bool survives(int s) const { return s >= -bound_ && s <= bound_ && alive_[idx(s)]; }

    /// Transitions from s into surviving states, in lexicographic (a, b) order.
    std::vector<Move> moves(int s) const {
        std::vector<Move> out;
        for (int a : a_) {
            for (int b : b_) {
                const int t = n_ * s + (a - b);
                if (t >= -bound_ && t <= bound_ && alive_[idx(t)]) out.push_back({a, b, t});
            }
        }
        return out;
    }

private:
    std::size_t idx(int s) const { return static_cast<std::size_t>(s + bound_); }

    int n_;
    int bound_;
    std::vector<int> a_;
    std::vector<int> b_;
    std::vector<bool> alive_;
};

/// Pair search over two surviving runs: d tracks N^k times the difference of
/// the two A-side prefixes, saturated at +-2. Once |d| >= 2 it stays there,
/// and the two limits differ by at least N^-k.
inline bool has_divergent_pair(const CarryAutomaton& aut) {
    using Node = std::tuple<int, int, int>;
    std::set<Node> seen;
    std::vector<Node> stack{{0, 0, 0}};
    seen.insert(stack.front());
    const int n = aut.base();
    while (!stack.empty()) {
        auto [s, t, d] = stack.back();
        stack.pop_back();
        for (const auto& m1 : aut.moves(s)) {
            for (const auto& m2 : aut.moves(t)) {
                const int nd = std::clamp(n * d + (m1.a - m2.a), -2, 2);
                if (std::abs(nd) >= 2) return true;
                Node next{m1.to, m2.to, nd};
                if (seen.insert(next).second) stack.push_back(next);
            }
        }
    }
    return false;
}

inline IntersectionTag intersect_class(const std::vector<int>& a, const std::vector<int>& b, int n_base,
                                       int bound = 1) {
    const CarryAutomaton aut(a, b, n_base, bound);
    if (!aut.survives(0)) return IntersectionTag::Empty;
    return has_divergent_pair(aut) ? IntersectionTag::Multiple : IntersectionTag::Singleton;
}

/// The common value when C_A ∩ C_B is a single point.
inline Rational singleton_value(const std::vector<int>& a, const std::vector<int>& b, int n_base) {
    const CarryAutomaton aut(a, b, n_base);
    if (!aut.survives(0) || has_divergent_pair(aut)) {
        throw Error(ErrorCode::NotSingleton, "intersection is not a single point");
    }
    // The least move out of each state is a fixed choice, so the run is
    // periodic as soon as a state repeats.
    std::map<int, std::size_t> first_seen;
    std::vector<int> digits;
    int s = 0;
    while (!first_seen.contains(s)) {
        first_seen.emplace(s, digits.size());
        const auto m = aut.moves(s).front();
        digits.push_back(m.a);
        s = m.to;
    }
    const std::size_t start = first_seen.at(s);
    Rational pre = 0;
    Rational scale = 1;
    for (std::size_t k = 0; k < start; ++k) {
        scale /= n_base;
        pre += scale * digits[k];
    }
    Rational cycle = 0;
    Rational inner = 1;
    for (std::size_t k = start; k < digits.size(); ++k) {
        inner /= n_base;
        cycle += inner * digits[k];
    }
    // cycle repeats forever: cycle * (1 + inner + inner^2 + ...) = cycle / (1 - inner)
    return pre + scale * cycle / (1 - inner);
}

} // namespace carpetcut
