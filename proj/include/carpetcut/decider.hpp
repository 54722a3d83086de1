#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "carpetcut/adjacency.hpp"
#include "carpetcut/core.hpp"
#include "carpetcut/fragility.hpp"
#include "carpetcut/hata.hpp"
#include "carpetcut/window.hpp"

namespace carpetcut {

/// Hard stop for every depth iteration.
inline constexpr std::size_t kDefaultMaxDepth = 6561 + 3;

inline std::size_t max_depth_from_env() {
    if (const char* raw = std::getenv("CARPETCUT_MAX_DEPTH")) {
        try {
            const unsigned long v = std::stoul(raw);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return kDefaultMaxDepth;
}

// ---------------------------------------------------------------------------
// Existence of essential cut vertices at every depth

/// b_n for n >= 1: preperiod holds b_1, b_2, ... and the period repeats forever.
struct EssentialSequence {
    std::vector<bool> preperiod;
    std::vector<bool> period;

    bool at(std::size_t n) const {
        if (n - 1 < preperiod.size()) return preperiod[n - 1];
        return period[(n - 1 - preperiod.size()) % period.size()];
    }

    /// Smallest n >= 2 with b_n false.
    std::optional<std::size_t> first_false_from_two() const {
        const std::size_t horizon = preperiod.size() + period.size() + 1;
        for (std::size_t n = 2; n <= horizon; ++n) {
            if (!at(n)) return n;
        }
        return std::nullopt;
    }
};

inline void require_connected_non_fragile(const GscSpec& spec) {
    if (!is_connected_gsc(spec)) throw Error(ErrorCode::DisconnectedInput, "the carpet is disconnected");
    if (auto w = fragility_witness(spec)) {
        throw Error(ErrorCode::FragileInput, "the carpet is fragile at " + to_string(w->point));
    }
}

/// Breadth-first over all digit sequences at once: R_n holds the sep-true
/// states after n digits (a sep-false state never becomes sep-true again).
/// The sequence R_n is a function of R_{n-1}, so it is eventually periodic.
/// No input checks here; the result is meaningful for any connected carpet.
inline EssentialSequence essential_sequence_unchecked(const GscSpec& spec,
                                                      std::size_t max_depth = max_depth_from_env()) {
    const WindowAutomaton aut(spec);
    std::map<std::vector<int>, WindowState> current{{window_root().key(), window_root()}};
    std::map<std::vector<std::vector<int>>, std::size_t> seen;
    std::vector<bool> bits;
    for (std::size_t n = 1; n <= max_depth; ++n) {
        std::map<std::vector<int>, WindowState> next;
        for (const auto& [key, s] : current) {
            for (const Digit& d : spec.digits()) {
                WindowState t = aut.step(s, d);
                if (t.sep()) next.emplace(t.key(), std::move(t));
            }
        }
        bits.push_back(!next.empty());
        std::vector<std::vector<int>> signature;
        signature.reserve(next.size());
        for (const auto& [key, s] : next) signature.push_back(key);
        if (auto it = seen.find(signature); it != seen.end()) {
            const std::size_t m = it->second;
            // R_n = R_m: b_{n+1} = b_{m+1} and so on.
            return EssentialSequence{std::vector<bool>(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(m)),
                                     std::vector<bool>(bits.begin() + static_cast<std::ptrdiff_t>(m), bits.end())};
        }
        seen.emplace(std::move(signature), n);
        current = std::move(next);
    }
    throw Error(ErrorCode::Inconclusive,
                "reachable state sets did not repeat within depth " + std::to_string(max_depth));
}

inline EssentialSequence essential_exists_at_depth(const GscSpec& spec, std::size_t max_depth = max_depth_from_env()) {
    require_connected_non_fragile(spec);
    return essential_sequence_unchecked(spec, max_depth);
}

// ---------------------------------------------------------------------------
// Repetition certificates

struct RepetitionCertificate {
    CellWord i;
    std::vector<CellWord> lambda;
    std::vector<CellWord> lambda_prime;
};

inline bool check_repetition_certificate(const GscSpec& spec, const CellWord& i, const std::vector<CellWord>& lambda,
                                         const std::vector<CellWord>& lambda_prime) {
    if (i.empty()) throw Error(ErrorCode::BadPartition, "the repeated word must be non-empty");
    const std::size_t n = i.level();
    auto check_word = [&](const CellWord& w) {
        if (w.level() != n) throw Error(ErrorCode::BadPartition, to_string(w) + " has the wrong level");
        if (!letters_in(spec, w)) throw Error(ErrorCode::BadPartition, to_string(w) + " is not a word over D");
        if (w == i) throw Error(ErrorCode::BadPartition, "the partition contains the repeated word");
    };
    if (!letters_in(spec, i)) throw Error(ErrorCode::BadPartition, to_string(i) + " is not a word over D");
    for (const auto& w : lambda) check_word(w);
    for (const auto& w : lambda_prime) check_word(w);

    // (1) an exact partition of D^n minus i
    std::map<CellWord, int> side;
    for (const auto& w : lambda) {
        if (!side.emplace(w, 0).second) return false;
    }
    for (const auto& w : lambda_prime) {
        if (!side.emplace(w, 1).second) return false;
    }
    const BigInt total = ipow(static_cast<int>(spec.size()), n) - 1;
    if (BigInt(side.size()) != total) return false;

    const NeighborTable table = neighbor_table(spec);

    // (2) no contact across the partition
    for (const auto& [w, s] : side) {
        if (s != 0) continue;
        for (Direction d : kAllDirections) {
            if (!table.touches(d)) continue;
            auto q = shifted_word(spec, w, offset_of(d));
            if (!q) continue;
            auto it = side.find(*q);
            if (it != side.end() && it->second == 1) return false;
        }
    }

    // (3) phi_i(X_1) and phi_i(X'_1) each avoid X_1 or X'_1
    std::vector<std::pair<CellWord, int>> around;
    for (Direction d : kAllDirections) {
        auto q = shifted_word(spec, i, offset_of(d));
        if (!q) continue;
        auto it = side.find(*q);
        if (it != side.end()) around.emplace_back(*q, it->second);
    }
    bool hits[2][2] = {{false, false}, {false, false}};
    for (const auto& [j, s] : side) {
        const CellWord inner = i + j;
        for (const auto& [q, t] : around) {
            if (hits[s][t]) continue;
            if (!cells_intersection_class(spec, table, q, inner).is_empty()) hits[s][t] = true;
        }
    }
    if ((hits[0][0] && hits[0][1]) || (hits[1][0] && hits[1][1])) return false;

    // (4) a whole level-1 subtree on each side
    const BigInt subtree = ipow(static_cast<int>(spec.size()), n - 1);
    std::map<std::pair<Digit, int>, BigInt> count;
    for (const auto& [w, s] : side) count[{w.letters.front(), s}] += 1;
    bool whole[2] = {false, false};
    for (const auto& [k, c] : count) {
        if (c == subtree) whole[k.second] = true;
    }
    return whole[0] && whole[1];
}

// ---------------------------------------------------------------------------
// Points with eventually periodic addresses

struct EventuallyPeriodicAddress {
    CellWord preperiod;
    CellWord period;

    Digit at(std::size_t k) const {
        if (k < preperiod.level()) return preperiod.letters[k];
        return period.letters[(k - preperiod.level()) % period.level()];
    }
    auto operator<=>(const EventuallyPeriodicAddress&) const = default;
};

inline std::string to_string(const EventuallyPeriodicAddress& a) {
    std::string out = a.preperiod.empty() ? "" : to_string(a.preperiod);
    return out + "[" + to_string(a.period) + "]";
}

/// Shortest preperiod and primitive period describing the same sequence.
inline EventuallyPeriodicAddress normalize(EventuallyPeriodicAddress a) {
    auto& p = a.period.letters;
    for (std::size_t len = 1; len <= p.size(); ++len) {
        if (p.size() % len != 0) continue;
        bool ok = true;
        for (std::size_t k = len; k < p.size() && ok; ++k) ok = p[k] == p[k - len];
        if (ok) {
            p.resize(len);
            break;
        }
    }
    auto& pre = a.preperiod.letters;
    while (!pre.empty() && pre.back() == p.back()) {
        pre.pop_back();
        std::rotate(p.rbegin(), p.rbegin() + 1, p.rend());
    }
    return a;
}

inline RationalPoint address_point(const GscSpec& spec, const EventuallyPeriodicAddress& a) {
    return apply_word(spec, a.preperiod, fixed_point(spec, a.period));
}

inline std::vector<EventuallyPeriodicAddress> addresses_of(const GscSpec& spec, const RationalPoint& p) {
    std::set<EventuallyPeriodicAddress> out;
    for (const auto& ex : base_expansions(p.x, spec.base())) {
        for (const auto& ey : base_expansions(p.y, spec.base())) {
            const std::size_t pre = std::max(ex.preperiod.size(), ey.preperiod.size());
            const std::size_t per = std::lcm(ex.period.size(), ey.period.size());
            EventuallyPeriodicAddress a;
            bool inside = true;
            for (std::size_t k = 0; k < pre + per && inside; ++k) {
                const Digit d{ex.at(k), ey.at(k)};
                inside = spec.contains(d);
                (k < pre ? a.preperiod : a.period).letters.push_back(d);
            }
            if (inside) out.insert(normalize(std::move(a)));
        }
    }
    return {out.begin(), out.end()};
}

struct CutPointReport {
    bool cut_point = false;
    int components = 0; // components of F minus the point
    std::size_t cycle_start = 0;
    std::size_t cycle_length = 0;
};

/// Follows the cells holding p level by level. Once the automaton state and
/// the phase of the address schedule repeat, the block map over one cycle
/// decides which window blocks end up in the same component.
inline CutPointReport analyze_point(const GscSpec& spec, const RationalPoint& p,
                                    std::size_t max_depth = max_depth_from_env()) {
    const auto addrs = addresses_of(spec, p);
    if (addrs.empty()) throw Error(ErrorCode::PointNotInCarpet, to_string(p) + " is not in the carpet");
    std::size_t pre = 0;
    std::size_t per = 1;
    for (const auto& a : addrs) {
        pre = std::max(pre, a.preperiod.level());
        per = std::lcm(per, a.period.level());
    }
    const int n = spec.base();
    const WindowAutomaton aut(spec);
    WindowState s = window_root();
    std::vector<Offset> delta(addrs.size(), Offset{0, 0});
    long long frozen = 0;
    std::map<std::vector<int>, std::size_t> seen;
    std::vector<std::vector<int>> maps;
    std::vector<int> frozen_in_step;

    for (std::size_t k = 0; k < max_depth; ++k) {
        if (k >= pre) {
            std::vector<int> key = s.key();
            key.push_back(static_cast<int>((k - pre) % per));
            for (const Offset& o : delta) {
                key.push_back(o.x);
                key.push_back(o.y);
            }
            if (auto it = seen.find(key); it != seen.end()) {
                const std::size_t start = it->second;
                std::vector<int> f(s.block_count());
                std::iota(f.begin(), f.end(), 0);
                for (std::size_t t = start; t < k; ++t) {
                    if (frozen_in_step[t] != 0) {
                        throw std::logic_error("a component froze inside a repeating cycle");
                    }
                    for (int& b : f) b = maps[t][static_cast<std::size_t>(b)];
                }
                std::set<int> image;
                for (std::size_t b = 0; b < f.size(); ++b) image.insert(static_cast<int>(b));
                for (std::size_t r = 0; r <= f.size(); ++r) {
                    std::set<int> next;
                    for (int b : image) next.insert(f[static_cast<std::size_t>(b)]);
                    image = std::move(next);
                }
                CutPointReport out;
                out.components = static_cast<int>(frozen + static_cast<long long>(image.size()));
                out.cut_point = out.components >= 2;
                out.cycle_start = start;
                out.cycle_length = k - start;
                return out;
            }
            seen.emplace(std::move(key), k);
        }
        Offset low = delta.front();
        for (const Offset& o : delta) {
            low.x = std::min(low.x, o.x);
            low.y = std::min(low.y, o.y);
        }
        std::vector<Offset> children;
        const Digit lead = addrs.front().at(k);
        for (std::size_t a = 0; a < addrs.size(); ++a) {
            const Digit d = addrs[a].at(k);
            const Offset c = delta[a] - low;
            children.push_back(Offset{c.x * n + d.x, c.y * n + d.y});
            delta[a] = Offset{delta[a].x * n + d.x - lead.x, delta[a].y * n + d.y - lead.y};
        }
        WindowTransition tr = aut.advance(s, children);
        frozen += tr.frozen_any;
        frozen_in_step.push_back(tr.frozen_any);
        maps.push_back(std::move(tr.block_map));
        s = std::move(tr.state);
    }
    throw Error(ErrorCode::Inconclusive, "no repetition within depth " + std::to_string(max_depth));
}

inline bool is_cut_point(const GscSpec& spec, const RationalPoint& p) { return analyze_point(spec, p).cut_point; }

struct CandidatePoint {
    Digit digit;
    RationalPoint point;
    bool cut_point = false;
};

/// Fixed points of the level-1 maps, each tested.
inline std::vector<CandidatePoint> unique_cutpoint_candidates(const GscSpec& spec) {
    std::vector<CandidatePoint> out;
    for (const Digit& d : spec.digits()) {
        const RationalPoint p = fixed_point(spec, CellWord{{d}});
        out.push_back(CandidatePoint{d, p, is_cut_point(spec, p)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// i essential with two components, and i i essential

inline bool corollary_double_check(const GscSpec& spec, const CellWord& i,
                                   std::uint64_t explicit_cap = kDefaultMaxVertices) {
    if (i.empty() || !letters_in(spec, i)) throw Error(ErrorCode::InvalidWord, to_string(i) + " is not a word over D");
    std::optional<HataGraph> g;
    try {
        g.emplace(spec, i.level(), explicit_cap);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::LevelTooLarge) throw;
        throw Error(ErrorCode::PreconditionUnverified, "Γ_" + std::to_string(i.level()) + " is too large to check");
    }
    const std::uint64_t v = *g->id_of(i);
    if (!g->connected() || !g->is_essential(v) || g->separated_sizes(v).size() != 2) {
        throw Error(ErrorCode::PreconditionUnverified,
                    to_string(i) + " is not an essential cut vertex with exactly two components");
    }
    const CellWord doubled = i + i;
    try {
        const HataGraph big(spec, doubled.level(), explicit_cap);
        return big.is_essential(*big.id_of(doubled));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::LevelTooLarge) throw;
    }
    return WindowAutomaton(spec).run(doubled).sep();
}

// ---------------------------------------------------------------------------
// Verdicts

struct Verdict {
    enum class Kind { Disconnected, Fragile, NoCutPoints, HasCutPoints };
    Kind kind = Kind::Disconnected;
    std::optional<FragilityWitness> witness; // Fragile
    std::size_t witness_level = 0;           // NoCutPoints
    CellWord omega;                          // HasCutPoints
    RationalPoint point;                     // Fragile and HasCutPoints
    std::optional<RepetitionCertificate> certificate;
    std::size_t lasso_cycle = 0; // HasCutPoints without certificate
};

struct DecideOptions {
    std::size_t max_depth = max_depth_from_env();
    std::uint64_t certificate_vertices = 20'000; // largest Γ_m scanned for certificates
    std::uint64_t lasso_words = 5'000;           // largest |D|^m scanned for lasso words
};

/// Scan words by length, then canonical order, for a component bipartition
/// of Γ_m minus the word satisfying the repetition conditions.
inline std::optional<RepetitionCertificate> find_certificate(const GscSpec& spec, std::uint64_t max_vertices) {
    for (std::size_t m = 1;; ++m) {
        std::optional<HataGraph> g;
        try {
            g.emplace(spec, m, max_vertices);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::LevelTooLarge) return std::nullopt;
            throw;
        }
        for (std::uint64_t v = 0; v < g->vertex_count(); ++v) {
            if (!g->is_essential(v)) continue;
            std::map<int, std::vector<std::uint64_t>> parts;
            for (std::uint64_t u = 0; u < g->vertex_count(); ++u) {
                if (u != v) parts[g->component_label_without(v, u)].push_back(u);
            }
            std::vector<std::vector<std::uint64_t>> comps;
            for (auto& [label, members] : parts) comps.push_back(std::move(members));
            std::sort(comps.begin(), comps.end());
            if (comps.size() < 2 || comps.size() > 12) continue;
            const std::uint64_t choices = std::uint64_t{1} << (comps.size() - 1);
            for (std::uint64_t mask = 1; mask < choices; ++mask) {
                RepetitionCertificate cert;
                cert.i = g->word(v);
                for (std::size_t c = 0; c < comps.size(); ++c) {
                    const bool second = c > 0 && ((mask >> (c - 1)) & 1U);
                    for (std::uint64_t u : comps[c]) (second ? cert.lambda_prime : cert.lambda).push_back(g->word(u));
                }
                std::sort(cert.lambda.begin(), cert.lambda.end());
                std::sort(cert.lambda_prime.begin(), cert.lambda_prime.end());
                if (check_repetition_certificate(spec, cert.i, cert.lambda, cert.lambda_prime)) return cert;
            }
        }
    }
}

/// Trajectory of omega^infinity: nullopt if sep ever fails, else the cycle length
/// in repetitions of omega.
inline std::optional<std::size_t> sep_lasso(const WindowAutomaton& aut, const CellWord& omega, std::size_t max_depth) {
    WindowState s = window_root();
    std::map<std::vector<int>, std::size_t> seen;
    for (std::size_t r = 0; r * omega.level() < max_depth; ++r) {
        if (r > 0) {
            auto [it, fresh] = seen.emplace(s.key(), r);
            if (!fresh) return r - it->second;
        }
        for (const Digit& d : omega.letters) {
            s = aut.step(s, d);
            if (!s.sep()) return std::nullopt;
        }
    }
    return std::nullopt;
}

inline Verdict decide_cut_points(const GscSpec& spec, const DecideOptions& opt = {}) {
    Verdict v;
    if (!is_connected_gsc(spec)) {
        v.kind = Verdict::Kind::Disconnected;
        return v;
    }
    if (auto w = fragility_witness(spec)) {
        v.kind = Verdict::Kind::Fragile;
        v.point = w->point;
        v.witness = std::move(w);
        return v;
    }
    const EssentialSequence bits = essential_exists_at_depth(spec, opt.max_depth);
    if (auto n = bits.first_false_from_two()) {
        v.kind = Verdict::Kind::NoCutPoints;
        v.witness_level = *n;
        return v;
    }
    v.kind = Verdict::Kind::HasCutPoints;
    if (auto cert = find_certificate(spec, opt.certificate_vertices)) {
        v.omega = cert->i;
        v.point = fixed_point(spec, cert->i);
        v.certificate = std::move(cert);
        return v;
    }
    const WindowAutomaton aut(spec);
    std::uint64_t words = 1;
    for (std::size_t m = 1; words * spec.size() <= opt.lasso_words; ++m) {
        words *= spec.size();
        for (std::uint64_t id = 0; id < words; ++id) {
            CellWord omega;
            omega.letters.resize(m);
            std::uint64_t rest = id;
            for (std::size_t k = m; k-- > 0;) {
                omega.letters[k] = spec.digits()[rest % spec.size()];
                rest /= spec.size();
            }
            auto cycle = sep_lasso(aut, omega, opt.max_depth);
            if (!cycle) continue;
            const RationalPoint p = fixed_point(spec, omega);
            if (!analyze_point(spec, p, opt.max_depth).cut_point) continue;
            v.omega = omega;
            v.point = p;
            v.lasso_cycle = *cycle;
            return v;
        }
    }
    throw Error(ErrorCode::Inconclusive, "every depth has essential cut vertices but no witness word was found");
}

} // namespace carpetcut
