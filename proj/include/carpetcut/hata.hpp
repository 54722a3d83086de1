#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "carpetcut/adjacency.hpp"
#include "carpetcut/core.hpp"

namespace carpetcut {

inline constexpr std::uint64_t kDefaultMaxVertices = 2'000'000;

struct CutVertexReport {
    CellWord vertex;
    std::vector<std::uint64_t> component_sizes; // descending
    bool essential = false;
};

/// Explicit Γ_n. Vertex ids are the base-|D| numerals of the digit indices,
/// so id order is the canonical word order.
class HataGraph {
public:
    HataGraph(GscSpec spec, std::size_t level, std::uint64_t max_vertices = kDefaultMaxVertices)
        : spec_(std::move(spec)), level_(level) {
        if (level_ < 1) throw Error(ErrorCode::BadParameter, "Hata graph level must be at least 1");
        const std::uint64_t d = spec_.size();
        std::uint64_t count = 1;
        for (std::size_t k = 0; k < level_; ++k) {
            if (count > max_vertices / d + 1) {
                count = max_vertices + 1;
                break;
            }
            count *= d;
        }
        if (count > max_vertices) {
            throw Error(ErrorCode::LevelTooLarge, "|D|^" + std::to_string(level_) + " exceeds the vertex cap " +
                                                      std::to_string(max_vertices));
        }
        vertex_count_ = count;
        build_edges();
        analyze();
    }

    const GscSpec& spec() const noexcept { return spec_; }
    std::size_t level() const noexcept { return level_; }
    std::uint64_t vertex_count() const noexcept { return vertex_count_; }
    std::uint64_t edge_count() const noexcept { return targets_.size() / 2; }
    bool connected() const noexcept { return component_count_ == 1; }
    std::size_t component_count() const noexcept { return component_count_; }

    std::span<const std::uint32_t> neighbors(std::uint64_t v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    CellWord word(std::uint64_t id) const {
        CellWord w;
        w.letters.resize(level_);
        for (std::size_t k = level_; k-- > 0;) {
            w.letters[k] = spec_.digits()[id % spec_.size()];
            id /= spec_.size();
        }
        return w;
    }

    std::optional<std::uint64_t> id_of(const CellWord& w) const {
        if (w.level() != level_) return std::nullopt;
        std::uint64_t id = 0;
        for (const Digit& d : w.letters) {
            const int k = spec_.index_of(d);
            if (k < 0) return std::nullopt;
            id = id * spec_.size() + static_cast<std::uint64_t>(k);
        }
        return id;
    }

    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges() const {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        out.reserve(edge_count());
        for (std::uint64_t u = 0; u < vertex_count_; ++u) {
            for (std::uint32_t v : neighbors(u)) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }

    bool is_cut_vertex(std::uint64_t v) const { return separated_sizes(v).size() >= 2; }

    std::vector<std::uint64_t> cut_vertices() const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t v = 0; v < vertex_count_; ++v) {
            if (is_cut_vertex(v)) out.push_back(v);
        }
        return out;
    }

    /// Component sizes of G - {v} restricted to v's own component, descending.
    std::vector<std::uint64_t> separated_sizes(std::uint64_t v) const {
        std::vector<std::uint64_t> sizes;
        std::uint64_t covered = 0;
        for (std::uint32_t c : split_children_[v]) {
            sizes.push_back(subtree_[c]);
            covered += subtree_[c];
        }
        const std::uint64_t rest = component_size_[component_[v]] - 1 - covered;
        if (rest > 0) sizes.push_back(rest);
        std::sort(sizes.rbegin(), sizes.rend());
        return sizes;
    }

    /// Label of u's component in G - {v}: the index of the DFS child subtree
    /// holding u, or -1 for the part containing v's DFS parent.
    int component_label_without(std::uint64_t v, std::uint64_t u) const {
        const auto& kids = split_children_[v];
        for (std::size_t k = 0; k < kids.size(); ++k) {
            const std::uint32_t c = kids[k];
            if (disc_[u] >= disc_[c] && disc_[u] < disc_[c] + subtree_[c]) return static_cast<int>(k);
        }
        return -1;
    }

    bool is_essential(std::uint64_t v) const {
        if (!is_cut_vertex(v)) return false;
        if (level_ == 1) return true;
        const std::uint64_t d = spec_.size();
        std::uint64_t block = 1;
        for (std::size_t k = 1; k < level_; ++k) block *= d;
        const std::uint64_t first = v / block;
        int seen = -2;
        for (std::uint64_t w = 0; w < d; ++w) {
            if (w == first) continue;
            const int label = component_label_without(v, w * block); // w followed by the least digit
            if (seen == -2) {
                seen = label;
            } else if (label != seen) {
                return true;
            }
        }
        return false;
    }

    CutVertexReport report(std::uint64_t v) const {
        return CutVertexReport{word(v), separated_sizes(v), is_essential(v)};
    }

private:
    void build_edges() {
        const NeighborTable table = neighbor_table(spec_);
        static constexpr std::array<Direction, 4> kForward = {Direction::Right, Direction::Up, Direction::UpRight,
                                                              Direction::DownRight};
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::uint64_t u = 0; u < vertex_count_; ++u) {
            const CellWord w = word(u);
            for (Direction d : kForward) {
                if (!table.touches(d)) continue;
                auto q = shifted_word(spec_, w, offset_of(d));
                if (!q) continue;
                auto v = id_of(*q);
                if (!v) continue;
                pairs.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(*v));
                pairs.emplace_back(static_cast<std::uint32_t>(*v), static_cast<std::uint32_t>(u));
            }
        }
        std::sort(pairs.begin(), pairs.end());
        offsets_.assign(vertex_count_ + 1, 0);
        for (const auto& [u, v] : pairs) ++offsets_[u + 1];
        std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
        targets_.reserve(pairs.size());
        for (const auto& [u, v] : pairs) targets_.push_back(v);
    }

    // Iterative Tarjan: preorder numbers, low links and subtree sizes. A DFS
    // child c splits off from its parent p exactly when low[c] >= disc[p]
    // (every child of a root splits off).
    void analyze() {
        const auto n = vertex_count_;
        constexpr std::uint64_t kUnseen = ~std::uint64_t{0};
        disc_.assign(n, kUnseen);
        std::vector<std::uint64_t> low(n, 0);
        subtree_.assign(n, 1);
        component_.assign(n, 0);
        split_children_.assign(n, {});
        std::vector<std::uint64_t> parent(n, kUnseen);
        std::vector<std::uint64_t> cursor(n, 0);
        std::uint64_t clock = 0;
        for (std::uint64_t root = 0; root < n; ++root) {
            if (disc_[root] != kUnseen) continue;
            const std::uint32_t label = static_cast<std::uint32_t>(component_size_.size());
            std::uint64_t size = 0;
            std::vector<std::uint64_t> stack{root};
            disc_[root] = low[root] = clock++;
            component_[root] = label;
            ++size;
            while (!stack.empty()) {
                const std::uint64_t v = stack.back();
                const auto nb = neighbors(v);
                if (cursor[v] < nb.size()) {
                    const std::uint64_t u = nb[cursor[v]++];
                    if (disc_[u] == kUnseen) {
                        parent[u] = v;
                        disc_[u] = low[u] = clock++;
                        component_[u] = label;
                        ++size;
                        stack.push_back(u);
                    } else if (u != parent[v]) {
                        low[v] = std::min(low[v], disc_[u]);
                    }
                    continue;
                }
                stack.pop_back();
                const std::uint64_t p = parent[v];
                if (p == kUnseen) continue;
                low[p] = std::min(low[p], low[v]);
                subtree_[p] += subtree_[v];
                if (low[v] >= disc_[p]) split_children_[p].push_back(static_cast<std::uint32_t>(v));
            }
            component_size_.push_back(size);
        }
        component_count_ = component_size_.size();
    }

    GscSpec spec_;
    std::size_t level_;
    std::uint64_t vertex_count_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> targets_;
    std::vector<std::uint64_t> disc_;
    std::vector<std::uint64_t> subtree_;
    std::vector<std::uint32_t> component_;
    std::vector<std::uint64_t> component_size_;
    std::vector<std::vector<std::uint32_t>> split_children_;
    std::size_t component_count_ = 0;
};

inline HataGraph build_hata(const GscSpec& spec, std::size_t n, std::uint64_t max_vertices = kDefaultMaxVertices) {
    return HataGraph(spec, n, max_vertices);
}

inline std::uint64_t chi(const HataGraph& g) {
    if (!g.connected()) throw Error(ErrorCode::DisconnectedGraph, "chi needs a connected graph");
    std::uint64_t best = 0;
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
        const auto sizes = g.separated_sizes(v);
        if (sizes.size() >= 2) best = std::max(best, sizes[1]);
    }
    return best;
}

struct LongTail {
    std::uint64_t chi = 0;
    bool general = false; // chi >= |D|^(n-1) - 1
    bool strict = false;  // chi >= |D|^(n-1)
};

inline LongTail has_long_tail(const GscSpec& spec, std::size_t n, std::uint64_t max_vertices = kDefaultMaxVertices) {
    if (n < 2) throw Error(ErrorCode::BadParameter, "long tails are defined for n >= 2");
    const HataGraph g(spec, n, max_vertices);
    LongTail out;
    out.chi = chi(g);
    std::uint64_t threshold = g.vertex_count() / spec.size();
    out.general = out.chi + 1 >= threshold;
    out.strict = out.chi >= threshold;
    return out;
}

inline std::vector<CutVertexReport> cut_vertex_reports(const HataGraph& g) {
    if (!g.connected()) throw Error(ErrorCode::DisconnectedGraph, "essentiality needs a connected graph");
    std::vector<CutVertexReport> out;
    for (std::uint64_t v : g.cut_vertices()) out.push_back(g.report(v));
    return out;
}

/// Every cut vertex of Γ_n with its essential flag.
inline std::vector<CutVertexReport> essential_cut_vertices(const GscSpec& spec, std::size_t n,
                                                           std::uint64_t max_vertices = kDefaultMaxVertices) {
    return cut_vertex_reports(HataGraph(spec, n, max_vertices));
}

inline std::string vertex_name(const CellWord& w) {
    std::string out;
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
        if (k) out += '|';
        out += std::to_string(w.letters[k].x) + "," + std::to_string(w.letters[k].y);
    }
    return out;
}

inline std::string export_graph_text(const HataGraph& g) {
    std::ostringstream out;
    out << "graph hata_" << g.level() << " {\n";
    for (std::uint64_t v = 0; v < g.vertex_count(); ++v) out << "  \"" << vertex_name(g.word(v)) << "\";\n";
    for (const auto& [u, v] : g.edges()) {
        out << "  \"" << vertex_name(g.word(u)) << "\" -- \"" << vertex_name(g.word(v)) << "\";\n";
    }
    out << "}\n";
    return out.str();
}

inline std::string export_edge_list(const HataGraph& g) {
    std::ostringstream out;
    for (const auto& [u, v] : g.edges()) out << vertex_name(g.word(u)) << ' ' << vertex_name(g.word(v)) << '\n';
    return out.str();
}

} // namespace carpetcut
