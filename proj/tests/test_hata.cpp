#include <gtest/gtest.h>

#include <regex>

#include "oracles.hpp"
#include "testing.hpp"

using namespace carpetcut;
using testing_util::error_of;
using testing_util::word;

namespace {

std::vector<CellWord> words_of(const HataGraph& g, const std::vector<std::uint64_t>& ids) {
    std::vector<CellWord> out;
    for (auto v : ids) out.push_back(g.word(v));
    return out;
}

std::vector<CellWord> essential_words(const std::vector<CutVertexReport>& reports) {
    std::vector<CellWord> out;
    for (const auto& r : reports) {
        if (r.essential) out.push_back(r.vertex);
    }
    return out;
}

std::vector<std::vector<std::size_t>> adjacency_of(const HataGraph& g) {
    std::vector<std::vector<std::size_t>> adj(g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<GscSpec> connected_corpus() {
    auto out = oracle::preset_corpus();
    for (const auto& s : oracle::random_corpus(101, 25, 10, false)) out.push_back(s);
    return out;
}

std::vector<GscSpec> non_fragile_corpus() {
    std::vector<GscSpec> out{resolve_preset("sierpinski"), resolve_preset("goodcp")};
    for (const auto& s : oracle::random_corpus(202, 40, 10, true)) out.push_back(s);
    return out;
}

std::uint64_t power(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

TEST(BuildHata, SierpinskiLevelOne) {
    const HataGraph g(resolve_preset("sierpinski"), 1);
    EXPECT_EQ(g.vertex_count(), 8U);
    EXPECT_EQ(g.edge_count(), 12U);
    EXPECT_TRUE(g.connected());
    EXPECT_TRUE(g.cut_vertices().empty());
}

TEST(BuildHata, GoodcpLevelOne) {
    const HataGraph g(resolve_preset("goodcp"), 1);
    EXPECT_EQ(g.vertex_count(), 7U);
    EXPECT_TRUE(g.connected());
    // (0,2) and (2,2) hang off (0,1) and (2,1).
    EXPECT_EQ(words_of(g, g.cut_vertices()), (std::vector<CellWord>{word({{0, 1}}), word({{1, 0}}), word({{2, 1}})}));
    EXPECT_EQ(g.separated_sizes(*g.id_of(word({{1, 0}}))), (std::vector<std::uint64_t>{3, 3}));
}

TEST(BuildHata, GoodcpLevelTwoCutVertices) {
    const auto spec = resolve_preset("goodcp");
    const HataGraph g(spec, 2);
    EXPECT_EQ(g.vertex_count(), 49U);
    const std::vector<CellWord> expected{word({{0, 2}, {0, 1}}), word({{0, 2}, {2, 1}}), word({{1, 0}, {1, 0}}),
                                         word({{2, 2}, {0, 1}}), word({{2, 2}, {2, 1}})};
    EXPECT_EQ(words_of(g, g.cut_vertices()), expected);
    // The corner square (0,2)(0,2) only touches (0,2)(0,1).
    const auto corner = *g.id_of(word({{0, 2}, {0, 2}}));
    ASSERT_EQ(g.neighbors(corner).size(), 1U);
    EXPECT_EQ(g.word(g.neighbors(corner)[0]), word({{0, 2}, {0, 1}}));
}

TEST(BuildHata, Errors) {
    const auto spec = resolve_preset("sierpinski");
    EXPECT_EQ(error_of([&] { HataGraph(spec, 0); }), ErrorCode::BadParameter);
    EXPECT_EQ(error_of([&] { HataGraph(spec, 3, 500); }), ErrorCode::LevelTooLarge);
    EXPECT_EQ(error_of([&] { HataGraph(spec, 40); }), ErrorCode::LevelTooLarge);
    try {
        HataGraph(spec, 3, 500);
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("500"), std::string::npos);
    }
    EXPECT_NO_THROW(HataGraph(spec, 3, 512));
}

TEST(BuildHata, MatchesAllPairsBruteForce) {
    for (const auto& spec : connected_corpus()) {
        for (std::size_t n = 1; n <= 3; ++n) {
            if (power(spec.size(), n) > 700) continue;
            const HataGraph g(spec, n);
            const auto words = oracle::all_words(spec, n);
            ASSERT_EQ(g.vertex_count(), words.size());
            for (std::size_t k = 0; k < words.size(); ++k) ASSERT_EQ(g.word(k), words[k]);
            const auto adj = oracle::all_pairs_graph(spec, words);
            auto sorted = adjacency_of(g);
            for (auto& row : sorted) std::sort(row.begin(), row.end());
            ASSERT_EQ(sorted, adj);
            const auto cuts = oracle::cut_vertices(adj);
            ASSERT_EQ(g.cut_vertices(), (std::vector<std::uint64_t>(cuts.begin(), cuts.end())));
            for (std::size_t v = 0; v < words.size(); ++v) {
                const auto label = oracle::labels_without(adj, v);
                std::map<int, std::uint64_t> sizes;
                for (int l : label) {
                    if (l >= 0) ++sizes[l];
                }
                std::vector<std::uint64_t> expected;
                for (auto [l, s] : sizes) expected.push_back(s);
                std::sort(expected.rbegin(), expected.rend());
                if (expected.size() < 2) expected.clear();
                auto got = g.separated_sizes(v);
                if (got.size() < 2) got.clear();
                ASSERT_EQ(got, expected);
                ASSERT_EQ(g.is_essential(v), oracle::essential(spec, words, adj, v)) << to_string(words[v]);
            }
        }
    }
}

TEST(Chi, Examples) {
    EXPECT_EQ(chi(HataGraph(resolve_preset("sierpinski"), 1)), 0U);
    EXPECT_EQ(chi(HataGraph(resolve_preset("goodcp"), 1)), 3U);
    const auto v = chi(HataGraph(resolve_preset("goodcp"), 2));
    EXPECT_GE(v, 7U);
    EXPECT_EQ(v, 24U); // (1,0)(1,0) leaves 24 + 24
}

TEST(Chi, DisconnectedGraph) {
    const auto spec = validate_spec(3, {{0, 0}, {2, 2}});
    EXPECT_EQ(error_of([&] { chi(HataGraph(spec, 1)); }), ErrorCode::DisconnectedGraph);
    EXPECT_EQ(error_of([&] { essential_cut_vertices(spec, 1); }), ErrorCode::DisconnectedGraph);
}

TEST(LongTail, Examples) {
    const auto goodcp = has_long_tail(resolve_preset("goodcp"), 2);
    EXPECT_TRUE(goodcp.general);
    EXPECT_TRUE(goodcp.strict);
    const auto sierpinski = has_long_tail(resolve_preset("sierpinski"), 2);
    EXPECT_FALSE(sierpinski.general);
    EXPECT_EQ(sierpinski.chi, 0U);
    EXPECT_TRUE(has_long_tail(resolve_preset("segment"), 2).general);
    EXPECT_EQ(error_of([] { has_long_tail(resolve_preset("goodcp"), 1); }), ErrorCode::BadParameter);
}

TEST(EssentialCutVertices, Examples) {
    const auto goodcp = resolve_preset("goodcp");
    EXPECT_EQ(essential_words(essential_cut_vertices(goodcp, 2)), (std::vector<CellWord>{word({{1, 0}, {1, 0}})}));
    EXPECT_EQ(essential_words(essential_cut_vertices(goodcp, 1)),
              (std::vector<CellWord>{word({{0, 1}}), word({{1, 0}}), word({{2, 1}})}));
    EXPECT_TRUE(essential_cut_vertices(resolve_preset("sierpinski"), 2).empty());
}

TEST(EssentialCutVertices, ReportsAreConsistent) {
    for (const auto& spec : connected_corpus()) {
        for (std::size_t n = 1; n <= 3; ++n) {
            if (power(spec.size(), n) > 20000) continue;
            for (const auto& r : essential_cut_vertices(spec, n)) {
                std::uint64_t total = 0;
                for (auto s : r.component_sizes) total += s;
                EXPECT_EQ(total, power(spec.size(), n) - 1);
                EXPECT_GE(r.component_sizes.size(), 2U);
                EXPECT_TRUE(std::is_sorted(r.component_sizes.rbegin(), r.component_sizes.rend()));
            }
        }
    }
}

TEST(ExportGraphText, GoodcpLevelOne) {
    const HataGraph g(resolve_preset("goodcp"), 1);
    const auto text = export_graph_text(g);
    EXPECT_EQ(text.rfind("graph hata_1 {\n", 0), 0U);
    const std::regex node("^  \"[0-9,|]+\";$");
    const std::regex edge("^  \"[0-9,|]+\" -- \"[0-9,|]+\";$");
    std::istringstream in(text);
    std::string line;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    while (std::getline(in, line)) {
        nodes += std::regex_match(line, node) ? 1 : 0;
        edges += std::regex_match(line, edge) ? 1 : 0;
    }
    EXPECT_EQ(nodes, 7U);
    EXPECT_EQ(edges, g.edge_count());
    EXPECT_EQ(export_graph_text(g), text);
}

TEST(ExportGraphText, SierpinskiGolden) {
    const HataGraph g(resolve_preset("sierpinski"), 1);
    EXPECT_EQ(export_graph_text(g), testing_util::read_file(CARPETCUT_GOLDEN_DIR "/sierpinski_level1.dot"));
    EXPECT_EQ(vertex_name(word({{1, 0}, {2, 2}})), "1,0|2,2");
    const auto list = export_edge_list(g);
    EXPECT_EQ(static_cast<std::size_t>(std::count(list.begin(), list.end(), '\n')), 12U);
}

TEST(HataProperties, VertexCountAndSubtreeCopies) {
    for (const auto& spec : connected_corpus()) {
        for (std::size_t n = 2; n <= 3; ++n) {
            const std::uint64_t block = power(spec.size(), n - 1);
            if (block * spec.size() > 20000) continue;
            const HataGraph g(spec, n);
            const HataGraph smaller(spec, n - 1);
            ASSERT_EQ(g.vertex_count(), block * spec.size());
            std::set<std::pair<std::uint64_t, std::uint64_t>> lower;
            for (const auto& e : smaller.edges()) lower.insert(e);
            for (std::uint64_t first = 0; first < spec.size(); ++first) {
                std::set<std::pair<std::uint64_t, std::uint64_t>> induced;
                for (const auto& [u, v] : g.edges()) {
                    if (u / block == first && v / block == first) induced.emplace(u % block, v % block);
                }
                EXPECT_EQ(induced, lower);
            }
        }
    }
}

TEST(HataProperties, ConnectedAtEveryLevel) {
    for (const auto& spec : connected_corpus()) {
        ASSERT_TRUE(HataGraph(spec, 1).connected());
        for (std::size_t n = 2; n <= 3; ++n) {
            if (power(spec.size(), n) > 20000) continue;
            EXPECT_TRUE(HataGraph(spec, n).connected());
        }
    }
}

TEST(HataProperties, EveryComponentHasANeighborOfTheCutVertex) {
    for (const auto& spec : connected_corpus()) {
        for (std::size_t n = 1; n <= 3; ++n) {
            if (power(spec.size(), n) > 20000) continue;
            const HataGraph g(spec, n);
            for (auto v : g.cut_vertices()) {
                std::set<int> all;
                std::set<int> touched;
                for (std::uint64_t u = 0; u < g.vertex_count(); ++u) {
                    if (u != v) all.insert(g.component_label_without(v, u));
                }
                for (auto u : g.neighbors(v)) touched.insert(g.component_label_without(v, u));
                EXPECT_EQ(all, touched);
                EXPECT_EQ(all.size(), g.separated_sizes(v).size());
            }
        }
    }
}

TEST(HataProperties, PrefixesOfEssentialVerticesAreEssential) {
    for (const auto& spec : connected_corpus()) {
        std::vector<std::optional<HataGraph>> graphs(5);
        for (std::size_t n = 1; n <= 4; ++n) {
            if (power(spec.size(), n) <= 20000) graphs[n].emplace(spec, n);
        }
        for (std::size_t n = 2; n <= 4; ++n) {
            if (!graphs[n]) continue;
            for (auto v : graphs[n]->cut_vertices()) {
                if (!graphs[n]->is_essential(v)) continue;
                const auto w = graphs[n]->word(v);
                for (std::size_t k = 1; k < n; ++k) {
                    EXPECT_TRUE(graphs[k]->is_essential(*graphs[k]->id_of(w.prefix(k))))
                        << to_string(w) << " prefix " << k;
                }
            }
        }
    }
}

TEST(HataProperties, SuffixOfEssentialVertexIsEssential) {
    for (const auto& spec : non_fragile_corpus()) {
        std::vector<std::optional<HataGraph>> graphs(5);
        for (std::size_t n = 1; n <= 4; ++n) {
            if (power(spec.size(), n) <= 20000) graphs[n].emplace(spec, n);
        }
        for (std::size_t n = 3; n <= 4; ++n) {
            if (!graphs[n]) continue;
            for (auto v : graphs[n]->cut_vertices()) {
                if (!graphs[n]->is_essential(v)) continue;
                const auto w = graphs[n]->word(v);
                const bool one = graphs[n - 1]->is_essential(*graphs[n - 1]->id_of(w.suffix_from(1)));
                const bool two = graphs[n - 2]->is_essential(*graphs[n - 2]->id_of(w.suffix_from(2)));
                EXPECT_TRUE(one || two) << to_string(w);
            }
        }
    }
}

TEST(HataProperties, LongTailThresholdMatchesEssentialExistence) {
    for (const auto& spec : non_fragile_corpus()) {
        for (std::size_t n = 2; n <= 3; ++n) {
            if (power(spec.size(), n) > 20000) continue;
            const HataGraph g(spec, n);
            const bool strict = chi(g) >= power(spec.size(), n - 1);
            bool any = false;
            for (auto v : g.cut_vertices()) any = any || g.is_essential(v);
            EXPECT_EQ(strict, any) << spec_to_text(spec) << " n=" << n;
        }
    }
}

TEST(HataProperties, IsolatedBottomDigitIsNotACutVertex) {
    for (const auto& spec : non_fragile_corpus()) {
        const HataGraph g(spec, 1);
        for (const Digit& d : spec.digits()) {
            if (d.y != 0 || spec.contains(d.x - 1, 0) || spec.contains(d.x + 1, 0)) continue;
            EXPECT_FALSE(g.is_cut_vertex(*g.id_of(word({d})))) << spec_to_text(spec);
        }
    }
}
