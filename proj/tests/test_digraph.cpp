#include <gtest/gtest.h>

#include <random>

#include "finquo/digraph.hpp"

using namespace finquo;

namespace {

Digraph random_digraph(std::mt19937_64& rng, std::size_t n, double p)
{
    std::bernoulli_distribution coin(p);
    Digraph g(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (coin(rng))
                g.add_edge(a, b);
    return g;
}

Digraph disjoint_cycles(const std::vector<std::size_t>& lengths)
{
    std::size_t n = 0;
    for (auto L : lengths)
        n += L;
    Digraph g(n);
    std::size_t base = 0;
    for (auto L : lengths) {
        for (std::size_t t = 0; t < L; ++t)
            g.add_edge(base + t, base + (t + 1) % L);
        base += L;
    }
    return g;
}

std::vector<std::size_t> singletons(std::size_t n)
{
    std::vector<std::size_t> l(n);
    for (std::size_t i = 0; i < n; ++i)
        l[i] = i;
    return l;
}

} // namespace

TEST(Hitting, Examples)
{
    auto three = WindowMap::rotary({3});
    EXPECT_TRUE(isomorphic(hitting_digraph(singletons(3), 3, three), Digraph::cycle(3)));
    EXPECT_EQ(hitting_digraph(std::vector<std::size_t>(3, 0), 1, three), Digraph::loop());

    // evens and odds under the successor window: images chased by hand
    auto succ = WindowMap::successor(6);
    std::vector<std::size_t> parity{0, 1, 0, 1, 0, 1};
    auto h = hitting_digraph(parity, 2, succ);
    Digraph expect(2);
    for (std::size_t i = 0; i + 1 < 6; ++i)
        expect.add_edge(parity[i], parity[i + 1]);
    EXPECT_EQ(h, expect);
    EXPECT_FALSE(h.has_edge(0, 0));
    EXPECT_TRUE(h.has_edge(0, 1) && h.has_edge(1, 0));

    EXPECT_THROW(hitting_digraph(std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}}, three), std::invalid_argument);
    EXPECT_THROW(hitting_digraph(std::vector<std::vector<std::size_t>>{{0, 1}}, three), std::invalid_argument);
}

TEST(Hitting, SingletonsOfCycles)
{
    for (const auto& w : std::vector<std::vector<std::size_t>>{{1}, {2, 3}, {1, 1, 4}, {5, 2, 2}}) {
        auto f = WindowMap::rotary(w);
        EXPECT_EQ(hitting_digraph(singletons(f.size()), f.size(), f), disjoint_cycles(w));
    }
}

TEST(Isomorphism, ClassCounts)
{
    // unlabelled digraphs with loops allowed: 2, 10, 104, 3044
    EXPECT_EQ(digraphs_up_to_iso(1).size(), 2u);
    EXPECT_EQ(digraphs_up_to_iso(2).size(), 10u);
    EXPECT_EQ(digraphs_up_to_iso(3).size(), 104u);
    EXPECT_EQ(digraphs_up_to_iso(4).size(), 3044u);
}

TEST(Isomorphism, RandomRelabelling)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 7;
        auto g = random_digraph(rng, n, 0.35);
        std::vector<std::size_t> perm = singletons(n);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto h = g.permuted(perm);
        EXPECT_TRUE(isomorphic(g, h));
        EXPECT_EQ(canonical_form(g), canonical_form(h));
        // flipping one adjacency bit changes the edge count, so the result is not isomorphic
        Digraph k(n);
        for (auto [a, b] : g.edges())
            k.add_edge(a, b);
        if (!k.has_edge(0, n - 1)) {
            k.add_edge(0, n - 1);
            EXPECT_FALSE(isomorphic(g, k));
        }
    }
}

TEST(Represent, Examples)
{
    EXPECT_TRUE(digraph_represented(Digraph::loop(), {3}).verdict.is_yes());
    EXPECT_TRUE(digraph_represented(Digraph::loop(), {1, 4, 2}).verdict.is_yes());

    Digraph two(2, {{0, 1}, {1, 0}});
    auto r = digraph_represented(two, {2, 2, 2});
    ASSERT_TRUE(r.verdict.is_yes());
    EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1, 0, 1, 0, 1}));
    EXPECT_TRUE(isomorphic(hitting_digraph(r.witness, 2, WindowMap::rotary({2, 2, 2})), two));

    auto odd = digraph_represented(two, {3, 3, 3});
    EXPECT_TRUE(odd.verdict.is_unknown());
    EXPECT_EQ(odd.verdict.kind, "exhausted");

    auto big = digraph_represented(Digraph::cycle(20), {5, 5});
    EXPECT_TRUE(big.verdict.is_no());
    EXPECT_EQ(big.verdict.kind, "cardinality");

    RepresentOptions tiny;
    tiny.max_nodes = 10;
    EXPECT_EQ(digraph_represented(Digraph::cycle(3), {3, 3, 3, 3}, tiny).verdict.kind, "budget");
}

TEST(Represent, WitnessesReverify)
{
    std::mt19937_64 rng(12);
    int yes = 0;
    for (int t = 0; t < 150; ++t) {
        const std::size_t n = 1 + rng() % 3;
        auto g = random_digraph(rng, n, 0.6);
        std::vector<std::size_t> w;
        for (int k = 1 + rng() % 3; k > 0; --k)
            w.push_back(1 + rng() % 4);
        auto r = digraph_represented(g, w);
        if (!r.verdict.is_yes())
            continue;
        ++yes;
        auto f = WindowMap::rotary(w);
        EXPECT_EQ(hitting_digraph(r.witness, n, f), g);
        // every part meets the required number of intervals
        std::vector<std::size_t> owner;
        for (std::size_t c = 0; c < w.size(); ++c)
            for (std::size_t i = 0; i < w[c]; ++i)
                owner.push_back(c);
        for (std::size_t v = 0; v < n; ++v) {
            std::set<std::size_t> met;
            for (std::size_t i = 0; i < owner.size(); ++i)
                if (r.witness[i] == v)
                    met.insert(owner[i]);
            EXPECT_GE(met.size(), r.required_intervals);
        }
    }
    EXPECT_GT(yes, 10);
}

TEST(Compare, Windows)
{
    auto same = exists_theory_compare({2, 3, 2}, {2, 3, 2}, 2);
    EXPECT_TRUE(same.a_not_b.empty());
    EXPECT_TRUE(same.b_not_a.empty());
    EXPECT_EQ(same.digraphs.size(), 12u);

    auto one = exists_theory_compare({2, 2}, {5, 1, 3}, 1);
    EXPECT_TRUE(one.a_not_b.empty());
    EXPECT_TRUE(one.b_not_a.empty());

    auto r = exists_theory_compare({2, 2, 2, 2}, {3, 3, 3, 3}, 3);
    EXPECT_FALSE(r.a_not_b.empty() && r.b_not_a.empty());
    bool found_two_cycle = false;
    for (auto i : r.a_not_b) {
        EXPECT_TRUE(r.in_a[i].is_yes());
        EXPECT_FALSE(r.in_b[i].is_yes());
        found_two_cycle = found_two_cycle || isomorphic(r.digraphs[i], Digraph(2, {{0, 1}, {1, 0}}));
    }
    EXPECT_TRUE(found_two_cycle);
    for (auto i : r.a_not_b)
        EXPECT_EQ(std::count(r.b_not_a.begin(), r.b_not_a.end(), i), 0);
}

TEST(Embedding, PowersOfFour)
{
    auto four = SequenceDescriptor::geometric(1, 4);
    auto twice = SequenceDescriptor::geometric(2, 4);
    auto fwd = build_embedding(four, twice, IndexMap::identity(), 0, 5);
    EXPECT_TRUE(fwd.ok());
    EXPECT_EQ(fwd.map.wraps, (std::vector<std::size_t>(5, 2)));
    EXPECT_TRUE(fwd.map.boundary_targets.empty());

    auto back = build_embedding(twice, four, IndexMap::parse("shift:1"), 0, 5);
    EXPECT_TRUE(back.ok());
    EXPECT_EQ(back.map.boundary_targets, (std::vector<std::size_t>{0}));
    EXPECT_EQ(back.map.wraps, (std::vector<std::size_t>{0, 2, 2, 2, 2}));
    for (const auto& c : back.checks)
        EXPECT_EQ(c.violations, 0u) << c.name;
}

TEST(Embedding, ExhaustiveSmall)
{
    auto m = SequenceDescriptor::finite({1, 2, 3});
    auto n = SequenceDescriptor::finite({2, 4, 6});
    auto r = build_embedding(m, n, IndexMap::identity(), 0, 3);
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.samples, 64u);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.map.e, (std::vector<std::int64_t>{0, 0, 1, 2, 1, 2, 3, 4, 5, 3, 4, 5}));
}

TEST(Embedding, Errors)
{
    try {
        build_embedding(SequenceDescriptor::finite({2}), SequenceDescriptor::finite({3}), IndexMap::identity(), 0, 1);
        FAIL();
    } catch (const EmbeddingError& e) {
        EXPECT_NE(std::string(e.what()).find("j = 0"), std::string::npos);
    }
    EXPECT_THROW(IndexMap::parse("shift:"), std::invalid_argument);
    EXPECT_THROW(IndexMap::parse("rot"), std::invalid_argument);
    EXPECT_EQ(IndexMap::parse("shift:-2")(0), std::optional<std::size_t>(2));
}
