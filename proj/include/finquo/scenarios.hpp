#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "finquo/canon.hpp"
#include "finquo/digraph.hpp"
#include "finquo/fmcheck/limits.hpp"
#include "finquo/fmcheck/obstruction.hpp"
#include "finquo/io/json.hpp"

namespace finquo::scenario {

using io::Json;

struct Check {
    std::string name;
    std::string expected, actual;
    bool ok = false;
};

struct Report {
    std::string name;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.ok)
                return false;
        return true;
    }

    void expect(std::string what, std::string expected, std::string actual)
    {
        const bool ok = expected == actual;
        checks.push_back({std::move(what), std::move(expected), std::move(actual), ok});
    }

    Json json() const
    {
        Json cs = Json::array();
        for (const auto& c : checks)
            cs.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
        return {{"schema_version", io::schema_version},
                {"scenario", name},
                {"inputs", inputs},
                {"results", results},
                {"checks", cs},
                {"notes", notes},
                {"ok", ok()}};
    }
};

namespace detail {

inline Json embedding_json(const EmbeddingReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"violations", c.violations}});
    return {{"ok", r.ok()},
            {"wraps", r.map.wraps},
            {"boundary_targets", r.map.boundary_targets},
            {"unhit_sources", r.map.unhit_sources},
            {"samples", r.samples},
            {"exhaustive", r.exhaustive},
            {"checks", checks}};
}

inline std::string verdict(const Tri& t) { return std::string(to_string(t.verdict)); }

} // namespace detail

/// 2^{2i} and 2^{2j+1} embed into each other but one residue sentence separates them.
inline Report biembeddable(std::size_t intervals = 6, const SequenceDescriptor& m = SequenceDescriptor::geometric(1, 4),
                           const SequenceDescriptor& n = SequenceDescriptor::geometric(2, 4), std::uint64_t seed = 1)
{
    Report rep;
    rep.name = "biembeddable";
    rep.inputs = {{"m", io::to_json(m)}, {"n", io::to_json(n)}, {"intervals", intervals}, {"seed", seed}};
    auto run = [&](const char* key, const SequenceDescriptor& src, const SequenceDescriptor& tgt, IndexMap f) {
        try {
            auto e = build_embedding(src, tgt, f, 0, intervals, seed);
            rep.results[key] = detail::embedding_json(e);
            rep.results[key]["f"] = f.describe();
            rep.expect(std::string(key) + " verified", "true", e.ok() ? "true" : "false");
        } catch (const EmbeddingError& err) {
            rep.results[key] = {{"ok", false}, {"f", f.describe()}, {"error", err.what()}};
            rep.expect(std::string(key) + " verified", "true", std::string("error: ") + err.what());
        }
    };
    run("embed_m_into_n", m, n, IndexMap::identity());
    run("embed_n_into_m", n, m, IndexMap::shifted(1));

    Json obs = Json::array();
    bool separated = false;
    for (std::uint64_t j : {1u, 2u}) {
        const auto tm = fm::obstruction_truth(m, 3, j, fm::ObstructionMode::eventual);
        const auto tn = fm::obstruction_truth(n, 3, j, fm::ObstructionMode::eventual);
        obs.push_back({{"m", 3}, {"j", j}, {"on_m", io::to_json(tm)}, {"on_n", io::to_json(tn)}});
        separated = separated || (!tm.is_unknown() && !tn.is_unknown() && tm.verdict != tn.verdict);
    }
    rep.results["obstruction"] = obs;
    rep.results["elementarily_equivalent"] = separated ? "no" : "undecided";
    rep.expect("a residue sentence separates the two", "no", separated ? "no" : "undecided");
    return rep;
}

/// Almost-disjoint branches through a single rank-d type class of a base sequence.
/// Branches are root-to-leaf paths of a binary tree without its root; tree
/// node t (t >= 1) sits at class position t - 1.
inline Report nonconjugate_family(std::size_t count, int d,
                                  const SequenceDescriptor& base = SequenceDescriptor::affine(1, 1),
                                  std::size_t window = 14, int depth = 1)
{
    if (count == 0 || count > 32)
        throw std::invalid_argument("count must be in 1..32");
    Report rep;
    rep.name = "nonconjugate_family";
    rep.inputs = {{"count", count}, {"rank", d}, {"term_depth", depth}, {"base", io::to_json(base)},
                  {"window", window}};
    rep.notes.push_back("the continuum-sized family is realized by " + std::to_string(count) +
                        " branches of a finite binary tree; each branch extends to an infinite branch whose "
                        "index sets stay pairwise almost disjoint");

    const auto g = fm::ghasemi_subsequence(base, d, 0, window, depth);
    std::size_t levels = 0;
    while ((std::size_t{1} << levels) < count)
        ++levels;
    levels = std::max<std::size_t>(levels, 1);
    const std::size_t nodes = (std::size_t{1} << (levels + 1)) - 2;
    if (g.indices.size() < nodes)
        throw std::invalid_argument("type class of size " + std::to_string(g.indices.size()) + " cannot hold " +
                                    std::to_string(nodes) + " tree nodes; enlarge the window or lower the rank");
    rep.results["class_indices"] = g.indices;
    for (const auto& c : g.classes)
        if (c.indices == g.indices)
            rep.results["class_type"] = c.type.hash();

    // branch b follows the binary digits of b from the root
    std::vector<std::vector<std::size_t>> branch(count);
    for (std::size_t b = 0; b < count; ++b) {
        std::size_t node = 0;
        for (std::size_t level = 0; level < levels; ++level) {
            node = 2 * node + 1 + ((b >> (levels - 1 - level)) & 1);
            branch[b].push_back(g.indices[node - 1]);
        }
    }
    Json bj = Json::array();
    fm::LimitOptions opt;
    opt.depth = depth;
    std::vector<std::vector<std::string>> types(count);
    for (std::size_t b = 0; b < count; ++b) {
        Json values = Json::array();
        for (auto i : branch[b]) {
            values.push_back(io::big_to_json(base.value(i)));
            types[b].push_back(fm::detail::type_at(base, i, d, opt).hash());
        }
        std::sort(types[b].begin(), types[b].end());
        types[b].erase(std::unique(types[b].begin(), types[b].end()), types[b].end());
        bj.push_back({{"indices", branch[b]}, {"values", values}, {"types", types[b]}});
    }
    rep.results["branches"] = bj;

    Json pairs = Json::array();
    bool all_agree = true, all_disjoint = true;
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = a + 1; b < count; ++b) {
            std::vector<std::size_t> common;
            std::set_intersection(branch[a].begin(), branch[a].end(), branch[b].begin(), branch[b].end(),
                                  std::back_inserter(common));
            std::vector<BigInt> va, vb, cv;
            for (auto i : branch[a])
                va.push_back(base.value(i));
            for (auto i : branch[b])
                vb.push_back(base.value(i));
            std::sort(va.begin(), va.end());
            std::sort(vb.begin(), vb.end());
            std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(cv));
            const bool agree = types[a] == types[b];
            // cycle values shared only on the common stem: the multisets agree nowhere past it
            const bool disjoint = cv.size() == common.size() && common.size() < branch[a].size() &&
                                  common.size() < branch[b].size();
            all_agree = all_agree && agree;
            all_disjoint = all_disjoint && disjoint;
            Json shared = Json::array();
            for (const auto& v : cv)
                shared.push_back(io::big_to_json(v));
            pairs.push_back({{"pair", {a, b}},
                             {"rank_types_agree", agree},
                             {"common_indices", common},
                             {"common_values", shared},
                             {"rotary_equivalent", disjoint ? "no" : "undecided"}});
        }
    rep.results["pairs"] = pairs;
    rep.expect("pairwise rank-" + std::to_string(d) + " type sets agree", "true", all_agree ? "true" : "false");
    rep.expect("pairwise cycle multisets almost disjoint", "true", all_disjoint ? "true" : "false");
    if (count == 1)
        rep.notes.push_back("one branch: pairwise sections are vacuous");
    return rep;
}

struct ParityRow {
    std::string name;
    OrbitSpectrum spectrum;
    std::int64_t index = 0;
    int parity = 0;
    Card components;
    bool star = false;
};

inline std::vector<ParityRow> parity_catalog()
{
    auto sigma = OrbitSpectrum::sigma();
    OrbitSpectrum sz;
    sz.zLike = Card::finite(1);
    OrbitSpectrum szz;
    szz.zLike = Card::infinite();
    std::vector<std::pair<std::string, OrbitSpectrum>> cat = {
        {"sigma", sigma},
        {"sigma^-1", OrbitSpectrum::sigma_inverse()},
        {"sigma+sigma", direct_sum(sigma, sigma)},
        {"s_Z", sz},
        {"s_ZxZ", szz},
        {"s_ZxZ+sigma", direct_sum(szz, sigma)},
    };
    std::vector<ParityRow> rows;
    for (auto& [name, s] : cat)
        rows.push_back({name, s, index(s), parity(s), component_count(s), star_property(s)});
    return rows;
}

inline Report parity_table()
{
    Report rep;
    rep.name = "parity";
    Json rows = Json::array();
    for (const auto& r : parity_catalog()) {
        rows.push_back({{"name", r.name},
                        {"spectrum", io::to_json(r.spectrum)},
                        {"index", r.index},
                        {"parity", r.parity},
                        {"components", io::to_json(r.components)},
                        {"star", r.star}});
        rep.expect(r.name + ": (*) iff even parity", "true", r.star == (r.parity == 0) ? "true" : "false");
    }
    rep.results["rows"] = rows;
    return rep;
}

} // namespace finquo::scenario
