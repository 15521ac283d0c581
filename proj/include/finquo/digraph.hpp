#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "finquo/sequence.hpp"
#include "finquo/tri.hpp"
#include "finquo/window_map.hpp"

namespace finquo {

/// Digraph on vertices 0..n-1, loops allowed. At most 32 vertices.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n)
        : out_(n, 0)
    {
        if (n > 32)
            throw std::invalid_argument("digraphs are limited to 32 vertices");
    }
    Digraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
        : Digraph(n)
    {
        for (auto [a, b] : edges)
            add_edge(a, b);
    }

    static Digraph loop() { return Digraph(1, {{0, 0}}); }
    static Digraph cycle(std::size_t n)
    {
        Digraph g(n);
        for (std::size_t i = 0; i < n; ++i)
            g.add_edge(i, (i + 1) % n);
        return g;
    }

    std::size_t size() const { return out_.size(); }

    void add_edge(std::size_t a, std::size_t b)
    {
        if (a >= size() || b >= size())
            throw std::out_of_range("edge endpoint is not a vertex");
        out_[a] |= 1u << b;
    }
    bool has_edge(std::size_t a, std::size_t b) const { return (out_[a] >> b) & 1u; }
    std::uint32_t out_mask(std::size_t a) const { return out_[a]; }

    std::vector<std::pair<std::size_t, std::size_t>> edges() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> e;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                if (has_edge(a, b))
                    e.emplace_back(a, b);
        return e;
    }

    /// Relabel: vertex v becomes perm[v].
    Digraph permuted(const std::vector<std::size_t>& perm) const
    {
        Digraph g(size());
        for (auto [a, b] : edges())
            g.add_edge(perm[a], perm[b]);
        return g;
    }

    /// Row-major adjacency bits.
    std::vector<bool> code() const
    {
        std::vector<bool> c;
        for (std::size_t a = 0; a < size(); ++a)
            for (std::size_t b = 0; b < size(); ++b)
                c.push_back(has_edge(a, b));
        return c;
    }

    std::string describe() const
    {
        std::string s = std::to_string(size()) + ":{";
        bool first = true;
        for (auto [a, b] : edges()) {
            s += (first ? "" : ",") + std::to_string(a) + "->" + std::to_string(b);
            first = false;
        }
        return s + "}";
    }

    bool operator==(const Digraph&) const = default;

private:
    std::vector<std::uint32_t> out_;
};

namespace detail {

struct VertexInvariant {
    std::size_t out = 0, in = 0;
    bool loop = false;
    auto operator<=>(const VertexInvariant&) const = default;
};

/// Colour refinement by (colour, multiset of out-neighbour colours, in-neighbour colours).
inline std::vector<int> refine(const Digraph& g)
{
    const std::size_t n = g.size();
    std::vector<int> colour(n, 0);
    {
        std::vector<VertexInvariant> inv(n);
        for (auto [a, b] : g.edges()) {
            ++inv[a].out;
            ++inv[b].in;
            if (a == b)
                inv[a].loop = true;
        }
        std::map<VertexInvariant, int> ids;
        for (auto& v : inv)
            ids.emplace(v, 0);
        int next = 0;
        for (auto& [k, id] : ids)
            id = next++;
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = ids[inv[v]];
    }
    for (;;) {
        using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
        std::vector<Sig> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::get<0>(sig[v]) = colour[v];
            for (std::size_t u = 0; u < n; ++u) {
                if (g.has_edge(v, u))
                    std::get<1>(sig[v]).push_back(colour[u]);
                if (g.has_edge(u, v))
                    std::get<2>(sig[v]).push_back(colour[u]);
            }
            std::sort(std::get<1>(sig[v]).begin(), std::get<1>(sig[v]).end());
            std::sort(std::get<2>(sig[v]).begin(), std::get<2>(sig[v]).end());
        }
        std::map<Sig, int> ids;
        for (auto& s : sig)
            ids.emplace(s, 0);
        int next = 0;
        for (auto& [k, id] : ids)
            id = next++;
        std::vector<int> fresh(n);
        for (std::size_t v = 0; v < n; ++v)
            fresh[v] = ids[sig[v]];
        const auto classes = [](const std::vector<int>& c) { return std::set<int>(c.begin(), c.end()).size(); };
        const bool stable = classes(fresh) == classes(colour);
        colour = std::move(fresh);
        if (stable)
            return colour;
    }
}

} // namespace detail

/// Canonical relabelling: colour-refined classes are placed in colour order,
/// and the lexicographically least adjacency code over the remaining
/// within-class orders is chosen by backtracking.
inline Digraph canonical_form(const Digraph& g)
{
    const std::size_t n = g.size();
    if (n == 0)
        return g;
    const auto colour = detail::refine(g);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return colour[a] < colour[b]; });
    // slot s of the canonical labelling must be filled by a vertex of colour colour[order[s]]
    std::vector<int> slot_colour(n);
    for (std::size_t s = 0; s < n; ++s)
        slot_colour[s] = colour[order[s]];

    std::optional<std::vector<bool>> best;
    std::vector<std::size_t> placed; // placed[s] = vertex at slot s
    std::vector<bool> used(n, false);
    // code prefix comparison: rows/cols among placed slots
    auto code_of = [&](const std::vector<std::size_t>& pl) {
        std::vector<bool> c;
        for (std::size_t s = 0; s < pl.size(); ++s)
            for (std::size_t t = 0; t < pl.size(); ++t)
                c.push_back(g.has_edge(pl[s], pl[t]));
        return c;
    };
    std::function<void()> go = [&]() {
        if (placed.size() == n) {
            auto c = code_of(placed);
            if (!best || c < *best)
                best = std::move(c);
            return;
        }
        const std::size_t s = placed.size();
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v] || colour[v] != slot_colour[s])
                continue;
            used[v] = true;
            placed.push_back(v);
            go();
            placed.pop_back();
            used[v] = false;
        }
    };
    go();
    Digraph out(n);
    std::size_t i = 0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
            if ((*best)[i++])
                out.add_edge(s, t);
    return out;
}

inline bool isomorphic(const Digraph& a, const Digraph& b)
{
    return a.size() == b.size() && a.edges().size() == b.edges().size() && canonical_form(a) == canonical_form(b);
}

/// All digraphs on n vertices up to isomorphism, in canonical form (n <= 4).
inline std::vector<Digraph> digraphs_up_to_iso(std::size_t n)
{
    if (n > 4)
        throw std::invalid_argument("digraph enumeration limited to 4 vertices");
    std::set<std::vector<bool>> seen;
    std::vector<Digraph> out;
    const std::size_t bits = n * n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        Digraph g(n);
        for (std::size_t b = 0; b < bits; ++b)
            if ((mask >> b) & 1)
                g.add_edge(b / n, b % n);
        auto c = canonical_form(g);
        if (seen.insert(c.code()).second)
            out.push_back(c);
    }
    return out;
}

/// Part p -> part q iff f maps a point of p into q. `label[i]` is the part of point i.
inline Digraph hitting_digraph(const std::vector<std::size_t>& label, std::size_t parts, const WindowMap& f)
{
    if (label.size() != f.size())
        throw std::invalid_argument("partition does not cover the window");
    std::vector<bool> seen(parts, false);
    for (auto l : label) {
        if (l >= parts)
            throw std::invalid_argument("part label out of range");
        seen[l] = true;
    }
    for (std::size_t p = 0; p < parts; ++p)
        if (!seen[p])
            throw std::invalid_argument("part " + std::to_string(p) + " is empty");
    Digraph g(parts);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.in_domain(i))
            g.add_edge(label[i], label[*f.at(i)]);
    return g;
}

/// Same, with the partition given as disjoint point lists.
inline Digraph hitting_digraph(const std::vector<std::vector<std::size_t>>& parts, const WindowMap& f)
{
    std::vector<std::size_t> label(f.size(), parts.size());
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (auto i : parts[p]) {
            if (i >= f.size())
                throw std::invalid_argument("point outside the window");
            if (label[i] != parts.size())
                throw std::invalid_argument("parts overlap at point " + std::to_string(i));
            label[i] = p;
        }
    for (std::size_t i = 0; i < label.size(); ++i)
        if (label[i] == parts.size())
            throw std::invalid_argument("point " + std::to_string(i) + " is in no part");
    return hitting_digraph(label, parts.size(), f);
}

struct RepresentOptions {
    /// a part stands for a nonzero element only if it meets this many intervals
    /// (capped at the number of intervals in the window)
    std::size_t min_intervals = 2;
    std::uint64_t max_nodes = 20'000'000;
};

struct Representation {
    Tri verdict;
    /// part of each window point, using G's vertex names
    std::vector<std::size_t> witness;
    std::uint64_t nodes = 0;
    std::size_t required_intervals = 0;
};

/// Searches labelings of the window points by vertices of G; the hitting
/// digraph under the labeling must be G itself. Labelings are visited in
/// lexicographic order, so the first witness is the least one.
inline Representation digraph_represented(const Digraph& G, const std::vector<std::size_t>& lengths,
                                          const RepresentOptions& opt = {})
{
    Representation rep;
    const std::size_t k = G.size();
    std::size_t N = 0;
    for (auto L : lengths)
        N += L;
    const std::size_t need = std::min(opt.min_intervals, lengths.size());
    rep.required_intervals = need;
    const std::string surrogate = "nonzero surrogate: each part meets >= " + std::to_string(need) + " intervals";
    if (k == 0) {
        rep.verdict = Tri::no("cardinality", "the empty digraph has no partition of a nonzero algebra");
        return rep;
    }
    if (N == 0) {
        rep.verdict = Tri::no("cardinality", "empty window");
        return rep;
    }
    std::size_t incidences = 0;
    for (auto L : lengths)
        incidences += std::min(L, k);
    if (k > N) {
        rep.verdict = Tri::no("cardinality", std::to_string(k) + " vertices but only " + std::to_string(N) +
                                                 " window points");
        return rep;
    }
    if (k * need > incidences) {
        rep.verdict = Tri::no("cardinality", std::to_string(k) + " parts each meeting " + std::to_string(need) +
                                                 " intervals need more point-interval incidences than the window has");
        return rep;
    }

    const WindowMap f = WindowMap::rotary(lengths);
    std::vector<std::size_t> owner, pred(N);
    for (std::size_t c = 0; c < lengths.size(); ++c)
        for (std::size_t t = 0; t < lengths[c]; ++t)
            owner.push_back(c);
    for (std::size_t i = 0; i < N; ++i)
        pred[*f.at(i)] = i;

    std::vector<std::size_t> label(N, k);
    std::vector<std::size_t> used(k, 0);
    std::size_t distinct = 0;
    bool budget_hit = false;

    auto complete_ok = [&]() {
        Digraph h(k);
        for (std::size_t i = 0; i < N; ++i)
            h.add_edge(label[i], label[*f.at(i)]);
        if (!(h == G))
            return false;
        for (std::size_t v = 0; v < k; ++v) {
            std::set<std::size_t> met;
            for (std::size_t i = 0; i < N; ++i)
                if (label[i] == v)
                    met.insert(owner[i]);
            if (met.size() < need)
                return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (++rep.nodes > opt.max_nodes) {
            budget_hit = true;
            return false;
        }
        if (i == N)
            return complete_ok();
        if (k - distinct > N - i)
            return false;
        for (std::size_t v = 0; v < k; ++v) {
            const auto nx = *f.at(i);
            if (label[pred[i]] < k && !G.has_edge(label[pred[i]], v))
                continue;
            if (nx == i ? !G.has_edge(v, v) : (label[nx] < k && !G.has_edge(v, label[nx])))
                continue;
            label[i] = v;
            if (used[v]++ == 0)
                ++distinct;
            if (go(i + 1))
                return true;
            if (--used[v] == 0)
                --distinct;
            label[i] = k;
            if (budget_hit)
                return false;
        }
        return false;
    };
    if (go(0)) {
        rep.witness = label;
        rep.verdict = Tri::yes("witness", "partition found; " + surrogate);
    } else if (budget_hit) {
        rep.verdict = Tri::unknown("budget", "search stopped after " + std::to_string(opt.max_nodes) + " nodes");
    } else {
        rep.verdict = Tri::unknown("exhausted", "no partition of this window represents the digraph (" + surrogate +
                                                    "); a larger window might");
    }
    return rep;
}

struct TheoryComparison {
    std::size_t size_bound = 0;
    std::vector<Digraph> digraphs;
    /// verdicts per digraph, for windows a and b
    std::vector<Tri> in_a, in_b;
    /// indices of digraphs found in a but exhausted in b, and conversely
    std::vector<std::size_t> a_not_b, b_not_a;
    std::string scope = "window-scale evidence only; not a verdict about the infinite structures";
};

inline TheoryComparison exists_theory_compare(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                                              std::size_t size_bound, const RepresentOptions& opt = {})
{
    TheoryComparison r;
    r.size_bound = size_bound;
    for (std::size_t n = 1; n <= size_bound; ++n)
        for (auto& g : digraphs_up_to_iso(n))
            r.digraphs.push_back(g);
    for (std::size_t i = 0; i < r.digraphs.size(); ++i) {
        r.in_a.push_back(digraph_represented(r.digraphs[i], a, opt).verdict);
        r.in_b.push_back(digraph_represented(r.digraphs[i], b, opt).verdict);
        const auto& x = r.in_a.back();
        const auto& y = r.in_b.back();
        if (x.is_yes() && (y.is_no() || y.kind == "exhausted"))
            r.a_not_b.push_back(i);
        if (y.is_yes() && (x.is_no() || x.kind == "exhausted"))
            r.b_not_a.push_back(i);
    }
    return r;
}

// ---- rotary embeddings -----------------------------------------------------

/// The almost surjection on interval indices: identity or j -> j - k.
struct IndexMap {
    std::int64_t shift = 0;

    static IndexMap identity() { return {0}; }
    static IndexMap shifted(std::int64_t k) { return {k}; }
    static IndexMap parse(const std::string& s)
    {
        if (s == "id")
            return identity();
        if (s.rfind("shift:", 0) == 0) {
            std::size_t used = 0;
            const auto body = s.substr(6);
            std::int64_t k = 0;
            try {
                k = std::stoll(body, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == body.size() && !body.empty())
                return shifted(k);
        }
        throw std::invalid_argument("index map must be 'id' or 'shift:k', got '" + s + "'");
    }
    std::optional<std::size_t> operator()(std::size_t j) const
    {
        const auto v = static_cast<std::int64_t>(j) - shift;
        if (v < 0)
            return std::nullopt;
        return static_cast<std::size_t>(v);
    }
    std::string describe() const { return shift == 0 ? "id" : "shift:" + std::to_string(shift); }
};

class EmbeddingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EmbeddingMap {
    /// interval lengths: source m_i for i in [source_begin, source_end), target n_j for j in [begin, end)
    std::size_t source_begin = 0, begin = 0, end = 0;
    std::vector<std::size_t> source_lengths, target_lengths;
    std::vector<std::size_t> source_start, target_start;
    /// e on target points; none outside the domain (boundary intervals)
    std::vector<std::int64_t> e;
    /// n_j / m_{f(j)} per target interval (0 for boundary intervals)
    std::vector<std::size_t> wraps;
    /// target interval indices j with f(j) undefined or outside the source window
    std::vector<std::size_t> boundary_targets;
    /// source interval indices hit by no target interval
    std::vector<std::size_t> unhit_sources;

    std::size_t source_size() const { return source_start.empty() ? 0 : source_start.back() + source_lengths.back(); }
    std::size_t target_size() const { return target_start.empty() ? 0 : target_start.back() + target_lengths.back(); }

    /// η(A) = e⁻¹[A], source and target subsets as bit vectors
    std::vector<bool> eta(const std::vector<bool>& a) const
    {
        std::vector<bool> out(e.size(), false);
        for (std::size_t x = 0; x < e.size(); ++x)
            if (e[x] >= 0 && a[static_cast<std::size_t>(e[x])])
                out[x] = true;
        return out;
    }
};

struct EmbeddingCheck {
    std::string name;
    bool ok = true;
    std::uint64_t violations = 0;
};

struct EmbeddingReport {
    EmbeddingMap map;
    std::vector<EmbeddingCheck> checks;
    std::uint64_t samples = 0;
    bool exhaustive = false;
    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
    }
};

/// Wraps each target interval J_j around I_{f(j)} (m_{f(j)} must divide n_j)
/// and checks η on the window.
inline EmbeddingReport build_embedding(const SequenceDescriptor& m_seq, const SequenceDescriptor& n_seq, IndexMap f,
                                       std::size_t begin, std::size_t end, std::uint64_t seed = 1,
                                       std::uint64_t max_points = 1u << 20)
{
    if (end <= begin)
        throw EmbeddingError("empty target window");
    if (auto L = n_seq.length(); L && end > *L)
        throw EmbeddingError("target window exceeds the finite sequence");
    EmbeddingReport rep;
    auto& M = rep.map;
    M.begin = begin;
    M.end = end;
    std::optional<std::size_t> lo, hi;
    for (std::size_t j = begin; j < end; ++j)
        if (auto i = f(j)) {
            if (auto L = m_seq.length(); L && *i >= *L)
                continue;
            lo = lo ? std::min(*lo, *i) : *i;
            hi = hi ? std::max(*hi, *i) : *i;
        }
    if (!lo)
        throw EmbeddingError("no target interval in the window has an image under " + f.describe());
    M.source_begin = *lo;
    auto to_size = [&](const BigInt& v, const std::string& what) {
        auto u = to_u64(v);
        if (!u || *u > max_points)
            throw EmbeddingError(what + " = " + v.str() + " exceeds the window point limit");
        return static_cast<std::size_t>(*u);
    };
    std::size_t total = 0;
    for (std::size_t i = *lo; i <= *hi; ++i) {
        M.source_start.push_back(total);
        M.source_lengths.push_back(to_size(m_seq.value(i), "m_" + std::to_string(i)));
        total += M.source_lengths.back();
    }
    total = 0;
    for (std::size_t j = begin; j < end; ++j) {
        M.target_start.push_back(total);
        M.target_lengths.push_back(to_size(n_seq.value(j), "n_" + std::to_string(j)));
        total += M.target_lengths.back();
        if (total > max_points)
            throw EmbeddingError("target window exceeds the point limit");
    }
    M.e.assign(total, WindowMap::none);
    std::vector<bool> hit(M.source_lengths.size(), false);
    for (std::size_t j = begin; j < end; ++j) {
        const std::size_t tj = j - begin;
        auto i = f(j);
        if (!i || *i < *lo || *i > *hi) {
            M.boundary_targets.push_back(j);
            M.wraps.push_back(0);
            continue;
        }
        const std::size_t si = *i - *lo;
        const std::size_t mi = M.source_lengths[si], nj = M.target_lengths[tj];
        if (nj % mi != 0)
            throw EmbeddingError("divisibility fails at j = " + std::to_string(j) + ": m_" + std::to_string(*i) +
                                 " = " + std::to_string(mi) + " does not divide n_" + std::to_string(j) + " = " +
                                 std::to_string(nj));
        M.wraps.push_back(nj / mi);
        hit[si] = true;
        for (std::size_t t = 0; t < nj; ++t)
            M.e[M.target_start[tj] + t] = static_cast<std::int64_t>(M.source_start[si] + t % mi);
    }
    for (std::size_t si = 0; si < hit.size(); ++si)
        if (!hit[si])
            M.unhit_sources.push_back(*lo + si);

    const std::size_t S = M.source_size(), T = M.target_size();
    auto alpha_src = [&](std::size_t p) {
        auto k = static_cast<std::size_t>(std::upper_bound(M.source_start.begin(), M.source_start.end(), p) -
                                          M.source_start.begin() - 1);
        return M.source_start[k] + (p - M.source_start[k] + 1) % M.source_lengths[k];
    };
    auto alpha_tgt = [&](std::size_t x) {
        auto k = static_cast<std::size_t>(std::upper_bound(M.target_start.begin(), M.target_start.end(), x) -
                                          M.target_start.begin() - 1);
        return M.target_start[k] + (x - M.target_start[k] + 1) % M.target_lengths[k];
    };
    std::vector<bool> hit_point(S, false);
    for (auto v : M.e)
        if (v >= 0)
            hit_point[static_cast<std::size_t>(v)] = true;

    // pointwise intertwining e∘α_n = α_m∘e on non-boundary intervals
    EmbeddingCheck pointwise{"e(alpha_n x) = alpha_m(e x)"};
    for (std::size_t x = 0; x < T; ++x)
        if (M.e[x] >= 0 && M.e[alpha_tgt(x)] != static_cast<std::int64_t>(alpha_src(static_cast<std::size_t>(M.e[x]))))
            ++pointwise.violations;
    EmbeddingCheck onto{"e maps onto every hit source interval"};
    for (std::size_t si = 0; si < hit.size(); ++si)
        if (hit[si])
            for (std::size_t t = 0; t < M.source_lengths[si]; ++t)
                if (!hit_point[M.source_start[si] + t])
                    ++onto.violations;

    // subset checks: exhaustive for small sources, seeded samples otherwise
    EmbeddingCheck meet{"eta(A meet B) = eta(A) meet eta(B)"}, comp{"eta(not A) = not eta(A) on the domain of e"},
        inter{"eta(alpha_m A) = alpha_n(eta A)"}, inj{"eta injective on subsets of hit intervals"};
    std::mt19937_64 rng(seed);
    rep.exhaustive = S <= 14;
    const std::uint64_t count = rep.exhaustive ? (std::uint64_t{1} << S) : 4096;
    auto subset = [&](std::uint64_t idx) {
        std::vector<bool> a(S);
        if (rep.exhaustive) {
            for (std::size_t p = 0; p < S; ++p)
                a[p] = (idx >> p) & 1;
        } else {
            for (std::size_t p = 0; p < S; ++p)
                a[p] = rng() & 1;
        }
        return a;
    };
    for (std::uint64_t s = 0; s < count; ++s) {
        auto A = subset(s), B = subset(rep.exhaustive ? (s * 2654435761u) % count : s);
        std::vector<bool> AB(S), notA(S), aA(S, false);
        for (std::size_t p = 0; p < S; ++p) {
            AB[p] = A[p] && B[p];
            notA[p] = !A[p];
            if (A[p])
                aA[alpha_src(p)] = true;
        }
        const auto eA = M.eta(A), eB = M.eta(B), eAB = M.eta(AB), enA = M.eta(notA), eaA = M.eta(aA);
        std::vector<bool> a_eA(T, false);
        for (std::size_t x = 0; x < T; ++x)
            if (eA[x])
                a_eA[alpha_tgt(x)] = true;
        bool m_ok = true, c_ok = true;
        for (std::size_t x = 0; x < T; ++x) {
            m_ok = m_ok && eAB[x] == (eA[x] && eB[x]);
            if (M.e[x] >= 0)
                c_ok = c_ok && enA[x] == !eA[x];
        }
        meet.violations += !m_ok;
        comp.violations += !c_ok;
        inter.violations += eaA != a_eA;
        // A and B differing on a hit point must have different preimages
        bool differ = false;
        for (std::size_t p = 0; p < S && !differ; ++p)
            differ = hit_point[p] && A[p] != B[p];
        inj.violations += differ && eA == eB;
        ++rep.samples;
    }
    for (auto* c : {&pointwise, &onto, &meet, &comp, &inter, &inj}) {
        c->ok = c->violations == 0;
        rep.checks.push_back(*c);
    }
    return rep;
}

} // namespace finquo
