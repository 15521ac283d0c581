#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finquo/canon.hpp"
#include "finquo/coarse/metric.hpp"
#include "finquo/sequence.hpp"
#include "finquo/tri.hpp"

namespace finquo::coarse {

using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// γ(i) = i + shift on sequence indices.
struct CoarseWitness {
    Rational K = 1;
    std::int64_t shift = 0;
    /// first index from which the inequality is claimed
    std::size_t onset = 0;
};

struct CoarseResult {
    Tri verdict;
    std::optional<CoarseWitness> witness;
    /// indices checked and how many failed (1/K) n_γ(i) <= m_i <= K n_γ(i)
    std::size_t window_begin = 0, window_end = 0;
    std::size_t window_violations = 0;
};

namespace detail {

inline Rational ratio(const BigInt& a, const BigInt& b) { return Rational(a, b); }

inline Rational symmetric(const Rational& q) { return q >= 1 ? q : Rational(1) / q; }

inline std::size_t verify_window(const SequenceDescriptor& m, const SequenceDescriptor& n, const CoarseWitness& w,
                                 std::size_t begin, std::size_t end)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const BigInt p = numerator(w.K), q = denominator(w.K);
    std::size_t bad = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const auto j = static_cast<std::int64_t>(i) + w.shift;
        const BigInt mi = m.value(i), nj = n.value(static_cast<std::size_t>(j));
        if (!(q * nj <= p * mi && q * mi <= p * nj))
            ++bad;
    }
    return bad;
}

inline std::size_t tail_onset(const SequenceDescriptor& s) { return s.prefix().size(); }

} // namespace detail

/// Bounded-ratio almost matching between two cycle-length sequences. The
/// witness uses γ = identity whenever that already has bounded ratio.
inline CoarseResult coarse_equivalent_rotary(const SequenceDescriptor& m, const SequenceDescriptor& n,
                                             std::size_t window = 32)
{
    using canon_growth = finquo::detail::Growth;
    CoarseResult r;
    auto finish = [&](Tri t, std::optional<CoarseWitness> w) {
        r.verdict = std::move(t);
        r.witness = w;
        if (w) {
            r.window_begin = w->onset;
            r.window_end = w->onset + window;
            r.window_violations = detail::verify_window(m, n, *w, r.window_begin, r.window_end);
            if (r.window_violations)
                throw std::logic_error("coarse witness fails on its own window");
        }
        return r;
    };
    if (!m.has_tail() && !n.has_tail())
        return finish(Tri::yes("finite", "both spaces are finite unions of components"), std::nullopt);
    if (m.has_tail() != n.has_tail())
        return finish(Tri::no("cardinality", "one space has finitely many coarse components"), std::nullopt);

    const std::size_t onset = std::max(detail::tail_onset(m), detail::tail_onset(n));
    const auto& ta = m.tail();
    const auto& tb = n.tail();
    if (m == n)
        return finish(Tri::yes("identical", "K = 1, gamma = id"), CoarseWitness{1, 0, 0});

    const auto ga = finquo::detail::growth_of(ta), gb = finquo::detail::growth_of(tb);
    if (ga != gb)
        return finish(Tri::no("divergence", std::string("growth classes differ (") +
                                                 finquo::detail::growth_name(ga) + " vs " +
                                                 finquo::detail::growth_name(gb) +
                                                 "): the counting functions #{i : m_i <= x} and #{i : n_i <= x} "
                                                 "are not within a bounded rescaling of x, so every almost "
                                                 "permutation has unbounded ratio"),
                      std::nullopt);

    switch (ga) {
    case canon_growth::bounded: {
        auto va = periodic_tail_values(m), vb = periodic_tail_values(n);
        Rational K = std::max(detail::ratio(va.back(), vb.front()), detail::ratio(vb.back(), va.front()));
        K = std::max(K, Rational(1));
        return finish(Tri::yes("bounded", "K = " + to_string(K) + " from the extreme recurring values, gamma = id"),
                      CoarseWitness{K, 0, onset});
    }
    case canon_growth::linear: {
        // m_i and n_i are both affine in i from the onset, so the ratio is monotone
        const auto& x = std::get<AffineTail>(ta);
        const auto& y = std::get<AffineTail>(tb);
        const Rational at_onset = detail::ratio(m.value(onset), n.value(onset));
        const Rational limit = detail::ratio(x.a, y.a);
        const Rational K = std::max(detail::symmetric(at_onset), detail::symmetric(limit));
        return finish(Tri::yes("linear", "K = " + to_string(K) + " (ratio monotone between " + to_string(at_onset) +
                                             " and the slope ratio " + to_string(limit) + "), gamma = id"),
                      CoarseWitness{K, 0, onset});
    }
    case canon_growth::exponential: {
        const auto& x = std::get<GeometricTail>(ta);
        const auto& y = std::get<GeometricTail>(tb);
        if (x.r != y.r)
            return finish(Tri::no("divergence", "ratios " + x.r.str() + " and " + y.r.str() +
                                                    " differ: counting functions grow like log_r x with different "
                                                    "bases, so no matching has bounded ratio"),
                          std::nullopt);
        const Rational q = detail::ratio(m.value(onset), n.value(onset));
        const Rational K = detail::symmetric(q);
        return finish(Tri::yes("exponential", "m_i / n_i = " + to_string(q) + " from index " + std::to_string(onset) +
                                                  ", K = " + to_string(K) + ", gamma = id"),
                      CoarseWitness{K, 0, onset});
    }
    case canon_growth::factorial: {
        // (i + o)! values: shift indices so the factorial arguments agree
        const auto& x = std::get<FactorialTail>(ta);
        const auto& y = std::get<FactorialTail>(tb);
        const auto argm = static_cast<std::int64_t>(x.offset) - static_cast<std::int64_t>(m.prefix().size());
        const auto argn = static_cast<std::int64_t>(y.offset) - static_cast<std::int64_t>(n.prefix().size());
        const std::int64_t shift = argm - argn;
        std::size_t from = onset;
        while (static_cast<std::int64_t>(from) + shift < static_cast<std::int64_t>(detail::tail_onset(n)))
            ++from;
        return finish(Tri::yes("factorial", "m_i = n_{i" + std::string(shift >= 0 ? "+" : "") + std::to_string(shift) +
                                                "} from index " + std::to_string(from) + ", K = 1"),
                      CoarseWitness{1, shift, from});
    }
    }
    return finish(Tri::unknown("incomparable", "tail generators incomparable"), std::nullopt);
}

// ---- explicit coarse maps ---------------------------------------------------

struct CoarseMaps {
    /// f: X_m -> X_n and g: X_n -> X_m on window points
    std::vector<std::size_t> f, g;
    std::vector<std::size_t> m_lengths, n_lengths;
    /// per component i: k_i and whether the m side was split (m_i >= n_γ(i))
    std::vector<std::size_t> k;
    std::vector<bool> split_m;
};

struct CoarseMapReport {
    CoarseMaps maps;
    Rational K;
    std::size_t f_modulus = 0, g_modulus = 0;   // max d(f x, f y) / d(x, y) over same-component pairs
    std::size_t gf_displacement = 0, fg_displacement = 0;
    std::size_t modulus_bound = 0;             // ⌈K⌉
    bool fg_identity = true, gf_identity = true;
    /// largest distortion over pairs in different components, measured in the window metrics
    Rational cross_f_ratio = 0, cross_g_ratio = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

/// Split a cycle of `big` points into `small` consecutive blocks of size k or k+1.
inline std::vector<std::size_t> block_of(std::size_t big, std::size_t small)
{
    std::vector<std::size_t> blk(big);
    const std::size_t k = big / small, extra = big % small;
    std::size_t p = 0;
    for (std::size_t j = 0; j < small; ++j) {
        const std::size_t size = k + (j < extra ? 1 : 0);
        for (std::size_t t = 0; t < size; ++t)
            blk[p++] = j;
    }
    return blk;
}

inline std::size_t ceil_rational(const Rational& q)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const BigInt c = (numerator(q) + denominator(q) - 1) / denominator(q);
    return static_cast<std::size_t>(c);
}

} // namespace detail

/// The interval-splitting maps: component i of X_m is paired with component
/// gamma[i] of X_n; the longer side is cut into blocks that collapse onto the
/// points of the shorter side.
inline CoarseMapReport build_coarse_maps(const std::vector<std::size_t>& m_lengths,
                                         const std::vector<std::size_t>& n_lengths,
                                         const std::vector<std::size_t>& gamma, const Rational& K)
{
    if (gamma.size() != m_lengths.size())
        throw std::invalid_argument("gamma must pair every m component");
    if (K < 1)
        throw std::invalid_argument("K must be at least 1");
    std::vector<bool> used(n_lengths.size(), false);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] >= n_lengths.size() || used[gamma[i]])
            throw std::invalid_argument("gamma is not injective into the n components");
        used[gamma[i]] = true;
        const Rational q(static_cast<long long>(m_lengths[i]), static_cast<long long>(n_lengths[gamma[i]]));
        if (q > K || q < Rational(1) / K)
            throw std::invalid_argument("invalid witness: m_" + std::to_string(i) + " / n_" +
                                        std::to_string(gamma[i]) + " = " + to_string(q) + " outside [1/K, K]");
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("gamma must be onto the n components of the window");

    const auto X = MetricWindow::cycles(m_lengths, CrossRule::inclusive, false);
    const auto Y = MetricWindow::cycles(n_lengths, CrossRule::inclusive, false);
    CoarseMapReport rep;
    rep.K = K;
    rep.modulus_bound = detail::ceil_rational(K);
    auto& M = rep.maps;
    M.m_lengths = m_lengths;
    M.n_lengths = n_lengths;
    M.f.assign(X.size(), 0);
    M.g.assign(Y.size(), 0);
    for (std::size_t i = 0; i < m_lengths.size(); ++i) {
        const std::size_t a = m_lengths[i], b = n_lengths[gamma[i]];
        const std::size_t sx = X.start(i), sy = Y.start(gamma[i]);
        if (a >= b) {
            auto blk = detail::block_of(a, b);
            M.k.push_back(a / b);
            M.split_m.push_back(true);
            for (std::size_t p = 0; p < a; ++p)
                M.f[sx + p] = sy + blk[p];
            for (std::size_t p = a; p-- > 0;)
                M.g[sy + blk[p]] = sx + p; // ends on the first point of each block
        } else {
            auto blk = detail::block_of(b, a);
            M.k.push_back(b / a);
            M.split_m.push_back(false);
            for (std::size_t p = 0; p < b; ++p)
                M.g[sy + p] = sx + blk[p];
            for (std::size_t p = b; p-- > 0;)
                M.f[sx + blk[p]] = sy + p;
        }
    }

    auto modulus = [](const MetricWindow& A, const MetricWindow& B, const std::vector<std::size_t>& h,
                      Rational& cross) {
        std::size_t worst = 0;
        for (std::size_t x = 0; x < A.size(); ++x)
            for (std::size_t y = x + 1; y < A.size(); ++y) {
                const std::size_t d = A.dist(x, y), e = B.dist(h[x], h[y]);
                if (A.owner(x) == A.owner(y)) {
                    worst = std::max(worst, (e + d - 1) / d);
                } else {
                    cross = std::max(cross, Rational(static_cast<long long>(e), static_cast<long long>(d)));
                }
            }
        return worst;
    };
    rep.f_modulus = modulus(X, Y, M.f, rep.cross_f_ratio);
    rep.g_modulus = modulus(Y, X, M.g, rep.cross_g_ratio);
    for (std::size_t x = 0; x < X.size(); ++x) {
        const auto back = M.g[M.f[x]];
        rep.gf_displacement = std::max(rep.gf_displacement, X.dist(x, back));
        rep.gf_identity = rep.gf_identity && back == x;
    }
    for (std::size_t y = 0; y < Y.size(); ++y) {
        const auto back = M.f[M.g[y]];
        rep.fg_displacement = std::max(rep.fg_displacement, Y.dist(y, back));
        rep.fg_identity = rep.fg_identity && back == y;
    }
    if (rep.f_modulus > rep.modulus_bound)
        rep.failures.push_back("f expands a distance by " + std::to_string(rep.f_modulus));
    if (rep.g_modulus > rep.modulus_bound)
        rep.failures.push_back("g expands a distance by " + std::to_string(rep.g_modulus));
    if (Rational(static_cast<long long>(rep.gf_displacement)) > K)
        rep.failures.push_back("g o f moves a point by " + std::to_string(rep.gf_displacement));
    if (Rational(static_cast<long long>(rep.fg_displacement)) > K)
        rep.failures.push_back("f o g moves a point by " + std::to_string(rep.fg_displacement));
    for (std::size_t i = 0; i < m_lengths.size(); ++i) {
        // the collapsing side composes to the identity exactly
        const std::size_t sx = X.start(i), sy = Y.start(gamma[i]);
        if (M.split_m[i]) {
            for (std::size_t j = 0; j < n_lengths[gamma[i]]; ++j)
                if (M.f[M.g[sy + j]] != sy + j)
                    rep.failures.push_back("f o g is not the identity on n_" + std::to_string(gamma[i]));
        } else {
            for (std::size_t j = 0; j < m_lengths[i]; ++j)
                if (M.g[M.f[sx + j]] != sx + j)
                    rep.failures.push_back("g o f is not the identity on m_" + std::to_string(i));
        }
    }
    return rep;
}

} // namespace finquo::coarse
