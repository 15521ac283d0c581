#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "finquo/coarse/metric.hpp"

namespace finquo::coarse {

enum class CoverPolicy {
    /// at least two pieces of size >= 2k once a component exceeds 2k points
    wide,
    /// floor(L/k) near-equal pieces of size k..2k, as the construction is usually phrased
    literal,
};

struct CoverPiece {
    std::size_t component = 0;
    std::vector<std::size_t> points; // window point indices
    std::size_t diameter = 0;
};

struct CoverReport {
    std::size_t k = 0;
    std::vector<CoverPiece> pieces;
    /// per component: largest number of its own pieces met by a k-ball centred in it
    std::vector<std::size_t> multiplicity;
    std::size_t max_multiplicity = 0;
    std::size_t max_diameter = 0;
    /// largest number of pieces (any component) met by one k-ball in the window metric
    std::size_t global_multiplicity = 0;
    std::vector<std::size_t> short_components;    // L < k, kept whole
    std::vector<std::size_t> diameter_exceeded;   // some piece has diameter > 2k
    std::string order_note;

    bool multiplicity_ok() const { return max_multiplicity <= 2; }
    bool diameter_ok() const { return diameter_exceeded.empty(); }
};

namespace detail {

inline std::size_t piece_count(std::size_t L, std::size_t k, CoverPolicy policy)
{
    if (k == 0)
        return L;
    if (L <= 2 * k)
        return 1;
    if (policy == CoverPolicy::literal)
        return L / k;
    return std::max<std::size_t>(2, L / (2 * k));
}

} // namespace detail

/// Interval cover of each component, checked by enumeration on the window.
inline CoverReport asdim_cover(const MetricWindow& w, std::size_t k, CoverPolicy policy = CoverPolicy::wide)
{
    CoverReport rep;
    rep.k = k;
    rep.order_note = w.order_note();
    std::vector<std::size_t> piece_of(w.size());
    for (std::size_t c = 0; c < w.components(); ++c) {
        const std::size_t L = w.component(c).length;
        if (L < k)
            rep.short_components.push_back(c);
        const std::size_t q = detail::piece_count(L, k, policy);
        const std::size_t base = L / q, extra = L % q;
        std::size_t p = w.start(c);
        bool exceeded = false;
        for (std::size_t j = 0; j < q; ++j) {
            CoverPiece piece;
            piece.component = c;
            const std::size_t size = base + (j < extra ? 1 : 0);
            for (std::size_t t = 0; t < size; ++t) {
                piece_of[p] = rep.pieces.size();
                piece.points.push_back(p++);
            }
            for (auto x : piece.points)
                for (auto y : piece.points)
                    piece.diameter = std::max(piece.diameter, w.dist(x, y));
            rep.max_diameter = std::max(rep.max_diameter, piece.diameter);
            exceeded = exceeded || piece.diameter > 2 * k;
            rep.pieces.push_back(std::move(piece));
        }
        if (exceeded)
            rep.diameter_exceeded.push_back(c);
    }

    rep.multiplicity.assign(w.components(), 0);
    for (std::size_t x = 0; x < w.size(); ++x) {
        std::set<std::size_t> own, all;
        for (std::size_t y = 0; y < w.size(); ++y) {
            if (w.dist(x, y) > k)
                continue;
            all.insert(piece_of[y]);
            if (w.owner(y) == w.owner(x))
                own.insert(piece_of[y]);
        }
        auto& m = rep.multiplicity[w.owner(x)];
        m = std::max(m, own.size());
        rep.max_multiplicity = std::max(rep.max_multiplicity, own.size());
        rep.global_multiplicity = std::max(rep.global_multiplicity, all.size());
    }
    return rep;
}

inline CoverReport asdim_cover(const std::vector<std::size_t>& lengths, std::size_t k,
                               CoverPolicy policy = CoverPolicy::wide)
{
    return asdim_cover(MetricWindow::cycles(lengths), k, policy);
}

} // namespace finquo::coarse
