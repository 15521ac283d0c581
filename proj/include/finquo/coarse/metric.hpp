#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "finquo/spectrum.hpp"

namespace finquo::coarse {

enum class CrossRule {
    /// max(n, max_{k<=n} diam J_k): always a metric
    inclusive,
    /// max(n, max_{k<n} diam J_k): the formula read literally; can break the triangle inequality
    literal,
};

struct Component {
    std::size_t length = 0;
    bool cycle = true;
    /// position in the input before reordering
    std::size_t source_index = 0;

    std::size_t diameter() const { return cycle ? length / 2 : length - 1; }
};

/// Concatenated orbit intervals J_0..J_{K-1} with the path/cycle metric inside
/// each J_k and the enumeration-dependent metric across them.
class MetricWindow {
public:
    MetricWindow(std::vector<Component> comps, CrossRule rule = CrossRule::inclusive)
        : comps_(std::move(comps))
        , rule_(rule)
    {
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            if (comps_[c].length == 0)
                throw std::invalid_argument("component length must be positive");
            start_.push_back(size_);
            for (std::size_t t = 0; t < comps_[c].length; ++t)
                owner_.push_back(c);
            size_ += comps_[c].length;
        }
        std::size_t running = 0;
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            prefix_diam_before_.push_back(running);
            running = std::max(running, comps_[c].diameter());
            prefix_diam_through_.push_back(running);
        }
    }

    /// Cycles of the given lengths, in ascending length order (ties by input position).
    static MetricWindow cycles(const std::vector<std::size_t>& lengths, CrossRule rule = CrossRule::inclusive,
                               bool sort = true)
    {
        std::vector<Component> cs;
        for (std::size_t i = 0; i < lengths.size(); ++i)
            cs.push_back({lengths[i], true, i});
        if (sort)
            std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.length < b.length; });
        return MetricWindow(std::move(cs), rule);
    }

    std::size_t size() const { return size_; }
    std::size_t components() const { return comps_.size(); }
    const Component& component(std::size_t c) const { return comps_[c]; }
    std::size_t start(std::size_t c) const { return start_[c]; }
    std::size_t owner(std::size_t p) const { return owner_[p]; }
    CrossRule rule() const { return rule_; }

    std::size_t dist(std::size_t i, std::size_t j) const
    {
        const std::size_t a = owner_[i], b = owner_[j];
        if (a == b) {
            const std::size_t d = i > j ? i - j : j - i;
            return comps_[a].cycle ? std::min(d, comps_[a].length - d) : d;
        }
        const std::size_t n = std::max(a, b);
        const std::size_t diam = rule_ == CrossRule::inclusive ? prefix_diam_through_[n] : prefix_diam_before_[n];
        return std::max(n, diam);
    }

    std::vector<std::vector<std::size_t>> matrix() const
    {
        std::vector<std::vector<std::size_t>> d(size_, std::vector<std::size_t>(size_));
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = 0; j < size_; ++j)
                d[i][j] = dist(i, j);
        return d;
    }

    std::string order_note() const
    {
        std::string s = "components ordered by ascending length, ties by input position:";
        for (const auto& c : comps_)
            s += " " + std::to_string(c.source_index);
        return s;
    }

private:
    std::vector<Component> comps_;
    CrossRule rule_;
    std::vector<std::size_t> start_, owner_, prefix_diam_before_, prefix_diam_through_;
    std::size_t size_ = 0;
};

/// The first components of the spectrum (finite paths, then cycles in
/// descriptor order) holding at least `points` points.
inline MetricWindow metric_window(const OrbitSpectrum& s, std::size_t points, CrossRule rule = CrossRule::inclusive)
{
    if (!(s.nLike == 0 && s.revNLike == 0 && s.zLike == Card::finite(0)))
        throw std::invalid_argument("metric windows need finite orbits only");
    std::vector<Component> cs;
    std::size_t mass = 0;
    for (auto L : s.finitePaths) {
        if (mass >= points)
            break;
        cs.push_back({static_cast<std::size_t>(L), false, cs.size()});
        mass += L;
    }
    for (std::size_t k = 0; mass < points; ++k) {
        if (auto L = s.cycles.length(); L && k >= *L)
            throw std::invalid_argument("window of " + std::to_string(points) + " points exceeds the orbit mass " +
                                        std::to_string(mass));
        auto v = to_u64(s.cycles.value(k));
        if (!v || *v > points + (std::size_t{1} << 20))
            throw std::invalid_argument("cycle length too large for a window");
        cs.push_back({static_cast<std::size_t>(*v), true, cs.size()});
        mass += *v;
    }
    std::stable_sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.length < b.length; });
    return MetricWindow(std::move(cs), rule);
}

struct MetricCheck {
    std::uint64_t triangle_violations = 0;
    std::uint64_t symmetry_violations = 0;
    std::uint64_t identity_violations = 0;
    /// first violating triple
    std::vector<std::size_t> example;
    bool ok() const { return triangle_violations == 0 && symmetry_violations == 0 && identity_violations == 0; }
};

inline MetricCheck check_metric(const MetricWindow& w)
{
    MetricCheck r;
    const auto d = w.matrix();
    const std::size_t N = w.size();
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            if (d[i][j] != d[j][i])
                ++r.symmetry_violations;
            if ((d[i][j] == 0) != (i == j))
                ++r.identity_violations;
            for (std::size_t k = 0; k < N; ++k)
                if (d[i][k] > d[i][j] + d[j][k]) {
                    if (r.example.empty())
                        r.example = {i, j, k};
                    ++r.triangle_violations;
                }
        }
    return r;
}

struct BallRow {
    std::size_t radius = 0;
    std::size_t max_ball = 0;
    std::size_t bound = 0;
    bool ok = true;
};

/// Largest m-ball per radius against max(2m+1, |J_0 ∪ ... ∪ J_m|).
inline std::vector<BallRow> ball_growth(const MetricWindow& w, const std::vector<std::size_t>& radii)
{
    std::vector<BallRow> rows;
    for (auto m : radii) {
        BallRow r;
        r.radius = m;
        std::size_t head = 0;
        for (std::size_t c = 0; c < w.components() && c <= m; ++c)
            head += w.component(c).length;
        r.bound = std::max(2 * m + 1, head);
        for (std::size_t j = 0; j < w.size(); ++j) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < w.size(); ++i)
                count += w.dist(i, j) <= m;
            r.max_ball = std::max(r.max_ball, count);
        }
        r.ok = r.max_ball <= r.bound;
        rows.push_back(r);
    }
    return rows;
}

} // namespace finquo::coarse
