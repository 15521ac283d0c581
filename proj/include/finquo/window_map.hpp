#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace finquo {

/// Injective partial self-map of {0..N-1}: the restriction of an almost
/// permutation to a finite window.
///
/// Boundary data records how the restricted map meets the window edge:
/// an *exit* is a source whose true image lies outside the window, an
/// *entry* is a target whose true preimage lies outside. Points that are
/// neither in the domain nor exits are genuine gaps of the map; likewise for
/// the range and entries.
class WindowMap {
public:
    static constexpr std::int64_t none = -1;

    WindowMap() = default;

    explicit WindowMap(std::size_t n)
        : n_(n)
        , fwd_(n, none)
        , bwd_(n, none)
        , exit_(n, false)
        , entry_(n, false)
    {
    }

    WindowMap(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
              const std::vector<std::size_t>& exits = {}, const std::vector<std::size_t>& entries = {})
        : WindowMap(n)
    {
        for (auto [i, j] : pairs)
            set(i, j);
        for (auto i : exits)
            mark_exit(i);
        for (auto j : entries)
            mark_entry(j);
    }

    static WindowMap identity(std::size_t n)
    {
        WindowMap f(n);
        for (std::size_t i = 0; i < n; ++i)
            f.set(i, i);
        return f;
    }

    /// i -> i+1 on the window; the last point exits.
    static WindowMap successor(std::size_t n)
    {
        WindowMap f(n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            f.set(i, i + 1);
        if (n > 0)
            f.mark_exit(n - 1);
        return f;
    }

    /// Consecutive cycles of the given lengths.
    static WindowMap rotary(const std::vector<std::size_t>& lengths)
    {
        std::size_t total = 0;
        for (auto l : lengths) {
            if (l == 0)
                throw std::invalid_argument("cycle length must be >= 1");
            total += l;
        }
        WindowMap f(total);
        std::size_t base = 0;
        for (auto l : lengths) {
            for (std::size_t t = 0; t < l; ++t)
                f.set(base + t, base + (t + 1) % l);
            base += l;
        }
        return f;
    }

    void set(std::size_t i, std::size_t j)
    {
        check(i);
        check(j);
        if (fwd_[i] != none)
            throw std::invalid_argument("not injective: source " + std::to_string(i) + " mapped twice");
        if (bwd_[j] != none)
            throw std::invalid_argument("not injective: target " + std::to_string(j) + " hit twice");
        if (exit_[i])
            throw std::invalid_argument("source " + std::to_string(i) + " is already an exit");
        if (entry_[j])
            throw std::invalid_argument("target " + std::to_string(j) + " is already an entry");
        fwd_[i] = static_cast<std::int64_t>(j);
        bwd_[j] = static_cast<std::int64_t>(i);
    }

    void mark_exit(std::size_t i)
    {
        check(i);
        if (fwd_[i] != none)
            throw std::invalid_argument("exit " + std::to_string(i) + " already has an image in the window");
        exit_[i] = true;
    }

    void mark_entry(std::size_t j)
    {
        check(j);
        if (bwd_[j] != none)
            throw std::invalid_argument("entry " + std::to_string(j) + " already has a preimage in the window");
        entry_[j] = true;
    }

    /// Remove i from the domain; its image becomes a genuine range gap.
    void erase(std::size_t i)
    {
        check(i);
        if (fwd_[i] != none) {
            bwd_[static_cast<std::size_t>(fwd_[i])] = none;
            fwd_[i] = none;
        }
        exit_[i] = false;
    }

    std::size_t size() const { return n_; }
    std::optional<std::size_t> at(std::size_t i) const
    {
        if (i >= n_ || fwd_[i] == none)
            return std::nullopt;
        return static_cast<std::size_t>(fwd_[i]);
    }
    std::optional<std::size_t> preimage(std::size_t j) const
    {
        if (j >= n_ || bwd_[j] == none)
            return std::nullopt;
        return static_cast<std::size_t>(bwd_[j]);
    }
    bool in_domain(std::size_t i) const { return fwd_[i] != none; }
    bool in_range(std::size_t j) const { return bwd_[j] != none; }
    bool is_exit(std::size_t i) const { return exit_[i]; }
    bool is_entry(std::size_t j) const { return entry_[j]; }

    std::vector<std::pair<std::size_t, std::size_t>> pairs() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (fwd_[i] != none)
                out.emplace_back(i, static_cast<std::size_t>(fwd_[i]));
        return out;
    }
    std::vector<std::size_t> exits() const { return collect(exit_); }
    std::vector<std::size_t> entries() const { return collect(entry_); }

    bool operator==(const WindowMap&) const = default;

private:
    void check(std::size_t i) const
    {
        if (i >= n_)
            throw std::out_of_range("point " + std::to_string(i) + " outside window of size " + std::to_string(n_));
    }
    static std::vector<std::size_t> collect(const std::vector<bool>& v)
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i])
                out.push_back(i);
        return out;
    }

    std::size_t n_ = 0;
    std::vector<std::int64_t> fwd_;
    std::vector<std::int64_t> bwd_;
    std::vector<bool> exit_;
    std::vector<bool> entry_;
};

/// h = g ∘ f, i.e. h(i) = g(f(i)) where both steps stay in the window.
inline WindowMap compose(const WindowMap& f, const WindowMap& g)
{
    if (f.size() != g.size())
        throw std::invalid_argument("compose: window sizes differ (" + std::to_string(f.size()) + " vs " +
                                    std::to_string(g.size()) + ")");
    const std::size_t n = f.size();
    WindowMap h(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (auto y = f.at(i)) {
            if (auto z = g.at(*y))
                h.set(i, *z);
            else if (g.is_exit(*y))
                h.mark_exit(i);
        } else if (f.is_exit(i)) {
            h.mark_exit(i);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (h.in_range(j))
            continue;
        if (g.is_entry(j)) {
            h.mark_entry(j);
        } else if (auto y = g.preimage(j); y && f.is_entry(*y)) {
            h.mark_entry(j);
        }
    }
    return h;
}

inline WindowMap inverse(const WindowMap& f)
{
    WindowMap h(f.size());
    for (auto [i, j] : f.pairs())
        h.set(j, i);
    for (auto i : f.exits())
        h.mark_entry(i);
    for (auto j : f.entries())
        h.mark_exit(j);
    return h;
}

/// Number of points on which f and g disagree, counting domain mismatches.
inline std::size_t disagreement_count(const WindowMap& f, const WindowMap& g)
{
    if (f.size() != g.size())
        throw std::invalid_argument("almost_equal: window sizes differ");
    std::size_t count = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.at(i) != g.at(i))
            ++count;
    return count;
}

inline bool almost_equal(const WindowMap& f, const WindowMap& g, std::size_t threshold = 0)
{
    return disagreement_count(f, g) <= threshold;
}

/// Greedy B ⊆ {i : f(i) ≠ g(i)} with f[B] ∩ g[B] = ∅. Each accepted point
/// rules out at most two later candidates, so 3|B| ≥ |A|.
inline std::vector<std::size_t> separating_set(const WindowMap& f, const WindowMap& g)
{
    if (f.size() != g.size())
        throw std::invalid_argument("separating_set: window sizes differ");
    const std::size_t n = f.size();
    std::vector<bool> f_img(n, false), g_img(n, false);
    std::vector<std::size_t> out;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        auto a = f.at(i);
        auto b = g.at(i);
        if (!a || !b || *a == *b)
            continue;
        any = true;
        if (g_img[*a] || f_img[*b])
            continue;
        out.push_back(i);
        f_img[*a] = true;
        g_img[*b] = true;
    }
    if (!any)
        throw std::invalid_argument("maps agree: disagreement set is empty");
    return out;
}

enum class OrbitKindTag { FiniteCycle, NLike, ReverseNLike, ZLike, FinitePath, Censored };

inline const char* to_string(OrbitKindTag t)
{
    switch (t) {
    case OrbitKindTag::FiniteCycle: return "FiniteCycle";
    case OrbitKindTag::NLike: return "NLike";
    case OrbitKindTag::ReverseNLike: return "ReverseNLike";
    case OrbitKindTag::ZLike: return "ZLike";
    case OrbitKindTag::FinitePath: return "FinitePath";
    case OrbitKindTag::Censored: return "Censored";
    }
    return "?";
}

struct OrbitKind {
    OrbitKindTag tag = OrbitKindTag::FinitePath;
    std::size_t length = 0;
    // Censored orbits: which ends run off the window
    bool forward_open = false;
    bool backward_open = false;

    bool operator==(const OrbitKind&) const = default;
};

struct Orbit {
    /// points in orbit order (path order from its first point, or cycle order from its least point)
    std::vector<std::size_t> points;
    OrbitKind kind;
};

/// Partition of the window into f-orbits. An orbit touching an exit or an
/// entry is Censored: its true kind depends on points outside the window.
inline std::vector<Orbit> classify_orbits(const WindowMap& f)
{
    const std::size_t n = f.size();
    std::vector<bool> seen(n, false);
    std::vector<Orbit> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        // walk back to the start of the path, or detect a cycle
        std::size_t start = s;
        bool cycle = false;
        while (auto p = f.preimage(start)) {
            start = *p;
            if (start == s) {
                cycle = true;
                break;
            }
        }
        Orbit o;
        std::size_t x = start;
        if (cycle) {
            // rotate so the least point leads
            std::size_t least = s;
            for (std::size_t y = *f.at(s); y != s; y = *f.at(y))
                least = std::min(least, y);
            x = least;
            do {
                o.points.push_back(x);
                seen[x] = true;
                x = *f.at(x);
            } while (x != least);
            o.kind = {OrbitKindTag::FiniteCycle, o.points.size()};
        } else {
            for (;;) {
                o.points.push_back(x);
                seen[x] = true;
                auto y = f.at(x);
                if (!y)
                    break;
                x = *y;
            }
            const bool bwd = f.is_entry(o.points.front());
            const bool fwd = f.is_exit(o.points.back());
            if (bwd || fwd)
                o.kind = {OrbitKindTag::Censored, o.points.size(), fwd, bwd};
            else
                o.kind = {OrbitKindTag::FinitePath, o.points.size()};
        }
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const Orbit& a, const Orbit& b) {
        return *std::min_element(a.points.begin(), a.points.end()) <
               *std::min_element(b.points.begin(), b.points.end());
    });
    return out;
}

struct WindowIndex {
    /// genuine starts minus genuine ends; equals N+ - N- of the map the window restricts
    std::int64_t value = 0;
    std::size_t censored = 0;
    std::size_t forward_only = 0;
    std::size_t backward_only = 0;
    std::size_t both_open = 0;
};

inline WindowIndex index(const WindowMap& f)
{
    WindowIndex r;
    for (const auto& o : classify_orbits(f)) {
        if (o.kind.tag != OrbitKindTag::Censored)
            continue;
        ++r.censored;
        if (o.kind.forward_open && o.kind.backward_open)
            ++r.both_open;
        else if (o.kind.forward_open)
            ++r.forward_only;
        else
            ++r.backward_only;
    }
    r.value = static_cast<std::int64_t>(r.forward_only) - static_cast<std::int64_t>(r.backward_only);
    return r;
}

inline int parity(const WindowMap& f)
{
    const auto v = index(f).value;
    return static_cast<int>(((v % 2) + 2) % 2);
}

} // namespace finquo
