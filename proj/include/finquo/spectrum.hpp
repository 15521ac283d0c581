#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "finquo/sequence.hpp"
#include "finquo/window_map.hpp"

namespace finquo {

/// Natural number or ω.
struct Card {
    bool omega = false;
    std::uint64_t k = 0;

    static Card finite(std::uint64_t v) { return {false, v}; }
    static Card infinite() { return {true, 0}; }

    bool is_finite() const { return !omega; }
    bool operator==(const Card&) const = default;

    friend Card operator+(Card a, Card b)
    {
        if (a.omega || b.omega)
            return infinite();
        return finite(a.k + b.k);
    }
    friend Card operator*(std::uint64_t c, Card a)
    {
        if (a.omega)
            return c == 0 ? finite(0) : infinite();
        return finite(c * a.k);
    }

    std::string str() const { return omega ? "omega" : std::to_string(k); }
};

/// Orbit structure of an almost permutation up to =*.
struct OrbitSpectrum {
    SequenceDescriptor cycles;
    std::uint64_t nLike = 0;
    std::uint64_t revNLike = 0;
    Card zLike;
    std::vector<std::uint64_t> finitePaths;

    static OrbitSpectrum sigma()
    {
        OrbitSpectrum s;
        s.nLike = 1;
        return s;
    }
    static OrbitSpectrum sigma_inverse()
    {
        OrbitSpectrum s;
        s.revNLike = 1;
        return s;
    }
    static OrbitSpectrum rotary(SequenceDescriptor d)
    {
        OrbitSpectrum s;
        s.cycles = std::move(d);
        return s;
    }

    bool pure_rotary() const
    {
        return nLike == 0 && revNLike == 0 && zLike == Card::finite(0) && finitePaths.empty();
    }

    bool operator==(const OrbitSpectrum&) const = default;
};

inline std::int64_t index(const OrbitSpectrum& s)
{
    return static_cast<std::int64_t>(s.nLike) - static_cast<std::int64_t>(s.revNLike);
}

inline int parity(const OrbitSpectrum& s)
{
    const auto v = index(s);
    return static_cast<int>(((v % 2) + 2) % 2);
}

inline OrbitSpectrum direct_sum(const OrbitSpectrum& a, const OrbitSpectrum& b)
{
    OrbitSpectrum r;
    r.cycles = merge_multisets(a.cycles, b.cycles);
    r.nLike = a.nLike + b.nLike;
    r.revNLike = a.revNLike + b.revNLike;
    r.zLike = a.zLike + b.zLike;
    r.finitePaths = a.finitePaths;
    r.finitePaths.insert(r.finitePaths.end(), b.finitePaths.begin(), b.finitePaths.end());
    std::sort(r.finitePaths.begin(), r.finitePaths.end());
    return r;
}

/// Spectrum with sorted prefix and normalized periodic tails, for comparison up to multiset order.
inline OrbitSpectrum normalized(OrbitSpectrum s)
{
    s.cycles = multiset_normal_form(s.cycles);
    std::sort(s.finitePaths.begin(), s.finitePaths.end());
    return s;
}

struct WindowSpectrum {
    OrbitSpectrum spectrum;
    std::size_t censored = 0;
};

/// Spectrum of the orbits that close inside the window; censored orbits are only counted.
inline WindowSpectrum spectrum_of_window(const WindowMap& f)
{
    WindowSpectrum r;
    std::vector<BigInt> cycles;
    for (const auto& o : classify_orbits(f)) {
        switch (o.kind.tag) {
        case OrbitKindTag::FiniteCycle: cycles.emplace_back(o.kind.length); break;
        case OrbitKindTag::FinitePath: r.spectrum.finitePaths.push_back(o.kind.length); break;
        default: ++r.censored; break;
        }
    }
    std::sort(cycles.begin(), cycles.end());
    std::sort(r.spectrum.finitePaths.begin(), r.spectrum.finitePaths.end());
    r.spectrum.cycles = SequenceDescriptor::finite(std::move(cycles));
    return r;
}

/// Desk-scale reading of a window in which censored orbits stand in for the
/// infinite ones: forward-open only as N-like, backward-open only as reverse
/// N-like, open at both ends as Z-like.
inline OrbitSpectrum provisional_spectrum(const WindowMap& f)
{
    auto r = spectrum_of_window(f).spectrum;
    std::uint64_t z = 0;
    for (const auto& o : classify_orbits(f)) {
        if (o.kind.tag != OrbitKindTag::Censored)
            continue;
        if (o.kind.forward_open && o.kind.backward_open)
            ++z;
        else if (o.kind.forward_open)
            ++r.nLike;
        else
            ++r.revNLike;
    }
    r.zLike = Card::finite(z);
    return r;
}

/// Canonical window layout for a finite spectrum: cycles, finite paths, open
/// chains (N-like, reverse N-like, Z-like) in that order, each open chain of
/// length `chain`.
inline WindowMap realize_window(const OrbitSpectrum& s, std::size_t chain = 2)
{
    if (!s.cycles.is_finite() || !s.zLike.is_finite())
        throw std::invalid_argument("realize_window: spectrum must be finite");
    if (chain == 0)
        throw std::invalid_argument("realize_window: chain length must be positive");
    std::vector<std::size_t> cyc;
    for (const auto& c : s.cycles.prefix()) {
        auto v = to_u64(c);
        if (!v || *v > (1u << 20))
            throw std::invalid_argument("realize_window: cycle too long for a window");
        cyc.push_back(static_cast<std::size_t>(*v));
    }
    std::size_t total = 0;
    for (auto c : cyc)
        total += c;
    for (auto p : s.finitePaths)
        total += p;
    total += chain * (s.nLike + s.revNLike + s.zLike.k);
    WindowMap f(total);
    std::size_t base = 0;
    for (auto l : cyc) {
        for (std::size_t t = 0; t < l; ++t)
            f.set(base + t, base + (t + 1) % l);
        base += l;
    }
    auto path = [&](std::size_t len, bool bwd_open, bool fwd_open) {
        for (std::size_t t = 0; t + 1 < len; ++t)
            f.set(base + t, base + t + 1);
        if (bwd_open)
            f.mark_entry(base);
        if (fwd_open)
            f.mark_exit(base + len - 1);
        base += len;
    };
    for (auto p : s.finitePaths)
        path(p, false, false);
    for (std::uint64_t i = 0; i < s.nLike; ++i)
        path(chain, false, true);
    for (std::uint64_t i = 0; i < s.revNLike; ++i)
        path(chain, true, false);
    for (std::uint64_t i = 0; i < s.zLike.k; ++i)
        path(chain, true, true);
    return f;
}

} // namespace finquo
