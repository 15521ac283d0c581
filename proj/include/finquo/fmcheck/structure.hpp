#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace finquo::fm {

using Elem = std::uint64_t;

/// Powerset algebra of {0..N-1} (N <= 64) with the automorphism induced by
/// rotating each of a list of consecutive cycles by one place. A single cycle
/// of length n is ⟨P(n), r_n⟩.
class FiniteDynSys {
public:
    explicit FiniteDynSys(std::vector<std::uint32_t> cycles)
        : cycles_(std::move(cycles))
    {
        std::uint32_t off = 0;
        for (auto L : cycles_) {
            if (L == 0)
                throw std::invalid_argument("cycle length must be positive");
            offsets_.push_back(off);
            off += L;
            if (off > 64)
                throw std::invalid_argument("at most 64 points are supported");
        }
        n_ = off;
        if (n_ == 0)
            throw std::invalid_argument("structure needs at least one point");
        full_ = n_ == 64 ? ~Elem{0} : ((Elem{1} << n_) - 1);
        for (std::size_t c = 0; c < cycles_.size(); ++c)
            masks_.push_back(low(cycles_[c]) << offsets_[c]);
    }

    static FiniteDynSys single(std::uint32_t n) { return FiniteDynSys({n}); }

    std::uint32_t size() const { return n_; }
    Elem full() const { return full_; }
    const std::vector<std::uint32_t>& cycles() const { return cycles_; }
    const std::vector<std::uint32_t>& offsets() const { return offsets_; }
    const std::vector<Elem>& cycle_masks() const { return masks_; }

    /// α^k(x), k may be negative.
    Elem apow(Elem x, std::int64_t k) const
    {
        if (k == 0)
            return x;
        Elem out = 0;
        for (std::size_t c = 0; c < cycles_.size(); ++c) {
            const std::uint32_t L = cycles_[c];
            const Elem xs = (x >> offsets_[c]) & low(L);
            const auto s = static_cast<std::uint32_t>(((k % static_cast<std::int64_t>(L)) + L) % L);
            const Elem r = s == 0 ? xs : (((xs << s) | (xs >> (L - s))) & low(L));
            out |= r << offsets_[c];
        }
        return out;
    }

    /// Least element of each α-orbit on the universe (N <= 20).
    std::vector<Elem> orbit_representatives() const
    {
        if (n_ > 20)
            throw std::invalid_argument("orbit enumeration limited to 20 points");
        const Elem U = Elem{1} << n_;
        std::vector<bool> seen(U, false);
        std::vector<Elem> reps;
        for (Elem x = 0; x < U; ++x) {
            if (seen[x])
                continue;
            reps.push_back(x);
            Elem y = x;
            do {
                seen[y] = true;
                y = apow(y, 1);
            } while (y != x);
        }
        return reps;
    }

    std::string describe() const
    {
        std::string s = "cycles[";
        for (std::size_t i = 0; i < cycles_.size(); ++i)
            s += (i ? "," : "") + std::to_string(cycles_[i]);
        return s + "]";
    }

private:
    static Elem low(std::uint32_t L) { return L >= 64 ? ~Elem{0} : ((Elem{1} << L) - 1); }

    std::vector<std::uint32_t> cycles_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Elem> masks_;
    std::uint32_t n_ = 0;
    Elem full_ = 0;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Budget {
    /// largest universe over which quantifiers may range
    std::uint32_t max_points = 14;
    /// cap on universe^rank
    double max_steps = 68719476736.0; // 2^36
};

} // namespace finquo::fm
