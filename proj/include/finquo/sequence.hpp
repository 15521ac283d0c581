#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "finquo/bigint.hpp"

namespace finquo {

struct EmptyTail {
    bool operator==(const EmptyTail&) const = default;
};

struct ConstantTail {
    BigInt c;
    bool operator==(const ConstantTail&) const = default;
};

/// j -> a*j + b
struct AffineTail {
    BigInt a;
    BigInt b;
    bool operator==(const AffineTail&) const = default;
};

/// j -> a*r^j
struct GeometricTail {
    BigInt a;
    BigInt r;
    bool operator==(const GeometricTail&) const = default;
};

/// j -> (j + offset)!
struct FactorialTail {
    std::uint64_t offset = 0;
    bool operator==(const FactorialTail&) const = default;
};

/// Residue constraint: the j-th tail value is congruent to table[j mod |table|]
/// modulo m. Concrete values are the least representatives >= floor; symbolic
/// comparisons treat the values as otherwise unconstrained.
struct ResidueTail {
    std::uint64_t m = 1;
    std::vector<std::uint64_t> table;
    BigInt floor = 1;
    bool operator==(const ResidueTail&) const = default;
};

using Tail = std::variant<EmptyTail, ConstantTail, AffineTail, GeometricTail, FactorialTail, ResidueTail>;

class DescriptorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Eventually periodic residue pattern of a tail: values at tail positions
/// t < onset are `preamble[t]`, afterwards `cycle[(t - onset) % cycle.size()]`.
struct ResiduePattern {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> preamble;
    std::vector<std::uint64_t> cycle;

    std::size_t onset() const { return preamble.size(); }
    std::uint64_t at(std::size_t t) const
    {
        if (t < preamble.size())
            return preamble[t];
        return cycle[(t - preamble.size()) % cycle.size()];
    }
};

namespace detail {

inline ResiduePattern minimize(ResiduePattern p)
{
    // shortest period of the cycle
    const std::size_t n = p.cycle.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i)
            ok = p.cycle[i] == p.cycle[i - d];
        if (ok) {
            p.cycle.resize(d);
            break;
        }
    }
    // pull preamble entries into the cycle while they agree with it
    while (!p.preamble.empty() && p.preamble.back() == p.cycle.back()) {
        std::rotate(p.cycle.rbegin(), p.cycle.rbegin() + 1, p.cycle.rend());
        p.preamble.pop_back();
    }
    return p;
}

inline BigInt factorial(std::uint64_t n)
{
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i)
        r *= i;
    return r;
}

} // namespace detail

class SequenceDescriptor {
public:
    SequenceDescriptor() = default;
    SequenceDescriptor(std::vector<BigInt> prefix, Tail tail)
        : prefix_(std::move(prefix))
        , tail_(std::move(tail))
    {
        validate();
    }

    static SequenceDescriptor finite(std::vector<BigInt> values) { return {std::move(values), EmptyTail{}}; }
    static SequenceDescriptor constant(BigInt c, std::vector<BigInt> prefix = {})
    {
        return {std::move(prefix), ConstantTail{std::move(c)}};
    }
    static SequenceDescriptor affine(BigInt a, BigInt b, std::vector<BigInt> prefix = {})
    {
        return {std::move(prefix), AffineTail{std::move(a), std::move(b)}};
    }
    static SequenceDescriptor geometric(BigInt a, BigInt r, std::vector<BigInt> prefix = {})
    {
        return {std::move(prefix), GeometricTail{std::move(a), std::move(r)}};
    }
    static SequenceDescriptor factorial(std::uint64_t offset, std::vector<BigInt> prefix = {})
    {
        return {std::move(prefix), FactorialTail{offset}};
    }
    static SequenceDescriptor residue(std::uint64_t m, std::vector<std::uint64_t> table, BigInt floor = 1,
                                      std::vector<BigInt> prefix = {})
    {
        return {std::move(prefix), ResidueTail{m, std::move(table), std::move(floor)}};
    }

    const std::vector<BigInt>& prefix() const { return prefix_; }
    const Tail& tail() const { return tail_; }

    bool has_tail() const { return !std::holds_alternative<EmptyTail>(tail_); }
    bool is_finite() const { return !has_tail(); }
    bool is_empty() const { return prefix_.empty() && !has_tail(); }

    std::optional<std::size_t> length() const
    {
        if (has_tail())
            return std::nullopt;
        return prefix_.size();
    }

    /// Tail values stay below a fixed bound (constants, slope-0 affine, residue tables).
    bool bounded() const
    {
        if (std::holds_alternative<EmptyTail>(tail_) || std::holds_alternative<ConstantTail>(tail_) ||
            std::holds_alternative<ResidueTail>(tail_))
            return true;
        if (auto* a = std::get_if<AffineTail>(&tail_))
            return a->a == 0;
        return false;
    }

    /// Period of the tail value sequence when it is exactly periodic.
    std::optional<std::size_t> value_period() const
    {
        if (std::holds_alternative<ConstantTail>(tail_))
            return 1;
        if (auto* a = std::get_if<AffineTail>(&tail_); a && a->a == 0)
            return 1;
        if (auto* r = std::get_if<ResidueTail>(&tail_))
            return r->table.size();
        return std::nullopt;
    }

    BigInt value(std::size_t k) const
    {
        if (k < prefix_.size())
            return prefix_[k];
        const std::uint64_t t = k - prefix_.size();
        return std::visit(
            [&](const auto& tl) -> BigInt {
                using T = std::decay_t<decltype(tl)>;
                if constexpr (std::is_same_v<T, EmptyTail>) {
                    throw std::out_of_range("index " + std::to_string(k) + " beyond finite sequence of length " +
                                            std::to_string(prefix_.size()));
                } else if constexpr (std::is_same_v<T, ConstantTail>) {
                    return tl.c;
                } else if constexpr (std::is_same_v<T, AffineTail>) {
                    return tl.a * t + tl.b;
                } else if constexpr (std::is_same_v<T, GeometricTail>) {
                    return tl.a * bigpow(tl.r, t);
                } else if constexpr (std::is_same_v<T, FactorialTail>) {
                    return detail::factorial(t + tl.offset);
                } else {
                    const std::uint64_t want = tl.table[t % tl.table.size()];
                    const std::uint64_t have = mod_u64(tl.floor, tl.m);
                    return tl.floor + BigInt((want + tl.m - have) % tl.m);
                }
            },
            tail_);
    }

    std::optional<std::uint64_t> value_u64(std::size_t k) const { return to_u64(value(k)); }

    /// First `count` values (fewer if the sequence is finite).
    std::vector<BigInt> take(std::size_t count) const
    {
        std::vector<BigInt> out;
        const std::size_t n = length() ? std::min(count, *length()) : count;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
            out.push_back(value(k));
        return out;
    }

    /// Residues mod m of the tail (tail position 0 is sequence index |prefix|).
    /// Requires a non-empty tail.
    ResiduePattern tail_residues(std::uint64_t m) const
    {
        if (m == 0)
            throw DescriptorError("modulus must be positive");
        ResiduePattern p;
        p.modulus = m;
        std::visit(
            [&](const auto& tl) {
                using T = std::decay_t<decltype(tl)>;
                if constexpr (std::is_same_v<T, EmptyTail>) {
                    throw DescriptorError("finite sequence has no tail residues");
                } else if constexpr (std::is_same_v<T, ConstantTail>) {
                    p.cycle = {mod_u64(tl.c, m)};
                } else if constexpr (std::is_same_v<T, AffineTail>) {
                    const auto a = mod_u64(tl.a, m);
                    const auto b = mod_u64(tl.b, m);
                    for (std::uint64_t t = 0; t < m; ++t)
                        p.cycle.push_back((mulmod(a, t, m) + b) % m);
                } else if constexpr (std::is_same_v<T, GeometricTail>) {
                    const auto a = mod_u64(tl.a, m);
                    const auto r = mod_u64(tl.r, m);
                    // rho-shaped orbit of r^t mod m
                    std::map<std::uint64_t, std::size_t> seen;
                    std::vector<std::uint64_t> powers;
                    std::uint64_t x = 1 % m;
                    while (!seen.count(x)) {
                        seen[x] = powers.size();
                        powers.push_back(x);
                        x = mulmod(x, r, m);
                    }
                    const std::size_t start = seen[x];
                    for (std::size_t t = 0; t < powers.size(); ++t) {
                        const auto v = mulmod(a, powers[t], m);
                        (t < start ? p.preamble : p.cycle).push_back(v);
                    }
                } else if constexpr (std::is_same_v<T, FactorialTail>) {
                    // (t+offset)! == 0 mod m once t+offset >= m
                    std::uint64_t f = 1 % m;
                    if (tl.offset >= m) {
                        f = 0;
                    } else {
                        for (std::uint64_t i = 2; i <= tl.offset; ++i)
                            f = mulmod(f, i, m);
                    }
                    for (std::uint64_t t = 0; tl.offset + t < m; ++t) {
                        p.preamble.push_back(f);
                        f = mulmod(f, (tl.offset + t + 1) % m, m);
                    }
                    p.cycle = {0};
                } else {
                    for (std::size_t t = 0; t < tl.table.size(); ++t)
                        p.cycle.push_back(mod_u64(value(prefix_.size() + t), m));
                }
            },
            tail_);
        return detail::minimize(std::move(p));
    }

    std::string describe() const
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < prefix_.size(); ++i)
            os << (i ? "," : "") << prefix_[i];
        os << ']';
        std::visit(
            [&](const auto& tl) {
                using T = std::decay_t<decltype(tl)>;
                if constexpr (std::is_same_v<T, ConstantTail>)
                    os << "+Constant(" << tl.c << ")";
                else if constexpr (std::is_same_v<T, AffineTail>)
                    os << "+Affine(" << tl.a << "," << tl.b << ")";
                else if constexpr (std::is_same_v<T, GeometricTail>)
                    os << "+Geometric(" << tl.a << "," << tl.r << ")";
                else if constexpr (std::is_same_v<T, FactorialTail>)
                    os << "+Factorial(" << tl.offset << ")";
                else if constexpr (std::is_same_v<T, ResidueTail>) {
                    os << "+ResidueTable(" << tl.m << ",{";
                    for (std::size_t i = 0; i < tl.table.size(); ++i)
                        os << (i ? "," : "") << tl.table[i];
                    os << "},floor=" << tl.floor << ")";
                }
            },
            tail_);
        return os.str();
    }

    bool operator==(const SequenceDescriptor&) const = default;

private:
    void validate() const
    {
        for (const auto& v : prefix_)
            if (v < 1)
                throw DescriptorError("sequence values must be >= 1");
        std::visit(
            [](const auto& tl) {
                using T = std::decay_t<decltype(tl)>;
                if constexpr (std::is_same_v<T, ConstantTail>) {
                    if (tl.c < 1)
                        throw DescriptorError("Constant tail requires c >= 1");
                } else if constexpr (std::is_same_v<T, AffineTail>) {
                    if (tl.a < 0 || tl.b < 1)
                        throw DescriptorError("Affine tail requires a >= 0 and b >= 1");
                } else if constexpr (std::is_same_v<T, GeometricTail>) {
                    if (tl.a < 1 || tl.r < 2)
                        throw DescriptorError("Geometric tail requires a >= 1 and r >= 2");
                } else if constexpr (std::is_same_v<T, ResidueTail>) {
                    if (tl.m == 0 || tl.table.empty())
                        throw DescriptorError("ResidueTable requires m >= 1 and a nonempty table");
                    for (auto t : tl.table)
                        if (t >= tl.m)
                            throw DescriptorError("ResidueTable entries must be < m");
                    if (tl.floor < 1)
                        throw DescriptorError("ResidueTable floor must be >= 1");
                }
            },
            tail_);
    }

    std::vector<BigInt> prefix_;
    Tail tail_ = EmptyTail{};
};

/// Distinct values of a bounded periodic tail (each occurs infinitely often).
inline std::vector<BigInt> periodic_tail_values(const SequenceDescriptor& s)
{
    std::set<BigInt> vals;
    if (auto p = s.value_period()) {
        for (std::size_t t = 0; t < *p; ++t)
            vals.insert(s.value(s.prefix().size() + t));
    }
    return {vals.begin(), vals.end()};
}

/// Bounded periodic tail rebuilt from a value set: Constant for one value,
/// otherwise a residue table whose modulus exceeds every value so the least
/// representatives are the values themselves.
inline Tail tail_from_value_set(const std::vector<BigInt>& sorted_values)
{
    if (sorted_values.empty())
        return EmptyTail{};
    if (sorted_values.size() == 1)
        return ConstantTail{sorted_values.front()};
    const auto top = to_u64(sorted_values.back());
    if (!top || *top == std::numeric_limits<std::uint64_t>::max())
        throw DescriptorError("unrepresentable merge: periodic values exceed 64 bits");
    ResidueTail rt;
    rt.m = *top + 1;
    rt.floor = 1;
    for (const auto& v : sorted_values)
        rt.table.push_back(static_cast<std::uint64_t>(v));
    return rt;
}

/// Multiset union of two cycle-length descriptors. Prefixes are merged and
/// sorted; a tail survives when the other side is finite, and two bounded
/// periodic tails merge into their common value set. Anything else (two
/// growing tails, or a growing and a bounded one) is not expressible in the
/// descriptor class and is an error.
inline SequenceDescriptor merge_multisets(const SequenceDescriptor& a, const SequenceDescriptor& b)
{
    std::vector<BigInt> prefix = a.prefix();
    prefix.insert(prefix.end(), b.prefix().begin(), b.prefix().end());
    std::sort(prefix.begin(), prefix.end());

    if (!a.has_tail())
        return {prefix, b.tail()};
    if (!b.has_tail())
        return {prefix, a.tail()};
    if (a.value_period() && b.value_period()) {
        auto va = periodic_tail_values(a);
        auto vb = periodic_tail_values(b);
        std::set<BigInt> all(va.begin(), va.end());
        all.insert(vb.begin(), vb.end());
        return {prefix, tail_from_value_set({all.begin(), all.end()})};
    }
    throw DescriptorError("unrepresentable merge of " + a.describe() + " and " + b.describe());
}

/// Canonical multiset form: sorted prefix, and bounded periodic tails replaced
/// by their value-set representation.
inline SequenceDescriptor multiset_normal_form(const SequenceDescriptor& s)
{
    std::vector<BigInt> prefix = s.prefix();
    std::sort(prefix.begin(), prefix.end());
    if (s.value_period())
        return {prefix, tail_from_value_set(periodic_tail_values(s))};
    return {prefix, s.tail()};
}

} // namespace finquo
