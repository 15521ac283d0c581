#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace finquo {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt parse_bigint(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("empty integer literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size())
        throw std::invalid_argument("malformed integer literal '" + text + "'");
    for (std::size_t k = i; k < text.size(); ++k)
        if (text[k] < '0' || text[k] > '9')
            throw std::invalid_argument("malformed integer literal '" + text + "'");
    return BigInt(text);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::optional<std::uint64_t> to_u64(const BigInt& v)
{
    if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
        return std::nullopt;
    return static_cast<std::uint64_t>(v);
}

inline std::uint64_t mod_u64(const BigInt& v, std::uint64_t m)
{
    BigInt r = v % m;
    if (r < 0)
        r += m;
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1)
        return 0;
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1u)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1u;
    }
    return result;
}

inline BigInt bigpow(const BigInt& base, std::uint64_t exp)
{
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1u)
            result *= b;
        b *= b;
        exp >>= 1u;
    }
    return result;
}

} // namespace finquo
