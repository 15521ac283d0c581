#pragma once

#include <string>

#include "finquo/canon.hpp"
#include "finquo/fmcheck/limits.hpp"
#include "finquo/fmcheck/obstruction.hpp"

namespace finquo {

struct PotentialOptions {
    /// moduli tried for the arithmetic obstruction
    std::uint64_t max_modulus = 12;
    fm::LimitOptions limits;
};

namespace detail {

/// First (m, j, mode) whose residue condition holds on exactly one side.
inline std::optional<Tri> arithmetic_obstruction(const SequenceDescriptor& a, const SequenceDescriptor& b,
                                                 std::uint64_t max_modulus)
{
    using fm::ObstructionMode;
    for (std::uint64_t m = 2; m <= max_modulus; ++m)
        for (std::uint64_t j = 0; j < m; ++j)
            for (auto mode : {ObstructionMode::eventual, ObstructionMode::infinitelyOften}) {
                auto ta = fm::obstruction_truth(a, m, j, mode);
                auto tb = fm::obstruction_truth(b, m, j, mode);
                if (ta.is_unknown() || tb.is_unknown() || ta.verdict == tb.verdict)
                    continue;
                const char* sentence = mode == ObstructionMode::eventual ? "phi" : "psi";
                return Tri::no("arithmetic-mod-m", std::string(sentence) + "(m=" + std::to_string(m) +
                                                       ", j=" + std::to_string(j) + ") separates the rotary parts: " +
                                                       (ta.is_yes() ? ta.detail : tb.detail) + " on the " +
                                                       (ta.is_yes() ? "first" : "second") + ", " +
                                                       (ta.is_yes() ? tb.detail : ta.detail) + " on the other");
            }
    return std::nullopt;
}

} // namespace detail

/// Potential conjugacy up to sentences of quantifier rank <= rank on the
/// rotary parts. Parity is checked separately and never inferred.
inline Tri potentially_conjugate(const OrbitSpectrum& a, const OrbitSpectrum& b, int rank,
                                 const PotentialOptions& opt = {})
{
    if (parity(a) != parity(b))
        return Tri::no("parity", "index parities differ: " + std::to_string(parity(a)) + " vs " +
                                     std::to_string(parity(b)));
    const auto da = decompose(a), db = decompose(b);
    const bool za = da.zPart.omega, zb = db.zPart.omega;
    if (za != zb)
        return Tri::no("z-part", std::string("only the ") + (za ? "first" : "second") +
                                     " map has Z part s_{ZxZ}");
    const auto ca = component_count(a), cb = component_count(b);
    if (ca != cb)
        return Tri::no("component-count", "component counts differ: " + ca.str() + " vs " + cb.str());

    const auto na = ch_normal_form(a), nb = ch_normal_form(b);
    const std::string nf = "normal form S = " + describe_s_part(decompose(na).sPart) + ", Z = " +
                           decompose(na).zPart.str();
    const bool ra = da.rotary.has_tail(), rb = db.rotary.has_tail();
    if (!ra && !rb)
        return Tri::yes("normal-form", nf + ", no rotary part (uses A_sigma = A_sigma^-1 as an axiom)");
    if (ra != rb) {
        if (ca.is_finite())
            return Tri::no("rotary-presence", std::string("only the ") + (ra ? "first" : "second") +
                                                  " map has an infinite rotary part");
        return Tri::unknown("rotary-presence", "rotary part present on one side only, with infinitely many "
                                               "components the split is not decided");
    }
    auto req = rotary_equivalent(da.rotary, db.rotary);
    if (req.is_yes())
        return Tri::yes("normal-form", nf + "; rotary parts agree: " + req.detail);
    if (auto obs = detail::arithmetic_obstruction(da.rotary, db.rotary, opt.max_modulus))
        return *obs;
    Tri acc = Tri::unknown("rank-d-type", "rank 0 only");
    bool all_yes = true;
    std::string why;
    for (int d = 1; d <= rank; ++d) {
        auto t = fm::reduced_product_ee(da.rotary, db.rotary, d, opt.limits, opt.limits);
        if (t.is_no())
            return Tri::no("rank-d-type", "rank " + std::to_string(d) + ": " + t.detail);
        if (!t.is_yes()) {
            all_yes = false;
            why = "rank " + std::to_string(d) + " " + t.kind + ": " + t.detail;
        }
    }
    if (rank >= 1 && all_yes)
        return Tri::yes("normal-form", nf + "; rotary limit types agree up to rank " + std::to_string(rank) +
                                           " (periodic-tail certificates)");
    if (rank < 1)
        return Tri::unknown("rank-d-type", "no rank-d check requested and rotary parts not identical");
    return Tri::unknown("rank-d-type", why);
}

} // namespace finquo
