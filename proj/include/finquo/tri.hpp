#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace finquo {

enum class Verdict { yes, no, unknown };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

/// Three-valued decision. A yes carries the normal-form match or witness that
/// justifies it, a no names its obstruction, an unknown carries the reason.
///
/// `kind` is a short machine-readable tag (e.g. "parity", "arithmetic-mod-m",
/// "budget"); `detail` is the human-readable certificate text.
struct Tri {
    Verdict verdict = Verdict::unknown;
    std::string kind;
    std::string detail;

    static Tri yes(std::string kind, std::string detail = {})
    {
        return {Verdict::yes, std::move(kind), std::move(detail)};
    }
    static Tri no(std::string kind, std::string detail = {})
    {
        return {Verdict::no, std::move(kind), std::move(detail)};
    }
    static Tri unknown(std::string kind, std::string detail = {})
    {
        return {Verdict::unknown, std::move(kind), std::move(detail)};
    }

    bool is_yes() const { return verdict == Verdict::yes; }
    bool is_no() const { return verdict == Verdict::no; }
    bool is_unknown() const { return verdict == Verdict::unknown; }
};

/// Conjunction that keeps the first No, else the first Unknown, else the last Yes.
inline Tri tri_and(const Tri& a, const Tri& b)
{
    if (a.is_no())
        return a;
    if (b.is_no())
        return b;
    if (a.is_unknown())
        return a;
    if (b.is_unknown())
        return b;
    return Tri::yes(b.kind, a.detail.empty() ? b.detail : a.detail + "; " + b.detail);
}

/// Exit code for scripting mode: 0 yes, 1 no, 2 unknown.
inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::yes: return 0;
    case Verdict::no: return 1;
    case Verdict::unknown: return 2;
    }
    return 2;
}

} // namespace finquo
