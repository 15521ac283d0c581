#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "finquo/bigint.hpp"
#include "finquo/coarse/metric.hpp"

namespace finquo::coarse {

template <class S>
using Matrix = std::vector<std::vector<S>>;

template <class S>
struct ZeroTest {
    double tol = 0; // absolute; ignored for exact scalars
    bool operator()(const S& x) const
    {
        if constexpr (std::is_floating_point_v<S>)
            return std::abs(x) <= tol;
        else if constexpr (std::is_same_v<S, std::complex<double>>)
            return std::abs(x) <= tol;
        else
            return x == S(0);
    }
};

/// 1e-12 times the largest entry for floating point, exact otherwise.
template <class S>
ZeroTest<S> default_zero(const Matrix<S>& T, double relative = 1e-12)
{
    ZeroTest<S> z;
    if constexpr (std::is_floating_point_v<S> || std::is_same_v<S, std::complex<double>>) {
        double mx = 0;
        for (const auto& row : T)
            for (const auto& v : row)
                mx = std::max(mx, static_cast<double>(std::abs(v)));
        z.tol = relative * mx;
    }
    return z;
}

/// Cycle window with γ advancing each point one step around its cycle.
class GammaWindow {
public:
    explicit GammaWindow(std::vector<std::size_t> lengths)
        : metric_(MetricWindow::cycles(lengths, CrossRule::inclusive, false))
    {
    }
    std::size_t size() const { return metric_.size(); }
    const MetricWindow& metric() const { return metric_; }

    std::size_t length_at(std::size_t i) const { return metric_.component(metric_.owner(i)).length; }

    /// γ^k(i) for any integer k
    std::size_t power(std::size_t i, long k) const
    {
        const auto c = metric_.owner(i);
        const long L = static_cast<long>(metric_.component(c).length);
        const long s = static_cast<long>(metric_.start(c));
        long off = (static_cast<long>(i) - s + k) % L;
        if (off < 0)
            off += L;
        return static_cast<std::size_t>(s + off);
    }

    /// k in (-L/2, L/2] for a cycle of length L
    static bool in_fundamental(long k, std::size_t L)
    {
        const long l = static_cast<long>(L);
        return 2 * k > -l && 2 * k <= l;
    }

private:
    MetricWindow metric_;
};

template <class S>
struct BandDecomposition {
    /// k -> diagonal of E(T v^k), entries T[γ^k(i), i]
    std::map<long, std::vector<S>> bands;
    /// entries between different components
    Matrix<S> residual;
    std::size_t propagation = 0;
};

template <class S>
void check_square(const Matrix<S>& T, std::size_t n)
{
    if (T.size() != n)
        throw std::invalid_argument("matrix has " + std::to_string(T.size()) + " rows, window has " +
                                    std::to_string(n) + " points");
    for (const auto& row : T)
        if (row.size() != n)
            throw std::invalid_argument("matrix is not square");
}

template <class S>
std::size_t propagation(const Matrix<S>& T, const GammaWindow& g, const ZeroTest<S>& zero)
{
    check_square(T, g.size());
    std::size_t p = 0;
    for (std::size_t i = 0; i < T.size(); ++i)
        for (std::size_t j = 0; j < T.size(); ++j)
            if (!zero(T[i][j]))
                p = std::max(p, g.metric().dist(i, j));
    return p;
}

template <class S>
std::size_t propagation(const Matrix<S>& T, const GammaWindow& g)
{
    return propagation(T, g, default_zero(T));
}

/// Nonzero bands only; a band is all-zero when every entry passes `zero`.
template <class S>
BandDecomposition<S> propagation_decompose(const Matrix<S>& T, const GammaWindow& g, const ZeroTest<S>& zero)
{
    check_square(T, g.size());
    const std::size_t n = g.size();
    BandDecomposition<S> out;
    out.residual.assign(n, std::vector<S>(n, S(0)));
    out.propagation = propagation(T, g, zero);
    long reach = 0;
    for (std::size_t i = 0; i < n; ++i)
        reach = std::max(reach, static_cast<long>(g.length_at(i) / 2));
    for (long k = -reach; k <= reach; ++k) {
        std::vector<S> diag(n, S(0));
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!GammaWindow::in_fundamental(k, g.length_at(i)))
                continue;
            diag[i] = T[g.power(i, k)][i];
            any = any || !zero(diag[i]);
        }
        if (any)
            out.bands.emplace(k, std::move(diag));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.metric().owner(i) != g.metric().owner(j))
                out.residual[i][j] = T[i][j];
    return out;
}

template <class S>
BandDecomposition<S> propagation_decompose(const Matrix<S>& T, const GammaWindow& g)
{
    return propagation_decompose(T, g, default_zero(T));
}

/// Σ_k v^k diag_k plus the residual.
template <class S>
Matrix<S> reconstruct(const BandDecomposition<S>& d, const GammaWindow& g)
{
    const std::size_t n = g.size();
    Matrix<S> R = d.residual;
    if (R.size() != n)
        R.assign(n, std::vector<S>(n, S(0)));
    for (const auto& [k, diag] : d.bands)
        for (std::size_t i = 0; i < n; ++i)
            if (GammaWindow::in_fundamental(k, g.length_at(i)))
                R[g.power(i, k)][i] += diag[i];
    return R;
}

/// ||A - B||_F / ||A||_F (0 when A = 0 = B).
template <class S>
double relative_frobenius(const Matrix<S>& A, const Matrix<S>& B)
{
    using std::abs;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            const double a = static_cast<double>(abs(A[i][j]));
            const double e = static_cast<double>(abs(A[i][j] - B[i][j]));
            num += e * e;
            den += a * a;
        }
    if (den == 0)
        return num == 0 ? 0 : INFINITY;
    return std::sqrt(num / den);
}

} // namespace finquo::coarse
