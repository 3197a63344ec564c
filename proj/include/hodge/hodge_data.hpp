/**
 * The fixed classifying data (lattice rank, weight filtration, graded
 * polarizations, Hodge numbers) and the membership predicates built on it:
 * the groups G_A, the Lie algebras g_A, the compact dual and the domain D.
 */

#ifndef HODGE_HODGE_DATA_HPP
#define HODGE_HODGE_DATA_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>
#include "filtration.hpp"

namespace hodge {

/** Coefficient ring A of G_A and g_A. */
enum class Ring { Z, Q, R, C };

/** Three-valued outcome of a numerical membership decision. */
enum class Tri { Yes, No, Indeterminate };

inline const char* to_string(Tri t)
{
    switch (t)
    {
        case Tri::Yes:           return "yes";
        case Tri::No:            return "no";
        case Tri::Indeterminate: return "indeterminate";
    }
    return "?";
}

/** Worst of two outcomes: No beats Indeterminate beats Yes. */
inline Tri combine(Tri a, Tri b)
{
    if (a == Tri::No || b == Tri::No)
        return Tri::No;
    if (a == Tri::Indeterminate || b == Tri::Indeterminate)
        return Tri::Indeterminate;
    return Tri::Yes;
}

struct HodgeData
{
    std::size_t rank = 0;
    IncreasingFiltration weight;
    std::map<int, RMatrix> pairings;                          // on the lifted basis of gr^W_k
    std::map<std::tuple<int, int, int>, int> hodge_numbers;   // (p, q, k) -> h^{p,q}_k

    int h(int p, int q, int k) const
    {
        auto it = hodge_numbers.find({p, q, k});
        return it == hodge_numbers.end() ? 0 : it->second;
    }

    /** Weights carrying a nonzero graded piece or a nonzero Hodge number. */
    std::vector<int> active_weights() const
    {
        std::set<int> ks;
        for (int k : weight.weights())
            ks.insert(k);
        for (const auto& [key, v] : hodge_numbers)
            if (v != 0)
                ks.insert(std::get<2>(key));
        return {ks.begin(), ks.end()};
    }

    CMatrix complex_pairing(int k) const
    {
        auto it = pairings.find(k);
        if (it == pairings.end())
            return CMatrix(0, 0);
        return to_complex(it->second);
    }
};

struct Violation
{
    std::string code;
    std::string detail;
};

struct ValidationReport
{
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/** Lists every violated constraint on the 4-ple; empty iff valid. */
inline ValidationReport validate_hodge_data(const HodgeData& data)
{
    ValidationReport report;
    auto add = [&](std::string code, std::string detail) {
        report.violations.push_back({std::move(code), std::move(detail)});
    };
    if (data.weight.ambient_dim() != data.rank)
        add("filtration dimension", "weight filtration lives on Q^" + std::to_string(data.weight.ambient_dim()) +
                                        " but rank is " + std::to_string(data.rank));
    long total = 0;
    std::map<int, long> per_weight;
    for (const auto& [key, v] : data.hodge_numbers)
    {
        auto [p, q, k] = key;
        std::string where = "h^{" + std::to_string(p) + "," + std::to_string(q) + "}_" + std::to_string(k);
        if (v < 0)
            add("negative hodge number", where + " = " + std::to_string(v));
        if (v != 0 && p + q != k)
            add("p+q != k", where + " is nonzero");
        if (data.h(q, p, k) != v)
            add("hodge symmetry", where + " differs from its conjugate");
        total += v;
        per_weight[k] += v;
    }
    if (total != static_cast<long>(data.rank))
        add("rank sum mismatch", "sum of Hodge numbers is " + std::to_string(total) + ", rank is " +
                                     std::to_string(data.rank));
    for (int k : data.active_weights())
    {
        long gd = data.weight.ambient_dim() == data.rank ? static_cast<long>(data.weight.graded_dim(k)) : -1;
        if (gd >= 0 && gd != per_weight[k])
            add("graded dimension mismatch", "dim gr^W_" + std::to_string(k) + " = " + std::to_string(gd) +
                                                 " but Hodge numbers sum to " + std::to_string(per_weight[k]));
        if (gd <= 0)
            continue;
        auto it = data.pairings.find(k);
        if (it == data.pairings.end())
        {
            add("missing pairing", "no pairing given on gr^W_" + std::to_string(k));
            continue;
        }
        const RMatrix& pk = it->second;
        if (pk.rows() != static_cast<std::size_t>(gd) || pk.cols() != static_cast<std::size_t>(gd))
        {
            add("pairing size", "pairing on gr^W_" + std::to_string(k) + " is not " + std::to_string(gd) + "x" +
                                    std::to_string(gd));
            continue;
        }
        RMatrix expected = (k % 2 == 0) ? pk.transpose() : RMatrix(-pk.transpose());
        if (expected != pk)
            add("parity", "pairing on gr^W_" + std::to_string(k) + " is not " +
                              (k % 2 == 0 ? "symmetric" : "antisymmetric"));
        if (determinant(pk) == 0)
            add("degenerate pairing", "pairing on gr^W_" + std::to_string(k) + " is degenerate");
    }
    for (const auto& [k, pk] : data.pairings)
        if (data.weight.ambient_dim() == data.rank && data.weight.graded_dim(k) == 0 && pk.rows() != 0)
            add("pairing size", "pairing given on the zero space gr^W_" + std::to_string(k));
    return report;
}

/** gamma in G_A: invertible over A, preserves W and every graded pairing. */
inline bool in_group(const RMatrix& gamma, const HodgeData& data, Ring ring)
{
    if (gamma.rows() != data.rank || gamma.cols() != data.rank)
        return false;
    Rational det = determinant(gamma);
    if (det == 0)
        return false;
    if (ring == Ring::Z)
    {
        for (const auto& x : gamma.flat())
            if (!is_integer(x))
                return false;
        if (det != 1 && det != -1)
            return false;
    }
    for (const auto& [k, s] : data.weight.jumps())
        if (image(gamma, s) != s)
            return false;
    for (int k : data.weight.weights())
    {
        auto it = data.pairings.find(k);
        if (it == data.pairings.end())
            return false;
        RMatrix g = induced_graded_endomorphism(gamma, data.weight, k);
        if (g.transpose() * it->second * g != it->second)
            return false;
    }
    return true;
}

/** N in g_A: preserves W and each gr^W_k(N) is infinitesimally isometric. */
inline bool in_lie_algebra(const RMatrix& n, const HodgeData& data, Ring ring = Ring::Q)
{
    (void)ring;     // rational input lies in g_A for A = Q, R, C alike
    if (n.rows() != data.rank || n.cols() != data.rank)
        return false;
    if (!preserves(n, data.weight))
        return false;
    for (int k : data.weight.weights())
    {
        auto it = data.pairings.find(k);
        if (it == data.pairings.end())
            return false;
        RMatrix g = induced_graded_endomorphism(n, data.weight, k);
        if (!(g.transpose() * it->second + it->second * g).is_zero())
            return false;
    }
    return true;
}

/** Hodge numbers h^{p,k-p} of a filtration on one graded piece match the data. */
inline bool graded_hodge_numbers_match(const DecreasingFiltration& fk, const HodgeData& data, int k)
{
    auto [lo, hi] = fk.range();
    int pmin = lo, pmax = hi;
    for (const auto& [key, v] : data.hodge_numbers)
        if (std::get<2>(key) == k && v != 0)
        {
            pmin = std::min(pmin, std::get<0>(key));
            pmax = std::max(pmax, std::get<0>(key));
        }
    for (int p = pmin - 1; p <= pmax + 1; ++p)
    {
        long dim = static_cast<long>(fk.at(p).dim()) - static_cast<long>(fk.at(p + 1).dim());
        if (dim != data.h(p, k - p, k))
            return false;
    }
    return true;
}

/** Membership in the compact dual: graded Hodge dimensions and isotropy. */
inline bool in_check_domain(const DecreasingFiltration& f, const HodgeData& data, double tol = kDefaultTol)
{
    if (f.ambient_dim() != data.rank)
        return false;
    for (int k : data.active_weights())
    {
        auto fk = induced_on_graded(f, data.weight, k, tol);
        if (!graded_hodge_numbers_match(fk, data, k))
            return false;
        if (fk.ambient_dim() == 0)
            continue;
        CMatrix pk = data.complex_pairing(k);
        if (pk.rows() != fk.ambient_dim())
            return false;
        auto [lo, hi] = fk.range();
        for (int p = lo; p <= hi; ++p)
            if (!form_kills(pk, fk.at(p), fk.at(k - p + 1), tol))
                return false;
    }
    return true;
}

namespace detail {

/** Positive-definiteness of a Hermitian matrix from its elimination pivots. */
inline Tri hermitian_positivity(CMatrix g, double tol)
{
    const std::size_t n = g.rows();
    for (std::size_t c = 0; c < n; ++c)
    {
        double pivot = g(c, c).real();
        if (pivot < -tol)
            return Tri::No;
        if (pivot <= tol)
            return Tri::Indeterminate;
        for (std::size_t i = c + 1; i < n; ++i)
        {
            Complex f = g(i, c) / g(c, c);
            for (std::size_t j = c; j < n; ++j)
                g(i, j) -= f * g(c, j);
        }
    }
    return Tri::Yes;
}

inline Complex i_power(int e)
{
    switch (((e % 4) + 4) % 4)
    {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}   // namespace detail

/**
 * Three-valued polarized pure Hodge structure test on one graded piece.
 *
 * Positivity uses the Hermitian form h(u, v) = i^{p-q} <conj(u), v> on
 * H^{p,q}; with <e1, e2> = 1 on the elliptic lattice this puts F^1 = span(tau e1 + e2)
 * inside D exactly when Im tau > 0. Bases are orthonormal, so the tolerance
 * bounds the Hermitian pivots relative to |v|^2.
 */
inline Tri pure_polarized_status(const DecreasingFiltration& fk, const RMatrix& pairing_k, int k,
                                 double tol = kDefaultTol)
{
    const std::size_t d = fk.ambient_dim();
    if (d == 0)
        return Tri::Yes;
    if (pairing_k.rows() != d || pairing_k.cols() != d)
        fail(ErrorKind::DimensionMismatch, "pairing size differs from the graded piece");
    CMatrix pk = to_complex(pairing_k);
    auto [lo, hi] = fk.range();
    Tri verdict = Tri::Yes;

    // Hodge decomposition: F^p + conj(F^{k-p+1}) = everything, directly.
    for (int p = lo; p <= hi + 1; ++p)
    {
        CSubspace a = fk.at(p);
        CSubspace b = conj(fk.at(k - p + 1));
        if (a.dim() + b.dim() != d)
            return Tri::No;
        // Each direction of b must leave a by more than tol; a determinant
        // would multiply the angles and misjudge several small ones.
        if (sum(a, b, tol).dim() != d)
            verdict = combine(verdict, Tri::Indeterminate);
    }
    if (verdict != Tri::Yes)
        return verdict;

    for (int p = lo; p <= hi; ++p)
        if (!form_kills(pk, fk.at(p), fk.at(k - p + 1), tol))
            return Tri::No;

    for (int p = lo; p <= hi; ++p)
    {
        const int q = k - p;
        std::size_t expected = fk.at(p).dim() - fk.at(p + 1).dim();
        if (expected == 0)
            continue;
        CSubspace hpq = intersection(fk.at(p), conj(fk.at(q)), tol);
        if (hpq.dim() != expected)
            return Tri::Indeterminate;
        const auto& vs = hpq.basis();
        CMatrix gram(vs.size(), vs.size());
        Complex phase = detail::i_power(p - q);
        for (std::size_t a = 0; a < vs.size(); ++a)
        {
            CVector ca(vs[a].size());
            for (std::size_t i = 0; i < ca.size(); ++i)
                ca[i] = std::conj(vs[a][i]);
            for (std::size_t b = 0; b < vs.size(); ++b)
                gram(a, b) = phase * pairing(pk, ca, vs[b]);
        }
        verdict = combine(verdict, detail::hermitian_positivity(gram, tol));
        if (verdict == Tri::No)
            return verdict;
    }
    return verdict;
}

inline bool is_pure_polarized(const DecreasingFiltration& fk, const RMatrix& pairing_k, int k,
                              double tol = kDefaultTol)
{
    return pure_polarized_status(fk, pairing_k, k, tol) == Tri::Yes;
}

struct DMembership
{
    Tri verdict = Tri::No;
    std::vector<std::string> warnings;
};

inline DMembership classify_D(const DecreasingFiltration& f, const HodgeData& data, double tol = kDefaultTol)
{
    DMembership out;
    if (!in_check_domain(f, data, tol))
        return out;
    Tri verdict = Tri::Yes;
    for (int k : data.weight.weights())
    {
        auto fk = induced_on_graded(f, data.weight, k, tol);
        Tri t = pure_polarized_status(fk, data.pairings.at(k), k, tol);
        if (t == Tri::Indeterminate)
            out.warnings.push_back("gr^W_" + std::to_string(k) + " lies within tolerance of the boundary of D");
        verdict = combine(verdict, t);
    }
    out.verdict = verdict;
    return out;
}

/** Membership in D; points within tolerance of the boundary count as outside. */
inline bool in_D(const DecreasingFiltration& f, const HodgeData& data, double tol = kDefaultTol)
{
    return classify_D(f, data, tol).verdict == Tri::Yes;
}

}   // namespace hodge

#endif
