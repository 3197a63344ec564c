/**
 * Integer lattice utilities: primitive vectors, row Hermite normal form with
 * unimodular transform, and Hilbert bases of rational cones by enumeration.
 *
 * Integer vectors are carried as RVector with integral entries so they mix
 * freely with the exact linear algebra; the Hermite reduction itself runs on
 * Integer.
 */

#ifndef HODGE_LATTICE_HPP
#define HODGE_LATTICE_HPP

#include <algorithm>
#include <vector>
#include "matrix.hpp"

namespace hodge {

using IVector = std::vector<Integer>;

inline Integer gcd(Integer a, Integer b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0)
    {
        Integer r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline bool is_integral(const RVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

inline IVector to_integer_vector(const RVector& v)
{
    IVector out;
    out.reserve(v.size());
    for (const auto& x : v)
    {
        if (!is_integer(x))
            fail(ErrorKind::InvalidInput, "expected an integral vector");
        out.push_back(boost::multiprecision::numerator(x));
    }
    return out;
}

inline RVector to_rational_vector(const IVector& v)
{
    RVector out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.emplace_back(x);
    return out;
}

/** The primitive integral vector on the ray through a nonzero rational v. */
inline RVector primitive(const RVector& v)
{
    Integer den = 1;
    for (const auto& x : v)
    {
        Integer d = boost::multiprecision::denominator(x);
        den = den / gcd(den, d) * d;
    }
    Integer g = 0;
    IVector scaled;
    for (const auto& x : v)
    {
        Integer n = boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x));
        scaled.push_back(n);
        g = gcd(g, n);
    }
    if (g == 0)
        fail(ErrorKind::InvalidInput, "primitive vector of zero");
    RVector out;
    for (const auto& n : scaled)
        out.emplace_back(n / g);
    return out;
}

/**
 * Row Hermite normal form: H = U A with U unimodular. The first `rank` rows
 * of H are a Z-basis of the row lattice; the remaining rows of U are a
 * Z-basis of the integer relations among the rows of A.
 */
struct Hermite
{
    std::vector<IVector> h;
    std::vector<IVector> u;
    std::size_t rank = 0;

    std::vector<RVector> basis() const
    {
        std::vector<RVector> out;
        for (std::size_t i = 0; i < rank; ++i)
            out.push_back(to_rational_vector(h[i]));
        return out;
    }

    std::vector<RVector> relations() const
    {
        std::vector<RVector> out;
        for (std::size_t i = rank; i < u.size(); ++i)
            out.push_back(to_rational_vector(u[i]));
        return out;
    }
};

inline Hermite hermite(const std::vector<RVector>& rows, std::size_t cols)
{
    const std::size_t k = rows.size();
    Hermite out;
    for (const auto& r : rows)
    {
        if (r.size() != cols)
            fail(ErrorKind::DimensionMismatch, "hermite: ragged rows");
        out.h.push_back(to_integer_vector(r));
    }
    for (std::size_t i = 0; i < k; ++i)
    {
        IVector e(k, Integer(0));
        e[i] = 1;
        out.u.push_back(std::move(e));
    }
    auto axpy = [](IVector& dst, const IVector& src, const Integer& q) {
        for (std::size_t j = 0; j < dst.size(); ++j)
            dst[j] -= q * src[j];
    };
    auto floor_div = [](const Integer& a, const Integer& b) {
        Integer q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            q -= 1;
        return q;
    };

    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < k; ++col)
    {
        while (true)
        {
            std::size_t best = k;
            for (std::size_t i = row; i < k; ++i)
                if (out.h[i][col] != 0 && (best == k || abs(out.h[i][col]) < abs(out.h[best][col])))
                    best = i;
            if (best == k)
                break;
            std::swap(out.h[row], out.h[best]);
            std::swap(out.u[row], out.u[best]);
            bool done = true;
            for (std::size_t i = row + 1; i < k; ++i)
            {
                if (out.h[i][col] == 0)
                    continue;
                Integer q = floor_div(out.h[i][col], out.h[row][col]);
                axpy(out.h[i], out.h[row], q);
                axpy(out.u[i], out.u[row], q);
                if (out.h[i][col] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (out.h[row][col] == 0)
            continue;
        if (out.h[row][col] < 0)
        {
            for (auto& x : out.h[row]) x = -x;
            for (auto& x : out.u[row]) x = -x;
        }
        for (std::size_t i = 0; i < row; ++i)
        {
            Integer q = floor_div(out.h[i][col], out.h[row][col]);
            axpy(out.h[i], out.h[row], q);
            axpy(out.u[i], out.u[row], q);
        }
        ++row;
    }
    out.rank = row;
    return out;
}

/** Z-basis of the lattice spanned by integral vectors. */
inline std::vector<RVector> lattice_basis(const std::vector<RVector>& vectors, std::size_t dim)
{
    return hermite(vectors, dim).basis();
}

/** Z-basis of {a in Z^k : sum a_i v_i = 0}. */
inline std::vector<RVector> integer_relations(const std::vector<RVector>& vectors, std::size_t dim)
{
    return hermite(vectors, dim).relations();
}

/**
 * Hilbert basis of the pointed rational cone in Q^r with the given integral
 * rays and inward facet normals, intersected with Z^r.
 *
 * Every Hilbert basis element lies in the zonotope spanned by the rays, so
 * the lattice points of its bounding box that lie in the cone are a complete
 * candidate set; x is kept when no other nonzero candidate y leaves x - y in
 * the cone. Output is sorted lexicographically.
 */
inline std::vector<RVector> hilbert_basis(std::size_t r, const std::vector<RVector>& rays,
                                          const std::vector<RVector>& facets)
{
    if (rays.empty())
        return {};
    std::vector<Integer> lo(r, Integer(0)), hi(r, Integer(0));
    for (const auto& ray : rays)
        for (std::size_t i = 0; i < r; ++i)
        {
            Integer x = boost::multiprecision::numerator(ray[i]);
            if (x < 0) lo[i] += x;
            else hi[i] += x;
        }
    auto in_cone = [&](const RVector& x) {
        for (const auto& f : facets)
            if (dot(f, x) < 0)
                return false;
        return true;
    };
    std::vector<RVector> candidates;
    IVector point(lo);
    while (true)
    {
        RVector x = to_rational_vector(point);
        if (!is_zero_vector(x) && in_cone(x))
            candidates.push_back(std::move(x));
        std::size_t i = 0;
        while (i < r && point[i] == hi[i])
        {
            point[i] = lo[i];
            ++i;
        }
        if (i == r)
            break;
        point[i] += 1;
    }
    std::vector<RVector> basis;
    for (const auto& x : candidates)
    {
        bool reducible = false;
        for (const auto& y : candidates)
        {
            if (&x == &y)
                continue;
            RVector diff = x;
            for (std::size_t i = 0; i < r; ++i)
                diff[i] -= y[i];
            if (!is_zero_vector(diff) && in_cone(diff))
            {
                reducible = true;
                break;
            }
        }
        if (!reducible)
            basis.push_back(x);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}   // namespace hodge

#endif
