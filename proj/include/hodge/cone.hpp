/**
 * Exact rational polyhedral cones and nilpotent cones.
 *
 * PolyhedralCone works in Q^m. Facets are found by brute force: every
 * (d-1)-subset of generators of rank d-1 spans a hyperplane of the linear
 * span, and it supports a facet exactly when all generators lie on one side.
 * At the sizes this toolkit handles (a few generators in a space of 2x2 or
 * 3x3 matrices) this is both exact and fast.
 *
 * NilpotentCone flattens matrices row-major into Q^{n*n} and adds the
 * nilpotency, commutation and sharpness checks.
 */

#ifndef HODGE_CONE_HPP
#define HODGE_CONE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>
#include "hodge_data.hpp"
#include "lattice.hpp"
#include "subspace.hpp"

namespace hodge {

namespace detail {

/** Calls f on every k-subset of {0, ..., n-1} in lexicographic order. */
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true)
    {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

/**
 * Extreme rays of {x in span(basis) : f(x) >= 0 for all f}, assumed pointed.
 * Rays come back as primitive integral vectors in ambient coordinates when
 * the basis is integral, otherwise as scaled rational vectors.
 */
inline std::vector<RVector> rays_from_inequalities(std::size_t ambient, const std::vector<RVector>& basis,
                                                   const std::vector<RVector>& functionals)
{
    const std::size_t e = basis.size();
    if (e == 0)
        return {};
    std::vector<RVector> rows;
    for (const auto& f : functionals)
    {
        RVector row;
        for (const auto& b : basis)
            row.push_back(dot(f, b));
        rows.push_back(std::move(row));
    }
    std::vector<RVector> rays;
    for_each_subset(rows.size(), e - 1, [&](const std::vector<std::size_t>& pick) {
        std::vector<RVector> sel;
        for (auto i : pick)
            sel.push_back(rows[i]);
        auto ns = nullspace(RMatrix::from_rows(sel, e));
        if (ns.size() != 1)
            return;
        for (int sign : {1, -1})
        {
            RVector c = scale(ns.front(), Rational(sign));
            bool ok = true;
            for (const auto& row : rows)
                if (dot(row, c) < 0)
                {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            RVector x(ambient, Rational(0));
            for (std::size_t j = 0; j < e; ++j)
                x = add(x, scale(basis[j], c[j]));
            x = primitive(x);
            if (std::find(rays.begin(), rays.end(), x) == rays.end())
                rays.push_back(x);
        }
    });
    std::sort(rays.begin(), rays.end());
    return rays;
}

}   // namespace detail

class PolyhedralCone
{
    private:
        std::size_t ambient_ = 0;
        std::vector<RVector> generators_;
        RSubspace span_;
        std::vector<RVector> facets_;       // ambient functionals, inward
        std::vector<RVector> rays_;         // primitive, sorted
        bool pointed_ = true;

        void build()
        {
            std::vector<RVector> nonzero;
            for (const auto& g : generators_)
            {
                if (g.size() != ambient_)
                    fail(ErrorKind::DimensionMismatch, "cone generator of the wrong length");
                if (!is_zero_vector(g))
                    nonzero.push_back(g);
            }
            span_ = RSubspace::span(ambient_, nonzero);
            const std::size_t d = span_.dim();
            if (d == 0)
                return;
            // The span basis is in reduced echelon form, so a vector of the
            // span is determined by its entries at the pivot positions.
            std::vector<std::size_t> pivots;
            for (const auto& b : span_.basis())
                pivots.push_back(static_cast<std::size_t>(
                    std::find_if(b.begin(), b.end(), [](const Rational& x) { return x != 0; }) - b.begin()));
            std::vector<RVector> coords;
            for (const auto& g : nonzero)
            {
                RVector c;
                for (auto p : pivots)
                    c.push_back(g[p]);
                coords.push_back(std::move(c));
            }
            std::vector<RVector> normals;
            detail::for_each_subset(coords.size(), d - 1, [&](const std::vector<std::size_t>& pick) {
                std::vector<RVector> sel;
                for (auto i : pick)
                    sel.push_back(coords[i]);
                auto ns = nullspace(RMatrix::from_rows(sel, d));
                if (ns.size() != 1)
                    return;
                for (int sign : {1, -1})
                {
                    RVector nrm = primitive(scale(ns.front(), Rational(sign)));
                    bool ok = true;
                    for (const auto& c : coords)
                        if (dot(nrm, c) < 0)
                        {
                            ok = false;
                            break;
                        }
                    if (ok && std::find(normals.begin(), normals.end(), nrm) == normals.end())
                        normals.push_back(nrm);
                }
            });
            std::sort(normals.begin(), normals.end());
            for (const auto& nrm : normals)
            {
                RVector f(ambient_, Rational(0));
                for (std::size_t i = 0; i < d; ++i)
                    f[pivots[i]] = nrm[i];
                facets_.push_back(std::move(f));
            }
            pointed_ = rank(RMatrix::from_rows(normals, d)) == d;
            if (!pointed_)
                return;
            for (const auto& g : nonzero)
            {
                std::vector<RVector> tight;
                for (const auto& f : facets_)
                    if (dot(f, g) == 0)
                        tight.push_back(f);
                if (tight.size() + 1 >= d && rank(RMatrix::from_rows(tight, ambient_)) + 1 == d)
                {
                    RVector r = primitive(g);
                    if (std::find(rays_.begin(), rays_.end(), r) == rays_.end())
                        rays_.push_back(std::move(r));
                }
            }
            std::sort(rays_.begin(), rays_.end());
        }

    public:
        PolyhedralCone() = default;

        PolyhedralCone(std::size_t ambient, std::vector<RVector> generators)
            : ambient_(ambient), generators_(std::move(generators))
        {
            build();
        }

        static PolyhedralCone zero(std::size_t ambient) { return PolyhedralCone(ambient, {}); }

        std::size_t ambient_dim() const noexcept { return ambient_; }
        std::size_t dim() const noexcept { return span_.dim(); }
        bool is_zero() const noexcept { return span_.is_zero(); }
        bool is_pointed() const noexcept { return pointed_; }
        const RSubspace& span() const noexcept { return span_; }
        const std::vector<RVector>& generators() const noexcept { return generators_; }
        const std::vector<RVector>& facets() const noexcept { return facets_; }

        /** Primitive integral generators of the extreme rays, sorted; the canonical form. */
        const std::vector<RVector>& rays() const
        {
            if (!pointed_)
                fail(ErrorKind::NotSharp, "extreme rays of a cone containing a line");
            return rays_;
        }

        bool contains(const RVector& x) const
        {
            if (!span_.contains(x))
                return false;
            return std::all_of(facets_.begin(), facets_.end(), [&](const RVector& f) { return dot(f, x) >= 0; });
        }

        bool contains(const PolyhedralCone& other) const
        {
            return std::all_of(other.generators_.begin(), other.generators_.end(),
                               [&](const RVector& g) { return contains(g); });
        }

        /** True when every facet functional is strictly positive at x. */
        bool in_relative_interior(const RVector& x) const
        {
            if (!span_.contains(x) || is_zero())
                return false;
            return std::all_of(facets_.begin(), facets_.end(), [&](const RVector& f) { return dot(f, x) > 0; });
        }

        friend bool operator==(const PolyhedralCone& a, const PolyhedralCone& b)
        {
            return a.contains(b) && b.contains(a);
        }

        /** All faces, from {0} up to the cone itself, each generated by its extreme rays. */
        std::vector<PolyhedralCone> faces() const
        {
            const auto& rs = rays();
            std::set<std::vector<std::size_t>> seen;
            std::vector<std::vector<std::size_t>> queue;
            std::vector<std::size_t> all(rs.size());
            for (std::size_t i = 0; i < rs.size(); ++i)
                all[i] = i;
            seen.insert(all);
            queue.push_back(all);
            for (std::size_t head = 0; head < queue.size(); ++head)
            {
                auto current = queue[head];
                for (const auto& f : facets_)
                {
                    std::vector<std::size_t> next;
                    for (auto i : current)
                        if (dot(f, rs[i]) == 0)
                            next.push_back(i);
                    if (seen.insert(next).second)
                        queue.push_back(next);
                }
            }
            std::vector<std::vector<std::size_t>> ordered(seen.begin(), seen.end());
            std::stable_sort(ordered.begin(), ordered.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
            std::vector<PolyhedralCone> out;
            for (const auto& idx : ordered)
            {
                std::vector<RVector> gens;
                for (auto i : idx)
                    gens.push_back(rs[i]);
                out.emplace_back(ambient_, std::move(gens));
            }
            return out;
        }

        bool is_face_of(const PolyhedralCone& sigma) const
        {
            if (!pointed_ || !sigma.contains(*this))
                return false;
            for (const auto& f : sigma.faces())
                if (f.rays_ == rays_)
                    return true;
            return false;
        }

        PolyhedralCone transform(const RMatrix& g) const
        {
            std::vector<RVector> gens;
            for (const auto& v : generators_)
                gens.push_back(g * v);
            return PolyhedralCone(ambient_, std::move(gens));
        }
};

/** Intersection of two pointed cones by inequality pull-back and exhaustive ray enumeration. */
inline PolyhedralCone intersect_cones(const PolyhedralCone& a, const PolyhedralCone& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "intersecting cones in different spaces");
    if (!a.is_pointed() || !b.is_pointed())
        fail(ErrorKind::NotSharp, "intersection is only supported for pointed cones");
    const std::size_t m = a.ambient_dim();
    RSubspace s = intersection(a.span(), b.span());
    std::vector<RVector> basis;
    for (const auto& v : s.basis())
        basis.push_back(primitive(v));
    std::vector<RVector> functionals = a.facets();
    functionals.insert(functionals.end(), b.facets().begin(), b.facets().end());
    return PolyhedralCone(m, detail::rays_from_inequalities(m, basis, functionals));
}

/** A sharp cone generated by pairwise commuting nilpotent rational matrices. */
class NilpotentCone
{
    private:
        std::size_t n_ = 0;
        std::vector<RMatrix> generators_;
        PolyhedralCone cone_;

        static std::vector<RVector> flatten(const std::vector<RMatrix>& ms)
        {
            std::vector<RVector> out;
            for (const auto& m : ms)
                out.push_back(m.flat());
            return out;
        }

    public:
        NilpotentCone() = default;

        /** Validating constructor; Λ, when given, adds the g_Q membership check. */
        NilpotentCone(std::size_t n, std::vector<RMatrix> generators, const HodgeData* lambda = nullptr)
            : n_(n), generators_(std::move(generators))
        {
            for (const auto& g : generators_)
            {
                if (g.rows() != n_ || g.cols() != n_)
                    fail(ErrorKind::DimensionMismatch, "cone generator has the wrong size");
                if (!is_nilpotent(g))
                    fail(ErrorKind::NotNilpotent, "cone generator is not nilpotent");
                if (lambda && !in_lie_algebra(g, *lambda, Ring::Q))
                    fail(ErrorKind::NotInLieAlgebra, "cone generator is not in g_Q");
            }
            for (std::size_t i = 0; i < generators_.size(); ++i)
                for (std::size_t j = i + 1; j < generators_.size(); ++j)
                    if (!commutator(generators_[i], generators_[j]).is_zero())
                        fail(ErrorKind::NotCommuting, "cone generators do not commute");
            cone_ = PolyhedralCone(n_ * n_, flatten(generators_));
            if (!cone_.is_pointed())
                fail(ErrorKind::NotSharp, "cone contains a line");
        }

        static NilpotentCone zero(std::size_t n) { return NilpotentCone(n, {}); }

        std::size_t matrix_size() const noexcept { return n_; }
        std::size_t dim() const noexcept { return cone_.dim(); }
        bool is_zero() const noexcept { return cone_.is_zero(); }
        const std::vector<RMatrix>& generators() const noexcept { return generators_; }
        const PolyhedralCone& polyhedral() const noexcept { return cone_; }

        /** Primitive integral extreme-ray matrices in canonical order. */
        std::vector<RMatrix> rays() const
        {
            std::vector<RMatrix> out;
            for (const auto& r : cone_.rays())
                out.push_back(RMatrix::from_flat(n_, n_, r));
            return out;
        }

        bool contains(const RMatrix& x) const { return cone_.contains(x.flat()); }
        bool in_relative_interior(const RMatrix& x) const { return cone_.in_relative_interior(x.flat()); }

        friend bool operator==(const NilpotentCone& a, const NilpotentCone& b)
        {
            return a.n_ == b.n_ && a.cone_.rays() == b.cone_.rays();
        }
        friend bool operator!=(const NilpotentCone& a, const NilpotentCone& b) { return !(a == b); }

        std::vector<NilpotentCone> faces() const
        {
            std::vector<NilpotentCone> out;
            for (const auto& f : cone_.faces())
            {
                std::vector<RMatrix> gens;
                for (const auto& r : f.rays())
                    gens.push_back(RMatrix::from_flat(n_, n_, r));
                out.emplace_back(n_, std::move(gens));
            }
            return out;
        }

        bool is_face_of(const NilpotentCone& sigma) const
        {
            return n_ == sigma.n_ && cone_.is_face_of(sigma.cone_);
        }

        /** Ad(γ)σ = γσγ^{-1}. */
        NilpotentCone adjoint(const RMatrix& gamma) const
        {
            auto gi = inverse(gamma);
            if (!gi)
                fail(ErrorKind::InvalidInput, "adjoint action by a singular matrix");
            std::vector<RMatrix> gens;
            for (const auto& g : generators_)
                gens.push_back(gamma * g * *gi);
            return NilpotentCone(n_, std::move(gens));
        }
};

inline NilpotentCone intersect_cones(const NilpotentCone& a, const NilpotentCone& b)
{
    if (a.matrix_size() != b.matrix_size())
        fail(ErrorKind::DimensionMismatch, "intersecting cones of different matrix sizes");
    auto c = intersect_cones(a.polyhedral(), b.polyhedral());
    std::vector<RMatrix> gens;
    for (const auto& r : c.rays())
        gens.push_back(RMatrix::from_flat(a.matrix_size(), a.matrix_size(), r));
    return NilpotentCone(a.matrix_size(), std::move(gens));
}

inline bool is_face_of(const NilpotentCone& tau, const NilpotentCone& sigma) { return tau.is_face_of(sigma); }

/**
 * Rational points of the relative interior: sample 0 is the barycenter of
 * the extreme rays, later samples weight the rays by seeded rationals in
 * (1/2, 3/2).
 */
inline std::vector<RMatrix> sample_interior(const NilpotentCone& sigma, std::size_t count, std::uint64_t seed)
{
    if (sigma.is_zero())
        fail(ErrorKind::EmptyInterior, "the zero cone has no interior points to sample");
    const auto rays = sigma.rays();
    const Rational k(static_cast<long>(rays.size()));
    std::mt19937_64 engine(seed);
    std::vector<RMatrix> out;
    for (std::size_t s = 0; s < count; ++s)
    {
        RMatrix x(sigma.matrix_size(), sigma.matrix_size());
        for (const auto& r : rays)
        {
            Rational c(1);
            if (s > 0)
                c = Rational(1, 2) + Rational(static_cast<long>(engine() % 999) + 1, 1000);
            x += r * (c / k);
        }
        if (!sigma.in_relative_interior(x))
            fail(ErrorKind::Internal, "interior sample left the relative interior");
        out.push_back(std::move(x));
    }
    return out;
}

/**
 * Γ(σ) generates σ exactly when the cone spanned by the logarithms of its
 * generators equals σ.
 */
inline bool check_strong_compatibility(const NilpotentCone& sigma, const std::vector<RMatrix>& gamma_generators)
{
    std::vector<RVector> logs;
    for (const auto& g : gamma_generators)
    {
        if (!is_unipotent(g))
            fail(ErrorKind::NotUnipotent, "Γ(σ) generator is not unipotent");
        RMatrix l = log_unipotent(g);
        if (!sigma.contains(l))
            return false;
        logs.push_back(l.flat());
    }
    PolyhedralCone spanned(sigma.matrix_size() * sigma.matrix_size(), logs);
    return spanned == sigma.polyhedral();
}

}   // namespace hodge

#endif
