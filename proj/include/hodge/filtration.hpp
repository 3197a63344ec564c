/**
 * Increasing (weight) and decreasing (Hodge) filtrations, graded pieces and
 * the maps and forms induced on them.
 *
 * Filtrations are stored sparsely: only the indices where the subspace
 * changes are kept. For an increasing filtration W the stored key k means
 * W_k != W_{k-1}; below the first key W is zero. For a decreasing filtration
 * F the stored key p means F^p != F^{p+1}; above the last key F is zero.
 */

#ifndef HODGE_FILTRATION_HPP
#define HODGE_FILTRATION_HPP

#include <iterator>
#include <map>
#include <optional>
#include <utility>
#include <vector>
#include "subspace.hpp"

namespace hodge {

class IncreasingFiltration
{
    private:
        std::size_t ambient_ = 0;
        std::map<int, RSubspace> jumps_;

    public:
        IncreasingFiltration() = default;

        /**
         * Build from (index, subspace) steps. Steps must be nested and the last
         * one must be the whole space; repeated steps are dropped.
         */
        static IncreasingFiltration from_steps(std::size_t ambient, const std::map<int, RSubspace>& steps)
        {
            IncreasingFiltration w;
            w.ambient_ = ambient;
            RSubspace prev = RSubspace::zero(ambient);
            for (const auto& [k, s] : steps)
            {
                if (s.ambient_dim() != ambient)
                    fail(ErrorKind::DimensionMismatch, "filtration step has wrong ambient dimension");
                if (!s.contains(prev))
                    fail(ErrorKind::InvalidInput, "increasing filtration is not nested at index " + std::to_string(k));
                if (s.dim() != prev.dim())
                    w.jumps_.emplace(k, s);
                prev = s;
            }
            if (prev.dim() != ambient)
                fail(ErrorKind::InvalidInput, "increasing filtration does not exhaust the space");
            return w;
        }

        /** W_{w-1} = 0, W_w = everything. */
        static IncreasingFiltration pure(std::size_t ambient, int weight)
        {
            if (ambient == 0)
                return from_steps(0, {});
            return from_steps(ambient, {{weight, RSubspace::full(ambient)}});
        }

        std::size_t ambient_dim() const noexcept { return ambient_; }
        const std::map<int, RSubspace>& jumps() const noexcept { return jumps_; }

        std::vector<int> weights() const
        {
            std::vector<int> ks;
            for (const auto& [k, s] : jumps_)
                ks.push_back(k);
            return ks;
        }

        RSubspace at(int k) const
        {
            auto it = jumps_.upper_bound(k);
            if (it == jumps_.begin())
                return RSubspace::zero(ambient_);
            return std::prev(it)->second;
        }

        std::size_t graded_dim(int k) const { return at(k).dim() - at(k - 1).dim(); }

        IncreasingFiltration transform(const RMatrix& g) const
        {
            std::map<int, RSubspace> steps;
            for (const auto& [k, s] : jumps_)
                steps.emplace(k, image(g, s));
            return from_steps(ambient_, steps);
        }

        friend bool operator==(const IncreasingFiltration& a, const IncreasingFiltration& b)
        {
            if (a.ambient_ != b.ambient_ || a.jumps_.size() != b.jumps_.size())
                return false;
            auto ib = b.jumps_.begin();
            for (const auto& [k, s] : a.jumps_)
            {
                if (k != ib->first || s != ib->second)
                    return false;
                ++ib;
            }
            return true;
        }

        friend bool operator!=(const IncreasingFiltration& a, const IncreasingFiltration& b) { return !(a == b); }
};

class DecreasingFiltration
{
    private:
        std::size_t ambient_ = 0;
        std::map<int, CSubspace> jumps_;

    public:
        DecreasingFiltration() = default;

        /**
         * Build from (index, subspace) steps: F^{p+1} must lie in F^p and the
         * smallest-index step must be the whole space.
         */
        static DecreasingFiltration from_steps(std::size_t ambient, const std::map<int, CSubspace>& steps,
                                               double tol = kDefaultTol)
        {
            DecreasingFiltration f;
            f.ambient_ = ambient;
            if (steps.empty())
            {
                if (ambient != 0)
                    fail(ErrorKind::InvalidInput, "decreasing filtration has no steps");
                return f;
            }
            if (steps.begin()->second.dim() != ambient)
                fail(ErrorKind::InvalidInput, "decreasing filtration does not start at the whole space");
            CSubspace next = CSubspace::zero(ambient);
            for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            {
                const auto& [p, s] = *it;
                if (s.ambient_dim() != ambient)
                    fail(ErrorKind::DimensionMismatch, "filtration step has wrong ambient dimension");
                if (!s.contains(next, tol))
                    fail(ErrorKind::InvalidInput, "decreasing filtration is not nested at index " + std::to_string(p));
                if (s.dim() != next.dim())
                    f.jumps_.emplace(p, s);
                next = s;
            }
            return f;
        }

        std::size_t ambient_dim() const noexcept { return ambient_; }
        const std::map<int, CSubspace>& jumps() const noexcept { return jumps_; }

        CSubspace at(int p) const
        {
            auto it = jumps_.lower_bound(p);
            if (it == jumps_.end())
                return CSubspace::zero(ambient_);
            return it->second;
        }

        /** Smallest and largest p with gr^p nonzero; (0, -1) when ambient is 0. */
        std::pair<int, int> range() const
        {
            if (jumps_.empty())
                return {0, -1};
            return {jumps_.begin()->first, jumps_.rbegin()->first};
        }

        DecreasingFiltration transform(const CMatrix& g, double tol = kDefaultTol) const
        {
            std::map<int, CSubspace> steps;
            for (const auto& [p, s] : jumps_)
                steps.emplace(p, image(g, s, tol));
            return from_steps(ambient_, steps, tol);
        }

        bool equals(const DecreasingFiltration& other, double tol = kDefaultTol) const
        {
            if (ambient_ != other.ambient_ || jumps_.size() != other.jumps_.size())
                return false;
            auto ib = other.jumps_.begin();
            for (const auto& [p, s] : jumps_)
            {
                if (p != ib->first || !s.equals(ib->second, tol))
                    return false;
                ++ib;
            }
            return true;
        }
};

/**
 * W_k / W_{k-1} with an explicit lifted basis: vectors of W_k whose classes
 * form a basis of the quotient. The lift is chosen by scanning the canonical
 * basis of W_k, so it is deterministic.
 */
class QuotientSpace
{
    private:
        std::size_t ambient_ = 0;
        RSubspace sub_;
        RSubspace top_;
        std::vector<RVector> lift_;
        RMatrix combined_;      // columns: basis of sub, then the lifts

    public:
        QuotientSpace() = default;

        QuotientSpace(const RSubspace& sub, const RSubspace& top)
            : ambient_(top.ambient_dim()), sub_(sub), top_(top), lift_(extend_basis(sub, top))
        {
            std::vector<RVector> cols = sub_.basis();
            cols.insert(cols.end(), lift_.begin(), lift_.end());
            combined_ = RMatrix::from_columns(cols, ambient_);
        }

        std::size_t ambient_dim() const noexcept { return ambient_; }
        std::size_t dim() const noexcept { return lift_.size(); }
        const RSubspace& sub() const noexcept { return sub_; }
        const RSubspace& top() const noexcept { return top_; }
        const std::vector<RVector>& lifted_basis() const noexcept { return lift_; }

        /** Coordinates of the class of v (v must lie in the top space). */
        std::optional<RVector> coordinates(const RVector& v) const
        {
            auto c = solve(combined_, v);
            if (!c)
                return std::nullopt;
            return RVector(c->begin() + static_cast<std::ptrdiff_t>(sub_.dim()), c->end());
        }

        RVector lift(const RVector& coords) const
        {
            RVector v(ambient_, Rational(0));
            for (std::size_t j = 0; j < lift_.size(); ++j)
                for (std::size_t i = 0; i < ambient_; ++i)
                    v[i] += coords[j] * lift_[j][i];
            return v;
        }

        /** (s ∩ top + sub) / sub in quotient coordinates. */
        RSubspace project(const RSubspace& s) const
        {
            auto meet = intersection(s, top_);
            std::vector<RVector> vs;
            for (const auto& v : meet.basis())
                vs.push_back(*coordinates(v));
            return RSubspace::span(dim(), vs);
        }
};

inline QuotientSpace graded_piece(const IncreasingFiltration& w, int k)
{
    return QuotientSpace(w.at(k - 1), w.at(k));
}

inline bool preserves(const RMatrix& n, const IncreasingFiltration& w)
{
    for (const auto& [k, s] : w.jumps())
        if (!s.contains(image(n, s)))
            return false;
    return true;
}

/** Matrix of the map induced by n on gr^W_k, in the lifted basis. */
inline RMatrix induced_graded_endomorphism(const RMatrix& n, const IncreasingFiltration& w, int k)
{
    if (n.rows() != w.ambient_dim() || n.cols() != w.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "endomorphism size differs from the filtered space");
    if (!preserves(n, w))
        fail(ErrorKind::NotFiltrationPreserving, "endomorphism does not preserve the filtration");
    auto gr = graded_piece(w, k);
    RMatrix out(gr.dim(), gr.dim());
    for (std::size_t j = 0; j < gr.dim(); ++j)
    {
        auto c = gr.coordinates(n * gr.lifted_basis()[j]);
        if (!c)
            fail(ErrorKind::Internal, "image of a lifted vector left W_k");
        for (std::size_t i = 0; i < gr.dim(); ++i)
            out(i, j) = (*c)[i];
    }
    return out;
}

/**
 * Basis adapted to W: the lifted bases of the graded pieces, concatenated in
 * increasing weight. In these coordinates W_k is a coordinate subspace.
 */
struct AdaptedBasis
{
    RMatrix to_ambient;         // columns are the adapted basis vectors
    RMatrix from_ambient;
    std::map<int, std::pair<std::size_t, std::size_t>> blocks;     // weight -> (offset, dim)
};

inline AdaptedBasis adapted_basis(const IncreasingFiltration& w)
{
    std::vector<RVector> cols;
    AdaptedBasis ab;
    for (int k : w.weights())
    {
        auto gr = graded_piece(w, k);
        ab.blocks.emplace(k, std::make_pair(cols.size(), gr.dim()));
        cols.insert(cols.end(), gr.lifted_basis().begin(), gr.lifted_basis().end());
    }
    ab.to_ambient = RMatrix::from_columns(cols, w.ambient_dim());
    auto inv = inverse(ab.to_ambient);
    if (!inv)
        fail(ErrorKind::Internal, "adapted basis is singular");
    ab.from_ambient = *inv;
    return ab;
}

/**
 * The filtration F(gr^W_k) induced by a complex filtration on the
 * complexified graded piece, in lifted-basis coordinates.
 */
inline DecreasingFiltration induced_on_graded(const DecreasingFiltration& f, const IncreasingFiltration& w, int k,
                                              double tol = kDefaultTol)
{
    if (f.ambient_dim() != w.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "filtrations live on different spaces");
    auto ab = adapted_basis(w);
    auto it = ab.blocks.find(k);
    if (it == ab.blocks.end())
        return DecreasingFiltration::from_steps(0, {});
    const auto [offset, d] = it->second;
    const std::size_t n = w.ambient_dim();
    CMatrix to_adapted = to_complex(ab.from_ambient);
    CSubspace wk = CSubspace::coordinate(n, 0, offset + d);
    std::map<int, CSubspace> steps;
    auto [lo, hi] = f.range();
    for (int p = lo; p <= hi + 1; ++p)
    {
        CSubspace fp = image(to_adapted, f.at(p), tol);
        CSubspace meet = intersection(fp, wk, tol);
        std::vector<CVector> vs;
        for (const auto& v : meet.basis())
            vs.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(offset),
                            v.begin() + static_cast<std::ptrdiff_t>(offset + d));
        steps.emplace(p, CSubspace::span(d, vs, tol));
    }
    return DecreasingFiltration::from_steps(d, steps, tol);
}

/**
 * True iff |<u, v>| <= tol for every pair of basis vectors of U and V (exact
 * zero test for exact input). Complex bases are orthonormal, so the tolerance
 * is relative to unit vectors.
 */
template <typename T>
bool form_kills(const Matrix<T>& form, const Subspace<T>& u, const Subspace<T>& v, double tol = kDefaultTol)
{
    if (!form.is_square() || form.rows() != u.ambient_dim() || form.rows() != v.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "pairing and subspaces have incompatible sizes");
    for (const auto& a : u.basis())
        for (const auto& b : v.basis())
            if (!ScalarTraits<T>::is_zero(pairing(form, a, b), tol))
                return false;
    return true;
}

}   // namespace hodge

#endif
