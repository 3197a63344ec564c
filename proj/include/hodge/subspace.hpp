/**
 * Linear subspaces of K^n in canonical form.
 *
 * Exact subspaces keep their reduced row echelon basis, so equality is plain
 * comparison of bases. Complex subspaces keep an orthonormal basis and are
 * compared up to a tolerance.
 */

#ifndef HODGE_SUBSPACE_HPP
#define HODGE_SUBSPACE_HPP

#include <cstddef>
#include <optional>
#include <vector>
#include "matrix.hpp"

namespace hodge {

template <typename T>
class Subspace
{
    private:
        std::size_t ambient_ = 0;
        std::vector<Vector<T>> basis_;

        static std::vector<Vector<T>> canonical_exact(std::size_t ambient, const std::vector<Vector<T>>& vectors)
        {
            auto e = rref(Matrix<T>::from_rows(vectors, ambient));
            std::vector<Vector<T>> rows;
            for (std::size_t i = 0; i < e.reduced.rows(); ++i)
                rows.push_back(e.reduced.row(i));
            return rows;
        }

        // Two-pass modified Gram-Schmidt; a vector is new when its residual
        // exceeds tol relative to its own length.
        static void orthonormal_append(std::vector<CVector>& basis, const CVector& v, double tol)
        {
            double len = norm(v);
            if (len == 0.0)
                return;
            CVector w = v;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis)
                {
                    Complex c = hdot(b, w);
                    for (std::size_t i = 0; i < w.size(); ++i)
                        w[i] -= c * b[i];
                }
            double res = norm(w);
            if (res <= tol * len)
                return;
            for (auto& x : w)
                x /= res;
            basis.push_back(std::move(w));
        }

    public:
        Subspace() = default;

        static Subspace span(std::size_t ambient, const std::vector<Vector<T>>& vectors, double tol = kDefaultTol)
        {
            Subspace s;
            s.ambient_ = ambient;
            for (const auto& v : vectors)
                if (v.size() != ambient)
                    fail(ErrorKind::DimensionMismatch, "spanning vector has wrong length");
            if constexpr (ScalarTraits<T>::exact)
            {
                (void)tol;
                s.basis_ = canonical_exact(ambient, vectors);
            }
            else
            {
                for (const auto& v : vectors)
                    orthonormal_append(s.basis_, v, tol);
            }
            return s;
        }

        static Subspace zero(std::size_t ambient)
        {
            Subspace s;
            s.ambient_ = ambient;
            return s;
        }

        static Subspace full(std::size_t ambient)
        {
            return coordinate(ambient, 0, ambient);
        }

        /** span(e_first, ..., e_{first+count-1}) */
        static Subspace coordinate(std::size_t ambient, std::size_t first, std::size_t count)
        {
            std::vector<Vector<T>> vs;
            for (std::size_t i = first; i < first + count; ++i)
            {
                Vector<T> e(ambient, T(0));
                e[i] = T(1);
                vs.push_back(std::move(e));
            }
            return span(ambient, vs);
        }

        std::size_t ambient_dim() const noexcept { return ambient_; }
        std::size_t dim() const noexcept { return basis_.size(); }
        bool is_zero() const noexcept { return basis_.empty(); }
        bool is_full() const noexcept { return basis_.size() == ambient_; }
        const std::vector<Vector<T>>& basis() const noexcept { return basis_; }

        /** Basis vectors as the columns of an ambient x dim matrix. */
        Matrix<T> basis_matrix() const { return Matrix<T>::from_columns(basis_, ambient_); }

        /** Coefficients of v in the stored basis, if v lies in the subspace. */
        std::optional<Vector<T>> coordinates(const Vector<T>& v, double tol = kDefaultTol) const
        {
            if (v.size() != ambient_)
                fail(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
            if constexpr (ScalarTraits<T>::exact)
            {
                (void)tol;
                return solve(basis_matrix(), v);
            }
            else
            {
                CVector c(basis_.size());
                CVector r = v;
                for (std::size_t k = 0; k < basis_.size(); ++k)
                {
                    c[k] = hdot(basis_[k], r);
                    for (std::size_t i = 0; i < r.size(); ++i)
                        r[i] -= c[k] * basis_[k][i];
                }
                if (norm(r) > tol * std::max(1.0, norm(v)))
                    return std::nullopt;
                return c;
            }
        }

        bool contains(const Vector<T>& v, double tol = kDefaultTol) const
        {
            return coordinates(v, tol).has_value();
        }

        bool contains(const Subspace& other, double tol = kDefaultTol) const
        {
            if (other.ambient_ != ambient_)
                fail(ErrorKind::DimensionMismatch, "subspaces of different ambient spaces");
            if (other.dim() > dim())
                return false;
            for (const auto& v : other.basis_)
                if (!contains(v, tol))
                    return false;
            return true;
        }

        bool equals(const Subspace& other, double tol = kDefaultTol) const
        {
            if (ambient_ != other.ambient_ || dim() != other.dim())
                return false;
            if constexpr (ScalarTraits<T>::exact)
                return basis_ == other.basis_;
            else
                return contains(other, tol);
        }

        friend bool operator==(const Subspace& a, const Subspace& b) { return a.equals(b); }
        friend bool operator!=(const Subspace& a, const Subspace& b) { return !a.equals(b); }
};

using RSubspace = Subspace<Rational>;
using CSubspace = Subspace<Complex>;

template <typename T>
Subspace<T> sum(const Subspace<T>& a, const Subspace<T>& b, double tol = kDefaultTol)
{
    if (a.ambient_dim() != b.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "sum of subspaces of different ambient spaces");
    std::vector<Vector<T>> vs = a.basis();
    vs.insert(vs.end(), b.basis().begin(), b.basis().end());
    return Subspace<T>::span(a.ambient_dim(), vs, tol);
}

/**
 * Orthogonal complement: for exact subspaces with respect to the standard
 * dot product, for complex ones with respect to the Hermitian product.
 */
template <typename T>
Subspace<T> complement(const Subspace<T>& s, double tol = kDefaultTol)
{
    const std::size_t n = s.ambient_dim();
    if constexpr (ScalarTraits<T>::exact)
    {
        (void)tol;
        if (s.is_zero())
            return Subspace<T>::full(n);
        return Subspace<T>::span(n, nullspace(Matrix<T>::from_rows(s.basis(), n)));
    }
    else
    {
        // Greedy choice of the standard vector with the largest residual,
        // repeated exactly n - dim times.
        std::vector<CVector> current = s.basis();
        std::vector<CVector> picked;
        std::vector<bool> used(n, false);
        for (std::size_t step = 0; step < n - s.dim(); ++step)
        {
            double best = -1.0;
            std::size_t best_i = n;
            CVector best_w;
            for (std::size_t i = 0; i < n; ++i)
            {
                if (used[i])
                    continue;
                CVector w(n, Complex(0));
                w[i] = 1.0;
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& b : current)
                    {
                        Complex c = hdot(b, w);
                        for (std::size_t k = 0; k < n; ++k)
                            w[k] -= c * b[k];
                    }
                double r = norm(w);
                if (r > best)
                {
                    best = r;
                    best_i = i;
                    best_w = std::move(w);
                }
            }
            used[best_i] = true;
            for (auto& x : best_w)
                x /= best;
            current.push_back(best_w);
            picked.push_back(std::move(best_w));
        }
        return Subspace<T>::span(n, picked, tol);
    }
}

template <typename T>
Subspace<T> intersection(const Subspace<T>& a, const Subspace<T>& b, double tol = kDefaultTol)
{
    if (a.ambient_dim() != b.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "intersection of subspaces of different ambient spaces");
    if (a.is_zero() || b.is_zero())
        return Subspace<T>::zero(a.ambient_dim());
    if (a.is_full())
        return b;
    if (b.is_full())
        return a;
    return complement(sum(complement(a, tol), complement(b, tol), tol), tol);
}

/** m(s) */
template <typename T>
Subspace<T> image(const Matrix<T>& m, const Subspace<T>& s, double tol = kDefaultTol)
{
    std::vector<Vector<T>> vs;
    for (const auto& v : s.basis())
        vs.push_back(m * v);
    return Subspace<T>::span(m.rows(), vs, tol);
}

/** Column space of m. */
template <typename T>
Subspace<T> image(const Matrix<T>& m, double tol = kDefaultTol)
{
    return Subspace<T>::span(m.rows(), m.columns(), tol);
}

template <typename T>
Subspace<T> kernel(const Matrix<T>& m, double tol = kDefaultTol)
{
    return Subspace<T>::span(m.cols(), nullspace(m, tol), tol);
}

/** {x : m x in s}, exact only. */
inline RSubspace preimage(const RMatrix& m, const RSubspace& s)
{
    if (s.is_full())
        return RSubspace::full(m.cols());
    auto perp = complement(s);
    RMatrix c = RMatrix::from_rows(perp.basis(), m.rows());
    return kernel(RMatrix(c * m));
}

/**
 * Vectors completing a basis of `sub` to a basis of `super` (sub must lie in
 * super). The choice is deterministic: super's canonical basis is scanned in
 * order and a vector is kept when it is new.
 */
inline std::vector<RVector> extend_basis(const RSubspace& sub, const RSubspace& super)
{
    std::vector<RVector> current = sub.basis();
    std::vector<RVector> added;
    std::size_t have = sub.dim();
    for (const auto& v : super.basis())
    {
        if (have == super.dim())
            break;
        auto trial = current;
        trial.push_back(v);
        if (rank(RMatrix::from_rows(trial)) > have)
        {
            current = std::move(trial);
            added.push_back(v);
            ++have;
        }
    }
    return added;
}

inline CSubspace to_complex(const RSubspace& s)
{
    std::vector<CVector> vs;
    for (const auto& v : s.basis())
        vs.push_back(to_complex(v));
    return CSubspace::span(s.ambient_dim(), vs);
}

inline CSubspace conj(const CSubspace& s)
{
    std::vector<CVector> vs;
    for (const auto& v : s.basis())
    {
        CVector c(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            c[i] = std::conj(v[i]);
        vs.push_back(std::move(c));
    }
    return CSubspace::span(s.ambient_dim(), vs);
}

}   // namespace hodge

#endif
