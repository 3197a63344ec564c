/**
 * Dense matrices over an exact or a floating-point field, with the small set
 * of elimination routines the rest of the toolkit is built on.
 *
 * Everything here is templated on the scalar type; `ScalarTraits<T>` decides
 * whether zero tests are exact (rationals) or tolerance-based (complex).
 */

#ifndef HODGE_MATRIX_HPP
#define HODGE_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>
#include "error.hpp"
#include "scalar.hpp"

namespace hodge {

template <typename T>
using Vector = std::vector<T>;

template <typename T>
class Matrix
{
    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;

    public:
        Matrix() = default;

        Matrix(std::size_t rows, std::size_t cols)
            : rows_(rows), cols_(cols), data_(rows * cols, T(0))
        {
        }

        static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

        static Matrix identity(std::size_t n)
        {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = T(1);
            return m;
        }

        /** Build from a list of rows; all rows must have the same length. */
        static Matrix from_rows(const std::vector<Vector<T>>& rows, std::size_t cols_if_empty = 0)
        {
            std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
            Matrix m(rows.size(), cols);
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                if (rows[i].size() != cols)
                    fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) = rows[i][j];
            }
            return m;
        }

        /** Build from a list of columns. */
        static Matrix from_columns(const std::vector<Vector<T>>& columns, std::size_t rows_if_empty = 0)
        {
            std::size_t rows = columns.empty() ? rows_if_empty : columns.front().size();
            Matrix m(rows, columns.size());
            for (std::size_t j = 0; j < columns.size(); ++j)
            {
                if (columns[j].size() != rows)
                    fail(ErrorKind::DimensionMismatch, "ragged matrix columns");
                for (std::size_t i = 0; i < rows; ++i)
                    m(i, j) = columns[j][i];
            }
            return m;
        }

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        Vector<T> row(std::size_t i) const
        {
            return Vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
        }

        Vector<T> column(std::size_t j) const
        {
            Vector<T> c(rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                c[i] = (*this)(i, j);
            return c;
        }

        std::vector<Vector<T>> columns() const
        {
            std::vector<Vector<T>> out;
            out.reserve(cols_);
            for (std::size_t j = 0; j < cols_; ++j)
                out.push_back(column(j));
            return out;
        }

        /** Row-major flattening; the coordinates used for cones of matrices. */
        const std::vector<T>& flat() const noexcept { return data_; }

        static Matrix from_flat(std::size_t rows, std::size_t cols, const Vector<T>& flat)
        {
            if (flat.size() != rows * cols)
                fail(ErrorKind::DimensionMismatch, "flat vector has wrong length");
            Matrix m(rows, cols);
            m.data_ = flat;
            return m;
        }

        Matrix transpose() const
        {
            Matrix t(cols_, rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        Matrix conjugate() const
        {
            Matrix c(rows_, cols_);
            for (std::size_t k = 0; k < data_.size(); ++k)
                c.data_[k] = ScalarTraits<T>::conj(data_[k]);
            return c;
        }

        bool is_zero(double tol = 0.0) const
        {
            return std::all_of(data_.begin(), data_.end(),
                               [tol](const T& x) { return ScalarTraits<T>::is_zero(x, tol); });
        }

        double max_abs() const
        {
            double m = 0.0;
            for (const T& x : data_)
                m = std::max(m, ScalarTraits<T>::magnitude(x));
            return m;
        }

        friend bool operator==(const Matrix& a, const Matrix& b)
        {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
        }

        friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

        Matrix& operator+=(const Matrix& other)
        {
            if (rows_ != other.rows_ || cols_ != other.cols_)
                fail(ErrorKind::DimensionMismatch, "matrix sum");
            for (std::size_t k = 0; k < data_.size(); ++k)
                data_[k] += other.data_[k];
            return *this;
        }

        Matrix& operator-=(const Matrix& other)
        {
            if (rows_ != other.rows_ || cols_ != other.cols_)
                fail(ErrorKind::DimensionMismatch, "matrix difference");
            for (std::size_t k = 0; k < data_.size(); ++k)
                data_[k] -= other.data_[k];
            return *this;
        }

        Matrix& operator*=(const T& s)
        {
            for (T& x : data_)
                x *= s;
            return *this;
        }

        friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
        friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
        friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
        friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
        friend Matrix operator-(Matrix a) { return a *= T(-1); }

        friend Matrix operator*(const Matrix& a, const Matrix& b)
        {
            if (a.cols_ != b.rows_)
                fail(ErrorKind::DimensionMismatch, "matrix product");
            Matrix c(a.rows_, b.cols_);
            for (std::size_t i = 0; i < a.rows_; ++i)
                for (std::size_t k = 0; k < a.cols_; ++k)
                {
                    const T& aik = a(i, k);
                    if (aik == T(0))
                        continue;
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        c(i, j) += aik * b(k, j);
                }
            return c;
        }

        friend Vector<T> operator*(const Matrix& a, const Vector<T>& v)
        {
            if (a.cols_ != v.size())
                fail(ErrorKind::DimensionMismatch, "matrix-vector product");
            Vector<T> out(a.rows_, T(0));
            for (std::size_t i = 0; i < a.rows_; ++i)
                for (std::size_t j = 0; j < a.cols_; ++j)
                    out[i] += a(i, j) * v[j];
            return out;
        }
};

using RMatrix = Matrix<Rational>;
using CMatrix = Matrix<Complex>;
using RVector = Vector<Rational>;
using CVector = Vector<Complex>;

inline CMatrix to_complex(const RMatrix& m)
{
    CMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            c(i, j) = to_complex(m(i, j));
    return c;
}

inline CVector to_complex(const RVector& v)
{
    CVector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        c[i] = to_complex(v[i]);
    return c;
}

template <typename T>
Vector<T> add(const Vector<T>& a, const Vector<T>& b)
{
    Vector<T> out(a);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += b[i];
    return out;
}

template <typename T>
Vector<T> scale(const Vector<T>& a, const T& s)
{
    Vector<T> out(a);
    for (T& x : out)
        x *= s;
    return out;
}

template <typename T>
T dot(const Vector<T>& a, const Vector<T>& b)
{
    if (a.size() != b.size())
        fail(ErrorKind::DimensionMismatch, "dot product");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/** Hermitian inner product, conjugate-linear in the first slot. */
inline Complex hdot(const CVector& a, const CVector& b)
{
    Complex s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const CVector& v)
{
    double s = 0;
    for (const auto& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

template <typename T>
bool is_zero_vector(const Vector<T>& v, double tol = 0.0)
{
    return std::all_of(v.begin(), v.end(), [tol](const T& x) { return ScalarTraits<T>::is_zero(x, tol); });
}

/** Bilinear pairing u^T P v. */
template <typename T>
T pairing(const Matrix<T>& form, const Vector<T>& u, const Vector<T>& v)
{
    return dot(u, form * v);
}

template <typename T>
struct Echelon
{
    Matrix<T> reduced;
    std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

/**
 * Reduced row echelon form. For complex input a column entry counts as zero
 * when its magnitude is at most tol * max(1, max|entry|); exact input ignores
 * the tolerance.
 */
template <typename T>
Echelon<T> rref(Matrix<T> m, double tol = kDefaultTol)
{
    const double threshold = ScalarTraits<T>::exact ? 0.0 : tol * std::max(1.0, m.max_abs());
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c)
    {
        std::size_t best = m.rows();
        double best_mag = threshold;
        for (std::size_t i = r; i < m.rows(); ++i)
        {
            if constexpr (ScalarTraits<T>::exact)
            {
                if (m(i, c) != 0)
                {
                    best = i;
                    break;
                }
            }
            else
            {
                double mag = ScalarTraits<T>::magnitude(m(i, c));
                if (mag > best_mag)
                {
                    best_mag = mag;
                    best = i;
                }
            }
        }
        if (best == m.rows())
        {
            if constexpr (!ScalarTraits<T>::exact)
                for (std::size_t i = r; i < m.rows(); ++i)
                    m(i, c) = T(0);
            continue;
        }
        if (best != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(r, j), m(best, j));
        T inv = T(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            if (i == r || m(i, c) == T(0))
                continue;
            T f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<T> reduced(r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            reduced(i, j) = m(i, j);
    return {std::move(reduced), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m, double tol = kDefaultTol)
{
    return rref(m, tol).pivots.size();
}

/** Basis of {x : m x = 0}, one vector per free column. */
template <typename T>
std::vector<Vector<T>> nullspace(const Matrix<T>& m, double tol = kDefaultTol)
{
    auto e = rref(m, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector<T>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free)
    {
        if (is_pivot[free])
            continue;
        Vector<T> v(m.cols(), T(0));
        v[free] = T(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/** Some solution of a x = b, if one exists. */
template <typename T>
std::optional<Vector<T>> solve(const Matrix<T>& a, const Vector<T>& b, double tol = kDefaultTol)
{
    if (a.rows() != b.size())
        fail(ErrorKind::DimensionMismatch, "solve: right-hand side length");
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto e = rref(aug, tol);
    Vector<T> x(a.cols(), T(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
    {
        if (e.pivots[i] == a.cols())
            return std::nullopt;
        x[e.pivots[i]] = e.reduced(i, a.cols());
    }
    return x;
}

template <typename T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, double tol = kDefaultTol)
{
    if (!a.is_square())
        fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    auto e = rref(aug, tol);
    if (e.pivots.size() < n)
        return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (e.pivots[i] != i)
            return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

template <typename T>
T determinant(Matrix<T> m)
{
    if (!m.is_square())
        fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    T det(1);
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t piv = n;
        double best = -1.0;
        for (std::size_t i = c; i < n; ++i)
        {
            if constexpr (ScalarTraits<T>::exact)
            {
                if (m(i, c) != 0)
                {
                    piv = i;
                    break;
                }
            }
            else if (ScalarTraits<T>::magnitude(m(i, c)) > best)
            {
                best = ScalarTraits<T>::magnitude(m(i, c));
                piv = i;
            }
        }
        if (piv == n || m(piv, c) == T(0))
            return T(0);
        if (piv != c)
        {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(c, j), m(piv, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i)
        {
            T f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

template <typename T>
Matrix<T> power(const Matrix<T>& m, std::size_t k)
{
    Matrix<T> out = Matrix<T>::identity(m.rows());
    for (std::size_t i = 0; i < k; ++i)
        out = out * m;
    return out;
}

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b)
{
    return a * b - b * a;
}

inline bool is_nilpotent(const RMatrix& n)
{
    if (!n.is_square())
        return false;
    return power(n, n.rows()).is_zero();
}

/** Smallest k with n^k = 0 (n assumed nilpotent); 0 for the empty matrix. */
inline std::size_t nilpotency_index(const RMatrix& n)
{
    RMatrix p = RMatrix::identity(n.rows());
    for (std::size_t k = 0; k <= n.rows(); ++k)
    {
        if (p.is_zero())
            return k;
        p = p * n;
    }
    fail(ErrorKind::NotNilpotent, "matrix is not nilpotent");
}

/** exp(n) as the finite series sum n^k / k!, exact. */
inline RMatrix exp_nilpotent(const RMatrix& n)
{
    if (!is_nilpotent(n))
        fail(ErrorKind::NotNilpotent, "exp requires a nilpotent matrix");
    RMatrix sum = RMatrix::identity(n.rows());
    RMatrix term = RMatrix::identity(n.rows());
    for (std::size_t k = 1; k < n.rows(); ++k)
    {
        term = term * n;
        term *= Rational(1, static_cast<long>(k));
        if (term.is_zero())
            break;
        sum += term;
    }
    return sum;
}

inline bool is_unipotent(const RMatrix& g)
{
    return g.is_square() && is_nilpotent(g - RMatrix::identity(g.rows()));
}

/** log(g) = sum (-1)^{k+1} (g - 1)^k / k for unipotent g, exact. */
inline RMatrix log_unipotent(const RMatrix& g)
{
    if (!is_unipotent(g))
        fail(ErrorKind::NotUnipotent, "matrix has no nilpotent logarithm");
    const std::size_t n = g.rows();
    RMatrix x = g - RMatrix::identity(n);
    RMatrix sum = RMatrix::zero(n, n);
    RMatrix term = RMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k)
    {
        term = term * x;
        if (term.is_zero())
            break;
        Rational c(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
        sum += term * c;
    }
    return sum;
}

/**
 * exp of a nilpotent complex matrix: the series terminates, so the only error
 * is rounding; each entry is accumulated with Neumaier compensation.
 */
inline CMatrix exp_nilpotent(const CMatrix& n)
{
    const std::size_t dim = n.rows();
    CMatrix sum = CMatrix::identity(dim);
    CMatrix comp = CMatrix::zero(dim, dim);
    CMatrix term = CMatrix::identity(dim);
    auto add_compensated = [](double& s, double& c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    };
    for (std::size_t k = 1; k < std::max<std::size_t>(dim, 1); ++k)
    {
        term = term * n;
        term *= Complex(1.0 / static_cast<double>(k), 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
            {
                double sr = sum(i, j).real(), si = sum(i, j).imag();
                double cr = comp(i, j).real(), ci = comp(i, j).imag();
                add_compensated(sr, cr, term(i, j).real());
                add_compensated(si, ci, term(i, j).imag());
                sum(i, j) = Complex(sr, si);
                comp(i, j) = Complex(cr, ci);
            }
    }
    return sum + comp;
}

template <typename T>
std::string to_string(const Matrix<T>& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
        {
            if constexpr (ScalarTraits<T>::exact)
                os << (j ? " " : "") << m(i, j).str();
            else
                os << (j ? " " : "") << m(i, j);
        }
    }
    os << "]";
    return os.str();
}

}   // namespace hodge

#endif
