/**
 * The monoid Γ(σ), its dual with Hilbert basis, points of toric_σ, the face
 * σ(q), the z-lift and the e-map.
 *
 * Everything is expressed in coordinates on the lattice L = log Γ(σ)^gp:
 * a Z-basis l_1..l_r of L is fixed by Hermite reduction, cone elements are
 * vectors in Q^r, and dual elements are integral functionals on Z^r. A
 * toric point stores one complex value per dual Hilbert basis element.
 */

#ifndef HODGE_TORIC_HPP
#define HODGE_TORIC_HPP

#include <cmath>
#include <optional>
#include <vector>
#include "cone.hpp"

namespace hodge {

class FsMonoid
{
    private:
        std::size_t rank_ = 0;
        std::size_t matrix_size_ = 0;               // 0 for an abstract monoid
        std::vector<RVector> lattice_basis_;        // flattened matrices l_1..l_r
        PolyhedralCone cone_;                       // in Q^r
        std::vector<RVector> hilbert_;

    public:
        FsMonoid() = default;

        /** Saturated monoid of the cone on the given rays in Z^rank. */
        static FsMonoid from_rays(std::size_t rank, const std::vector<RVector>& rays)
        {
            FsMonoid m;
            m.rank_ = rank;
            m.cone_ = PolyhedralCone(rank, rays);
            if (!m.cone_.is_pointed())
                fail(ErrorKind::NotSharp, "monoid cone contains a line");
            if (m.cone_.dim() != rank)
                fail(ErrorKind::InvalidInput, "monoid cone does not span its lattice");
            m.hilbert_ = hodge::hilbert_basis(rank, m.cone_.rays(), m.cone_.facets());
            return m;
        }

        friend FsMonoid monoid_from_cone(const NilpotentCone& sigma, const std::vector<RMatrix>& gamma_generators);

        std::size_t rank() const noexcept { return rank_; }
        std::size_t matrix_size() const noexcept { return matrix_size_; }
        const std::vector<RVector>& lattice_basis() const noexcept { return lattice_basis_; }
        const PolyhedralCone& cone() const noexcept { return cone_; }
        const std::vector<RVector>& hilbert_basis() const noexcept { return hilbert_; }
        bool is_sharp() const noexcept { return cone_.is_pointed(); }

        /** The matrix with lattice coordinates c. */
        RMatrix to_matrix(const RVector& c) const
        {
            RMatrix out(matrix_size_, matrix_size_);
            for (std::size_t i = 0; i < rank_; ++i)
                out += RMatrix::from_flat(matrix_size_, matrix_size_, lattice_basis_[i]) * c[i];
            return out;
        }

        CMatrix to_matrix(const CVector& c) const
        {
            CMatrix out(matrix_size_, matrix_size_);
            for (std::size_t i = 0; i < rank_; ++i)
                out += to_complex(RMatrix::from_flat(matrix_size_, matrix_size_, lattice_basis_[i])) * c[i];
            return out;
        }

        /** Lattice coordinates of a matrix in the real span of L. */
        std::optional<RVector> coordinates(const RMatrix& x) const
        {
            if (rank_ == 0)
                return x.is_zero() ? std::optional<RVector>(RVector{}) : std::nullopt;
            return solve(RMatrix::from_columns(lattice_basis_, matrix_size_ * matrix_size_), x.flat());
        }

        std::optional<CVector> coordinates(const CMatrix& x, double tol = kDefaultTol) const
        {
            if (rank_ == 0)
                return x.is_zero(tol) ? std::optional<CVector>(CVector{}) : std::nullopt;
            std::vector<CVector> cols;
            for (const auto& l : lattice_basis_)
                cols.push_back(to_complex(l));
            auto c = solve(CMatrix::from_columns(cols, matrix_size_ * matrix_size_), x.flat(), tol);
            if (!c)
                return std::nullopt;
            CVector residual = CMatrix::from_columns(cols, matrix_size_ * matrix_size_) * *c;
            for (std::size_t i = 0; i < residual.size(); ++i)
                if (std::abs(residual[i] - x.flat()[i]) > tol * std::max(1.0, x.max_abs()))
                    return std::nullopt;
            return c;
        }
};

/** Γ(σ) from generators: the Hilbert basis of σ ∩ log Γ(σ)^gp. */
inline FsMonoid monoid_from_cone(const NilpotentCone& sigma, const std::vector<RMatrix>& gamma_generators)
{
    if (!check_strong_compatibility(sigma, gamma_generators))
        fail(ErrorKind::NotStronglyCompatible, "Γ(σ) generators do not span σ");
    const std::size_t n = sigma.matrix_size();
    std::vector<RVector> logs;
    for (const auto& g : gamma_generators)
        logs.push_back(log_unipotent(g).flat());
    for (const auto& l : logs)
        if (!is_integral(l))
            fail(ErrorKind::InvalidInput, "logarithm of a Γ(σ) generator is not integral");
    FsMonoid m;
    m.matrix_size_ = n;
    m.lattice_basis_ = lattice_basis(logs, n * n);
    m.rank_ = m.lattice_basis_.size();
    std::vector<RVector> rays;
    for (const auto& r : sigma.rays())
        rays.push_back(primitive(*m.coordinates(r)));
    m.cone_ = PolyhedralCone(m.rank_, rays);
    m.hilbert_ = hodge::hilbert_basis(m.rank_, m.cone_.rays(), m.cone_.facets());
    return m;
}

struct DualMonoid
{
    std::size_t rank = 0;
    PolyhedralCone cone;                // the dual cone in Q^r
    std::vector<RVector> basis;         // Hilbert basis, sorted
};

inline DualMonoid dual_hilbert_basis(const FsMonoid& p)
{
    DualMonoid d;
    d.rank = p.rank();
    if (d.rank == 0)
        return d;
    d.cone = PolyhedralCone(d.rank, p.cone().facets());
    d.basis = hilbert_basis(d.rank, d.cone.rays(), d.cone.facets());
    return d;
}

struct ToricPoint
{
    std::vector<Complex> values;        // one per dual Hilbert basis element
    bool absolute = false;              // a point of |toric|: non-negative reals
};

struct ZLift
{
    CVector zeta;                       // lattice coordinates of z
    CMatrix z;                          // z as a matrix (empty for abstract monoids)
    std::vector<double> y;              // Im zeta
    PolyhedralCone face;                // σ(q) in lattice coordinates
    std::vector<std::size_t> s_prime;   // dual basis indices with nonzero value
    std::vector<RVector> sgp_basis;     // Z-basis of (S')^gp used for the lift
    std::vector<Complex> normal_form;   // w_j with Re w_j in [0, 1)
};

/** A cone together with Γ(σ) and its dual; the chart toric_σ. */
class ConeChart
{
    private:
        std::optional<NilpotentCone> sigma_;
        FsMonoid monoid_;
        DualMonoid dual_;

        /** Indices with q(f) != 0; zero is exact since values near the boundary are tiny but honest. */
        static std::vector<std::size_t> support(const std::vector<Complex>& values)
        {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (values[i] != Complex(0.0, 0.0))
                    s.push_back(i);
            return s;
        }

        /** Value of q on sum_i a_i f_{s_i} for integral a (negative entries allowed on S'). */
        static Complex evaluate(const std::vector<Complex>& values, const std::vector<std::size_t>& s, const RVector& a)
        {
            Complex out(1.0, 0.0);
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                long e = boost::multiprecision::numerator(a[i]).convert_to<long>();
                Complex base = e < 0 ? 1.0 / values[s[i]] : values[s[i]];
                for (unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e); k > 0; k >>= 1)
                {
                    if (k & 1)
                        out *= base;
                    base *= base;
                }
            }
            return out;
        }

    public:
        ConeChart() = default;

        ConeChart(const NilpotentCone& sigma, const std::vector<RMatrix>& gamma_generators)
            : sigma_(sigma), monoid_(monoid_from_cone(sigma, gamma_generators)), dual_(dual_hilbert_basis(monoid_))
        {
        }

        static ConeChart abstract(std::size_t rank, const std::vector<RVector>& rays)
        {
            ConeChart c;
            c.monoid_ = FsMonoid::from_rays(rank, rays);
            c.dual_ = dual_hilbert_basis(c.monoid_);
            return c;
        }

        const FsMonoid& monoid() const noexcept { return monoid_; }
        const DualMonoid& dual() const noexcept { return dual_; }
        const std::optional<NilpotentCone>& cone() const noexcept { return sigma_; }
        std::size_t rank() const noexcept { return monoid_.rank(); }

        /** σ(q) in lattice coordinates: the rays annihilated by every f with q(f) ≠ 0. */
        PolyhedralCone face_for_support(const std::vector<std::size_t>& s) const
        {
            std::vector<RVector> rays;
            for (const auto& r : monoid_.cone().rays())
            {
                bool killed = true;
                for (auto i : s)
                    if (dot(dual_.basis[i], r) != 0)
                        killed = false;
                if (killed)
                    rays.push_back(r);
            }
            return PolyhedralCone(rank(), rays);
        }

        /**
         * Validates values as a monoid homomorphism to C^mult: the support must
         * be the dual face of σ(q), and q must respect every integer relation
         * among the supported basis elements.
         */
        ToricPoint point(const std::vector<Complex>& values, bool absolute = false, double tol = kDefaultTol) const
        {
            if (values.size() != dual_.basis.size())
                fail(ErrorKind::InvalidPoint, "toric point has " + std::to_string(values.size()) + " values, expected " +
                                                  std::to_string(dual_.basis.size()));
            for (const auto& v : values)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    fail(ErrorKind::InvalidPoint, "toric point value is not finite");
            if (absolute)
                for (const auto& v : values)
                    if (std::abs(v.imag()) > tol || v.real() < -tol)
                        fail(ErrorKind::NotAbsolutePoint, "absolute toric point has a value outside R_{>=0}");
            auto s = support(values);
            auto face = face_for_support(s);
            for (std::size_t i = 0; i < dual_.basis.size(); ++i)
            {
                bool on_face = true;
                for (const auto& r : face.generators())
                    if (dot(dual_.basis[i], r) != 0)
                        on_face = false;
                bool in_s = std::find(s.begin(), s.end(), i) != s.end();
                if (on_face != in_s)
                    fail(ErrorKind::InvalidPoint, "support of the point is not a face of the dual monoid");
            }
            std::vector<RVector> fs;
            for (auto i : s)
                fs.push_back(dual_.basis[i]);
            for (const auto& a : integer_relations(fs, rank()))
            {
                Complex v = evaluate(values, s, a);
                double weight = 1.0;
                for (const auto& x : a)
                    weight += std::abs(x.convert_to<double>());
                if (std::abs(v - 1.0) > tol * weight)
                    fail(ErrorKind::InvalidPoint, "toric point violates a monoid relation");
            }
            return ToricPoint{values, absolute};
        }

        PolyhedralCone face_of_point(const ToricPoint& q) const
        {
            return face_for_support(support(q.values));
        }

        /** σ(q) as a face of the nilpotent cone. */
        NilpotentCone nilpotent_face(const ToricPoint& q) const
        {
            if (!sigma_)
                fail(ErrorKind::InvalidInput, "abstract chart has no nilpotent cone");
            std::vector<RMatrix> gens;
            const auto face = face_of_point(q);
            for (const auto& r : face.generators())
                gens.push_back(monoid_.to_matrix(r));
            return NilpotentCone(sigma_->matrix_size(), gens);
        }

        /**
         * z with e(z) = q on (S')^gp: principal logarithms (argument in
         * [0, 2π)) on the Hermite basis b_j of (S')^gp give w_j, and z is the
         * minimum-norm solution of b_j(z) = w_j.
         */
        ZLift z_lift(const ToricPoint& q) const
        {
            ZLift out;
            const std::size_t r = rank();
            out.s_prime = support(q.values);
            out.face = face_for_support(out.s_prime);
            out.zeta.assign(r, Complex(0.0, 0.0));
            std::vector<RVector> fs;
            for (auto i : out.s_prime)
                fs.push_back(dual_.basis[i]);
            auto h = hermite(fs, r);
            out.sgp_basis = h.basis();
            const std::size_t s = out.sgp_basis.size();
            if (s > 0)
            {
                for (std::size_t j = 0; j < s; ++j)
                {
                    Complex v = evaluate(q.values, out.s_prime, to_rational_vector(h.u[j]));
                    out.normal_form.push_back(principal_log(v) / Complex(0.0, 2.0 * kPi));
                }
                RMatrix b = RMatrix::from_rows(out.sgp_basis, r);
                RMatrix gram_inv = *inverse(RMatrix(b * b.transpose()));
                CMatrix pseudo = to_complex(RMatrix(b.transpose() * gram_inv));
                out.zeta = pseudo * CVector(out.normal_form.begin(), out.normal_form.end());
            }
            out.y.clear();
            for (const auto& c : out.zeta)
                out.y.push_back(c.imag());
            if (sigma_)
                out.z = monoid_.to_matrix(out.zeta);
            return out;
        }

        /** f ↦ exp(2πi f(ζ)) on the dual Hilbert basis. */
        ToricPoint e_map(const CVector& zeta) const
        {
            if (zeta.size() != rank())
                fail(ErrorKind::DimensionMismatch, "e_map: coordinate vector has the wrong length");
            ToricPoint q;
            for (const auto& f : dual_.basis)
            {
                Complex t(0.0, 0.0);
                for (std::size_t i = 0; i < zeta.size(); ++i)
                    t += to_complex(f[i]) * zeta[i];
                q.values.push_back(std::exp(Complex(0.0, 2.0 * kPi) * t));
            }
            return q;
        }

        ToricPoint e_map(const CMatrix& z, double tol = kDefaultTol) const
        {
            auto c = monoid_.coordinates(z, tol);
            if (!c)
                fail(ErrorKind::InvalidInput, "e_map: matrix is not in σ_C");
            return e_map(*c);
        }
};

}   // namespace hodge

#endif
