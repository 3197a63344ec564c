/**
 * Nilpotent orbits and i-orbits, membership in E_σ and E_σ^♯, the maps φ and
 * φ^♯, equivalence of orbit points, the log-point correspondence and
 * numeric boundary-limit traces.
 *
 * Condition (3) of a nilpotent orbit asks for exp(Σ i y_j N_j)F ∈ D once all
 * y_j are large. It is searched on the doubling grid y_j ∈ {1, 2, 4, ...,
 * y_cap}: the full product grid when it has at most kMaxJointProbes points,
 * otherwise the diagonal plus every axis line with the other coordinates at
 * y_cap. The witness is the least grid value c such that every probe with
 * min_j y_j >= c lands in D.
 */

#ifndef HODGE_ORBIT_HPP
#define HODGE_ORBIT_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>
#include "fan.hpp"
#include "toric.hpp"

namespace hodge {

inline constexpr std::size_t kMaxJointProbes = 4096;

enum class OrbitFlavor { Full, I };
enum class OrbitStatus { Ok, Failed, Exhausted, NotInCheckDomain };

inline const char* to_string(OrbitStatus s)
{
    switch (s)
    {
        case OrbitStatus::Ok: return "ok";
        case OrbitStatus::Failed: return "failed";
        case OrbitStatus::Exhausted: return "exhausted";
        case OrbitStatus::NotInCheckDomain: return "not_in_check_domain";
    }
    return "unknown";
}

inline const char* to_string(OrbitFlavor f) { return f == OrbitFlavor::Full ? "orbit" : "i-orbit"; }

struct OrbitSettings
{
    double y_cap = 1048576.0;
    double tol = kDefaultTol;
};

struct Probe
{
    std::vector<double> y;
    bool in_d = false;
};

struct OrbitCheck
{
    OrbitStatus status = OrbitStatus::Ok;
    std::optional<int> failed_condition;
    std::optional<std::vector<double>> witness_threshold;
    std::vector<Probe> probe_log;
    std::string detail;

    bool ok() const noexcept { return status == OrbitStatus::Ok; }
};

/** Doubling grid 1, 2, 4, ..., up to and including y_cap (rounded down to a power of 2). */
inline std::vector<double> doubling_grid(double y_cap)
{
    if (!(y_cap >= 1.0))
        fail(ErrorKind::InvalidInput, "y_cap must be at least 1");
    std::vector<double> out;
    for (double y = 1.0; y <= y_cap; y *= 2.0)
        out.push_back(y);
    return out;
}

/** exp(Σ c_j N_j) for complex coefficients. */
inline CMatrix exp_combination(const std::vector<RMatrix>& ns, const std::vector<Complex>& c, std::size_t n)
{
    CMatrix x(n, n);
    for (std::size_t j = 0; j < ns.size(); ++j)
        x += to_complex(ns[j]) * c[j];
    return exp_nilpotent(x);
}

/** N F^p ⊆ F^{p-1} for every p. */
inline bool is_horizontal(const RMatrix& n, const DecreasingFiltration& f, double tol)
{
    if (f.jumps().empty())
        return true;
    CMatrix nc = to_complex(n);
    auto [lo, hi] = f.range();
    for (int p = lo; p <= hi + 1; ++p)
        if (!f.at(p - 1).contains(image(nc, f.at(p), tol), tol))
            return false;
    return true;
}

inline OrbitCheck check_nilpotent_orbit(const NilpotentCone& sigma, const DecreasingFiltration& f, const HodgeData& lambda,
                                        const OrbitSettings& settings = {})
{
    OrbitCheck out;
    if (sigma.matrix_size() != f.ambient_dim() || f.ambient_dim() != lambda.rank)
        fail(ErrorKind::DimensionMismatch, "cone, filtration and Λ disagree on the rank");
    if (!in_check_domain(f, lambda, settings.tol))
    {
        out.status = OrbitStatus::NotInCheckDomain;
        out.detail = "F is not in the compact dual";
        return out;
    }
    const auto rays = sigma.rays();
    for (const auto& n : rays)
        if (!is_horizontal(n, f, settings.tol))
        {
            out.status = OrbitStatus::Failed;
            out.failed_condition = 2;
            out.detail = "N F^p is not contained in F^{p-1}";
            return out;
        }

    const std::size_t n = f.ambient_dim();
    auto probe = [&](const std::vector<double>& y) {
        std::vector<Complex> c;
        for (double v : y)
            c.emplace_back(0.0, v);
        bool ok = in_D(f.transform(exp_combination(rays, c, n), settings.tol), lambda, settings.tol);
        out.probe_log.push_back({y, ok});
        return ok;
    };

    if (rays.empty())
    {
        if (probe({}))
            out.witness_threshold = std::vector<double>{};
        else
        {
            out.status = OrbitStatus::Failed;
            out.failed_condition = 3;
            out.detail = "F is not in D";
        }
        return out;
    }

    const auto grid = doubling_grid(settings.y_cap);
    const std::size_t dim = rays.size();
    double joint = 1.0;
    for (std::size_t j = 0; j < dim; ++j)
        joint *= static_cast<double>(grid.size());
    std::vector<std::vector<double>> points;
    if (joint <= static_cast<double>(kMaxJointProbes))
    {
        std::vector<std::size_t> idx(dim, 0);
        while (true)
        {
            std::vector<double> y;
            for (auto i : idx)
                y.push_back(grid[i]);
            points.push_back(std::move(y));
            std::size_t k = dim;
            while (k > 0 && idx[k - 1] + 1 == grid.size())
                idx[--k] = 0;
            if (k == 0)
                break;
            ++idx[k - 1];
        }
    }
    else
    {
        for (double v : grid)
            points.emplace_back(dim, v);
        for (std::size_t j = 0; j < dim; ++j)
            for (double v : grid)
            {
                std::vector<double> y(dim, grid.back());
                y[j] = v;
                if (v != grid.back())
                    points.push_back(std::move(y));
            }
        std::sort(points.begin(), points.end());
    }
    for (const auto& y : points)
        probe(y);

    for (double c : grid)
    {
        bool all = true;
        for (const auto& p : out.probe_log)
            if (*std::min_element(p.y.begin(), p.y.end()) >= c && !p.in_d)
                all = false;
        if (all)
        {
            out.witness_threshold = std::vector<double>(dim, c);
            return out;
        }
    }
    out.status = OrbitStatus::Exhausted;
    out.detail = "no grid threshold up to y_cap puts every probe in D";
    return out;
}

struct OrbitPoint
{
    NilpotentCone cone;
    DecreasingFiltration representative;
    OrbitFlavor flavor = OrbitFlavor::Full;
    /** Chart normal form of z when the point came from φ; decides equality within one chart. */
    std::optional<std::vector<Complex>> normal_form;
};

struct ChartPoint
{
    ToricPoint q;
    DecreasingFiltration f;
};

struct ChartCheck
{
    bool member = false;
    NilpotentCone face;
    ZLift lift;
    OrbitCheck orbit;
};

inline ChartCheck check_E_sigma(const ConeChart& chart, const ChartPoint& p, const HodgeData& lambda,
                                const OrbitSettings& settings = {})
{
    ChartCheck out;
    out.face = chart.nilpotent_face(p.q);
    out.lift = chart.z_lift(p.q);
    auto moved = p.f.transform(exp_nilpotent(out.lift.z), settings.tol);
    out.orbit = check_nilpotent_orbit(out.face, moved, lambda, settings);
    out.member = out.orbit.ok();
    return out;
}

inline bool in_E_sigma(const ConeChart& chart, const ChartPoint& p, const HodgeData& lambda, const OrbitSettings& settings = {})
{
    return check_E_sigma(chart, p, lambda, settings).member;
}

namespace detail {

inline void require_absolute(const ToricPoint& q, double tol)
{
    for (const auto& v : q.values)
        if (std::abs(v.imag()) > tol || v.real() < -tol)
            fail(ErrorKind::NotAbsolutePoint, "point of |toric| needs non-negative real values");
}

/** exp(iy) for the imaginary part y of the z-lift. */
inline CMatrix exp_iy(const ConeChart& chart, const ZLift& lift)
{
    CVector iy;
    for (const auto& v : lift.y)
        iy.emplace_back(0.0, v);
    return exp_nilpotent(chart.monoid().to_matrix(iy));
}

}   // namespace detail

inline ChartCheck check_E_sigma_sharp(const ConeChart& chart, const ChartPoint& p, const HodgeData& lambda,
                                      const OrbitSettings& settings = {})
{
    detail::require_absolute(p.q, settings.tol);
    ChartCheck out;
    out.face = chart.nilpotent_face(p.q);
    out.lift = chart.z_lift(p.q);
    auto moved = p.f.transform(detail::exp_iy(chart, out.lift), settings.tol);
    out.orbit = check_nilpotent_orbit(out.face, moved, lambda, settings);
    out.member = out.orbit.ok();
    return out;
}

inline bool in_E_sigma_sharp(const ConeChart& chart, const ChartPoint& p, const HodgeData& lambda,
                             const OrbitSettings& settings = {})
{
    return check_E_sigma_sharp(chart, p, lambda, settings).member;
}

inline OrbitPoint phi(const ConeChart& chart, const ChartPoint& p, const HodgeData& lambda, const OrbitSettings& settings = {})
{
    auto c = check_E_sigma(chart, p, lambda, settings);
    if (!c.member)
        fail(ErrorKind::NotInESigma, "point is not in E_σ (" + std::string(to_string(c.orbit.status)) + ")");
    return OrbitPoint{c.face, p.f.transform(exp_nilpotent(c.lift.z), settings.tol), OrbitFlavor::Full, c.lift.normal_form};
}

inline OrbitPoint phi_sharp(const ConeChart& chart, const ChartPoint& p, const HodgeData& lambda,
                            const OrbitSettings& settings = {})
{
    auto c = check_E_sigma_sharp(chart, p, lambda, settings);
    if (!c.member)
        fail(ErrorKind::NotInESigmaSharp, "point is not in E_σ^♯ (" + std::string(to_string(c.orbit.status)) + ")");
    return OrbitPoint{c.face, p.f.transform(detail::exp_iy(chart, c.lift), settings.tol), OrbitFlavor::I, std::nullopt};
}

namespace detail {

/**
 * Whether G = exp(Σ p_k M_k) maps every step of a onto the matching step of
 * b for some real p, by damped Gauss-Newton from p = 0. The M_k commute, so
 * the derivative of exp along M_k is M_k exp.
 */
inline bool moves_onto(const std::vector<CMatrix>& ms, const DecreasingFiltration& a, const DecreasingFiltration& b,
                       double tol)
{
    if (a.equals(b, tol))
        return true;
    if (a.jumps().size() != b.jumps().size())
        return false;
    for (auto ia = a.jumps().begin(), ib = b.jumps().begin(); ia != a.jumps().end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second.dim() != ib->second.dim())
            return false;
    if (ms.empty())
        return false;
    const std::size_t n = a.ambient_dim();
    std::vector<std::pair<CMatrix, CMatrix>> blocks;   // (basis of a^p, orthonormal complement of b^p)
    for (auto ia = a.jumps().begin(), ib = b.jumps().begin(); ia != a.jumps().end(); ++ia, ++ib)
    {
        auto perp = complement(ib->second, tol);
        if (perp.dim() == 0)
            continue;
        blocks.emplace_back(ia->second.basis_matrix(), perp.basis_matrix().conjugate().transpose());
    }
    const std::size_t m = ms.size();
    std::vector<double> p(m, 0.0);
    auto residual_and_jacobian = [&](std::vector<double>& r, std::vector<std::vector<double>>& jac) {
        CMatrix x(n, n);
        for (std::size_t k = 0; k < m; ++k)
            x += ms[k] * Complex(p[k], 0.0);
        CMatrix g = exp_nilpotent(x);
        r.clear();
        jac.assign(m, {});
        for (const auto& [v, q] : blocks)
        {
            CMatrix res = q * (g * v);
            for (const auto& z : res.flat())
            {
                r.push_back(z.real());
                r.push_back(z.imag());
            }
            for (std::size_t k = 0; k < m; ++k)
            {
                CMatrix d = q * (ms[k] * (g * v));
                for (const auto& z : d.flat())
                {
                    jac[k].push_back(z.real());
                    jac[k].push_back(z.imag());
                }
            }
        }
    };
    std::vector<double> r;
    std::vector<std::vector<double>> jac;
    for (int iter = 0; iter < 100; ++iter)
    {
        residual_and_jacobian(r, jac);
        double norm_r = 0.0;
        for (double v : r)
            norm_r = std::max(norm_r, std::abs(v));
        if (norm_r <= tol)
            return true;
        CMatrix normal(m, m);
        CVector rhs(m, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < m; ++i)
        {
            for (std::size_t k = 0; k < m; ++k)
            {
                double s = 0.0;
                for (std::size_t t = 0; t < r.size(); ++t)
                    s += jac[i][t] * jac[k][t];
                normal(i, k) = s;
            }
            double s = 0.0;
            for (std::size_t t = 0; t < r.size(); ++t)
                s -= jac[i][t] * r[t];
            rhs[i] = s;
        }
        for (std::size_t i = 0; i < m; ++i)
            normal(i, i) += 1e-14 * (1.0 + std::abs(normal(i, i)));
        auto step = solve(normal, rhs, 1e-15);
        if (!step)
            return false;
        double size = 0.0;
        for (std::size_t k = 0; k < m; ++k)
        {
            p[k] += (*step)[k].real();
            size = std::max(size, std::abs((*step)[k].real()));
        }
        if (size < 1e-15)
            break;
    }
    residual_and_jacobian(r, jac);
    double norm_r = 0.0;
    for (double v : r)
        norm_r = std::max(norm_r, std::abs(v));
    return norm_r <= tol;
}

}   // namespace detail

/**
 * Equality of orbit points up to exp(σ_C) (or exp(iσ_R) for i-orbits) and,
 * when lattice generators are supplied, up to exp(ℓ) for ℓ in their Z-span
 * with coefficients bounded by shift_radius.
 */
inline bool orbits_equivalent(const OrbitPoint& a, const OrbitPoint& b, const std::vector<RMatrix>& lattice = {},
                              int shift_radius = 3, double tol = 1e-8)
{
    if (a.flavor != b.flavor || a.cone != b.cone)
        return false;
    const std::size_t n = a.representative.ambient_dim();
    std::vector<CMatrix> ms;
    for (const auto& r : a.cone.rays())
    {
        if (a.flavor == OrbitFlavor::Full)
            ms.push_back(to_complex(r));
        ms.push_back(to_complex(r) * Complex(0.0, 1.0));
    }
    std::vector<long> coeff(lattice.size(), -shift_radius);
    while (true)
    {
        RMatrix l(n, n);
        for (std::size_t i = 0; i < lattice.size(); ++i)
            l += lattice[i] * Rational(coeff[i]);
        auto shifted = a.representative.transform(to_complex(exp_nilpotent(l)));
        if (detail::moves_onto(ms, shifted, b.representative, tol))
            return true;
        std::size_t k = 0;
        while (k < coeff.size() && coeff[k] == shift_radius)
            coeff[k++] = -shift_radius;
        if (k == coeff.size())
            return false;
        ++coeff[k];
    }
}

struct LogPointData
{
    std::vector<RMatrix> monodromy;
    DecreasingFiltration filtration;
};

inline OrbitPoint orbit_from_log_point(const LogPointData& d, const Fan& fan, const HodgeData& lambda,
                                       const OrbitSettings& settings = {})
{
    std::vector<RMatrix> logs;
    for (const auto& g : d.monodromy)
        logs.push_back(log_unipotent(g));
    for (std::size_t i = 0; i < logs.size(); ++i)
        for (std::size_t j = i + 1; j < logs.size(); ++j)
            if (!commutator(logs[i], logs[j]).is_zero())
                fail(ErrorKind::NotCommuting, "monodromy logarithms do not commute");
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
    {
        const auto& c = fan.cones[i];
        if (c.matrix_size() != d.filtration.ambient_dim())
            continue;
        bool all = std::all_of(logs.begin(), logs.end(), [&](const RMatrix& l) { return c.contains(l); });
        if (all && (!best || c.dim() < fan.cones[*best].dim()))
            best = i;
    }
    if (!best)
        fail(ErrorKind::NoConeContains, "no cone of the fan contains every monodromy logarithm");
    const auto& sigma = fan.cones[*best];
    auto check = check_nilpotent_orbit(sigma, d.filtration, lambda, settings);
    if (!check.ok())
        fail(ErrorKind::OrbitCheckFailed, std::string("nilpotent orbit check ") + to_string(check.status));
    return OrbitPoint{sigma, d.filtration, OrbitFlavor::Full, std::nullopt};
}

/** Monodromy exp(h) for the Hilbert basis h of Γ(σ); the identity alone for σ = {0}. */
inline LogPointData log_point_from_orbit(const OrbitPoint& o, const std::vector<RMatrix>& gamma_generators)
{
    LogPointData d;
    d.filtration = o.representative;
    const std::size_t n = o.representative.ambient_dim();
    if (o.cone.is_zero())
    {
        d.monodromy.push_back(RMatrix::identity(n));
        return d;
    }
    auto monoid = monoid_from_cone(o.cone, gamma_generators);
    for (const auto& h : monoid.hilbert_basis())
        d.monodromy.push_back(exp_nilpotent(monoid.to_matrix(h)));
    return d;
}

struct TracePoint
{
    double y = 0.0;
    ChartPoint point;
    double distance = 0.0;      // max_f |q(f)|: distance to the q = 0 stratum
};

/**
 * Images of exp(Σ i y d_j N_j)F in the chart for each y, N_j the extreme
 * rays of σ. The chart point is (e(Σ i y d_j N_j), F).
 */
inline std::vector<TracePoint> boundary_limit_trace(const ConeChart& chart, const DecreasingFiltration& f,
                                                    const HodgeData& lambda, const std::vector<double>& directions,
                                                    const std::vector<double>& ys, const OrbitSettings& settings = {})
{
    if (!chart.cone())
        fail(ErrorKind::InvalidInput, "limit trace needs a nilpotent cone");
    const auto& sigma = *chart.cone();
    const auto rays = sigma.rays();
    if (directions.size() != rays.size())
        fail(ErrorKind::DimensionMismatch, "one direction per extreme ray is required");
    auto check = check_nilpotent_orbit(sigma, f, lambda, settings);
    if (!check.ok())
        fail(ErrorKind::OrbitCheckFailed, std::string("not a nilpotent i-orbit: ") + to_string(check.status));
    std::vector<TracePoint> out;
    for (double y : ys)
    {
        CMatrix x(sigma.matrix_size(), sigma.matrix_size());
        for (std::size_t j = 0; j < rays.size(); ++j)
            x += to_complex(rays[j]) * Complex(0.0, y * directions[j]);
        TracePoint t;
        t.y = y;
        t.point.q = chart.e_map(x, settings.tol);
        t.point.f = f;
        for (const auto& v : t.point.q.values)
            t.distance = std::max(t.distance, std::abs(v));
        out.push_back(std::move(t));
    }
    return out;
}

}   // namespace hodge

#endif
