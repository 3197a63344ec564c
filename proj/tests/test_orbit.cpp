#include <gtest/gtest.h>
#include <cmath>
#include "hodge/fixtures.hpp"
#include "hodge/orbit.hpp"
#include "generators.hpp"

using namespace hodge;

namespace {

RMatrix rm(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<RVector> out;
    for (const auto& r : rows)
    {
        RVector v;
        for (long x : r)
            v.emplace_back(x);
        out.push_back(v);
    }
    return RMatrix::from_rows(out);
}

RMatrix unit(std::size_t n, std::size_t i, std::size_t j)
{
    RMatrix m(n, n);
    m(i, j) = 1;
    return m;
}

template <class E>
ErrorKind kind_of(E&& f)
{
    try
    {
        f();
    }
    catch (const HodgeError& e)
    {
        return e.kind();
    }
    return ErrorKind::Internal;
}

const RMatrix kN = rm({{0, 1}, {0, 0}});
const Complex kTwoPiI(0.0, 2.0 * kPi);

NilpotentCone ray() { return NilpotentCone(2, {kN}); }

ConeChart elliptic_chart()
{
    return ConeChart(ray(), {rm({{1, 1}, {0, 1}})});
}

ToricPoint q_of(const ConeChart& chart, Complex tau)
{
    return chart.point({std::exp(kTwoPiI * tau)});
}

/** Weight-1 rank-4 data with <x, y> = x^T [[0, I], [-I, 0]] y. */
HodgeData abelian_surface()
{
    HodgeData d;
    d.rank = 4;
    d.weight = IncreasingFiltration::pure(4, 1);
    d.pairings[1] = rm({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
    d.hodge_numbers[{1, 0, 1}] = 2;
    d.hodge_numbers[{0, 1, 1}] = 2;
    return d;
}

/** F^1 spanned by the columns of [Z; I]; exp(N_S) translates Z by S. */
DecreasingFiltration siegel(Complex z11, Complex z12, Complex z22)
{
    return DecreasingFiltration::from_steps(
        4, {{0, CSubspace::full(4)}, {1, CSubspace::span(4, {{z11, z12, 1.0, 0.0}, {z12, z22, 0.0, 1.0}})}});
}

/** Im Z + diag(y) positive definite: the independent membership test for the Siegel case. */
bool siegel_positive(Complex z11, Complex z12, Complex z22, double y1, double y2)
{
    double a = z11.imag() + y1, b = z12.imag(), c = z22.imag() + y2;
    return a > 0 && a * c - b * b > 0;
}

NilpotentCone siegel_cone() { return NilpotentCone(4, {unit(4, 0, 2), unit(4, 1, 3)}); }

ConeChart siegel_chart()
{
    return ConeChart(siegel_cone(), {exp_nilpotent(unit(4, 0, 2)), exp_nilpotent(unit(4, 1, 3))});
}

/** Weight-2 rank-3 data, Q = x1 y3 + x3 y1 - x2 y2, h^{2,0} = h^{1,1} = h^{0,2} = 1. */
HodgeData k3_type()
{
    HodgeData d;
    d.rank = 3;
    d.weight = IncreasingFiltration::pure(3, 2);
    d.pairings[2] = rm({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}});
    d.hodge_numbers[{2, 0, 2}] = 1;
    d.hodge_numbers[{1, 1, 2}] = 1;
    d.hodge_numbers[{0, 2, 2}] = 1;
    return d;
}

/** F^2 = span(1, i√2, -1), F^1 its Q-orthogonal complement. */
DecreasingFiltration k3_filtration()
{
    const Complex r(0.0, std::sqrt(2.0));
    return DecreasingFiltration::from_steps(3, {{0, CSubspace::full(3)},
                                                {1, CSubspace::span(3, {{1.0, 0.0, 1.0}, {0.0, 1.0, r}})},
                                                {2, CSubspace::span(3, {{1.0, r, -1.0}})}});
}

}   // namespace

TEST(OrbitCheck, TateWitness)
{
    auto d = elliptic_data();
    auto c = check_nilpotent_orbit(ray(), elliptic_filtration({0.0, -1.0}), d);
    ASSERT_TRUE(c.ok());
    ASSERT_TRUE(c.witness_threshold);
    EXPECT_GT((*c.witness_threshold)[0], 1.0);
    EXPECT_LE((*c.witness_threshold)[0], 2.0);
    // Oracle: exp(iyN)F(-i) = F(i(y - 1)) lies in D exactly when y > 1.
    bool seen = false;
    for (const auto& p : c.probe_log)
    {
        EXPECT_EQ(p.in_d, p.y[0] > 1.0);
        if (seen)
            EXPECT_TRUE(p.in_d);
        seen = seen || p.in_d;
    }
}

TEST(OrbitCheck, ZeroConeIsMembershipInD)
{
    auto d = elliptic_data();
    auto zero = NilpotentCone::zero(2);
    EXPECT_TRUE(check_nilpotent_orbit(zero, elliptic_filtration({0.3, 1.0}), d).ok());
    auto bad = check_nilpotent_orbit(zero, elliptic_filtration({0.3, -1.0}), d);
    EXPECT_EQ(bad.status, OrbitStatus::Failed);
    EXPECT_EQ(bad.failed_condition, 3);
}

TEST(OrbitCheck, HorizontalityFailure)
{
    auto d = k3_type();
    auto f = k3_filtration();
    ASSERT_TRUE(in_D(f, d));
    auto c = check_nilpotent_orbit(NilpotentCone(3, {unit(3, 0, 2)}), f, d);
    EXPECT_EQ(c.status, OrbitStatus::Failed);
    EXPECT_EQ(c.failed_condition, 2);
}

TEST(OrbitCheck, NotInCheckDomain)
{
    auto f = DecreasingFiltration::from_steps(2, {{1, CSubspace::full(2)}});
    EXPECT_EQ(check_nilpotent_orbit(ray(), f, elliptic_data()).status, OrbitStatus::NotInCheckDomain);
}

TEST(OrbitCheck, SiegelPlaneWitness)
{
    auto c = check_nilpotent_orbit(siegel_cone(), siegel({0.0, -1.0}, {0.0, 0.0}, {0.0, -2.0}), abelian_surface());
    ASSERT_TRUE(c.ok());
    EXPECT_EQ(*c.witness_threshold, (std::vector<double>{4.0, 4.0}));
    EXPECT_EQ(c.probe_log.size(), 21u * 21u);
    // Probe coordinates follow the canonical ray order.
    const std::size_t first = siegel_cone().rays()[0] == unit(4, 0, 2) ? 0 : 1;
    for (const auto& p : c.probe_log)
        EXPECT_EQ(p.in_d, siegel_positive({0.0, -1.0}, {0.0, 0.0}, {0.0, -2.0}, p.y[first], p.y[1 - first]));
}

TEST(OrbitCheck, ExhaustedWhenNoThreshold)
{
    OrbitSettings s;
    s.y_cap = 2.0;
    auto c = check_nilpotent_orbit(ray(), elliptic_filtration({0.0, -5.0}), elliptic_data(), s);
    EXPECT_EQ(c.status, OrbitStatus::Exhausted);
}

TEST(OrbitProperty, IndependentOfPointInOrbitAndScaling)
{
    test_support::Gen gen(31);
    auto d = abelian_surface();
    OrbitSettings s;
    s.y_cap = 1024.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        Complex z11 = gen.complex(3.0), z12 = gen.complex(1.0), z22 = gen.complex(3.0);
        Complex w1 = gen.complex(3.0), w2 = gen.complex(3.0);
        auto base = check_nilpotent_orbit(siegel_cone(), siegel(z11, z12, z22), d, s);
        auto moved = check_nilpotent_orbit(siegel_cone(), siegel(z11 + w1, z12, z22 + w2), d, s);
        auto scaled = check_nilpotent_orbit(
            NilpotentCone(4, {unit(4, 0, 2) * Rational(2), unit(4, 1, 3) * Rational(3)}), siegel(z11, z12, z22), d, s);
        bool ok = base.ok();
        EXPECT_TRUE(ok);   // Im Z + diag(y) is positive for large y.
        EXPECT_EQ(moved.ok(), ok);
        EXPECT_EQ(scaled.ok(), ok);
    }
}

TEST(Chart, InESigmaExamples)
{
    auto chart = elliptic_chart();
    auto d = elliptic_data();
    EXPECT_TRUE(in_E_sigma(chart, {chart.point({0.0}), elliptic_filtration({0.0, -3.0})}, d));
    EXPECT_TRUE(in_E_sigma(chart, {q_of(chart, {0.3, 0.5}), elliptic_filtration({0.0, 0.0})}, d));
    EXPECT_FALSE(in_E_sigma(chart, {q_of(chart, {0.2, 0.5}), elliptic_filtration({0.0, -1.0})}, d));
    EXPECT_TRUE(in_E_sigma_sharp(chart, {chart.point({0.1}), elliptic_filtration({0.0, 0.0})}, d));
    EXPECT_EQ(kind_of([&] { in_E_sigma_sharp(chart, {chart.point({Complex(0.0, 0.1)}), elliptic_filtration({0.0, 0.0})}, d); }),
              ErrorKind::NotAbsolutePoint);
}

TEST(Chart, PhiMatchesPeriodPoint)
{
    auto chart = elliptic_chart();
    auto d = elliptic_data();
    const Complex tau(1.7, 0.4);
    auto o = phi(chart, {q_of(chart, tau), elliptic_filtration({0.0, 0.0})}, d);
    EXPECT_TRUE(o.cone.is_zero());
    OrbitPoint expected{NilpotentCone::zero(2), elliptic_filtration(tau), OrbitFlavor::Full, std::nullopt};
    EXPECT_TRUE(orbits_equivalent(o, expected, {kN}));
    EXPECT_FALSE(orbits_equivalent(o, expected));
    auto shifted = phi(chart, {q_of(chart, tau - 1.0), elliptic_filtration({0.0, 0.0})}, d);
    ASSERT_TRUE(o.normal_form && shifted.normal_form);
    EXPECT_NEAR(std::abs((*o.normal_form)[0] - (*shifted.normal_form)[0]), 0.0, 1e-12);

    auto boundary = phi(chart, {chart.point({0.0}), elliptic_filtration({0.0, -1.0})}, d);
    EXPECT_TRUE(boundary.cone == ray());
    EXPECT_EQ(kind_of([&] { phi(chart, {q_of(chart, {0.2, 0.5}), elliptic_filtration({0.0, -1.0})}, d); }),
              ErrorKind::NotInESigma);
}

TEST(Chart, PhiSharpAgreesWithPhiOnAbsolutePoints)
{
    auto chart = elliptic_chart();
    auto d = elliptic_data();
    ChartPoint p{chart.point({0.1}, true), elliptic_filtration({0.0, 0.0})};
    auto sharp = phi_sharp(chart, p, d);
    EXPECT_EQ(sharp.flavor, OrbitFlavor::I);
    const double y = -std::log(0.1) / (2.0 * kPi);
    EXPECT_TRUE(sharp.representative.equals(elliptic_filtration({0.0, y}), 1e-9));
    auto full = phi(chart, p, d);
    sharp.flavor = OrbitFlavor::Full;
    EXPECT_TRUE(orbits_equivalent(sharp, full));
    EXPECT_EQ(kind_of([&] { phi_sharp(chart, {chart.point({0.99}), elliptic_filtration({0.0, -1.0})}, d); }),
              ErrorKind::NotInESigmaSharp);
}

TEST(Chart, OrbitEquivalence)
{
    OrbitPoint a{ray(), elliptic_filtration({0.0, 1.0}), OrbitFlavor::Full, std::nullopt};
    OrbitPoint b{ray(), elliptic_filtration({0.4, 3.0}), OrbitFlavor::Full, std::nullopt};
    EXPECT_TRUE(orbits_equivalent(a, b));
    a.flavor = b.flavor = OrbitFlavor::I;
    EXPECT_FALSE(orbits_equivalent(a, b));
    b.representative = elliptic_filtration({0.0, 3.0});
    EXPECT_TRUE(orbits_equivalent(a, b));
    OrbitPoint z1{NilpotentCone::zero(2), elliptic_filtration({0.0, 1.0}), OrbitFlavor::Full, std::nullopt};
    OrbitPoint z2{NilpotentCone::zero(2), elliptic_filtration({0.0, 2.0}), OrbitFlavor::Full, std::nullopt};
    EXPECT_FALSE(orbits_equivalent(z1, z2, {kN}));
}

TEST(ChartProperty, BranchIndependence)
{
    test_support::Gen gen(37);
    auto chart = siegel_chart();
    auto d = abelian_surface();
    const std::vector<RMatrix> rays{unit(4, 0, 2), unit(4, 1, 3)};
    for (int trial = 0; trial < 100; ++trial)
    {
        CVector zeta{gen.complex(1.5), gen.complex(1.5)};
        auto values = chart.e_map(zeta).values;
        for (auto& v : values)
            if (gen.integer(0, 2) == 0)
                v = 0.0;
        auto q = chart.point(values);
        auto f = siegel(gen.complex(2.0), gen.complex(0.5), gen.complex(2.0));
        auto c = check_E_sigma(chart, {q, f}, d);
        // Another lift: z + ℓ + s with ℓ integral and s in the complex span of σ(q).
        CMatrix z = c.lift.z;
        for (const auto& r : rays)
            z += to_complex(r) * Complex(static_cast<double>(gen.integer(-3, 3)), 0.0);
        for (const auto& r : c.face.rays())
            z += to_complex(r) * gen.complex(2.0);
        auto other = check_nilpotent_orbit(c.face, f.transform(exp_nilpotent(z)), d);
        EXPECT_EQ(other.status, c.orbit.status);
    }
}

TEST(LogPoint, RoundTrip)
{
    auto fx = load_fixture("fan_minimal");
    auto d = *fx.data;
    OrbitPoint tate{ray(), elliptic_filtration({0.0, -1.0}), OrbitFlavor::Full, std::nullopt};
    auto lp = log_point_from_orbit(tate, fx.gamma_generators);
    EXPECT_EQ(lp.monodromy, std::vector<RMatrix>{rm({{1, 1}, {0, 1}})});
    auto back = orbit_from_log_point(lp, *fx.fan, d);
    EXPECT_TRUE(orbits_equivalent(back, tate));

    OrbitPoint trivial{NilpotentCone::zero(2), elliptic_filtration({0.5, 1.0}), OrbitFlavor::Full, std::nullopt};
    auto lp0 = log_point_from_orbit(trivial, fx.gamma_generators);
    EXPECT_EQ(lp0.monodromy, std::vector<RMatrix>{RMatrix::identity(2)});
    auto back0 = orbit_from_log_point(lp0, *fx.fan, d);
    EXPECT_TRUE(back0.cone.is_zero());
    EXPECT_TRUE(orbits_equivalent(back0, trivial));
}

TEST(LogPoint, Errors)
{
    auto fx = load_fixture("fan_minimal");
    LogPointData lower{{rm({{1, 0}, {1, 1}})}, elliptic_filtration({0.0, 1.0})};
    EXPECT_EQ(kind_of([&] { orbit_from_log_point(lower, *fx.fan, *fx.data); }), ErrorKind::NoConeContains);
    LogPointData outside{{RMatrix::identity(2)}, elliptic_filtration({0.0, -1.0})};
    EXPECT_EQ(kind_of([&] { orbit_from_log_point(outside, *fx.fan, *fx.data); }), ErrorKind::OrbitCheckFailed);
}

TEST(Trace, ApproachesTheBoundary)
{
    auto chart = elliptic_chart();
    std::vector<double> ys;
    for (int y = 1; y <= 10; ++y)
        ys.push_back(y);
    auto trace = boundary_limit_trace(chart, elliptic_filtration({0.0, 1.0}), elliptic_data(), {1.0}, ys);
    ASSERT_EQ(trace.size(), ys.size());
    for (std::size_t i = 0; i < trace.size(); ++i)
    {
        double expected = std::exp(-2.0 * kPi * ys[i]);
        EXPECT_LT(std::abs(trace[i].distance - expected) / expected, 1e-9);
        if (i > 0)
            EXPECT_LT(trace[i].distance, trace[i - 1].distance);
    }

    ConeChart zero(NilpotentCone::zero(2), {});
    auto flat = boundary_limit_trace(zero, elliptic_filtration({0.0, 1.0}), elliptic_data(), {}, ys);
    for (const auto& t : flat)
        EXPECT_EQ(t.distance, 0.0);
}
