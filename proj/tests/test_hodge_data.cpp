#include <gtest/gtest.h>
#include "hodge/hodge_data.hpp"
#include "generators.hpp"

using namespace hodge;

namespace {

RMatrix rm(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<RVector> rs;
    for (auto r : rows)
    {
        RVector v;
        for (long x : r)
            v.emplace_back(x);
        rs.push_back(v);
    }
    return RMatrix::from_rows(rs);
}

HodgeData elliptic()
{
    HodgeData d;
    d.rank = 2;
    d.weight = IncreasingFiltration::pure(2, 1);
    d.pairings[1] = rm({{0, 1}, {-1, 0}});
    d.hodge_numbers[{1, 0, 1}] = 1;
    d.hodge_numbers[{0, 1, 1}] = 1;
    return d;
}

HodgeData mixed_02()
{
    HodgeData d;
    d.rank = 2;
    d.weight = IncreasingFiltration::from_steps(
        2, {{0, RSubspace::span(2, {RVector{1, 0}})}, {2, RSubspace::full(2)}});
    d.pairings[0] = rm({{1}});
    d.pairings[2] = rm({{1}});
    d.hodge_numbers[{0, 0, 0}] = 1;
    d.hodge_numbers[{1, 1, 2}] = 1;
    return d;
}

/** Weight-1 rank-4 data: <x, y> = x^T [[0, I], [-I, 0]] y, h^{1,0} = h^{0,1} = 2. */
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

DecreasingFiltration elliptic_filtration(Complex tau)
{
    return DecreasingFiltration::from_steps(
        2, {{0, CSubspace::full(2)}, {1, CSubspace::span(2, {{tau, 1.0}})}});
}

/** F^1 spanned by the columns of [Z; I]. */
DecreasingFiltration siegel_filtration(Complex z11, Complex z12, Complex z22)
{
    return DecreasingFiltration::from_steps(
        4, {{0, CSubspace::full(4)}, {1, CSubspace::span(4, {{z11, z12, 1.0, 0.0}, {z12, z22, 0.0, 1.0}})}});
}

DecreasingFiltration mixed_filtration(Complex c)
{
    return DecreasingFiltration::from_steps(
        2, {{0, CSubspace::full(2)}, {1, CSubspace::span(2, {{c, 1.0}})}});
}

bool has_violation(const ValidationReport& r, const std::string& code)
{
    for (const auto& v : r.violations)
        if (v.code == code)
            return true;
    return false;
}

}   // namespace

TEST(ValidateHodgeData, EllipticDataIsValid)
{
    EXPECT_TRUE(validate_hodge_data(elliptic()).ok());
    EXPECT_TRUE(validate_hodge_data(mixed_02()).ok());
    EXPECT_TRUE(validate_hodge_data(abelian_surface()).ok());
}

TEST(ValidateHodgeData, ReportsEachViolation)
{
    auto d = elliptic();
    d.hodge_numbers[{1, 0, 1}] = 2;
    auto r = validate_hodge_data(d);
    EXPECT_TRUE(has_violation(r, "rank sum mismatch"));
    EXPECT_TRUE(has_violation(r, "hodge symmetry"));

    auto s = elliptic();
    s.pairings[1] = rm({{1, 0}, {0, 1}});
    EXPECT_TRUE(has_violation(validate_hodge_data(s), "parity"));

    auto g = elliptic();
    g.pairings[1] = rm({{0, 0}, {0, 0}});
    EXPECT_TRUE(has_violation(validate_hodge_data(g), "degenerate pairing"));

    auto off = elliptic();
    off.hodge_numbers[{2, 0, 1}] = 1;
    EXPECT_TRUE(has_violation(validate_hodge_data(off), "p+q != k"));
}

TEST(InGroup, SpecExamples)
{
    auto d = elliptic();
    EXPECT_TRUE(in_group(RMatrix::identity(2), d, Ring::Z));
    RMatrix t = rm({{1, 1}, {0, 1}});
    // Direct check: t^T P t = P for the symplectic form.
    EXPECT_EQ(t.transpose() * d.pairings[1] * t, d.pairings[1]);
    EXPECT_TRUE(in_group(t, d, Ring::Z));
    EXPECT_FALSE(in_group(rm({{2, 0}, {0, 1}}), d, Ring::Z));
    RMatrix half(2, 2);
    half(0, 0) = Rational(2);
    half(1, 1) = Rational(1, 2);
    EXPECT_FALSE(in_group(half, d, Ring::Z));
    EXPECT_TRUE(in_group(half, d, Ring::Q));
}

TEST(InGroup, MustPreserveWeightFiltration)
{
    auto d = mixed_02();
    EXPECT_TRUE(in_group(rm({{1, 5}, {0, -1}}), d, Ring::Z));
    EXPECT_FALSE(in_group(rm({{1, 0}, {1, 1}}), d, Ring::Z));
}

TEST(InLieAlgebra, SpecExamples)
{
    auto d = elliptic();
    EXPECT_TRUE(in_lie_algebra(RMatrix::zero(2, 2), d));
    RMatrix n = rm({{0, 1}, {0, 0}});
    EXPECT_TRUE((n.transpose() * d.pairings[1] + d.pairings[1] * n).is_zero());
    EXPECT_TRUE(in_lie_algebra(n, d));
    EXPECT_FALSE(in_lie_algebra(RMatrix::identity(2), d));
}

TEST(InCheckDomain, SpecExamples)
{
    auto d = elliptic();
    for (Complex tau : {Complex(0, 1), Complex(3, -2), Complex(-1, 0), Complex(0, 0)})
        EXPECT_TRUE(in_check_domain(elliptic_filtration(tau), d));
    auto wrong = DecreasingFiltration::from_steps(2, {{1, CSubspace::full(2)}});
    EXPECT_FALSE(in_check_domain(wrong, d));

    HodgeData w0;
    w0.rank = 2;
    w0.weight = IncreasingFiltration::pure(2, 0);
    w0.pairings[0] = rm({{1, 0}, {0, 1}});
    w0.hodge_numbers[{0, 0, 0}] = 2;
    ASSERT_TRUE(validate_hodge_data(w0).ok());
    EXPECT_TRUE(in_check_domain(DecreasingFiltration::from_steps(2, {{0, CSubspace::full(2)}}), w0));
}

TEST(PurePolarized, SignConventionFixedByEllipticFixture)
{
    // Oracle: for v = tau e1 + e2, i * <conj(v), v> = 2 Im(tau) under <e1, e2> = 1.
    RMatrix p = elliptic().pairings[1];
    for (Complex tau : {Complex(0.2, 1.5), Complex(-3, 0.5), Complex(1, -2)})
    {
        CVector v{tau, 1.0};
        CVector cv{std::conj(tau), 1.0};
        Complex value = Complex(0, 1) * pairing(to_complex(p), cv, v);
        EXPECT_NEAR(value.real(), 2 * tau.imag(), 1e-12);
        EXPECT_NEAR(value.imag(), 0.0, 1e-12);
        EXPECT_EQ(is_pure_polarized(elliptic_filtration(tau), p, 1), tau.imag() > 0);
    }
    EXPECT_FALSE(is_pure_polarized(elliptic_filtration(Complex(0.7, 0)), p, 1));
    EXPECT_EQ(pure_polarized_status(elliptic_filtration(Complex(0.7, 0)), p, 1), Tri::Indeterminate);

    RMatrix one(1, 1);
    one(0, 0) = 1;
    EXPECT_TRUE(is_pure_polarized(DecreasingFiltration::from_steps(1, {{0, CSubspace::full(1)}}), one, 0));
}

TEST(InD, EllipticAndMixedExamples)
{
    auto d = elliptic();
    EXPECT_TRUE(in_D(elliptic_filtration(Complex(0, 1)), d));
    EXPECT_FALSE(in_D(elliptic_filtration(Complex(0, -1)), d));
    auto boundary = classify_D(elliptic_filtration(Complex(2, 0)), d);
    EXPECT_EQ(boundary.verdict, Tri::Indeterminate);
    EXPECT_FALSE(boundary.warnings.empty());

    auto m = mixed_02();
    for (Complex c : {Complex(0, 0), Complex(5, -3), Complex(-0.25, 7)})
    {
        EXPECT_TRUE(in_check_domain(mixed_filtration(c), m));
        EXPECT_TRUE(in_D(mixed_filtration(c), m));
    }
}

TEST(InD, SiegelUpperHalfSpace)
{
    auto d = abelian_surface();
    EXPECT_TRUE(in_D(siegel_filtration({0, 2}, {0.5, 0.5}, {0, 1}), d));
    EXPECT_FALSE(in_D(siegel_filtration({0, 1}, {0, 2}, {0, 1}), d));    // Im Z indefinite
    EXPECT_TRUE(in_check_domain(siegel_filtration({0, 1}, {0, 2}, {0, 1}), d));
    // Non-symmetric Z violates the first bilinear relation.
    auto bad = DecreasingFiltration::from_steps(
        4, {{0, CSubspace::full(4)}, {1, CSubspace::span(4, {{Complex(0, 1), 1.0, 1.0, 0.0}, {0.0, Complex(0, 1), 0.0, 1.0}})}});
    EXPECT_FALSE(in_check_domain(bad, d));
}

TEST(HodgeProperties, DInsideCheckDomain)
{
    test_support::Gen gen(3);
    auto d = abelian_surface();
    for (int i = 0; i < 100; ++i)
    {
        auto f = siegel_filtration(gen.complex(2), gen.complex(2), gen.complex(2));
        if (in_D(f, d))
            EXPECT_TRUE(in_check_domain(f, d));
    }
}

TEST(HodgeProperties, GroupInvarianceOfMembership)
{
    test_support::Gen gen(4);
    auto d = abelian_surface();
    // Symplectic elementary generators of Sp_4(Z).
    std::vector<RMatrix> gens;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
        {
            RMatrix up = RMatrix::identity(4);
            up(i, 2 + j) += 1;
            up(j, 2 + i) += (i == j) ? 0 : 1;
            gens.push_back(up);
            gens.push_back(up.transpose());
        }
    RMatrix swap_block = rm({{0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}});
    gens.push_back(swap_block);
    for (const auto& g : gens)
        ASSERT_TRUE(in_group(g, d, Ring::Z)) << to_string(g);
    int inside = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        RMatrix gamma = RMatrix::identity(4);
        for (int s = 0; s < 4; ++s)
            gamma = gamma * gens[static_cast<std::size_t>(gen.integer(0, static_cast<long>(gens.size()) - 1))];
        ASSERT_TRUE(in_group(gamma, d, Ring::Z));
        Complex z12 = gen.complex(0.5);
        auto f = siegel_filtration({gen.real(-1, 1), gen.real(0.5, 2)}, z12, {gen.real(-1, 1), gen.real(0.5, 2)});
        auto gf = f.transform(to_complex(gamma));
        EXPECT_EQ(in_check_domain(f, d), in_check_domain(gf, d));
        EXPECT_EQ(in_D(f, d), in_D(gf, d));
        inside += in_D(f, d);
    }
    EXPECT_GT(inside, 10);
}

TEST(HodgeProperties, LieAlgebraIsAVectorSpaceAndExponentiates)
{
    test_support::Gen gen(5);
    auto d = abelian_surface();
    // Nilpotent elements of sp_4: [[0, S], [0, 0]] with S symmetric.
    for (int trial = 0; trial < 50; ++trial)
    {
        auto sym = [&]() {
            RMatrix n(4, 4);
            Rational a = gen.rational(3, 3), b = gen.rational(3, 3), c = gen.rational(3, 3);
            n(0, 2) = a;
            n(0, 3) = b;
            n(1, 2) = b;
            n(1, 3) = c;
            return n;
        };
        RMatrix n1 = sym(), n2 = sym();
        ASSERT_TRUE(in_lie_algebra(n1, d));
        Rational a = gen.rational(4, 3), b = gen.rational(4, 3);
        EXPECT_TRUE(in_lie_algebra(RMatrix(n1 * a + n2 * b), d));
        EXPECT_TRUE(in_group(exp_nilpotent(n1), d, Ring::Q));
    }
}
