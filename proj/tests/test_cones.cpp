#include <gtest/gtest.h>
#include <algorithm>
#include "hodge/fan.hpp"
#include "generators.hpp"

using namespace hodge;

namespace {

RVector rv(std::initializer_list<long> xs)
{
    RVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

RMatrix rm(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<RVector> rs;
    for (auto r : rows)
        rs.push_back(rv(r));
    return RMatrix::from_rows(rs);
}

RMatrix unit(std::size_t n, std::size_t i, std::size_t j)
{
    RMatrix m(n, n);
    m(i, j) = 1;
    return m;
}

RMatrix lowering() { return rm({{0, 1}, {0, 0}}); }

IncreasingFiltration two_step(int a, int b)
{
    return IncreasingFiltration::from_steps(2, {{a, RSubspace::span(2, {rv({1, 0})})}, {b, RSubspace::full(2)}});
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

/** Dual lattice points of the plane cone on the given rays, minimal ones kept, by exhaustive search. */
std::vector<RVector> brute_force_dual_basis(const std::vector<std::pair<long, long>>& rays, long box)
{
    auto in_dual = [&](long a, long b) {
        for (const auto& [x, y] : rays)
            if (a * x + b * y < 0)
                return false;
        return true;
    };
    const long wide = 2 * box;
    std::vector<RVector> out;
    for (long a = -box; a <= box; ++a)
        for (long b = -box; b <= box; ++b)
        {
            if ((a == 0 && b == 0) || !in_dual(a, b))
                continue;
            bool decomposes = false;
            for (long c = -wide; c <= wide && !decomposes; ++c)
                for (long d = -wide; d <= wide && !decomposes; ++d)
                    if (!(c == 0 && d == 0) && !(c == a && d == b) && in_dual(c, d) && in_dual(a - c, b - d))
                        decomposes = true;
            if (!decomposes)
                out.push_back(rv({a, b}));
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RVector> dual_basis_of_plane_cone(const std::vector<RVector>& rays)
{
    PolyhedralCone c(2, rays);
    std::vector<RVector> normals;
    for (const auto& f : c.facets())
        normals.push_back(f);
    PolyhedralCone dual(2, normals);
    return hilbert_basis(2, dual.rays(), dual.facets());
}

}   // namespace

TEST(Lattice, PrimitiveAndHermite)
{
    EXPECT_EQ(primitive({Rational(2, 3), Rational(-4, 3)}), rv({1, -2}));
    auto h = hermite({rv({2, 4}), rv({3, 6}), rv({0, 1})}, 2);
    EXPECT_EQ(h.rank, 2u);
    EXPECT_EQ(h.basis(), (std::vector<RVector>{rv({1, 0}), rv({0, 1})}));
    auto rel = h.relations();
    ASSERT_EQ(rel.size(), 1u);
    RVector combo = add(add(scale(rv({2, 4}), rel[0][0]), scale(rv({3, 6}), rel[0][1])), scale(rv({0, 1}), rel[0][2]));
    EXPECT_TRUE(is_zero_vector(combo));
    EXPECT_EQ(lattice_basis({rv({2, 0}), rv({0, 3}), rv({2, 3})}, 2), (std::vector<RVector>{rv({2, 0}), rv({0, 3})}));
}

TEST(Lattice, HilbertBasisOfTheSpecPlaneCone)
{
    auto basis = dual_basis_of_plane_cone({rv({1, 0}), rv({1, 2})});
    EXPECT_EQ(basis, (std::vector<RVector>{rv({0, 1}), rv({1, 0}), rv({2, -1})}));
    EXPECT_EQ(basis, brute_force_dual_basis({{1, 0}, {1, 2}}, 3));
}

TEST(LatticeProperty, PlaneDualBasesMatchBruteForce)
{
    std::size_t checked = 0;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c)
                for (long d = -3; d <= 3; ++d)
                {
                    // Only full-dimensional pointed cones, one representative per pair.
                    Rational det = Rational(a * d - b * c);
                    if (det <= 0)
                        continue;
                    auto r1 = primitive(rv({a, b}));
                    auto r2 = primitive(rv({c, d}));
                    if (r1 != rv({a, b}) || r2 != rv({c, d}))
                        continue;
                    auto fast = dual_basis_of_plane_cone({r1, r2});
                    EXPECT_EQ(fast, brute_force_dual_basis({{a, b}, {c, d}}, 6)) << a << b << c << d;
                    ++checked;
                }
    EXPECT_GT(checked, 100u);
}

TEST(Cone, ValidationErrors)
{
    EXPECT_NO_THROW(NilpotentCone(2, {lowering()}));
    EXPECT_EQ(kind_of([] { NilpotentCone(2, {lowering(), -lowering()}); }), ErrorKind::NotSharp);
    EXPECT_EQ(kind_of([] { NilpotentCone(2, {rm({{0, 1}, {0, 0}}), rm({{0, 0}, {1, 0}})}); }), ErrorKind::NotCommuting);
    EXPECT_EQ(kind_of([] { NilpotentCone(2, {RMatrix::identity(2)}); }), ErrorKind::NotNilpotent);
}

TEST(Cone, FaceCounts)
{
    EXPECT_EQ(NilpotentCone(2, {lowering()}).faces().size(), 2u);
    EXPECT_EQ(NilpotentCone(3, {unit(3, 0, 2), unit(3, 0, 1)}).faces().size(), 4u);
    EXPECT_EQ(NilpotentCone(4, {unit(4, 0, 2), unit(4, 0, 3), unit(4, 1, 3)}).faces().size(), 8u);
    // A square cone over four commuting nilpotents in a 3-dimensional span: 1 + 4 + 4 + 1 faces.
    RMatrix u = unit(4, 0, 2), v = unit(4, 0, 3), w = unit(4, 1, 3);
    NilpotentCone square(4, {w + u, w + v, w - u, w - v});
    EXPECT_EQ(square.faces().size(), 10u);
    EXPECT_EQ(NilpotentCone::zero(2).faces().size(), 1u);
}

TEST(Cone, FacesOfSimplicialConeMatchGeneratorSubsets)
{
    std::vector<RMatrix> gens{unit(4, 0, 2), unit(4, 0, 3), unit(4, 1, 3)};
    NilpotentCone sigma(4, gens);
    auto faces = sigma.faces();
    for (unsigned mask = 0; mask < 8u; ++mask)
    {
        std::vector<RMatrix> sub;
        for (unsigned i = 0; i < 3; ++i)
            if (mask & (1u << i))
                sub.push_back(gens[i]);
        NilpotentCone tau(4, sub);
        EXPECT_TRUE(std::find(faces.begin(), faces.end(), tau) != faces.end());
        EXPECT_TRUE(tau.is_face_of(sigma));
    }
    EXPECT_FALSE(NilpotentCone(4, {unit(4, 0, 2) + unit(4, 0, 3)}).is_face_of(sigma));
}

TEST(Cone, Intersections)
{
    RMatrix x = unit(3, 0, 2), y = unit(3, 0, 1);
    NilpotentCone a(3, {x, x + y}), b(3, {x + y, y});
    auto meet = intersect_cones(a, b);
    EXPECT_EQ(meet, NilpotentCone(3, {x + y}));
    EXPECT_TRUE(meet.is_face_of(a));
    EXPECT_TRUE(meet.is_face_of(b));
    EXPECT_EQ(intersect_cones(a, a), a);
    EXPECT_EQ(intersect_cones(a, NilpotentCone::zero(3)), NilpotentCone::zero(3));
    EXPECT_TRUE(NilpotentCone::zero(3).is_face_of(a));
    NilpotentCone overlap(3, {x + y, x + y * Rational(3)});
    NilpotentCone wide(3, {x, x + y * Rational(2)});
    auto part = intersect_cones(overlap, wide);
    EXPECT_EQ(part, NilpotentCone(3, {x + y, x + y * Rational(2)}));
    EXPECT_FALSE(part.is_face_of(wide));
}

TEST(Cone, SampleInterior)
{
    NilpotentCone ray(2, {lowering() * Rational(3)});
    for (const auto& s : sample_interior(ray, 5, 1))
    {
        EXPECT_EQ(s(1, 0), Rational(0));
        EXPECT_GT(s(0, 1), Rational(0));
    }
    NilpotentCone plane(3, {unit(3, 0, 2), unit(3, 0, 1)});
    auto a = sample_interior(plane, 6, 42), b = sample_interior(plane, 6, 42);
    EXPECT_EQ(a, b);
    for (const auto& s : a)
        EXPECT_TRUE(plane.in_relative_interior(s));
    EXPECT_EQ(kind_of([] { sample_interior(NilpotentCone::zero(2), 3, 0); }), ErrorKind::EmptyInterior);
}

TEST(Cone, StrongCompatibility)
{
    NilpotentCone ray(2, {lowering()});
    EXPECT_TRUE(check_strong_compatibility(ray, {exp_nilpotent(lowering())}));
    EXPECT_TRUE(check_strong_compatibility(ray, {exp_nilpotent(lowering() * Rational(2))}));
    RMatrix x = unit(3, 0, 2), y = unit(3, 0, 1);
    NilpotentCone plane(3, {x, y});
    EXPECT_FALSE(check_strong_compatibility(plane, {exp_nilpotent(x)}));
    EXPECT_TRUE(check_strong_compatibility(plane, {exp_nilpotent(x), exp_nilpotent(y)}));
    EXPECT_EQ(kind_of([&] { check_strong_compatibility(ray, {rm({{2, 0}, {0, 1}})}); }), ErrorKind::NotUnipotent);
}

TEST(Admissibility, SpecExamples)
{
    NilpotentCone ray(2, {lowering()});
    auto pure = check_admissibility(ray, IncreasingFiltration::pure(2, 1), 8, 0);
    EXPECT_TRUE(pure.exists_everywhere_sampled);
    ASSERT_TRUE(pure.filtration.has_value());
    EXPECT_EQ(pure.filtration->at(0), RSubspace::span(2, {rv({1, 0})}));
    EXPECT_EQ(pure.samples_used, 8u);

    auto zero = check_admissibility(NilpotentCone::zero(2), two_step(0, 1), 8, 0);
    EXPECT_TRUE(zero.vacuous);
    EXPECT_TRUE(zero.exists_everywhere_sampled);

    auto bad = check_admissibility(ray, two_step(0, 1), 8, 0);
    EXPECT_FALSE(bad.exists_everywhere_sampled);
    ASSERT_TRUE(bad.failing_sample.has_value());
    EXPECT_EQ(*bad.failing_sample, lowering());
}

TEST(Fan, MinimalEllipticFan)
{
    Fan fan{{NilpotentCone::zero(2), NilpotentCone(2, {lowering()})}};
    auto report = validate_fan(fan, IncreasingFiltration::pure(2, 1));
    EXPECT_TRUE(report.valid);
    Fan missing{{NilpotentCone(2, {lowering()})}};
    auto bad = validate_fan(missing, IncreasingFiltration::pure(2, 1));
    EXPECT_FALSE(bad.valid);
    EXPECT_TRUE(bad.fails(2));
    EXPECT_FALSE(bad.fails(3));
}

TEST(Fan, OverlappingConesFailIntersectionCondition)
{
    RMatrix x = unit(3, 0, 2), y = unit(3, 0, 1);
    Fan fan{{NilpotentCone::zero(3), NilpotentCone(3, {x, x + y * Rational(2)}), NilpotentCone(3, {x + y, y})}};
    auto report = validate_fan(fan, IncreasingFiltration::pure(3, 0), {2, 0, nullptr});
    EXPECT_TRUE(report.fails(3));
}

TEST(Fan, Compatibility)
{
    Fan fan{{NilpotentCone::zero(2), NilpotentCone(2, {lowering()})}};
    EXPECT_TRUE(check_compatibility(fan, {{}, {}}, 3).compatible);
    auto ok = check_compatibility(fan, {{exp_nilpotent(lowering())}, {}}, 3);
    EXPECT_TRUE(ok.compatible);
    EXPECT_EQ(ok.elements_checked, 7u);
    auto bad = check_compatibility(fan, {{rm({{0, 1}, {-1, 0}})}, {}}, 2);
    EXPECT_FALSE(bad.compatible);
    ASSERT_TRUE(bad.witness_gamma.has_value());
    EXPECT_EQ(bad.witness_cone, 1u);
}

namespace {

/** Random cone of commuting nilpotents on Q^4 conjugated by a unimodular matrix. */
NilpotentCone random_cone(test_support::Gen& gen, RMatrix& conj)
{
    const std::vector<RMatrix> basis{unit(4, 0, 2), unit(4, 0, 3), unit(4, 1, 2), unit(4, 1, 3)};
    std::vector<RMatrix> gens;
    const long count = gen.integer(0, 4);
    for (long i = 0; i < count; ++i)
    {
        RMatrix g(4, 4);
        for (const auto& b : basis)
            g += b * Rational(gen.integer(0, 2));
        if (!g.is_zero())
            gens.push_back(g);
    }
    conj = gen.unimodular(4, 4);
    RMatrix ci = *inverse(conj);
    for (auto& g : gens)
        g = conj * g * ci;
    return NilpotentCone(4, gens);
}

}   // namespace

TEST(ConeProperty, AdjointEquivarianceOfFaces)
{
    test_support::Gen gen(404);
    for (int trial = 0; trial < 100; ++trial)
    {
        RMatrix c;
        auto sigma = random_cone(gen, c);
        RMatrix gamma = gen.unimodular(4, 5);
        auto lhs = sigma.adjoint(gamma).faces();
        auto rhs = sigma.faces();
        ASSERT_EQ(lhs.size(), rhs.size());
        for (const auto& f : rhs)
            EXPECT_TRUE(std::find(lhs.begin(), lhs.end(), f.adjoint(gamma)) != lhs.end());
    }
}

TEST(ConeProperty, FaceLatticeAndIntersections)
{
    test_support::Gen gen(405);
    for (int trial = 0; trial < 25; ++trial)
    {
        RMatrix c;
        auto sigma = random_cone(gen, c);
        auto faces = sigma.faces();
        EXPECT_LE(faces.size(), std::size_t(1) << sigma.generators().size());
        for (const auto& tau : faces)
            for (const auto& rho : tau.faces())
                EXPECT_TRUE(rho.is_face_of(sigma));
        for (const auto& a : faces)
            for (const auto& b : faces)
            {
                auto meet = intersect_cones(a, b);
                EXPECT_TRUE(std::find(faces.begin(), faces.end(), meet) != faces.end());
                EXPECT_EQ(meet, intersect_cones(b, a));
            }
        EXPECT_EQ(intersect_cones(sigma, sigma), sigma);
    }
}
