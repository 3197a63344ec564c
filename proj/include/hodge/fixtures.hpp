/**
 * Built-in fixtures.
 *
 *   elliptic                 weight-1 rank-2 data, N e2 = e1, σ = R_{>=0}N,
 *                            Γ(σ) generated by [[1,1],[0,1]], F = F(i)
 *   mixed_02                 weights 0 and 2, N e2 = e1 (M(N, W) exists)
 *   mixed_01_nonadmissible   weights 0 and 1, N e2 = e1 (M(N, W) is absent);
 *                            only W and N, since no polarization exists
 *                            on a rank-1 piece of odd weight
 *   cone2d                   cone((1,0),(1,2)) in Z^2, realized by
 *                            X = E13, Y = E12 as σ = cone(X, X + 2Y)
 *   fan_minimal              the elliptic data with Σ = {{0}, R_{>=0}N}
 *
 * F(τ) denotes the filtration with F^1 = span(τ e1 + e2).
 */

#ifndef HODGE_FIXTURES_HPP
#define HODGE_FIXTURES_HPP

#include <optional>
#include <string>
#include <vector>
#include "fan.hpp"

namespace hodge {

struct Fixture
{
    std::string name;
    std::optional<HodgeData> data;
    IncreasingFiltration weight;
    std::optional<RMatrix> n;
    std::optional<NilpotentCone> cone;
    std::vector<RMatrix> gamma_generators;
    std::optional<Fan> fan;
    std::optional<DecreasingFiltration> filtration;
    std::vector<RVector> abstract_rays;     // cone2d only
};

inline const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{"elliptic", "mixed_02", "mixed_01_nonadmissible", "cone2d", "fan_minimal"};
    return names;
}

inline DecreasingFiltration elliptic_filtration(Complex tau)
{
    return DecreasingFiltration::from_steps(2, {{0, CSubspace::full(2)}, {1, CSubspace::span(2, {{tau, 1.0}})}});
}

namespace detail {

inline RMatrix matrix2(long a, long b, long c, long d)
{
    return RMatrix::from_rows({{Rational(a), Rational(b)}, {Rational(c), Rational(d)}});
}

inline RMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j)
{
    RMatrix m(n, n);
    m(i, j) = 1;
    return m;
}

inline IncreasingFiltration line_then_all(int a, int b)
{
    return IncreasingFiltration::from_steps(2, {{a, RSubspace::span(2, {{Rational(1), Rational(0)}})}, {b, RSubspace::full(2)}});
}

}   // namespace detail

inline HodgeData elliptic_data()
{
    HodgeData d;
    d.rank = 2;
    d.weight = IncreasingFiltration::pure(2, 1);
    d.pairings[1] = detail::matrix2(0, 1, -1, 0);
    d.hodge_numbers[{1, 0, 1}] = 1;
    d.hodge_numbers[{0, 1, 1}] = 1;
    return d;
}

inline Fixture load_fixture(const std::string& name)
{
    Fixture f;
    f.name = name;
    const RMatrix lowering = detail::matrix2(0, 1, 0, 0);
    if (name == "elliptic" || name == "fan_minimal")
    {
        f.data = elliptic_data();
        f.weight = f.data->weight;
        f.n = lowering;
        f.cone = NilpotentCone(2, {lowering}, &*f.data);
        f.gamma_generators = {detail::matrix2(1, 1, 0, 1)};
        f.filtration = elliptic_filtration(Complex(0.0, 1.0));
        if (name == "fan_minimal")
            f.fan = Fan{{NilpotentCone::zero(2), *f.cone}};
        return f;
    }
    if (name == "mixed_02")
    {
        HodgeData d;
        d.rank = 2;
        d.weight = detail::line_then_all(0, 2);
        d.pairings[0] = RMatrix::from_rows({{Rational(1)}});
        d.pairings[2] = RMatrix::from_rows({{Rational(1)}});
        d.hodge_numbers[{0, 0, 0}] = 1;
        d.hodge_numbers[{1, 1, 2}] = 1;
        f.data = d;
        f.weight = d.weight;
        f.n = lowering;
        f.cone = NilpotentCone(2, {lowering});
        f.gamma_generators = {detail::matrix2(1, 1, 0, 1)};
        f.filtration = elliptic_filtration(Complex(0.0, 0.0));
        return f;
    }
    if (name == "mixed_01_nonadmissible")
    {
        f.weight = detail::line_then_all(0, 1);
        f.n = lowering;
        f.cone = NilpotentCone(2, {lowering});
        return f;
    }
    if (name == "cone2d")
    {
        RMatrix x = detail::unit_matrix(3, 0, 2), y = detail::unit_matrix(3, 0, 1);
        f.weight = IncreasingFiltration::pure(3, 0);
        f.cone = NilpotentCone(3, {x, x + y * Rational(2)});
        f.gamma_generators = {exp_nilpotent(x), exp_nilpotent(x + y), exp_nilpotent(x + y * Rational(2))};
        f.abstract_rays = {{Rational(1), Rational(0)}, {Rational(1), Rational(2)}};
        return f;
    }
    fail(ErrorKind::UnknownFixture, "unknown fixture '" + name + "'");
}

}   // namespace hodge

#endif
