/**
 * Monodromy weight filtrations.
 *
 * monodromy_filtration builds the filtration M(N) centred at w from kernels
 * and images of powers of N:
 *
 *     M_{w+k} = sum_{j >= max(0, -k)} ker N^{k+j+1} ∩ im N^j
 *
 * relative_monodromy_filtration builds the candidate for M(N, W) one W-step
 * at a time: given M on W_{b-1}, every Jordan chain top v of gr^W_b(N) of
 * length l must lift to v + u (u in W_{b-1}) with N^l (v + u) in
 * M_{b-l-1}; the chains of such lifts extend M to W_b. The result is then
 * re-verified against both defining properties, and anything that fails is
 * reported as absent. All arithmetic is exact.
 */

#ifndef HODGE_MONODROMY_HPP
#define HODGE_MONODROMY_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>
#include "filtration.hpp"

namespace hodge {

/** An exact weight filtration with its centring metadata. */
struct WeightFiltration
{
    IncreasingFiltration filtration;
    std::optional<int> pure_center;     // set for M(N) centred at w
    bool relative = false;              // set for M(N, W)

    RSubspace at(int k) const { return filtration.at(k); }

    friend bool operator==(const WeightFiltration& a, const WeightFiltration& b)
    {
        return a.filtration == b.filtration;
    }
};

/**
 * The characterizing properties of M(N) centred at w: N M_k ⊆ M_{k-2}, and
 * for k >= 1 the map N^k : gr_{w+k} -> gr_{w-k} is an isomorphism.
 */
inline bool satisfies_monodromy_axioms(const RMatrix& n, const IncreasingFiltration& m, int w)
{
    const std::size_t dim = n.rows();
    const int span = static_cast<int>(dim) + 1;
    for (int k = w - span; k <= w + span; ++k)
        if (!m.at(k - 2).contains(image(n, m.at(k))))
            return false;
    for (int k = 1; k <= span; ++k)
    {
        if (m.graded_dim(w + k) != m.graded_dim(w - k))
            return false;
        RMatrix nk = power(n, static_cast<std::size_t>(k));
        auto reached = sum(image(nk, m.at(w + k)), m.at(w - k - 1));
        if (reached != m.at(w - k))
            return false;
    }
    return true;
}

inline WeightFiltration monodromy_filtration(const RMatrix& n, int w)
{
    if (!n.is_square())
        fail(ErrorKind::DimensionMismatch, "monodromy filtration of a non-square matrix");
    if (!is_nilpotent(n))
        fail(ErrorKind::NotNilpotent, "monodromy filtration needs a nilpotent matrix");
    const std::size_t dim = n.rows();
    if (dim == 0)
        return {IncreasingFiltration::pure(0, w), w, false};
    std::vector<RSubspace> ker, im;
    RMatrix p = RMatrix::identity(dim);
    for (std::size_t j = 0; j <= dim + 1; ++j)
    {
        ker.push_back(kernel(p));
        im.push_back(image(p));
        p = p * n;
    }
    auto ker_at = [&](long j) { return ker[static_cast<std::size_t>(std::min<long>(j, static_cast<long>(dim)))]; };
    auto im_at = [&](long j) { return im[static_cast<std::size_t>(std::min<long>(j, static_cast<long>(dim)))]; };

    std::map<int, RSubspace> steps;
    const long top = static_cast<long>(dim);
    for (long k = -top; k <= top; ++k)
    {
        RSubspace mk = RSubspace::zero(dim);
        for (long j = std::max(0L, -k); j <= top; ++j)
        {
            long kexp = k + j + 1;
            if (kexp <= 0)
                continue;
            mk = sum(mk, intersection(ker_at(kexp), im_at(j)));
        }
        steps.emplace(w + static_cast<int>(k), mk);
    }
    auto m = IncreasingFiltration::from_steps(dim, steps);
    if (!satisfies_monodromy_axioms(n, m, w))
        fail(ErrorKind::Internal, "constructed monodromy filtration fails its axioms");
    return {m, w, false};
}

/** Jordan chain tops of a nilpotent matrix: (top vector, chain length). */
inline std::vector<std::pair<RVector, std::size_t>> jordan_chain_tops(const RMatrix& a)
{
    const std::size_t d = a.rows();
    std::vector<RSubspace> ker;
    RMatrix p = RMatrix::identity(d);
    for (std::size_t j = 0; j <= d + 1; ++j)
    {
        ker.push_back(kernel(p));
        p = p * a;
    }
    std::vector<std::pair<RVector, std::size_t>> tops;
    for (std::size_t len = d; len >= 1; --len)
    {
        RSubspace lower = sum(ker[len - 1], image(a, ker[len + 1]));
        for (auto& v : extend_basis(intersection(lower, ker[len]), ker[len]))
            tops.emplace_back(std::move(v), len);
    }
    return tops;
}

/**
 * Verification of a candidate for M(N, W): N M_k ⊆ M_{k-2} for all k, and on
 * every gr^W_w the induced filtration is M(gr^W_w(N)) centred at w.
 */
inline bool satisfies_relative_axioms(const RMatrix& n, const IncreasingFiltration& w,
                                      const IncreasingFiltration& m)
{
    const auto ws = w.weights();
    if (ws.empty())
        return true;
    const int span = static_cast<int>(n.rows()) + 1;
    const int lo = ws.front() - span, hi = ws.back() + span;
    for (int k = lo; k <= hi; ++k)
        if (!m.at(k - 2).contains(image(n, m.at(k))))
            return false;
    for (int wt : ws)
    {
        auto gr = graded_piece(w, wt);
        auto expected = monodromy_filtration(induced_graded_endomorphism(n, w, wt), wt);
        for (int k = lo; k <= hi; ++k)
            if (gr.project(m.at(k)) != expected.at(k))
                return false;
    }
    return true;
}

inline std::optional<WeightFiltration> relative_monodromy_filtration(const RMatrix& n, const IncreasingFiltration& w)
{
    const std::size_t dim = w.ambient_dim();
    if (n.rows() != dim || n.cols() != dim)
        fail(ErrorKind::DimensionMismatch, "endomorphism size differs from the filtered space");
    if (!is_nilpotent(n))
        fail(ErrorKind::NotNilpotent, "relative monodromy filtration needs a nilpotent matrix");
    if (!preserves(n, w))
        fail(ErrorKind::NotFiltrationPreserving, "N does not preserve W");
    if (dim == 0)
        return WeightFiltration{IncreasingFiltration::pure(0, 0), std::nullopt, true};

    // Steps of the partial filtration on the current W_b, keyed by weight;
    // it is constant (= W_b) above its last key.
    std::map<int, RSubspace> current;
    RSubspace covered = RSubspace::zero(dim);
    auto step = [&](int k) {
        auto it = current.upper_bound(k);
        if (it == current.begin())
            return RSubspace::zero(dim);
        return std::prev(it)->second;
    };
    std::vector<RMatrix> powers{RMatrix::identity(dim)};
    for (std::size_t j = 1; j <= dim + 1; ++j)
        powers.push_back(powers.back() * n);

    for (int b : w.weights())
    {
        auto gr = graded_piece(w, b);
        RMatrix gn = induced_graded_endomorphism(n, w, b);
        // Lifted chains: (lift of chain top, chain length).
        std::vector<std::pair<RVector, std::size_t>> lifts;
        for (const auto& [top, len] : jordan_chain_tops(gn))
        {
            const int bottom_weight = b - static_cast<int>(len) + 1;
            RVector v0 = gr.lift(top);
            RVector target = powers[len] * v0;
            // Need u in W_{b-1} and m in M_{bottom-2} with N^len u + m = -target.
            RSubspace allowed = step(bottom_weight - 2);
            std::vector<RVector> cols;
            for (const auto& u : covered.basis())
                cols.push_back(powers[len] * u);
            for (const auto& mv : allowed.basis())
                cols.push_back(mv);
            RVector rhs = scale(target, Rational(-1));
            std::optional<RVector> coeffs = cols.empty() ? (is_zero_vector(target) ? std::optional<RVector>(RVector{})
                                                                                  : std::nullopt)
                                                         : solve(RMatrix::from_columns(cols, dim), rhs);
            if (!coeffs)
                return std::nullopt;
            RVector v = v0;
            for (std::size_t i = 0; i < covered.dim(); ++i)
                v = add(v, scale(covered.basis()[i], (*coeffs)[i]));
            lifts.emplace_back(std::move(v), len);
        }
        RSubspace next_cover = w.at(b);
        const int span = static_cast<int>(dim) + 1;
        std::map<int, RSubspace> extended;
        int lo = current.empty() ? b - span : std::min(current.begin()->first, b - span);
        for (int k = lo; k <= b + span; ++k)
        {
            std::vector<RVector> vs = step(k).basis();
            for (const auto& [v, len] : lifts)
            {
                const int top_weight = b + static_cast<int>(len) - 1;
                for (std::size_t i = 0; i < len; ++i)
                    if (top_weight - 2 * static_cast<int>(i) <= k)
                        vs.push_back(powers[i] * v);
            }
            extended.emplace(k, RSubspace::span(dim, vs));
        }
        extended.emplace(b + span + 1, next_cover);
        current = std::move(extended);
        covered = next_cover;
    }

    auto candidate = IncreasingFiltration::from_steps(dim, current);
    if (!satisfies_relative_axioms(n, w, candidate))
        return std::nullopt;
    return WeightFiltration{candidate, std::nullopt, true};
}

}   // namespace hodge

#endif
