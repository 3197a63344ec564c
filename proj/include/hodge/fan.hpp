/**
 * Finite fans of nilpotent cones and their compatibility with a monodromy
 * group given by generators.
 */

#ifndef HODGE_FAN_HPP
#define HODGE_FAN_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>
#include "admissibility.hpp"

namespace hodge {

struct Fan
{
    std::vector<NilpotentCone> cones;

    /** Index of the cone equal to c, if any. */
    std::optional<std::size_t> find(const NilpotentCone& c) const
    {
        for (std::size_t i = 0; i < cones.size(); ++i)
            if (cones[i] == c)
                return i;
        return std::nullopt;
    }

    bool contains(const NilpotentCone& c) const { return find(c).has_value(); }
};

struct FanFailure
{
    int condition = 0;                  // 1 to 4
    std::vector<std::size_t> cones;     // indices into the fan
    std::string detail;
};

struct FanReport
{
    bool valid = true;
    std::vector<FanFailure> failures;
    std::vector<AdmissibilityReport> admissibility;     // one per cone, when checked

    bool fails(int condition) const
    {
        for (const auto& f : failures)
            if (f.condition == condition)
                return true;
        return false;
    }
};

struct FanSettings
{
    std::size_t samples = 8;
    std::uint64_t seed = 0;
    const HodgeData* lambda = nullptr;      // enables the g_Q membership check
};

/**
 * Conditions: (1) rational generators in g_Q, (2) closed under faces,
 * (3) pairwise intersections are faces of both, (4) sampled admissibility
 * relative to W.
 */
inline FanReport validate_fan(const Fan& fan, const IncreasingFiltration& w, const FanSettings& settings = {})
{
    FanReport report;
    auto add = [&](int cond, std::vector<std::size_t> idx, std::string detail) {
        report.valid = false;
        report.failures.push_back({cond, std::move(idx), std::move(detail)});
    };
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
    {
        const auto& c = fan.cones[i];
        if (c.matrix_size() != w.ambient_dim())
        {
            add(1, {i}, "cone matrices do not act on the weight-filtered space");
            continue;
        }
        if (settings.lambda)
            for (const auto& g : c.generators())
                if (!in_lie_algebra(g, *settings.lambda, Ring::Q))
                    add(1, {i}, "generator outside g_Q");
    }
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        for (const auto& f : fan.cones[i].faces())
            if (!fan.contains(f))
                add(2, {i}, "a face of dimension " + std::to_string(f.dim()) + " is missing");
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
        for (std::size_t j = i + 1; j < fan.cones.size(); ++j)
        {
            if (fan.cones[i].matrix_size() != fan.cones[j].matrix_size())
            {
                add(3, {i, j}, "cones of different matrix sizes");
                continue;
            }
            auto meet = intersect_cones(fan.cones[i], fan.cones[j]);
            if (!meet.is_face_of(fan.cones[i]))
                add(3, {i, j}, "intersection is not a face of the first cone");
            if (!meet.is_face_of(fan.cones[j]))
                add(3, {i, j}, "intersection is not a face of the second cone");
        }
    for (std::size_t i = 0; i < fan.cones.size(); ++i)
    {
        if (fan.cones[i].matrix_size() != w.ambient_dim())
        {
            report.admissibility.emplace_back();
            continue;
        }
        report.admissibility.push_back(check_admissibility(fan.cones[i], w, settings.samples, settings.seed));
        if (!report.admissibility.back().exists_everywhere_sampled)
            add(4, {i}, report.admissibility.back().exists_at_all_samples ? "M(N, W) depends on the sample"
                                                                          : "M(N, W) does not exist at a sample");
    }
    return report;
}

/** A subgroup of G_Z given by generators, with an optional membership oracle. */
struct MonodromyGroup
{
    std::vector<RMatrix> generators;
    std::function<bool(const RMatrix&)> oracle;

    /** Every generator must be integral and in G_Z for Λ. */
    bool valid_for(const HodgeData& lambda) const
    {
        for (const auto& g : generators)
            if (!in_group(g, lambda, Ring::Z))
                return false;
        return true;
    }
};

struct CompatibilityReport
{
    bool compatible = true;
    std::size_t elements_checked = 0;
    std::size_t word_length = 0;
    std::optional<RMatrix> witness_gamma;
    std::optional<std::size_t> witness_cone;
};

/** Checks Ad(γ)σ ∈ Σ for all γ in the word ball of the given radius. */
inline CompatibilityReport check_compatibility(const Fan& fan, const MonodromyGroup& group, std::size_t word_length_bound)
{
    CompatibilityReport report;
    report.word_length = word_length_bound;
    if (fan.cones.empty())
        return report;
    const std::size_t n = fan.cones.front().matrix_size();
    std::vector<RMatrix> letters;
    for (const auto& g : group.generators)
    {
        auto gi = inverse(g);
        if (!gi)
            fail(ErrorKind::InvalidInput, "monodromy generator is not invertible");
        letters.push_back(g);
        letters.push_back(*gi);
    }
    std::vector<RMatrix> ball{RMatrix::identity(n)};
    std::vector<RMatrix> frontier = ball;
    for (std::size_t len = 0; len < word_length_bound; ++len)
    {
        std::vector<RMatrix> next;
        for (const auto& w : frontier)
            for (const auto& l : letters)
            {
                RMatrix g = w * l;
                if (std::find(ball.begin(), ball.end(), g) == ball.end())
                {
                    ball.push_back(g);
                    next.push_back(std::move(g));
                }
            }
        frontier = std::move(next);
    }
    for (const auto& gamma : ball)
    {
        if (group.oracle && !group.oracle(gamma))
            fail(ErrorKind::InvalidInput, "word in the generators rejected by the membership oracle");
        ++report.elements_checked;
        for (std::size_t i = 0; i < fan.cones.size(); ++i)
            if (!fan.contains(fan.cones[i].adjoint(gamma)))
            {
                report.compatible = false;
                report.witness_gamma = gamma;
                report.witness_cone = i;
                return report;
            }
    }
    return report;
}

}   // namespace hodge

#endif
