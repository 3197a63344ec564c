/**
 * Sampled admissibility: existence of M(N, W) at rational interior points of
 * a nilpotent cone, and independence of the result from the sample.
 *
 * The verdict is evidence at the sampled points only.
 */

#ifndef HODGE_ADMISSIBILITY_HPP
#define HODGE_ADMISSIBILITY_HPP

#include <cstdint>
#include <optional>
#include "cone.hpp"
#include "monodromy.hpp"

namespace hodge {

struct AdmissibilityReport
{
    /** True when M(N, W) exists at every sample and is the same filtration throughout. */
    bool exists_everywhere_sampled = false;
    bool exists_at_all_samples = false;
    bool independent_of_sample = false;
    /** The zero cone: nothing to sample, admissible with M = W. */
    bool vacuous = false;
    std::optional<WeightFiltration> filtration;
    std::size_t samples_used = 0;
    std::optional<RMatrix> failing_sample;
};

inline AdmissibilityReport check_admissibility(const NilpotentCone& sigma, const IncreasingFiltration& w,
                                               std::size_t sample_count = 8, std::uint64_t seed = 0)
{
    AdmissibilityReport report;
    if (sigma.is_zero())
    {
        report.vacuous = true;
        report.exists_everywhere_sampled = report.exists_at_all_samples = report.independent_of_sample = true;
        report.filtration = WeightFiltration{w, std::nullopt, true};
        return report;
    }
    if (sample_count == 0)
        fail(ErrorKind::InvalidInput, "admissibility needs at least one sample");
    report.exists_at_all_samples = true;
    report.independent_of_sample = true;
    for (const auto& n : sample_interior(sigma, sample_count, seed))
    {
        ++report.samples_used;
        auto m = relative_monodromy_filtration(n, w);
        if (!m)
        {
            report.exists_at_all_samples = false;
            report.failing_sample = n;
            break;
        }
        if (!report.filtration)
            report.filtration = m;
        else if (!(report.filtration->filtration == m->filtration))
        {
            report.independent_of_sample = false;
            report.failing_sample = n;
            break;
        }
    }
    report.exists_everywhere_sampled = report.exists_at_all_samples && report.independent_of_sample;
    if (!report.exists_everywhere_sampled)
        report.filtration.reset();
    return report;
}

}   // namespace hodge

#endif
