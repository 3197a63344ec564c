/**
 * Brute-force oracle for the centred monodromy filtration: search all
 * monotone filtrations whose steps lie in the lattice generated by kernels
 * and images of powers of N under sum and intersection, keeping those that
 * satisfy both characterizing properties.
 */

#ifndef HODGE_TESTS_MONODROMY_ORACLE_HPP
#define HODGE_TESTS_MONODROMY_ORACLE_HPP

#include <map>
#include <vector>
#include "hodge/matrix.hpp"
#include "hodge/subspace.hpp"

namespace hodge::test_support {

inline std::vector<RSubspace> kernel_image_lattice(const RMatrix& n)
{
    const std::size_t d = n.rows();
    std::vector<RSubspace> lattice;
    auto add_unique = [&](const RSubspace& s) {
        for (const auto& t : lattice)
            if (t == s)
                return false;
        lattice.push_back(s);
        return true;
    };
    RMatrix p = RMatrix::identity(d);
    for (std::size_t j = 0; j <= d; ++j)
    {
        add_unique(kernel(p));
        add_unique(image(p));
        p = p * n;
    }
    bool grew = true;
    while (grew)
    {
        grew = false;
        const std::size_t size = lattice.size();
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = a + 1; b < size; ++b)
            {
                grew |= add_unique(sum(lattice[a], lattice[b]));
                grew |= add_unique(intersection(lattice[a], lattice[b]));
            }
    }
    return lattice;
}

/** All filtrations found by the search, as step lists indexed from w - d. */
inline std::vector<std::vector<RSubspace>> oracle_monodromy_solutions(const RMatrix& n, int w)
{
    const std::size_t d = n.rows();
    const int lo = w - static_cast<int>(d), hi = w + static_cast<int>(d);
    const auto lattice = kernel_image_lattice(n);
    std::vector<RMatrix> powers{RMatrix::identity(d)};
    for (std::size_t j = 1; j <= d + 1; ++j)
        powers.push_back(powers.back() * n);

    std::vector<std::vector<RSubspace>> solutions;
    std::vector<RSubspace> chosen;      // chosen[i] is M_{lo + i}
    auto at = [&](int k) {
        if (k < lo)
            return RSubspace::zero(d);
        return chosen[static_cast<std::size_t>(k - lo)];
    };

    auto recurse = [&](auto&& self, int k) -> void {
        if (k > hi)
        {
            solutions.push_back(chosen);
            return;
        }
        for (const auto& cand : lattice)
        {
            if (k == lo && !cand.is_zero() && d > 0)
                continue;
            if (k == hi && !cand.is_full())
                continue;
            if (!cand.contains(at(k - 1)))
                continue;
            if (!at(k - 2).contains(image(n, cand)))
                continue;
            chosen.push_back(cand);
            bool ok = true;
            if (k > w)
            {
                const int j = k - w;
                const std::size_t top_dim = cand.dim() - at(k - 1).dim();
                const std::size_t bottom_dim = at(w - j).dim() - at(w - j - 1).dim();
                ok = top_dim == bottom_dim &&
                     sum(image(powers[static_cast<std::size_t>(j)], cand), at(w - j - 1)) == at(w - j);
            }
            if (ok)
                self(self, k + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, lo);
    return solutions;
}

}   // namespace hodge::test_support

#endif
