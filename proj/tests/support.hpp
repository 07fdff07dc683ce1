#pragma once

// Shared helpers for the test binaries: corpus access and small random
// polynomials over a fixed generator set.

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/dsl.hpp"

namespace testing {

inline std::vector<std::filesystem::path> corpus_files()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(SULLIVAN_CORPUS_DIR))
        if (e.path().extension() == ".sul")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<sullivan::ModelSpec> corpus_specs()
{
    std::vector<sullivan::ModelSpec> out;
    for (const auto& p : corpus_files())
        out.push_back(sullivan::dsl::parse_file(p.string()));
    return out;
}

inline int uniform(std::mt19937_64& rng, int lo, int hi)
{
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// A random monomial of degree exactly k, or the zero polynomial if none exists.
inline sullivan::Polynomial random_homogeneous(const sullivan::GeneratorSet& gens, int k, std::mt19937_64& rng,
                                               int terms = 3)
{
    auto b = sullivan::basis(gens, k);
    sullivan::Polynomial p;
    if (b.empty())
        return p;
    for (int i = 0; i < terms; ++i)
        p.add_term(b[rng() % b.size()], sullivan::Rational(uniform(rng, -4, 4), uniform(rng, 1, 3)));
    return p;
}

inline sullivan::GeneratorSet mixed_generators()
{
    sullivan::GeneratorSet g;
    g.add("x", 2);
    g.add("a", 3);
    g.add("b", 3);
    g.add("y", 4);
    g.add("c", 5);
    return g;
}

} // namespace testing
