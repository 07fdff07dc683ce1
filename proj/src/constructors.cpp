#include "sullivan/constructors.hpp"

#include <algorithm>
#include <random>

namespace sullivan::constructors {

namespace {

Polynomial gen_power(GeneratorId id, int exp, Rational c = 1)
{
    return Polynomial(Monomial::generator(id, exp), std::move(c));
}

Polynomial product(const GeneratorSet& gens, GeneratorId a, GeneratorId b)
{
    return multiply(gens, gen_power(a, 1), gen_power(b, 1));
}

// mt19937_64 output is fully specified by the standard, unlike the
// distributions, so draws go through this to stay reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    int uniform(int lo, int hi)
    {
        if (hi <= lo)
            return lo;
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    bool coin() { return (engine_() & 1U) != 0; }

    int nonzero(int bound)
    {
        int v = uniform(1, bound);
        return coin() ? v : -v;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace

ModelSpec empty(std::string name)
{
    ModelSpec spec;
    spec.name = std::move(name);
    spec.flags.formal = true;
    return spec;
}

ModelSpec sphere(int n)
{
    if (n < 2)
        throw std::invalid_argument("sphere needs n >= 2");
    ModelSpec spec;
    spec.name = "s" + std::to_string(n);
    auto x = spec.add_generator("x", n);
    if (n % 2 == 0) {
        auto y = spec.add_generator("y", 2 * n - 1);
        spec.set_differential(y, gen_power(x, 2));
    }
    spec.flags.formal = true;
    return spec;
}

ModelSpec projective(int n)
{
    if (n < 1)
        throw std::invalid_argument("projective space needs n >= 1");
    ModelSpec spec;
    spec.name = "cp" + std::to_string(n);
    auto x = spec.add_generator("x", 2);
    auto y = spec.add_generator("y", 2 * n + 1);
    spec.set_differential(y, gen_power(x, n + 1));
    spec.flags.formal = true;
    return spec;
}

ModelSpec torus(int n)
{
    if (n < 1)
        throw std::invalid_argument("torus needs n >= 1");
    ModelSpec spec;
    spec.name = "t" + std::to_string(n);
    for (int i = 1; i <= n; ++i)
        spec.add_generator("x" + std::to_string(i), 1);
    spec.flags.nilpotent = true;
    spec.flags.formal = true;
    return spec;
}

ModelSpec heisenberg()
{
    ModelSpec spec;
    spec.name = "heisenberg";
    auto x = spec.add_generator("x", 1);
    auto y = spec.add_generator("y", 1);
    auto z = spec.add_generator("z", 1);
    spec.set_differential(z, product(spec.generators, x, y));
    spec.flags.nilpotent = true;
    return spec;
}

ModelSpec two_stage(const std::vector<int>& u_degrees)
{
    for (int deg : u_degrees)
        if (deg < 1 || deg % 2 == 0)
            throw std::invalid_argument("two_stage needs odd U degrees");
    ModelSpec spec;
    spec.name = "two_stage";
    std::vector<GeneratorId> u;
    for (std::size_t i = 0; i < u_degrees.size(); ++i) {
        spec.name += "_" + std::to_string(u_degrees[i]);
        u.push_back(spec.add_generator("u" + std::to_string(i + 1), u_degrees[i]));
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            auto w = spec.add_generator("w" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                        u_degrees[i] + u_degrees[j] - 1);
            spec.set_differential(w, product(spec.generators, u[i], u[j]));
        }
    }
    if (std::any_of(u_degrees.begin(), u_degrees.end(), [](int d) { return d == 1; }))
        spec.flags.nilpotent = true;
    return spec;
}

ModelSpec tensor(const ModelSpec& a, const ModelSpec& b)
{
    ModelSpec out;
    out.name = a.name + "_x_" + b.name;
    for (const auto& g : a.generators)
        out.add_generator("a_" + g.name, g.degree);
    const auto offset = static_cast<GeneratorId>(a.generators.size());
    for (const auto& g : b.generators)
        out.add_generator("b_" + g.name, g.degree);

    for (const auto& g : a.generators)
        out.set_differential(g.id, a.d(g.id));
    for (const auto& g : b.generators) {
        Polynomial shifted;
        for (const auto& [m, c] : b.d(g.id).terms()) {
            std::vector<Factor> factors = m.factors();
            for (auto& f : factors)
                f.gen += offset;
            shifted.add_term(Monomial::from_canonical(std::move(factors)), c);
        }
        out.set_differential(g.id + offset, std::move(shifted));
    }
    out.flags.formal = a.flags.formal && b.flags.formal;
    out.flags.nilpotent = a.flags.nilpotent || b.flags.nilpotent;
    return out;
}

ModelSpec random_two_stage(std::uint64_t seed, RandomCaps caps, bool square_iso)
{
    if (caps.max_generators < 3 || caps.max_degree < 5)
        throw std::invalid_argument("random_two_stage needs at least 3 generators and degree 5");
    Rng rng(seed);
    const int top_u_degree = caps.max_degree >= 9 ? 5 : 3;

    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        ModelSpec spec;
        spec.name = std::string(square_iso ? "two_stage_iso_" : "two_stage_") + std::to_string(seed);

        int n_u = square_iso ? rng.uniform(2, caps.max_generators >= 6 ? 3 : 2)
                             : rng.uniform(2, std::min(4, caps.max_generators - 1));
        std::vector<GeneratorId> u;
        for (int i = 0; i < n_u; ++i) {
            int deg = rng.coin() ? 3 : top_u_degree;
            u.push_back(spec.add_generator("u" + std::to_string(i + 1), deg));
        }
        auto squares = wordlength_monomials(spec.generators, u, 2);
        const auto& gens = spec.generators;

        std::vector<Polynomial> images;
        if (square_iso) {
            // Triangular over same-degree pairs: invertible by construction.
            for (std::size_t i = 0; i < squares.size(); ++i) {
                Polynomial dw(squares[i], rng.nonzero(3));
                int deg = squares[i].degree(gens);
                for (std::size_t j = 0; j < i; ++j)
                    if (squares[j].degree(gens) == deg && rng.coin())
                        dw.add_term(squares[j], rng.nonzero(2));
                images.push_back(std::move(dw));
            }
        }
        else {
            int n_w = rng.uniform(1, std::min(3, caps.max_generators - n_u));
            for (int i = 0; i < n_w; ++i) {
                const auto& target = squares[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(squares.size()) - 1))];
                int deg = target.degree(gens);
                Polynomial dw(target, rng.nonzero(3));
                for (const auto& m : squares)
                    if (!(m == target) && m.degree(gens) == deg && rng.coin())
                        dw.add_term(m, rng.nonzero(2));
                images.push_back(std::move(dw));
            }
        }

        for (std::size_t i = 0; i < images.size(); ++i) {
            int deg = *images[i].homogeneous_degree(spec.generators) - 1;
            if (deg > caps.max_degree)
                continue;
            auto w = spec.add_generator("w" + std::to_string(i + 1), deg);
            spec.set_differential(w, images[i]);
        }
        if (square_iso && spec.generators.size() != u.size() + squares.size())
            continue;
        if (spec.generators.size() == u.size())
            continue;
        if (find_violations(spec).empty())
            return spec;
    }
    throw GenerationFailed("GENERATION_FAILED: random_two_stage seed " + std::to_string(seed));
}

ModelSpec random_pure(std::uint64_t seed, RandomCaps caps)
{
    if (caps.max_generators < 2 || caps.max_degree < 3)
        throw std::invalid_argument("random_pure needs at least 2 generators and degree 3");
    Rng rng(seed);

    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        ModelSpec spec;
        spec.name = "pure_" + std::to_string(seed);
        spec.flags.formal = false;

        int n_even = rng.uniform(1, std::min(2, caps.max_generators / 2));
        int n_odd = rng.uniform(n_even, std::min(caps.max_generators - n_even, n_even + 2));

        std::vector<GeneratorId> evens;
        for (int i = 0; i < n_even; ++i) {
            int deg = (caps.max_degree >= 7 && rng.uniform(0, 3) == 0) ? 4 : 2;
            evens.push_back(spec.add_generator("x" + std::to_string(i + 1), deg));
        }

        // The first n_even odd generators kill a power of "their" even
        // generator, which keeps most draws elliptic.
        std::vector<std::pair<int, Polynomial>> odd_images;
        for (int i = 0; i < n_odd; ++i) {
            int target_degree;
            Polynomial image;
            if (i < n_even) {
                int xdeg = spec.generators[evens[static_cast<std::size_t>(i)]].degree;
                int max_power = (caps.max_degree + 1) / xdeg;
                if (max_power < 2)
                    break;
                int power = rng.uniform(2, max_power);
                target_degree = power * xdeg;
                image = gen_power(evens[static_cast<std::size_t>(i)], power, rng.nonzero(2));
            }
            else {
                target_degree = rng.uniform(2, (caps.max_degree + 1) / 2) * 2;
            }
            for (int w = 2; w <= target_degree / 2; ++w) {
                for (const auto& m : wordlength_monomials(spec.generators, evens, w)) {
                    if (m.degree(spec.generators) != target_degree || image.coefficient(m) != 0)
                        continue;
                    if (rng.uniform(0, 2) == 0)
                        image.add_term(m, rng.nonzero(2));
                }
            }
            odd_images.emplace_back(target_degree - 1, std::move(image));
        }
        if (static_cast<int>(odd_images.size()) < n_even)
            continue;

        for (std::size_t i = 0; i < odd_images.size(); ++i) {
            auto y = spec.add_generator("y" + std::to_string(i + 1), odd_images[i].first);
            spec.set_differential(y, std::move(odd_images[i].second));
        }
        if (spec.generators.size() > static_cast<std::size_t>(caps.max_generators))
            continue;
        if (find_violations(spec).empty())
            return spec;
    }
    throw GenerationFailed("GENERATION_FAILED: random_pure seed " + std::to_string(seed));
}

std::optional<Family> parse_family(const std::string& name)
{
    for (auto f : {Family::Sphere, Family::Projective, Family::Torus, Family::Heisenberg, Family::TwoStage,
                   Family::PureRandom, Family::TwoStageRandom})
        if (name == to_string(f))
            return f;
    return std::nullopt;
}

const char* to_string(Family family)
{
    switch (family) {
    case Family::Sphere: return "sphere";
    case Family::Projective: return "projective";
    case Family::Torus: return "torus";
    case Family::Heisenberg: return "heisenberg";
    case Family::TwoStage: return "two-stage";
    case Family::PureRandom: return "pure-random";
    case Family::TwoStageRandom: return "two-stage-random";
    }
    return "?";
}

ModelSpec build(const FamilyParams& params)
{
    switch (params.family) {
    case Family::Sphere: return sphere(params.n);
    case Family::Projective: return projective(params.n);
    case Family::Torus: return torus(params.n);
    case Family::Heisenberg: return heisenberg();
    case Family::TwoStage: return two_stage(params.degrees.empty() ? std::vector<int>(static_cast<std::size_t>(params.n), 3) : params.degrees);
    case Family::PureRandom: return random_pure(params.seed, params.caps);
    case Family::TwoStageRandom: return random_two_stage(params.seed, params.caps, params.square_iso);
    }
    throw std::invalid_argument("unknown family");
}

} // namespace sullivan::constructors
