#include "sullivan/model.hpp"

namespace sullivan {

namespace {
const Polynomial kZero;
}

GeneratorId ModelSpec::add_generator(std::string gen_name, int degree)
{
    auto id = generators.add(std::move(gen_name), degree);
    differential.resize(generators.size());
    return id;
}

void ModelSpec::set_differential(GeneratorId id, Polynomial image)
{
    generators.at(id);
    differential.resize(generators.size());
    differential[static_cast<std::size_t>(id)] = std::move(image);
}

const Polynomial& ModelSpec::d(GeneratorId id) const
{
    auto i = static_cast<std::size_t>(id);
    return i < differential.size() ? differential[i] : kZero;
}

const char* to_string(ViolationCode code)
{
    switch (code) {
    case ViolationCode::BadDegree: return "BAD_DEGREE";
    case ViolationCode::UnknownGenerator: return "UNKNOWN_GENERATOR";
    case ViolationCode::DegreeMismatch: return "DEGREE_MISMATCH";
    case ViolationCode::NotMinimal: return "NOT_MINIMAL";
    case ViolationCode::DSquaredNonzero: return "D_SQUARED_NONZERO";
    case ViolationCode::NotSimplyConnected: return "NOT_SIMPLY_CONNECTED";
    }
    return "?";
}

namespace {

std::string summarize(const std::vector<Violation>& violations)
{
    std::string s = "invalid model:";
    for (const auto& v : violations)
        s += std::string(" ") + to_string(v.code) + " (" + v.message + ");";
    return s;
}

} // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations))
{
}

bool ValidationError::has(ViolationCode code) const
{
    for (const auto& v : violations_)
        if (v.code == code)
            return true;
    return false;
}

std::vector<Violation> find_violations(const ModelSpec& spec)
{
    std::vector<Violation> out;
    const auto& gens = spec.generators;

    bool degrees_ok = true;
    for (const auto& g : gens) {
        if (g.degree < 1) {
            out.push_back({ViolationCode::BadDegree, g.id, "generator " + g.name + " has degree " + std::to_string(g.degree)});
            degrees_ok = false;
        }
    }
    if (spec.differential.size() > gens.size())
        out.push_back({ViolationCode::UnknownGenerator, -1, "differential assigned to an undeclared generator"});

    bool ids_ok = true;
    for (const auto& g : gens) {
        try {
            check_generators(gens, spec.d(g.id));
        }
        catch (const AlgebraError&) {
            out.push_back({ViolationCode::UnknownGenerator, g.id, "d" + g.name + " uses an undeclared generator"});
            ids_ok = false;
        }
    }
    if (!ids_ok || !degrees_ok)
        return out;

    for (const auto& g : gens) {
        if (g.degree == 1 && !spec.flags.nilpotent)
            out.push_back({ViolationCode::NotSimplyConnected, g.id,
                           "generator " + g.name + " has degree 1 but the model is not flagged nilpotent"});

        const auto& dg = spec.d(g.id);
        if (dg.is_zero())
            continue;
        for (const auto& [m, c] : dg.terms()) {
            if (m.degree(gens) != g.degree + 1) {
                out.push_back({ViolationCode::DegreeMismatch, g.id,
                               "d" + g.name + " has a term of degree " + std::to_string(m.degree(gens)) +
                                   ", expected " + std::to_string(g.degree + 1)});
                break;
            }
        }
        if (dg.min_wordlength() < 2)
            out.push_back({ViolationCode::NotMinimal, g.id,
                           "d" + g.name + " has a term of wordlength " + std::to_string(dg.min_wordlength())});
        if (!apply_d(spec, dg).is_zero())
            out.push_back({ViolationCode::DSquaredNonzero, g.id, "d(d" + g.name + ") is nonzero"});
    }
    return out;
}

SullivanModel::SullivanModel(ModelSpec spec) : spec_(std::move(spec))
{
    spec_.differential.resize(spec_.generators.size());
    for (const auto& g : spec_.generators) {
        if (g.even())
            ++dim_even_;
        if (g.degree < 2)
            simply_connected_ = false;
    }
}

SullivanModel validate(ModelSpec spec)
{
    auto violations = find_violations(spec);
    if (!violations.empty())
        throw ValidationError(std::move(violations));
    return SullivanModel(std::move(spec));
}

Polynomial apply_d(const ModelSpec& spec, const Monomial& m)
{
    const auto& gens = spec.generators;
    const auto& factors = m.factors();
    Polynomial out;

    // d(P f^e S) contributes (-1)^{|P|} P * d(f^e) * S, and for even f,
    // d(f^e) = e f^{e-1} df. Odd factors have e = 1.
    int prefix_degree = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        const auto& g = gens.at(f.gen);
        const auto& dg = spec.d(f.gen);
        if (!dg.is_zero()) {
            std::vector<Factor> rest;
            rest.reserve(factors.size());
            for (std::size_t j = 0; j < factors.size(); ++j) {
                if (j != i)
                    rest.push_back(factors[j]);
                else if (f.exp > 1)
                    rest.push_back({f.gen, f.exp - 1});
            }
            Monomial without = Monomial::from_canonical(std::move(rest));
            Rational scale = f.exp;
            if (g.odd() && prefix_degree % 2 != 0)
                scale = -scale;
            if (g.odd()) {
                // |df| is even, so P df S = df (P S).
                out += multiply(gens, dg, Polynomial(without)) * scale;
            }
            else {
                // P f^{e-1} df S = (-1)^{|S|} (P f^{e-1} S) df since |df| is odd.
                int suffix_degree = 0;
                for (std::size_t j = i + 1; j < factors.size(); ++j)
                    suffix_degree += factors[j].exp * gens[factors[j].gen].degree;
                if ((prefix_degree + suffix_degree) % 2 != 0)
                    scale = -scale;
                out += multiply(gens, Polynomial(without), dg) * scale;
            }
        }
        prefix_degree += f.exp * g.degree;
    }
    return out;
}

Polynomial apply_d(const ModelSpec& spec, const Polynomial& p)
{
    check_generators(spec.generators, p);
    Polynomial out;
    for (const auto& [m, c] : p.terms()) {
        if (m.is_unit())
            continue;
        out += apply_d(spec, m) * c;
    }
    return out;
}

std::optional<int> homogeneous_length(const SullivanModel& model)
{
    std::optional<int> length;
    for (const auto& g : model.generators()) {
        const auto& dg = model.d(g.id);
        if (dg.is_zero())
            continue;
        int lo = dg.min_wordlength(), hi = dg.max_wordlength();
        if (lo != hi || (length && *length != lo))
            return std::nullopt;
        length = lo;
    }
    return length.value_or(2);
}

} // namespace sullivan
