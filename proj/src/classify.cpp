#include "sullivan/classify.hpp"

#include <algorithm>
#include <map>

#include "sullivan/cohomology.hpp"

namespace sullivan {

namespace {

// Every generator's differential involves only generators already listed,
// for some listing order.
bool well_ordered(const SullivanModel& model)
{
    const auto& gens = model.generators();
    std::vector<bool> placed(gens.size(), false);
    std::size_t count = 0;
    bool progress = true;
    auto is_placed = [&](GeneratorId id) { return placed[static_cast<std::size_t>(id)]; };
    while (progress && count < gens.size()) {
        progress = false;
        for (const auto& g : gens) {
            if (is_placed(g.id))
                continue;
            bool ok = true;
            for (const auto& [m, c] : model.d(g.id).terms())
                ok = ok && m.only(is_placed);
            if (ok) {
                placed[static_cast<std::size_t>(g.id)] = true;
                ++count;
                progress = true;
            }
        }
    }
    return count == gens.size();
}

} // namespace


std::optional<TwoStageData> two_stage_decompose(const SullivanModel& model)
{
    const auto& gens = model.generators();
    TwoStageData data;
    std::vector<bool> in_u(gens.size(), false);
    for (const auto& g : gens) {
        if (model.d(g.id).is_zero()) {
            data.u.push_back(g.id);
            in_u[static_cast<std::size_t>(g.id)] = true;
        }
        else {
            data.w.push_back(g.id);
        }
    }
    auto is_u = [&](GeneratorId id) { return in_u[static_cast<std::size_t>(id)]; };

    for (auto id : data.w)
        for (const auto& [m, c] : model.d(id).terms())
            if (!m.only(is_u))
                return std::nullopt;
    data.dw_in_lambda_u = true;
    data.dim_u = static_cast<int>(data.u.size());
    data.dim_w = static_cast<int>(data.w.size());

    auto squares = wordlength_monomials(gens, data.u, 2);
    data.dim_lambda2_u = static_cast<int>(squares.size());

    bool quadratic = true;
    for (auto id : data.w)
        if (model.d(id).min_wordlength() != 2 || model.d(id).max_wordlength() != 2)
            quadratic = false;

    if (quadratic && data.dim_w == data.dim_lambda2_u) {
        // Square matrix of d : span(W) -> Λ²U over the monomial basis.
        std::map<Monomial, std::size_t> row_of;
        for (std::size_t i = 0; i < squares.size(); ++i)
            row_of.emplace(squares[i], i);
        SparseMatrix m;
        m.rows = squares.size();
        for (auto id : data.w) {
            std::vector<std::pair<std::size_t, Rational>> col;
            for (const auto& [mono, c] : model.d(id).terms())
                col.emplace_back(row_of.at(mono), c);
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            m.columns.push_back(std::move(col));
        }
        data.square_iso = rank(m) == squares.size();
    }
    return data;
}

ClassificationReport classify(const SullivanModel& model)
{
    const auto& gens = model.generators();
    ClassificationReport r;
    r.dim_v = model.dim_v();
    r.dim_v_even = model.dim_v_even();
    r.dim_v_odd = model.dim_v_odd();
    r.p = r.dim_v_odd - r.dim_v_even;
    r.simply_connected = model.simply_connected();
    r.homogeneous_length = homogeneous_length(model);
    r.coformal = r.homogeneous_length == 2;
    r.two_stage = two_stage_decompose(model);

    auto is_even = [&](GeneratorId id) { return gens[id].even(); };

    bool d_even_zero = true;
    bool odd_in_lambda_even = true;
    bool odd_has_even_factor = true;
    for (const auto& g : gens) {
        const auto& dg = model.d(g.id);
        if (g.even()) {
            if (!dg.is_zero())
                d_even_zero = false;
            continue;
        }
        for (const auto& [m, c] : dg.terms()) {
            if (!m.only(is_even))
                odd_in_lambda_even = false;
            bool any_even = false;
            for (const auto& f : m.factors())
                any_even = any_even || is_even(f.gen);
            if (!any_even)
                odd_has_even_factor = false;
        }
    }
    r.pure = d_even_zero && odd_in_lambda_even;
    r.hyperelliptic = d_even_zero && odd_has_even_factor;

    bool all_degree_one = true;
    for (const auto& g : gens)
        all_degree_one = all_degree_one && g.degree == 1;
    r.nilmanifold_type = model.flags().nilpotent && all_degree_one && well_ordered(model);
    return r;
}

} // namespace sullivan
