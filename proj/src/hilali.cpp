#include "sullivan/hilali.hpp"

#include <stdexcept>

#include "sullivan/constructors.hpp"
#include "sullivan/dsl.hpp"

namespace sullivan {

const char* to_string(CheckId id)
{
    switch (id) {
    case CheckId::P1: return "P1";
    case CheckId::P2Endpoint: return "P2-endpoint";
    case CheckId::P3: return "P3";
    case CheckId::P4: return "P4";
    case CheckId::P5: return "P5";
    case CheckId::P6: return "P6";
    case CheckId::P7: return "P7";
    }
    return "?";
}

const char* to_string(Applicability a)
{
    switch (a) {
    case Applicability::Applicable: return "APPLICABLE";
    case Applicability::Informative: return "INFORMATIVE";
    case Applicability::NotApplicable: return "NOT_APPLICABLE";
    case Applicability::Unknown: return "UNKNOWN";
    }
    return "?";
}

bool PropositionCheck::all_satisfied() const
{
    for (const auto& c : claims)
        if (!c.satisfied)
            return false;
    return true;
}

std::int64_t pow2(int e)
{
    if (e < 0 || e > kMaxExponent)
        throw std::overflow_error("2^" + std::to_string(e) + " is outside the supported range");
    return std::int64_t{1} << e;
}

namespace {

BoundClaim at_least(std::string description, std::int64_t lhs, std::int64_t rhs)
{
    return {std::move(description), lhs, rhs, Relation::GreaterEqual, lhs >= rhs};
}

BoundClaim equal(std::string description, std::int64_t lhs, std::int64_t rhs)
{
    return {std::move(description), lhs, rhs, Relation::Equal, lhs == rhs};
}

PropositionCheck not_applicable(CheckId id, std::string why)
{
    PropositionCheck c;
    c.id = id;
    c.applicability = Applicability::NotApplicable;
    c.premise_note = std::move(why);
    return c;
}

void wordlength_claims(PropositionCheck& c, const BigradedBettiTable& bigraded, int e)
{
    for (int w = 0; w <= e; ++w)
        c.claims.push_back(at_least("H_w nonzero for w = 0..e (w = " + std::to_string(w) + ")", bigraded.total(w), 1));
}

} // namespace

PropositionCheck check_prop1(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes)
{
    if (!classes.nilmanifold_type)
        return not_applicable(CheckId::P1, "not a nilmanifold-type model");

    PropositionCheck c;
    c.id = CheckId::P1;
    c.applicability = Applicability::Applicable;
    const int n = table.observed_fd;
    c.values.emplace_back("formal_dimension", n);
    for (int i = 1; i <= n - 1; ++i)
        c.claims.push_back(at_least("b_i >= 2 for 1 <= i <= n-1 (i = " + std::to_string(i) + ")", table.at(i), 2));
    c.claims.push_back(at_least("dim H >= 2 fd", table.total, 2 * std::int64_t{n}));
    c.claims.push_back(at_least("fd >= dim V", n, model.dim_v()));
    c.claims.push_back(at_least("dim H >= dim V", table.total, model.dim_v()));
    return c;
}

PropositionCheck check_prop2_endpoint(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes)
{
    if (!classes.homogeneous_length)
        return not_applicable(CheckId::P2Endpoint, "differential is not of homogeneous length");
    PropositionCheck c;
    c.id = CheckId::P2Endpoint;
    c.applicability = Applicability::Unknown;
    c.premise_note = "odd-degree rational Hurewicz condition is not computable here";
    c.values.emplace_back("homogeneous_length", *classes.homogeneous_length);
    c.claims.push_back(at_least("dim H >= dim V", table.total, model.dim_v()));
    return c;
}

PropositionCheck check_prop3(const SullivanModel& model, const BettiTable& table, const BigradedBettiTable* bigraded)
{
    auto l = homogeneous_length(model);
    if (!l || bigraded == nullptr)
        return not_applicable(CheckId::P3, "differential is not of homogeneous length");

    PropositionCheck c;
    c.id = CheckId::P3;
    c.applicability = *l >= 3 ? Applicability::Applicable : Applicability::Informative;
    if (*l < 3)
        c.premise_note = "homogeneous length 2 < 3; evaluated for information";
    const int e = model.dim_v_odd() + (*l - 2) * model.dim_v_even();
    c.values.emplace_back("homogeneous_length", *l);
    c.values.emplace_back("e", e);
    wordlength_claims(c, *bigraded, e);
    c.claims.push_back(at_least("dim H >= e", table.total, e));
    c.claims.push_back(at_least("e >= dim V", e, model.dim_v()));
    return c;
}

PropositionCheck check_prop4(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes,
                             const BigradedBettiTable* bigraded)
{
    if (!classes.coformal)
        return not_applicable(CheckId::P4, "not coformal");
    if (model.dim_v_even() != 0)
        return not_applicable(CheckId::P4, "V^even is nonzero");
    if (bigraded == nullptr)
        throw std::invalid_argument("check_prop4 needs the wordlength table of a coformal model");

    PropositionCheck c;
    c.id = CheckId::P4;
    c.applicability = Applicability::Applicable;
    const int e = model.dim_v_odd();
    c.values.emplace_back("e", e);
    wordlength_claims(c, *bigraded, e);
    c.claims.push_back(at_least("dim H >= dim V", table.total, model.dim_v()));
    return c;
}

PropositionCheck check_prop6(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes)
{
    if (!classes.hyperelliptic)
        return not_applicable(CheckId::P6, "not hyperelliptic");
    if (classes.p < 0)
        return not_applicable(CheckId::P6, "p = dim V^odd - dim V^even is negative");

    PropositionCheck c;
    c.id = CheckId::P6;
    if (model.flags().formal) {
        c.applicability = Applicability::Applicable;
    }
    else {
        c.applicability = Applicability::Informative;
        c.premise_note = "formality not asserted; evaluated for information";
    }
    c.values.emplace_back("p", classes.p);
    c.values.emplace_back("dim_V_even", classes.dim_v_even);
    c.claims.push_back(at_least("dim H >= 2^p", table.total, pow2(classes.p)));
    c.claims.push_back(at_least("dim H >= dim V", table.total, model.dim_v()));
    c.notes.push_back(classes.pure ? "pure" : "non-pure");
    return c;
}

PropositionCheck check_prop7(const SullivanModel& model, const BettiTable& table, const ClassificationReport& classes)
{
    if (!classes.two_stage)
        return not_applicable(CheckId::P7, "not two-stage");
    if (model.dim_v_even() != 0)
        return not_applicable(CheckId::P7, "V^even is nonzero");
    const auto& ts = *classes.two_stage;
    if (!ts.square_iso)
        return not_applicable(CheckId::P7, "d : W -> Lambda^2 U is not an isomorphism");

    PropositionCheck c;
    c.id = CheckId::P7;
    c.applicability = Applicability::Applicable;
    const std::int64_t closed_form = std::int64_t{ts.dim_u} * (ts.dim_u + 1) / 2;
    c.values.emplace_back("dim_U", ts.dim_u);
    c.values.emplace_back("dim_W", ts.dim_w);
    c.values.emplace_back("dim_Lambda2U", ts.dim_lambda2_u);
    c.values.emplace_back("closed_form_n(n+1)/2", closed_form);
    if (closed_form != ts.dim_lambda2_u)
        c.notes.push_back("closed form n(n+1)/2 = " + std::to_string(closed_form) +
                          " differs from computed dim Lambda^2 U = " + std::to_string(ts.dim_lambda2_u));
    c.claims.push_back(at_least("dim H >= 2^dim W", table.total, pow2(ts.dim_w)));
    c.claims.push_back(at_least("dim H >= dim V", table.total, model.dim_v()));
    return c;
}

PropositionCheck check_prop5(const SullivanModel& a, const SullivanModel& b, const CohomologyOptions& options)
{
    auto product = validate(constructors::tensor(a.spec(), b.spec()));
    CohomologyOptions opts = options;
    opts.max_degree.reset();
    auto ta = cohomology_table(a, opts);
    auto tb = cohomology_table(b, opts);
    auto tp = cohomology_table(product, opts);
    bool elliptic = ellipticity_verdict(a, ta).elliptic() && ellipticity_verdict(b, tb).elliptic();

    PropositionCheck c;
    c.id = CheckId::P5;
    c.applicability = elliptic ? Applicability::Applicable : Applicability::Informative;
    if (!elliptic)
        c.premise_note = "a factor is not elliptic; truncated totals need not multiply";
    c.values.emplace_back("dim_H_a", ta.total);
    c.values.emplace_back("dim_H_b", tb.total);
    c.values.emplace_back("dim_H_product", tp.total);
    c.claims.push_back(equal("dim H(A x B) = dim H(A) dim H(B)", tp.total, ta.total * tb.total));
    c.claims.push_back(equal("dim V(A x B) = dim V(A) + dim V(B)", product.dim_v(), a.dim_v() + b.dim_v()));
    if (ta.total >= a.dim_v() && tb.total >= b.dim_v())
        c.claims.push_back(at_least("factors satisfy dim H >= dim V, so does the product", tp.total, product.dim_v()));
    return c;
}

ConjectureReport check_hilali(const SullivanModel& model, const BettiTable& table, const CohomologyOptions& options)
{
    return check_hilali(model, table, classify(model), options);
}

ConjectureReport check_hilali(const SullivanModel& model, const BettiTable& table,
                              const ClassificationReport& classes, const CohomologyOptions& options)
{
    ConjectureReport r;
    r.dim_v = model.dim_v();
    r.dim_h = table.total;
    r.margin = r.dim_h - r.dim_v;
    r.holds = r.margin >= 0;
    r.ellipticity = ellipticity_verdict(model, table);
    r.out_of_hypothesis = !r.ellipticity.elliptic();

    if (classes.homogeneous_length) {
        CohomologyOptions opts = options;
        opts.max_degree = table.max_degree_computed;
        r.bigraded = wordlength_cohomology(model, opts, table);
    }
    const BigradedBettiTable* bg = r.bigraded ? &*r.bigraded : nullptr;

    r.checks.push_back(check_prop1(model, table, classes));
    r.checks.push_back(check_prop2_endpoint(model, table, classes));
    r.checks.push_back(check_prop3(model, table, bg));
    r.checks.push_back(check_prop4(model, table, classes, bg));
    r.checks.push_back(check_prop6(model, table, classes));
    r.checks.push_back(check_prop7(model, table, classes));

    if (!r.out_of_hypothesis) {
        std::string text;
        auto model_text = [&] {
            if (text.empty())
                text = dsl::serialize(model.spec());
            return text;
        };
        if (!r.holds)
            r.findings.push_back({"H", "dim H >= dim V", model_text()});
        for (const auto& c : r.checks) {
            if (c.applicability != Applicability::Applicable)
                continue;
            for (const auto& claim : c.claims)
                if (!claim.satisfied)
                    r.findings.push_back({to_string(c.id), claim.description, model_text()});
        }
    }
    return r;
}

} // namespace sullivan
