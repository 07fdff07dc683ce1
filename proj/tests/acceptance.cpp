// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails or runs longer than its time budget.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mutations.hpp"
#include "oracle/naive_cohomology.hpp"
#include "random_pool.hpp"
#include "sullivan/constructors.hpp"
#include "sullivan/dsl.hpp"
#include "sullivan/hilali.hpp"
#include "sullivan/report.hpp"
#include "support.hpp"

using namespace sullivan;
namespace c = sullivan::constructors;

namespace {

constexpr double kBudgetSeconds = 10.0;

/// Collects the reasons a criterion failed.
struct Verdict {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        if (!ok)
            failures.push_back(what);
    }
};

const PropositionCheck* find(const ConjectureReport& r, CheckId id)
{
    for (const auto& c : r.checks)
        if (c.id == id)
            return &c;
    return nullptr;
}

std::int64_t value(const PropositionCheck& c, const std::string& key)
{
    for (const auto& [k, v] : c.values)
        if (k == key)
            return v;
    return -1;
}

ConjectureReport check(const SullivanModel& m) { return check_hilali(m, cohomology_table(m)); }

std::int64_t binomial(int n, int k)
{
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

const std::vector<ModelSpec>& random_hundred()
{
    static const auto pool = testing::random_models(100, 2000);
    return pool;
}

// 1
void known_cohomology(Verdict& v)
{
    auto s3 = cohomology_table(validate(c::sphere(3)));
    v.expect(s3.total == 2, "sphere(3) total");
    auto s2 = cohomology_table(validate(c::sphere(2)));
    v.expect(s2.at(0) == 1 && s2.at(1) == 0 && s2.at(2) == 1 && s2.total == 2, "sphere(2) Betti (1,0,1)");
    for (int n = 1; n <= 4; ++n) {
        auto t = cohomology_table(validate(c::projective(n)));
        bool ok = t.total == n + 1;
        for (int i = 0; i <= n; ++i)
            ok = ok && t.at(2 * i) == 1;
        v.expect(ok, "projective(" + std::to_string(n) + ")");
    }
    for (int n = 1; n <= 5; ++n) {
        auto t = cohomology_table(validate(c::torus(n)));
        bool ok = true;
        for (int k = 0; k <= t.max_degree_computed; ++k)
            ok = ok && t.at(k) == (k <= n ? binomial(n, k) : 0);
        v.expect(ok, "torus(" + std::to_string(n) + ") binomial Betti numbers");
    }
    auto h = cohomology_table(validate(c::heisenberg()));
    v.expect(h.at(0) == 1 && h.at(1) == 2 && h.at(2) == 2 && h.at(3) == 1 && h.total == 6, "heisenberg (1,2,2,1)");
}

// 2
void oracle_equivalence(Verdict& v)
{
    auto specs = testing::corpus_specs();
    specs.insert(specs.end(), random_hundred().begin(), random_hundred().end());
    for (const auto& spec : specs) {
        auto m = validate(spec);
        auto table = cohomology_table(m);
        oracle::NaiveModel naive(spec);
        v.expect(table.betti == naive.betti_table(table.max_degree_computed), "Betti mismatch on " + spec.name);
    }
    v.expect(random_hundred().size() == 100, "random pool size");
}

// 3
void conjecture_holds(Verdict& v)
{
    auto specs = testing::corpus_specs();
    specs.insert(specs.end(), random_hundred().begin(), random_hundred().end());
    int elliptic = 0;
    for (const auto& spec : specs) {
        auto r = check(validate(spec));
        if (!r.ellipticity.elliptic())
            continue;
        ++elliptic;
        v.expect(r.holds && r.margin >= 0, "margin < 0 on " + spec.name);
        v.expect(r.findings.empty(), "finding on " + spec.name);
    }
    v.expect(elliptic > 100, "too few presumed elliptic models");
    auto s2 = check(validate(c::sphere(2)));
    v.expect(s2.margin == 0, "S^2 margin is not 0");
}

// 4
void prop1(Verdict& v)
{
    std::vector<ModelSpec> specs{c::heisenberg(), c::torus(3), c::torus(4), c::torus(5)};
    for (const auto& spec : specs) {
        auto r = report::run_text(dsl::serialize(spec), spec.name + ".sul");
        if (!r.conjecture) {
            v.failures.push_back("no report for " + spec.name);
            continue;
        }
        const auto* p1 = find(*r.conjecture, CheckId::P1);
        v.expect(p1 && p1->applicability == Applicability::Applicable, "P1 not applicable on " + spec.name);
        if (!p1)
            continue;
        int interior = 0;
        for (const auto& claim : p1->claims) {
            if (claim.description.rfind("b_i >= 2", 0) == 0) {
                ++interior;
                v.expect(claim.satisfied && claim.lhs >= 2, spec.name + ": " + claim.description);
            }
        }
        v.expect(interior == value(*p1, "formal_dimension") - 1, spec.name + ": interior claim count");
        v.expect(r.conjecture->dim_h >= r.conjecture->dim_v, spec.name + ": total < dim V");
        v.expect(report::to_text(r).find("b_i >= 2 for 1 <= i <= n-1") != std::string::npos,
                 spec.name + ": quote anchor missing from report text");
    }
}

// 5
void prop3(Verdict& v)
{
    for (int n : {2, 3}) {
        auto r = check(validate(c::projective(n)));
        const auto* p3 = find(r, CheckId::P3);
        v.expect(p3 && p3->applicability == Applicability::Applicable, "P3 not applicable on cp" + std::to_string(n));
        if (!p3 || !r.bigraded)
            continue;
        v.expect(value(*p3, "homogeneous_length") == n + 1, "length of cp" + std::to_string(n));
        v.expect(value(*p3, "e") == n, "e of cp" + std::to_string(n));
        for (int w = 0; w <= n; ++w)
            v.expect(r.bigraded->total(w) > 0, "cp" + std::to_string(n) + ": zero total at w = " + std::to_string(w));
        v.expect(p3->all_satisfied(), "cp" + std::to_string(n) + ": P3 claim failed");
    }
}

// 6
void prop5(Verdict& v)
{
    // the product formula is about elliptic factors; truncated tables of
    // non-elliptic ones need not multiply
    std::vector<ModelSpec> pool;
    for (std::uint64_t seed = 7000; seed < 7060; ++seed) {
        auto s = seed % 3 == 0 ? c::random_pure(seed) : c::random_two_stage(seed, {}, seed % 3 == 2);
        auto m = validate(s);
        if (ellipticity_verdict(m, cohomology_table(m)).elliptic())
            pool.push_back(std::move(s));
    }
    pool.push_back(c::sphere(2));
    pool.push_back(c::sphere(3));
    pool.push_back(c::projective(2));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        auto ma = validate(a), mb = validate(b);
        auto p = check_prop5(ma, mb);
        bool mult = !p.claims.empty() && p.claims[0].relation == Relation::Equal && p.claims[0].satisfied;
        bool add = p.claims.size() > 1 && p.claims[1].satisfied;
        v.expect(mult, "dim H not multiplicative for " + a.name + " x " + b.name);
        v.expect(add, "dim V not additive for " + a.name + " x " + b.name);
        v.expect(p.all_satisfied(), "product check failed for " + a.name + " x " + b.name);
    }
}

// 7
void prop6(Verdict& v)
{
    auto r = check(validate(dsl::parse("model abc\nflag formal\ngen a 3\ngen b 3\ngen c 3\n")));
    const auto* p6 = find(r, CheckId::P6);
    v.expect(p6 && p6->applicability == Applicability::Applicable, "P6 not applicable");
    if (!p6)
        return;
    v.expect(value(*p6, "p") == 3, "p != 3");
    v.expect(r.dim_h == 8, "dim H != 8");
    v.expect(!p6->claims.empty() && p6->claims[0].rhs == 8 && p6->claims[0].lhs == 8 && p6->claims[0].satisfied,
             "2^p bound not tight at 8");
}

// 8
void prop7(Verdict& v)
{
    auto spec = dsl::parse_file(std::string(SULLIVAN_CORPUS_DIR) + "/two_stage_iso3.sul");
    auto r = report::run_text(dsl::serialize(spec), "two_stage_iso3.sul");
    if (!r.conjecture) {
        v.failures.push_back("no report");
        return;
    }
    const auto* p7 = find(*r.conjecture, CheckId::P7);
    v.expect(p7 && p7->applicability == Applicability::Applicable, "P7 not applicable");
    if (!p7)
        return;
    v.expect(!p7->claims.empty() && p7->claims[0].rhs == 8 && p7->claims[0].satisfied, "dim H >= 8 not shown");
    v.expect(r.conjecture->dim_h >= 8, "dim H < 8");
    v.expect(value(*p7, "dim_Lambda2U") == 3, "computed dim Lambda^2 U != 3");
    v.expect(value(*p7, "closed_form_n(n+1)/2") == 6, "closed form != 6");
    auto text = report::to_text(r);
    v.expect(text.find("dim_Lambda2U = 3") != std::string::npos, "report text lacks dim_Lambda2U = 3");
    v.expect(text.find("closed_form_n(n+1)/2 = 6") != std::string::npos, "report text lacks closed form 6");
    v.expect(text.find("differs from computed dim Lambda^2 U = 3") != std::string::npos, "discrepancy not flagged");
}

// 9
void validation_suite(Verdict& v)
{
    int applied = 0;
    for (const auto& spec : testing::corpus_specs()) {
        v.expect(find_violations(spec).empty(), spec.name + " rejected");
        for (const auto& m : testing::mutations(spec)) {
            ++applied;
            bool found = false;
            for (const auto& e : find_violations(m.spec))
                found = found || e.code == m.expected;
            v.expect(found, spec.name + ": " + m.kind + " not rejected with " + to_string(m.expected));
        }
    }
    v.expect(applied >= 30, "too few mutations applied");
}

// 10
void round_trip(Verdict& v)
{
    auto specs = testing::corpus_specs();
    specs.insert(specs.end(), random_hundred().begin(), random_hundred().end());
    for (const auto& s : specs) {
        auto text = dsl::serialize(s);
        auto back = dsl::parse(text);
        v.expect(back == s, "round trip changed " + s.name);
        v.expect(dsl::serialize(back) == text, "serialization of " + s.name + " is not canonical");
    }
}

std::string run_command(const std::string& cmd, int& status)
{
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, n);
    status = pclose(pipe);
    return out;
}

// 11
void determinism(Verdict& v)
{
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "sullivan_acceptance_batch";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const auto& f : testing::corpus_files())
        fs::copy_file(f, dir / f.filename());
    for (std::size_t i = 0; i < 20; ++i) {
        std::ofstream out(dir / ("random_" + std::to_string(i) + ".sul"));
        out << dsl::serialize(random_hundred()[i]);
    }
    for (const char* format : {"json", "csv", "text"}) {
        int s1 = 0, s8 = 0;
        std::string base = std::string(SULLIVAN_CLI) + " batch " + dir.string() + " --format " + format;
        auto one = run_command(base + " --jobs 1", s1);
        auto eight = run_command(base + " --jobs 8", s8);
        v.expect(!one.empty(), std::string(format) + ": empty output");
        v.expect(one == eight, std::string(format) + ": --jobs 1 and --jobs 8 differ");
        v.expect(s1 == s8, std::string(format) + ": exit codes differ");
    }
    fs::remove_all(dir);
}

// 12
void ellipticity_prefilter(Verdict& v)
{
    auto x2 = check(validate(dsl::parse("model x2\ngen x 2\n")));
    v.expect(x2.ellipticity.kind == EllipticityVerdict::Kind::NotElliptic, "{x2} not NOT_ELLIPTIC");
    v.expect(x2.ellipticity.reason.find("fd bound") != std::string::npos, "{x2}: reason is not structural");
    v.expect(x2.out_of_hypothesis, "{x2} not out of hypothesis");

    std::vector<ModelSpec> heavy{dsl::parse("model n\ngen x 2\ngen y 2\ngen z 3\nd z = x y\n"),
                                 dsl::parse("model e\ngen x 2\ngen y 2\ngen a 7\nd a = x^2 y^2\n"),
                                 dsl::parse("model f\ngen x 2\ngen y 4\ngen a 9\nd a = x y^2\n")};
    for (const auto& s : heavy) {
        auto r = check(validate(s));
        v.expect(r.ellipticity.kind == EllipticityVerdict::Kind::NotElliptic, s.name + " not NOT_ELLIPTIC");
        v.expect(r.ellipticity.reason.find("dim V^even") != std::string::npos, s.name + ": reason lacks dim V^even");
    }
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Verdict&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "known cohomology of spheres, projective spaces, tori, Heisenberg", known_cohomology},
        {2, "engine equals the reference oracle on corpus + 100 random models", oracle_equivalence},
        {3, "dim H >= dim V on presumed elliptic models, S^2 has margin 0", conjecture_holds},
        {4, "nilmanifold interior Betti bound on heisenberg, torus(3..5)", prop1},
        {5, "wordlength totals nonzero for w = 0..e on cp2, cp3", prop3},
        {6, "product multiplicativity on 50 random pairs", prop5},
        {7, "2^p bound tight on three closed odd classes", prop6},
        {8, "square two-stage bound with Lambda^2 U side by side", prop7},
        {9, "single-fault mutations rejected with the right code", validation_suite},
        {10, "DSL round trip and canonical serialization", round_trip},
        {11, "batch output identical for --jobs 1 and --jobs 8", determinism},
        {12, "ellipticity pre-filter", ellipticity_prefilter},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(v);
        }
        catch (const std::exception& e) {
            v.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > kBudgetSeconds)
            v.failures.push_back("took longer than the time budget");
        bool ok = v.failures.empty();
        failed += !ok;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " (" << secs << " s)";
        std::cout << line.str() << "\n";
        for (std::size_t i = 0; i < v.failures.size() && i < 10; ++i)
            std::cout << "      " << v.failures[i] << "\n";
    }
    return failed == 0 ? 0 : 1;
}
