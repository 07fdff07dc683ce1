#include "sullivan/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace sullivan::report {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json span_json(const std::optional<dsl::SourceSpan>& span)
{
    if (!span)
        return nullptr;
    return Json{{"line", span->line}, {"column", span->column}, {"length", span->length}};
}

std::vector<std::string> names(const GeneratorSet& gens, const std::vector<GeneratorId>& ids)
{
    std::vector<std::string> out;
    for (auto id : ids)
        out.push_back(gens[id].name);
    return out;
}

std::vector<std::string> class_list(const ClassificationReport& c)
{
    std::vector<std::string> out;
    if (c.pure)
        out.emplace_back("pure");
    if (c.hyperelliptic)
        out.emplace_back("hyperelliptic");
    if (c.coformal)
        out.emplace_back("coformal");
    if (c.two_stage)
        out.emplace_back(c.two_stage->square_iso ? "two_stage_iso" : "two_stage");
    if (c.nilmanifold_type)
        out.emplace_back("nilmanifold");
    if (c.simply_connected)
        out.emplace_back("simply_connected");
    return out;
}

std::string verdict_cell(const PropositionCheck& c)
{
    const char* outcome = c.all_satisfied() ? "pass" : "fail";
    switch (c.applicability) {
    case Applicability::Applicable: return c.all_satisfied() ? "pass" : "FAIL";
    case Applicability::Informative: return std::string("info:") + outcome;
    case Applicability::Unknown: return std::string("unknown:") + outcome;
    case Applicability::NotApplicable: return "n/a";
    }
    return "?";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? sep : "") + parts[i];
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

} // namespace

const char* to_string(Status s)
{
    switch (s) {
    case Status::Ok: return "ok";
    case Status::ParseError: return "parse_error";
    case Status::Invalid: return "invalid";
    case Status::Error: return "error";
    }
    return "?";
}

int RunReport::exit_code() const
{
    switch (status) {
    case Status::Error: return kExitError;
    case Status::ParseError:
    case Status::Invalid: return kExitInvalid;
    case Status::Ok: break;
    }
    if (conjecture && !conjecture->findings.empty())
        return kExitFinding;
    if (conjecture && conjecture->out_of_hypothesis)
        return kExitNotElliptic;
    return kExitOk;
}

std::size_t basis_cap_from_env()
{
    const char* raw = std::getenv("SULLIVAN_BASIS_CAP");
    if (raw == nullptr || *raw == '\0')
        return kDefaultBasisCap;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0)
        return kDefaultBasisCap;
    return static_cast<std::size_t>(v);
}

std::vector<Diagnostic> diagnose(const dsl::ParsedModel& parsed, const std::vector<Violation>& violations)
{
    std::vector<Diagnostic> out;
    for (const auto& v : violations) {
        Diagnostic d{to_string(v.code), v.message, "", std::nullopt};
        if (parsed.spec.generators.contains(v.generator)) {
            d.generator = parsed.spec.generators[v.generator].name;
            bool about_d = v.code == ViolationCode::DegreeMismatch || v.code == ViolationCode::NotMinimal ||
                           v.code == ViolationCode::DSquaredNonzero || v.code == ViolationCode::UnknownGenerator;
            const auto& spans = about_d ? parsed.d_spans : parsed.gen_spans;
            if (auto it = spans.find(v.generator); it != spans.end())
                d.span = it->second;
            else if (auto g = parsed.gen_spans.find(v.generator); g != parsed.gen_spans.end())
                d.span = g->second;
        }
        out.push_back(std::move(d));
    }
    return out;
}

RunReport run_text(const std::string& text, const std::string& source, const CohomologyOptions& options)
{
    RunReport r;
    r.source = source;

    auto start = Clock::now();
    dsl::ParsedModel parsed;
    try {
        parsed = dsl::parse_with_spans(text);
    }
    catch (const dsl::ParseError& e) {
        r.timing.parse_ms = ms_since(start);
        r.status = Status::ParseError;
        r.diagnostics.push_back({dsl::to_string(e.code()), e.detail(), "", e.span()});
        return r;
    }
    r.timing.parse_ms = ms_since(start);
    r.name = parsed.spec.name;

    start = Clock::now();
    auto violations = find_violations(parsed.spec);
    r.timing.validate_ms = ms_since(start);
    if (!violations.empty()) {
        r.status = Status::Invalid;
        r.diagnostics = diagnose(parsed, violations);
        return r;
    }
    r.model = validate(parsed.spec);

    CohomologyOptions opts = options;
    opts.max_degree = std::max(options.max_degree.value_or(0), default_window(*r.model));
    try {
        start = Clock::now();
        r.table = cohomology_table(*r.model, opts);
        r.timing.cohomology_ms = ms_since(start);

        start = Clock::now();
        r.classes = classify(*r.model);
        r.timing.classify_ms = ms_since(start);

        start = Clock::now();
        r.conjecture = check_hilali(*r.model, *r.table, *r.classes, opts);
        r.timing.check_ms = ms_since(start);
    }
    catch (const BasisTooLarge& e) {
        r.status = Status::Error;
        r.diagnostics.push_back({"BASIS_TOO_LARGE", e.what(), "", std::nullopt});
    }
    catch (const std::overflow_error& e) {
        r.status = Status::Error;
        r.diagnostics.push_back({"OVERFLOW", e.what(), "", std::nullopt});
    }
    return r;
}

RunReport run_file(const std::string& path, const CohomologyOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        RunReport r;
        r.source = path;
        r.status = Status::Error;
        r.diagnostics.push_back({"IO_ERROR", "cannot open " + path, "", std::nullopt});
        return r;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_text(ss.str(), path, options);
}

/******** JSON ********/

Json betti_json(const BettiTable& table, int fd)
{
    return Json{{"betti", table.betti},
                {"max_degree_computed", table.max_degree_computed},
                {"total", table.total},
                {"observed_fd", table.observed_fd},
                {"fd_bound", fd}};
}

Json classification_json(const SullivanModel& model, const ClassificationReport& c)
{
    Json two_stage = nullptr;
    if (c.two_stage) {
        const auto& ts = *c.two_stage;
        two_stage = Json{{"U", names(model.generators(), ts.u)},
                         {"W", names(model.generators(), ts.w)},
                         {"dW_in_LambdaU", ts.dw_in_lambda_u},
                         {"square_iso", ts.square_iso},
                         {"dimU", ts.dim_u},
                         {"dimW", ts.dim_w},
                         {"dim_Lambda2U", ts.dim_lambda2_u}};
    }
    return Json{{"pure", c.pure},
                {"coformal", c.coformal},
                {"hyperelliptic", c.hyperelliptic},
                {"two_stage", two_stage},
                {"homogeneous_length", c.homogeneous_length ? Json(*c.homogeneous_length) : Json(nullptr)},
                {"nilmanifold_type", c.nilmanifold_type},
                {"simply_connected", c.simply_connected},
                {"dimV", c.dim_v},
                {"dimV_even", c.dim_v_even},
                {"dimV_odd", c.dim_v_odd},
                {"p", c.p}};
}

Json conjecture_json(const ConjectureReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json claims = Json::array();
        for (const auto& cl : c.claims)
            claims.push_back({{"description", cl.description},
                              {"lhs", cl.lhs},
                              {"rhs", cl.rhs},
                              {"relation", cl.relation == Relation::Equal ? "==" : ">="},
                              {"satisfied", cl.satisfied}});
        Json values = Json::object();
        for (const auto& [k, v] : c.values)
            values[k] = v;
        checks.push_back({{"id", to_string(c.id)},
                          {"applicability", to_string(c.applicability)},
                          {"premises_met", c.premises_met()},
                          {"premise_note", c.premise_note},
                          {"claims", claims},
                          {"values", values},
                          {"notes", c.notes}});
    }
    Json findings = Json::array();
    for (const auto& f : r.findings)
        findings.push_back({{"check", f.check}, {"claim", f.claim}, {"model_text", f.model_text}});

    const auto& e = r.ellipticity;
    Json ellipticity{{"verdict", to_string(e.kind)},
                     {"reason", e.reason},
                     {"fd_bound", e.fd_bound},
                     {"verified_up_to", e.verified_up_to},
                     {"witness_degree", e.witness_degree ? Json(*e.witness_degree) : Json(nullptr)}};

    Json wordlength = nullptr;
    if (r.bigraded) {
        Json totals = Json::object();
        for (const auto& [w, t] : r.bigraded->per_wordlength_totals)
            totals[std::to_string(w)] = t;
        wordlength = Json{{"length", r.bigraded->length}, {"totals", totals}};
    }

    return Json{{"dimV", r.dim_v},
                {"dimH", r.dim_h},
                {"margin", r.margin},
                {"holds", r.holds},
                {"out_of_hypothesis", r.out_of_hypothesis},
                {"ellipticity", ellipticity},
                {"wordlength", wordlength},
                {"checks", checks},
                {"findings", findings}};
}

Json to_json(const RunReport& r, bool include_timing)
{
    Json diagnostics = Json::array();
    for (const auto& d : r.diagnostics)
        diagnostics.push_back({{"code", d.code},
                               {"message", d.message},
                               {"generator", d.generator.empty() ? Json(nullptr) : Json(d.generator)},
                               {"span", span_json(d.span)}});

    Json j{{"schema", kReportSchema},
           {"source", r.source},
           {"model", r.name},
           {"status", to_string(r.status)},
           {"diagnostics", diagnostics}};
    j["cohomology"] = r.table && r.model ? betti_json(*r.table, fd_bound(*r.model)) : Json(nullptr);
    j["classification"] = r.classes && r.model ? classification_json(*r.model, *r.classes) : Json(nullptr);
    j["conjecture"] = r.conjecture ? conjecture_json(*r.conjecture) : Json(nullptr);
    j["exit_code"] = r.exit_code();
    if (include_timing)
        j["timing_ms"] = Json{{"parse", r.timing.parse_ms},
                              {"validate", r.timing.validate_ms},
                              {"cohomology", r.timing.cohomology_ms},
                              {"classify", r.timing.classify_ms},
                              {"check", r.timing.check_ms}};
    return j;
}

/******** CSV / text ********/

std::string csv_header()
{
    return "file,model,status,dimV,dimV_even,dimV_odd,dimH,margin,holds,ellipticity,fd_bound,observed_fd,betti,"
           "classes,P1,P2-endpoint,P3,P4,P6,P7,findings,errors";
}

std::string to_csv_row(const RunReport& r)
{
    std::vector<std::string> cells;
    cells.push_back(std::filesystem::path(r.source).filename().string());
    cells.push_back(r.name);
    cells.push_back(to_string(r.status));
    if (r.model && r.table && r.conjecture && r.classes) {
        const auto& c = *r.conjecture;
        cells.push_back(std::to_string(r.model->dim_v()));
        cells.push_back(std::to_string(r.model->dim_v_even()));
        cells.push_back(std::to_string(r.model->dim_v_odd()));
        cells.push_back(std::to_string(c.dim_h));
        cells.push_back(std::to_string(c.margin));
        cells.push_back(c.holds ? "true" : "false");
        cells.push_back(to_string(c.ellipticity.kind));
        cells.push_back(std::to_string(c.ellipticity.fd_bound));
        cells.push_back(std::to_string(r.table->observed_fd));
        std::vector<std::string> b;
        for (auto v : r.table->betti)
            b.push_back(std::to_string(v));
        cells.push_back(join(b, " "));
        cells.push_back(join(class_list(*r.classes), ";"));
        for (const auto& check : c.checks)
            cells.push_back(verdict_cell(check));
        cells.push_back(std::to_string(c.findings.size()));
    }
    else {
        cells.resize(cells.size() + 18);
    }
    std::vector<std::string> codes;
    for (const auto& d : r.diagnostics)
        codes.push_back(d.code);
    cells.push_back(join(codes, ";"));

    std::vector<std::string> quoted;
    for (const auto& c : cells)
        quoted.push_back(csv_field(c));
    return join(quoted, ",");
}

std::string to_text(const RunReport& r)
{
    std::ostringstream os;
    os << r.source << ": model " << (r.name.empty() ? "?" : r.name) << " [" << to_string(r.status) << "]\n";
    for (const auto& d : r.diagnostics) {
        os << "  ";
        if (d.span)
            os << r.source << ":" << d.span->line << ":" << d.span->column << ": ";
        os << d.code << ": " << d.message << "\n";
    }
    if (!r.model || !r.table || !r.conjecture)
        return os.str();

    const auto& c = *r.conjecture;
    os << "  betti:";
    for (auto v : r.table->betti)
        os << " " << v;
    os << "  (through degree " << r.table->max_degree_computed << ")\n";
    os << "  dim V = " << c.dim_v << ", dim H = " << c.dim_h << ", margin = " << c.margin
       << (c.holds ? " (holds)" : " (FAILS)") << "\n";
    os << "  " << to_string(c.ellipticity.kind) << ": " << c.ellipticity.reason << "\n";
    os << "  classes: " << join(class_list(*r.classes), ", ") << "\n";
    for (const auto& check : c.checks) {
        os << "  " << to_string(check.id) << " " << to_string(check.applicability);
        if (!check.premise_note.empty())
            os << " (" << check.premise_note << ")";
        os << "\n";
        for (const auto& [k, v] : check.values)
            os << "      " << k << " = " << v << "\n";
        for (const auto& cl : check.claims)
            os << "    [" << (cl.satisfied ? "ok" : "!!") << "] " << cl.description << ": " << cl.lhs
               << (cl.relation == Relation::Equal ? " == " : " >= ") << cl.rhs << "\n";
        for (const auto& n : check.notes)
            os << "    note: " << n << "\n";
    }
    for (const auto& f : c.findings)
        os << "  FINDING " << f.check << ": " << f.claim << "\n" << f.model_text;
    return os.str();
}

/******** Batch ********/

BatchResult run_batch(const std::string& dir, BatchFormat format, unsigned jobs, bool include_timing,
                      const CohomologyOptions& options)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".sul")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    // one file per task; the per-file pipeline itself stays single-threaded
    CohomologyOptions per_file = options;
    per_file.jobs = 1;
    std::vector<RunReport> reports(files.size());
    detail::parallel_for(files.size(), jobs, [&](std::size_t i) { reports[i] = run_file(files[i].string(), per_file); });

    BatchResult result;
    result.files = files.size();
    bool finding = false, error = false, invalid = false;
    for (const auto& r : reports) {
        int code = r.exit_code();
        finding = finding || code == kExitFinding;
        error = error || code == kExitError;
        invalid = invalid || code == kExitInvalid;
    }
    result.exit_code = finding ? kExitFinding : error ? kExitError : invalid ? kExitInvalid : kExitOk;

    switch (format) {
    case BatchFormat::Json: {
        Json all = Json::array();
        for (const auto& r : reports)
            all.push_back(to_json(r, include_timing));
        result.output = Json{{"schema", kBatchSchema}, {"reports", all}}.dump(2) + "\n";
        break;
    }
    case BatchFormat::Csv:
        result.output = csv_header() + "\n";
        for (const auto& r : reports)
            result.output += to_csv_row(r) + "\n";
        break;
    case BatchFormat::Text:
        for (const auto& r : reports)
            result.output += to_text(r);
        break;
    }
    return result;
}

} // namespace sullivan::report
