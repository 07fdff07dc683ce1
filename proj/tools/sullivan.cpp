// Command-line front end: validate, cohomology, classify, check, tensor,
// generate and batch over .sul model files.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "sullivan/constructors.hpp"
#include "sullivan/report.hpp"

using namespace sullivan;
using report::Json;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw IoError("cannot write " + path);
}

void print_diagnostics(const std::string& source, const std::vector<report::Diagnostic>& diags)
{
    for (const auto& d : diags) {
        std::cerr << source << ":";
        if (d.span)
            std::cerr << d.span->line << ":" << d.span->column << ":";
        std::cerr << " " << d.code << ": " << d.message << "\n";
    }
}

/// Parses and validates a file. On failure prints diagnostics (as JSON when
/// asked) and returns nullopt.
std::optional<SullivanModel> load(const std::string& path, bool json)
{
    auto text = read_file(path);
    report::RunReport r;
    r.source = path;
    try {
        auto parsed = dsl::parse_with_spans(text);
        r.name = parsed.spec.name;
        auto violations = find_violations(parsed.spec);
        if (violations.empty())
            return validate(std::move(parsed.spec));
        r.status = report::Status::Invalid;
        r.diagnostics = report::diagnose(parsed, violations);
    }
    catch (const dsl::ParseError& e) {
        r.status = report::Status::ParseError;
        r.diagnostics.push_back({dsl::to_string(e.code()), e.detail(), "", e.span()});
    }
    if (json)
        std::cout << report::to_json(r, false).dump(2) << "\n";
    print_diagnostics(path, r.diagnostics);
    return std::nullopt;
}

CohomologyOptions options_from(std::optional<int> max_degree, unsigned jobs)
{
    CohomologyOptions o;
    o.max_degree = max_degree;
    o.basis_cap = report::basis_cap_from_env();
    o.jobs = std::max(1u, jobs);
    return o;
}

std::vector<int> parse_degrees(const std::string& list)
{
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoi(item));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sullivan minimal models: exact cohomology, classification and dim H >= dim V checks"};
    app.require_subcommand(1);

    std::string path, path_b, out, format = "json";
    std::optional<int> max_degree;
    unsigned jobs = 1;
    bool timing = false;

    auto* validate_cmd = app.add_subcommand("validate", "parse and validate a model");
    validate_cmd->add_option("file", path)->required();
    validate_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* cohomology_cmd = app.add_subcommand("cohomology", "Betti numbers of a model");
    cohomology_cmd->add_option("file", path)->required();
    cohomology_cmd->add_option("--max-degree", max_degree)->check(CLI::NonNegativeNumber);
    cohomology_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    cohomology_cmd->add_option("--jobs", jobs);

    auto* classify_cmd = app.add_subcommand("classify", "structural classes of a model");
    classify_cmd->add_option("file", path)->required();
    classify_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* check_cmd = app.add_subcommand("check", "full pipeline and bound checks");
    check_cmd->add_option("file", path)->required();
    check_cmd->add_option("--max-degree", max_degree)->check(CLI::NonNegativeNumber);
    check_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    check_cmd->add_option("--jobs", jobs);
    check_cmd->add_flag("--timing", timing, "include per-phase timing in JSON");

    auto* tensor_cmd = app.add_subcommand("tensor", "model of the product of two models");
    tensor_cmd->add_option("a", path)->required();
    tensor_cmd->add_option("b", path_b)->required();
    tensor_cmd->add_option("--out", out);
    bool tensor_check = false;
    tensor_cmd->add_flag("--check", tensor_check, "also report the product check as JSON");

    auto* generate_cmd = app.add_subcommand("generate", "emit a model from a built-in family");
    std::string family;
    constructors::FamilyParams params;
    std::string degrees;
    generate_cmd->add_option("--family", family)->required();
    generate_cmd->add_option("--n", params.n);
    generate_cmd->add_option("--degrees", degrees, "comma-separated U degrees for two-stage");
    generate_cmd->add_option("--seed", params.seed);
    generate_cmd->add_option("--max-generators", params.caps.max_generators);
    generate_cmd->add_option("--max-gen-degree", params.caps.max_degree);
    generate_cmd->add_flag("--square-iso", params.square_iso);
    generate_cmd->add_option("--out", out);

    auto* batch_cmd = app.add_subcommand("batch", "check every .sul file in a directory");
    batch_cmd->add_option("dir", path)->required();
    batch_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    batch_cmd->add_option("--jobs", jobs);
    batch_cmd->add_flag("--timing", timing, "include per-phase timing (output is then not reproducible)");
    batch_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : report::kExitError;
    }

    const bool json = format == "json";
    try {
        if (*validate_cmd) {
            auto model = load(path, json);
            if (!model)
                return report::kExitInvalid;
            if (json)
                std::cout << Json{{"schema", report::kReportSchema}, {"source", path}, {"model", model->name()},
                                  {"status", "ok"}, {"diagnostics", Json::array()}}
                                 .dump(2)
                          << "\n";
            else
                std::cout << path << ": model " << model->name() << " is a valid minimal model\n";
            return report::kExitOk;
        }

        if (*cohomology_cmd) {
            auto model = load(path, json);
            if (!model)
                return report::kExitInvalid;
            auto table = cohomology_table(*model, options_from(max_degree, jobs));
            if (json) {
                std::cout << report::betti_json(table, fd_bound(*model)).dump(2) << "\n";
            }
            else {
                for (std::size_t k = 0; k < table.betti.size(); ++k)
                    std::cout << "b_" << k << " = " << table.betti[k] << "\n";
                std::cout << "total = " << table.total << "\n";
            }
            return report::kExitOk;
        }

        if (*classify_cmd) {
            auto model = load(path, json);
            if (!model)
                return report::kExitInvalid;
            auto j = report::classification_json(*model, classify(*model));
            std::cout << (json ? j.dump(2) : j.dump()) << "\n";
            return report::kExitOk;
        }

        if (*check_cmd) {
            // read up front so that a missing file is an I/O error, not a report
            auto text = read_file(path);
            auto r = report::run_text(text, path, options_from(max_degree, jobs));
            if (json)
                std::cout << report::to_json(r, timing).dump(2) << "\n";
            else
                std::cout << report::to_text(r);
            print_diagnostics(path, r.diagnostics);
            if (r.conjecture && r.conjecture->out_of_hypothesis)
                std::cerr << "warning: " << path << ": NOT_ELLIPTIC: " << r.conjecture->ellipticity.reason << "\n";
            return r.exit_code();
        }

        if (*tensor_cmd) {
            auto a = load(path, false);
            auto b = load(path_b, false);
            if (!a || !b)
                return report::kExitInvalid;
            auto product = constructors::tensor(a->spec(), b->spec());
            write_output(out, dsl::serialize(product));
            if (tensor_check) {
                auto c = check_prop5(*a, *b, options_from(std::nullopt, 1));
                ConjectureReport holder;
                holder.checks.push_back(c);
                std::cerr << report::conjecture_json(holder)["checks"][0].dump(2) << "\n";
                if (c.applicability == Applicability::Applicable && !c.all_satisfied())
                    return report::kExitFinding;
            }
            return report::kExitOk;
        }

        if (*generate_cmd) {
            auto f = constructors::parse_family(family);
            if (!f) {
                std::cerr << "unknown family '" << family << "'\n";
                return report::kExitError;
            }
            params.family = *f;
            if (!degrees.empty())
                params.degrees = parse_degrees(degrees);
            write_output(out, dsl::serialize(constructors::build(params)));
            return report::kExitOk;
        }

        if (*batch_cmd) {
            report::BatchFormat bf = format == "csv"    ? report::BatchFormat::Csv
                                     : format == "text" ? report::BatchFormat::Text
                                                        : report::BatchFormat::Json;
            CohomologyOptions o = options_from(std::nullopt, 1);
            auto result = report::run_batch(path, bf, std::max(1u, jobs), timing, o);
            write_output(out, result.output);
            return result.exit_code;
        }
    }
    catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::kExitError;
    }
    catch (const BasisTooLarge& e) {
        std::cerr << "error: BASIS_TOO_LARGE: " << e.what() << "\n";
        return report::kExitError;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return report::kExitError;
    }
    return report::kExitError;
}
