#pragma once

// Per-file pipeline (parse -> validate -> cohomology -> classify -> checks)
// and the report formats emitted by the command-line tool.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sullivan/classify.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/dsl.hpp"
#include "sullivan/hilali.hpp"
#include "sullivan/model.hpp"

namespace sullivan::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "sullivan-report/1";
inline constexpr const char* kBatchSchema = "sullivan-batch/1";

enum ExitCode : int {
    kExitOk = 0,
    kExitError = 1,
    kExitInvalid = 2,
    kExitFinding = 3,
    kExitNotElliptic = 4,
};

enum class Status { Ok, ParseError, Invalid, Error };

const char* to_string(Status s);

struct Diagnostic {
    std::string code;
    std::string message;
    std::string generator; // empty when not tied to one
    std::optional<dsl::SourceSpan> span;
};

struct Timing {
    double parse_ms = 0;
    double validate_ms = 0;
    double cohomology_ms = 0;
    double classify_ms = 0;
    double check_ms = 0;
};

struct RunReport {
    std::string source; // file name as given
    std::string name;   // model name, empty if parsing failed
    Status status = Status::Ok;
    std::vector<Diagnostic> diagnostics;
    std::optional<SullivanModel> model;
    std::optional<BettiTable> table;
    std::optional<ClassificationReport> classes;
    std::optional<ConjectureReport> conjecture;
    Timing timing;

    int exit_code() const;
};

/// Runs the whole pipeline on model text. Never throws for model-level
/// problems; those land in status/diagnostics.
RunReport run_text(const std::string& text, const std::string& source, const CohomologyOptions& options = {});
RunReport run_file(const std::string& path, const CohomologyOptions& options = {});

/// SULLIVAN_BASIS_CAP if set to a positive integer, else the default cap.
std::size_t basis_cap_from_env();

/// Violations of a spec, with source positions when available.
std::vector<Diagnostic> diagnose(const dsl::ParsedModel& parsed, const std::vector<Violation>& violations);

Json betti_json(const BettiTable& table, int fd);
Json classification_json(const SullivanModel& model, const ClassificationReport& classes);
Json conjecture_json(const ConjectureReport& report);
Json to_json(const RunReport& report, bool include_timing);

std::string csv_header();
std::string to_csv_row(const RunReport& report);
std::string to_text(const RunReport& report);

enum class BatchFormat { Json, Csv, Text };

struct BatchResult {
    std::string output;
    int exit_code = kExitOk;
    std::size_t files = 0;
};

/// Every *.sul file directly in `dir`, processed on up to `jobs` threads and
/// emitted in file-name order.
BatchResult run_batch(const std::string& dir, BatchFormat format, unsigned jobs, bool include_timing,
                      const CohomologyOptions& options = {});

} // namespace sullivan::report
