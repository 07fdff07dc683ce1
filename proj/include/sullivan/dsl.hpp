#pragma once

// Line-oriented text format for models (`.sul` files):
//
//   model <name>
//   flag formal | flag nilpotent
//   gen <ident> <degree>
//   d <ident> = <poly>
//
//   poly   := '0' | ['-'] term (('+'|'-') term)*
//   term   := [rational ['*']] factor+
//   factor := ident ['^' nat]
//   rational := ['-'] int ['/' nat]
//
// '#' starts a comment; blank lines are ignored. Factors inside a term are
// separated by whitespace or '*'.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sullivan/model.hpp"

namespace sullivan::dsl {

struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;
};

enum class ParseErrorCode {
    Syntax,
    UnknownGenerator,
    DuplicateDefinition,
    BadDegree,
};

const char* to_string(ParseErrorCode code);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorCode code, SourceSpan span, const std::string& message);

    ParseErrorCode code() const { return code_; }
    const SourceSpan& span() const { return span_; }
    /// Message without the position prefix.
    const std::string& detail() const { return detail_; }

private:
    ParseErrorCode code_;
    SourceSpan span_;
    std::string detail_;
};

/// A parsed model together with where each generator and differential was
/// written, for diagnostics.
struct ParsedModel {
    ModelSpec spec;
    std::map<GeneratorId, SourceSpan> gen_spans;
    std::map<GeneratorId, SourceSpan> d_spans;
};

ParsedModel parse_with_spans(std::string_view text);
ModelSpec parse(std::string_view text);
ModelSpec parse_file(const std::string& path);

/// Canonical text: flags, generators and differentials in id order, terms in
/// canonical monomial order, coefficients in lowest terms.
std::string serialize(const ModelSpec& spec);

} // namespace sullivan::dsl
