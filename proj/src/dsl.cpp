#include "sullivan/dsl.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace sullivan::dsl {

const char* to_string(ParseErrorCode code)
{
    switch (code) {
    case ParseErrorCode::Syntax: return "SYNTAX";
    case ParseErrorCode::UnknownGenerator: return "UNKNOWN_GENERATOR";
    case ParseErrorCode::DuplicateDefinition: return "DUPLICATE_DEFINITION";
    case ParseErrorCode::BadDegree: return "BAD_DEGREE";
    }
    return "?";
}

ParseError::ParseError(ParseErrorCode code, SourceSpan span, const std::string& message)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + to_string(code) + ": " + message),
      code_(code), span_(span), detail_(message)
{
}

namespace {

enum class Tok { Ident, Number, Word, Equals, Plus, Minus, Star, Caret, Slash, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class LineLexer {
public:
    LineLexer(std::string_view line, int line_no) : line_(line), line_no_(line_no) { advance(); }

    const Token& peek() const { return tok_; }
    Token next()
    {
        Token t = tok_;
        advance();
        return t;
    }

    /// Consumes the rest of the current token run up to whitespace (model names).
    Token next_word()
    {
        if (tok_.kind == Tok::End)
            return tok_;
        std::size_t start = static_cast<std::size_t>(tok_.span.column - 1);
        std::size_t end = start;
        while (end < line_.size() && !std::isspace(static_cast<unsigned char>(line_[end])))
            ++end;
        Token t{Tok::Word, std::string(line_.substr(start, end - start)), span(start, end - start)};
        pos_ = end;
        advance();
        return t;
    }

    SourceSpan end_span() const { return span(line_.size(), 0); }

private:
    SourceSpan span(std::size_t start, std::size_t len) const
    {
        return {line_no_, static_cast<int>(start) + 1, static_cast<int>(len)};
    }

    void advance()
    {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
        if (pos_ >= line_.size()) {
            tok_ = {Tok::End, "", end_span()};
            return;
        }
        std::size_t start = pos_;
        char c = line_[pos_];
        Tok kind;
        if (ident_start(c)) {
            while (pos_ < line_.size() && ident_char(line_[pos_]))
                ++pos_;
            kind = Tok::Ident;
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            kind = Tok::Number;
        }
        else {
            ++pos_;
            switch (c) {
            case '=': kind = Tok::Equals; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '^': kind = Tok::Caret; break;
            case '/': kind = Tok::Slash; break;
            default:
                throw ParseError(ParseErrorCode::Syntax, span(start, 1), std::string("unexpected character '") + c + "'");
            }
        }
        tok_ = {kind, std::string(line_.substr(start, pos_ - start)), span(start, pos_ - start)};
    }

    std::string_view line_;
    int line_no_;
    std::size_t pos_ = 0;
    Token tok_;
};

[[noreturn]] void syntax(const Token& at, const std::string& what)
{
    std::string found = at.kind == Tok::End ? "end of line" : "'" + at.text + "'";
    throw ParseError(ParseErrorCode::Syntax, at.span, "expected " + what + ", found " + found);
}

Token expect(LineLexer& lex, Tok kind, const std::string& what)
{
    if (lex.peek().kind != kind)
        syntax(lex.peek(), what);
    return lex.next();
}

void expect_end(LineLexer& lex)
{
    if (lex.peek().kind != Tok::End)
        syntax(lex.peek(), "end of line");
}

/// Small positive integer (exponents, degrees); nullopt if too large.
std::optional<int> small_int(const std::string& digits)
{
    if (digits.size() > 6)
        return std::nullopt;
    return std::stoi(digits);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParsedModel run()
    {
        std::size_t pos = 0;
        int line_no = 0;
        while (pos <= text_.size()) {
            std::size_t eol = text_.find('\n', pos);
            if (eol == std::string_view::npos)
                eol = text_.size();
            std::string_view line = text_.substr(pos, eol - pos);
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            statement(line, line_no);
            if (eol == text_.size())
                break;
            pos = eol + 1;
        }
        if (!have_model_)
            throw ParseError(ParseErrorCode::Syntax, {1, 1, 0}, "missing 'model <name>' line");
        out_.spec.differential.resize(out_.spec.generators.size());
        return std::move(out_);
    }

private:
    void statement(std::string_view line, int line_no)
    {
        LineLexer lex(line, line_no);
        if (lex.peek().kind == Tok::End)
            return;
        Token kw = lex.next();
        if (kw.kind != Tok::Ident)
            syntax(kw, "'model', 'flag', 'gen' or 'd'");
        if (kw.text == "model") {
            if (have_model_)
                throw ParseError(ParseErrorCode::DuplicateDefinition, kw.span, "second 'model' line");
            Token name = lex.next_word();
            if (name.kind == Tok::End)
                syntax(name, "model name");
            expect_end(lex);
            out_.spec.name = name.text;
            have_model_ = true;
            return;
        }
        if (!have_model_)
            throw ParseError(ParseErrorCode::Syntax, kw.span, "the first statement must be 'model <name>'");
        if (kw.text == "flag")
            flag(lex);
        else if (kw.text == "gen")
            gen(lex);
        else if (kw.text == "d")
            differential(lex);
        else
            syntax(kw, "'flag', 'gen' or 'd'");
    }

    void flag(LineLexer& lex)
    {
        Token f = expect(lex, Tok::Ident, "'formal' or 'nilpotent'");
        expect_end(lex);
        bool* slot = nullptr;
        if (f.text == "formal")
            slot = &out_.spec.flags.formal;
        else if (f.text == "nilpotent")
            slot = &out_.spec.flags.nilpotent;
        else
            syntax(f, "'formal' or 'nilpotent'");
        if (*slot)
            throw ParseError(ParseErrorCode::DuplicateDefinition, f.span, "flag " + f.text + " given twice");
        *slot = true;
    }

    void gen(LineLexer& lex)
    {
        Token name = expect(lex, Tok::Ident, "generator name");
        if (out_.spec.generators.find(name.text))
            throw ParseError(ParseErrorCode::DuplicateDefinition, name.span, "generator " + name.text + " declared twice");
        const Token& t = lex.peek();
        if (t.kind == Tok::Minus) {
            Token minus = lex.next();
            Token digits = expect(lex, Tok::Number, "degree");
            SourceSpan s{minus.span.line, minus.span.column, digits.span.column + digits.span.length - minus.span.column};
            throw ParseError(ParseErrorCode::BadDegree, s, "degree must be a positive integer");
        }
        Token digits = expect(lex, Tok::Number, "degree");
        expect_end(lex);
        auto degree = small_int(digits.text);
        if (!degree || *degree < 1)
            throw ParseError(ParseErrorCode::BadDegree, digits.span, "degree must be a positive integer, got " + digits.text);
        auto id = out_.spec.add_generator(name.text, *degree);
        out_.gen_spans[id] = name.span;
    }

    void differential(LineLexer& lex)
    {
        Token name = expect(lex, Tok::Ident, "generator name");
        auto id = out_.spec.generators.find(name.text);
        if (!id)
            throw ParseError(ParseErrorCode::UnknownGenerator, name.span, "unknown generator " + name.text);
        if (out_.d_spans.count(*id))
            throw ParseError(ParseErrorCode::DuplicateDefinition, name.span, "second differential for " + name.text);
        expect(lex, Tok::Equals, "'='");
        Polynomial p = polynomial(lex);
        expect_end(lex);
        out_.spec.set_differential(*id, std::move(p));
        out_.d_spans[*id] = name.span;
    }

    Polynomial polynomial(LineLexer& lex)
    {
        if (lex.peek().kind == Tok::Number && lex.peek().text == "0") {
            lex.next();
            return {};
        }
        Polynomial p;
        int sign = 1;
        if (lex.peek().kind == Tok::Minus || lex.peek().kind == Tok::Plus)
            sign = lex.next().kind == Tok::Minus ? -1 : 1;
        term(lex, sign, p);
        while (lex.peek().kind == Tok::Plus || lex.peek().kind == Tok::Minus) {
            sign = lex.next().kind == Tok::Minus ? -1 : 1;
            term(lex, sign, p);
        }
        return p;
    }

    void term(LineLexer& lex, int sign, Polynomial& p)
    {
        Rational coeff = sign;
        bool have_coeff = false;
        if (lex.peek().kind == Tok::Minus) {
            lex.next();
            coeff = -coeff;
            if (lex.peek().kind != Tok::Number)
                syntax(lex.peek(), "number after '-'");
        }
        if (lex.peek().kind == Tok::Number) {
            coeff *= rational(lex);
            have_coeff = true;
        }
        if (have_coeff && lex.peek().kind == Tok::Star)
            lex.next();

        std::vector<Factor> word;
        if (lex.peek().kind != Tok::Ident)
            syntax(lex.peek(), "generator");
        while (lex.peek().kind == Tok::Ident) {
            Token g = lex.next();
            auto id = out_.spec.generators.find(g.text);
            if (!id)
                throw ParseError(ParseErrorCode::UnknownGenerator, g.span, "unknown generator " + g.text);
            int exp = 1;
            if (lex.peek().kind == Tok::Caret) {
                lex.next();
                Token e = expect(lex, Tok::Number, "exponent");
                auto value = small_int(e.text);
                if (!value || *value < 1)
                    throw ParseError(ParseErrorCode::Syntax, e.span, "exponent must be a positive integer");
                exp = *value;
            }
            word.push_back({*id, exp});
            if (lex.peek().kind == Tok::Star) {
                lex.next();
                if (lex.peek().kind != Tok::Ident)
                    syntax(lex.peek(), "generator after '*'");
            }
        }
        auto normal = normalize(out_.spec.generators, word);
        if (!normal)
            return;
        if (normal->sign < 0)
            coeff = -coeff;
        p.add_term(normal->monomial, coeff);
    }

    Rational rational(LineLexer& lex)
    {
        Token num = lex.next();
        Integer n(num.text);
        Integer den = 1;
        if (lex.peek().kind == Tok::Slash) {
            lex.next();
            Token d = expect(lex, Tok::Number, "denominator");
            den = Integer(d.text);
            if (den == 0)
                throw ParseError(ParseErrorCode::Syntax, d.span, "zero denominator");
        }
        Rational q(n, den);
        q.canonicalize();
        return q;
    }

    std::string_view text_;
    ParsedModel out_;
    bool have_model_ = false;
};

} // namespace

ParsedModel parse_with_spans(std::string_view text)
{
    return Parser(text).run();
}

ModelSpec parse(std::string_view text)
{
    return parse_with_spans(text).spec;
}

ModelSpec parse_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string serialize(const ModelSpec& spec)
{
    std::string out = "model " + spec.name + "\n";
    if (spec.flags.formal)
        out += "flag formal\n";
    if (spec.flags.nilpotent)
        out += "flag nilpotent\n";
    for (const auto& g : spec.generators)
        out += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
    for (const auto& g : spec.generators) {
        const auto& dg = spec.d(g.id);
        if (!dg.is_zero())
            out += "d " + g.name + " = " + to_string(spec.generators, dg) + "\n";
    }
    return out;
}

} // namespace sullivan::dsl
