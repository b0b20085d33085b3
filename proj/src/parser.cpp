#include "ucp/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace ucp {

ParseError::ParseError(SourceSpan span, std::string message)
    : std::runtime_error("line " + std::to_string(span.line_start) + ", col " +
                         std::to_string(span.col_start) + ": " + message),
      span_(span),
      message_(std::move(message)) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::set<std::string, std::less<>>& forbidden_keywords() {
    static const std::set<std::string, std::less<>> kw = {
        "for",  "while",  "if",      "elif",  "else",   "import",   "from",
        "with", "try",    "except",  "finally", "class", "lambda",  "global",
        "nonlocal", "del", "pass",   "break", "continue", "raise",  "yield",
        "match", "print", "in",      "is",    "not",    "and",      "or",
        "def",  "None",   "True",    "False",
    };
    return kw;
}

struct Token {
    enum Kind { Ident, Number, Str, Punct, End } kind = End;
    std::string text;
    SourceSpan span;
};

// Tokenizer for one logical line; statements never span lines in this dialect.
class LineLexer {
public:
    LineLexer(std::string_view line, int line_no, int col_offset = 0)
        : line_(line), line_no_(line_no), col_offset_(col_offset) {
        advance();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        last_span_ = t.span;
        advance();
        return t;
    }

    SourceSpan here() const { return tok_.span; }
    SourceSpan last_span() const { return last_span_; }

private:
    void advance() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) {
            if (line_[pos_] == '\t')
                throw ParseError(span_at(pos_, pos_), "tab character is not allowed");
            ++pos_;
        }
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            tok_ = Token{Token::End, "", span_at(pos_, pos_)};
            return;
        }
        size_t start = pos_;
        char c = line_[pos_];
        if (ident_start(c)) {
            while (pos_ < line_.size() && ident_char(line_[pos_])) ++pos_;
            tok_ = Token{Token::Ident, std::string(line_.substr(start, pos_ - start)),
                         span_at(start, pos_ - 1)};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < line_.size() &&
             std::isdigit(static_cast<unsigned char>(line_[pos_ + 1])))) {
            bool seen_dot = false;
            while (pos_ < line_.size()) {
                char d = line_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    ++pos_;
                } else if (d == '.' && !seen_dot) {
                    seen_dot = true;
                    ++pos_;
                } else {
                    break;
                }
            }
            if (pos_ < line_.size() && (ident_char(line_[pos_]) || line_[pos_] == '.'))
                throw ParseError(span_at(start, pos_), "malformed number literal");
            tok_ = Token{Token::Number, std::string(line_.substr(start, pos_ - start)),
                         span_at(start, pos_ - 1)};
            return;
        }
        if (c == '"') {
            ++pos_;
            size_t body = pos_;
            while (pos_ < line_.size() && line_[pos_] != '"') {
                if (line_[pos_] == '\\')
                    throw ParseError(span_at(pos_, pos_), "escape sequences are not supported");
                ++pos_;
            }
            if (pos_ >= line_.size())
                throw ParseError(span_at(start, line_.empty() ? 0 : line_.size() - 1),
                                 "unterminated string literal");
            tok_ = Token{Token::Str, std::string(line_.substr(body, pos_ - body)),
                         span_at(start, pos_)};
            ++pos_;
            return;
        }
        static constexpr std::string_view multi[] = {"==", "**", "//", "!=", "<=", ">=",
                                                     "+=", "-=", "*=", "/=", ":="};
        for (std::string_view m : multi) {
            if (line_.substr(pos_, 2) == m) {
                tok_ = Token{Token::Punct, std::string(m), span_at(pos_, pos_ + 1)};
                pos_ += 2;
                return;
            }
        }
        static constexpr std::string_view singles = "=+-*/(){}:,<>%[].;'";
        if (singles.find(c) != std::string_view::npos) {
            tok_ = Token{Token::Punct, std::string(1, c), span_at(pos_, pos_)};
            ++pos_;
            return;
        }
        throw ParseError(span_at(pos_, pos_), "unexpected character");
    }

    SourceSpan span_at(size_t from, size_t to) const {
        return SourceSpan{line_no_, col_offset_ + static_cast<int>(from) + 1, line_no_,
                          col_offset_ + static_cast<int>(to) + 1};
    }

    std::string_view line_;
    int line_no_;
    int col_offset_;
    size_t pos_ = 0;
    Token tok_;
    SourceSpan last_span_;
};

void expect_punct(LineLexer& lex, std::string_view p) {
    Token t = lex.take();
    if (t.kind != Token::Punct || t.text != p)
        throw ParseError(t.span, "expected `" + std::string(p) + "`");
}

// Counter() or Counter({"sym": n, ...}); the leading `Counter` ident is already consumed.
UnitVector parse_counter_literal(LineLexer& lex, const SourceSpan& start) {
    expect_punct(lex, "(");
    if (lex.peek().kind == Token::Punct && lex.peek().text == ")") {
        lex.take();
        return UnitVector{};
    }
    expect_punct(lex, "{");
    UnitVector out;
    std::set<std::string> seen;
    while (true) {
        Token key = lex.take();
        if (key.kind != Token::Str)
            throw ParseError(key.span, "expected a quoted unit symbol");
        if (key.text.empty())
            throw ParseError(key.span, "unit symbol must be non-empty");
        if (!seen.insert(key.text).second)
            throw ParseError(key.span, "duplicate unit symbol `" + key.text + "`");
        expect_punct(lex, ":");
        bool negative = false;
        if (lex.peek().kind == Token::Punct &&
            (lex.peek().text == "-" || lex.peek().text == "+")) {
            negative = lex.take().text == "-";
        }
        Token num = lex.take();
        if (num.kind != Token::Number || num.text.find('.') != std::string::npos)
            throw ParseError(num.span, "unit exponent must be an integer");
        long exp = std::strtol(num.text.c_str(), nullptr, 10);
        if (negative) exp = -exp;
        out = out.combine(UnitVector{{key.text.c_str(), static_cast<int>(exp)}});
        Token sep = lex.take();
        if (sep.kind == Token::Punct && sep.text == ",") {
            if (lex.peek().kind == Token::Punct && lex.peek().text == "}") {
                lex.take();
                break;
            }
            continue;
        }
        if (sep.kind == Token::Punct && sep.text == "}") break;
        throw ParseError(sep.span, "malformed Counter literal");
    }
    expect_punct(lex, ")");
    (void)start;
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view source) : source_(source) { split_lines(); }

    Program parse() {
        Program prog;
        prog.source = std::string(source_);
        size_t i = skip_blank(0);
        if (i >= lines_.size()) throw ParseError({1, 1, 1, 1}, "expected a function definition");
        prog.name = parse_header(i);
        ++i;
        i = skip_blank(i);
        if (i < lines_.size() && indent_of(i) == 4 && is_docstring_start(i))
            i = parse_docstring(i, prog);
        bool saw_return = false;
        for (i = skip_blank(i); i < lines_.size(); i = skip_blank(i + 1)) {
            int indent = indent_of(i);
            if (indent != 4) {
                SourceSpan s = line_span(i);
                if (indent == 0)
                    throw ParseError(s, "content outside the function body is not supported");
                throw ParseError(s, "indentation error: body statements use four spaces");
            }
            if (saw_return) throw ParseError(line_span(i), "statement after return");
            Statement stmt = parse_statement(i);
            saw_return = std::holds_alternative<ReturnStmt>(stmt.node);
            prog.statements.push_back(std::move(stmt));
        }
        return prog;
    }

private:
    void split_lines() {
        size_t start = 0;
        for (size_t i = 0; i <= source_.size(); ++i) {
            if (i == source_.size() || source_[i] == '\n') {
                std::string_view line = source_.substr(start, i - start);
                if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
                lines_.push_back(line);
                start = i + 1;
            }
        }
        // Trailing newline produces one empty tail entry; harmless, skipped as blank.
    }

    int indent_of(size_t i) const {
        int n = 0;
        for (char c : lines_[i]) {
            if (c == ' ') {
                ++n;
            } else if (c == '\t') {
                throw ParseError({int(i) + 1, n + 1, int(i) + 1, n + 1},
                                 "tab character in indentation");
            } else {
                break;
            }
        }
        return n;
    }

    bool blank_or_comment(size_t i) const {
        std::string_view l = lines_[i];
        size_t p = l.find_first_not_of(" \t");
        return p == std::string_view::npos || l[p] == '#';
    }

    size_t skip_blank(size_t i) const {
        while (i < lines_.size() && blank_or_comment(i)) ++i;
        return i;
    }

    SourceSpan line_span(size_t i) const {
        int indent = 0;
        while (indent < int(lines_[i].size()) && lines_[i][indent] == ' ') ++indent;
        int last = int(lines_[i].size());
        return SourceSpan{int(i) + 1, indent + 1, int(i) + 1, last > 0 ? last : 1};
    }

    std::string parse_header(size_t i) {
        if (indent_of(i) != 0)
            throw ParseError(line_span(i), "function definition must start at column 1");
        LineLexer lex(lines_[i], int(i) + 1);
        Token t = lex.take();
        if (t.kind != Token::Ident || t.text != "def") throw ParseError(t.span, "expected `def`");
        Token name = lex.take();
        if (name.kind != Token::Ident || forbidden_keywords().count(name.text))
            throw ParseError(name.span, "expected a function name");
        expect_punct(lex, "(");
        if (!(lex.peek().kind == Token::Punct && lex.peek().text == ")"))
            throw ParseError(lex.here(), "parameters are not supported");
        lex.take();
        expect_punct(lex, ":");
        if (lex.peek().kind != Token::End)
            throw ParseError(lex.here(), "unexpected content after function header");
        return name.text;
    }

    bool is_docstring_start(size_t i) const {
        std::string_view l = lines_[i];
        size_t p = l.find_first_not_of(' ');
        return p != std::string_view::npos && l.substr(p, 3) == "\"\"\"";
    }

    size_t parse_docstring(size_t i, Program& prog) {
        size_t open = lines_[i].find("\"\"\"");
        std::string content;
        size_t pos = open + 3;
        size_t line = i;
        while (true) {
            std::string_view l = lines_[line];
            size_t close = l.find("\"\"\"", pos);
            if (close != std::string_view::npos) {
                content.append(l.substr(pos, close - pos));
                std::string_view rest = l.substr(close + 3);
                size_t extra = rest.find_first_not_of(" \t");
                if (extra != std::string_view::npos && rest[extra] != '#')
                    throw ParseError({int(line) + 1, int(close + 4), int(line) + 1, int(l.size())},
                                     "unexpected content after docstring");
                prog.docstring = std::move(content);
                return line + 1;
            }
            content.append(l.substr(pos));
            content.push_back('\n');
            ++line;
            pos = 0;
            if (line >= lines_.size()) throw ParseError(line_span(i), "unterminated docstring");
        }
    }

    Statement parse_statement(size_t i) {
        LineLexer lex(lines_[i], int(i) + 1);
        Token first = lex.peek();
        if (first.kind == Token::Str || (first.kind == Token::Punct && first.text == "'"))
            throw ParseError(first.span, "string expressions are not supported");

        Statement stmt;
        if (first.kind == Token::Ident && first.text == "return") {
            lex.take();
            if (lex.peek().kind == Token::End)
                throw ParseError(first.span, "return requires a value");
            NumExprPtr e = parse_num_expr(lex);
            end_of_line(lex);
            stmt.span = merge(first.span, e->span);
            stmt.node = ReturnStmt{std::move(e)};
            return stmt;
        }
        if (first.kind == Token::Ident && first.text == "assert") {
            lex.take();
            AssertStmt as;
            as.operands.push_back(parse_unit_expr(lex));
            if (!(lex.peek().kind == Token::Punct && lex.peek().text == "=="))
                throw ParseError(lex.here(), "assert requires a chain of unit equalities");
            while (lex.peek().kind == Token::Punct) {
                const std::string& p = lex.peek().text;
                if (p == "==") {
                    lex.take();
                    as.operands.push_back(parse_unit_expr(lex));
                } else if (p == "!=" || p == "<" || p == ">" || p == "<=" || p == ">=") {
                    throw ParseError(lex.here(), "only `==` comparisons are supported in assert");
                } else {
                    break;
                }
            }
            end_of_line(lex);
            stmt.span = merge(first.span, as.operands.back()->span);
            stmt.node = std::move(as);
            return stmt;
        }
        if (first.kind == Token::Ident && !forbidden_keywords().count(first.text)) {
            Token target = lex.take();
            Token eq = lex.take();
            if (eq.kind == Token::Punct && eq.text == "(")
                throw ParseError(eq.span, "function calls are not supported");
            if (eq.kind == Token::Punct &&
                (eq.text == "+=" || eq.text == "-=" || eq.text == "*=" || eq.text == "/="))
                throw ParseError(eq.span, "augmented assignment is not supported");
            if (eq.kind != Token::Punct || eq.text != "=")
                throw ParseError(eq.span, "expected `=`");
            if (target.text == "Counter")
                throw ParseError(target.span, "`Counter` is reserved for unit literals");
            if (is_unit_name(target.text)) {
                UnitExprPtr e = parse_unit_expr(lex);
                end_of_line(lex);
                stmt.span = merge(target.span, e->span);
                stmt.node = UnitAssignStmt{target.text, std::move(e)};
            } else {
                NumExprPtr e = parse_num_expr(lex);
                end_of_line(lex);
                stmt.span = merge(target.span, e->span);
                stmt.node = AssignStmt{target.text, std::move(e)};
            }
            return stmt;
        }
        if (first.kind == Token::Ident)
            throw ParseError(first.span, "unsupported construct `" + first.text + "`");
        throw ParseError(first.span, "unsupported construct");
    }

    void end_of_line(LineLexer& lex) {
        const Token& t = lex.peek();
        if (t.kind == Token::End) return;
        if (t.kind == Token::Punct && t.text == "=")
            throw ParseError(t.span, "chained assignment is not supported");
        throw ParseError(t.span, "unexpected trailing content");
    }

    // num_expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
    // unary := '-' unary | primary ; primary := NUMBER | IDENT | '(' num_expr ')'
    NumExprPtr parse_num_expr(LineLexer& lex) {
        NumExprPtr lhs = parse_num_term(lex);
        while (lex.peek().kind == Token::Punct &&
               (lex.peek().text == "+" || lex.peek().text == "-")) {
            NumOp op = lex.take().text == "+" ? NumOp::Add : NumOp::Sub;
            NumExprPtr rhs = parse_num_term(lex);
            SourceSpan s = merge(lhs->span, rhs->span);
            lhs = num_binop(op, std::move(lhs), std::move(rhs), s);
        }
        return lhs;
    }

    NumExprPtr parse_num_term(LineLexer& lex) {
        NumExprPtr lhs = parse_num_unary(lex);
        while (lex.peek().kind == Token::Punct) {
            const std::string& p = lex.peek().text;
            if (p == "**" || p == "//" || p == "%")
                throw ParseError(lex.here(), "operator `" + p + "` is not supported");
            if (p != "*" && p != "/") break;
            NumOp op = lex.take().text == "*" ? NumOp::Mul : NumOp::Div;
            NumExprPtr rhs = parse_num_unary(lex);
            SourceSpan s = merge(lhs->span, rhs->span);
            lhs = num_binop(op, std::move(lhs), std::move(rhs), s);
        }
        return lhs;
    }

    NumExprPtr parse_num_unary(LineLexer& lex) {
        if (lex.peek().kind == Token::Punct && lex.peek().text == "-") {
            Token minus = lex.take();
            NumExprPtr inner = parse_num_unary(lex);
            return num_negate(inner, merge(minus.span, inner->span));
        }
        return parse_num_primary(lex);
    }

    NumExprPtr parse_num_primary(LineLexer& lex) {
        Token t = lex.take();
        if (t.kind == Token::Number) return num_literal(t.text, t.span);
        if (t.kind == Token::Ident) {
            if (t.text == "Counter")
                throw ParseError(t.span, "unit literal cannot appear in a numeric expression");
            if (forbidden_keywords().count(t.text))
                throw ParseError(t.span, "unsupported construct `" + t.text + "`");
            if (lex.peek().kind == Token::Punct && lex.peek().text == "(")
                throw ParseError(lex.here(), "function calls are not supported");
            if (is_unit_name(t.text))
                throw ParseError(t.span, "unit variable `" + t.text +
                                             "` cannot appear in a numeric expression");
            return num_var(t.text, t.span);
        }
        if (t.kind == Token::Punct && t.text == "(") {
            NumExprPtr inner = parse_num_expr(lex);
            expect_punct(lex, ")");
            return inner;
        }
        throw ParseError(t.span, "expected a number, variable, or parenthesized expression");
    }

    // unit_expr := unit_term (('+'|'-') unit_term)* ;
    // unit_term := Counter literal | IDENT | '(' unit_expr ')'
    UnitExprPtr parse_unit_expr(LineLexer& lex) {
        UnitExprPtr lhs = parse_unit_term(lex);
        while (lex.peek().kind == Token::Punct) {
            const std::string& p = lex.peek().text;
            if (p == "*" || p == "/")
                throw ParseError(lex.here(), "unit expressions support only `+` and `-`");
            if (p != "+" && p != "-") break;
            UnitOp op = lex.take().text == "+" ? UnitOp::Combine : UnitOp::Difference;
            UnitExprPtr rhs = parse_unit_term(lex);
            SourceSpan s = merge(lhs->span, rhs->span);
            lhs = unit_binop(op, std::move(lhs), std::move(rhs), s);
        }
        return lhs;
    }

    UnitExprPtr parse_unit_term(LineLexer& lex) {
        Token t = lex.take();
        if (t.kind == Token::Ident && t.text == "Counter") {
            UnitVector v = parse_counter_literal(lex, t.span);
            return unit_literal(std::move(v), merge(t.span, lex.last_span()));
        }
        if (t.kind == Token::Ident) {
            if (forbidden_keywords().count(t.text))
                throw ParseError(t.span, "unsupported construct `" + t.text + "`");
            if (lex.peek().kind == Token::Punct && lex.peek().text == "(")
                throw ParseError(lex.here(), "function calls are not supported");
            return unit_var(t.text, t.span);
        }
        if (t.kind == Token::Punct && t.text == "(") {
            UnitExprPtr inner = parse_unit_expr(lex);
            expect_punct(lex, ")");
            return inner;
        }
        if (t.kind == Token::Number)
            throw ParseError(t.span, "a number cannot appear in a unit expression");
        throw ParseError(t.span, "expected a Counter literal or unit variable");
    }

    std::string_view source_;
    std::vector<std::string_view> lines_;
};

}  // namespace

Program parse_program(std::string_view source) { return Parser(source).parse(); }

UnitVector parse_unit_literal(std::string_view text) {
    LineLexer lex(text, 1);
    Token t = lex.take();
    if (t.kind != Token::Ident || t.text != "Counter")
        throw ParseError(t.span, "expected a Counter literal");
    UnitVector v = parse_counter_literal(lex, t.span);
    if (lex.peek().kind != Token::End)
        throw ParseError(lex.here(), "unexpected trailing content");
    return v;
}

}  // namespace ucp
