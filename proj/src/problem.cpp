#include "deduce/problem.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace deduce {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, LBracket, RBracket, Colon, Op, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int column = 0;
};

bool ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '?'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view text, int line, int col0)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        const int col = col0 + static_cast<int>(i);
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), col});
            i = j;
            continue;
        }
        Tok k = Tok::Op;
        switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case ':': k = Tok::Colon; break;
        default:
            if (!std::isprint(static_cast<unsigned char>(c)))
                throw ParseError(line, col, "unexpected character");
        }
        out.push_back({k, std::string(1, c), col});
        ++i;
    }
    out.push_back({Tok::End, "", col0 + static_cast<int>(text.size())});
    return out;
}

struct PTree {
    std::string head;
    bool hole = false;
    bool infix = false;
    std::size_t hole_number = 0;
    int column = 0;
    std::vector<PTree> args;
};

class Parser {
public:
    Parser(std::vector<Token> toks, int line, bool allow_holes)
        : toks_(std::move(toks)), line_(line), allow_holes_(allow_holes)
    {
    }

    PTree parse_all()
    {
        PTree t = expr();
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }
    void expect(Tok k, const char* what)
    {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what);
        ++pos_;
    }

    PTree expr()
    {
        PTree first = unary();
        if (peek().kind != Tok::Op) return first;
        const Token op = peek();
        PTree sum{op.text, false, true, 0, op.column, {}};
        sum.args.push_back(std::move(first));
        while (peek().kind == Tok::Op) {
            if (peek().text != op.text)
                fail(peek(), "operators '" + op.text + "' and '" + peek().text + "' mixed without parentheses");
            ++pos_;
            sum.args.push_back(unary());
        }
        return sum;
    }

    PTree unary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::LParen: {
            ++pos_;
            PTree inner = expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::LBracket: {
            if (!allow_holes_) fail(t, "holes are only allowed in contexts");
            ++pos_;
            const Token& num = peek();
            if (num.kind != Tok::Ident || !std::all_of(num.text.begin(), num.text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }))
                fail(num, "expected hole number");
            PTree h{"", true, false, std::stoul(num.text), t.column, {}};
            ++pos_;
            expect(Tok::RBracket, "']'");
            return h;
        }
        case Tok::Ident: {
            ++pos_;
            PTree node{t.text, false, false, 0, t.column, {}};
            if (peek().kind == Tok::LParen) {
                ++pos_;
                node.args.push_back(expr());
                while (peek().kind == Tok::Comma) {
                    ++pos_;
                    node.args.push_back(expr());
                }
                expect(Tok::RParen, "')' or ','");
            }
            return node;
        }
        case Tok::End: fail(t, "unexpected end of term");
        default: fail(t, "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int line_;
    bool allow_holes_;
};

RawTerm to_raw(const Signature& sig, const PTree& p, int line)
{
    RawTerm raw{p.head, {}};
    raw.args.reserve(p.args.size());
    for (const auto& a : p.args) raw.args.push_back(to_raw(sig, a, line));

    auto arity_error = [&](int want) {
        throw ParseError(line, p.column,
                         "'" + p.head + "' expects " + std::to_string(want) + " argument(s), got " +
                             std::to_string(p.args.size()));
    };
    if (auto c = parse_ctor(p.head)) {
        if (static_cast<int>(p.args.size()) != ctor_arity(*c)) arity_error(ctor_arity(*c));
        return raw;
    }
    if (auto ref = sig.lookup_symbol(p.head)) {
        const auto& decl = sig.symbol(*ref);
        if (decl.role == SymbolRole::Plus) {
            if (!p.infix) throw ParseError(line, p.column, "operator '" + p.head + "' must be written infix");
        } else if (static_cast<int>(p.args.size()) != decl.arity) {
            arity_error(decl.arity);
        }
        return raw;
    }
    if (p.infix) throw ParseError(line, p.column, "undeclared operator '" + p.head + "'");
    const char c0 = p.head.front();
    if (c0 == '?' || std::isupper(static_cast<unsigned char>(c0)))
        throw ParseError(line, p.column, "non-ground term: '" + p.head + "' is a variable");
    if (!std::islower(static_cast<unsigned char>(c0)) || !p.args.empty())
        throw ParseError(line, p.column, "undeclared symbol '" + p.head + "'");
    return raw;
}

Context::Node to_context(const Signature& sig, TheoryId th, const PTree& p, std::size_t& holes)
{
    if (p.hole) {
        if (p.hole_number != ++holes)
            throw ParseError(1, p.column, "hole [" + std::to_string(p.hole_number) + "] out of order");
        return Context::Node{};
    }
    auto ref = sig.lookup_symbol(p.head);
    if (!ref || ref->theory != th)
        throw ParseError(1, p.column, "'" + p.head + "' is not a symbol of theory '" + sig.theory(th).name + "'");
    const auto& decl = sig.symbol(*ref);
    if (decl.role != SymbolRole::Plus && static_cast<int>(p.args.size()) != decl.arity)
        throw ParseError(1, p.column, "arity mismatch for '" + p.head + "'");
    Context::Node n{Context::Kind::Symbol, ref->symbol, {}};
    for (const auto& a : p.args) n.children.push_back(to_context(sig, th, a, holes));
    return n;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool operator_token(const Token& t) { return t.kind == Tok::Op; }
bool constant_token(const Token& t)
{
    return t.kind == Tok::Ident &&
           (std::isupper(static_cast<unsigned char>(t.text.front())) || std::isdigit(static_cast<unsigned char>(t.text.front())));
}

TheoryDef parse_theory(std::string_view rest, int line, int col0)
{
    auto toks = lex(rest, line, col0);
    std::size_t i = 0;
    if (toks[i].kind != Tok::Ident) throw ParseError(line, toks[i].column, "expected theory name");
    std::string name = toks[i++].text;
    if (toks[i].kind != Tok::Colon) throw ParseError(line, toks[i].column, "expected ':'");
    ++i;
    if (toks[i].kind != Tok::Ident) throw ParseError(line, toks[i].column, "expected theory kind");
    auto kind = parse_kind(toks[i].text);
    if (!kind) throw ParseError(line, toks[i].column, "unknown theory kind '" + toks[i].text + "' (expected xor, ag, ac or empty)");
    ++i;

    std::vector<std::string> symbols;
    TheoryDef layout = TheoryDef::make(name, *kind);
    for (; toks[i].kind != Tok::End; ++i) {
        const std::size_t slot = symbols.size();
        if (slot >= layout.symbols.size())
            throw ParseError(line, toks[i].column, "too many symbols for a theory of kind " + std::string(kind_name(*kind)));
        const bool plus = layout.symbols[slot].role == SymbolRole::Plus;
        if (plus ? !operator_token(toks[i]) : !constant_token(toks[i]))
            throw ParseError(line, toks[i].column,
                             plus ? "operator must be a single punctuation character"
                                  : "inverse and zero names must start with an upper-case letter or a digit");
        symbols.push_back(toks[i].text);
    }
    return TheoryDef::make(std::move(name), *kind, symbols);
}

} // namespace

RawTerm parse_term(const Signature& sig, std::string_view text, int line)
{
    Parser p(lex(text, line, 1), line, false);
    return to_raw(sig, p.parse_all(), line);
}

Context parse_context(const Signature& sig, TheoryId th, std::string_view text)
{
    Parser p(lex(text, 1, 1), 1, true);
    std::size_t holes = 0;
    return Context{th, to_context(sig, th, p.parse_all(), holes)};
}

Problem parse_problem(std::string_view text)
{
    Problem problem;
    struct TermLine {
        bool goal;
        std::string_view body;
        int line;
        int column;
    };
    std::vector<TermLine> term_lines;
    std::vector<int> theory_lines;

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::size_t lead = line.find_first_not_of(" \t\r");
        if (lead == std::string_view::npos) continue;
        std::string_view body = trim(line);
        const std::size_t kw_end = std::min(body.find_first_of(" \t"), body.size());
        std::string_view keyword = body.substr(0, kw_end);
        std::string_view rest = body.substr(kw_end);
        const int rest_col = static_cast<int>(lead + kw_end) + 1;

        if (keyword == "theory" || keyword.starts_with("theory:")) {
            try {
                problem.theories.push_back(parse_theory(body.substr(6), line_no, static_cast<int>(lead) + 7));
                Signature check(problem.theories);
            } catch (const TermError& e) {
                throw ParseError(line_no, static_cast<int>(lead) + 1, e.what());
            }
            theory_lines.push_back(line_no);
        } else if (keyword == "assume" || keyword == "goal") {
            if (trim(rest).empty()) throw ParseError(line_no, rest_col, "missing term");
            if (keyword == "goal" && std::any_of(term_lines.begin(), term_lines.end(), [](auto& t) { return t.goal; }))
                throw ParseError(line_no, static_cast<int>(lead) + 1, "more than one goal");
            term_lines.push_back({keyword == "goal", rest, line_no, rest_col});
        } else {
            throw ParseError(line_no, static_cast<int>(lead) + 1,
                             "expected 'theory', 'assume' or 'goal', found '" + std::string(keyword) + "'");
        }
    }

    const Signature sig = problem.signature();
    bool have_goal = false;
    for (const auto& tl : term_lines) {
        Parser p(lex(tl.body, tl.line, tl.column), tl.line, false);
        RawTerm t = to_raw(sig, p.parse_all(), tl.line);
        if (tl.goal) {
            problem.goal = std::move(t);
            have_goal = true;
        } else {
            problem.assumptions.push_back(std::move(t));
        }
    }
    if (!have_goal) throw ParseError(line_no, 1, "missing goal");
    return problem;
}

} // namespace deduce
