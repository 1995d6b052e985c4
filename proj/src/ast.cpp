#include "findel/ast.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

namespace findel {

const char* to_string(Currency c) {
    switch (c) {
        case Currency::USD: return "USD";
        case Currency::EUR: return "EUR";
        case Currency::GBP: return "GBP";
        case Currency::JPY: return "JPY";
        case Currency::CNY: return "CNY";
        case Currency::SGD: return "SGD";
        case Currency::NONE: return "NONE";
    }
    return "NONE";
}

Currency currency_from_string(const std::string& s) {
    if (s == "USD") return Currency::USD;
    if (s == "EUR") return Currency::EUR;
    if (s == "GBP") return Currency::GBP;
    if (s == "JPY") return Currency::JPY;
    if (s == "CNY") return Currency::CNY;
    if (s == "SGD") return Currency::SGD;
    if (s == "NONE") return Currency::NONE;
    throw std::invalid_argument("unknown currency: " + s);
}

std::string time_to_string(Time t) {
    return t == kInfTime ? "INF" : std::to_string(t);
}

bool operator==(const Primitive& a, const Primitive& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
        case PrimTag::Zero: return true;
        case PrimTag::One: return a.currency == b.currency;
        case PrimTag::Scale: return a.factor == b.factor && equal(a.left, b.left);
        case PrimTag::ScaleObs: return a.addr == b.addr && equal(a.left, b.left);
        case PrimTag::Give: return equal(a.left, b.left);
        case PrimTag::And:
        case PrimTag::Or: return equal(a.left, b.left) && equal(a.right, b.right);
        case PrimTag::If:
            return a.addr == b.addr && equal(a.left, b.left) && equal(a.right, b.right);
        case PrimTag::Timebound:
            return a.t0 == b.t0 && a.t1 == b.t1 && equal(a.left, b.left);
    }
    return false;
}

bool equal(const PrimPtr& a, const PrimPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {
PrimPtr node(Primitive p) { return std::make_shared<const Primitive>(std::move(p)); }
}  // namespace

PrimPtr zero() {
    static const PrimPtr z = node({.tag = PrimTag::Zero});
    return z;
}

PrimPtr one(Currency c) { return node({.tag = PrimTag::One, .currency = c}); }

PrimPtr scale(std::uint64_t k, PrimPtr p) {
    return node({.tag = PrimTag::Scale, .factor = k, .left = std::move(p)});
}

PrimPtr scale_obs(Address a, PrimPtr p) {
    return node({.tag = PrimTag::ScaleObs, .addr = a, .left = std::move(p)});
}

PrimPtr give(PrimPtr p) { return node({.tag = PrimTag::Give, .left = std::move(p)}); }

PrimPtr and_(PrimPtr c1, PrimPtr c2) {
    return node({.tag = PrimTag::And, .left = std::move(c1), .right = std::move(c2)});
}

PrimPtr or_(PrimPtr c1, PrimPtr c2) {
    return node({.tag = PrimTag::Or, .left = std::move(c1), .right = std::move(c2)});
}

PrimPtr if_(Address a, PrimPtr c1, PrimPtr c2) {
    return node({.tag = PrimTag::If, .addr = a, .left = std::move(c1), .right = std::move(c2)});
}

PrimPtr timebound(Time t0, Time t1, PrimPtr p) {
    return node({.tag = PrimTag::Timebound, .t0 = t0, .t1 = t1, .left = std::move(p)});
}

PrimPtr at_(Time t, PrimPtr p, const SugarConfig& cfg) {
    Time lo = t >= cfg.delta ? t - cfg.delta : 0;
    Time hi = t <= kInfTime - cfg.delta ? t + cfg.delta : kInfTime;
    return timebound(lo, hi, std::move(p));
}

PrimPtr before(Time t, PrimPtr p) { return timebound(0, t, std::move(p)); }

PrimPtr after(Time t, PrimPtr p) { return timebound(t, kInfTime, std::move(p)); }

ParseError::ParseError(std::string msg, int line_, int column_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

namespace {

struct Token {
    enum Kind { Ident, Number, LParen, RParen, Comma, End } kind;
    std::string text;
    std::uint64_t value = 0;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Token::End, "", 0, line, col};
        char c = text_[pos_];
        if (c == '(') { advance(); return {Token::LParen, "(", 0, line, col}; }
        if (c == ')') { advance(); return {Token::RParen, ")", 0, line, col}; }
        if (c == ',') { advance(); return {Token::Comma, ",", 0, line, col}; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                advance();
            }
            std::uint64_t v = 0;
            try {
                v = std::stoull(digits);
            } catch (const std::out_of_range&) {
                throw ParseError("number out of range: " + digits, line, col);
            }
            return {Token::Number, digits, v, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                word += text_[pos_];
                advance();
            }
            return {Token::Ident, word, 0, line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, const SugarConfig& cfg) : lexer_(text), cfg_(cfg) {
        tok_ = lexer_.next();
    }

    PrimPtr parse_top() {
        PrimPtr p = parse_prim();
        expect(Token::End, "end of input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, tok_.line, tok_.column);
    }

    void bump() { tok_ = lexer_.next(); }

    void expect(Token::Kind k, const char* what) {
        if (tok_.kind != k) fail(std::string("expected ") + what);
        if (k != Token::End) bump();
    }

    std::uint64_t parse_nat() {
        if (tok_.kind == Token::Number) {
            std::uint64_t v = tok_.value;
            bump();
            return v;
        }
        if (tok_.kind == Token::Ident && tok_.text == "INF") {
            bump();
            return kInfTime;
        }
        fail("expected number or INF");
    }

    Currency parse_currency() {
        if (tok_.kind != Token::Ident) fail("expected currency name");
        Currency c;
        try {
            c = currency_from_string(tok_.text);
        } catch (const std::invalid_argument&) {
            fail("unknown currency: " + tok_.text);
        }
        bump();
        return c;
    }

    PrimPtr parse_prim() {
        if (tok_.kind != Token::Ident) fail("expected primitive");
        Token name_tok = tok_;
        std::string name = tok_.text;
        bump();
        if (name == "Zero") return zero();
        static const char* known[] = {"One",  "Scale", "ScaleObs", "Give",
                                      "And",  "Or",    "If",       "Timebound",
                                      "At",   "Before", "After"};
        bool recognized = false;
        for (const char* k : known) recognized |= name == k;
        if (!recognized)
            throw ParseError("unknown primitive: " + name, name_tok.line,
                             name_tok.column);
        expect(Token::LParen, "'('");
        PrimPtr result;
        if (name == "One") {
            result = one(parse_currency());
        } else if (name == "Scale") {
            std::uint64_t k = parse_nat();
            expect(Token::Comma, "','");
            result = scale(k, parse_prim());
        } else if (name == "ScaleObs") {
            Address a = parse_nat();
            expect(Token::Comma, "','");
            result = scale_obs(a, parse_prim());
        } else if (name == "Give") {
            result = give(parse_prim());
        } else if (name == "And" || name == "Or") {
            PrimPtr c1 = parse_prim();
            expect(Token::Comma, "','");
            PrimPtr c2 = parse_prim();
            result = name == "And" ? and_(c1, c2) : or_(c1, c2);
        } else if (name == "If") {
            Address a = parse_nat();
            expect(Token::Comma, "','");
            PrimPtr c1 = parse_prim();
            expect(Token::Comma, "','");
            result = if_(a, c1, parse_prim());
        } else if (name == "Timebound") {
            Time t0 = parse_nat();
            expect(Token::Comma, "','");
            Time t1 = parse_nat();
            expect(Token::Comma, "','");
            result = timebound(t0, t1, parse_prim());
        } else if (name == "At") {
            Time t = parse_nat();
            expect(Token::Comma, "','");
            result = at_(t, parse_prim(), cfg_);
        } else if (name == "Before") {
            Time t = parse_nat();
            expect(Token::Comma, "','");
            result = before(t, parse_prim());
        } else if (name == "After") {
            Time t = parse_nat();
            expect(Token::Comma, "','");
            result = after(t, parse_prim());
        } else {
            throw ParseError("unknown primitive: " + name, name_tok.line,
                             name_tok.column);
        }
        expect(Token::RParen, "')'");
        return result;
    }

    Lexer lexer_;
    SugarConfig cfg_;
    Token tok_;
};

void print_to(const PrimPtr& p, std::ostringstream& out) {
    switch (p->tag) {
        case PrimTag::Zero:
            out << "Zero";
            return;
        case PrimTag::One:
            out << "One(" << to_string(p->currency) << ")";
            return;
        case PrimTag::Scale:
            out << "Scale(" << time_to_string(p->factor) << ", ";
            print_to(p->left, out);
            out << ")";
            return;
        case PrimTag::ScaleObs:
            out << "ScaleObs(" << time_to_string(p->addr) << ", ";
            print_to(p->left, out);
            out << ")";
            return;
        case PrimTag::Give:
            out << "Give(";
            print_to(p->left, out);
            out << ")";
            return;
        case PrimTag::And:
        case PrimTag::Or:
            out << (p->tag == PrimTag::And ? "And(" : "Or(");
            print_to(p->left, out);
            out << ", ";
            print_to(p->right, out);
            out << ")";
            return;
        case PrimTag::If:
            out << "If(" << time_to_string(p->addr) << ", ";
            print_to(p->left, out);
            out << ", ";
            print_to(p->right, out);
            out << ")";
            return;
        case PrimTag::Timebound:
            out << "Timebound(" << time_to_string(p->t0) << ", " << time_to_string(p->t1)
                << ", ";
            print_to(p->left, out);
            out << ")";
            return;
    }
}

}  // namespace

PrimPtr parse(const std::string& text, const SugarConfig& cfg) {
    return Parser(text, cfg).parse_top();
}

std::string print(const PrimPtr& p) {
    std::ostringstream out;
    print_to(p, out);
    return out.str();
}

}  // namespace findel
