#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "bqa/quiver.hpp"
#include "bqa/scalar.hpp"

namespace bqa {

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos + 1) + ")"), position(pos) {}
    std::size_t position;
};

struct ExprError : Error {
    using Error::Error;
};

/// Sparse K-combination of paths sharing one (source, target) pair. The zero
/// element carries no block; it adds to and multiplies with anything.
class PathExpr {
public:
    PathExpr() = default;

    static PathExpr zero() { return PathExpr(); }

    static PathExpr of_path(const Path& p, const Scalar& c) {
        PathExpr e;
        if (c.is_zero()) return e;
        e.src_ = p.source();
        e.tgt_ = p.target();
        e.terms_.emplace(p, c);
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    int source() const { return src_; }
    int target() const { return tgt_; }
    const std::map<Path, Scalar>& terms() const { return terms_; }

    void add_term(const Path& p, const Scalar& c) {
        if (c.is_zero()) return;
        if (terms_.empty()) {
            src_ = p.source();
            tgt_ = p.target();
        } else if (p.source() != src_ || p.target() != tgt_) {
            throw ExprError("mixed (source,target) sum: (" + std::to_string(src_) + "," +
                            std::to_string(tgt_) + ") vs (" + std::to_string(p.source()) + "," +
                            std::to_string(p.target()) + ")");
        }
        auto [it, fresh] = terms_.emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
        if (terms_.empty()) src_ = tgt_ = 0;
    }

    PathExpr& operator+=(const PathExpr& o) {
        for (const auto& [p, c] : o.terms_) add_term(p, c);
        return *this;
    }

    PathExpr& operator-=(const PathExpr& o) {
        for (const auto& [p, c] : o.terms_) add_term(p, -c);
        return *this;
    }

    friend PathExpr operator+(PathExpr a, const PathExpr& b) { return a += b; }
    friend PathExpr operator-(PathExpr a, const PathExpr& b) { return a -= b; }

    PathExpr scaled(const Scalar& c) const {
        PathExpr out;
        if (c.is_zero()) return out;
        for (const auto& [p, x] : terms_) out.add_term(p, x * c);
        return out;
    }

    friend PathExpr operator*(const PathExpr& a, const PathExpr& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.tgt_ != b.src_)
            throw ExprError("non-composable product: target " + std::to_string(a.tgt_) +
                            " vs source " + std::to_string(b.src_));
        PathExpr out;
        for (const auto& [p, c] : a.terms_)
            for (const auto& [q, d] : b.terms_)
                out.add_term(Path::concat_unchecked(p, q), c * d);
        return out;
    }

    /// Power by repeated product; exponent 0 yields the trivial path and
    /// requires a cycle block.
    PathExpr power(unsigned k) const {
        if (k == 1) return *this;
        if (is_zero()) {
            if (k == 0) throw ExprError("zero element has no 0-th power");
            return zero();
        }
        if (src_ != tgt_) throw ExprError("power of a non-cycle element");
        PathExpr acc = of_path(Path::trivial(src_), Scalar::one(terms_.begin()->second.field()));
        for (unsigned t = 0; t < k; ++t) acc = acc * *this;
        return acc;
    }

    bool operator==(const PathExpr& o) const {
        return src_ == o.src_ && tgt_ == o.tgt_ && terms_ == o.terms_;
    }

private:
    int src_ = 0;
    int tgt_ = 0;
    std::map<Path, Scalar> terms_;
};

namespace detail {

// Recursive-descent parser for the expression grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := atom ('*' atom)*
//   atom   := scalar | factor
//   factor := (name | '(' expr ')') ['^' uint]
//   scalar := uint | uint '/' uint | 'l'
// Names are arrow names or e<k> for trivial paths; 'l' is the presentation
// parameter. A bare "0" denotes the zero element.
class ExprParser {
public:
    ExprParser(const std::string& text, const Quiver& q, const FieldDescriptor& f,
               const Scalar& lambda)
        : text_(text), q_(q), f_(f), lambda_(lambda) {}

    PathExpr run() {
        skip_ws();
        PathExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::string parse_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected a number", pos_);
        return text_.substr(start, pos_ - start);
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) throw ParseError("expected a name", pos_);
        return text_.substr(start, pos_ - start);
    }

    PathExpr parse_expr() {
        bool neg = eat('-');
        PathExpr acc = parse_term(neg);
        for (;;) {
            if (eat('+'))
                acc += parse_term(false);
            else if (eat('-'))
                acc += parse_term(true);
            else
                break;
        }
        return acc;
    }

    PathExpr parse_term(bool negate) {
        Scalar coef = Scalar::of_int(f_, negate ? -1 : 1);
        std::optional<PathExpr> acc;
        std::size_t term_start = pos_;
        for (;;) {
            std::size_t at = pos_;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= parse_scalar();
            } else if (c == 'l' && is_lambda_ident()) {
                pos_ += 1;
                coef *= lambda_;
            } else {
                PathExpr f = parse_factor(at);
                if (acc) {
                    try {
                        acc = *acc * f;
                    } catch (const ExprError& e) {
                        throw ParseError(e.what(), at);
                    }
                } else {
                    acc = f;
                }
            }
            if (!eat('*')) break;
        }
        if (!acc) {
            // A lone literal 0 is the zero element; other bare scalars are not
            // path algebra elements.
            if (coef.is_zero()) return PathExpr::zero();
            throw ParseError("term has no path factor", term_start);
        }
        return acc->scaled(coef);
    }

    bool is_lambda_ident() {
        // 'l' not followed by an identifier character.
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'l') return false;
        if (pos_ + 1 < text_.size()) {
            char n = text_[pos_ + 1];
            if (std::isalnum(static_cast<unsigned char>(n)) || n == '_') return false;
        }
        return true;
    }

    Scalar parse_scalar() {
        std::size_t at = pos_;
        std::string num = parse_uint();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::string den = parse_uint();
            try {
                return Scalar::parse(f_, num + "/" + den);
            } catch (const FieldError& e) {
                throw ParseError(e.what(), at);
            }
        }
        return Scalar::parse(f_, num);
    }

    PathExpr parse_factor(std::size_t at) {
        PathExpr base;
        if (eat('(')) {
            base = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
        } else {
            std::string name = parse_ident();
            base = resolve_name(name, at);
        }
        if (eat('^')) {
            std::size_t exp_at = pos_;
            unsigned long k = std::stoul(parse_uint());
            try {
                return base.power(static_cast<unsigned>(k));
            } catch (const ExprError& e) {
                throw ParseError(e.what(), exp_at);
            }
        }
        return base;
    }

    PathExpr resolve_name(const std::string& name, std::size_t at) {
        if (name.size() >= 2 && name[0] == 'e' &&
            std::isdigit(static_cast<unsigned char>(name[1]))) {
            int v = 0;
            try {
                v = std::stoi(name.substr(1));
            } catch (const std::exception&) {
                v = -1;
            }
            if (v >= 1 && v <= q_.vertex_count())
                return PathExpr::of_path(Path::trivial(v), Scalar::one(f_));
            if (q_.arrow_id(name) < 0)
                throw ParseError("vertex out of range in " + name, at);
        }
        int id = q_.arrow_id(name);
        if (id < 0) throw ParseError("unknown name: " + name, at);
        return PathExpr::of_path(Path::of(q_, {id}), Scalar::one(f_));
    }

    const std::string& text_;
    const Quiver& q_;
    const FieldDescriptor& f_;
    const Scalar lambda_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline PathExpr parse_expression(const std::string& text, const Quiver& q,
                                 const FieldDescriptor& f, const Scalar& lambda) {
    return detail::ExprParser(text, q, f, lambda).run();
}

/// Canonical text form; parse_expression() accepts the output and yields an
/// equal element. Lambda is always printed as a concrete scalar.
inline std::string expr_to_string(const PathExpr& e, const Quiver& q) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : e.terms()) {
        std::string word = p.str(q);
        bool rational = c.field().kind == FieldKind::Rationals;
        Scalar mag = rational ? c.abs() : c;
        std::string piece = mag.is_one() ? word : mag.str() + "*" + word;
        if (first) {
            out = (rational && c.sign() < 0) ? "-" + piece : piece;
            first = false;
        } else if (rational && c.sign() < 0) {
            out += " - " + piece;
        } else {
            out += " + " + piece;
        }
    }
    return out;
}

}  // namespace bqa
