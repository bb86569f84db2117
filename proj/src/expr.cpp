#include <levijet/expr.hpp>

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

#include <levijet/error.hpp>

namespace levijet
{

namespace
{

using kind = expr_node::kind;

expr_ptr make(kind op, std::size_t pos, std::vector<expr_ptr> args = {}, std::string text = {}, int exponent = 0)
{
    auto e = std::make_shared<expr_node>();
    e->op = op;
    e->position = pos;
    e->args = std::move(args);
    e->text = std::move(text);
    e->exponent = exponent;
    return e;
}

bool is_known_name(std::string_view s)
{
    if (s == "w" || s == "u" || s == "v") {
        return true;
    }
    if (s.empty() || (s[0] != 'z' && s[0] != 'x' && s[0] != 'y')) {
        return false;
    }
    if (s.size() == 1) {
        return true;
    }
    if (s[1] == '0') {
        return false;
    }
    return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class parser
{
public:
    parser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    expr_ptr parse()
    {
        auto e = sum();
        skip();
        if (pos_ < text_.size()) {
            fail(errc::syntax_error, "unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        }
        return e;
    }

private:
    [[noreturn]] void fail(errc code, const std::string &what, std::size_t at) const
    {
        throw parse_error(code, what, offset_ + at);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    expr_ptr sum()
    {
        auto lhs = product();
        for (;;) {
            skip();
            const auto at = pos_;
            if (accept('+')) {
                lhs = make(kind::add, offset_ + at, {lhs, product()});
            } else if (accept('-')) {
                lhs = make(kind::sub, offset_ + at, {lhs, product()});
            } else {
                return lhs;
            }
        }
    }

    expr_ptr product()
    {
        auto lhs = unary();
        for (;;) {
            skip();
            const auto at = pos_;
            if (accept('*')) {
                lhs = make(kind::mul, offset_ + at, {lhs, unary()});
            } else if (accept('/')) {
                lhs = make(kind::div, offset_ + at, {lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    expr_ptr unary()
    {
        skip();
        const auto at = pos_;
        if (accept('-')) {
            return make(kind::neg, offset_ + at, {unary()});
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    expr_ptr power()
    {
        auto base = atom();
        skip();
        const auto at = pos_;
        if (!accept('^')) {
            return base;
        }
        const bool negative = accept('-');
        skip();
        const auto digits_at = pos_;
        std::string digits = integer();
        if (digits.empty()) {
            fail(errc::syntax_error, "expected an integer exponent", digits_at);
        }
        if (digits.size() > 3 || std::stoi(digits) > 255) {
            fail(errc::order_out_of_range, "exponent too large", digits_at);
        }
        const int e = std::stoi(digits);
        return make(kind::pow, offset_ + at, {base}, {}, negative ? -e : e);
    }

    std::string integer()
    {
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    expr_ptr atom()
    {
        skip();
        const auto at = pos_;
        if (pos_ >= text_.size()) {
            fail(errc::syntax_error, "unexpected end of input", pos_);
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto digits = integer();
            // canonical form: no leading zeros
            const auto nz = digits.find_first_not_of('0');
            digits = nz == std::string::npos ? "0" : digits.substr(nz);
            return make(kind::number, offset_ + at, {}, std::move(digits));
        }
        if (c == '(') {
            ++pos_;
            auto inner = sum();
            if (!accept(')')) {
                fail(errc::syntax_error, "unclosed parenthesis", at);
            }
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const auto name = text_.substr(at, pos_ - at);
            if (name == "i") {
                return make(kind::imaginary_unit, offset_ + at);
            }
            if (name == "conj") {
                skip();
                const auto open = pos_;
                if (!accept('(')) {
                    fail(errc::syntax_error, "expected '(' after conj", pos_);
                }
                auto inner = sum();
                if (!accept(')')) {
                    fail(errc::syntax_error, "unclosed parenthesis", open);
                }
                return make(kind::conj, offset_ + at, {inner});
            }
            if (!is_known_name(name)) {
                fail(errc::unknown_variable, "unknown name '" + std::string(name) + "'", at);
            }
            return make(kind::variable, offset_ + at, {}, std::string(name));
        }
        fail(errc::syntax_error, "unexpected '" + std::string(1, c) + "'", at);
    }

    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

int precedence(const expr_node &e)
{
    switch (e.op) {
        case kind::add:
        case kind::sub:
            return 1;
        case kind::mul:
        case kind::div:
            return 2;
        case kind::neg:
            return 3;
        case kind::pow:
            return 4;
        default:
            return 5;
    }
}

void print_into(std::string &out, const expr_node &e, int min_prec)
{
    const int p = precedence(e);
    const bool paren = p < min_prec;
    if (paren) {
        out += '(';
    }
    switch (e.op) {
        case kind::number:
        case kind::variable:
            out += e.text;
            break;
        case kind::imaginary_unit:
            out += 'i';
            break;
        case kind::conj:
            out += "conj(";
            print_into(out, *e.args[0], 0);
            out += ')';
            break;
        case kind::neg:
            out += '-';
            print_into(out, *e.args[0], 3);
            break;
        case kind::add:
        case kind::sub:
            print_into(out, *e.args[0], 1);
            out += e.op == kind::add ? " + " : " - ";
            print_into(out, *e.args[1], 2);
            break;
        case kind::mul:
        case kind::div:
            print_into(out, *e.args[0], 2);
            out += e.op == kind::mul ? "*" : "/";
            print_into(out, *e.args[1], 3);
            break;
        case kind::pow:
            print_into(out, *e.args[0], 5);
            out += '^';
            out += std::to_string(e.exponent);
            break;
    }
    if (paren) {
        out += ')';
    }
}

// Index of a name such as z2 (1 for a bare z), or nullopt if the family differs.
std::optional<int> family_index(const std::string &name, char family)
{
    if (name.empty() || name[0] != family) {
        return std::nullopt;
    }
    return name.size() == 1 ? 1 : std::stoi(name.substr(1));
}

void collect_names(const expr_node &e, std::vector<const expr_node *> &out)
{
    if (e.op == kind::variable) {
        out.push_back(&e);
    }
    for (const auto &a : e.args) {
        collect_names(*a, out);
    }
}

struct eval_context {
    variable_list vars;
    int order = 0;
    bool jet = false;
    std::function<std::size_t(const expr_node &)> resolve;
    std::function<truncated_series(const truncated_series &)> conj;
};

truncated_series eval(const expr_node &e, const eval_context &ctx)
{
    auto constant = [&](const gaussian_rational &c) { return truncated_series::constant(ctx.vars, ctx.order, c); };
    switch (e.op) {
        case kind::number:
            return constant(gaussian_rational(mpq_class(mpz_class(e.text))));
        case kind::imaginary_unit:
            return constant(gaussian_rational::i());
        case kind::variable:
            return truncated_series::variable(ctx.vars, ctx.order, ctx.resolve(e));
        case kind::conj:
            return ctx.conj(eval(*e.args[0], ctx));
        case kind::neg:
            return -eval(*e.args[0], ctx);
        case kind::add:
            return eval(*e.args[0], ctx) + eval(*e.args[1], ctx);
        case kind::sub:
            return eval(*e.args[0], ctx) - eval(*e.args[1], ctx);
        case kind::mul:
            return eval(*e.args[0], ctx) * eval(*e.args[1], ctx);
        case kind::div: {
            const auto num = eval(*e.args[0], ctx);
            const auto den = eval(*e.args[1], ctx);
            if (!ctx.jet) {
                if (den.degree() > 0) {
                    throw parse_error(errc::non_polynomial, "division by a non-constant in exact mode", e.position);
                }
                if (den.is_zero()) {
                    throw parse_error(errc::invalid_argument, "division by zero", e.position);
                }
                return scale(num, den.constant_term().inverse());
            }
            if (den.constant_term().is_zero()) {
                throw parse_error(errc::division_by_nonunit, "divisor vanishes at the origin", e.position);
            }
            return num * invert(den);
        }
        case kind::pow: {
            const auto base = eval(*e.args[0], ctx);
            if (e.exponent >= 0) {
                return pow(base, e.exponent);
            }
            if (!ctx.jet) {
                throw parse_error(errc::non_polynomial, "negative exponent in exact mode", e.position);
            }
            if (base.constant_term().is_zero()) {
                throw parse_error(errc::division_by_nonunit, "negative power of a non-unit", e.position);
            }
            return pow(invert(base), -e.exponent);
        }
    }
    return {};
}

truncated_series conj_coefficients(const truncated_series &s)
{
    std::vector<truncated_series::term> t;
    t.reserve(s.terms().size());
    for (const auto &[m, c] : s.terms()) {
        t.emplace_back(m, c.conj());
    }
    return truncated_series::from_terms(s.vars(), s.order(), std::move(t), s.exact());
}

gaussian_rational eval_constant(const expr_node &e)
{
    switch (e.op) {
        case kind::number:
            return gaussian_rational(mpq_class(mpz_class(e.text)));
        case kind::imaginary_unit:
            return gaussian_rational::i();
        case kind::variable:
            throw parse_error(errc::unknown_variable, "variables are not allowed here", e.position);
        case kind::conj:
            return eval_constant(*e.args[0]).conj();
        case kind::neg:
            return -eval_constant(*e.args[0]);
        case kind::add:
            return eval_constant(*e.args[0]) + eval_constant(*e.args[1]);
        case kind::sub:
            return eval_constant(*e.args[0]) - eval_constant(*e.args[1]);
        case kind::mul:
            return eval_constant(*e.args[0]) * eval_constant(*e.args[1]);
        case kind::div: {
            const auto den = eval_constant(*e.args[1]);
            if (den.is_zero()) {
                throw parse_error(errc::invalid_argument, "division by zero", e.position);
            }
            return eval_constant(*e.args[0]) / den;
        }
        case kind::pow: {
            auto base = eval_constant(*e.args[0]);
            if (e.exponent < 0) {
                if (base.is_zero()) {
                    throw parse_error(errc::invalid_argument, "division by zero", e.position);
                }
                base = base.inverse();
            }
            gaussian_rational r(1);
            for (int k = 0; k < std::abs(e.exponent); ++k) {
                r *= base;
            }
            return r;
        }
    }
    return {};
}

} // namespace

expr_ptr parse_expression(std::string_view text, std::size_t offset)
{
    return parser(text, offset).parse();
}

std::string print_expression(const expr_node &e)
{
    std::string out;
    print_into(out, e, 0);
    return out;
}

bool same_tree(const expr_node &a, const expr_node &b)
{
    if (a.op != b.op || a.text != b.text || a.exponent != b.exponent || a.args.size() != b.args.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (!same_tree(*a.args[k], *b.args[k])) {
            return false;
        }
    }
    return true;
}

equation parse_equation(std::string_view text, int n_hint)
{
    const auto eq_pos = text.find('=');
    if (eq_pos == std::string_view::npos) {
        throw parse_error(errc::syntax_error, "expected 'w = ...' or 'v = ...'", text.size());
    }
    if (const auto second = text.find('=', eq_pos + 1); second != std::string_view::npos) {
        throw parse_error(errc::syntax_error, "unexpected '='", second);
    }
    auto lhs = text.substr(0, eq_pos);
    const auto lstart = lhs.find_first_not_of(" \t\r\n");
    const auto lend = lhs.find_last_not_of(" \t\r\n");
    const auto name = lstart == std::string_view::npos ? std::string_view{} : lhs.substr(lstart, lend - lstart + 1);
    equation eq;
    if (name == "w") {
        eq.form = equation_form::complex;
    } else if (name == "v") {
        eq.form = equation_form::real;
    } else {
        throw parse_error(errc::syntax_error, "left-hand side must be w or v", lstart == std::string_view::npos ? 0 : lstart);
    }
    eq.rhs = parse_expression(text.substr(eq_pos + 1), eq_pos + 1);

    std::vector<const expr_node *> names;
    collect_names(*eq.rhs, names);
    int max_index = 0;
    const expr_node *bare = nullptr;
    for (const auto *v : names) {
        const auto &s = v->text;
        const bool allowed = eq.form == equation_form::complex ? (s[0] == 'z' || s == "w")
                                                               : (s[0] == 'x' || s[0] == 'y' || s == "u");
        if (!allowed) {
            throw parse_error(errc::unknown_variable,
                              "'" + s + "' is not a variable of the " +
                                  (eq.form == equation_form::complex ? "complex" : "real") + " form",
                              v->position);
        }
        if (s == "w" || s == "u") {
            continue;
        }
        if (s.size() == 1) {
            bare = v;
        }
        max_index = std::max(max_index, s.size() == 1 ? 1 : std::stoi(s.substr(1)));
    }
    eq.n = n_hint > 0 ? n_hint : std::max(max_index, 1);
    if (max_index > eq.n) {
        throw error(errc::wrong_dimension, "equation uses index " + std::to_string(max_index) +
                                               " but the dimension is " + std::to_string(eq.n));
    }
    if (bare != nullptr && eq.n > 1) {
        throw parse_error(errc::wrong_dimension, "unindexed '" + bare->text + "' needs n = 1", bare->position);
    }
    if (eq.n > 7) {
        throw error(errc::wrong_dimension, "dimension must be at most 7");
    }
    return eq;
}

std::string print_equation(const equation &eq)
{
    return std::string(eq.form == equation_form::complex ? "w" : "v") + " = " + print_expression(*eq.rhs);
}

complex_graph build_graph(const equation &eq, int order, bool jet)
{
    if (order < 0 || order > max_exponent) {
        throw error(errc::order_out_of_range, "order outside [0, 255]");
    }
    const int n = eq.n;
    const auto nv = static_cast<std::size_t>(n);
    const int eval_order = jet ? order : max_exponent;

    auto finish = [&](const truncated_series &s, variable_list vars) {
        if (!jet && !s.exact()) {
            throw error(errc::order_out_of_range, "polynomial degree exceeds 255");
        }
        std::vector<truncated_series::term> terms = s.terms();
        const int final_order = jet ? order : std::max(order, s.degree());
        return truncated_series::from_terms(std::move(vars), final_order, std::move(terms), !jet);
    };

    if (eq.form == equation_form::real) {
        eval_context ctx;
        ctx.vars = real_variables(n);
        ctx.order = eval_order;
        ctx.jet = jet;
        ctx.resolve = [n](const expr_node &v) -> std::size_t {
            if (v.text == "u") {
                return static_cast<std::size_t>(2 * n);
            }
            const auto k = static_cast<std::size_t>(*family_index(v.text, v.text[0]) - 1);
            return v.text[0] == 'x' ? k : static_cast<std::size_t>(n) + k;
        };
        ctx.conj = conj_coefficients;
        auto psi = finish(eval(*eq.rhs, ctx), real_variables(n));
        return complexify(real_graph(n, std::move(psi)));
    }

    // z1..zn, zeta1..zetan, omega, w
    std::vector<std::string> names(*complex_variables(n));
    names.emplace_back("w");
    eval_context ctx;
    ctx.vars = make_variables(std::move(names));
    ctx.order = eval_order;
    ctx.jet = jet;
    const std::size_t w_index = 2 * nv + 1;
    ctx.resolve = [w_index](const expr_node &v) -> std::size_t {
        if (v.text == "w") {
            return w_index;
        }
        return static_cast<std::size_t>(*family_index(v.text, 'z') - 1);
    };
    ctx.conj = [nv, w_index](const truncated_series &s) {
        std::vector<truncated_series::term> t;
        t.reserve(s.terms().size());
        for (const auto &[m, c] : s.terms()) {
            multidegree d;
            for (std::size_t k = 0; k < nv; ++k) {
                if (m[k] != 0) {
                    d.set(nv + k, m[k]);
                }
                if (m[nv + k] != 0) {
                    d.set(k, m[nv + k]);
                }
            }
            if (m[2 * nv] != 0) {
                d.set(w_index, m[2 * nv]);
            }
            if (m[w_index] != 0) {
                d.set(2 * nv, m[w_index]);
            }
            t.emplace_back(d, c.conj());
        }
        return truncated_series::from_terms(s.vars(), s.order(), std::move(t), s.exact());
    };
    const auto value = eval(*eq.rhs, ctx);
    if (value.depends_on(w_index)) {
        throw error(errc::invalid_argument, "right-hand side must not involve w itself; write conj(w)");
    }
    auto theta = finish(value, complex_variables(n));
    complex_graph g(n, std::move(theta));
    check_reality(g);
    return g;
}

gaussian_rational evaluate_constant(const expr_node &e)
{
    return eval_constant(e);
}

std::vector<gaussian_rational> parse_coordinates(std::string_view text)
{
    std::vector<gaussian_rational> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(evaluate_constant(*parse_expression(piece, start)));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

} // namespace levijet
