#ifndef LEVIJET_EXPR_HPP
#define LEVIJET_EXPR_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <levijet/gaussian_rational.hpp>
#include <levijet/hypersurface.hpp>

namespace levijet
{

// Grammar (whitespace-insensitive):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := atom ('^' '-'? integer)?
//   atom    := integer | 'i' | name | 'conj' '(' sum ')' | '(' sum ')'
// Names: z, z1.., w, x, x1.., y, y1.., u, v.
struct expr_node {
    enum class kind { number, imaginary_unit, variable, conj, neg, add, sub, mul, div, pow };

    kind op = kind::number;
    std::string text; // digits or variable name
    int exponent = 0;
    std::vector<std::shared_ptr<const expr_node>> args;
    std::size_t position = 0;
};

using expr_ptr = std::shared_ptr<const expr_node>;

expr_ptr parse_expression(std::string_view text, std::size_t offset = 0);
std::string print_expression(const expr_node &e);
// Structural equality, ignoring source positions.
bool same_tree(const expr_node &a, const expr_node &b);

enum class equation_form { complex, real };

struct equation {
    equation_form form = equation_form::complex;
    int n = 1;
    expr_ptr rhs;
};

// "w = ..." (complex form) or "v = ...". n_hint > 0 fixes the dimension.
equation parse_equation(std::string_view text, int n_hint = 0);
std::string print_equation(const equation &eq);

// Exact mode requires a polynomial and keeps it whole (order raised to its
// degree if needed). Jet mode evaluates at `order`, allows division by
// units and negative powers, and marks the result as jet-only.
// Complex-form input is checked for normalization and reality.
complex_graph build_graph(const equation &eq, int order, bool jet);

// A variable-free expression.
gaussian_rational evaluate_constant(const expr_node &e);
// "c1, c2, ..." with each ci a constant expression.
std::vector<gaussian_rational> parse_coordinates(std::string_view text);

} // namespace levijet

#endif
