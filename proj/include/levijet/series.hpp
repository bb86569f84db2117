#ifndef LEVIJET_SERIES_HPP
#define LEVIJET_SERIES_HPP

#include <cstddef>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <levijet/gaussian_rational.hpp>
#include <levijet/multidegree.hpp>

namespace levijet
{

using variable_list = std::shared_ptr<const std::vector<std::string>>;

variable_list make_variables(std::vector<std::string> names);

// Multivariate power series over Q(i), known up to total degree `order`.
//
// Terms are stored sparsely, sorted in graded lexicographic order, with no
// zero coefficients. The `exact` flag records that the stored terms are the
// complete expansion (a polynomial that lost nothing to truncation); it is
// propagated conservatively by every operation and is what allows constant
// shifts and identity certificates. Equality ignores the flag.
class truncated_series
{
public:
    using term = std::pair<multidegree, gaussian_rational>;

    truncated_series() = default;
    // The zero series; zero is exact.
    truncated_series(variable_list vars, int order);

    // Terms above `order` are discarded (clearing `exact` if any were
    // nonzero); duplicates are summed and zeros dropped.
    static truncated_series from_terms(variable_list vars, int order, std::vector<term> terms, bool exact);
    static truncated_series constant(variable_list vars, int order, const gaussian_rational &c);
    static truncated_series variable(variable_list vars, int order, std::size_t index);

    const variable_list &vars() const
    {
        return vars_;
    }
    std::size_t nvars() const
    {
        return vars_ ? vars_->size() : 0;
    }
    // Throws error(unknown_variable).
    std::size_t var_index(const std::string &name) const;

    int order() const
    {
        return order_;
    }
    bool exact() const
    {
        return exact_;
    }
    const std::vector<term> &terms() const
    {
        return terms_;
    }

    bool is_zero() const
    {
        return terms_.empty();
    }
    // Highest total degree present; -1 for the zero series.
    int degree() const;
    gaussian_rational coeff(const multidegree &m) const;
    gaussian_rational constant_term() const;
    bool depends_on(std::size_t var) const;

    friend bool operator==(const truncated_series &a, const truncated_series &b);

private:
    variable_list vars_;
    int order_ = 0;
    bool exact_ = true;
    std::vector<term> terms_;
};

std::ostream &operator<<(std::ostream &os, const truncated_series &s);

bool same_variables(const truncated_series &a, const truncated_series &b);

truncated_series operator+(const truncated_series &a, const truncated_series &b);
truncated_series operator-(const truncated_series &a, const truncated_series &b);
truncated_series operator-(const truncated_series &a);
truncated_series operator*(const truncated_series &a, const truncated_series &b);
truncated_series scale(const truncated_series &a, const gaussian_rational &c);
// Adds a constant without touching the order.
truncated_series add_constant(const truncated_series &a, const gaussian_rational &c);

truncated_series add(const truncated_series &a, const truncated_series &b);
truncated_series mul(const truncated_series &a, const truncated_series &b);
truncated_series pow(const truncated_series &a, int exponent);

// Multiplicative inverse; throws error(division_by_nonunit) when the
// constant term vanishes.
truncated_series invert(const truncated_series &a);

truncated_series diff(const truncated_series &a, std::size_t var);
truncated_series diff(const truncated_series &a, const std::string &var);
// Mixed partial: one derivative per entry of `vars`.
truncated_series diff(const truncated_series &a, std::span<const std::size_t> vars);

// Drops everything above `order` (which may not exceed the current one).
truncated_series truncate(const truncated_series &a, int order);
// Raises or lowers the order. Raising is only sound for exact series.
truncated_series with_order(const truncated_series &a, int order);

// Re-expresses `a` over `target`; mapping[i] is the target index of
// variable i of `a`.
truncated_series embed(const truncated_series &a, variable_list target, std::span<const std::size_t> mapping);

// a(subs[0], ..., subs[k-1]). All substitutions share one variable list.
// A substitution with a nonzero constant term is only accepted when `a`
// is exact; otherwise error(unsound_composition).
truncated_series compose(const truncated_series &a, std::span<const truncated_series> subs);

// a(x + offset); `a` must be exact unless the offset is zero.
truncated_series translate(const truncated_series &a, std::span<const gaussian_rational> offset);

// Exact value at a point; requires an exact series unless the point is 0.
gaussian_rational evaluate(const truncated_series &a, std::span<const gaussian_rational> point);

// Solves F(x, y) = 0 for y(x) with y(0) = 0 by Newton iteration with
// precision doubling. The first `num_params` variables of each F_i are
// x, the remaining F.size() variables are y. Throws
// error(singular_jacobian) when dF/dy(0) is not invertible.
std::vector<truncated_series> solve_implicit(std::span<const truncated_series> equations, std::size_t num_params);

} // namespace levijet

#endif
