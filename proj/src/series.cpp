#include <levijet/series.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include <levijet/error.hpp>

namespace levijet
{

namespace
{

void check_order(int order)
{
    if (order < 0 || order > max_exponent) {
        throw error(errc::order_out_of_range, "truncation order " + std::to_string(order) + " outside [0, 255]");
    }
}

void require_same_vars(const truncated_series &a, const truncated_series &b)
{
    if (!same_variables(a, b)) {
        throw error(errc::variable_mismatch, "series are over different variable lists");
    }
}

bool grlex_less(const truncated_series::term &a, const truncated_series::term &b)
{
    return a.first < b.first;
}

// Internal escape hatch used where the caller has proven that the
// unknown tail cannot reach below `order`.
truncated_series relabel_order(const truncated_series &a, int order)
{
    std::vector<truncated_series::term> terms = a.terms();
    return truncated_series::from_terms(a.vars(), order, std::move(terms), false);
}

} // namespace

variable_list make_variables(std::vector<std::string> names)
{
    if (names.size() > max_variables) {
        throw error(errc::invalid_argument, "at most " + std::to_string(max_variables) + " variables are supported");
    }
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

truncated_series::truncated_series(variable_list vars, int order) : vars_(std::move(vars)), order_(order)
{
    check_order(order);
    if (nvars() > max_variables) {
        throw error(errc::invalid_argument, "too many variables");
    }
}

truncated_series truncated_series::from_terms(variable_list vars, int order, std::vector<term> terms, bool exact)
{
    truncated_series out(std::move(vars), order);
    std::sort(terms.begin(), terms.end(), grlex_less);
    out.terms_.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.terms_.empty() && out.terms_.back().first == t.first) {
            out.terms_.back().second += t.second;
        } else {
            if (!out.terms_.empty() && out.terms_.back().second.is_zero()) {
                out.terms_.pop_back();
            }
            out.terms_.push_back(std::move(t));
        }
    }
    if (!out.terms_.empty() && out.terms_.back().second.is_zero()) {
        out.terms_.pop_back();
    }
    // Terms are degree-sorted, so everything above the order is a suffix.
    auto cut = std::find_if(out.terms_.begin(), out.terms_.end(),
                            [order](const term &t) { return t.first.total_degree() > order; });
    const bool dropped = cut != out.terms_.end();
    out.terms_.erase(cut, out.terms_.end());
    out.exact_ = exact && !dropped;
    return out;
}

truncated_series truncated_series::constant(variable_list vars, int order, const gaussian_rational &c)
{
    truncated_series out(std::move(vars), order);
    if (!c.is_zero()) {
        out.terms_.emplace_back(multidegree{}, c);
    }
    return out;
}

truncated_series truncated_series::variable(variable_list vars, int order, std::size_t index)
{
    truncated_series out(std::move(vars), order);
    if (index >= out.nvars()) {
        throw error(errc::unknown_variable, "variable index " + std::to_string(index) + " out of range");
    }
    if (order >= 1) {
        out.terms_.emplace_back(multidegree::unit(index), gaussian_rational(1));
    } else {
        out.exact_ = false;
    }
    return out;
}

std::size_t truncated_series::var_index(const std::string &name) const
{
    if (vars_) {
        const auto it = std::find(vars_->begin(), vars_->end(), name);
        if (it != vars_->end()) {
            return static_cast<std::size_t>(it - vars_->begin());
        }
    }
    throw error(errc::unknown_variable, "unknown variable '" + name + "'");
}

int truncated_series::degree() const
{
    return terms_.empty() ? -1 : terms_.back().first.total_degree();
}

gaussian_rational truncated_series::coeff(const multidegree &m) const
{
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                     [](const term &t, const multidegree &key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) {
        return it->second;
    }
    return {};
}

gaussian_rational truncated_series::constant_term() const
{
    if (!terms_.empty() && terms_.front().first.is_zero()) {
        return terms_.front().second;
    }
    return {};
}

bool truncated_series::depends_on(std::size_t var) const
{
    return std::any_of(terms_.begin(), terms_.end(), [var](const term &t) { return t.first[var] != 0; });
}

bool operator==(const truncated_series &a, const truncated_series &b)
{
    return same_variables(a, b) && a.order_ == b.order_ && a.terms_ == b.terms_;
}

bool same_variables(const truncated_series &a, const truncated_series &b)
{
    if (a.vars() == b.vars()) {
        return true;
    }
    if (!a.vars() || !b.vars()) {
        return a.nvars() == 0 && b.nvars() == 0;
    }
    return *a.vars() == *b.vars();
}

std::ostream &operator<<(std::ostream &os, const truncated_series &s)
{
    if (s.is_zero()) {
        os << "0";
    }
    bool first = true;
    for (const auto &[m, c] : s.terms()) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << c << ")";
        for (std::size_t v = 0; v < s.nvars(); ++v) {
            if (const int e = m[v]; e > 0) {
                os << "*" << (*s.vars())[v];
                if (e > 1) {
                    os << "^" << e;
                }
            }
        }
    }
    os << " + O(" << s.order() + 1 << ")";
    return os;
}

namespace
{

truncated_series linear_combine(const truncated_series &a, const truncated_series &b, bool subtract)
{
    require_same_vars(a, b);
    const int order = std::min(a.order(), b.order());
    std::vector<truncated_series::term> out;
    out.reserve(a.terms().size() + b.terms().size());
    bool dropped = false;
    auto ia = a.terms().begin(), ib = b.terms().begin();
    const auto ea = a.terms().end(), eb = b.terms().end();
    while (ia != ea || ib != eb) {
        truncated_series::term t;
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            t = *ia++;
        } else if (ia == ea || ib->first < ia->first) {
            t = *ib++;
            if (subtract) {
                t.second = -t.second;
            }
        } else {
            t.first = ia->first;
            t.second = subtract ? ia->second - ib->second : ia->second + ib->second;
            ++ia;
            ++ib;
        }
        if (t.second.is_zero()) {
            continue;
        }
        if (t.first.total_degree() > order) {
            dropped = true;
            continue;
        }
        out.push_back(std::move(t));
    }
    auto r = truncated_series::from_terms(a.vars(), order, std::move(out), a.exact() && b.exact() && !dropped);
    return r;
}

} // namespace

truncated_series add(const truncated_series &a, const truncated_series &b)
{
    return linear_combine(a, b, false);
}

truncated_series operator+(const truncated_series &a, const truncated_series &b)
{
    return linear_combine(a, b, false);
}

truncated_series operator-(const truncated_series &a, const truncated_series &b)
{
    return linear_combine(a, b, true);
}

truncated_series operator-(const truncated_series &a)
{
    return scale(a, gaussian_rational(-1));
}

truncated_series scale(const truncated_series &a, const gaussian_rational &c)
{
    if (c.is_zero()) {
        return truncated_series(a.vars(), a.order());
    }
    std::vector<truncated_series::term> out;
    out.reserve(a.terms().size());
    for (const auto &[m, x] : a.terms()) {
        out.emplace_back(m, x * c);
    }
    return truncated_series::from_terms(a.vars(), a.order(), std::move(out), a.exact());
}

truncated_series add_constant(const truncated_series &a, const gaussian_rational &c)
{
    return a + truncated_series::constant(a.vars(), a.order(), c);
}

namespace
{

struct product_slot {
    int degree;
    std::uint64_t w0, w1;
    std::uint32_t ia, ib;
};

truncated_series monomial_times(const truncated_series::term &t, const truncated_series &b, int order, bool exact)
{
    std::vector<truncated_series::term> out;
    out.reserve(b.terms().size());
    const int dt = t.first.total_degree();
    bool dropped = false;
    for (const auto &[m, c] : b.terms()) {
        if (m.total_degree() + dt > order) {
            dropped = true;
            break;
        }
        out.emplace_back(t.first + m, t.second.is_one() ? c : t.second * c);
    }
    return truncated_series::from_terms(b.vars(), order, std::move(out), exact && !dropped);
}

} // namespace

truncated_series mul(const truncated_series &a, const truncated_series &b)
{
    require_same_vars(a, b);
    const int order = std::min(a.order(), b.order());
    if ((a.is_zero() && a.exact()) || (b.is_zero() && b.exact())) {
        return truncated_series(a.vars(), order);
    }
    if (a.is_zero() || b.is_zero()) {
        return truncated_series::from_terms(a.vars(), order, {}, false);
    }
    const bool both_exact = a.exact() && b.exact();
    if (a.terms().size() == 1) {
        return monomial_times(a.terms().front(), b, order, both_exact);
    }
    if (b.terms().size() == 1) {
        return monomial_times(b.terms().front(), a, order, both_exact);
    }

    const auto &ta = a.terms();
    const auto &tb = b.terms();
    std::vector<int> db(tb.size());
    for (std::size_t j = 0; j < tb.size(); ++j) {
        db[j] = tb[j].first.total_degree();
    }
    std::vector<product_slot> slots;
    bool dropped = false;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        const int da = ta[i].first.total_degree();
        if (da + db.front() > order) {
            dropped = true;
            break;
        }
        for (std::size_t j = 0; j < tb.size(); ++j) {
            if (da + db[j] > order) {
                dropped = true;
                break;
            }
            const multidegree m = ta[i].first + tb[j].first;
            slots.push_back({da + db[j], m.word0(), m.word1(), static_cast<std::uint32_t>(i),
                             static_cast<std::uint32_t>(j)});
        }
    }
    std::sort(slots.begin(), slots.end(), [](const product_slot &x, const product_slot &y) {
        if (x.degree != y.degree) {
            return x.degree < y.degree;
        }
        return x.w0 != y.w0 ? x.w0 < y.w0 : x.w1 < y.w1;
    });

    std::vector<truncated_series::term> out;
    for (std::size_t k = 0; k < slots.size();) {
        gaussian_rational acc;
        std::size_t l = k;
        for (; l < slots.size() && slots[l].w0 == slots[k].w0 && slots[l].w1 == slots[k].w1; ++l) {
            acc.add_product(ta[slots[l].ia].second, tb[slots[l].ib].second);
        }
        if (!acc.is_zero()) {
            out.emplace_back(ta[slots[k].ia].first + tb[slots[k].ib].first, std::move(acc));
        }
        k = l;
    }
    // Already in grlex order with distinct keys.
    return truncated_series::from_terms(a.vars(), order, std::move(out), both_exact && !dropped);
}

truncated_series operator*(const truncated_series &a, const truncated_series &b)
{
    return mul(a, b);
}

truncated_series pow(const truncated_series &a, int exponent)
{
    if (exponent < 0) {
        return pow(invert(a), -exponent);
    }
    auto result = truncated_series::constant(a.vars(), a.order(), gaussian_rational(1));
    auto base = a;
    for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
        if (e & 1U) {
            result = result * base;
        }
        if (e > 1) {
            base = base * base;
        }
    }
    return result;
}

truncated_series invert(const truncated_series &a)
{
    const gaussian_rational c0 = a.constant_term();
    if (c0.is_zero()) {
        throw error(errc::division_by_nonunit, "cannot invert a series with zero constant term");
    }
    const auto &vars = a.vars();
    if (a.terms().size() == 1) {
        return truncated_series::from_terms(vars, a.order(), {{multidegree{}, c0.inverse()}}, a.exact());
    }
    // Newton: b <- b + b (1 - a b), doubling the number of correct degrees.
    auto b = truncated_series::constant(vars, 0, c0.inverse());
    int correct = 0;
    while (correct < a.order()) {
        const int prec = std::min(2 * correct + 1, a.order());
        auto bp = relabel_order(b, prec);
        auto residual = add_constant(-(truncate(a, prec) * bp), gaussian_rational(1));
        b = bp + bp * residual;
        correct = prec;
    }
    return truncated_series::from_terms(vars, a.order(), std::vector<truncated_series::term>(b.terms()), false);
}

truncated_series diff(const truncated_series &a, std::size_t var)
{
    if (var >= a.nvars()) {
        throw error(errc::unknown_variable, "differentiation variable out of range");
    }
    if (a.order() == 0) {
        throw error(errc::order_out_of_range, "cannot differentiate a series truncated at order 0");
    }
    std::vector<truncated_series::term> out;
    const multidegree unit = multidegree::unit(var);
    for (const auto &[m, c] : a.terms()) {
        if (const int e = m[var]; e > 0) {
            multidegree d = m;
            d.set(var, e - 1);
            out.emplace_back(d, c * gaussian_rational(e));
        }
    }
    (void)unit;
    return truncated_series::from_terms(a.vars(), a.order() - 1, std::move(out), a.exact());
}

truncated_series diff(const truncated_series &a, const std::string &var)
{
    return diff(a, a.var_index(var));
}

truncated_series diff(const truncated_series &a, std::span<const std::size_t> vars)
{
    truncated_series out = a;
    for (const auto v : vars) {
        out = diff(out, v);
    }
    return out;
}

truncated_series truncate(const truncated_series &a, int order)
{
    if (order > a.order()) {
        throw error(errc::order_out_of_range, "truncate cannot raise the order; use with_order on exact series");
    }
    std::vector<truncated_series::term> terms = a.terms();
    return truncated_series::from_terms(a.vars(), order, std::move(terms), a.exact());
}

truncated_series with_order(const truncated_series &a, int order)
{
    if (order > a.order() && !a.exact()) {
        throw error(errc::order_out_of_range, "only exact series can be promoted to a higher order");
    }
    std::vector<truncated_series::term> terms = a.terms();
    return truncated_series::from_terms(a.vars(), order, std::move(terms), a.exact());
}

truncated_series embed(const truncated_series &a, variable_list target, std::span<const std::size_t> mapping)
{
    if (mapping.size() != a.nvars()) {
        throw error(errc::variable_mismatch, "embedding map has the wrong length");
    }
    std::vector<truncated_series::term> out;
    out.reserve(a.terms().size());
    for (const auto &[m, c] : a.terms()) {
        multidegree d;
        for (std::size_t v = 0; v < mapping.size(); ++v) {
            if (const int e = m[v]; e > 0) {
                if (mapping[v] >= target->size()) {
                    throw error(errc::variable_mismatch, "embedding target index out of range");
                }
                d.set(mapping[v], d[mapping[v]] + e);
            }
        }
        out.emplace_back(d, c);
    }
    return truncated_series::from_terms(std::move(target), a.order(), std::move(out), a.exact());
}

truncated_series compose(const truncated_series &a, std::span<const truncated_series> subs)
{
    if (subs.size() != a.nvars()) {
        throw error(errc::variable_mismatch, "composition needs one substitution per variable");
    }
    if (subs.empty()) {
        throw error(errc::variable_mismatch, "composition of a series without variables");
    }
    const variable_list &target = subs.front().vars();
    int order = a.order();
    bool shifts = false;
    for (const auto &s : subs) {
        if (!same_variables(s, subs.front())) {
            throw error(errc::variable_mismatch, "substitutions live over different variable lists");
        }
        order = std::min(order, s.order());
        shifts = shifts || !s.constant_term().is_zero();
    }
    if (shifts && !a.exact()) {
        throw error(errc::unsound_composition,
                    "substituting a nonzero constant into a truncated (jet-only) series is unsound");
    }

    std::vector<truncated_series::term> terms = a.terms();
    std::sort(terms.begin(), terms.end(),
              [](const truncated_series::term &x, const truncated_series::term &y) { return lex_less(x.first, y.first); });

    const std::size_t nv = a.nvars();
    std::vector<truncated_series> base(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        base[v] = truncate(subs[v], order);
    }
    std::vector<std::vector<truncated_series>> powers(nv);
    auto power = [&](std::size_t v, int k) -> const truncated_series & {
        auto &pw = powers[v];
        if (pw.empty()) {
            pw.push_back(truncated_series::constant(target, order, gaussian_rational(1)));
        }
        while (static_cast<int>(pw.size()) <= k) {
            pw.push_back(pw.back() * base[v]);
        }
        return pw[static_cast<std::size_t>(k)];
    };

    // Multivariate Horner: a = sum_k v^k a_k(remaining variables).
    auto eval = [&](auto &&self, std::size_t lo, std::size_t hi, std::size_t v) -> truncated_series {
        if (v == nv) {
            return truncated_series::constant(target, order, terms[lo].second);
        }
        truncated_series acc(target, order);
        for (std::size_t i = lo; i < hi;) {
            const int e = terms[i].first[v];
            std::size_t j = i;
            while (j < hi && terms[j].first[v] == e) {
                ++j;
            }
            auto inner = self(self, i, j, v + 1);
            acc = acc + (e == 0 ? inner : inner * power(v, e));
            i = j;
        }
        return acc;
    };

    truncated_series result = terms.empty() ? truncated_series(target, order) : eval(eval, 0, terms.size(), 0);
    if (!a.exact() && result.exact()) {
        std::vector<truncated_series::term> t = result.terms();
        result = truncated_series::from_terms(target, order, std::move(t), false);
    }
    return result;
}

truncated_series translate(const truncated_series &a, std::span<const gaussian_rational> offset)
{
    if (offset.size() != a.nvars()) {
        throw error(errc::variable_mismatch, "translation offset has the wrong dimension");
    }
    std::vector<truncated_series> subs;
    subs.reserve(offset.size());
    for (std::size_t v = 0; v < offset.size(); ++v) {
        subs.push_back(add_constant(truncated_series::variable(a.vars(), a.order(), v), offset[v]));
    }
    return compose(a, subs);
}

gaussian_rational evaluate(const truncated_series &a, std::span<const gaussian_rational> point)
{
    if (point.size() != a.nvars()) {
        throw error(errc::variable_mismatch, "evaluation point has the wrong dimension");
    }
    const bool at_origin = std::all_of(point.begin(), point.end(), [](const auto &x) { return x.is_zero(); });
    if (at_origin) {
        return a.constant_term();
    }
    if (!a.exact()) {
        throw error(errc::jet_only_input, "a truncated (jet-only) series can only be evaluated at the origin");
    }
    std::vector<std::vector<gaussian_rational>> powers(point.size());
    gaussian_rational total;
    for (const auto &[m, c] : a.terms()) {
        gaussian_rational t = c;
        for (std::size_t v = 0; v < point.size(); ++v) {
            const int e = m[v];
            if (e == 0) {
                continue;
            }
            auto &pw = powers[v];
            if (pw.empty()) {
                pw.emplace_back(1);
            }
            while (static_cast<int>(pw.size()) <= e) {
                pw.push_back(pw.back() * point[v]);
            }
            t *= pw[static_cast<std::size_t>(e)];
        }
        total += t;
    }
    return total;
}

namespace
{

// Gaussian elimination on the constant parts; true iff invertible.
bool constant_matrix_invertible(std::vector<std::vector<gaussian_rational>> m)
{
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) {
            ++p;
        }
        if (p == n) {
            return false;
        }
        std::swap(m[p], m[k]);
        const auto inv = m[k][k].inverse();
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m[r][k].is_zero()) {
                continue;
            }
            const auto f = m[r][k] * inv;
            for (std::size_t c = k; c < n; ++c) {
                m[r][c] -= f * m[k][c];
            }
        }
    }
    return true;
}

// Solves J d = rhs over the series ring; J(0) must be invertible.
std::vector<truncated_series> solve_series_system(std::vector<std::vector<truncated_series>> j,
                                                  std::vector<truncated_series> rhs)
{
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && j[p][k].constant_term().is_zero()) {
            ++p;
        }
        if (p == n) {
            throw error(errc::singular_jacobian, "Jacobian is singular at the origin");
        }
        std::swap(j[p], j[k]);
        std::swap(rhs[p], rhs[k]);
        const auto inv = invert(j[k][k]);
        for (std::size_t r = k + 1; r < n; ++r) {
            if (j[r][k].is_zero()) {
                continue;
            }
            const auto f = j[r][k] * inv;
            for (std::size_t c = k + 1; c < n; ++c) {
                j[r][c] = j[r][c] - f * j[k][c];
            }
            rhs[r] = rhs[r] - f * rhs[k];
        }
    }
    std::vector<truncated_series> x(n);
    for (std::size_t k = n; k-- > 0;) {
        auto acc = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) {
            acc = acc - j[k][c] * x[c];
        }
        x[k] = acc * invert(j[k][k]);
    }
    return x;
}

} // namespace

std::vector<truncated_series> solve_implicit(std::span<const truncated_series> equations, std::size_t num_params)
{
    const std::size_t m = equations.size();
    if (m == 0) {
        return {};
    }
    const auto &all_vars = equations.front().vars();
    int order = equations.front().order();
    for (const auto &f : equations) {
        if (!same_variables(f, equations.front()) || f.nvars() != num_params + m) {
            throw error(errc::variable_mismatch, "implicit system must be over (x..., y...) with one y per equation");
        }
        if (!f.constant_term().is_zero()) {
            throw error(errc::invalid_argument, "implicit system must vanish at the origin");
        }
        order = std::min(order, f.order());
    }
    if (order < 1) {
        throw error(errc::order_out_of_range, "implicit solve needs order >= 1");
    }

    std::vector<std::vector<gaussian_rational>> j0(m, std::vector<gaussian_rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            j0[i][k] = equations[i].coeff(multidegree::unit(num_params + k));
        }
    }
    if (!constant_matrix_invertible(j0)) {
        throw error(errc::singular_jacobian, "dF/dy is singular at the origin");
    }

    auto x_vars = make_variables(std::vector<std::string>(all_vars->begin(), all_vars->begin() + num_params));
    std::vector<std::vector<truncated_series>> jac(m, std::vector<truncated_series>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            jac[i][k] = diff(equations[i], num_params + k);
        }
    }

    std::vector<truncated_series> y(m, truncated_series(x_vars, 0));
    int correct = 0;
    while (correct < order) {
        const int prec = std::min(2 * correct + 1, order);
        // F(x, y) = O(x^(correct+1)), so J is only needed to prec-correct-1.
        const int jprec = prec - correct - 1;
        std::vector<truncated_series> subs;
        subs.reserve(num_params + m);
        for (std::size_t v = 0; v < num_params; ++v) {
            subs.push_back(truncated_series::variable(x_vars, prec, v));
        }
        for (std::size_t k = 0; k < m; ++k) {
            subs.push_back(relabel_order(y[k], prec));
        }
        std::vector<truncated_series> jsubs;
        jsubs.reserve(subs.size());
        for (const auto &s : subs) {
            jsubs.push_back(truncate(s, jprec));
        }

        std::vector<truncated_series> residual(m);
        std::vector<std::vector<truncated_series>> jv(m, std::vector<truncated_series>(m));
        for (std::size_t i = 0; i < m; ++i) {
            residual[i] = compose(truncate(equations[i], prec), subs);
            for (std::size_t k = 0; k < m; ++k) {
                jv[i][k] = relabel_order(compose(truncate(jac[i][k], jprec), jsubs), prec);
            }
        }
        const auto delta = solve_series_system(std::move(jv), std::move(residual));
        for (std::size_t k = 0; k < m; ++k) {
            y[k] = relabel_order(y[k], prec) - delta[k];
        }
        correct = prec;
    }
    return y;
}

} // namespace levijet
