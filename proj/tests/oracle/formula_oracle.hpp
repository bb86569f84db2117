#ifndef LEVIJET_ORACLE_FORMULA_HPP
#define LEVIJET_ORACLE_FORMULA_HPP

// Literal, unoptimized evaluation of the obstruction formulas: expression
// trees over jets of Theta, determinants by the Leibniz permutation sum,
// no clearing of denominators.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include <levijet/series.hpp>

namespace oracle
{

using levijet::gaussian_rational;
using levijet::truncated_series;

struct node;
using expr = std::shared_ptr<const node>;

struct node {
    enum class op { jet, constant, add, sub, mul, neg, det };
    op kind;
    std::vector<std::size_t> jet;
    gaussian_rational value;
    std::vector<expr> args; // det: row-major square matrix
};

inline expr jet(std::vector<std::size_t> vars)
{
    std::sort(vars.begin(), vars.end());
    return std::make_shared<node>(node{node::op::jet, std::move(vars), {}, {}});
}
inline expr constant(gaussian_rational c)
{
    return std::make_shared<node>(node{node::op::constant, {}, std::move(c), {}});
}
inline expr operator+(expr a, expr b)
{
    return std::make_shared<node>(node{node::op::add, {}, {}, {std::move(a), std::move(b)}});
}
inline expr operator-(expr a, expr b)
{
    return std::make_shared<node>(node{node::op::sub, {}, {}, {std::move(a), std::move(b)}});
}
inline expr operator*(expr a, expr b)
{
    return std::make_shared<node>(node{node::op::mul, {}, {}, {std::move(a), std::move(b)}});
}
inline expr operator-(expr a)
{
    return std::make_shared<node>(node{node::op::neg, {}, {}, {std::move(a)}});
}
inline expr det(std::vector<expr> entries)
{
    return std::make_shared<node>(node{node::op::det, {}, {}, std::move(entries)});
}

class evaluator
{
public:
    explicit evaluator(truncated_series theta) : theta_(std::move(theta)) {}

    const truncated_series &jet_value(const std::vector<std::size_t> &vars)
    {
        if (vars.empty()) {
            return theta_;
        }
        if (auto it = jets_.find(vars); it != jets_.end()) {
            return it->second;
        }
        std::vector<std::size_t> head(vars.begin(), vars.end() - 1);
        auto d = levijet::diff(jet_value(head), vars.back());
        return jets_.emplace(vars, std::move(d)).first->second;
    }

    truncated_series operator()(const expr &e)
    {
        switch (e->kind) {
            case node::op::jet:
                return jet_value(e->jet);
            case node::op::constant:
                return truncated_series::constant(theta_.vars(), theta_.order(), e->value);
            case node::op::add:
                return (*this)(e->args[0]) + (*this)(e->args[1]);
            case node::op::sub:
                return (*this)(e->args[0]) - (*this)(e->args[1]);
            case node::op::mul:
                return (*this)(e->args[0]) * (*this)(e->args[1]);
            case node::op::neg:
                return -(*this)(e->args[0]);
            case node::op::det: {
                std::size_t dim = 0;
                while (dim * dim < e->args.size()) {
                    ++dim;
                }
                std::vector<truncated_series> m;
                for (const auto &a : e->args) {
                    m.push_back((*this)(a));
                }
                return leibniz(m, dim);
            }
        }
        return {};
    }

    static truncated_series leibniz(const std::vector<truncated_series> &m, std::size_t dim)
    {
        std::vector<std::size_t> perm(dim);
        std::iota(perm.begin(), perm.end(), 0);
        int order = m[0].order();
        for (const auto &x : m) {
            order = std::min(order, x.order());
        }
        truncated_series total(m[0].vars(), order);
        do {
            int inversions = 0;
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = i + 1; j < dim; ++j) {
                    inversions += perm[i] > perm[j] ? 1 : 0;
                }
            }
            auto term = truncated_series::constant(m[0].vars(), order, gaussian_rational(1));
            for (std::size_t r = 0; r < dim; ++r) {
                term = term * m[r * dim + perm[r]];
            }
            total = inversions % 2 == 0 ? total + term : total - term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    }

    const truncated_series &theta() const
    {
        return theta_;
    }

private:
    truncated_series theta_;
    std::map<std::vector<std::size_t>, truncated_series> jets_;
};

// ---- C^2: the AJ4 formula and the derivation D, variables (z, zeta, omega) ----

namespace c2
{
constexpr std::size_t z = 0, zb = 1, wb = 2;

inline expr levi_det()
{
    return jet({zb}) * jet({z, wb}) - jet({wb}) * jet({z, zb});
}

inline expr aj4_numerator()
{
    const auto two = constant(gaussian_rational(2));
    const auto minor = det({jet({zb}), jet({wb}), jet({z, zb}), jet({z, wb})});
    auto m = [](expr a, expr b, expr c, expr d) { return det({std::move(a), std::move(b), std::move(c), std::move(d)}); };
    return jet({z, z, zb, zb}) * (jet({wb}) * jet({wb}) * minor) -
           two * jet({z, z, zb, wb}) * (jet({zb}) * jet({wb}) * minor) +
           jet({z, z, wb, wb}) * (jet({zb}) * jet({zb}) * minor) +
           jet({z, z, zb}) * (jet({zb}) * jet({zb}) * m(jet({wb}), jet({wb, wb}), jet({z, wb}), jet({z, wb, wb})) -
                              two * jet({zb}) * jet({wb}) * m(jet({wb}), jet({zb, wb}), jet({z, wb}), jet({z, zb, wb})) +
                              jet({wb}) * jet({wb}) * m(jet({wb}), jet({zb, zb}), jet({z, wb}), jet({z, zb, zb}))) +
           jet({z, z, wb}) * (-(jet({zb}) * jet({zb}) * m(jet({zb}), jet({wb, wb}), jet({z, zb}), jet({z, wb, wb}))) +
                              two * jet({zb}) * jet({wb}) * m(jet({zb}), jet({zb, wb}), jet({z, zb}), jet({z, zb, wb})) -
                              jet({wb}) * jet({wb}) * m(jet({zb}), jet({zb, zb}), jet({z, zb}), jet({z, zb, zb})));
}

inline truncated_series aj4(evaluator &ev)
{
    return ev(aj4_numerator()) * levijet::pow(levijet::invert(ev(levi_det())), 3);
}

inline truncated_series d_apply(evaluator &ev, const truncated_series &s)
{
    const auto inv = levijet::invert(ev(levi_det()));
    return ev(-jet({wb})) * inv * levijet::diff(s, zb) + ev(jet({zb})) * inv * levijet::diff(s, wb);
}

inline truncated_series obstruction(const truncated_series &theta)
{
    evaluator ev(theta);
    return d_apply(ev, d_apply(ev, aj4(ev)));
}

} // namespace c2

// ---- C^{n+1}: the Theta-level formula, variables (z_1..z_n, zeta_1..zeta_n, omega) ----

namespace cn
{

inline std::vector<std::size_t> sorted(std::vector<std::size_t> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

inline std::size_t tbar(int n, int mu)
{
    return static_cast<std::size_t>(n + mu);
}

// Row generators: g_0 = Theta, g_{1+k} = Theta_{z_k}.
inline std::vector<std::size_t> row_jet(int r, std::vector<std::size_t> extra)
{
    if (r > 0) {
        extra.push_back(static_cast<std::size_t>(r - 1));
    }
    return extra;
}

inline std::vector<expr> levi_entries(int n)
{
    std::vector<expr> m;
    for (int r = 0; r <= n; ++r) {
        for (int mu = 0; mu <= n; ++mu) {
            m.push_back(jet(row_jet(r, {tbar(n, mu)})));
        }
    }
    return m;
}

inline expr delta(int n)
{
    return det(levi_entries(n));
}

// Column mu replaced by the unit column with its 1 in row 1 + l.
inline expr unit_minor(int n, int mu, int l)
{
    auto m = levi_entries(n);
    for (int r = 0; r <= n; ++r) {
        m[static_cast<std::size_t>(r * (n + 1) + mu)] = constant(gaussian_rational(r == 1 + l ? 1 : 0));
    }
    return det(std::move(m));
}

// Column tau replaced by d^2/dtbar_mu dtbar_nu of the row generators.
inline expr second_minor(int n, int tau, int mu, int nu)
{
    auto m = levi_entries(n);
    for (int r = 0; r <= n; ++r) {
        m[static_cast<std::size_t>(r * (n + 1) + tau)] = jet(row_jet(r, {tbar(n, mu), tbar(n, nu)}));
    }
    return det(std::move(m));
}

// Components in (k1, k2, l1, l2) lexicographic order.
inline std::vector<truncated_series> obstruction(const truncated_series &theta, int n)
{
    evaluator ev(theta);
    std::map<std::vector<int>, truncated_series> cache;
    auto cached = [&](std::vector<int> key, const auto &make) -> const truncated_series & {
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
        return cache.emplace(std::move(key), make()).first->second;
    };
    const auto d = ev(delta(n));
    auto minor_u = [&](int mu, int l) -> const truncated_series & {
        return cached({0, mu, l}, [&] { return ev(unit_minor(n, mu, l)); });
    };
    auto minor_s = [&](int tau, int mu, int nu) -> const truncated_series & {
        return cached({1, tau, mu, nu}, [&] { return ev(second_minor(n, tau, mu, nu)); });
    };
    auto zz = [](int a, int b, std::vector<std::size_t> rest) {
        rest.push_back(static_cast<std::size_t>(a));
        rest.push_back(static_cast<std::size_t>(b));
        return rest;
    };
    // The braced expression for (a, b) at (mu, nu).
    auto brace = [&](int a, int b, int mu, int nu) -> const truncated_series & {
        return cached({2, a, b, mu, nu}, [&] {
            auto s = d * ev.jet_value(sorted(zz(a, b, {tbar(n, mu), tbar(n, nu)})));
            for (int tau = 0; tau <= n; ++tau) {
                s = s - minor_s(tau, mu, nu) * ev.jet_value(sorted(zz(a, b, {tbar(n, tau)})));
            }
            return s;
        });
    };
    auto term = [&](int la, int lb, int a, int b, int mu, int nu) {
        return minor_u(mu, la) * minor_u(nu, lb) * brace(a, b, mu, nu);
    };
    const gaussian_rational c1(mpq_class(1, n + 2));
    const gaussian_rational c2(mpq_class(1, (n + 1) * (n + 2)));
    auto dl = [](int x, int y) { return x == y; };
    const auto inv3 = levijet::pow(levijet::invert(d), 3);

    std::vector<truncated_series> out;
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            for (int l1 = 0; l1 < n; ++l1) {
                for (int l2 = 0; l2 < n; ++l2) {
                    truncated_series total(theta.vars(), d.order());
                    for (int mu = 0; mu <= n; ++mu) {
                        for (int nu = 0; nu <= n; ++nu) {
                            auto s = term(l1, l2, k1, k2, mu, nu);
                            for (int l3 = 0; l3 < n; ++l3) {
                                if (dl(k1, l1)) {
                                    s = s - levijet::scale(term(l3, l2, l3, k2, mu, nu), c1);
                                }
                                if (dl(k1, l2)) {
                                    s = s - levijet::scale(term(l1, l3, l3, k2, mu, nu), c1);
                                }
                                if (dl(k2, l1)) {
                                    s = s - levijet::scale(term(l3, l2, k1, l3, mu, nu), c1);
                                }
                                if (dl(k2, l2)) {
                                    s = s - levijet::scale(term(l1, l3, k1, l3, mu, nu), c1);
                                }
                            }
                            const int dd = (dl(k1, l1) && dl(k2, l2) ? 1 : 0) + (dl(k2, l1) && dl(k1, l2) ? 1 : 0);
                            if (dd != 0) {
                                for (int l3 = 0; l3 < n; ++l3) {
                                    for (int l4 = 0; l4 < n; ++l4) {
                                        s = s + levijet::scale(term(l3, l4, l3, l4, mu, nu),
                                                               c2 * gaussian_rational(dd));
                                    }
                                }
                            }
                            total = total + s;
                        }
                    }
                    out.push_back(total * inv3);
                }
            }
        }
    }
    return out;
}

} // namespace cn

} // namespace oracle

#endif
