#ifndef LEVIJET_TESTS_FIXTURES_HPP
#define LEVIJET_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include <levijet/hypersurface.hpp>
#include <levijet/series.hpp>

namespace fixtures
{

using levijet::complex_graph;
using levijet::gaussian_rational;
using levijet::multidegree;
using levijet::real_graph;
using levijet::truncated_series;

inline gaussian_rational small_rational(std::mt19937 &rng, int span = 3, int den = 3)
{
    std::uniform_int_distribution<int> num(-span, span), d(1, den);
    return gaussian_rational(mpq_class(num(rng), d(rng)));
}

inline gaussian_rational small_complex(std::mt19937 &rng, int span = 2, int den = 2)
{
    return gaussian_rational(small_rational(rng, span, den).re(), small_rational(rng, span, den).re());
}

// v = sum eps_k |z_k|^2 + random real terms of degree 3..max_degree in (x, y).
inline real_graph perturbed_quadric(int n, int k, int order, int max_degree, int extra_terms, std::mt19937 &rng)
{
    auto vars = levijet::real_variables(n);
    const auto nv = static_cast<std::size_t>(n);
    std::vector<truncated_series::term> terms;
    for (std::size_t j = 0; j < nv; ++j) {
        const long eps = j < static_cast<std::size_t>(k) ? -1 : 1;
        terms.emplace_back(multidegree::unit(j) + multidegree::unit(j), gaussian_rational(eps));
        terms.emplace_back(multidegree::unit(nv + j) + multidegree::unit(nv + j), gaussian_rational(eps));
    }
    std::uniform_int_distribution<int> deg(3, max_degree);
    std::uniform_int_distribution<std::size_t> which(0, 2 * nv - 1);
    for (int t = 0; t < extra_terms; ++t) {
        const int d = deg(rng);
        multidegree m;
        for (int e = 0; e < d; ++e) {
            m = m + multidegree::unit(which(rng));
        }
        auto c = small_rational(rng);
        if (c.is_zero()) {
            c = gaussian_rational(1);
        }
        terms.emplace_back(m, c);
    }
    return real_graph(n, truncated_series::from_terms(vars, order, std::move(terms), true));
}

// A random point of M over a rational (z, u).
inline levijet::surface_point random_point(const real_graph &g, std::mt19937 &rng)
{
    std::vector<gaussian_rational> z;
    for (int k = 0; k < g.n(); ++k) {
        z.push_back(small_complex(rng));
    }
    return levijet::lift_point(g, z, small_rational(rng, 2, 2));
}

// Image of the graph under (z, w) -> (A(z), mu w + g(z)) with
// A(z)_1 = lambda_1 z_1 + q(z_2, ..., z_n), A(z)_k = lambda_k z_k (k > 1),
// g of degree 2..3, mu real. Returns Theta of the image.
struct triangular_map {
    std::vector<gaussian_rational> lambda;
    gaussian_rational mu;
    truncated_series q; // over z1..zn, no z1 dependence, degree >= 2 (n >= 2)
    truncated_series g; // over z1..zn, degree 2..3
};

inline truncated_series conj_coefficients(const truncated_series &s)
{
    std::vector<truncated_series::term> t;
    for (const auto &[m, c] : s.terms()) {
        t.emplace_back(m, c.conj());
    }
    return truncated_series::from_terms(s.vars(), s.order(), std::move(t), s.exact());
}

inline triangular_map random_map(int n, int order, std::mt19937 &rng)
{
    auto zv = levijet::make_variables([n] {
        std::vector<std::string> names;
        for (int k = 1; k <= n; ++k) {
            names.push_back("z" + std::to_string(k));
        }
        return names;
    }());
    triangular_map f;
    for (int k = 0; k < n; ++k) {
        auto l = small_complex(rng);
        if (l.is_zero()) {
            l = gaussian_rational(1);
        }
        f.lambda.push_back(l);
    }
    f.mu = small_rational(rng);
    if (f.mu.is_zero()) {
        f.mu = gaussian_rational(2);
    }
    const auto nv = static_cast<std::size_t>(n);
    std::vector<truncated_series::term> gt, qt;
    for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = a; b < nv; ++b) {
            gt.emplace_back(multidegree::unit(a) + multidegree::unit(b), small_complex(rng));
            for (std::size_t c = b; c < nv; ++c) {
                gt.emplace_back(multidegree::unit(a) + multidegree::unit(b) + multidegree::unit(c), small_complex(rng));
            }
            if (a > 0) {
                qt.emplace_back(multidegree::unit(a) + multidegree::unit(b), small_complex(rng));
            }
        }
    }
    f.g = truncated_series::from_terms(zv, order, std::move(gt), true);
    f.q = truncated_series::from_terms(zv, order, std::move(qt), true);
    return f;
}

inline complex_graph transform(const complex_graph &src, const triangular_map &f)
{
    const int n = src.n();
    const auto nv = static_cast<std::size_t>(n);
    const int order = src.order();
    const auto &vars = src.theta().vars();
    auto var = [&](std::size_t i) { return truncated_series::variable(vars, order, i); };

    // Inverse of A in the z-slots and of conj(A) in the zeta-slots.
    std::vector<std::size_t> to_z(nv), to_zeta(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        to_z[k] = k;
        to_zeta[k] = nv + k;
    }
    auto inverse = [&](const std::vector<std::size_t> &slots, bool conjugate) {
        std::vector<truncated_series> inv(nv);
        for (std::size_t k = 1; k < nv; ++k) {
            const auto l = conjugate ? f.lambda[k].conj() : f.lambda[k];
            inv[k] = scale(var(slots[k]), l.inverse());
        }
        const auto l0 = conjugate ? f.lambda[0].conj() : f.lambda[0];
        auto first = var(slots[0]);
        if (nv > 1) {
            std::vector<truncated_series> qsubs(inv);
            qsubs[0] = truncated_series(vars, order);
            first = first - levijet::compose(conjugate ? conj_coefficients(f.q) : f.q, qsubs);
        }
        inv[0] = scale(first, l0.inverse());
        return inv;
    };
    const auto zi = inverse(to_z, false);
    const auto zetai = inverse(to_zeta, true);
    const auto g_of_z = levijet::compose(f.g, zi);
    const auto gbar_of_zeta = levijet::compose(conj_coefficients(f.g), zetai);

    std::vector<truncated_series> subs;
    for (const auto &s : zi) {
        subs.push_back(s);
    }
    for (const auto &s : zetai) {
        subs.push_back(s);
    }
    subs.push_back(scale(var(2 * nv) - gbar_of_zeta, f.mu.inverse()));
    auto theta = scale(levijet::compose(src.theta(), subs), f.mu) + g_of_z;
    return complex_graph(n, std::move(theta));
}

// A point of the image corresponding to the point p of the source.
inline levijet::surface_point transform_point(const levijet::surface_point &p, const triangular_map &f)
{
    const auto nv = p.z.size();
    std::vector<gaussian_rational> z(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        z[k] = f.lambda[k] * p.z[k];
    }
    if (nv > 1) {
        z[0] += levijet::evaluate(f.q, p.z);
    }
    return {z, f.mu * p.w + levijet::evaluate(f.g, p.z)};
}

} // namespace fixtures

#endif
