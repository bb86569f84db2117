#include <levijet/hypersurface.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <gmpxx.h>

#include <levijet/error.hpp>

namespace levijet
{

namespace
{

void check_dimension(int n)
{
    if (n < 1 || 2 * n + 2 > static_cast<int>(max_variables)) {
        throw error(errc::wrong_dimension, "CR dimension must be between 1 and 7");
    }
}

void require_exact_or_origin(const complex_graph &g, const surface_point &p)
{
    if (!p.is_origin() && !g.exact()) {
        throw error(errc::jet_only_input, "a jet-only graph can only be examined at the origin");
    }
}

} // namespace

variable_list real_variables(int n)
{
    check_dimension(n);
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) {
        names.push_back("x" + std::to_string(k));
    }
    for (int k = 1; k <= n; ++k) {
        names.push_back("y" + std::to_string(k));
    }
    names.emplace_back("u");
    return make_variables(std::move(names));
}

variable_list complex_variables(int n)
{
    check_dimension(n);
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) {
        names.push_back("z" + std::to_string(k));
    }
    for (int k = 1; k <= n; ++k) {
        names.push_back("zeta" + std::to_string(k));
    }
    names.emplace_back("omega");
    return make_variables(std::move(names));
}

real_graph::real_graph(int n, truncated_series psi) : n_(n), psi_(std::move(psi))
{
    check_dimension(n);
    if (psi_.nvars() != static_cast<std::size_t>(2 * n + 1) || *psi_.vars() != *real_variables(n)) {
        throw error(errc::variable_mismatch, "real graph must be a series in x1..xn, y1..yn, u");
    }
    for (const auto &[m, c] : psi_.terms()) {
        if (!c.is_real()) {
            throw error(errc::not_real, "real graphing function has a non-real coefficient");
        }
        if (m.total_degree() < 2) {
            throw error(errc::not_normalized, "graphing function must vanish to second order at the origin");
        }
    }
}

complex_graph::complex_graph(int n, truncated_series theta) : complex_graph(n, std::move(theta), true) {}

complex_graph complex_graph::unnormalized(int n, truncated_series theta)
{
    return complex_graph(n, std::move(theta), false);
}

complex_graph::complex_graph(int n, truncated_series theta, bool check_normalized) : n_(n), theta_(std::move(theta))
{
    check_dimension(n);
    if (theta_.nvars() != static_cast<std::size_t>(2 * n + 1) || *theta_.vars() != *complex_variables(n)) {
        throw error(errc::variable_mismatch, "complex graph must be a series in z1..zn, zeta1..zetan, omega");
    }
    if (!theta_.constant_term().is_zero()) {
        throw error(errc::not_normalized, "Theta must vanish at the origin");
    }
    if (!check_normalized) {
        return;
    }
    if (theta_.order() < 1) {
        throw error(errc::order_out_of_range, "Theta needs order at least 1");
    }
    for (int v = 0; v < 2 * n + 1; ++v) {
        const auto c = theta_.coeff(multidegree::unit(static_cast<std::size_t>(v)));
        const bool ok = v == 2 * n ? c.is_one() : c.is_zero();
        if (!ok) {
            throw error(errc::not_normalized, "Theta must be omega + O(2)");
        }
    }
}

complex_graph heisenberg(int n, int k, int order)
{
    if (k < 0 || k > n) {
        throw error(errc::invalid_argument, "signature index out of range");
    }
    auto vars = complex_variables(n);
    const std::size_t nv = static_cast<std::size_t>(n);
    auto theta = truncated_series::variable(vars, order, 2 * nv);
    for (std::size_t j = 0; j < nv; ++j) {
        const gaussian_rational c(0, j < static_cast<std::size_t>(k) ? -2 : 2);
        theta = theta + scale(truncated_series::variable(vars, order, j) *
                                  truncated_series::variable(vars, order, nv + j),
                              c);
    }
    return complex_graph(n, std::move(theta));
}

bool surface_point::is_origin() const
{
    return w.is_zero() && std::all_of(z.begin(), z.end(), [](const auto &c) { return c.is_zero(); });
}

std::vector<gaussian_rational> theta_coordinates(const surface_point &p)
{
    std::vector<gaussian_rational> out(p.z);
    for (const auto &c : p.z) {
        out.push_back(c.conj());
    }
    out.push_back(p.w.conj());
    return out;
}

surface_point make_surface_point(const complex_graph &g, std::vector<gaussian_rational> z, gaussian_rational w)
{
    if (z.size() != static_cast<std::size_t>(g.n())) {
        throw error(errc::wrong_dimension,
                    "point has " + std::to_string(z.size()) + " z-coordinates, expected " + std::to_string(g.n()));
    }
    surface_point p{std::move(z), std::move(w)};
    require_exact_or_origin(g, p);
    if (evaluate(g.theta(), theta_coordinates(p)) != p.w) {
        throw error(errc::point_not_on_surface, "point does not satisfy w = Theta(z, conj z, conj w)");
    }
    return p;
}

surface_point lift_point(const real_graph &g, const std::vector<gaussian_rational> &z, const gaussian_rational &u)
{
    if (z.size() != static_cast<std::size_t>(g.n())) {
        throw error(errc::wrong_dimension, "point has the wrong number of z-coordinates");
    }
    if (!u.is_real()) {
        throw error(errc::invalid_argument, "u must be real");
    }
    std::vector<gaussian_rational> real_point;
    for (const auto &c : z) {
        real_point.emplace_back(c.re());
    }
    for (const auto &c : z) {
        real_point.emplace_back(c.im());
    }
    real_point.push_back(u);
    const auto v = evaluate(g.psi(), real_point);
    return surface_point{z, u + gaussian_rational::i() * v};
}

complex_graph complexify(const real_graph &g)
{
    const int n = g.n();
    const int order = g.psi().order();
    const auto cvars = complex_variables(n);
    const std::size_t nv = static_cast<std::size_t>(n);
    const gaussian_rational half(mpq_class(1, 2));
    const gaussian_rational minus_half_i(mpq_class(0), mpq_class(-1, 2));
    const gaussian_rational two_i(0, 2);

    auto real_subs = [&](const variable_list &vars, const truncated_series &u) {
        std::vector<truncated_series> subs;
        for (std::size_t k = 0; k < nv; ++k) {
            auto z = truncated_series::variable(vars, order, k);
            auto zeta = truncated_series::variable(vars, order, nv + k);
            subs.push_back(scale(z + zeta, half));
        }
        for (std::size_t k = 0; k < nv; ++k) {
            auto z = truncated_series::variable(vars, order, k);
            auto zeta = truncated_series::variable(vars, order, nv + k);
            subs.push_back(scale(z - zeta, minus_half_i));
        }
        subs.push_back(u);
        return subs;
    };

    const bool rigid = !g.psi().depends_on(2 * nv);
    if (rigid) {
        // (w - omega)/(2i) = psi(x, y) solves explicitly.
        auto subs = real_subs(cvars, truncated_series(cvars, order));
        auto theta = truncated_series::variable(cvars, order, 2 * nv) + scale(compose(g.psi(), subs), two_i);
        return complex_graph(n, std::move(theta));
    }

    std::vector<std::string> names(*cvars);
    names.emplace_back("w");
    const auto svars = make_variables(std::move(names));
    auto omega = truncated_series::variable(svars, order, 2 * nv);
    auto w = truncated_series::variable(svars, order, 2 * nv + 1);
    auto subs = real_subs(svars, scale(w + omega, half));
    const std::vector<truncated_series> f{scale(w - omega, two_i.inverse()) - compose(g.psi(), subs)};
    auto sol = solve_implicit(f, 2 * nv + 1);
    std::vector<truncated_series::term> terms = sol[0].terms();
    return complex_graph(n, truncated_series::from_terms(cvars, sol[0].order(), std::move(terms), sol[0].exact()));
}

truncated_series swap_conjugate(const complex_graph &g)
{
    const std::size_t nv = static_cast<std::size_t>(g.n());
    std::vector<truncated_series::term> out;
    out.reserve(g.theta().terms().size());
    for (const auto &[m, c] : g.theta().terms()) {
        multidegree s;
        for (std::size_t k = 0; k < nv; ++k) {
            s.set(k, m[nv + k]);
            s.set(nv + k, m[k]);
        }
        s.set(2 * nv, m[2 * nv]);
        out.emplace_back(s, c.conj());
    }
    return truncated_series::from_terms(g.theta().vars(), g.order(), std::move(out), g.exact());
}

truncated_series reality_residual(const complex_graph &g)
{
    const auto &vars = g.theta().vars();
    const std::size_t nv = static_cast<std::size_t>(g.n());
    std::vector<truncated_series> subs;
    for (std::size_t v = 0; v < 2 * nv; ++v) {
        subs.push_back(truncated_series::variable(vars, g.order(), v));
    }
    subs.push_back(swap_conjugate(g));
    return compose(g.theta(), subs) - truncated_series::variable(vars, g.order(), 2 * nv);
}

void check_reality(const complex_graph &g)
{
    if (!reality_residual(g).is_zero()) {
        throw error(errc::reality_check_failed, "equation does not define a real hypersurface");
    }
}

complex_graph recenter(const complex_graph &g, const surface_point &p)
{
    if (p.z.size() != static_cast<std::size_t>(g.n())) {
        throw error(errc::wrong_dimension, "point has the wrong number of z-coordinates");
    }
    if (p.is_origin()) {
        return g;
    }
    require_exact_or_origin(g, p);
    const auto coords = theta_coordinates(p);
    if (evaluate(g.theta(), coords) != p.w) {
        throw error(errc::point_not_on_surface, "point does not lie on the hypersurface");
    }
    auto moved = translate(g.theta(), coords);
    return complex_graph::unnormalized(g.n(), add_constant(moved, -p.w));
}

truncated_series series_determinant(const std::vector<std::vector<truncated_series>> &m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        throw error(errc::invalid_argument, "empty determinant");
    }
    const auto &proto = m[0][0];
    std::vector<truncated_series> minors(std::size_t{1} << n);
    int order = proto.order();
    for (const auto &row : m) {
        for (const auto &e : row) {
            order = std::min(order, e.order());
        }
    }
    minors[0] = truncated_series::constant(proto.vars(), order, gaussian_rational(1));
    // minors[mask]: determinant of the first popcount(mask) rows on the columns in mask.
    for (std::size_t mask = 1; mask < minors.size(); ++mask) {
        const auto r = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
        truncated_series acc(proto.vars(), order);
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask & (std::size_t{1} << c)) || m[r][c].is_zero()) {
                continue;
            }
            const auto higher = static_cast<int>(__builtin_popcountll(mask >> (c + 1)));
            auto t = m[r][c] * minors[mask & ~(std::size_t{1} << c)];
            acc = higher % 2 == 0 ? acc + t : acc - t;
        }
        minors[mask] = std::move(acc);
    }
    return minors.back();
}

gaussian_rational determinant(std::vector<std::vector<gaussian_rational>> m)
{
    const std::size_t n = m.size();
    gaussian_rational det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) {
            ++p;
        }
        if (p == n) {
            return {};
        }
        if (p != k) {
            std::swap(m[p], m[k]);
            det = -det;
        }
        det *= m[k][k];
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
    return det;
}

namespace
{

std::vector<std::vector<truncated_series>> levi_entries(const complex_graph &g)
{
    const int n = g.n();
    std::vector<std::vector<truncated_series>> m(static_cast<std::size_t>(n + 1),
                                                 std::vector<truncated_series>(static_cast<std::size_t>(n + 1)));
    for (int mu = 0; mu <= n; ++mu) {
        const auto col = static_cast<std::size_t>(mu);
        const auto d = diff(g.theta(), g.tbar(mu));
        m[0][col] = d;
        for (int k = 0; k < n; ++k) {
            m[static_cast<std::size_t>(k + 1)][col] = diff(d, complex_graph::z(k));
        }
    }
    return m;
}

} // namespace

levi_data levi_matrix(const complex_graph &g)
{
    levi_data out;
    out.matrix = levi_entries(g);
    out.det = series_determinant(out.matrix);
    return out;
}

std::vector<std::vector<gaussian_rational>> levi_matrix_at(const complex_graph &g, const surface_point &p)
{
    require_exact_or_origin(g, p);
    const auto coords = theta_coordinates(p);
    std::vector<std::vector<gaussian_rational>> out;
    for (const auto &row : levi_entries(g)) {
        auto &r = out.emplace_back();
        for (const auto &e : row) {
            r.push_back(evaluate(e, coords));
        }
    }
    return out;
}

gaussian_rational levi_det_at(const complex_graph &g, const surface_point &p)
{
    return determinant(levi_matrix_at(g, p));
}

bool is_levi_nondegenerate(const complex_graph &g, const surface_point &p)
{
    return !levi_det_at(g, p).is_zero();
}

namespace
{

// Inertia (negative, positive) of a real symmetric matrix by congruence.
std::pair<int, int> inertia(std::vector<std::vector<mpq_class>> a)
{
    const std::size_t n = a.size();
    int neg = 0, pos = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][p] == 0) {
            ++p;
        }
        if (p == n) {
            // No usable diagonal: fold a row with a nonzero off-diagonal entry into k.
            std::size_t i = n, j = n;
            for (std::size_t r = k; r < n && i == n; ++r) {
                for (std::size_t c = r + 1; c < n; ++c) {
                    if (a[r][c] != 0) {
                        i = r;
                        j = c;
                        break;
                    }
                }
            }
            if (i == n) {
                throw error(errc::levi_degenerate, "Levi form is degenerate");
            }
            for (std::size_t c = k; c < n; ++c) {
                a[i][c] += a[j][c];
            }
            for (std::size_t r = k; r < n; ++r) {
                a[r][i] += a[r][j];
            }
            p = i;
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            for (auto &row : a) {
                std::swap(row[p], row[k]);
            }
        }
        const mpq_class pivot = a[k][k];
        (pivot > 0 ? pos : neg) += 1;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (a[r][k] == 0) {
                continue;
            }
            const mpq_class f = a[r][k] / pivot;
            for (std::size_t c = k; c < n; ++c) {
                a[r][c] -= f * a[k][c];
            }
        }
        for (std::size_t c = k + 1; c < n; ++c) {
            a[k][c] = 0;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            a[r][k] = 0;
        }
    }
    return {neg, pos};
}

} // namespace

std::pair<int, int> signature_at(const complex_graph &g, const surface_point &p)
{
    require_exact_or_origin(g, p);
    if (!is_levi_nondegenerate(g, p)) {
        throw error(errc::levi_degenerate, "Levi form is degenerate at the point");
    }
    const int n = g.n();
    const auto nv = static_cast<std::size_t>(n);
    const auto coords = theta_coordinates(p);
    std::vector<gaussian_rational> theta_z(nv);
    for (std::size_t j = 0; j < nv; ++j) {
        theta_z[j] = evaluate(diff(g.theta(), j), coords);
    }
    // Levi form on complex tangent vectors, up to a complex scalar.
    std::vector<std::vector<gaussian_rational>> h(nv, std::vector<gaussian_rational>(nv));
    for (std::size_t j = 0; j < nv; ++j) {
        const auto tz = diff(g.theta(), j);
        const auto tzw = evaluate(diff(tz, g.omega()), coords);
        for (std::size_t k = 0; k < nv; ++k) {
            const auto tzz = evaluate(diff(tz, nv + k), coords);
            h[j][k] = -(tzz + tzw * theta_z[k].conj());
        }
    }
    auto quad = [&](const std::vector<gaussian_rational> &v) {
        gaussian_rational s;
        for (std::size_t j = 0; j < nv; ++j) {
            for (std::size_t k = 0; k < nv; ++k) {
                s += v[j] * h[j][k] * v[k].conj();
            }
        }
        return s;
    };
    gaussian_rational d;
    for (std::size_t j = 0; j < nv && d.is_zero(); ++j) {
        std::vector<gaussian_rational> e(nv);
        e[j] = gaussian_rational(1);
        d = quad(e);
        for (std::size_t k = j + 1; k < nv && d.is_zero(); ++k) {
            auto f = e;
            f[k] = gaussian_rational(1);
            d = quad(f);
            if (d.is_zero()) {
                f[k] = gaussian_rational::i();
                d = quad(f);
            }
        }
    }
    if (d.is_zero()) {
        throw error(errc::levi_degenerate, "Levi form vanishes at the point");
    }
    const auto phase = d.conj();
    std::vector<std::vector<mpq_class>> real(2 * nv, std::vector<mpq_class>(2 * nv));
    for (std::size_t j = 0; j < nv; ++j) {
        for (std::size_t k = 0; k < nv; ++k) {
            const auto a = phase * h[j][k];
            const auto at = phase * h[k][j];
            if (a != at.conj()) {
                throw error(errc::reality_check_failed, "Levi form is not a multiple of a Hermitian form");
            }
            real[j][k] = a.re();
            real[nv + j][nv + k] = a.re();
            real[j][nv + k] = -a.im();
            real[nv + j][k] = a.im();
        }
    }
    const auto [neg, pos] = inertia(std::move(real));
    return {std::min(neg, pos) / 2, std::max(neg, pos) / 2};
}

namespace
{

using cplx = std::complex<double>;

struct double_poly {
    std::vector<std::pair<std::vector<int>, cplx>> terms;

    explicit double_poly(const truncated_series &s)
    {
        for (const auto &[m, c] : s.terms()) {
            terms.emplace_back(m.exponents(s.nvars()), cplx(c.real_double(), c.imag_double()));
        }
    }

    cplx operator()(const std::vector<cplx> &pt) const
    {
        cplx total = 0.0;
        for (const auto &[e, c] : terms) {
            cplx t = c;
            for (std::size_t v = 0; v < e.size(); ++v) {
                for (int k = 0; k < e[v]; ++k) {
                    t *= pt[v];
                }
            }
            total += t;
        }
        return total;
    }
};

cplx complex_determinant(std::vector<std::vector<cplx>> m)
{
    const std::size_t n = m.size();
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m[r][k]) > std::abs(m[p][k])) {
                p = r;
            }
        }
        if (m[p][k] == 0.0) {
            return 0.0;
        }
        if (p != k) {
            std::swap(m[p], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const cplx f = m[r][k] / m[k][k];
            for (std::size_t c = k; c < n; ++c) {
                m[r][c] -= f * m[k][c];
            }
        }
    }
    return det;
}

} // namespace

std::vector<locus_sample> levi_locus_sample(const complex_graph &g, const sample_grid &grid, double tol)
{
    if (!g.exact()) {
        throw error(errc::jet_only_input, "locus sampling needs a polynomial graph");
    }
    if (grid.steps < 1 || !(grid.lo <= grid.hi)) {
        throw error(errc::empty_grid, "sampling grid is empty");
    }
    const int n = g.n();
    const auto nv = static_cast<std::size_t>(n);
    const double_poly theta(g.theta());
    std::vector<std::vector<double_poly>> entries;
    for (const auto &row : levi_entries(g)) {
        auto &r = entries.emplace_back();
        for (const auto &e : row) {
            r.emplace_back(e);
        }
    }

    const std::size_t dims = 2 * nv + 1;
    std::vector<double> axis(static_cast<std::size_t>(grid.steps));
    for (int s = 0; s < grid.steps; ++s) {
        axis[static_cast<std::size_t>(s)] =
            grid.steps == 1 ? grid.lo : grid.lo + (grid.hi - grid.lo) * s / (grid.steps - 1);
    }
    std::vector<std::size_t> idx(dims, 0);
    std::vector<locus_sample> out;
    const cplx two_i(0.0, 2.0);
    while (true) {
        locus_sample s;
        std::vector<cplx> pt(dims);
        for (std::size_t k = 0; k < nv; ++k) {
            s.x.push_back(axis[idx[k]]);
            s.y.push_back(axis[idx[nv + k]]);
            const cplx z(s.x.back(), s.y.back());
            pt[k] = z;
            pt[nv + k] = std::conj(z);
        }
        s.u = axis[idx[2 * nv]];
        // v = Re[(Theta(z, conj z, u - iv) - (u - iv)) / (2i)] by fixed-point iteration.
        double v = 0.0;
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            const cplx wbar(s.u, -v);
            pt[2 * nv] = wbar;
            const double next = ((theta(pt) - wbar) / two_i).real();
            if (!std::isfinite(next)) {
                break;
            }
            const bool done = std::abs(next - v) <= 1e-14 * (1.0 + std::abs(next));
            v = next;
            if (done) {
                converged = true;
                break;
            }
        }
        if (converged) {
            s.v = v;
            pt[2 * nv] = cplx(s.u, -v);
            std::vector<std::vector<cplx>> m;
            for (const auto &row : entries) {
                auto &r = m.emplace_back();
                for (const auto &e : row) {
                    r.push_back(e(pt));
                }
            }
            s.abs_delta = std::abs(complex_determinant(std::move(m)));
            s.flagged = s.abs_delta < tol;
            out.push_back(std::move(s));
        }
        std::size_t d = 0;
        while (d < dims && ++idx[d] == static_cast<std::size_t>(grid.steps)) {
            idx[d++] = 0;
        }
        if (d == dims) {
            break;
        }
    }
    return out;
}

} // namespace levijet
