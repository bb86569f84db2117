#include <levijet/curvature.hpp>

#include <algorithm>
#include <map>
#include <string>

#include <levijet/error.hpp>

namespace levijet
{

namespace
{

// Polynomial-mode computations are skipped beyond this working order.
constexpr int max_polynomial_order = 120;

// Memoized partial derivatives of Theta, optionally truncated to `cap`.
class jet_table
{
public:
    jet_table(const truncated_series &theta, int cap) : theta_(theta), cap_(cap) {}

    const truncated_series &operator()(std::vector<std::size_t> vars)
    {
        std::sort(vars.begin(), vars.end());
        if (auto it = capped_.find(vars); it != capped_.end()) {
            return it->second;
        }
        const auto &full = raw(vars);
        auto capped = full.order() > cap_ ? truncate(full, cap_) : full;
        return capped_.emplace(vars, std::move(capped)).first->second;
    }

private:
    const truncated_series &raw(const std::vector<std::size_t> &vars)
    {
        if (vars.empty()) {
            return theta_;
        }
        if (auto it = raw_.find(vars); it != raw_.end()) {
            return it->second;
        }
        std::vector<std::size_t> head(vars.begin(), vars.end() - 1);
        auto d = diff(raw(head), vars.back());
        return raw_.emplace(vars, std::move(d)).first->second;
    }

    const truncated_series &theta_;
    int cap_;
    std::map<std::vector<std::size_t>, truncated_series> raw_;
    std::map<std::vector<std::size_t>, truncated_series> capped_;
};

surface_point origin_of(const complex_graph &g)
{
    return {std::vector<gaussian_rational>(static_cast<std::size_t>(g.n())), gaussian_rational()};
}

void require_nondegenerate(const complex_graph &g)
{
    if (levi_det_at(g, origin_of(g)).is_zero()) {
        throw error(errc::levi_degenerate, "Levi form is degenerate at the origin");
    }
}

void require_n1(const complex_graph &g)
{
    if (g.n() != 1) {
        throw error(errc::wrong_dimension, "this formula is specific to hypersurfaces in C^2 (n = 1)");
    }
}

int theta_degree(const complex_graph &g)
{
    return std::max(g.theta().degree(), 2);
}

// Theta promoted so that a cleared numerator built from jets of order
// <= `jets` is computed without truncation; empty if too large.
std::optional<truncated_series> polynomial_theta(const complex_graph &g, int jets)
{
    if (!g.exact()) {
        return std::nullopt;
    }
    const int order = std::max(g.order(), cleared_degree_bound(g.n(), theta_degree(g)) + jets);
    if (order > max_polynomial_order) {
        return std::nullopt;
    }
    return with_order(g.theta(), order);
}

// ---- C^2 -------------------------------------------------------------

struct c2_parts {
    truncated_series delta;
    truncated_series p; // AJ4 * Delta^3
    truncated_series r; // D(D(AJ4)) * Delta^7
};

constexpr std::size_t Z = 0, ZETA = 1, OMEGA = 2;

truncated_series det2(const truncated_series &a, const truncated_series &b, const truncated_series &c,
                      const truncated_series &d)
{
    return a * d - b * c;
}

c2_parts c2_core(const truncated_series &theta, bool with_r)
{
    jet_table t(theta, theta.order());
    const auto &a = t({ZETA});
    const auto &b = t({OMEGA});
    const auto &c = t({Z, ZETA});
    const auto &d = t({Z, OMEGA});
    c2_parts out;
    out.delta = a * d - b * c;
    const auto aa = a * a, ab = a * b, bb = b * b;
    const gaussian_rational two(2);

    auto p = out.delta * (t({Z, Z, ZETA, ZETA}) * bb - scale(t({Z, Z, ZETA, OMEGA}) * ab, two) +
                          t({Z, Z, OMEGA, OMEGA}) * aa);
    p = p + t({Z, Z, ZETA}) * (aa * det2(b, t({OMEGA, OMEGA}), d, t({Z, OMEGA, OMEGA})) -
                               scale(ab * det2(b, t({ZETA, OMEGA}), d, t({Z, ZETA, OMEGA})), two) +
                               bb * det2(b, t({ZETA, ZETA}), d, t({Z, ZETA, ZETA})));
    p = p + t({Z, Z, OMEGA}) * (-(aa * det2(a, t({OMEGA, OMEGA}), c, t({Z, OMEGA, OMEGA}))) +
                                scale(ab * det2(a, t({ZETA, OMEGA}), c, t({Z, ZETA, OMEGA})), two) -
                                bb * det2(a, t({ZETA, ZETA}), c, t({Z, ZETA, ZETA})));
    out.p = std::move(p);
    if (with_r) {
        // With E = -Theta_omega d/dzeta + Theta_zeta d/domega we have D = E / Delta, so
        // D(P / Delta^3) = Q / Delta^5 and D(Q / Delta^5) = R / Delta^7.
        auto e = [&](const truncated_series &s) { return a * diff(s, OMEGA) - b * diff(s, ZETA); };
        const auto e_delta = e(out.delta);
        const auto q = out.delta * e(out.p) - scale(out.p * e_delta, gaussian_rational(3));
        out.r = out.delta * e(q) - scale(q * e_delta, gaussian_rational(5));
    }
    return out;
}

// ---- C^{n+1} ---------------------------------------------------------

using series_matrix = std::vector<std::vector<truncated_series>>;

// U[a][b][l][l'] stored for all index values (symmetric pairs share data).
struct u_table {
    int n;
    std::vector<truncated_series> data;

    truncated_series &at(int a, int b, int l1, int l2)
    {
        return data[static_cast<std::size_t>(((a * n + b) * n + l1) * n + l2)];
    }
    const truncated_series &at(int a, int b, int l1, int l2) const
    {
        return data[static_cast<std::size_t>(((a * n + b) * n + l1) * n + l2)];
    }
};

std::string index_label(const std::vector<int> &idx)
{
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        s += (i ? "," : "") + std::to_string(idx[i] + 1);
    }
    return s + ")";
}

// The trace-corrected combination shared by the Hachtroudi condition and
// its Theta-level translation.
std::vector<obstruction_component> trace_free_combination(const u_table &u)
{
    const int n = u.n;
    const gaussian_rational c1(mpq_class(1, n + 2));
    const gaussian_rational c2(mpq_class(1, (n + 1) * (n + 2)));
    const auto &proto = u.at(0, 0, 0, 0);
    // A[k][l] = sum_m U[m][k][m][l]
    std::vector<std::vector<truncated_series>> tr(static_cast<std::size_t>(n),
                                                  std::vector<truncated_series>(static_cast<std::size_t>(n)));
    truncated_series total(proto.vars(), proto.order());
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            truncated_series s(proto.vars(), proto.order());
            for (int m = 0; m < n; ++m) {
                s = s + u.at(m, k, m, l);
            }
            tr[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = s;
        }
        total = total + tr[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    auto a = [&](int k, int l) -> const truncated_series & {
        return tr[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    };
    std::vector<obstruction_component> out;
    for (int k1 = 0; k1 < n; ++k1) {
        for (int k2 = 0; k2 < n; ++k2) {
            for (int l1 = 0; l1 < n; ++l1) {
                for (int l2 = 0; l2 < n; ++l2) {
                    auto s = u.at(k1, k2, l1, l2);
                    truncated_series corr(proto.vars(), proto.order());
                    if (k1 == l1) {
                        corr = corr + a(k2, l2);
                    }
                    if (k1 == l2) {
                        corr = corr + a(k2, l1);
                    }
                    if (k2 == l1) {
                        corr = corr + a(k1, l2);
                    }
                    if (k2 == l2) {
                        corr = corr + a(k1, l1);
                    }
                    if (!corr.is_zero()) {
                        s = s - scale(corr, c1);
                    }
                    const int dd = (k1 == l1 && k2 == l2 ? 1 : 0) + (k2 == l1 && k1 == l2 ? 1 : 0);
                    if (dd != 0) {
                        s = s + scale(total, c2 * gaussian_rational(dd));
                    }
                    std::vector<int> idx{k1, k2, l1, l2};
                    out.push_back({index_label(idx), idx, std::move(s)});
                }
            }
        }
    }
    return out;
}

struct cn_parts {
    truncated_series delta;
    std::vector<obstruction_component> cleared;
};

cn_parts cn_core(const truncated_series &theta, int n, int work)
{
    const auto nv = static_cast<std::size_t>(n);
    const std::size_t dim = nv + 1;
    jet_table t(theta, work);
    auto tbar = [nv](std::size_t mu) { return nv + mu; };

    // Levi matrix: row 0 from Theta, row 1+k from Theta_{z_k}.
    series_matrix lm(dim, std::vector<truncated_series>(dim));
    for (std::size_t mu = 0; mu < dim; ++mu) {
        lm[0][mu] = t({tbar(mu)});
        for (std::size_t k = 0; k < nv; ++k) {
            lm[k + 1][mu] = t({k, tbar(mu)});
        }
    }
    series_matrix cof(dim, std::vector<truncated_series>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            series_matrix minor;
            for (std::size_t i = 0; i < dim; ++i) {
                if (i == r) {
                    continue;
                }
                auto &row = minor.emplace_back();
                for (std::size_t j = 0; j < dim; ++j) {
                    if (j != c) {
                        row.push_back(lm[i][j]);
                    }
                }
            }
            auto d = series_determinant(minor);
            cof[r][c] = (r + c) % 2 == 0 ? d : -d;
        }
    }
    cn_parts out;
    out.delta = truncated_series(theta.vars(), work);
    for (std::size_t r = 0; r < dim; ++r) {
        out.delta = out.delta + lm[r][0] * cof[r][0];
    }

    // S[tau][mu][nu]: Delta with column tau replaced by the second tbar-derivatives.
    auto second = [&](std::size_t r, std::size_t mu, std::size_t nu) -> const truncated_series & {
        return r == 0 ? t({tbar(mu), tbar(nu)}) : t({r - 1, tbar(mu), tbar(nu)});
    };
    std::vector<series_matrix> s(dim, series_matrix(dim, std::vector<truncated_series>(dim)));
    for (std::size_t tau = 0; tau < dim; ++tau) {
        for (std::size_t mu = 0; mu < dim; ++mu) {
            for (std::size_t nu = mu; nu < dim; ++nu) {
                truncated_series acc(theta.vars(), work);
                for (std::size_t r = 0; r < dim; ++r) {
                    acc = acc + second(r, mu, nu) * cof[r][tau];
                }
                s[tau][mu][nu] = acc;
                s[tau][nu][mu] = std::move(acc);
            }
        }
    }

    u_table u{n, std::vector<truncated_series>(nv * nv * nv * nv)};
    for (std::size_t a = 0; a < nv; ++a) {
        for (std::size_t b = a; b < nv; ++b) {
            // Braces {Delta Theta_{z_a z_b mu nu} - sum_tau S^tau_{mu nu} Theta_{z_a z_b tau}}.
            series_matrix brace(dim, std::vector<truncated_series>(dim));
            for (std::size_t mu = 0; mu < dim; ++mu) {
                for (std::size_t nu = mu; nu < dim; ++nu) {
                    auto acc = out.delta * t({a, b, tbar(mu), tbar(nu)});
                    for (std::size_t tau = 0; tau < dim; ++tau) {
                        acc = acc - s[tau][mu][nu] * t({a, b, tbar(tau)});
                    }
                    brace[mu][nu] = acc;
                    brace[nu][mu] = std::move(acc);
                }
            }
            // V[l][nu] = sum_mu M^mu_l brace[mu][nu], with M^mu_l = cof[1+l][mu].
            series_matrix v(nv, std::vector<truncated_series>(dim));
            for (std::size_t l = 0; l < nv; ++l) {
                for (std::size_t nu = 0; nu < dim; ++nu) {
                    truncated_series acc(theta.vars(), work);
                    for (std::size_t mu = 0; mu < dim; ++mu) {
                        acc = acc + cof[l + 1][mu] * brace[mu][nu];
                    }
                    v[l][nu] = std::move(acc);
                }
            }
            for (std::size_t l1 = 0; l1 < nv; ++l1) {
                for (std::size_t l2 = l1; l2 < nv; ++l2) {
                    truncated_series acc(theta.vars(), work);
                    for (std::size_t nu = 0; nu < dim; ++nu) {
                        acc = acc + cof[l2 + 1][nu] * v[l1][nu];
                    }
                    const int ia = static_cast<int>(a), ib = static_cast<int>(b);
                    const int j1 = static_cast<int>(l1), j2 = static_cast<int>(l2);
                    u.at(ia, ib, j1, j2) = acc;
                    u.at(ib, ia, j1, j2) = acc;
                    u.at(ia, ib, j2, j1) = acc;
                    u.at(ib, ia, j2, j1) = std::move(acc);
                }
            }
        }
    }
    out.cleared = trace_free_combination(u);
    return out;
}

bool all_exact_zero(const std::vector<obstruction_component> &cs)
{
    return std::all_of(cs.begin(), cs.end(), [](const auto &c) { return c.series.exact() && c.series.is_zero(); });
}

void divide_by_delta_power(std::vector<obstruction_component> &cs, const truncated_series &delta, int power)
{
    const auto inv = pow(invert(delta), power);
    for (auto &c : cs) {
        c.series = c.series * inv;
    }
}

} // namespace

int cleared_degree_bound(int n, int d)
{
    if (n == 1) {
        return std::max(0, 11 * d - 19);
    }
    return std::max(0, (3 * n + 2) * d - (6 * n + 3));
}

verdict decide(const std::vector<obstruction_component> &components, int certified_order)
{
    verdict v;
    bool found = false;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto &terms = components[i].series.terms();
        if (terms.empty() || terms.front().first.total_degree() > certified_order) {
            continue;
        }
        if (!found || terms.front().first < v.degree) {
            found = true;
            v.kind = verdict_kind::nonzero_at;
            v.component = i;
            v.degree = terms.front().first;
            v.coefficient = terms.front().second;
        }
    }
    if (!found) {
        v.kind = verdict_kind::vanishes_to_order;
        v.order = certified_order;
    }
    return v;
}

truncated_series levi_minor(const complex_graph &g, const minor_spec &spec)
{
    const int n = g.n();
    const auto dim = static_cast<std::size_t>(n + 1);
    auto in_range = [n](int x) { return x >= 0 && x <= n; };
    if (!in_range(spec.replaced_column) || !in_range(spec.row) || !in_range(spec.mu) || !in_range(spec.nu)) {
        throw error(errc::invalid_argument, "minor index out of range");
    }
    auto m = levi_matrix(g).matrix;
    const auto col = static_cast<std::size_t>(spec.replaced_column);
    const int order = m[dim - 1][0].order();
    for (std::size_t r = 0; r < dim; ++r) {
        if (spec.replacement == minor_spec::kind::unit_column) {
            m[r][col] = truncated_series::constant(g.theta().vars(), order,
                                                   gaussian_rational(r == static_cast<std::size_t>(spec.row) ? 1 : 0));
        } else {
            auto d = diff(diff(g.theta(), g.tbar(spec.mu)), g.tbar(spec.nu));
            m[r][col] = r == 0 ? d : diff(d, complex_graph::z(static_cast<int>(r) - 1));
        }
    }
    return series_determinant(m);
}

truncated_series aj4(const complex_graph &g)
{
    require_n1(g);
    require_nondegenerate(g);
    const auto parts = c2_core(g.theta(), false);
    return parts.p * pow(invert(parts.delta), 3);
}

truncated_series d_apply(const complex_graph &g, const truncated_series &s)
{
    require_n1(g);
    if (!same_variables(s, g.theta())) {
        throw error(errc::variable_mismatch, "D acts on series in (z, zeta, omega)");
    }
    require_nondegenerate(g);
    const auto a = diff(g.theta(), ZETA);
    const auto b = diff(g.theta(), OMEGA);
    const auto delta = a * diff(diff(g.theta(), Z), OMEGA) - b * diff(diff(g.theta(), Z), ZETA);
    return (a * diff(s, OMEGA) - b * diff(s, ZETA)) * invert(delta);
}

truncated_series numerator_c2(const complex_graph &g)
{
    require_n1(g);
    if (auto poly = polynomial_theta(g, 6)) {
        return c2_core(*poly, true).r;
    }
    return c2_core(g.theta(), true).r;
}

obstruction_report sphericity_obstruction_c2(const complex_graph &g)
{
    require_n1(g);
    require_nondegenerate(g);
    obstruction_report rep;
    rep.n = 1;
    rep.levi_nondegenerate = true;
    rep.certified_order = g.order() - 6;
    if (rep.certified_order < 0) {
        throw error(errc::order_out_of_range, "the C^2 obstruction needs order at least 6");
    }
    const auto parts = c2_core(g.theta(), true);
    rep.components.push_back({"D(D(AJ4))", {}, parts.r * pow(invert(parts.delta), 7)});
    rep.result = decide(rep.components, rep.certified_order);
    if (rep.result.kind == verdict_kind::vanishes_to_order) {
        if (auto poly = polynomial_theta(g, 6)) {
            const auto r = c2_core(*poly, true).r;
            rep.certified_identical = r.exact() && r.is_zero();
        }
    }
    return rep;
}

std::vector<obstruction_component> cleared_family_cn(const complex_graph &g)
{
    if (g.n() < 2) {
        throw error(errc::wrong_dimension, "the C^{n+1} formula needs n >= 2");
    }
    if (auto poly = polynomial_theta(g, 4)) {
        return cn_core(*poly, g.n(), poly->order() - 4).cleared;
    }
    return cn_core(g.theta(), g.n(), g.order() - 4).cleared;
}

std::vector<obstruction_component> cleared_family(const complex_graph &g)
{
    if (g.n() == 1) {
        return {{"numerator", {}, numerator_c2(g)}};
    }
    return cleared_family_cn(g);
}

obstruction_report theta_obstruction_cn(const complex_graph &g)
{
    if (g.n() < 2) {
        throw error(errc::wrong_dimension, "the C^{n+1} formula needs n >= 2; use the C^2 path");
    }
    require_nondegenerate(g);
    obstruction_report rep;
    rep.n = g.n();
    rep.levi_nondegenerate = true;
    rep.certified_order = g.order() - 4;
    if (rep.certified_order < 0) {
        throw error(errc::order_out_of_range, "the C^{n+1} obstruction needs order at least 4");
    }
    auto parts = cn_core(g.theta(), g.n(), rep.certified_order);
    rep.components = std::move(parts.cleared);
    divide_by_delta_power(rep.components, parts.delta, 3);
    rep.result = decide(rep.components, rep.certified_order);
    if (rep.result.kind == verdict_kind::vanishes_to_order) {
        if (auto poly = polynomial_theta(g, 4)) {
            rep.certified_identical = all_exact_zero(cn_core(*poly, g.n(), poly->order() - 4).cleared);
        }
    }
    return rep;
}

obstruction_report hachtroudi_flatness(const pde_system &sys)
{
    const int n = sys.n;
    const auto nv = static_cast<std::size_t>(n);
    if (n < 1 || sys.phi.size() != nv) {
        throw error(errc::wrong_dimension, "malformed PDE system");
    }
    obstruction_report rep;
    rep.n = n;
    rep.levi_nondegenerate = true;
    rep.notes.emplace_back("complete integrability of the system is not verified");
    const auto &f = sys.phi[0][0];
    auto p = [nv](std::size_t l) { return nv + 1 + l; };

    if (n == 1) {
        // The trace-corrected combination vanishes identically for a single
        // equation; flatness of y'' = F(x, y, y') is decided by the two
        // relative invariants of Tresse instead.
        rep.notes.emplace_back("n = 1: Tresse relative invariants I1, I2");
        constexpr std::size_t X = 0, Y = 1, P = 2;
        rep.certified_order = f.order() - 4;
        if (rep.certified_order < 0) {
            throw error(errc::order_out_of_range, "flatness of a single equation needs order at least 4");
        }
        const gaussian_rational p0 = sys.p_shift.empty() ? gaussian_rational() : sys.p_shift[0];
        const auto fp = diff(f, P);
        const auto fpp = diff(fp, P);
        const auto fy = diff(f, Y);
        const auto fyp = diff(fy, P);
        const auto slope = add_constant(truncated_series::variable(f.vars(), f.order(), P), p0);
        auto total = [&](const truncated_series &s) { return diff(s, X) + slope * diff(s, Y) + f * diff(s, P); };
        const auto dfpp = total(fpp);
        auto i2 = total(dfpp) - scale(total(fyp), gaussian_rational(4)) - fp * dfpp +
                  scale(diff(fy, Y), gaussian_rational(6)) - scale(fy * fpp, gaussian_rational(3)) +
                  scale(fp * fyp, gaussian_rational(4));
        rep.components.push_back({"I1", {}, diff(fpp, std::vector<std::size_t>{P, P})});
        rep.components.push_back({"I2", {}, std::move(i2)});
        rep.result = decide(rep.components, rep.certified_order);
        return rep;
    }

    rep.certified_order = f.order() - 2;
    if (rep.certified_order < 0) {
        throw error(errc::order_out_of_range, "flatness needs order at least 2");
    }
    u_table u{n, std::vector<truncated_series>(nv * nv * nv * nv)};
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const auto &phi = sys.phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            for (int l1 = 0; l1 < n; ++l1) {
                const auto d1 = diff(phi, p(static_cast<std::size_t>(l1)));
                for (int l2 = 0; l2 < n; ++l2) {
                    u.at(a, b, l1, l2) = diff(d1, p(static_cast<std::size_t>(l2)));
                }
            }
        }
    }
    rep.components = trace_free_combination(u);
    rep.result = decide(rep.components, rep.certified_order);
    return rep;
}

obstruction_report pseudospherical_verdict(const complex_graph &g, const surface_point &p, int order)
{
    if (order < 0 || order > max_exponent) {
        throw error(errc::order_out_of_range, "order outside [0, 255]");
    }
    truncated_series theta;
    if (g.exact()) {
        theta = with_order(g.theta(), order);
    } else {
        if (order > g.order()) {
            throw error(errc::order_out_of_range, "requested order exceeds the order of the jet-only input");
        }
        theta = truncate(g.theta(), order);
    }
    const auto working = complex_graph::unnormalized(g.n(), std::move(theta));
    const auto centred = recenter(working, p);
    const auto origin = origin_of(centred);
    if (levi_det_at(centred, origin).is_zero()) {
        obstruction_report rep;
        rep.n = g.n();
        rep.certified_order = order - (g.n() == 1 ? 6 : 4);
        rep.result.kind = verdict_kind::not_applicable_levi_degenerate;
        rep.notes.emplace_back("Levi form is degenerate at the point; the criterion does not apply");
        return rep;
    }
    auto rep = g.n() == 1 ? sphericity_obstruction_c2(centred) : theta_obstruction_cn(centred);
    rep.signature = signature_at(centred, origin);
    return rep;
}

namespace
{

bool transport_holds(const complex_graph &g, const std::vector<obstruction_component> &family,
                     const surface_point &x)
{
    const auto here = cleared_family(recenter(g, x));
    const auto coords = theta_coordinates(x);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto moved = translate(family[i].series, coords);
        const auto &other = here[i].series;
        if (moved.exact() && other.exact()) {
            if (moved.terms() != other.terms()) {
                return false;
            }
            continue;
        }
        const int c = std::min(moved.order(), other.order());
        if (truncate(moved, c) != truncate(other, c)) {
            return false;
        }
    }
    return true;
}

} // namespace

propagation_result propagate_check(const complex_graph &g, const surface_point &p, const surface_point &q, int order)
{
    if (!g.exact()) {
        throw error(errc::jet_only_input, "propagation needs a polynomial graph");
    }
    const auto working = complex_graph::unnormalized(g.n(), with_order(g.theta(), order));
    for (const auto *x : {&p, &q}) {
        // Validates the point as a side effect.
        if (!is_levi_nondegenerate(working, make_surface_point(working, x->z, x->w))) {
            throw error(errc::levi_degenerate, "propagation needs Levi nondegenerate end points");
        }
    }
    propagation_result out;
    const auto family = cleared_family(working);
    out.numerator_identically_zero = all_exact_zero(family);
    out.transport_p = transport_holds(working, family, p);
    out.transport_q = transport_holds(working, family, q);
    out.at_p = pseudospherical_verdict(working, p, order);
    out.at_q = pseudospherical_verdict(working, q, order);
    out.verdicts_agree = out.at_p.result.kind == out.at_q.result.kind;
    return out;
}

truncated_series pull_back(const complex_graph &g, const pde_system &sys, const truncated_series &s)
{
    const auto nv = static_cast<std::size_t>(g.n());
    if (sys.n != g.n() || s.nvars() != 2 * nv + 1) {
        throw error(errc::variable_mismatch, "series is not over the jet variables of this graph");
    }
    const auto &vars = g.theta().vars();
    std::vector<truncated_series> subs;
    for (std::size_t k = 0; k < nv; ++k) {
        subs.push_back(truncated_series::variable(vars, g.order(), k));
    }
    subs.push_back(g.theta());
    for (std::size_t k = 0; k < nv; ++k) {
        subs.push_back(add_constant(diff(g.theta(), k), -sys.p_shift[k]));
    }
    return compose(s, subs);
}

} // namespace levijet
