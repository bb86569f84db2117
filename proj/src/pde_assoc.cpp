#include <levijet/pde_assoc.hpp>

#include <string>

#include <levijet/error.hpp>

namespace levijet
{

variable_list jet_variables(int n)
{
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) {
        names.push_back("z" + std::to_string(k));
    }
    names.emplace_back("w");
    for (int k = 1; k <= n; ++k) {
        names.push_back("p" + std::to_string(k));
    }
    return make_variables(std::move(names));
}

pde_system associate_system(const complex_graph &g)
{
    const int n = g.n();
    const auto nv = static_cast<std::size_t>(n);
    const surface_point origin{std::vector<gaussian_rational>(nv), gaussian_rational()};
    if (levi_det_at(g, origin).is_zero()) {
        throw error(errc::levi_degenerate, "Levi form is degenerate at the origin; no associated system");
    }
    if (g.order() < 2) {
        throw error(errc::order_out_of_range, "association needs order at least 2");
    }

    // Solve variables: z1..zn, w, p1..pn, zeta1..zetan, omega.
    std::vector<std::string> names(*jet_variables(n));
    for (int k = 1; k <= n; ++k) {
        names.push_back("zeta" + std::to_string(k));
    }
    names.emplace_back("omega");
    const auto svars = make_variables(std::move(names));
    std::vector<std::size_t> theta_slots;
    for (std::size_t k = 0; k < nv; ++k) {
        theta_slots.push_back(k);
    }
    for (std::size_t k = 0; k < nv; ++k) {
        theta_slots.push_back(2 * nv + 1 + k);
    }
    theta_slots.push_back(3 * nv + 1);

    const int order = g.order() - 1;
    const auto theta = embed(truncate(g.theta(), order), svars, theta_slots);
    pde_system out;
    out.n = n;
    std::vector<truncated_series> eqs{theta - truncated_series::variable(svars, order, nv)};
    for (std::size_t k = 0; k < nv; ++k) {
        const auto tz = diff(g.theta(), k);
        const auto shift = tz.constant_term();
        out.p_shift.push_back(shift);
        eqs.push_back(add_constant(embed(tz, svars, theta_slots), -shift) -
                      truncated_series::variable(svars, order, nv + 1 + k));
    }
    const auto sol = solve_implicit(eqs, 2 * nv + 1);

    std::vector<truncated_series> subs;
    for (std::size_t k = 0; k < nv; ++k) {
        subs.push_back(truncated_series::variable(sol[0].vars(), order, k));
    }
    for (const auto &s : sol) {
        subs.push_back(s);
    }
    out.phi.assign(nv, std::vector<truncated_series>(nv));
    for (std::size_t a = 0; a < nv; ++a) {
        const auto ta = diff(g.theta(), a);
        for (std::size_t b = a; b < nv; ++b) {
            auto phi = compose(diff(ta, b), subs);
            std::vector<truncated_series::term> terms = phi.terms();
            out.phi[a][b] = truncated_series::from_terms(jet_variables(n), phi.order(), std::move(terms), false);
            out.phi[b][a] = out.phi[a][b];
        }
    }
    return out;
}

} // namespace levijet
