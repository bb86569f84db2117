#ifndef LEVIJET_PDE_ASSOC_HPP
#define LEVIJET_PDE_ASSOC_HPP

#include <vector>

#include <levijet/gaussian_rational.hpp>
#include <levijet/hypersurface.hpp>
#include <levijet/series.hpp>

namespace levijet
{

// z1..zn, w, p1..pn
variable_list jet_variables(int n);

// w_{z_k1 z_k2} = phi[k1][k2](z, w, p). The series variable p_k is the
// jet w_{z_k} minus p_shift[k], so that every entry is centred at 0.
struct pde_system {
    int n = 0;
    std::vector<std::vector<truncated_series>> phi;
    std::vector<gaussian_rational> p_shift;
};

// Solves w = Theta, w_{z_k} = Theta_{z_k} for (zeta, omega) and substitutes
// into Theta_{z_k1 z_k2}. Throws error(levi_degenerate) if Delta(0) = 0.
pde_system associate_system(const complex_graph &g);

} // namespace levijet

#endif
