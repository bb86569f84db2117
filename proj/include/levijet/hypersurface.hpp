#ifndef LEVIJET_HYPERSURFACE_HPP
#define LEVIJET_HYPERSURFACE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <levijet/gaussian_rational.hpp>
#include <levijet/series.hpp>

namespace levijet
{

// x1..xn, y1..yn, u
variable_list real_variables(int n);
// z1..zn, zeta1..zetan, omega
variable_list complex_variables(int n);

// v = psi(x, y, u) with psi real and vanishing to second order.
class real_graph
{
public:
    real_graph(int n, truncated_series psi);

    int n() const
    {
        return n_;
    }
    const truncated_series &psi() const
    {
        return psi_;
    }
    bool exact() const
    {
        return psi_.exact();
    }

private:
    int n_;
    truncated_series psi_;
};

// w = Theta(z, zeta, omega), zeta and omega standing for the conjugates
// of z and w treated as independent variables.
class complex_graph
{
public:
    // Checks Theta = omega + O(2).
    complex_graph(int n, truncated_series theta);
    // Only checks Theta(0) = 0; recentred graphs need not be normalized.
    static complex_graph unnormalized(int n, truncated_series theta);

    int n() const
    {
        return n_;
    }
    const truncated_series &theta() const
    {
        return theta_;
    }
    bool exact() const
    {
        return theta_.exact();
    }
    int order() const
    {
        return theta_.order();
    }

    static std::size_t z(int k)
    {
        return static_cast<std::size_t>(k);
    }
    std::size_t zeta(int k) const
    {
        return static_cast<std::size_t>(n_ + k);
    }
    std::size_t omega() const
    {
        return static_cast<std::size_t>(2 * n_);
    }
    // Index of the conjugate variable t_mu: zeta_mu for mu < n, omega for mu = n.
    std::size_t tbar(int mu) const
    {
        return static_cast<std::size_t>(n_ + mu);
    }

private:
    complex_graph(int n, truncated_series theta, bool check_normalized);

    int n_ = 0;
    truncated_series theta_;
};

// Heisenberg pseudo-sphere w = conj(w) + 2i(-z1 zeta1 - ... - zk zetak + ...).
complex_graph heisenberg(int n, int k, int order);

struct surface_point {
    std::vector<gaussian_rational> z;
    gaussian_rational w;

    bool is_origin() const;
};

// Validates w = Theta(z, conj z, conj w); throws error(point_not_on_surface).
surface_point make_surface_point(const complex_graph &g, std::vector<gaussian_rational> z, gaussian_rational w);
// The point of M over (x + iy, u), exact for polynomial psi.
surface_point lift_point(const real_graph &g, const std::vector<gaussian_rational> &z, const gaussian_rational &u);

// (z_p, conj z_p, conj w_p): the point in the variables of Theta.
std::vector<gaussian_rational> theta_coordinates(const surface_point &p);

complex_graph complexify(const real_graph &g);

// conj-coefficient Theta with z and zeta exchanged; the omega slot then
// plays the role of w.
truncated_series swap_conjugate(const complex_graph &g);
// Theta(z, zeta, swap_conjugate(Theta)(z, zeta, w)) - w; zero for real graphs.
truncated_series reality_residual(const complex_graph &g);
// Throws error(reality_check_failed) if the residual is nonzero.
void check_reality(const complex_graph &g);

complex_graph recenter(const complex_graph &g, const surface_point &p);

struct levi_data {
    std::vector<std::vector<truncated_series>> matrix;
    truncated_series det;
};

levi_data levi_matrix(const complex_graph &g);
// Levi matrix evaluated at p (exactly).
std::vector<std::vector<gaussian_rational>> levi_matrix_at(const complex_graph &g, const surface_point &p);
gaussian_rational levi_det_at(const complex_graph &g, const surface_point &p);
bool is_levi_nondegenerate(const complex_graph &g, const surface_point &p);

// (min, max) of the negative and positive inertia of the Levi form at p.
std::pair<int, int> signature_at(const complex_graph &g, const surface_point &p);

// Determinant of a small square matrix of series (exact expansion).
truncated_series series_determinant(const std::vector<std::vector<truncated_series>> &m);
gaussian_rational determinant(std::vector<std::vector<gaussian_rational>> m);

// Floating-point sampling of |Delta| on M; advisory only.
struct sample_grid {
    double lo = -1.0;
    double hi = 1.0;
    int steps = 5;
};

struct locus_sample {
    std::vector<double> x, y;
    double u = 0.0;
    double v = 0.0;
    double abs_delta = 0.0;
    bool flagged = false;
};

std::vector<locus_sample> levi_locus_sample(const complex_graph &g, const sample_grid &grid, double tol);

} // namespace levijet

#endif
