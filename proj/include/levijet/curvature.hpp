#ifndef LEVIJET_CURVATURE_HPP
#define LEVIJET_CURVATURE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <levijet/hypersurface.hpp>
#include <levijet/pde_assoc.hpp>
#include <levijet/series.hpp>

namespace levijet
{

enum class verdict_kind {
    vanishes_to_order,
    nonzero_at,
    not_applicable_levi_degenerate,
};

struct verdict {
    verdict_kind kind = verdict_kind::not_applicable_levi_degenerate;
    // vanishes_to_order: every coefficient of total degree <= order is zero.
    int order = -1;
    // nonzero_at: graded-lex minimal nonzero multidegree over all
    // components, ties going to the lowest component position.
    std::size_t component = 0;
    multidegree degree;
    gaussian_rational coefficient;
};

struct obstruction_component {
    // "(k1,k2,l1,l2)" with 1-based indices, or a name such as "I1".
    std::string label;
    std::vector<int> index;
    truncated_series series;
};

struct obstruction_report {
    int n = 0;
    std::vector<obstruction_component> components;
    int certified_order = -1;
    bool levi_nondegenerate = false;
    std::optional<std::pair<int, int>> signature;
    verdict result;
    // Set only for exact inputs whose cleared numerator was computed as a
    // complete polynomial and found to be zero.
    bool certified_identical = false;
    std::vector<std::string> notes;
};

verdict decide(const std::vector<obstruction_component> &components, int certified_order);

// Levi matrix with one column replaced. Columns and rows are 0-based:
// column mu < n is zeta_{mu+1}, column n is omega; row 0 is Theta and
// row 1+l is Theta_{z_{l+1}}.
struct minor_spec {
    enum class kind { unit_column, second_derivative_column };

    int replaced_column = 0;
    kind replacement = kind::unit_column;
    // unit_column: the 1 sits in row `row`.
    int row = 0;
    // second_derivative_column: d^2/dtbar_mu dtbar_nu of the row generators.
    int mu = 0;
    int nu = 0;

    static minor_spec unit(int column, int row)
    {
        return {column, kind::unit_column, row, 0, 0};
    }
    static minor_spec second_derivative(int column, int mu, int nu)
    {
        return {column, kind::second_derivative_column, 0, mu, nu};
    }
};

truncated_series levi_minor(const complex_graph &g, const minor_spec &spec);

// C^2 formulas (n = 1).
truncated_series aj4(const complex_graph &g);
truncated_series d_apply(const complex_graph &g, const truncated_series &s);
obstruction_report sphericity_obstruction_c2(const complex_graph &g);
// Delta^7 D(D(AJ4)). For exact graphs the complete polynomial is returned
// (flagged exact); otherwise it is certified to order N - 6.
truncated_series numerator_c2(const complex_graph &g);

obstruction_report hachtroudi_flatness(const pde_system &s);

// C^{n+1} formula (n >= 2).
obstruction_report theta_obstruction_cn(const complex_graph &g);
// The Delta^3-cleared family; complete polynomials for exact graphs.
std::vector<obstruction_component> cleared_family_cn(const complex_graph &g);
// numerator_c2 for n = 1, cleared_family_cn otherwise.
std::vector<obstruction_component> cleared_family(const complex_graph &g);

// Upper bound on the total degree of the cleared numerator when Theta is a
// polynomial of total degree d.
int cleared_degree_bound(int n, int d);

obstruction_report pseudospherical_verdict(const complex_graph &g, const surface_point &p, int order);

struct propagation_result {
    obstruction_report at_p;
    obstruction_report at_q;
    bool transport_p = false;
    bool transport_q = false;
    bool numerator_identically_zero = false;
    bool verdicts_agree = false;
};

propagation_result propagate_check(const complex_graph &g, const surface_point &p, const surface_point &q,
                                   int order);

// s(z, Theta, Theta_z - p_shift): a function of (z, w, p) seen on the graph.
truncated_series pull_back(const complex_graph &g, const pde_system &sys, const truncated_series &s);

} // namespace levijet

#endif
