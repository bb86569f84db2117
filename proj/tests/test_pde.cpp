#include <doctest.h>

#include <random>

#include <levijet/curvature.hpp>
#include <levijet/error.hpp>
#include <levijet/pde_assoc.hpp>

#include "fixtures.hpp"
#include "oracle/elimination_oracle.hpp"

using namespace levijet;

namespace
{

using gr = gaussian_rational;

void check_against_oracle(const complex_graph &g)
{
    const auto sys = associate_system(g);
    const auto ref = oracle::eliminate(g);
    REQUIRE(sys.phi.size() == ref.size());
    for (std::size_t a = 0; a < ref.size(); ++a) {
        for (std::size_t b = 0; b < ref.size(); ++b) {
            CHECK(sys.phi[a][b] == ref[a][b]);
            CHECK(sys.phi[a][b] == sys.phi[b][a]);
        }
    }
}

} // namespace

TEST_CASE("quadrics give the flat system")
{
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k <= n / 2; ++k) {
            const auto sys = associate_system(heisenberg(n, k, 8));
            CHECK(sys.n == n);
            for (const auto &row : sys.phi) {
                for (const auto &e : row) {
                    CHECK(e.is_zero());
                    CHECK(e.order() == 6);
                }
            }
            CHECK(*sys.phi[0][0].vars() == *jet_variables(n));
        }
    }
}

TEST_CASE("system matches the chord-iteration elimination")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        check_against_oracle(complexify(fixtures::perturbed_quadric(1, 0, 8, 4, 3, rng)));
    }
    for (int trial = 0; trial < 2; ++trial) {
        check_against_oracle(complexify(fixtures::perturbed_quadric(2, trial, 6, 4, 3, rng)));
    }
    // u-dependent, n = 1
    const int N = 7;
    auto v = [&](std::size_t i) { return truncated_series::variable(real_variables(1), N, i); };
    check_against_oracle(complexify(real_graph(1, v(0) * v(0) + v(1) * v(1) + v(0) * v(2) * v(1))));
}

TEST_CASE("the system holds on the graph")
{
    std::mt19937 rng(5);
    for (int n = 1; n <= 2; ++n) {
        const auto g = complexify(fixtures::perturbed_quadric(n, 0, 7, 4, 4, rng));
        const auto sys = associate_system(g);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const auto lhs = pull_back(g, sys, sys.phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                const auto rhs = diff(diff(g.theta(), g.z(a)), g.z(b));
                CHECK(lhs == truncate(rhs, lhs.order()));
            }
        }
    }
}

TEST_CASE("recentred graphs carry the jet shift")
{
    std::mt19937 rng(8);
    const auto rg = fixtures::perturbed_quadric(1, 0, 10, 3, 3, rng);
    const auto g = complexify(rg);
    const auto p = fixtures::random_point(rg, rng);
    const auto h = recenter(g, p);
    const auto sys = associate_system(h);
    CHECK(sys.p_shift[0] == diff(h.theta(), 0).constant_term());
    check_against_oracle(h);
}

TEST_CASE("degenerate origin is rejected")
{
    const int N = 6;
    auto x = truncated_series::variable(real_variables(1), N, 0);
    const auto g = complexify(real_graph(1, x * x * x));
    try {
        associate_system(g);
        FAIL("expected levi_degenerate");
    } catch (const error &e) {
        CHECK(e.code() == errc::levi_degenerate);
    }
}

TEST_CASE("quartic sphere perturbation matches the elimination oracle")
{
    const int N = 9;
    auto c = [&](std::size_t i) { return truncated_series::variable(complex_variables(1), N, i); };
    const complex_graph g(1, c(2) + scale(c(0) * c(1) + c(0) * c(0) * c(1) * c(1), gr(0, 2)));
    check_against_oracle(g);
    CHECK(!associate_system(g).phi[0][0].is_zero());
}
