#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string>
#include <sys/wait.h>

#include <levijet/error.hpp>
#include <levijet/expr.hpp>
#include <levijet/report.hpp>

using namespace levijet;

namespace
{

using gr = gaussian_rational;

expr_ptr random_tree(std::mt19937 &rng, int depth)
{
    auto e = std::make_shared<expr_node>();
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    static const char *names[] = {"z1", "z2", "w", "x", "u"};
    switch (pick(rng)) {
        case 0:
            e->op = expr_node::kind::number;
            e->text = std::to_string(std::uniform_int_distribution<int>(0, 40)(rng));
            break;
        case 1:
            e->op = expr_node::kind::imaginary_unit;
            break;
        case 2:
            e->op = expr_node::kind::variable;
            e->text = names[std::uniform_int_distribution<int>(0, 4)(rng)];
            break;
        case 3:
            e->op = expr_node::kind::conj;
            e->args = {random_tree(rng, depth - 1)};
            break;
        case 4:
            e->op = expr_node::kind::neg;
            e->args = {random_tree(rng, depth - 1)};
            break;
        case 5:
            e->op = expr_node::kind::pow;
            e->exponent = std::uniform_int_distribution<int>(-2, 4)(rng);
            e->args = {random_tree(rng, depth - 1)};
            break;
        default: {
            static const expr_node::kind bin[] = {expr_node::kind::add, expr_node::kind::sub, expr_node::kind::mul,
                                                  expr_node::kind::div};
            e->op = bin[std::uniform_int_distribution<int>(0, 3)(rng)];
            e->args = {random_tree(rng, depth - 1), random_tree(rng, depth - 1)};
        }
    }
    return e;
}

std::size_t error_position(const std::string &text)
{
    try {
        parse_equation(text);
    } catch (const parse_error &e) {
        return e.position();
    }
    FAIL("no parse error for " << text);
    return 0;
}

errc error_code(const std::string &text, bool jet = false, int order = 10)
{
    try {
        build_graph(parse_equation(text), order, jet);
    } catch (const error &e) {
        return e.code();
    }
    FAIL("no error for " << text);
    return errc::invalid_argument;
}

// Every {"re", "im"} object must survive a parse/serialize round trip.
void check_coefficients(const nlohmann::json &j, int &count)
{
    if (j.is_object()) {
        if (j.contains("re") && j.contains("im")) {
            CHECK(coefficient_to_json(coefficient_from_json(j)) == j);
            ++count;
            return;
        }
        for (const auto &[k, v] : j.items()) {
            check_coefficients(v, count);
        }
    } else if (j.is_array()) {
        for (const auto &v : j) {
            check_coefficients(v, count);
        }
    }
}

run_options opts(std::string command, std::string equation, std::vector<std::string> points = {}, int order = 10)
{
    run_options o;
    o.command = std::move(command);
    o.equation = std::move(equation);
    o.points = std::move(points);
    o.order = order;
    return o;
}

int cli(const std::string &args)
{
    const std::string cmd = std::string(LEVIJET_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("printing round-trips")
{
    for (const char *s : {"conj(w) + 2*i*z*conj(z)", "-x^2", "(-x)^2", "a", "1 - (2 - 3)", "(1 - 2) - 3",
                          "z1*(-z2)", "-z1*z2", "-(z1*z2)", "2/3*z^2", "2/(3*z)", "conj(z)^-2", "((z))"}) {
        if (std::string(s) == "a") {
            CHECK_THROWS_AS(parse_expression(s), parse_error);
            continue;
        }
        const auto e = parse_expression(s);
        const auto printed = print_expression(*e);
        CHECK(same_tree(*e, *parse_expression(printed)));
        CHECK(print_expression(*parse_expression(printed)) == printed);
    }
    CHECK(print_expression(*parse_expression("  w+  2*i *z *conj( z )")) == "w + 2*i*z*conj(z)");
    CHECK(print_expression(*parse_expression("007")) == "7");

    std::mt19937 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const auto e = random_tree(rng, 5);
        const auto printed = print_expression(*e);
        const auto back = parse_expression(printed);
        CHECK_MESSAGE(same_tree(*e, *back), printed);
    }
}

TEST_CASE("syntax errors carry positions")
{
    CHECK(error_position("w = conj(w) + 2*i*z*conj(z") == 24);
    CHECK(error_position("w = conj(w) + (2*i*z*conj(z)") == 14);
    CHECK(error_position("w = conj(w) + ") == 14);
    CHECK(error_position("w = conj(w) $ z") == 12);
    CHECK(error_position("w = conj(w) + q") == 14);
    CHECK(error_position("w = z^x") == 6);
    CHECK(error_position("u = z") == 0);
    CHECK(error_position("w = conj(w) + x") == 14);
    CHECK(error_position("w = z = w") == 6);
    try {
        parse_equation("w = conj(w) + zeta");
        FAIL("expected an error");
    } catch (const parse_error &e) {
        CHECK(e.code() == errc::unknown_variable);
    }
}

TEST_CASE("equations build the expected graphs")
{
    const auto g = build_graph(parse_equation("w = conj(w) + 2*i*z*conj(z)"), 10, false);
    CHECK(g.n() == 1);
    CHECK(g.exact());
    const auto z = truncated_series::variable(complex_variables(1), 10, 0);
    const auto zeta = truncated_series::variable(complex_variables(1), 10, 1);
    const auto omega = truncated_series::variable(complex_variables(1), 10, 2);
    CHECK(g.theta() == omega + scale(z * zeta, gr(0, 2)));

    const auto g2 = build_graph(parse_equation("w = conj(w) + 2*i*(-z1*conj(z1) + z2*conj(z2))"), 10, false);
    CHECK(g2.n() == 2);
    CHECK(signature_at(g2, {{gr(), gr()}, gr()}) == std::pair<int, int>{1, 1});

    // real form equals the complex form
    const auto r = build_graph(parse_equation("v = x^2 + y^2 + (x^2 + y^2)^2"), 10, false);
    CHECK(r.theta() == omega + scale(z * zeta + z * z * zeta * zeta, gr(0, 2)));

    // polynomials of degree above the order keep every term
    const auto big = build_graph(parse_equation("v = x^2 + y^2 + x^7/5"), 4, false);
    CHECK(big.exact());
    CHECK(big.order() == 7);

    // --n pads the dimension
    CHECK(build_graph(parse_equation("w = conj(w) + 2*i*z1*conj(z1)", 2), 6, false).n() == 2);

    // jet mode
    const auto j = build_graph(parse_equation("v = x^2 + y^2 + x^3/(1 - u)"), 6, true);
    CHECK(!j.exact());
    CHECK(j.order() == 6);
}

TEST_CASE("input errors")
{
    CHECK(error_code("v = x^2 + y^2 + x^3/(1 - u)") == errc::non_polynomial);
    CHECK(error_code("v = x^2 + y^2 + x^-1") == errc::non_polynomial);
    CHECK(error_code("v = x^2 + y^2 + x^3/u", true) == errc::division_by_nonunit);
    CHECK(error_code("v = x^2 + y^2 + x/0") == errc::invalid_argument);
    CHECK(error_code("w = conj(w) + 2*z*conj(z)") == errc::reality_check_failed);
    CHECK(error_code("w = 2*conj(w) + 2*i*z*conj(z)") == errc::not_normalized);
    CHECK(error_code("w = conj(w) + w*z*conj(z)") == errc::invalid_argument);
    CHECK(error_code("v = i*x^2") == errc::not_real);
    CHECK(error_code("v = x^2 + y^2", false, 300) == errc::order_out_of_range);
    CHECK_THROWS_AS(parse_equation("w = conj(w) + 2*i*z*conj(z) + z2*conj(z2)"), error);
    CHECK_THROWS_AS(parse_equation("w = conj(w) + 2*i*z3*conj(z3)", 2), error);
    CHECK_THROWS_AS(parse_coordinates("1, , 2"), parse_error);
    CHECK_THROWS_AS(parse_coordinates("1, z"), parse_error);
    const auto c = parse_coordinates("1/2 + 3*i/4, conj(1 + i)^2, (2 - i)^-1");
    REQUIRE(c.size() == 3);
    CHECK(c[0] == gr(mpq_class(1, 2), mpq_class(3, 4)));
    CHECK(c[1] == gr(0, -2));
    CHECK(c[2] == gr(mpq_class(2, 5), mpq_class(1, 5)));
}

TEST_CASE("run reports and exit codes")
{
    const std::string sphere = "w = conj(w) + 2*i*z*conj(z)";
    auto r = run(opts("check", sphere));
    CHECK(r.exit_code == 0);
    CHECK(r.report["verdict"]["kind"] == "VanishesToOrder");
    CHECK(r.report["obstruction"]["certified_identical"] == true);

    r = run(opts("propagate", sphere, {"0, 0", "1, i"}));
    CHECK(r.exit_code == 0);
    CHECK(r.report["propagation"]["transport_p"] == true);
    CHECK(r.report["propagation"]["transport_q"] == true);
    CHECK(r.report["propagation"]["at_q"]["verdict"]["kind"] == "VanishesToOrder");

    r = run(opts("check", "w = conj(w) + 2*i*z^2*conj(z)^2"));
    CHECK(r.exit_code == 2);
    CHECK(r.report["verdict"]["kind"] == "NotApplicableLeviDegenerate");

    r = run(opts("check", "w = conj(w) + 2*i*z*conj(z"));
    CHECK(r.exit_code == 1);
    CHECK(r.report["error"]["code"] == "E_SYNTAX");
    CHECK(r.report["error"]["position"] == 24);

    r = run(opts("check", "v = x^2 + y^2 + (x^2 + y^2)^2", {}, 12));
    CHECK(r.exit_code == 0);
    REQUIRE(r.report["verdict"]["kind"] == "NonzeroAt");
    // the reported coefficient is the one computed in memory
    const auto g = build_graph(parse_equation("v = x^2 + y^2 + (x^2 + y^2)^2"), 12, false);
    const auto rep = pseudospherical_verdict(g, {{gr()}, gr()}, 12);
    CHECK(coefficient_from_json(r.report["verdict"]["coefficient"]) == rep.result.coefficient);

    CHECK(run(opts("signature", "w = conj(w) + 2*i*z^2*conj(z)^2")).exit_code == 2);
    CHECK(run(opts("associate", "w = conj(w) + 2*i*z^2*conj(z)^2")).exit_code == 2);
    CHECK(run(opts("levi", "w = conj(w) + 2*i*z^2*conj(z)^2")).exit_code == 0);
    CHECK(run(opts("propagate", sphere, {"0, 0"})).exit_code == 1);
    CHECK(run(opts("check", sphere, {"0, i"})).report["error"]["code"] == "E_POINT_NOT_ON_SURFACE");
    CHECK(run(opts("check", sphere, {"0"})).exit_code == 1);
    CHECK(run(opts("frobnicate", sphere)).exit_code == 1);

    auto jet = opts("check", "v = x^2 + y^2 + x^3/(1 - u)", {}, 8);
    jet.jet = true;
    r = run(jet);
    CHECK(r.exit_code == 0);
    CHECK(r.report["obstruction"]["certified_identical"] == false);
    jet.points = {"1, 2*i"};
    CHECK(run(jet).exit_code == 1);
}

TEST_CASE("reports are deterministic and exact")
{
    const std::vector<run_options> corpus{
        opts("check", "w = conj(w) + 2*i*z*conj(z)"),
        opts("check", "v = x^2 + y^2 + x^3*y + u*x^2", {}, 10),
        opts("check", "w = conj(w) + 2*i*(-z1*conj(z1) + z2*conj(z2)) + 2*i*(z1^2*conj(z1)*conj(z2) + conj(z1)^2*z1*z2)", {}, 8),
        opts("levi", "v = x^2 + y^2 + x^3", {"1, 1 + 2*i"}),
        opts("signature", "v = x1^2 + y1^2 - x2^2 - y2^2 + x1^3"),
        opts("associate", "v = x^2 + y^2 + x^3*y", {"1, i"}, 8),
        opts("propagate", "v = x^2 + y^2 + x^3", {"0, 0", "1/2, 1 + 3/8*i"}, 10),
    };
    for (const auto &o : corpus) {
        const auto a = run(o);
        const auto b = run(o);
        CHECK_MESSAGE(!a.report.contains("error"), a.report.dump());
        CHECK(render_json(a.report) == render_json(b.report));
        int count = 0;
        check_coefficients(a.report, count);
        CHECK(count > 0);
        CHECK(!render_text(a.report).empty());
    }
}

TEST_CASE("locus CSV")
{
    auto o = opts("levi", "v = x^2 + y^2 + x^3");
    o.grid = sample_grid{-1, 1, 4};
    const auto r = run(o);
    CHECK(r.locus.size() == 64);
    std::ostringstream os;
    write_locus_csv(os, r.locus, 1);
    const auto text = os.str();
    CHECK(text.rfind("x1,y1,u,v,abs_delta,flagged\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == 65);
}

TEST_CASE("command-line exit codes")
{
    CHECK(cli("check 'w = conj(w) + 2*i*z*conj(z)'") == 0);
    CHECK(cli("check 'w = conj(w) + 2*i*z^2*conj(z)^2'") == 2);
    CHECK(cli("check 'w = conj(w) + 2*i*z*conj(z'") == 1);
    CHECK(cli("check 'v = x^2 + y^2 + (x^2 + y^2)^2' --order 12 --format json") == 0);
    CHECK(cli("propagate 'w = conj(w) + 2*i*z*conj(z)' --point '0,0' --point '1,i'") == 0);
    CHECK(cli("check") == 1);
    CHECK(cli("check 'w = conj(w) + 2*i*z*conj(z)' --format xml") == 1);
    CHECK(cli("--help") == 0);
}
