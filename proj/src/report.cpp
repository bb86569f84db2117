#include <levijet/report.hpp>

#include <chrono>
#include <sstream>

#include <levijet/error.hpp>
#include <levijet/expr.hpp>
#include <levijet/pde_assoc.hpp>

#ifndef LEVIJET_VERSION
#define LEVIJET_VERSION "0.0.0"
#endif

namespace levijet
{

using nlohmann::json;

namespace
{

json rational_to_json(const mpq_class &q)
{
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

mpq_class rational_from_json(const json &j)
{
    mpq_class q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
    q.canonicalize();
    return q;
}

std::string monomial_string(const multidegree &m, const variable_list &vars)
{
    std::string out;
    for (std::size_t v = 0; v < vars->size(); ++v) {
        if (const int e = m[v]; e > 0) {
            if (!out.empty()) {
                out += '*';
            }
            out += (*vars)[v];
            if (e > 1) {
                out += '^' + std::to_string(e);
            }
        }
    }
    return out.empty() ? "1" : out;
}

const char *kind_name(verdict_kind k)
{
    switch (k) {
        case verdict_kind::vanishes_to_order:
            return "VanishesToOrder";
        case verdict_kind::nonzero_at:
            return "NonzeroAt";
        case verdict_kind::not_applicable_levi_degenerate:
            return "NotApplicableLeviDegenerate";
    }
    return "";
}

json obstruction_to_json(const obstruction_report &rep, const variable_list &vars)
{
    json j;
    j["n"] = rep.n;
    j["certified_order"] = rep.certified_order;
    j["certified_identical"] = rep.certified_identical;
    j["levi_nondegenerate"] = rep.levi_nondegenerate;
    j["signature"] = rep.signature ? json::array({rep.signature->first, rep.signature->second}) : json(nullptr);
    j["notes"] = rep.notes;
    j["components"] = json::array();
    for (const auto &c : rep.components) {
        j["components"].push_back({{"label", c.label}, {"index", c.index}, {"series", series_to_json(c.series)}});
    }
    json v{{"kind", kind_name(rep.result.kind)}};
    if (rep.result.kind == verdict_kind::vanishes_to_order) {
        v["order"] = rep.result.order;
    } else if (rep.result.kind == verdict_kind::nonzero_at) {
        v["component"] = rep.components[rep.result.component].label;
        v["component_position"] = rep.result.component;
        v["multidegree"] = rep.result.degree.exponents(vars->size());
        v["monomial"] = monomial_string(rep.result.degree, vars);
        v["coefficient"] = coefficient_to_json(rep.result.coefficient);
    }
    j["verdict"] = v;
    return j;
}

json matrix_to_json(const std::vector<std::vector<gaussian_rational>> &m)
{
    json rows = json::array();
    for (const auto &row : m) {
        json r = json::array();
        for (const auto &c : row) {
            r.push_back(coefficient_to_json(c));
        }
        rows.push_back(r);
    }
    return rows;
}

surface_point read_point(const complex_graph &g, const std::string &text)
{
    auto coords = parse_coordinates(text);
    if (coords.size() != static_cast<std::size_t>(g.n() + 1)) {
        throw error(errc::wrong_dimension, "a point needs " + std::to_string(g.n() + 1) + " coordinates (z1, ..., zn, w)");
    }
    const auto w = coords.back();
    coords.pop_back();
    return make_surface_point(g, std::move(coords), w);
}

json point_to_json(const surface_point &p)
{
    json z = json::array();
    for (const auto &c : p.z) {
        z.push_back(coefficient_to_json(c));
    }
    return {{"z", z}, {"w", coefficient_to_json(p.w)}};
}

complex_graph working_graph(const complex_graph &g, int order)
{
    if (g.exact()) {
        return complex_graph::unnormalized(g.n(), with_order(g.theta(), order));
    }
    return g;
}

json error_json(const error &e)
{
    json j{{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
    if (const auto *pe = dynamic_cast<const parse_error *>(&e)) {
        j["position"] = pe->position();
    }
    return j;
}

std::string coefficient_text(const json &c)
{
    return coefficient_from_json(c).to_string();
}

} // namespace

json coefficient_to_json(const gaussian_rational &c)
{
    return {{"re", rational_to_json(c.re())}, {"im", rational_to_json(c.im())}};
}

gaussian_rational coefficient_from_json(const json &j)
{
    return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

json series_to_json(const truncated_series &s)
{
    json terms = json::array();
    for (const auto &[m, c] : s.terms()) {
        terms.push_back({{"exponents", m.exponents(s.nvars())}, {"coefficient", coefficient_to_json(c)}});
    }
    return {{"order", s.order()}, {"exact", s.exact()}, {"variables", *s.vars()}, {"terms", terms}};
}

run_result run(const run_options &opts)
{
    const auto start = std::chrono::steady_clock::now();
    run_result out;
    json &r = out.report;
    r["schema_version"] = report_schema_version;
    r["tool"] = {{"name", "levijet"}, {"version", LEVIJET_VERSION}};
    r["command"] = opts.command;
    try {
        if (opts.command != "check" && opts.command != "associate" && opts.command != "levi" &&
            opts.command != "signature" && opts.command != "propagate") {
            throw error(errc::invalid_argument, "unknown command '" + opts.command + "'");
        }
        const auto eq = parse_equation(opts.equation, opts.n);
        const auto g = build_graph(eq, opts.order, opts.jet);
        out.n = g.n();
        r["input"] = {{"equation", print_equation(eq)},
                      {"form", eq.form == equation_form::complex ? "complex" : "real"},
                      {"n", g.n()},
                      {"order", opts.order},
                      {"mode", opts.jet ? "jet" : "exact"},
                      {"theta", series_to_json(g.theta())}};

        std::vector<surface_point> points;
        for (const auto &text : opts.points) {
            points.push_back(read_point(g, text));
        }
        if (opts.command == "propagate") {
            if (points.size() != 2) {
                throw error(errc::invalid_argument, "propagate needs exactly two points");
            }
        } else if (points.size() > 1) {
            throw error(errc::invalid_argument, "only one point is accepted by '" + opts.command + "'");
        }
        if (points.empty()) {
            points.push_back({std::vector<gaussian_rational>(static_cast<std::size_t>(g.n())), gaussian_rational()});
        }
        r["input"]["points"] = json::array();
        for (const auto &p : points) {
            r["input"]["points"].push_back(point_to_json(p));
        }
        const auto &p = points.front();
        const auto vars = g.theta().vars();

        if (opts.command == "check") {
            const auto rep = pseudospherical_verdict(g, p, opts.order);
            r["obstruction"] = obstruction_to_json(rep, vars);
            r["verdict"] = r["obstruction"]["verdict"];
            r["levi"] = {{"nondegenerate", rep.result.kind != verdict_kind::not_applicable_levi_degenerate},
                         {"det_at_point", coefficient_to_json(levi_det_at(g, p))}};
            out.exit_code = rep.result.kind == verdict_kind::not_applicable_levi_degenerate ? 2 : 0;
        } else if (opts.command == "levi") {
            const auto w = working_graph(g, opts.order);
            r["levi"] = {{"det", series_to_json(levi_matrix(w).det)},
                         {"det_at_point", coefficient_to_json(levi_det_at(g, p))},
                         {"matrix_at_point", matrix_to_json(levi_matrix_at(g, p))},
                         {"nondegenerate", is_levi_nondegenerate(g, p)}};
            if (opts.grid) {
                out.locus = levi_locus_sample(g, *opts.grid, opts.tol);
                json flagged = json::array();
                for (const auto &s : out.locus) {
                    if (s.flagged) {
                        json pt = json::array();
                        for (double x : s.x) {
                            pt.push_back(x);
                        }
                        for (double y : s.y) {
                            pt.push_back(y);
                        }
                        pt.push_back(s.u);
                        pt.push_back(s.v);
                        flagged.push_back(pt);
                    }
                }
                r["levi"]["locus"] = {{"grid", {{"lo", opts.grid->lo}, {"hi", opts.grid->hi}, {"steps", opts.grid->steps}}},
                                      {"tol", opts.tol},
                                      {"samples", out.locus.size()},
                                      {"flagged", flagged}};
            }
        } else if (opts.command == "signature") {
            const bool nondeg = is_levi_nondegenerate(g, p);
            r["levi"] = {{"nondegenerate", nondeg}, {"det_at_point", coefficient_to_json(levi_det_at(g, p))}};
            if (nondeg) {
                const auto s = signature_at(g, p);
                r["signature"] = {s.first, s.second};
            } else {
                r["signature"] = nullptr;
                out.exit_code = 2;
            }
        } else if (opts.command == "associate") {
            auto w = working_graph(g, opts.order);
            if (!p.is_origin()) {
                w = recenter(w, p);
            }
            const auto sys = associate_system(w);
            json phi = json::array();
            for (int a = 0; a < sys.n; ++a) {
                for (int b = a; b < sys.n; ++b) {
                    phi.push_back({{"index", {a + 1, b + 1}},
                                   {"series", series_to_json(sys.phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])}});
                }
            }
            json shift = json::array();
            for (const auto &c : sys.p_shift) {
                shift.push_back(coefficient_to_json(c));
            }
            r["system"] = {{"n", sys.n}, {"phi", phi}, {"p_shift", shift}};
        } else {
            const auto res = propagate_check(g, points[0], points[1], opts.order);
            r["propagation"] = {{"transport_p", res.transport_p},
                                {"transport_q", res.transport_q},
                                {"numerator_identically_zero", res.numerator_identically_zero},
                                {"verdicts_agree", res.verdicts_agree},
                                {"at_p", obstruction_to_json(res.at_p, vars)},
                                {"at_q", obstruction_to_json(res.at_q, vars)}};
        }
    } catch (const error &e) {
        r["error"] = error_json(e);
        out.exit_code = e.code() == errc::levi_degenerate ? 2 : 1;
    } catch (const std::exception &e) {
        r["error"] = {{"code", "invalid_argument"}, {"message", e.what()}};
        out.exit_code = 1;
    }
    if (opts.timing) {
        r["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    }
    return out;
}

std::string render_json(const json &report)
{
    return report.dump(2) + "\n";
}

std::string render_text(const json &r)
{
    std::ostringstream os;
    auto verdict_line = [&](const json &ob) {
        const auto &v = ob.at("verdict");
        const auto kind = v.at("kind").get<std::string>();
        os << "verdict: " << kind;
        if (kind == "VanishesToOrder") {
            os << "(" << v.at("order").get<int>() << ")";
            if (ob.at("certified_identical").get<bool>()) {
                os << ", certified identical";
            }
        } else if (kind == "NonzeroAt") {
            os << " " << v.at("component").get<std::string>() << " at " << v.at("monomial").get<std::string>()
               << ", coefficient " << coefficient_text(v.at("coefficient"));
        }
        os << "\n";
        if (!ob.at("signature").is_null()) {
            os << "signature: (" << ob["signature"][0].get<int>() << ", " << ob["signature"][1].get<int>() << ")\n";
        }
        for (const auto &note : ob.at("notes")) {
            os << "note: " << note.get<std::string>() << "\n";
        }
    };
    os << "levijet " << r.at("command").get<std::string>();
    if (r.contains("input")) {
        const auto &in = r["input"];
        os << ": " << in.at("equation").get<std::string>() << "\n";
        os << "n = " << in.at("n").get<int>() << ", order " << in.at("order").get<int>() << ", "
           << in.at("mode").get<std::string>() << " input\n";
    } else {
        os << "\n";
    }
    if (r.contains("error")) {
        const auto &e = r["error"];
        os << "error [" << e.at("code").get<std::string>() << "]: " << e.at("message").get<std::string>() << "\n";
        return os.str();
    }
    if (r.contains("levi")) {
        const auto &l = r["levi"];
        os << "Levi determinant at point: " << coefficient_text(l.at("det_at_point"))
           << (l.at("nondegenerate").get<bool>() ? " (nondegenerate)" : " (degenerate)") << "\n";
        if (l.contains("det")) {
            os << "Levi determinant: " << l["det"].at("terms").size() << " terms through order "
               << l["det"].at("order").get<int>() << "\n";
        }
        if (l.contains("locus")) {
            os << "locus sample: " << l["locus"].at("flagged").size() << " of "
               << l["locus"].at("samples").get<std::size_t>() << " points flagged\n";
        }
    }
    if (r.contains("obstruction")) {
        verdict_line(r["obstruction"]);
    }
    if (r.contains("signature")) {
        if (r["signature"].is_null()) {
            os << "signature: undefined at a Levi-degenerate point\n";
        } else {
            os << "signature: (" << r["signature"][0].get<int>() << ", " << r["signature"][1].get<int>() << ")\n";
        }
    }
    if (r.contains("system")) {
        for (const auto &e : r["system"].at("phi")) {
            os << "Phi(" << e["index"][0].get<int>() << "," << e["index"][1].get<int>() << "): "
               << e["series"].at("terms").size() << " terms through order " << e["series"].at("order").get<int>()
               << "\n";
        }
    }
    if (r.contains("propagation")) {
        const auto &pr = r["propagation"];
        os << "numerator transport at p: " << (pr.at("transport_p").get<bool>() ? "holds" : "FAILS") << "\n";
        os << "numerator transport at q: " << (pr.at("transport_q").get<bool>() ? "holds" : "FAILS") << "\n";
        os << "numerator identically zero: " << (pr.at("numerator_identically_zero").get<bool>() ? "yes" : "no")
           << "\n";
        os << "at p: ";
        verdict_line(pr["at_p"]);
        os << "at q: ";
        verdict_line(pr["at_q"]);
        os << "verdicts agree: " << (pr.at("verdicts_agree").get<bool>() ? "yes" : "no") << "\n";
    }
    if (r.contains("timing")) {
        os << "time: " << r["timing"].at("seconds").get<double>() << " s\n";
    }
    return os.str();
}

void write_locus_csv(std::ostream &os, const std::vector<locus_sample> &samples, int n)
{
    for (int k = 1; k <= n; ++k) {
        os << "x" << k << ",";
    }
    for (int k = 1; k <= n; ++k) {
        os << "y" << k << ",";
    }
    os << "u,v,abs_delta,flagged\n";
    os.precision(17);
    for (const auto &s : samples) {
        for (double x : s.x) {
            os << x << ",";
        }
        for (double y : s.y) {
            os << y << ",";
        }
        os << s.u << "," << s.v << "," << s.abs_delta << "," << (s.flagged ? 1 : 0) << "\n";
    }
}

} // namespace levijet
