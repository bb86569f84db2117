#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <levijet/report.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"Sphericity and Levi-form checks for real hypersurfaces given by a graphing equation"};
    app.require_subcommand(1);

    levijet::run_options opts;
    std::string format = "text";
    std::string locus_csv;
    std::vector<double> grid;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("equation", opts.equation, "\"w = ...\" (complex form) or \"v = ...\" (real form)")->required();
        sub->add_option("--order", opts.order, "truncation order")->capture_default_str();
        sub->add_option("--n", opts.n, "dimension n (inferred from the variables by default)");
        sub->add_flag("--jet", opts.jet, "treat the right-hand side as a jet of a series, not a polynomial");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        sub->add_flag("--timing", opts.timing, "include wall-clock time in the report");
    };

    auto *check = app.add_subcommand("check", "pseudosphericity verdict at a point");
    auto *associate = app.add_subcommand("associate", "second-order PDE system of the hypersurface");
    auto *levi = app.add_subcommand("levi", "Levi determinant, nondegeneracy and locus sample");
    auto *signature = app.add_subcommand("signature", "signature of the Levi form at a point");
    auto *propagate = app.add_subcommand("propagate", "numerator transport and verdicts at two points");
    for (auto *sub : {check, associate, levi, signature, propagate}) {
        add_common(sub);
    }
    for (auto *sub : {check, associate, levi, signature}) {
        sub->add_option("--point", opts.points, "\"z1, ..., zn, w\" with exact complex rational entries")
            ->allow_extra_args(false);
    }
    propagate->add_option("--point", opts.points, "two points, each \"z1, ..., zn, w\"")->allow_extra_args(false)->required();
    levi->add_option("--grid", grid, "lo hi steps for the locus sample")->expected(3);
    levi->add_option("--tol", opts.tol, "flag samples with |Delta| below this")->capture_default_str();
    levi->add_option("--locus-csv", locus_csv, "write the locus sample to this CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    opts.command = app.get_subcommands().front()->get_name();
    if (!grid.empty() || !locus_csv.empty()) {
        levijet::sample_grid g;
        if (!grid.empty()) {
            g.lo = grid[0];
            g.hi = grid[1];
            g.steps = static_cast<int>(grid[2]);
        }
        opts.grid = g;
    }

    const auto result = levijet::run(opts);
    std::cout << (format == "json" ? levijet::render_json(result.report) : levijet::render_text(result.report));
    if (!locus_csv.empty() && !result.report.contains("error")) {
        std::ofstream out(locus_csv);
        if (!out) {
            std::cerr << "cannot write " << locus_csv << "\n";
            return 1;
        }
        levijet::write_locus_csv(out, result.locus, result.n);
    }
    return result.exit_code;
}
