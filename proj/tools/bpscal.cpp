#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <bpscal/commands.hpp>

using namespace bpscal;

namespace {

Point parse_csv(const std::string& text, const std::string& flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw Error(ErrorKind::InvalidArgument, flag + ": '" + item + "' is not a number");
        v.push_back(x);
    }
    if (v.empty()) throw Error(ErrorKind::InvalidArgument, flag + " is empty");
    return Point(std::move(v));
}

struct Flags {
    std::string problem;
    std::string out;
    std::string format = "json";
    std::string xstar, a, k;
    std::optional<double> alpha;
    std::optional<std::string> xbar;
    io::CommandArgs args;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Flags& f) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--problem", f.problem, "problem file (JSON)")->required();
    sub->add_option("--seed", f.args.seed, "sampling seed");
    sub->add_option("--out", f.out, "write the report here instead of stdout");
    sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    return sub;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bishop-Phelps conic scalarization toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto pair_flags = [&](CLI::App* s) {
        s->add_option("--xstar", f.xstar, "x* as comma-separated values");
        s->add_option("--alpha", f.alpha, "alpha >= 0");
    };

    CLI::App* scalar = add_command(app, "solve-scalar", "solve a scalarized problem over the labels", f);
    scalar->add_option("--phi", f.args.phi, "scalarizer")->check(CLI::IsMember({"seminorm-linear", "gerstewitz"}));
    pair_flags(scalar);
    scalar->add_option("--a", f.a, "shift a");
    scalar->add_option("--k", f.k, "direction k for the Gerstewitz functional");

    CLI::App* vec = add_command(app, "solve-vector", "brute-force solution set", f);
    vec->add_option("--concept", f.args.concept_, "solution concept")
        ->check(CLI::IsMember({"eff", "weff", "peff-a", "peff-henig"}));

    CLI::App* cone = add_command(app, "check-cone", "augmented dual cone membership of (x*, alpha)", f);
    pair_flags(cone);

    CLI::App* sep = add_command(app, "separate", "separate A(xbar) from -K by a Bishop-Phelps cone", f);
    sep->add_option("--xbar", f.xbar, "label of xbar (default: first label)");
    sep->add_flag("--weak", f.args.weak, "look for a weak separating pair");

    CLI::App* ver = add_command(app, "verify-theorems", "run a scalarization theorem pipeline", f);
    ver->add_option("--theorem", f.args.theorem, "pipeline")->check(CLI::IsMember({"weff", "peff", "henig1", "henig2"}));
    ver->add_option("--xbar", f.xbar, "label of xbar (default: every efficient label)");

    CLI::App* rep = add_command(app, "report", "solution sets and plot data", f);
    pair_flags(rep);
    rep->add_option("--a", f.a, "shift a");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        if (rc == 0) return 0;
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return io::ExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        if (!f.xstar.empty()) f.args.xstar = parse_csv(f.xstar, "--xstar");
        if (!f.a.empty()) f.args.a = parse_csv(f.a, "--a");
        if (!f.k.empty()) f.args.k = parse_csv(f.k, "--k");
        f.args.alpha = f.alpha;
        f.args.xbar = f.xbar;

        VOProblem p = io::load_problem(f.problem);
        io::CommandResult res = io::run_command(chosen->get_name(), p, f.args);
        const std::string text = io::render(res.report, f.format);
        if (f.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(f.out, std::ios::binary);
            if (!os) throw Error(ErrorKind::IoError, "cannot write '" + f.out + "'");
            os << text;
        }
        if (res.exit_code != io::ExitOk) std::cerr << "bpscal: " << res.report.status << "\n";
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "bpscal: " << e.what() << "\n";
    }
    return io::ExitUsage;
}
