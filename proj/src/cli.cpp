#include "nelab/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "nelab/polytope.hpp"
#include "nelab/properties.hpp"
#include "nelab/report.hpp"
#include "nelab/suite.hpp"

namespace nelab::cli {

namespace {

const std::set<std::string> kChecks = {"daugavet", "omega", "omega-group", "f-shape", "shift",
                                       "tsquare", "geom", "slice", "denting", "hull", "badproj",
                                       "dual", "spread", "scalar"};

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

std::vector<double> split_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw UsageError("bad number '" + tok + "' in list");
    }
    return out;
}

Scalar parse_unimodular(const std::string& text) {
    const Scalar w = parse_scalar(text);
    if (std::abs(std::abs(w) - 1.0) > 1e-9)
        throw UsageError("omega = '" + text + "' is not unimodular");
    return w;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NELAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("NELAB_SEED='") + env + "' is not an unsigned integer");
        }
    }
    return 42;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig c;
    c.seed = default_seed();

    CLI::App app{"nelab — norm-equality experiments on finite-dimensional normed spaces"};
    app.require_subcommand(1);

    std::string omega_s = format_scalar(c.omega), a_s = format_scalar(c.a),
                b_s = format_scalar(c.b), g0_s = format_scalar(c.g0),
                lambda_s = format_scalar(c.lambda);
    std::string t_grid_s = join_doubles(c.t_grid), eps_grid_s = join_doubles(c.eps_grid),
                scalar_grid_s = join_doubles(c.scalar_grid);
    std::string x_s, f_s, field_s = "real";

    CLI::App* check = app.add_subcommand("check", "run one property checker");
    check->add_option("name", c.check, "checker name")
        ->required()
        ->check(CLI::IsMember(kChecks, CLI::ignore_case));
    CLI::App* suite = app.add_subcommand("suite", "run the acceptance battery");

    for (CLI::App* cmd : {check, suite}) {
        cmd->add_option("--space", c.space_dsl, "space DSL, e.g. sum2(linf(2),linf(2))");
        cmd->add_option("--field", field_s, "scalar field: real | complex");
        cmd->add_option("--samples", c.samples, "random samples per sweep");
        cmd->add_option("--seed", c.seed, "random seed (NELAB_SEED overrides the default)");
        cmd->add_option("--tol", c.tolerance, "verdict tolerance");
        cmd->add_option("--parallel", c.parallel, "worker threads for sample sweeps");
        cmd->add_option("--out", c.out_path, "report path (default: stdout)");
        cmd->add_option("--format", c.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
    }
    check->add_option("--omega", omega_s, "unimodular scalar for omega/dual checks");
    check->add_option("--a", a_s, "identity coefficient (f-shape)");
    check->add_option("--b", b_s, "operator coefficient (f-shape)");
    check->add_option("--g0", g0_s, "shift scalar (shift fixture)");
    check->add_option("--g", c.g_dsl, "entire function DSL (spread/scalar)");
    check->add_option("--lambda", lambda_s, "scale for spread");
    check->add_option("--eps", c.eps, "epsilon for geom/hull");
    check->add_option("--alpha", c.alpha, "slice depth");
    check->add_option("--sign", c.sign, "pairing sign constraint for tsquare: 1 | -1");
    check->add_option("--budget", c.budget, "sample budget for geom search");
    check->add_option("--t-grid", t_grid_s, "comma-separated t values (fixtures)");
    check->add_option("--eps-grid", eps_grid_s, "comma-separated eps values (denting)");
    check->add_option("--scalar-grid", scalar_grid_s, "comma-separated grid (scalar check)");
    check->add_option("--x", x_s, "vector coordinates, comma-separated");
    check->add_option("--f", f_s, "functional coordinates, comma-separated");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    c.command = suite->parsed() ? "suite" : "check";
    c.field = parse_field(field_s);
    c.omega = parse_unimodular(omega_s);
    c.a = parse_scalar(a_s);
    c.b = parse_scalar(b_s);
    c.g0 = parse_scalar(g0_s);
    c.lambda = parse_scalar(lambda_s);
    c.t_grid = split_doubles(t_grid_s);
    c.eps_grid = split_doubles(eps_grid_s);
    c.scalar_grid = split_doubles(scalar_grid_s);
    c.x_coords = split_doubles(x_s);
    c.f_coords = split_doubles(f_s);

    if (c.command == "check") {
        SpaceDesc::parse(c.space_dsl, c.field);  // validate eagerly
        EntireFunction::parse(c.g_dsl);
        if (c.sign != 1 && c.sign != -1) throw UsageError("--sign must be 1 or -1");
    }
    if (c.samples < 0) throw UsageError("--samples must be >= 0");
    if (c.parallel < 1) throw UsageError("--parallel must be >= 1");
    return c;
}

std::vector<std::string> render(const RunConfig& c) {
    std::vector<std::string> args;
    auto push = [&](const std::string& k, const std::string& v) {
        args.push_back(k);
        args.push_back(v);
    };
    args.push_back(c.command);
    if (c.command == "check") args.push_back(c.check);
    push("--space", c.space_dsl);
    push("--field", to_string(c.field));
    push("--samples", std::to_string(c.samples));
    push("--seed", std::to_string(c.seed));
    {
        std::ostringstream os;
        os.precision(17);
        os << c.tolerance;
        push("--tol", os.str());
    }
    push("--parallel", std::to_string(c.parallel));
    if (!c.out_path.empty()) push("--out", c.out_path);
    push("--format", c.format);
    if (c.command == "check") {
        push("--omega", format_scalar(c.omega));
        push("--a", format_scalar(c.a));
        push("--b", format_scalar(c.b));
        push("--g0", format_scalar(c.g0));
        push("--g", c.g_dsl);
        push("--lambda", format_scalar(c.lambda));
        {
            std::ostringstream os;
            os.precision(17);
            os << c.eps;
            push("--eps", os.str());
        }
        {
            std::ostringstream os;
            os.precision(17);
            os << c.alpha;
            push("--alpha", os.str());
        }
        push("--sign", std::to_string(c.sign));
        push("--budget", std::to_string(c.budget));
        push("--t-grid", join_doubles(c.t_grid));
        push("--eps-grid", join_doubles(c.eps_grid));
        push("--scalar-grid", join_doubles(c.scalar_grid));
        if (!c.x_coords.empty()) push("--x", join_doubles(c.x_coords));
        if (!c.f_coords.empty()) push("--f", join_doubles(c.f_coords));
    }
    return args;
}

namespace {

CheckReport dispatch(const RunConfig& c) {
    const SpaceDesc space = SpaceDesc::parse(c.space_dsl, c.field);
    CheckParams p{c.samples, c.seed, c.tolerance, c.parallel};

    const Vector x = c.x_coords.empty() ? Vector::basis(space.dim(), 0)
                                        : Vector::from_real(c.x_coords);
    const Functional f = c.f_coords.empty() ? Functional::basis(space.dim(), 0)
                                            : Functional::from_real(c.f_coords);

    if (c.check == "daugavet") return check_daugavet(space, p);
    if (c.check == "omega") return check_omega(space, c.omega, p);
    if (c.check == "omega-group") return omega_group_report(space, OmegaGridParams{}, p);
    if (c.check == "f-shape") return check_f_shape(space, c.a, c.b, c.t_grid, p);
    if (c.check == "shift") {
        std::vector<double> ts = c.t_grid;
        // keep the default grid usable for any g0: clamp below the branch floor
        const double floor_t = c.g0 == Scalar(-1.0) ? 1.0 : std::abs(c.g0);
        std::vector<double> usable;
        for (double t : ts)
            if (t >= floor_t - 1e-12) usable.push_back(t);
        if (usable.empty()) usable.push_back(floor_t);
        return check_shift_fixture(space, c.g0, usable, p);
    }
    if (c.check == "tsquare") return check_tsquare(space, c.sign, p);
    if (c.check == "geom") return geom_report(space, x, f, c.eps, c.budget, p);
    if (c.check == "slice") return slice_report(space, f, c.alpha, p);
    if (c.check == "denting") return check_denting(space, x, c.eps_grid, p);
    if (c.check == "hull") {
        std::vector<Functional> dirs;
        if (!c.f_coords.empty()) dirs.push_back(f);
        return check_hull(space, x, c.eps, dirs, p);
    }
    if (c.check == "badproj") return check_bad_projections(space, p);
    if (c.check == "dual") return check_dual_transfer(space, c.omega, p);
    if (c.check == "spread")
        return spread_report(EntireFunction::parse(c.g_dsl), space, c.lambda, p);
    if (c.check == "scalar") return scalar_cases(EntireFunction::parse(c.g_dsl), c.scalar_grid, p);
    throw UsageError("unknown check '" + c.check + "'");
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    write_atomic(out_path, text);
    return 0;
}

}  // namespace

int run(const RunConfig& c) {
    try {
        if (c.command == "suite") {
            const SuiteResult s = run_suite(c.seed, c.parallel);
            std::cout << format_criteria_lines(s);
            const std::string text = suite_to_json(s).dump(2);
            if (!c.out_path.empty()) {
                write_atomic(c.out_path, text);
                std::cout << "report: " << c.out_path << "\n";
            }
            return s.all_passed() ? 0 : 1;
        }

        const CheckReport r = dispatch(c);
        const std::string text =
            c.format == "csv" ? report_to_csv(r) : report_to_json(r).dump(2);
        emit(text, c.out_path);
        if (!c.out_path.empty())
            std::cout << r.check << " on " << r.space_dsl << " [" << to_string(r.field)
                      << "]: " << to_string(r.verdict) << " (max violation " << r.max_violation
                      << ") -> " << c.out_path << "\n";
        switch (r.verdict) {
            case Verdict::holds: return 0;
            case Verdict::fails: return 1;
            case Verdict::undecided: return 2;
        }
        return 2;
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const RunConfig c = parse_args(args);
        return run(c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "try: nelab check daugavet --space 'linf(2)' --field real\n";
        return 3;
    }
}

}  // namespace nelab::cli
