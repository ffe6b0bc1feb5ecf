#include "commands.hpp"

#include "svg_plot.hpp"

#include "womlab/csv.hpp"
#include "womlab/eq_asym.hpp"
#include "womlab/eq_variants.hpp"
#include "womlab/errors.hpp"
#include "womlab/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace womlab::cli {

DegreeDistribution ModelSpec::distribution() const
{
    if (!dist_file.empty()) {
        std::ifstream in(dist_file);
        if (!in) throw InvalidArgument("cannot read distribution file `" + dist_file + "`");
        return read_csv(in);
    }
    if (kmax == 0) throw InvalidArgument("kmax must be at least 1");
    if (degenerate) return DegreeDistribution::degenerate(kmax);
    return DegreeDistribution::power_law(gamma, kmax);
}

namespace {

using csv::format_real;

void apply(ModelSpec& model, SweepVariable var, double x)
{
    switch (var) {
    case SweepVariable::gamma: model.gamma = x; break;
    case SweepVariable::delta: model.params.delta = x; break;
    case SweepVariable::s: model.params.s = x; break;
    case SweepVariable::kmax:
        if (!(x >= 1.0)) throw InvalidArgument("kmax must be at least 1");
        model.kmax = static_cast<std::size_t>(x);
        break;
    }
}

SweepRow solve_point(const ModelSpec& base, SweepVariable var, double x)
{
    SweepRow row;
    row.x = x;
    try {
        ModelSpec model = base;
        apply(model, var, x);
        model.params.validate();
        row.eq = stable_equilibrium(model.distribution(), model.params);
        row.status = "ok";
    } catch (const NoEquilibriumError&) {
        row.status = "no_equilibrium";
    } catch (const NoComparisonError&) {
        row.status = "no_comparison";
    } catch (const DivergedError&) {
        row.status = "diverged";
    } catch (const InvalidArgument&) {
        row.status = "invalid";
    }
    return row;
}

double output_value(const Equilibrium& eq, const std::string& name)
{
    if (name == "q") return eq.q;
    if (name == "e_price") return eq.law.e_p;
    if (name == "profit") return eq.profit;
    if (name == "eta") return eq.law.eta;
    return eq.law.dispersion();
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot write `" + path + "`");
    return file;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

struct GlobalFlags {
    std::optional<double> v, s, delta, gamma;
    std::optional<std::size_t> kmax;
    std::string preset;
    std::string dist_file;
    bool degenerate = false;
};

struct Resolved {
    ModelSpec model;
    std::optional<Preset> preset;
};

Resolved resolve(const GlobalFlags& flags)
{
    Resolved r;
    if (!flags.preset.empty()) {
        r.preset = find_preset(flags.preset);
        r.model.params = r.preset->params;
        r.model.gamma = r.preset->gamma;
        r.model.kmax = r.preset->kmax;
    }
    if (flags.v) r.model.params.v = *flags.v;
    if (flags.s) r.model.params.s = *flags.s;
    if (flags.delta) r.model.params.delta = *flags.delta;
    if (flags.gamma) r.model.gamma = *flags.gamma;
    if (flags.kmax) r.model.kmax = *flags.kmax;
    r.model.degenerate = flags.degenerate;
    r.model.dist_file = flags.dist_file;
    return r;
}

int cmd_solve(const ModelSpec& model, const std::string& variant, std::ostream& out)
{
    model.params.validate();
    std::vector<Equilibrium> eqs;
    if (variant == "full") {
        try {
            eqs.push_back(solve_full_diffusion(model.params));
        } catch (const NoEquilibriumError&) {
        }
    } else {
        eqs = solve_equilibria(model.distribution(), model.params);
    }
    if (eqs.empty()) {
        out << "NO-TRADE-ONLY\n";
        return kExitOk;
    }
    out << "q,r,p_lo,e_price,profit,stable\n";
    for (const auto& eq : eqs)
        out << format_real(eq.q) << ',' << format_real(eq.law.p_hi) << ',' << format_real(eq.law.p_lo) << ','
            << format_real(eq.law.e_p) << ',' << format_real(eq.profit) << ',' << (eq.stable ? "true" : "false")
            << '\n';
    return kExitOk;
}

int cmd_asym(const ModelSpec& model, std::ostream& out)
{
    model.params.validate();
    const auto eqs = solve_asym(model.distribution(), model.params);
    if (eqs.empty()) {
        out << "NO-TRADE-ONLY\n";
        return kExitOk;
    }
    out << "khat,q,w,w_hat,eta_hat,r,regime,stable\n";
    for (const auto& eq : eqs)
        out << eq.khat << ',' << format_real(eq.q) << ',' << format_real(eq.w) << ',' << format_real(eq.w_hat) << ','
            << format_real(eq.eta_hat) << ',' << format_real(eq.law.p_hi) << ',' << to_string(eq.regime) << ','
            << (eq.stable ? "true" : "false") << '\n';
    return kExitOk;
}

struct VerifyOptions {
    std::uint64_t seed = 42;
    double samples = 1e6;
    std::size_t replications = 1000;
    double q_offset = 0.0;
    std::string format = "csv";
    std::string out_path;
};

struct Check {
    std::string metric;
    double deviation;
    double bound;
    bool pass() const { return deviation <= bound; }
};

int cmd_verify(const ModelSpec& model, const VerifyOptions& opt, std::ostream& out, std::ostream& err)
{
    model.params.validate();
    if (!(opt.samples >= 1.0)) throw InvalidArgument("--samples must be at least 1");
    if (opt.replications == 0) throw InvalidArgument("--replications must be at least 1");
    const auto dist = model.distribution();
    const Equilibrium eq = stable_equilibrium(dist, model.params);

    SimConfig cfg;
    cfg.params = model.params;
    cfg.dist = dist;
    cfg.q = eq.q + opt.q_offset;
    cfg.law = eq.law;
    cfg.seed = opt.seed;
    cfg.n_replications = opt.replications;
    cfg.n_consumers = static_cast<std::size_t>(std::ceil(opt.samples / static_cast<double>(opt.replications)));

    std::vector<double> grid(11);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = eq.law.p_lo + (eq.law.p_hi - eq.law.p_lo) * static_cast<double>(i) / 10.0;
    grid.back() = eq.law.p_hi;
    const SimReport report = simulate_market(cfg, grid);

    std::vector<Check> checks;
    checks.push_back({"indifference", std::abs(report.payoff_gap.mean), 3.0 * report.payoff_gap.std_error});
    const double delta = model.params.delta;
    for (const auto& pt : report.profit_at) {
        const double analytic = firm_profit_baseline(dist, cfg.q, delta, eq.law, pt.price);
        checks.push_back({"profit@" + format_real(pt.price), std::abs(pt.profit.mean - analytic),
                          3.0 * pt.profit.std_error});
    }
    const double compare = (1.0 - cfg.q) * tau_tilde(dist, cfg.q);
    checks.push_back({"comparer_fraction", std::abs(report.comparer_fraction.mean - compare),
                      3.0 * report.comparer_fraction.std_error});
    checks.push_back({"e_price_paid", std::abs(report.e_price_paid.mean - eq.law.e_p),
                      3.0 * report.e_price_paid.std_error});

    std::ofstream file;
    std::ostream* sink = &out;
    if (!opt.out_path.empty()) {
        file = open_output(opt.out_path);
        sink = &file;
    }
    if (opt.format == "json") {
        auto doc = nlohmann::json::parse(to_json(report));
        doc["q"] = cfg.q;
        auto list = nlohmann::json::array();
        for (const auto& c : checks)
            list.push_back({{"metric", c.metric}, {"deviation", c.deviation}, {"bound", c.bound}, {"pass", c.pass()}});
        doc["checks"] = list;
        *sink << doc.dump(2) << '\n';
    } else {
        write_csv(*sink, report);
    }

    std::string failed;
    for (const auto& c : checks) {
        err << (c.pass() ? "PASS " : "FAIL ") << c.metric << " deviation=" << format_real(c.deviation)
            << " bound=" << format_real(c.bound) << '\n';
        if (!c.pass() && failed.empty()) failed = c.metric;
    }
    if (!failed.empty()) {
        err << "verify: check failed: " << failed << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_plot(const std::string& in_path, const std::string& out_path, std::ostream& out)
{
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read `" + in_path + "`");
    const PlotTable table = read_plot_table(in);
    if (out_path.empty()) {
        write_svg(out, table);
    } else {
        auto file = open_output(out_path);
        write_svg(file, table);
    }
    return kExitOk;
}

} // namespace

std::vector<SweepRow> run_sweep(const ModelSpec& base, const SweepSpec& spec)
{
    spec.validate();
    const auto xs = spec.grid();
    std::vector<SweepRow> rows(xs.size());
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(default_thread_count(), xs.size()));
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t)
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < xs.size(); i = next++) rows[i] = solve_point(base, spec.variable, xs[i]);
            });
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    out << to_string(spec.variable);
    for (const auto& o : spec.outputs) out << ',' << o;
    out << ",status\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : rows) {
        out << format_real(row.x);
        for (const auto& o : spec.outputs) out << ',' << format_real(row.eq ? output_value(*row.eq, o) : nan);
        out << ',' << row.status << '\n';
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Equilibrium solver for consumer search with word-of-mouth price information", "womlab"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_option("--v", flags.v, "valuation of the good");
    app.add_option("--s", flags.s, "search cost");
    app.add_option("--delta", flags.delta, "speed of information diffusion, in (0,1)");
    app.add_option("--gamma", flags.gamma, "power-law exponent of the degree distribution");
    app.add_option("--kmax", flags.kmax, "largest number of friends");
    app.add_option("--preset", flags.preset, "figure parameter set")->check(CLI::IsMember(preset_names()));
    app.add_option("--dist-file", flags.dist_file, "degree distribution as a k,t_k table");
    app.add_flag("--degenerate", flags.degenerate, "every consumer has exactly kmax friends");
    app.set_config("--config", "", "key=value file with default flag values");

    std::string variant = "baseline";
    auto* solve = app.add_subcommand("solve", "print every interior equilibrium");
    solve->add_option("--variant", variant, "baseline or full (full diffusion)")
        ->check(CLI::IsMember({"baseline", "full"}));

    std::optional<std::string> var_name;
    std::optional<double> lo, hi;
    std::optional<int> steps;
    std::optional<std::string> outputs;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "stable equilibrium over a parameter grid, as CSV");
    sweep->add_option("--var", var_name, "gamma, delta, s or kmax");
    sweep->add_option("--lo", lo, "first grid value");
    sweep->add_option("--hi", hi, "last grid value");
    sweep->add_option("--steps", steps, "number of grid points");
    sweep->add_option("--outputs", outputs, "comma-separated columns from q,e_price,profit,eta,dispersion");
    sweep->add_option("--out", sweep_out, "output file (default stdout)");

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Monte Carlo check of the stable equilibrium");
    verify->add_option("--seed", vopt.seed, "random seed");
    verify->add_option("--samples", vopt.samples, "total consumer draws");
    verify->add_option("--replications", vopt.replications, "independent price draws");
    verify->add_option("--q-offset", vopt.q_offset, "shift the simulated search probability");
    verify->add_option("--format", vopt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--out", vopt.out_path, "output file (default stdout)");

    std::string plot_in, plot_out;
    auto* plot = app.add_subcommand("plot", "render a sweep CSV as an SVG line chart");
    plot->add_option("input", plot_in, "sweep CSV")->required();
    plot->add_option("--out", plot_out, "output SVG (default stdout)");

    auto* asym = app.add_subcommand("asym", "equilibria when consumers search according to their degree");
    auto* dist = app.add_subcommand("dist", "print the degree distribution");

    for (auto* sub : {solve, sweep, verify, plot, asym, dist}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Resolved r = resolve(flags);
        if (solve->parsed()) return cmd_solve(r.model, variant, out);
        if (asym->parsed()) return cmd_asym(r.model, out);
        if (verify->parsed()) return cmd_verify(r.model, vopt, out, err);
        if (plot->parsed()) return cmd_plot(plot_in, plot_out, out);
        if (dist->parsed()) {
            write_csv(out, r.model.distribution());
            return kExitOk;
        }
        if (sweep->parsed()) {
            SweepSpec spec;
            if (r.preset && r.preset->sweep) spec = *r.preset->sweep;
            else if (!var_name) throw InvalidArgument("sweep needs --var or a preset with a sweep");
            if (var_name) {
                const auto parsed = parse_sweep_variable(*var_name);
                if (!parsed) throw InvalidArgument("unknown sweep variable `" + *var_name + "`");
                spec.variable = *parsed;
            }
            if (lo) spec.lo = *lo;
            if (hi) spec.hi = *hi;
            if (steps) spec.steps = *steps;
            if (outputs) spec.outputs = split_list(*outputs);
            spec.validate();
            const auto rows = run_sweep(r.model, spec);
            if (sweep_out.empty()) {
                write_sweep_csv(out, spec, rows);
            } else {
                auto file = open_output(sweep_out);
                write_sweep_csv(file, spec, rows);
            }
            return kExitOk;
        }
    } catch (const InvalidArgument& e) {
        err << "womlab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "womlab: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

} // namespace womlab::cli
