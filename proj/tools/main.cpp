#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plsmode/asymptotics.hpp"
#include "plsmode/config.hpp"
#include "plsmode/csv.hpp"
#include "plsmode/errors.hpp"
#include "plsmode/modeselect.hpp"
#include "plsmode/montecarlo.hpp"
#include "plsmode/repro.hpp"
#include "plsmode/secrecy.hpp"
#include "plsmode/version.hpp"

namespace {

using namespace plsmode;

constexpr int kExitBadFlags = 2;
constexpr int kExitNumerical = 3;

struct ScenarioFlags {
    int nt = 4;
    int k = 10;
    int m = 1;
    double alpha2 = 0.01;
    double eps = 0.05;
    std::vector<double> tsnr_db;
    std::vector<double> rho;

    void add_to(CLI::App* cmd, bool with_mode = true) {
        cmd->add_option("--nt", nt, "Transmit antennas N_t")->capture_default_str();
        cmd->add_option("--k", k, "Number of users K")->capture_default_str();
        if (with_mode)
            cmd->add_option("--m", m, "Transmission mode M (scheduled users)")
                ->capture_default_str();
        cmd->add_option("--alpha2", alpha2, "Eavesdropper relative path gain alpha^2")
            ->capture_default_str();
        cmd->add_option("--eps", eps, "Secrecy outage target epsilon")
            ->capture_default_str();
        auto* t = cmd->add_option("--tsnr-db", tsnr_db,
                                  "Transmit SNR grid in dB (rho = 10^(dB/10))");
        cmd->add_option("--rho", rho, "Transmit SNR grid, linear")->excludes(t);
    }

    // Linear SNR grid with the dB conversion done here, at the CLI boundary.
    std::vector<double> snr_grid() const {
        if (!rho.empty()) return rho;
        std::vector<double> out;
        for (double db : tsnr_db.empty() ? std::vector<double>{0.0} : tsnr_db)
            out.push_back(rho_from_tsnr_db(db));
        return out;
    }

    SystemConfig config(double snr) const {
        SystemConfig cfg{nt, k, m, snr, alpha2, eps};
        cfg.validate();
        return cfg;
    }
};

struct OutputFlags {
    std::string path;  // empty = stdout
    std::string format = "csv";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--out", path, "Output file (default: stdout)");
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv"}));
    }
};

class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);  // LF line endings everywhere
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string joined_command(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    return os.str();
}

void provenance(CsvWriter& csv, const std::string& command) {
    csv.comment(std::string("plsmode ") + PLSMODE_VERSION);
    csv.comment("command: " + command);
}

Regime parse_regime(const std::string& name) {
    if (name == "general") return Regime::general;
    if (name == "noise") return Regime::noise_limited;
    if (name == "interference") return Regime::interference_limited;
    if (name == "large-k") return Regime::large_k;
    throw CLI::ValidationError("--regime",
                               "must be one of general|noise|interference|large-k");
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::general: return "general";
        case Regime::noise_limited: return "noise";
        case Regime::interference_limited: return "interference";
        case Regime::large_k: return "large-k";
    }
    return "?";
}

std::vector<std::string> scenario_header() {
    return {"tsnr_db", "rho", "nt", "k", "m", "alpha2", "eps"};
}

void scenario_fields(std::vector<CsvField>& row, const SystemConfig& cfg) {
    row.emplace_back(tsnr_db_from_rho(cfg.snr));
    row.emplace_back(cfg.snr);
    row.emplace_back(static_cast<long>(cfg.n_antennas));
    row.emplace_back(static_cast<long>(cfg.n_users));
    row.emplace_back(static_cast<long>(cfg.mode));
    row.emplace_back(cfg.eav_path_gain);
    row.emplace_back(cfg.outage_target);
}

// ---------------------------------------------------------------- analytic

int run_analytic_outage(const ScenarioFlags& sc, const OutputFlags& out,
                        const std::string& cmdline, double rate,
                        const std::string& regime_str) {
    const Regime regime = parse_regime(regime_str);
    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    auto header = scenario_header();
    header.insert(header.end(), {"regime", "rate", "outage", "method"});
    csv.header(header);
    for (double snr : sc.snr_grid()) {
        const SystemConfig cfg = sc.config(snr);
        double value = 0.0;
        std::string method = "closed_form";
        switch (regime) {
            case Regime::general: {
                const OutageValue v = outage_probability_auto(rate, cfg);
                value = v.value;
                method = v.method == OutageMethod::closed_form ? "closed_form"
                                                               : "quadrature";
                break;
            }
            case Regime::noise_limited:
                value = outage_noise_limited(rate, cfg);
                break;
            case Regime::interference_limited:
                value = outage_interference_limited(rate, cfg);  // rate is the sum rate
                break;
            case Regime::large_k:
                value = outage_large_k(rate, cfg);
                break;
        }
        std::vector<CsvField> row;
        scenario_fields(row, cfg);
        row.emplace_back(std::string(regime_name(regime)));
        row.emplace_back(rate);
        row.emplace_back(value);
        row.emplace_back(method);
        csv.row(row);
    }
    return 0;
}

int run_analytic_capacity(const ScenarioFlags& sc, const OutputFlags& out,
                          const std::string& cmdline) {
    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    auto header = scenario_header();
    header.insert(header.end(),
                  {"rate", "sum_capacity", "achieved_outage", "method", "iterations"});
    csv.header(header);
    for (double snr : sc.snr_grid()) {
        const SystemConfig cfg = sc.config(snr);
        const OutageSolveResult r = secrecy_outage_capacity(cfg);
        std::vector<CsvField> row;
        scenario_fields(row, cfg);
        row.emplace_back(r.rate);
        row.emplace_back(cfg.mode * r.rate);
        row.emplace_back(r.achieved_outage);
        row.emplace_back(std::string(r.method == OutageMethod::closed_form
                                         ? "closed_form"
                                         : "quadrature"));
        row.emplace_back(static_cast<long>(r.iterations));
        csv.row(row);
    }
    return 0;
}

int run_analytic_interception(const ScenarioFlags& sc, const OutputFlags& out,
                              const std::string& cmdline,
                              const std::string& regime_str) {
    const Regime regime = parse_regime(regime_str);
    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    auto header = scenario_header();
    header.insert(header.end(), {"regime", "interception"});
    csv.header(header);
    for (double snr : sc.snr_grid()) {
        const SystemConfig cfg = sc.config(snr);
        double value = 0.0;
        switch (regime) {
            case Regime::general: value = interception_probability(cfg); break;
            case Regime::noise_limited: value = interception_noise_limited(cfg); break;
            case Regime::interference_limited:
                value = interception_interference_limited(cfg.n_users);
                break;
            case Regime::large_k: value = interception_large_k(cfg); break;
        }
        std::vector<CsvField> row;
        scenario_fields(row, cfg);
        row.emplace_back(std::string(regime_name(regime)));
        row.emplace_back(value);
        csv.row(row);
    }
    return 0;
}

int run_analytic_asymptotic(const ScenarioFlags& sc, const OutputFlags& out,
                            const std::string& cmdline, std::optional<double> rate,
                            const std::string& regime_str) {
    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    auto header = scenario_header();
    header.insert(header.end(),
                  {"regime", "m_star", "rate", "outage", "capacity", "sum_capacity"});
    csv.header(header);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double snr : sc.snr_grid()) {
        const SystemConfig cfg = sc.config(snr);
        const Regime regime =
            regime_str == "auto" ? detect_regime(cfg) : parse_regime(regime_str);
        if (regime == Regime::general)
            throw numerical_instability_error(
                "regime 'general' has no asymptotic shortcut; use `analytic capacity` "
                "or `select ams`");
        const int m_star = asymptotic_mode(regime, cfg);
        double outage = nan, capacity = nan, sum = nan;
        switch (regime) {
            case Regime::noise_limited:
                if (rate) outage = outage_noise_limited(*rate, cfg);
                capacity = capacity_noise_limited(cfg);
                sum = cfg.mode * capacity;
                break;
            case Regime::interference_limited:
                if (rate) outage = outage_interference_limited(*rate, cfg);
                if (cfg.mode >= 2) {
                    sum = sum_capacity_interference_limited(cfg);
                    capacity = sum / cfg.mode;
                }
                break;
            case Regime::large_k:
                if (rate) outage = outage_large_k(*rate, cfg);
                capacity = capacity_large_k(cfg);
                sum = cfg.mode * capacity;
                break;
            default: break;
        }
        std::vector<CsvField> row;
        scenario_fields(row, cfg);
        row.emplace_back(std::string(regime_name(regime)));
        row.emplace_back(static_cast<long>(m_star));
        row.emplace_back(rate ? *rate : nan);
        row.emplace_back(outage);
        row.emplace_back(capacity);
        row.emplace_back(sum);
        csv.row(row);
    }
    return 0;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const ScenarioFlags& sc, const OutputFlags& out,
                 const std::string& cmdline, long trials, std::uint64_t seed,
                 bool strict, int threads, std::vector<double> rates) {
    const double snr = sc.snr_grid().front();
    const SystemConfig cfg = sc.config(snr);
    if (rates.empty()) {
        // Default rate grid: the analytic capacity, so the empirical outage is
        // directly comparable with the target epsilon.
        rates.push_back(secrecy_outage_capacity(cfg).rate);
    }

    RunSpec spec;
    spec.n_trials = trials;
    spec.rate_grid = rates;
    spec.seed = seed;
    spec.model = strict ? SchedulingModel::strict_assign : SchedulingModel::faithful;
    spec.n_workers = threads;
    const TrialStats stats = run_trials(cfg, spec);

    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    csv.comment("seed: " + std::to_string(seed));
    auto header = scenario_header();
    header.insert(header.end(),
                  {"scheduler", "trials", "seed", "rate", "empirical_outage",
                   "outage_std_err", "empirical_interception", "interception_std_err",
                   "mean_sum_secrecy", "sum_secrecy_std_err", "starved_beams",
                   "duplicate_assignments"});
    csv.header(header);
    for (std::size_t i = 0; i < stats.rate_grid.size(); ++i) {
        std::vector<CsvField> row;
        scenario_fields(row, cfg);
        row.emplace_back(std::string(strict ? "strict" : "faithful"));
        row.emplace_back(stats.trials);
        row.emplace_back(std::to_string(seed));
        row.emplace_back(stats.rate_grid[i]);
        row.emplace_back(stats.empirical_outage[i]);
        row.emplace_back(stats.outage_std_err[i]);
        row.emplace_back(stats.empirical_interception);
        row.emplace_back(stats.interception_std_err);
        row.emplace_back(stats.mean_sum_secrecy);
        row.emplace_back(stats.sum_secrecy_std_err);
        row.emplace_back(stats.starved_beams);
        row.emplace_back(stats.duplicate_assignments);
        csv.row(row);
    }
    return 0;
}

// ------------------------------------------------------------ select/sweep

SelectStrategy parse_strategy(const std::string& s) {
    if (s == "scan") return SelectStrategy::grid_scan;
    if (s == "bisect") return SelectStrategy::bisection;
    throw CLI::ValidationError("--strategy", "must be scan or bisect");
}

int run_select(const ScenarioFlags& sc, const OutputFlags& out,
               const std::string& cmdline, const std::string& scheme_str,
               const std::string& strategy_str, double delta_r) {
    const SelectStrategy strategy = parse_strategy(strategy_str);
    const Scheme scheme = scheme_str == "ams"    ? Scheme::AMS
                          : scheme_str == "ftm1" ? Scheme::FTM1
                                                 : Scheme::FTM2;
    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    csv.header(std::vector<std::string>{"tsnr_db", "rho", "scheme", "strategy", "mode",
                                        "sum_capacity", "chosen", "near_tie_margin",
                                        "runner_up"});
    for (double snr : sc.snr_grid()) {
        SystemConfig cfg = sc.config(snr);
        cfg.mode = 1;
        const ModeDecision d = scheme == Scheme::AMS
                                   ? ams_select(cfg, strategy, delta_r)
                                   : fixed_mode(cfg, scheme, strategy, delta_r);
        for (std::size_t i = 0; i < d.per_mode_sum_capacity.size(); ++i) {
            if (std::isnan(d.per_mode_sum_capacity[i]) && d.per_mode_error[i].empty())
                continue;  // mode not evaluated by this scheme
            std::vector<CsvField> row;
            row.emplace_back(tsnr_db_from_rho(snr));
            row.emplace_back(snr);
            row.emplace_back(std::string(scheme_name(scheme)));
            row.emplace_back(std::string(strategy_str));
            row.emplace_back(static_cast<long>(i + 1));
            row.emplace_back(d.per_mode_sum_capacity[i]);
            row.emplace_back(static_cast<long>(d.chosen == static_cast<int>(i + 1)));
            row.emplace_back(d.near_tie_margin);
            row.emplace_back(static_cast<long>(d.runner_up));
            csv.row(row);
        }
    }
    return 0;
}

// Applies one swept value to a config. Swept parameters must exist in the
// scenario; anything else is a flag error.
SystemConfig apply_sweep_value(const SystemConfig& base, const std::string& param,
                               double value) {
    SystemConfig cfg = base;
    if (param == "tsnr-db")
        cfg.snr = rho_from_tsnr_db(value);
    else if (param == "rho")
        cfg.snr = value;
    else if (param == "k")
        cfg.n_users = static_cast<int>(value);
    else if (param == "nt")
        cfg.n_antennas = static_cast<int>(value);
    else if (param == "alpha2")
        cfg.eav_path_gain = value;
    else if (param == "eps")
        cfg.outage_target = value;
    else
        throw CLI::ValidationError(
            "--param", "must name a scenario parameter: tsnr-db|rho|k|nt|alpha2|eps");
    cfg.validate();
    return cfg;
}

int run_sweep(const ScenarioFlags& sc, const OutputFlags& out,
              const std::string& cmdline, const std::vector<std::string>& schemes_str,
              const std::string& strategy_str, double delta_r,
              const std::string& param, const std::vector<double>& values) {
    const SelectStrategy strategy = parse_strategy(strategy_str);
    std::vector<Scheme> schemes;
    for (const auto& s : schemes_str)
        schemes.push_back(s == "ams" ? Scheme::AMS : s == "ftm1" ? Scheme::FTM1
                                                                 : Scheme::FTM2);
    SystemConfig base = sc.config(sc.snr_grid().front());
    base.mode = 1;

    // default sweep axis: the SNR grid itself
    std::vector<double> axis = values;
    if (param == "tsnr-db" && axis.empty())
        for (double snr : sc.snr_grid()) axis.push_back(tsnr_db_from_rho(snr));
    if (axis.empty())
        throw CLI::ValidationError("--values", "sweeping " + param +
                                                   " requires at least one value");
    apply_sweep_value(base, param, axis.front());  // fail before any output

    OutputSink sink(out.path);
    CsvWriter csv(sink.stream());
    provenance(csv, cmdline);
    csv.header(std::vector<std::string>{"param", "value", "tsnr_db", "rho", "scheme",
                                        "m_star", "sum_capacity", "near_tie_margin",
                                        "runner_up"});
    for (double value : axis) {
        const SystemConfig cfg = apply_sweep_value(base, param, value);
        for (Scheme s : schemes) {
            const ModeDecision d = s == Scheme::AMS
                                       ? ams_select(cfg, strategy, delta_r)
                                       : fixed_mode(cfg, s, strategy, delta_r);
            std::vector<CsvField> row;
            row.emplace_back(param);
            row.emplace_back(value);
            row.emplace_back(tsnr_db_from_rho(cfg.snr));
            row.emplace_back(cfg.snr);
            row.emplace_back(std::string(scheme_name(s)));
            row.emplace_back(static_cast<long>(d.chosen));
            row.emplace_back(d.per_mode_sum_capacity[d.chosen - 1]);
            row.emplace_back(d.near_tie_margin);
            row.emplace_back(static_cast<long>(d.runner_up));
            csv.row(row);
        }
    }
    return 0;
}

// ---------------------------------------------------------------- reproduce

void write_mode_table(const ModeTable& table, const std::filesystem::path& path,
                      const std::string& cmdline, std::uint64_t) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    CsvWriter csv(file);
    provenance(csv, cmdline);
    csv.comment("preset: N_t=4 K=10 alpha2=0.01 eps=0.05 delta_r=0.01 unless the row "
                "label overrides");
    csv.header(std::vector<std::string>{"row", "tsnr_db", "m_star", "sum_capacity",
                                        "near_tie_margin", "runner_up", "error"});
    for (const auto& row : table.rows)
        for (const auto& cell : row.cells) {
            std::vector<CsvField> fields;
            fields.emplace_back(row.label);
            fields.emplace_back(cell.tsnr_db);
            fields.emplace_back(static_cast<long>(cell.m_star));
            fields.emplace_back(cell.sum_capacity);
            fields.emplace_back(cell.near_tie_margin);
            fields.emplace_back(static_cast<long>(cell.runner_up));
            fields.emplace_back(cell.error);
            csv.row(fields);
        }
}

void write_curve(const Curve& curve, const std::filesystem::path& path,
                 const std::string& cmdline) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    CsvWriter csv(file);
    provenance(csv, cmdline);
    csv.header(
        std::vector<std::string>{"series", "tsnr_db", "m_star", "sum_capacity", "error"});
    for (const auto& p : curve.points) {
        std::vector<CsvField> fields;
        fields.emplace_back(p.series);
        fields.emplace_back(p.tsnr_db);
        fields.emplace_back(static_cast<long>(p.m_star));
        fields.emplace_back(p.sum_capacity);
        fields.emplace_back(p.error);
        csv.row(fields);
    }
}

void write_theory_sim(const TheorySimCurve& curve, const std::filesystem::path& path,
                      const std::string& cmdline) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    CsvWriter csv(file);
    provenance(csv, cmdline);
    csv.comment("seed: " + std::to_string(curve.seed));
    csv.header(std::vector<std::string>{
        "tsnr_db", "alpha2", "m_star", "theory_rate", "theory_sum_capacity",
        "sim_sum_capacity", "empirical_outage", "outage_std_err", "trials", "error"});
    for (const auto& p : curve.points) {
        std::vector<CsvField> fields;
        fields.emplace_back(p.tsnr_db);
        fields.emplace_back(p.alpha2);
        fields.emplace_back(static_cast<long>(p.m_star));
        fields.emplace_back(p.theory_rate);
        fields.emplace_back(p.theory_sum_capacity);
        fields.emplace_back(p.sim_sum_capacity);
        fields.emplace_back(p.empirical_outage);
        fields.emplace_back(p.outage_std_err);
        fields.emplace_back(p.trials);
        fields.emplace_back(p.error);
        csv.row(fields);
    }
}

int run_reproduce(const std::string& target, const std::string& out_dir,
                  const std::string& cmdline, double delta_r, long trials,
                  std::uint64_t seed, int threads) {
    std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    const auto path = dir / (target + ".csv");
    bool failed = false;
    if (target == "table1") {
        const auto t = reproduce_table1(delta_r);
        write_mode_table(t, path, cmdline, seed);
        failed = t.any_failure;
    } else if (target == "table2") {
        const auto t = reproduce_table2(delta_r);
        write_mode_table(t, path, cmdline, seed);
        failed = t.any_failure;
    } else if (target == "table3") {
        const auto t = reproduce_table3(delta_r);
        write_mode_table(t, path, cmdline, seed);
        failed = t.any_failure;
    } else if (target == "fig2" || target == "fig3" || target == "fig4") {
        const auto c = target == "fig2"   ? reproduce_fig2()
                       : target == "fig3" ? reproduce_fig3()
                                          : reproduce_fig4();
        write_curve(c, path, cmdline);
        failed = c.any_failure;
    } else {
        const auto c = reproduce_fig5(trials, seed, threads);
        write_theory_sim(c, path, cmdline);
        failed = c.any_failure;
    }
    std::cerr << "wrote " << path.string() << "\n";
    if (failed) {
        std::cerr << "plsmode: some cells failed; partial outputs retained\n";
        return kExitNumerical;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage capacity and transmission mode selection for "
                 "multi-user multi-antenna downlinks with a passive eavesdropper"};
    app.set_version_flag("--version", PLSMODE_VERSION);
    app.set_config("--config", "", "Read options from an INI file (flags override)");
    app.require_subcommand(1);
    const std::string cmdline = joined_command(argc, argv);

    // analytic
    auto* analytic = app.add_subcommand("analytic", "Closed-form quantities");
    analytic->require_subcommand(1);
    ScenarioFlags sc_outage, sc_capacity, sc_intercept, sc_asym;
    OutputFlags out_outage, out_capacity, out_intercept, out_asym;
    double outage_rate = 0.0;
    std::string outage_regime = "general";
    auto* an_outage = analytic->add_subcommand(
        "outage", "Outage probability G(R) (sum rate for --regime interference)");
    sc_outage.add_to(an_outage);
    out_outage.add_to(an_outage);
    an_outage->add_option("--r", outage_rate, "Rate R in bits/s/Hz")
        ->capture_default_str();
    an_outage->add_option("--regime", outage_regime,
                          "general|noise|interference|large-k")
        ->capture_default_str();

    auto* an_capacity =
        analytic->add_subcommand("capacity", "Secrecy outage capacity G^{-1}(eps)");
    sc_capacity.add_to(an_capacity);
    out_capacity.add_to(an_capacity);

    std::string intercept_regime = "general";
    auto* an_intercept =
        analytic->add_subcommand("interception", "Interception probability G(0)");
    sc_intercept.add_to(an_intercept);
    out_intercept.add_to(an_intercept);
    an_intercept->add_option("--regime", intercept_regime,
                             "general|noise|interference|large-k")
        ->capture_default_str();

    std::string asym_regime = "auto";
    std::optional<double> asym_rate;
    auto* an_asym = analytic->add_subcommand(
        "asymptotic", "Extreme-regime mode rule, outage and capacity");
    sc_asym.add_to(an_asym);
    out_asym.add_to(an_asym);
    an_asym->add_option("--regime", asym_regime,
                        "auto|noise|interference|large-k")
        ->capture_default_str();
    an_asym->add_option("--r", asym_rate, "Rate at which to evaluate the regime outage");

    // simulate
    ScenarioFlags sc_sim;
    OutputFlags out_sim;
    long sim_trials = 0;
    std::uint64_t sim_seed = 0;
    bool sim_strict = false;
    int sim_threads = 0;
    std::vector<double> sim_rates;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo scheduling simulator");
    sc_sim.add_to(simulate);
    out_sim.add_to(simulate);
    simulate->add_option("--trials", sim_trials, "Number of slots to simulate")
        ->required();
    simulate->add_option("--seed", sim_seed, "RNG seed (runs are bit-reproducible)")
        ->required();
    simulate->add_flag("--strict-scheduling", sim_strict,
                       "Greedy one-beam-per-user scheduler");
    simulate->add_option("--threads", sim_threads, "Worker threads (0 = hardware)");
    simulate->add_option("--r", sim_rates,
                         "Rate grid for empirical outage (default: analytic capacity)");

    // select
    ScenarioFlags sc_select;
    OutputFlags out_select;
    std::string select_scheme, select_strategy = "scan";
    double select_delta_r = 0.01;
    auto* select = app.add_subcommand("select", "Transmission mode selection");
    select->add_option("scheme", select_scheme, "ams|ftm1|ftm2")
        ->required()
        ->check(CLI::IsMember({"ams", "ftm1", "ftm2"}));
    sc_select.add_to(select, /*with_mode=*/false);
    out_select.add_to(select);
    select->add_option("--strategy", select_strategy, "scan|bisect")
        ->capture_default_str();
    select->add_option("--delta-r", select_delta_r, "Rate scan step")
        ->capture_default_str();

    // sweep
    ScenarioFlags sc_sweep;
    OutputFlags out_sweep;
    std::vector<std::string> sweep_schemes{"ams", "ftm1", "ftm2"};
    std::string sweep_strategy = "scan";
    double sweep_delta_r = 0.01;
    std::string sweep_param = "tsnr-db";
    std::vector<double> sweep_values;
    auto* sweep =
        app.add_subcommand("sweep", "Compare schemes over a parameter grid");
    sc_sweep.add_to(sweep, /*with_mode=*/false);
    out_sweep.add_to(sweep);
    sweep->add_option("--schemes", sweep_schemes, "Subset of ams,ftm1,ftm2")
        ->check(CLI::IsMember({"ams", "ftm1", "ftm2"}));
    sweep->add_option("--strategy", sweep_strategy, "scan|bisect")
        ->capture_default_str();
    sweep->add_option("--delta-r", sweep_delta_r, "Rate scan step")
        ->capture_default_str();
    sweep->add_option("--param", sweep_param,
                      "Swept scenario parameter: tsnr-db|rho|k|nt|alpha2|eps")
        ->capture_default_str();
    sweep->add_option("--values", sweep_values,
                      "Values for --param (default: the --tsnr-db grid)");

    // reproduce
    std::string repro_target, repro_out = ".";
    double repro_delta_r = 0.01;
    long repro_trials = 200000;
    std::uint64_t repro_seed = 12345;
    int repro_threads = 0;
    auto* repro =
        app.add_subcommand("reproduce", "Run a bundled experiment preset to CSV");
    repro->add_option("target", repro_target, "table1|table2|table3|fig2|fig3|fig4|fig5")
        ->required()
        ->check(CLI::IsMember(
            {"table1", "table2", "table3", "fig2", "fig3", "fig4", "fig5"}));
    repro->add_option("--out", repro_out, "Output directory")->capture_default_str();
    repro->add_option("--delta-r", repro_delta_r, "Rate scan step")
        ->capture_default_str();
    repro->add_option("--trials", repro_trials, "Monte Carlo trials (fig5)")
        ->capture_default_str();
    repro->add_option("--seed", repro_seed, "RNG seed (fig5)")->capture_default_str();
    repro->add_option("--threads", repro_threads, "Worker threads (fig5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "plsmode: " << e.what() << "\n";
        return kExitBadFlags;
    }

    try {
        if (an_outage->parsed())
            return run_analytic_outage(sc_outage, out_outage, cmdline, outage_rate,
                                       outage_regime);
        if (an_capacity->parsed())
            return run_analytic_capacity(sc_capacity, out_capacity, cmdline);
        if (an_intercept->parsed())
            return run_analytic_interception(sc_intercept, out_intercept, cmdline,
                                             intercept_regime);
        if (an_asym->parsed())
            return run_analytic_asymptotic(sc_asym, out_asym, cmdline, asym_rate,
                                           asym_regime);
        if (simulate->parsed()) {
            if (sim_trials < 1) {
                std::cerr << "plsmode: --trials must be >= 1; use the analytic "
                             "commands for trial-free results\n";
                return kExitBadFlags;
            }
            return run_simulate(sc_sim, out_sim, cmdline, sim_trials, sim_seed,
                                sim_strict, sim_threads, sim_rates);
        }
        if (select->parsed())
            return run_select(sc_select, out_select, cmdline, select_scheme,
                              select_strategy, select_delta_r);
        if (sweep->parsed())
            return run_sweep(sc_sweep, out_sweep, cmdline, sweep_schemes,
                             sweep_strategy, sweep_delta_r, sweep_param,
                             sweep_values);
        if (repro->parsed())
            return run_reproduce(repro_target, repro_out, cmdline, repro_delta_r,
                                 repro_trials, repro_seed, repro_threads);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "plsmode: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const numerical_instability_error& e) {
        std::cerr << "plsmode: numerical failure (closed form): " << e.what() << "\n";
        return kExitNumerical;
    } catch (const convergence_error& e) {
        std::cerr << "plsmode: numerical failure (quadrature/solver): " << e.what()
                  << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "plsmode: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const std::domain_error& e) {
        std::cerr << "plsmode: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const std::exception& e) {
        std::cerr << "plsmode: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
