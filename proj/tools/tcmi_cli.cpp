// Command-line front end: dataset ingestion, feature augmentation, command
// dispatch, and machine-readable reports.
//
// Commands
//   score          score one explicit feature subset
//   select         ranked subset search (branch-and-bound or exhaustive)
//   generate       emit a synthetic dataset as CSV
//   power          noise-power curve for a subset on a synthetic suite
//   baseline-check closed-form baseline vs Monte Carlo permutation baseline
//
// Exit codes: 0 success, 2 input error, 3 degenerate data, 4 budget exceeded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tcmi/baseline.hpp"
#include "tcmi/dataset.hpp"
#include "tcmi/errors.hpp"
#include "tcmi/io.hpp"
#include "tcmi/search.hpp"
#include "tcmi/synthdata.hpp"
#include "tcmi/tcmi.hpp"

namespace {

using nlohmann::ordered_json;

constexpr const char* kLibraryVersion = "1.0.0";
constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Small helpers

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream stream(csv);
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<double> split_reals(const std::string& csv) {
    std::vector<double> out;
    std::string item;
    std::stringstream stream(csv);
    while (std::getline(stream, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != item.size()) {
            throw tcmi::input_error("invalid number: " + item);
        }
        out.push_back(value);
    }
    return out;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

tcmi::GridStrategy parse_grid(const std::string& name) {
    if (name == "sample") {
        return tcmi::GridStrategy::sample;
    }
    if (name == "full") {
        return tcmi::GridStrategy::full;
    }
    throw tcmi::input_error("unknown grid strategy: " + name);
}

tcmi::Dataset apply_augment(tcmi::Dataset dataset, const std::string& augment_csv) {
    if (augment_csv.empty()) {
        return dataset;
    }
    return tcmi::augment(dataset, split_names(augment_csv));
}

ordered_json subset_record(const tcmi::SubsetScore& score) {
    ordered_json rec;
    rec["subset"] = score.subset;
    rec["selection_score"] = score.selection_score;
    rec["assessment_score"] = score.assessment_score;
    rec["d_forward"] = score.pair.d_forward;
    rec["d_reverse"] = score.pair.d_reverse;
    rec["baseline_forward"] = score.pair.baseline_forward;
    rec["baseline_reverse"] = score.pair.baseline_reverse;
    return rec;
}

void print_subset_tsv(std::ostream& out, const std::vector<tcmi::SubsetScore>& scores) {
    out << "subset\tselection_score\tassessment_score\td_forward\td_reverse"
           "\tbaseline_forward\tbaseline_reverse\n";
    for (const auto& score : scores) {
        for (std::size_t i = 0; i < score.subset.size(); ++i) {
            out << (i ? "," : "") << score.subset[i];
        }
        out << '\t' << format_real(score.selection_score) << '\t'
            << format_real(score.assessment_score) << '\t' << format_real(score.pair.d_forward)
            << '\t' << format_real(score.pair.d_reverse) << '\t'
            << format_real(score.pair.baseline_forward) << '\t'
            << format_real(score.pair.baseline_reverse) << '\n';
    }
}

void emit_report(const ordered_json& report, const std::string& output) {
    if (output == "json") {
        std::cout << report.dump(2) << '\n';
    }
    // TSV callers print their own table before reaching here.
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Shared flag bundle for the dataset-consuming commands.

struct DataFlags {
    std::string data;
    std::string target;
    std::string augment;
    std::string grid = "sample";
    std::string output = "json";
    std::uint64_t seed = 0;
    bool shuffle_correction = false;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
    cmd->add_option("--data", flags.data, "CSV file with a header row")->required();
    cmd->add_option("--target", flags.target, "name of the target column")->required();
    cmd->add_option("--augment", flags.augment, "comma list of transforms: negate,abs");
    cmd->add_option("--grid", flags.grid, "grid strategy: sample|full")
        ->check(CLI::IsMember({"sample", "full"}));
    cmd->add_option("--output", flags.output, "report format: json|tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_option("--seed", flags.seed, "seed for every stochastic path");
    cmd->add_flag("--shuffle-correction", flags.shuffle_correction,
                  "chance correction for one-dimensional subsets");
}

ordered_json config_echo(const DataFlags& flags) {
    ordered_json config;
    config["data"] = flags.data;
    config["target"] = flags.target;
    if (!flags.augment.empty()) {
        config["augment"] = split_names(flags.augment);
    }
    config["grid"] = flags.grid;
    config["shuffle_correction"] = flags.shuffle_correction;
    return config;
}

ordered_json report_skeleton(const std::string& command, ordered_json config,
                             std::uint64_t seed) {
    ordered_json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = command;
    report["config"] = std::move(config);
    report["results"] = ordered_json::array();
    report["stats"] = ordered_json::object();
    report["library_version"] = kLibraryVersion;
    report["seed"] = seed;
    return report;
}

// ---------------------------------------------------------------------------
// Commands

int run_score(const DataFlags& flags, const std::string& subset_csv) {
    const auto start = std::chrono::steady_clock::now();
    const tcmi::Dataset dataset = apply_augment(tcmi::load_csv(flags.data, flags.target),
                                                flags.augment);
    tcmi::SubsetScorer scorer(dataset, {.grid = parse_grid(flags.grid),
                                        .shuffle_correction = flags.shuffle_correction,
                                        .seed = flags.seed});
    const tcmi::SubsetScore score = scorer.score(split_names(subset_csv));

    if (flags.output == "tsv") {
        print_subset_tsv(std::cout, {score});
        return 0;
    }
    ordered_json config = config_echo(flags);
    config["subset"] = split_names(subset_csv);
    ordered_json report = report_skeleton("score", std::move(config), flags.seed);
    report["results"].push_back(subset_record(score));
    report["stats"]["evaluated_nodes"] = 1;
    report["stats"]["pruned_nodes"] = 0;
    report["timing_seconds"] = seconds_since(start);
    emit_report(report, flags.output);
    return 0;
}

int run_select(const DataFlags& flags, std::size_t max_dim, std::size_t top_k,
               const std::string& mode) {
    const auto start = std::chrono::steady_clock::now();
    const tcmi::Dataset dataset = apply_augment(tcmi::load_csv(flags.data, flags.target),
                                                flags.augment);
    tcmi::SearchConfig config;
    config.max_dim = max_dim == 0 ? std::min<std::size_t>(2, dataset.n_features()) : max_dim;
    config.top_k = top_k;
    config.grid = parse_grid(flags.grid);
    config.shuffle_correction = flags.shuffle_correction;
    config.seed = flags.seed;

    const tcmi::SearchResult result = mode == "exhaustive"
                                          ? tcmi::exhaustive(dataset, config)
                                          : tcmi::branch_and_bound(dataset, config);

    if (flags.output == "tsv") {
        print_subset_tsv(std::cout, result.ranked);
        return 0;
    }
    ordered_json echo = config_echo(flags);
    echo["max_dim"] = config.max_dim;
    echo["top_k"] = config.top_k;
    echo["mode"] = mode;
    ordered_json report = report_skeleton("select", std::move(echo), flags.seed);
    for (const auto& score : result.ranked) {
        report["results"].push_back(subset_record(score));
    }
    report["stats"]["evaluated_nodes"] = result.evaluated_nodes;
    report["stats"]["pruned_nodes"] = result.pruned_nodes;
    report["timing_seconds"] = seconds_since(start);
    emit_report(report, flags.output);
    return 0;
}

int run_generate(const std::string& family, std::size_t n, long param, std::uint64_t seed,
                 const std::string& out_path) {
    tcmi::Dataset dataset = [&] {
        if (family == "friedman1") {
            return tcmi::friedman1(n, seed);
        }
        if (family == "friedman1-correlated") {
            return tcmi::friedman1(n, seed, /*include_correlated=*/true);
        }
        if (family == "bivariate") {
            return tcmi::bivariate_normal_suite(n, seed);
        }
        // Single-column families become a two-column set: the family curve
        // is the lone feature "x", scored against the uniform ramp target
        // "y" it discretizes or perturbs.
        tcmi::Dataset::Column x = tcmi::generate({family, n, param, seed});
        tcmi::Dataset::Column y = tcmi::generate({"linear", n, 0, 0});
        std::vector<tcmi::Dataset::NamedColumn> features;
        features.emplace_back("x", std::move(x));
        return tcmi::Dataset("y", std::move(y), std::move(features));
    }();

    if (out_path.empty() || out_path == "-") {
        tcmi::save_csv(dataset, std::cout);
    } else {
        tcmi::save_csv(dataset, out_path);
    }
    return 0;
}

int run_power(const std::string& family, std::size_t n, const std::string& subset_csv,
              const std::string& sigma_csv, double gamma, std::size_t repeats,
              std::uint64_t seed, const std::string& grid, const std::string& output) {
    const auto start = std::chrono::steady_clock::now();
    std::function<tcmi::Dataset(std::uint64_t)> builder;
    if (family == "friedman1") {
        builder = [n](std::uint64_t s) { return tcmi::friedman1(n, s); };
    } else if (family == "bivariate") {
        builder = [n](std::uint64_t s) { return tcmi::bivariate_normal_suite(n, s); };
    } else {
        throw tcmi::input_error("unknown suite: " + family);
    }

    const tcmi::PowerReport power =
        tcmi::power_analysis(builder, split_names(subset_csv), split_reals(sigma_csv), gamma,
                             repeats, seed, parse_grid(grid));

    if (output == "tsv") {
        std::cout << "sigma\tpower\tmean_score\n";
        for (std::size_t i = 0; i < power.sigma_levels.size(); ++i) {
            std::cout << format_real(power.sigma_levels[i]) << '\t'
                      << format_real(power.power[i]) << '\t' << format_real(power.mean_score[i])
                      << '\n';
        }
        return 0;
    }
    ordered_json config;
    config["family"] = family;
    config["n"] = n;
    config["subset"] = split_names(subset_csv);
    config["gamma"] = gamma;
    config["repeats"] = repeats;
    config["grid"] = grid;
    ordered_json report = report_skeleton("power", std::move(config), seed);
    for (std::size_t i = 0; i < power.sigma_levels.size(); ++i) {
        ordered_json rec;
        rec["sigma"] = power.sigma_levels[i];
        rec["power"] = power.power[i];
        rec["mean_score"] = power.mean_score[i];
        report["results"].push_back(std::move(rec));
    }
    report["stats"]["independence_percentile"] = power.independence_percentile;
    report["stats"]["gamma"] = power.gamma;
    report["timing_seconds"] = seconds_since(start);
    emit_report(report, output);
    return 0;
}

int run_baseline_check(const DataFlags& flags, const std::string& subset_csv,
                       std::size_t permutations, std::size_t threads) {
    const auto start = std::chrono::steady_clock::now();
    const tcmi::Dataset dataset = apply_augment(tcmi::load_csv(flags.data, flags.target),
                                                flags.augment);
    const std::vector<std::string> subset = split_names(subset_csv);
    const std::vector<std::size_t> columns = dataset.resolve_subset(subset);
    const tcmi::GridStrategy grid = parse_grid(flags.grid);

    tcmi::BaselineEngine engine(dataset);
    const double closed_f = engine.subset_baseline(columns, tcmi::Orientation::forward);
    const double closed_r = engine.subset_baseline(columns, tcmi::Orientation::reverse);
    const tcmi::BaselineEstimate mc_f = tcmi::expected_fraction_mc(
        dataset, subset, grid, tcmi::Orientation::forward, permutations, flags.seed, threads);
    const tcmi::BaselineEstimate mc_r = tcmi::expected_fraction_mc(
        dataset, subset, grid, tcmi::Orientation::reverse, permutations, flags.seed, threads);

    auto z_score = [](double closed, const tcmi::BaselineEstimate& mc) {
        return mc.standard_error > 0.0 ? (mc.value - closed) / mc.standard_error : 0.0;
    };

    if (flags.output == "tsv") {
        std::cout << "orientation\tclosed_form\tmonte_carlo\tstandard_error\tz\n"
                  << "forward\t" << format_real(closed_f) << '\t' << format_real(mc_f.value)
                  << '\t' << format_real(mc_f.standard_error) << '\t'
                  << format_real(z_score(closed_f, mc_f)) << '\n'
                  << "reverse\t" << format_real(closed_r) << '\t' << format_real(mc_r.value)
                  << '\t' << format_real(mc_r.standard_error) << '\t'
                  << format_real(z_score(closed_r, mc_r)) << '\n';
        return 0;
    }
    ordered_json config = config_echo(flags);
    config["subset"] = subset;
    config["permutations"] = permutations;
    ordered_json report = report_skeleton("baseline-check", std::move(config), flags.seed);
    ordered_json rec;
    rec["subset"] = subset;
    rec["baseline_forward"] = closed_f;
    rec["baseline_reverse"] = closed_r;
    rec["mc_forward"] = mc_f.value;
    rec["mc_forward_se"] = mc_f.standard_error;
    rec["mc_reverse"] = mc_r.value;
    rec["mc_reverse_se"] = mc_r.standard_error;
    rec["z_forward"] = z_score(closed_f, mc_f);
    rec["z_reverse"] = z_score(closed_r, mc_r);
    report["results"].push_back(std::move(rec));
    report["stats"]["permutations"] = permutations;
    report["timing_seconds"] = seconds_since(start);
    emit_report(report, flags.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total cumulative mutual information scoring and subset selection"};
    app.require_subcommand(1);

    // --- score ---
    DataFlags score_flags;
    std::string score_subset;
    CLI::App* score = app.add_subcommand("score", "score one explicit feature subset");
    add_data_flags(score, score_flags);
    score->add_option("--subset", score_subset, "comma list of feature names")->required();

    // --- select ---
    DataFlags select_flags;
    std::size_t max_dim = 0; // 0 = default min(2, feature count)
    std::size_t top_k = 10;
    std::string mode = "bnb";
    CLI::App* select = app.add_subcommand("select", "ranked feature-subset search");
    add_data_flags(select, select_flags);
    select->add_option("--max-dim", max_dim, "largest subset size to visit");
    select->add_option("--top-k", top_k, "ranked list length");
    select->add_option("--mode", mode, "search mode: bnb|exhaustive")
        ->check(CLI::IsMember({"bnb", "exhaustive"}));

    // --- generate ---
    std::string family;
    std::size_t gen_n = 200;
    long gen_param = 2;
    std::uint64_t gen_seed = 0;
    std::string out_path = "-";
    CLI::App* generate = app.add_subcommand("generate", "emit a synthetic dataset as CSV");
    generate
        ->add_option("--family", family,
                     "one of: linear, exponential, step, sawtooth, constant, uniform_random, "
                     "normal, exponential_dist, logistic, triangular, laplace, rayleigh, "
                     "weibull, poisson, friedman1, friedman1-correlated, bivariate")
        ->required();
    generate->add_option("--n", gen_n, "sample count");
    generate->add_option("--param", gen_param, "step width / sawtooth levels / poisson rate");
    generate->add_option("--seed", gen_seed, "seed for stochastic families");
    generate->add_option("--out", out_path, "output CSV path, '-' for stdout");

    // --- power ---
    std::string power_family = "friedman1";
    std::size_t power_n = 100;
    std::string power_subset;
    std::string sigma_csv = "0,0.2,0.4,0.6,0.8,1";
    double gamma = 0.95;
    std::size_t repeats = 100;
    std::uint64_t power_seed = 0;
    std::string power_grid = "sample";
    std::string power_output = "json";
    CLI::App* power = app.add_subcommand("power", "noise-power curve for a subset");
    power->add_option("--family", power_family, "suite: friedman1|bivariate");
    power->add_option("--n", power_n, "sample count per repeat");
    power->add_option("--subset", power_subset, "comma list of feature names")->required();
    power->add_option("--sigma", sigma_csv, "comma list of noise levels");
    power->add_option("--gamma", gamma, "independence percentile in (0, 1)");
    power->add_option("--repeats", repeats, "repeats per noise level (>= 50)");
    power->add_option("--seed", power_seed, "seed for every stochastic path");
    power->add_option("--grid", power_grid, "grid strategy: sample|full")
        ->check(CLI::IsMember({"sample", "full"}));
    power->add_option("--output", power_output, "report format: json|tsv")
        ->check(CLI::IsMember({"json", "tsv"}));

    // --- baseline-check ---
    DataFlags check_flags;
    std::string check_subset;
    std::size_t permutations = 1000;
    std::size_t threads = 0; // 0 = machine parallelism
    CLI::App* check = app.add_subcommand("baseline-check",
                                         "closed-form baseline vs Monte Carlo permutations");
    add_data_flags(check, check_flags);
    check->add_option("--subset", check_subset, "comma list of feature names")->required();
    check->add_option("--repeats", permutations, "Monte Carlo permutation count");
    check->add_option("--threads", threads, "worker count, 0 = machine parallelism");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (score->parsed()) {
            return run_score(score_flags, score_subset);
        }
        if (select->parsed()) {
            return run_select(select_flags, max_dim, top_k, mode);
        }
        if (generate->parsed()) {
            return run_generate(family, gen_n, gen_param, gen_seed, out_path);
        }
        if (power->parsed()) {
            return run_power(power_family, power_n, power_subset, sigma_csv, gamma, repeats,
                             power_seed, power_grid, power_output);
        }
        if (check->parsed()) {
            return run_baseline_check(check_flags, check_subset, permutations, threads);
        }
    } catch (const tcmi::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tcmi::degenerate_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const tcmi::budget_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
