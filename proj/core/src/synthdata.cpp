#include "tcmi/synthdata.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "tcmi/errors.hpp"
#include "tcmi/rng.hpp"
#include "tcmi/tcmi.hpp"

namespace tcmi {

namespace {

/// Runs fn(t) for every t in [0, count) on all hardware workers.  Each index
/// owns its output slot, so results are identical for any worker count.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t t = 0; t < count; ++t) {
            fn(t);
        }
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t t = cursor.fetch_add(1); t < count; t = cursor.fetch_add(1)) {
                fn(t);
            }
        });
    }
    for (auto& thread : pool) {
        thread.join();
    }
}

double standardized_uniform(SplitMix64& rng) { return (rng.uniform01() - 0.5) * 2.0 * std::sqrt(3.0); }

double standardized_exponential(SplitMix64& rng) { return rng.exponential() - 1.0; }

double standardized_logistic(SplitMix64& rng) {
    double u;
    do {
        u = rng.uniform01();
    } while (u == 0.0);
    return std::sqrt(3.0) / M_PI * std::log(u / (1.0 - u));
}

double standardized_triangular(SplitMix64& rng) {
    return (rng.uniform01() + rng.uniform01() - 1.0) * std::sqrt(6.0);
}

double standardized_laplace(SplitMix64& rng) {
    double u;
    do {
        u = rng.uniform01() - 0.5;
    } while (u == -0.5);
    const double scale = 1.0 / std::sqrt(2.0);
    return (u < 0 ? scale : -scale) * std::log(1.0 - 2.0 * std::abs(u));
}

double standardized_rayleigh(SplitMix64& rng) {
    const double raw = std::sqrt(-2.0 * std::log(rng.uniform01_open_low()));
    const double mean = std::sqrt(M_PI / 2.0);
    const double sd = std::sqrt((4.0 - M_PI) / 2.0);
    return (raw - mean) / sd;
}

double standardized_weibull(SplitMix64& rng) {
    constexpr double shape = 1.5;
    const double raw = std::pow(-std::log(rng.uniform01_open_low()), 1.0 / shape);
    const double mean = std::tgamma(1.0 + 1.0 / shape);
    const double sd = std::sqrt(std::tgamma(1.0 + 2.0 / shape) - mean * mean);
    return (raw - mean) / sd;
}

double standardized_poisson(SplitMix64& rng, double rate) {
    const double limit = std::exp(-rate);
    double p = 1.0;
    long k = 0;
    do {
        ++k;
        p *= rng.uniform01();
    } while (p > limit);
    return (static_cast<double>(k - 1) - rate) / std::sqrt(rate);
}

std::vector<double> linear_ramp(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

} // namespace

std::vector<double> generate(const GeneratorSpec& spec) {
    const std::size_t n = spec.n;
    if (spec.kind == "constant") {
        if (n < 1) {
            throw input_error("too few samples");
        }
        return std::vector<double>(n, 0.0);
    }
    if (n < 2) {
        throw input_error("too few samples");
    }

    if (spec.kind == "linear") {
        return linear_ramp(n);
    }
    if (spec.kind == "exponential") {
        std::vector<double> v = linear_ramp(n);
        for (double& x : v) {
            x = (std::exp(x) - 1.0) / (std::exp(1.0) - 1.0);
        }
        return v;
    }
    if (spec.kind == "step") {
        if (spec.param < 2) {
            throw input_error("invalid discretization parameter");
        }
        const std::size_t r = static_cast<std::size_t>(spec.param);
        const std::vector<double> ramp = linear_ramp(n);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = ramp[(i / r) * r];
        }
        return v;
    }
    if (spec.kind == "sawtooth") {
        if (spec.param < 2) {
            throw input_error("invalid discretization parameter");
        }
        const std::size_t levels = static_cast<std::size_t>(spec.param);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = static_cast<double>(i % levels) / static_cast<double>(levels - 1);
        }
        return v;
    }

    SplitMix64 rng(spec.seed);
    std::vector<double> v(n);
    if (spec.kind == "uniform_random") {
        for (double& x : v) {
            x = rng.uniform01();
        }
    } else if (spec.kind == "normal") {
        for (double& x : v) {
            x = rng.normal();
        }
    } else if (spec.kind == "exponential_dist") {
        for (double& x : v) {
            x = standardized_exponential(rng);
        }
    } else if (spec.kind == "logistic") {
        for (double& x : v) {
            x = standardized_logistic(rng);
        }
    } else if (spec.kind == "triangular") {
        for (double& x : v) {
            x = standardized_triangular(rng);
        }
    } else if (spec.kind == "laplace") {
        for (double& x : v) {
            x = standardized_laplace(rng);
        }
    } else if (spec.kind == "rayleigh") {
        for (double& x : v) {
            x = standardized_rayleigh(rng);
        }
    } else if (spec.kind == "weibull") {
        for (double& x : v) {
            x = standardized_weibull(rng);
        }
    } else if (spec.kind == "poisson") {
        if (spec.param < 1) {
            throw input_error("invalid rate parameter");
        }
        for (double& x : v) {
            x = standardized_poisson(rng, static_cast<double>(spec.param));
        }
    } else {
        throw input_error("unknown generator kind: " + spec.kind);
    }
    return v;
}

Dataset friedman1(std::size_t n, std::uint64_t seed, bool include_correlated,
                  double epsilon_sigma) {
    if (n < 1) {
        throw input_error("too few samples");
    }
    const std::size_t base_features = 10;
    std::vector<Dataset::NamedColumn> columns;
    columns.reserve(include_correlated ? 14 : 10);
    for (std::size_t f = 0; f < base_features; ++f) {
        SplitMix64 rng(derive_seed(seed, f + 1));
        Dataset::Column col(n);
        for (double& x : col) {
            x = rng.uniform01();
        }
        columns.emplace_back("X" + std::to_string(f + 1), std::move(col));
    }
    Dataset::Column y(n);
    SplitMix64 noise(derive_seed(seed, 100));
    for (std::size_t i = 0; i < n; ++i) {
        const double x1 = columns[0].second[i];
        const double x2 = columns[1].second[i];
        const double x3 = columns[2].second[i];
        const double x4 = columns[3].second[i];
        const double x5 = columns[4].second[i];
        y[i] = 10.0 * std::sin(M_PI * x1 * x2) + 20.0 * (x3 - 0.5) * (x3 - 0.5) + 10.0 * x4 +
               5.0 * x5 + epsilon_sigma * noise.normal();
    }
    if (include_correlated) {
        for (std::size_t f = 0; f < 4; ++f) {
            SplitMix64 rng(derive_seed(seed, 200 + f));
            Dataset::Column col(n);
            for (std::size_t i = 0; i < n; ++i) {
                col[i] = columns[f].second[i] + 0.01 * rng.normal();
            }
            columns.emplace_back("X" + std::to_string(base_features + f + 1), std::move(col));
        }
    }
    return Dataset("Y", std::move(y), std::move(columns));
}

Dataset bivariate_normal_suite(std::size_t n, std::uint64_t seed) {
    if (n < 2) {
        throw input_error("too few samples");
    }
    SplitMix64 joint(derive_seed(seed, 0));
    Dataset::Column x(n), yv(n), target(n);
    constexpr double rho = 0.5;
    const double chol = std::sqrt(1.0 - rho * rho);
    const double det = 1.0 - rho * rho;
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = joint.normal();
        const double z2 = joint.normal();
        x[i] = z1;
        yv[i] = rho * z1 + chol * z2;
        const double quad = (x[i] * x[i] - 2.0 * rho * x[i] * yv[i] + yv[i] * yv[i]) / det;
        target[i] = std::exp(-0.5 * quad) / (2.0 * M_PI * std::sqrt(det));
    }

    std::vector<Dataset::NamedColumn> columns;
    columns.emplace_back("x", std::move(x));
    columns.emplace_back("y", std::move(yv));
    const char* names[] = {"normal",   "exponential", "logistic", "triangular",
                           "uniform",  "laplace",     "rayleigh", "weibull"};
    for (std::size_t k = 0; k < 8; ++k) {
        SplitMix64 rng(derive_seed(seed, k + 1));
        Dataset::Column col(n);
        for (double& v : col) {
            switch (k) {
                case 0: v = rng.normal(); break;
                case 1: v = standardized_exponential(rng); break;
                case 2: v = standardized_logistic(rng); break;
                case 3: v = standardized_triangular(rng); break;
                case 4: v = standardized_uniform(rng); break;
                case 5: v = standardized_laplace(rng); break;
                case 6: v = standardized_rayleigh(rng); break;
                default: v = standardized_weibull(rng); break;
            }
        }
        columns.emplace_back(names[k], std::move(col));
    }
    return Dataset("target", std::move(target), std::move(columns));
}

PowerReport power_analysis(const std::function<Dataset(std::uint64_t)>& dataset_builder,
                           const std::vector<std::string>& subset,
                           std::vector<double> sigma_levels, double gamma, std::size_t repeats,
                           std::uint64_t seed, GridStrategy grid_strategy) {
    if (gamma <= 0.0 || gamma >= 1.0) {
        throw input_error("gamma must be in (0, 1)");
    }
    if (repeats < 50) {
        throw input_error("too few repeats");
    }
    const Dataset probe = dataset_builder(derive_seed(seed, 0xD5, 0));
    probe.resolve_subset(subset);
    const std::size_t n = probe.n_rows();
    const std::size_t d = subset.size();

    // Null distribution: the same subset shape on independently drawn
    // uniform data.  Each repeat derives its own streams, so distributing
    // repeats across workers cannot change any value.
    std::vector<double> null_scores(repeats);
    parallel_for_index(repeats, [&](std::size_t t) {
        SplitMix64 target_rng(derive_seed(seed, 0xA0, t));
        Dataset::Column y(n);
        for (double& v : y) {
            v = target_rng.uniform01();
        }
        std::vector<Dataset::NamedColumn> cols;
        cols.reserve(d);
        for (std::size_t k = 0; k < d; ++k) {
            SplitMix64 rng(derive_seed(seed, 0xA10000 + k, t));
            Dataset::Column col(n);
            for (double& v : col) {
                v = rng.uniform01();
            }
            cols.emplace_back(subset[k], std::move(col));
        }
        Dataset null_ds("__null_target", std::move(y), std::move(cols));
        SubsetScorer scorer(null_ds, {.grid = grid_strategy});
        null_scores[t] = scorer.score(subset).selection_score;
    });
    std::sort(null_scores.begin(), null_scores.end());
    const double pos = gamma * static_cast<double>(repeats - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, repeats - 1);
    const double frac = pos - static_cast<double>(lo);
    const double percentile = null_scores[lo] * (1.0 - frac) + null_scores[hi] * frac;

    PowerReport report;
    report.gamma = gamma;
    report.independence_percentile = percentile;
    report.sigma_levels = std::move(sigma_levels);
    report.power.reserve(report.sigma_levels.size());
    report.mean_score.reserve(report.sigma_levels.size());

    for (std::size_t si = 0; si < report.sigma_levels.size(); ++si) {
        const double sigma = report.sigma_levels[si];
        std::vector<double> scores(repeats);
        parallel_for_index(repeats, [&](std::size_t t) {
            Dataset base = dataset_builder(derive_seed(seed, 0xB000 + si, t));
            Dataset::Column y = base.target();
            if (sigma > 0.0) {
                SplitMix64 noise(derive_seed(seed, 0xC000 + si, t));
                for (double& v : y) {
                    v += sigma * noise.normal();
                }
            }
            std::vector<Dataset::NamedColumn> cols;
            cols.reserve(base.n_features());
            for (std::size_t f = 0; f < base.n_features(); ++f) {
                cols.emplace_back(base.feature_name(f), base.feature(f));
            }
            Dataset noisy(base.target_name(), std::move(y), std::move(cols));
            SubsetScorer scorer(noisy, {.grid = grid_strategy});
            scores[t] = scorer.score(subset).selection_score;
        });
        std::size_t wins = 0;
        double mean = 0.0;
        for (const double score : scores) {
            mean += score;
            if (score > percentile) {
                ++wins;
            }
        }
        report.power.push_back(static_cast<double>(wins) / static_cast<double>(repeats));
        report.mean_score.push_back(mean / static_cast<double>(repeats));
    }
    return report;
}

double spearman_rho2(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw input_error("empty column");
    }
    if (a.size() != b.size()) {
        throw input_error("column length mismatch");
    }
    const std::size_t n = a.size();
    auto average_ranks = [n](const std::vector<double>& v) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
        std::vector<double> ranks(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) {
                ++j;
            }
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k) {
                ranks[idx[k]] = avg;
            }
            i = j + 1;
        }
        return ranks;
    };
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;
    }
    const double rho = sab / std::sqrt(saa * sbb);
    return rho * rho;
}

} // namespace tcmi
