#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tcmi/dataset.hpp"
#include "tcmi/estimators.hpp"

namespace tcmi {

/// One synthetic column.  Kinds:
///   linear         i/(n-1)
///   exponential    (exp(linear)-1)/(e-1)
///   step           linear snapped so each value repeats `param` times
///   sawtooth       `param`-level ramp repeated across the index range
///   uniform_random U(0,1)
///   constant       all zeros
///   normal, logistic, triangular, laplace, rayleigh, weibull,
///   exponential_dist, poisson
///                  seeded draws standardized to zero mean / unit variance
///                  (poisson uses rate `param`, weibull shape 1.5)
struct GeneratorSpec {
    std::string kind;
    std::size_t n = 0;
    long param = 0;
    std::uint64_t seed = 0;
};

std::vector<double> generate(const GeneratorSpec& spec);

/// Benchmark regression surface on uniform inputs:
///   Y = 10 sin(pi X1 X2) + 20 (X3 - 1/2)^2 + 10 X4 + 5 X5 + eps,
/// eps ~ N(0, epsilon_sigma); X6..X10 are irrelevant uniforms, and
/// include_correlated appends X11..X14 = X1..X4 + N(0, 0.01).
Dataset friedman1(std::size_t n, std::uint64_t seed, bool include_correlated = false,
                  double epsilon_sigma = 1.0);

/// Needle-in-a-haystack suite: features x, y from a standard bivariate
/// normal with correlation 1/2, the target is the joint density value at
/// each sample, plus eight standardized distractor columns (normal,
/// exponential, logistic, triangular, uniform, laplace, rayleigh, weibull).
Dataset bivariate_normal_suite(std::size_t n, std::uint64_t seed);

struct PowerReport {
    std::vector<double> sigma_levels;
    std::vector<double> power;      // one entry per sigma level
    std::vector<double> mean_score; // mean selection score per sigma level
    double independence_percentile = 0.0;
    double gamma = 0.0;
};

/// Statistical power of the selection score against the independence null.
/// The null distribution scores `repeats` independently drawn uniform
/// datasets of the same shape; per sigma level the builder's dataset is
/// redrawn `repeats` times with N(0, sigma) noise added to the target, and
/// power is the fraction of scores above the gamma percentile of the null.
PowerReport power_analysis(const std::function<Dataset(std::uint64_t)>& dataset_builder,
                           const std::vector<std::string>& subset,
                           std::vector<double> sigma_levels, double gamma, std::size_t repeats,
                           std::uint64_t seed, GridStrategy grid_strategy = GridStrategy::sample);

/// Squared Spearman rank correlation between two columns (average ranks over
/// ties).
double spearman_rho2(const std::vector<double>& a, const std::vector<double>& b);

} // namespace tcmi
