#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tcmi/dataset.hpp"
#include "tcmi/estimators.hpp"

namespace tcmi {

/// Fixed-marginals contingency view of a target/feature pair: rows are the
/// distinct sorted target values (multiplicities a_i), columns the distinct
/// feature values (multiplicities b_j); both marginals sum to n.
struct ContingencyLayout {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_marginals;
    std::vector<std::size_t> col_marginals;
    std::vector<double> sorted_values; // distinct target values, ascending

    std::size_t n() const;
};

/// Builds the layout from raw target and feature columns (equal length,
/// non-empty).
ContingencyLayout contingency_layout(const std::vector<double>& target,
                                     const std::vector<double>& feature);

/// Probability that the cumulative cell count at row i equals n_ij, given the
/// column marginal b_j and r distinct rows:
///     C(r-i, b_j-n_ij) * C(i-1, n_ij-1) / C(r-1, b_j-1).
/// Arguments use the 1-based row convention (1 <= i <= r).  Throws
/// input_error("infeasible cell count") when n_ij lies outside
/// [max(0, i + b_j - r), min(i, b_j)] or the layout shape is impossible.
double hypergeometric_weight(long long n_ij, long long i, long long b_j, long long r);

/// Expected gap to the next occupied row when a column holds b_j samples:
///     (1/Norm) * sum_{k=1}^{k_max} C(r-k-1, b_j-2) * (y_(i+k) - y_(i)),
/// k_max = min(n - b_j + 1, r - i).  Columns with b_j = 1 average the
/// remaining gaps uniformly (the combinatorial weight is undefined there).
/// Throws input_error("no gap beyond last value") when i >= r.
double expected_gap(std::size_t i, std::size_t b_j, const ContingencyLayout& layout);

enum class BaselineMethod { closed_form, monte_carlo };

struct BaselineEstimate {
    double value = 0.0;
    double standard_error = 0.0; // 0 for the closed form
    BaselineMethod method = BaselineMethod::closed_form;
    std::size_t permutations = 0; // 0 for the closed form
};

/// Expected clamped per-column information ratio under the permutation null:
/// the mean over uniform below-sets of size b of the ratio that fraction
/// scoring assigns to a grid column with that below-set, for the given target
/// values.  This is the per-column building block of expected_fraction.
/// Exact (streamed enumeration) when min(b, n-b) is small; otherwise a
/// moment-matched bivariate lognormal / Gaussian-tail approximation
/// (see docs/baseline.md).  Pass negated target values for the reverse
/// orientation.
double expected_column_ratio(const std::vector<double>& target, std::size_t b);

/// Closed-form expected fraction of cumulative information of a feature
/// subset under independent permutation of each feature (the chance
/// baseline).  For one feature the observed column layout is used exactly;
/// for larger subsets the joint below-count distribution is the chained
/// hypergeometric mixture over the feature profiles.  Depends only on the
/// target values and the feature rank profiles, not on the grid strategy.
/// Throws degenerate_error("degenerate target") on a constant target.
BaselineEstimate expected_fraction(const Dataset& dataset, const std::vector<std::string>& subset,
                                   const GridSpec& grid, Orientation orientation);

/// Monte Carlo permutation estimate of the same quantity: independently
/// permutes every feature column with seeded SplitMix64 streams, rebuilds the
/// grid, and recomputes the fraction score per realization.  Returns the mean
/// and its standard error.  Deterministic for a fixed seed, independent of
/// worker count (threads = 0 picks the machine parallelism).
BaselineEstimate expected_fraction_mc(const Dataset& dataset, const std::vector<std::string>& subset,
                                      GridStrategy strategy, Orientation orientation,
                                      std::size_t permutations, std::uint64_t seed,
                                      unsigned threads = 0);

/// Per-dataset closed-form baseline engine with memoization: per-column-size
/// expectations, mixture transition matrices, and per-subset results are all
/// cached, so repeated queries during subset search are cheap.  The dataset
/// must outlive the engine.  Not thread-safe; create one engine per thread.
class BaselineEngine {
public:
    explicit BaselineEngine(const Dataset& dataset);
    ~BaselineEngine();

    BaselineEngine(const BaselineEngine&) = delete;
    BaselineEngine& operator=(const BaselineEngine&) = delete;

    /// D0 for a subset given by canonical column indices.
    double subset_baseline(const std::vector<std::size_t>& columns, Orientation orientation);

    /// D0 for the pair {column, shuffled copy of column}: the baseline of the
    /// one-dimensional shuffle correction, which duplicates the feature's
    /// rank profile at dimension 2.
    double corrected_baseline(std::size_t column, Orientation orientation);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace tcmi
