#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tcmi/dataset.hpp"

namespace tcmi {

/// Direction of the cumulative probability: forward accumulates P(Z <= z),
/// reverse accumulates the complementary P(Z >= z).
enum class Orientation { forward, reverse };

/// Threshold-point layout for the conditional-fraction sum: `sample` uses the
/// deduplicated observed joint rows, `full` the Cartesian product of each
/// feature's distinct values.  Both coincide for a single feature.
enum class GridStrategy { sample, full };

/// Distinct values of a column together with cumulative sample counts under
/// an orientation.  Forward: counts of samples <= value (strictly increasing,
/// last = n).  Reverse: counts of samples >= value (strictly decreasing,
/// first = n).
struct SortedProfile {
    std::vector<double> values;
    std::vector<std::size_t> cum_counts;
};

/// Threshold points for a feature subset.  `columns` are dataset feature
/// indices in canonical (dataset) order; `points` is row-major with
/// `columns.size()` coordinates per point, sorted lexicographically.
struct GridSpec {
    std::vector<std::size_t> columns;
    GridStrategy strategy = GridStrategy::sample;
    std::vector<double> points;

    std::size_t dim() const { return columns.size(); }
    std::size_t size() const { return columns.empty() ? 0 : points.size() / columns.size(); }
};

/// Unadjusted fraction-of-cumulative-information scores for both
/// orientations; each lies in [0, 1].
struct FractionPair {
    double d_forward = 0.0;
    double d_reverse = 0.0;
};

/// Distinct values & cumulative counts of `values` under `orientation`.
/// Throws input_error("empty column") on empty input.
SortedProfile sorted_profile(const std::vector<double>& values, Orientation orientation);

/// Empirical cumulative entropy
///     H = -sum_{i=1}^{k-1} (z_(i+1) - z_(i)) * (N_i/n) * ln(N_i/n)  >=  0
/// over the distinct sorted values z_(i) with cumulative counts N_i; the
/// reverse orientation uses complementary counts.  Zero for a constant
/// column.  Throws input_error("empty column") on empty input.
double cumulative_entropy(const std::vector<double>& values, Orientation orientation);

/// Builds the threshold grid for a feature subset.  Throws
/// input_error("no such column: <name>") for unknown names and
/// budget_error("full grid too large") when a full Cartesian grid would
/// exceed an internal point cap.
GridSpec build_grid(const Dataset& dataset, const std::vector<std::string>& subset,
                    GridStrategy strategy);

/// Fraction of cumulative information retained by conditioning on the subset,
///     D = 1 - (1/m) sum_j ratio_j,
/// where ratio_j compares the conditional to the marginal cumulative-entropy
/// mass below grid point j (see docs/estimator.md for the exact per-column
/// formula).  Grid points with an empty below-set or a zero denominator
/// contribute ratio 1 (no information).  Computes both orientations; the
/// reverse score equals the forward score of the negated target and features.
/// Throws degenerate_error("degenerate target: cumulative entropy is zero")
/// when the target has a single distinct value.
FractionPair fraction_scores(const Dataset& dataset, const std::vector<std::string>& subset,
                             const GridSpec& grid);

} // namespace tcmi
