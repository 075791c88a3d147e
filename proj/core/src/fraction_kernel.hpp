#pragma once

// Library-internal kernel shared by the estimator, baseline, and scoring
// translation units.  Not installed.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tcmi::detail {

/// Distinct target levels with per-level gap weights w_i = (y_(i+1)-y_(i))/n
/// and marginal log terms L_i = ln(n/N_i); row_level maps each sample to its
/// level index.  Throws degenerate_error when the target is constant.
struct TargetLevels {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<double> w;
    std::vector<double> log_marginal;
    std::vector<std::uint32_t> row_level;
};

TargetLevels build_levels(const std::vector<double>& y);

/// One-orientation fraction score over explicit columns and grid points
/// (row-major, `dim` coordinates per point).
double fraction_one(const TargetLevels& levels, const std::vector<const std::vector<double>*>& cols,
                    const std::vector<double>& points, std::size_t dim);

/// Lexicographically sorted, deduplicated joint rows of the columns.
std::vector<double> sample_grid_points(const std::vector<const std::vector<double>*>& cols,
                                       std::size_t n_rows);

} // namespace tcmi::detail
