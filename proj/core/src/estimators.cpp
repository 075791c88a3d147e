#include "tcmi/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fraction_kernel.hpp"
#include "tcmi/errors.hpp"

namespace tcmi {

namespace {

constexpr std::size_t kMaxFullGridPoints = 4'000'000;

std::vector<double> negated(const std::vector<double>& values) {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](double v) { return -v; });
    return out;
}

SortedProfile forward_profile(const std::vector<double>& values) {
    SortedProfile profile;
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 == n || sorted[i + 1] != sorted[i]) {
            profile.values.push_back(sorted[i]);
            profile.cum_counts.push_back(i + 1);
        }
    }
    return profile;
}

} // namespace

namespace detail {

TargetLevels build_levels(const std::vector<double>& y) {
    TargetLevels lv;
    lv.n = y.size();
    const SortedProfile prof = forward_profile(y);
    lv.r = prof.values.size();
    if (lv.r < 2) {
        throw degenerate_error("degenerate target: cumulative entropy is zero");
    }
    const double n = static_cast<double>(lv.n);
    lv.w.resize(lv.r - 1);
    lv.log_marginal.resize(lv.r - 1);
    for (std::size_t i = 0; i + 1 < lv.r; ++i) {
        lv.w[i] = (prof.values[i + 1] - prof.values[i]) / n;
        lv.log_marginal[i] = std::log(n / static_cast<double>(prof.cum_counts[i]));
    }
    lv.row_level.resize(lv.n);
    for (std::size_t s = 0; s < lv.n; ++s) {
        lv.row_level[s] = static_cast<std::uint32_t>(
            std::lower_bound(prof.values.begin(), prof.values.end(), y[s]) - prof.values.begin());
    }
    return lv;
}

double fraction_one(const TargetLevels& lv, const std::vector<const std::vector<double>*>& cols,
                    const std::vector<double>& points, std::size_t dim) {
    const std::size_t n = lv.n;
    const std::size_t m = dim == 0 ? 0 : points.size() / dim;
    std::vector<std::uint32_t> level_counts(lv.r);
    double ratio_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double* pt = points.data() + j * dim;
        std::fill(level_counts.begin(), level_counts.end(), 0);
        std::size_t below = 0;
        for (std::size_t s = 0; s < n; ++s) {
            bool in = true;
            for (std::size_t c = 0; c < dim; ++c) {
                if ((*cols[c])[s] > pt[c]) {
                    in = false;
                    break;
                }
            }
            if (in) {
                ++level_counts[lv.row_level[s]];
                ++below;
            }
        }
        // Ratio of the below-set's conditional cumulative-entropy mass to the
        // marginal mass; empty below-sets and zero denominators carry no
        // information and contribute 1.  Levels summed in ascending order so
        // the result is independent of row order.
        double ratio = 1.0;
        if (below > 0) {
            const double b = static_cast<double>(below);
            double num = 0.0;
            double den = 0.0;
            std::size_t cum = 0;
            for (std::size_t i = 0; i + 1 < lv.r; ++i) {
                cum += level_counts[i];
                if (cum == 0) {
                    continue;
                }
                const double mass = static_cast<double>(cum);
                num += lv.w[i] * mass * std::log(b / mass);
                den += lv.w[i] * mass * lv.log_marginal[i];
            }
            if (den != 0.0) {
                ratio = std::min(num / den, 1.0);
            }
        }
        ratio_sum += ratio;
    }
    return m == 0 ? 0.0 : 1.0 - ratio_sum / static_cast<double>(m);
}

std::vector<double> sample_grid_points(const std::vector<const std::vector<double>*>& cols,
                                       std::size_t n_rows) {
    const std::size_t d = cols.size();
    std::vector<std::vector<double>> rows(n_rows, std::vector<double>(d));
    for (std::size_t s = 0; s < n_rows; ++s) {
        for (std::size_t c = 0; c < d; ++c) {
            rows[s][c] = (*cols[c])[s];
        }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::vector<double> points;
    points.reserve(rows.size() * d);
    for (const auto& row : rows) {
        points.insert(points.end(), row.begin(), row.end());
    }
    return points;
}

} // namespace detail

SortedProfile sorted_profile(const std::vector<double>& values, Orientation orientation) {
    if (values.empty()) {
        throw input_error("empty column");
    }
    SortedProfile profile = forward_profile(values);
    if (orientation == Orientation::reverse) {
        // Counts of samples >= value: complement of the below-previous count.
        const std::size_t n = values.size();
        std::vector<std::size_t> ge(profile.cum_counts.size());
        for (std::size_t i = 0; i < ge.size(); ++i) {
            ge[i] = i == 0 ? n : n - profile.cum_counts[i - 1];
        }
        profile.cum_counts = std::move(ge);
    }
    return profile;
}

double cumulative_entropy(const std::vector<double>& values, Orientation orientation) {
    if (values.empty()) {
        throw input_error("empty column");
    }
    if (orientation == Orientation::reverse) {
        // The complementary-count sum equals the forward sum on negated data.
        return cumulative_entropy(negated(values), Orientation::forward);
    }
    const SortedProfile prof = forward_profile(values);
    const double n = static_cast<double>(values.size());
    double h = 0.0;
    for (std::size_t i = 0; i + 1 < prof.values.size(); ++i) {
        const double p = static_cast<double>(prof.cum_counts[i]) / n;
        h -= (prof.values[i + 1] - prof.values[i]) * p * std::log(p);
    }
    return h;
}

GridSpec build_grid(const Dataset& dataset, const std::vector<std::string>& subset,
                    GridStrategy strategy) {
    GridSpec grid;
    grid.columns = dataset.resolve_subset(subset);
    grid.strategy = strategy;
    const std::size_t d = grid.columns.size();

    if (strategy == GridStrategy::sample) {
        std::vector<const std::vector<double>*> cols(d);
        for (std::size_t c = 0; c < d; ++c) {
            cols[c] = &dataset.feature(grid.columns[c]);
        }
        grid.points = detail::sample_grid_points(cols, dataset.n_rows());
        return grid;
    }

    std::vector<std::vector<double>> axes(d);
    std::size_t total = 1;
    for (std::size_t c = 0; c < d; ++c) {
        axes[c] = forward_profile(dataset.feature(grid.columns[c])).values;
        if (axes[c].size() > kMaxFullGridPoints / total) {
            throw budget_error("full grid too large");
        }
        total *= axes[c].size();
    }
    grid.points.reserve(total * d);
    std::vector<std::size_t> odo(d, 0);
    for (std::size_t j = 0; j < total; ++j) {
        for (std::size_t c = 0; c < d; ++c) {
            grid.points.push_back(axes[c][odo[c]]);
        }
        for (std::size_t c = d; c-- > 0;) {
            if (++odo[c] < axes[c].size()) {
                break;
            }
            odo[c] = 0;
        }
    }
    return grid;
}

FractionPair fraction_scores(const Dataset& dataset, const std::vector<std::string>& subset,
                             const GridSpec& grid) {
    const std::vector<std::size_t> columns = dataset.resolve_subset(subset);
    const std::size_t d = columns.size();

    const detail::TargetLevels forward_levels = detail::build_levels(dataset.target());
    std::vector<const std::vector<double>*> cols(d);
    for (std::size_t c = 0; c < d; ++c) {
        cols[c] = &dataset.feature(columns[c]);
    }

    FractionPair pair;
    pair.d_forward = detail::fraction_one(forward_levels, cols, grid.points, d);

    // Reverse orientation: the complementary-probability score equals the
    // forward score after negating target, features, and thresholds.
    const std::vector<double> neg_y = negated(dataset.target());
    const detail::TargetLevels reverse_levels = detail::build_levels(neg_y);
    std::vector<std::vector<double>> neg_cols_data(d);
    std::vector<const std::vector<double>*> neg_cols(d);
    for (std::size_t c = 0; c < d; ++c) {
        neg_cols_data[c] = negated(*cols[c]);
        neg_cols[c] = &neg_cols_data[c];
    }
    std::vector<double> neg_points(grid.points.size());
    std::transform(grid.points.begin(), grid.points.end(), neg_points.begin(),
                   [](double v) { return -v; });
    pair.d_reverse = detail::fraction_one(reverse_levels, neg_cols, neg_points, d);
    return pair;
}

} // namespace tcmi
