#include "tcmi/tcmi.hpp"

#include <algorithm>
#include <map>

#include "fraction_kernel.hpp"
#include "tcmi/errors.hpp"
#include "tcmi/rng.hpp"

namespace tcmi {

namespace {

std::vector<double> negated_copy(const std::vector<double>& values) {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](double v) { return -v; });
    return out;
}

} // namespace

struct SubsetScorer::Impl {
    const Dataset* data = nullptr;
    Options options;
    BaselineEngine engine;
    detail::TargetLevels forward_levels;
    detail::TargetLevels reverse_levels;
    std::vector<double> neg_target;
    std::map<std::vector<std::size_t>, SubsetScore> memo;
    std::map<std::size_t, std::vector<double>> shuffled; // per-column shuffled copy

    explicit Impl(const Dataset& dataset, Options opts)
        : data(&dataset),
          options(opts),
          engine(dataset),
          forward_levels(detail::build_levels(dataset.target())),
          neg_target(negated_copy(dataset.target())) {
        reverse_levels = detail::build_levels(neg_target);
    }

    const std::vector<double>& shuffled_copy(std::size_t column) {
        auto it = shuffled.find(column);
        if (it != shuffled.end()) {
            return it->second;
        }
        std::vector<double> copy = data->feature(column);
        SplitMix64 rng(derive_seed(options.seed, 0x5AFEC0DEull, column));
        rng.shuffle(copy);
        return shuffled.emplace(column, std::move(copy)).first->second;
    }

    /// Fraction pair over explicit forward-orientation columns; the grid is
    /// built from those columns with the configured strategy.
    FractionPair fraction_pair(const std::vector<const std::vector<double>*>& cols) {
        const std::size_t d = cols.size();
        FractionPair pair;
        const std::vector<double> points = detail::sample_grid_points(cols, data->n_rows());
        pair.d_forward = detail::fraction_one(forward_levels, cols, points, d);
        std::vector<std::vector<double>> neg(d);
        std::vector<const std::vector<double>*> neg_cols(d);
        for (std::size_t c = 0; c < d; ++c) {
            neg[c] = negated_copy(*cols[c]);
            neg_cols[c] = &neg[c];
        }
        std::vector<double> neg_points(points.size());
        std::transform(points.begin(), points.end(), neg_points.begin(),
                       [](double v) { return -v; });
        pair.d_reverse = detail::fraction_one(reverse_levels, neg_cols, neg_points, d);
        return pair;
    }

    SubsetScore compute(const std::vector<std::size_t>& columns) {
        SubsetScore score;
        score.subset = data->subset_names(columns);
        score.n = data->n_rows();

        const bool corrected = options.shuffle_correction && columns.size() == 1;
        if (corrected) {
            const auto& original = data->feature(columns[0]);
            const auto& copy = shuffled_copy(columns[0]);
            score.pair = assemble({&original, &copy});
            score.pair.baseline_forward = engine.corrected_baseline(columns[0], Orientation::forward);
            score.pair.baseline_reverse = engine.corrected_baseline(columns[0], Orientation::reverse);
        } else {
            std::vector<const std::vector<double>*> cols;
            cols.reserve(columns.size());
            for (std::size_t c : columns) {
                cols.push_back(&data->feature(c));
            }
            score.pair = assemble(cols);
            score.pair.baseline_forward = engine.subset_baseline(columns, Orientation::forward);
            score.pair.baseline_reverse = engine.subset_baseline(columns, Orientation::reverse);
        }

        const double adj_f = score.pair.d_forward - score.pair.baseline_forward;
        const double adj_r = score.pair.d_reverse - score.pair.baseline_reverse;
        score.selection_score = std::min(adj_f, adj_r);
        score.assessment_score = 0.5 * (adj_f + adj_r);
        return score;
    }

    ScorePair assemble(const std::vector<const std::vector<double>*>& cols) {
        ScorePair pair;
        if (options.grid == GridStrategy::sample) {
            const FractionPair f = fraction_pair(cols);
            pair.d_forward = f.d_forward;
            pair.d_reverse = f.d_reverse;
            return pair;
        }
        // Full grid: Cartesian product of per-column distinct values.
        std::vector<std::vector<double>> axes(cols.size());
        std::size_t total = 1;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::vector<double> ax = *cols[c];
            std::sort(ax.begin(), ax.end());
            ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
            if (total > 4'000'000 / std::max<std::size_t>(ax.size(), 1)) {
                throw budget_error("full grid too large");
            }
            total *= ax.size();
            axes[c] = std::move(ax);
        }
        const std::size_t d = cols.size();
        std::vector<double> points;
        points.reserve(total * d);
        std::vector<std::size_t> odo(d, 0);
        for (std::size_t j = 0; j < total; ++j) {
            for (std::size_t c = 0; c < d; ++c) {
                points.push_back(axes[c][odo[c]]);
            }
            for (std::size_t c = d; c-- > 0;) {
                if (++odo[c] < axes[c].size()) {
                    break;
                }
                odo[c] = 0;
            }
        }
        pair.d_forward = detail::fraction_one(forward_levels, cols, points, d);
        std::vector<std::vector<double>> neg(d);
        std::vector<const std::vector<double>*> neg_cols(d);
        for (std::size_t c = 0; c < d; ++c) {
            neg[c] = negated_copy(*cols[c]);
            neg_cols[c] = &neg[c];
        }
        std::vector<double> neg_points(points.size());
        std::transform(points.begin(), points.end(), neg_points.begin(),
                       [](double v) { return -v; });
        pair.d_reverse = detail::fraction_one(reverse_levels, neg_cols, neg_points, d);
        return pair;
    }
};

SubsetScorer::SubsetScorer(const Dataset& dataset) : SubsetScorer(dataset, Options{}) {}

SubsetScorer::SubsetScorer(const Dataset& dataset, Options options)
    : impl_(std::make_unique<Impl>(dataset, options)) {}

SubsetScorer::~SubsetScorer() = default;

SubsetScore SubsetScorer::score(const std::vector<std::string>& subset) {
    return score(impl_->data->resolve_subset(subset));
}

SubsetScore SubsetScorer::score(const std::vector<std::size_t>& columns) {
    auto it = impl_->memo.find(columns);
    if (it != impl_->memo.end()) {
        return it->second;
    }
    SubsetScore score = impl_->compute(columns);
    impl_->memo.emplace(columns, score);
    return score;
}

const Dataset& SubsetScorer::dataset() const { return *impl_->data; }
const SubsetScorer::Options& SubsetScorer::options() const { return impl_->options; }

SubsetScore score_subset(const Dataset& dataset, const std::vector<std::string>& subset,
                         GridStrategy grid_strategy) {
    SubsetScorer scorer(dataset, {.grid = grid_strategy});
    return scorer.score(subset);
}

bool ranks_before(const SubsetScore& a, const SubsetScore& b) {
    if (a.selection_score != b.selection_score) {
        return a.selection_score > b.selection_score;
    }
    if (a.subset.size() != b.subset.size()) {
        return a.subset.size() < b.subset.size();
    }
    return a.subset < b.subset;
}

std::vector<SubsetScore> rank_table_ordering(std::vector<SubsetScore> scores) {
    std::stable_sort(scores.begin(), scores.end(), ranks_before);
    return scores;
}

} // namespace tcmi
