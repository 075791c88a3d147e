#include "tcmi/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tcmi/errors.hpp"

namespace tcmi {

namespace {

/// Number of subsets in the (ordered-children) subtree below a node whose
/// last feature sits at `position` of `n_features` with `depth` features
/// already chosen: sum_j C(remaining, j) for j = 1..max_dim-depth.
std::size_t subtree_size(std::size_t position, std::size_t depth, std::size_t n_features,
                         std::size_t max_dim) {
    const std::size_t remaining = n_features - 1 - position;
    std::size_t total = 0;
    double c = 1.0;
    for (std::size_t j = 1; j + depth <= max_dim && j <= remaining; ++j) {
        c = c * static_cast<double>(remaining - j + 1) / static_cast<double>(j);
        total += static_cast<std::size_t>(std::llround(c));
    }
    return total;
}

std::size_t lattice_size(std::size_t n_features, std::size_t max_dim, std::size_t cap) {
    double total = 0.0;
    double c = 1.0;
    for (std::size_t j = 1; j <= max_dim && j <= n_features; ++j) {
        c = c * static_cast<double>(n_features - j + 1) / static_cast<double>(j);
        total += c;
        if (total > static_cast<double>(cap)) {
            return cap + 1;
        }
    }
    return static_cast<std::size_t>(total);
}

void validate(const Dataset& dataset, const SearchConfig& config) {
    if (dataset.n_features() == 0) {
        throw input_error("empty feature set");
    }
    if (config.max_dim == 0 || config.max_dim > dataset.n_features()) {
        throw input_error("max_dim must be between 1 and the feature count");
    }
    if (config.top_k == 0) {
        throw input_error("top_k must be positive");
    }
    const auto& y = dataset.target();
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
        throw degenerate_error("degenerate target: cumulative entropy is zero");
    }
}

/// Feature positions in expansion order.
std::vector<std::size_t> feature_order(SubsetScorer& scorer, const SearchConfig& config,
                                       std::size_t n_features) {
    std::vector<std::size_t> order(n_features);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (config.feature_order == FeatureOrder::univariate_score_desc) {
        std::vector<double> single(n_features);
        for (std::size_t f = 0; f < n_features; ++f) {
            single[f] = scorer.score(std::vector<std::size_t>{f}).selection_score;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return single[a] > single[b]; });
    }
    return order;
}

struct Traversal {
    SubsetScorer& scorer;
    const SearchConfig& config;
    std::vector<std::size_t> order;
    bool prune_enabled = true;
    std::vector<SubsetScore> evaluated;
    std::size_t pruned = 0;
    SubsetScore incumbent;
    bool has_incumbent = false;

    void run() {
        std::vector<std::size_t> columns;
        descend(columns, 0, static_cast<std::size_t>(-1));
    }

    void descend(std::vector<std::size_t>& columns, std::size_t depth, std::size_t last_position) {
        for (std::size_t pos = last_position + 1; pos < order.size(); ++pos) {
            columns.push_back(order[pos]);
            std::vector<std::size_t> sorted_columns(columns);
            std::sort(sorted_columns.begin(), sorted_columns.end());
            const SubsetScore score = scorer.score(sorted_columns);
            evaluated.push_back(score);
            if (!has_incumbent || ranks_before(score, incumbent)) {
                incumbent = score;
                has_incumbent = true;
            }

            if (depth + 1 < config.max_dim && pos + 1 < order.size()) {
                bool expand = true;
                if (prune_enabled) {
                    // The subtree can hold a better subset only if the bound
                    // beats both the node's own adjusted score and the
                    // incumbent: adjusted scores of supersets never exceed
                    // the node's bound (baselines grow along chains).
                    const double node_bound =
                        1.0 - std::min(score.pair.baseline_forward, score.pair.baseline_reverse);
                    expand = score.selection_score < node_bound &&
                             node_bound > incumbent.selection_score;
                }
                if (expand) {
                    descend(columns, depth + 1, pos);
                } else {
                    pruned += subtree_size(pos, depth + 1, order.size(), config.max_dim);
                    if (config.on_prune) {
                        std::vector<std::string> extensions;
                        extensions.reserve(order.size() - pos - 1);
                        for (std::size_t p = pos + 1; p < order.size(); ++p) {
                            extensions.push_back(scorer.dataset().feature_name(order[p]));
                        }
                        config.on_prune(score.subset, extensions, incumbent.selection_score);
                    }
                }
            }
            columns.pop_back();
        }
    }
};

SearchResult run_search(const Dataset& dataset, const SearchConfig& config, bool prune) {
    validate(dataset, config);
    SubsetScorer scorer(dataset, {.grid = config.grid,
                                  .shuffle_correction = config.shuffle_correction,
                                  .seed = config.seed});
    Traversal traversal{scorer, config, feature_order(scorer, config, dataset.n_features()), prune};
    traversal.run();

    SearchResult result;
    result.evaluated_nodes = traversal.evaluated.size();
    result.pruned_nodes = traversal.pruned;
    result.ranked = rank_table_ordering(std::move(traversal.evaluated));
    result.optimal = result.ranked.front();
    if (result.ranked.size() > config.top_k) {
        result.ranked.resize(config.top_k);
    }
    return result;
}

} // namespace

double criterion(const Dataset& dataset, const std::vector<std::string>& subset,
                 GridStrategy grid_strategy) {
    const SubsetScore score = score_subset(dataset, subset, grid_strategy);
    return std::min(score.pair.d_forward, score.pair.d_reverse);
}

double bound(const Dataset& dataset, const std::vector<std::string>& subset,
             GridStrategy grid_strategy) {
    const SubsetScore score = score_subset(dataset, subset, grid_strategy);
    return 1.0 - std::min(score.pair.baseline_forward, score.pair.baseline_reverse);
}

SearchResult branch_and_bound(const Dataset& dataset, const SearchConfig& config) {
    return run_search(dataset, config, true);
}

SearchResult exhaustive(const Dataset& dataset, const SearchConfig& config) {
    const std::size_t size = lattice_size(dataset.n_features(), config.max_dim, config.node_budget);
    if (size > config.node_budget) {
        throw budget_error("exhaustive search too large");
    }
    return run_search(dataset, config, false);
}

} // namespace tcmi
