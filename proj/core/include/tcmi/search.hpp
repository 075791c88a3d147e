#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tcmi/dataset.hpp"
#include "tcmi/estimators.hpp"
#include "tcmi/tcmi.hpp"

namespace tcmi {

enum class SearchMode { branch_and_bound, exhaustive };

/// Order in which features are appended when children of a node are
/// generated: descending single-feature selection score (default, usually
/// tightens the incumbent early) or the dataset's column order.
enum class FeatureOrder { univariate_score_desc, input_order };

struct SearchConfig {
    std::size_t max_dim = 2;
    std::size_t top_k = 10;
    GridStrategy grid = GridStrategy::sample;
    SearchMode mode = SearchMode::branch_and_bound;
    FeatureOrder feature_order = FeatureOrder::univariate_score_desc;
    bool shuffle_correction = false;
    std::uint64_t seed = 0;
    /// Cap on the exhaustive lattice size.
    std::size_t node_budget = 1'000'000;
    /// Diagnostic hook fired when a subtree is pruned: receives the subtree
    /// root's features, the features that would have extended it, and the
    /// incumbent selection score at prune time.  Lets tests replay every
    /// prune against an exhaustive oracle.
    std::function<void(const std::vector<std::string>& node,
                       const std::vector<std::string>& extensions, double incumbent)>
        on_prune;
};

struct SearchResult {
    std::vector<SubsetScore> ranked; // fully evaluated subsets, best first, truncated to top_k
    std::size_t evaluated_nodes = 0;
    std::size_t pruned_nodes = 0;
    SubsetScore optimal;
};

/// Unadjusted objective min(D-forward, D-reverse) of a subset.
double criterion(const Dataset& dataset, const std::vector<std::string>& subset,
                 GridStrategy grid_strategy);

/// Pruning bound 1 - min(baseline-forward, baseline-reverse); nonincreasing
/// along subset chains, so it bounds every superset's adjusted score.
double bound(const Dataset& dataset, const std::vector<std::string>& subset,
             GridStrategy grid_strategy);

/// Depth-first branch and bound over the subset lattice up to max_dim.
/// Children append features strictly after the node's last feature in the
/// configured order, so every subset is generated once.  A node's subtree is
/// expanded only when its objective lies below its bound and the bound
/// exceeds the incumbent selection score; both tests only discard subtrees
/// whose scores provably cannot beat the incumbent.  Returns the optimal
/// subset and the ranked list of all fully evaluated subsets.
SearchResult branch_and_bound(const Dataset& dataset, const SearchConfig& config);

/// Scores every subset of cardinality <= max_dim.  Throws
/// budget_error("exhaustive search too large") when the lattice exceeds the
/// node budget.
SearchResult exhaustive(const Dataset& dataset, const SearchConfig& config);

} // namespace tcmi
