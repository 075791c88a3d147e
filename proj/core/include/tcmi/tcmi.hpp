#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tcmi/baseline.hpp"
#include "tcmi/dataset.hpp"
#include "tcmi/estimators.hpp"

namespace tcmi {

/// Raw and baseline fraction scores for both orientations.
struct ScorePair {
    double d_forward = 0.0;
    double d_reverse = 0.0;
    double baseline_forward = 0.0;
    double baseline_reverse = 0.0;
};

/// Scores of one feature subset: the selection score is the minimum
/// baseline-adjusted orientation, the assessment score the average of the
/// adjusted orientations.  Adjusted values are reported unclamped so
/// independence tests can see fluctuation around zero.
struct SubsetScore {
    std::vector<std::string> subset; // canonical dataset column order
    double selection_score = 0.0;
    double assessment_score = 0.0;
    ScorePair pair;
    std::size_t n = 0;
};

/// Repeated-scoring engine for one dataset: fraction scores, closed-form
/// baselines, and per-subset results are cached, so subset search touches
/// each quantity once.  The dataset must outlive the scorer.
class SubsetScorer {
public:
    struct Options {
        GridStrategy grid = GridStrategy::sample;
        /// Score 1-feature subsets as the pair {x, shuffled x}: the extra
        /// dimension aligns the one-dimensional scores with the multivariate
        /// ones (the shuffled copy carries no information but matches the
        /// grid and baseline dimensionality).
        bool shuffle_correction = false;
        std::uint64_t seed = 0;
    };

    explicit SubsetScorer(const Dataset& dataset);
    SubsetScorer(const Dataset& dataset, Options options);
    ~SubsetScorer();

    SubsetScorer(const SubsetScorer&) = delete;
    SubsetScorer& operator=(const SubsetScorer&) = delete;

    SubsetScore score(const std::vector<std::string>& subset);
    SubsetScore score(const std::vector<std::size_t>& columns);

    const Dataset& dataset() const;
    const Options& options() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Scores one subset with both orientations of the fraction estimator and
/// the closed-form baseline.  Errors propagate from those layers.
SubsetScore score_subset(const Dataset& dataset, const std::vector<std::string>& subset,
                         GridStrategy grid_strategy);

/// Descending by selection score; ties broken by smaller cardinality, then
/// lexicographically smaller feature names.
std::vector<SubsetScore> rank_table_ordering(std::vector<SubsetScore> scores);

/// The comparator behind rank_table_ordering: true when `a` ranks before `b`.
bool ranks_before(const SubsetScore& a, const SubsetScore& b);

} // namespace tcmi
