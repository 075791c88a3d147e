#include "tcmi/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "tcmi/errors.hpp"

namespace tcmi {

namespace {

void check_column(const std::string& name, const Dataset::Column& values, std::size_t expected_rows) {
    if (values.empty()) {
        throw input_error("empty column: " + name);
    }
    if (expected_rows != 0 && values.size() != expected_rows) {
        throw input_error("column length mismatch: " + name);
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw input_error("non-finite value in column: " + name);
        }
    }
}

/// Dense ranks of a column: two columns are order-isomorphic exactly when
/// their rank vectors coincide.
std::vector<std::size_t> dense_ranks(const Dataset::Column& values) {
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ranks[i] = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin());
    }
    return ranks;
}

} // namespace

Dataset::Dataset(std::string target_name, Column target, std::vector<NamedColumn> features)
    : target_name_(std::move(target_name)), target_(std::move(target)) {
    if (target_name_.empty()) {
        throw input_error("empty column name");
    }
    check_column(target_name_, target_, 0);
    std::unordered_set<std::string> seen{target_name_};
    feature_names_.reserve(features.size());
    features_.reserve(features.size());
    for (auto& [name, values] : features) {
        if (name.empty()) {
            throw input_error("empty column name");
        }
        if (!seen.insert(name).second) {
            throw input_error("duplicate column: " + name);
        }
        check_column(name, values, target_.size());
        feature_names_.push_back(name);
        features_.push_back(std::move(values));
    }
}

bool Dataset::has_feature(const std::string& name) const {
    return std::find(feature_names_.begin(), feature_names_.end(), name) != feature_names_.end();
}

std::size_t Dataset::feature_index(const std::string& name) const {
    const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
    if (it == feature_names_.end()) {
        throw input_error("no such column: " + name);
    }
    return static_cast<std::size_t>(it - feature_names_.begin());
}

std::vector<std::size_t> Dataset::resolve_subset(const std::vector<std::string>& names) const {
    if (names.empty()) {
        throw input_error("empty feature set");
    }
    std::vector<std::size_t> indices;
    indices.reserve(names.size());
    for (const auto& name : names) {
        indices.push_back(feature_index(name));
    }
    std::sort(indices.begin(), indices.end());
    const auto dup = std::adjacent_find(indices.begin(), indices.end());
    if (dup != indices.end()) {
        throw input_error("duplicate column in subset: " + feature_name(*dup));
    }
    return indices;
}

std::vector<std::string> Dataset::subset_names(const std::vector<std::size_t>& indices) const {
    std::vector<std::string> names;
    names.reserve(indices.size());
    for (std::size_t idx : indices) {
        names.push_back(feature_name(idx));
    }
    return names;
}

Dataset augment(const Dataset& dataset, const std::vector<std::string>& transforms) {
    bool do_negate = false;
    bool do_abs = false;
    for (const auto& t : transforms) {
        if (t == "negate") {
            do_negate = true;
        } else if (t == "abs") {
            do_abs = true;
        } else {
            throw input_error("unknown transform: " + t);
        }
    }

    std::vector<Dataset::NamedColumn> columns;
    columns.reserve(dataset.n_features() * 3);
    std::set<std::vector<std::size_t>> signatures;
    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        columns.emplace_back(dataset.feature_name(f), dataset.feature(f));
        signatures.insert(dense_ranks(dataset.feature(f)));
    }

    auto try_append = [&](const std::string& name, Dataset::Column values) {
        auto ranks = dense_ranks(values);
        if (signatures.count(ranks) != 0) {
            return; // order-isomorphic to an existing column: adds no rank information
        }
        if (dataset.has_feature(name) || dataset.target_name() == name) {
            throw input_error("augmentation name clash: " + name);
        }
        signatures.insert(std::move(ranks));
        columns.emplace_back(name, std::move(values));
    };

    for (std::size_t f = 0; f < dataset.n_features(); ++f) {
        const auto& base = dataset.feature(f);
        const auto& name = dataset.feature_name(f);
        if (do_negate) {
            Dataset::Column neg(base.size());
            std::transform(base.begin(), base.end(), neg.begin(), [](double v) { return -v; });
            try_append(name + "_neg", std::move(neg));
        }
        if (do_abs) {
            Dataset::Column mag(base.size());
            std::transform(base.begin(), base.end(), mag.begin(), [](double v) { return std::abs(v); });
            try_append(name + "_abs", std::move(mag));
        }
    }
    return Dataset(dataset.target_name(), dataset.target(), std::move(columns));
}

} // namespace tcmi
