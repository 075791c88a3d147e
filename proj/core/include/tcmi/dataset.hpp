#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace tcmi {

/// Immutable column-oriented dataset: one numeric target plus named numeric
/// feature columns, all of equal length.  Construction validates shape and
/// names; all downstream computations treat the data as read-only.
class Dataset {
public:
    using Column = std::vector<double>;
    using NamedColumn = std::pair<std::string, Column>;

    /// Throws input_error on empty columns, length mismatches, non-finite
    /// values, or duplicate column names (the target name counts).
    Dataset(std::string target_name, Column target, std::vector<NamedColumn> features);

    std::size_t n_rows() const { return target_.size(); }
    std::size_t n_features() const { return feature_names_.size(); }

    const std::string& target_name() const { return target_name_; }
    const Column& target() const { return target_; }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const Column& feature(std::size_t index) const { return features_.at(index); }
    const std::string& feature_name(std::size_t index) const { return feature_names_.at(index); }

    bool has_feature(const std::string& name) const;

    /// Index of a named feature; throws input_error("no such column: <name>")
    /// when absent.
    std::size_t feature_index(const std::string& name) const;

    /// Maps feature names to column indices in canonical (dataset column)
    /// order.  Throws input_error on unknown or duplicated names and on an
    /// empty subset.
    std::vector<std::size_t> resolve_subset(const std::vector<std::string>& names) const;

    /// Names corresponding to a list of column indices.
    std::vector<std::string> subset_names(const std::vector<std::size_t>& indices) const;

private:
    std::string target_name_;
    Column target_;
    std::vector<std::string> feature_names_;
    std::vector<Column> features_;
};

/// Appends transformed copies of every feature column: "negate" adds -X as
/// "<name>_neg", "abs" adds |X| as "<name>_abs".  A transformed column that
/// is order-isomorphic to the original (e.g. |X| of a nonnegative column, or
/// -X of a constant one) is skipped, since rank-based scores cannot
/// distinguish it.  Throws input_error("augmentation name clash: <name>")
/// when a generated name already exists.
Dataset augment(const Dataset& dataset, const std::vector<std::string>& transforms);

} // namespace tcmi
