#pragma once

#include <iosfwd>
#include <string>

#include "tcmi/dataset.hpp"

namespace tcmi {

/// Loads a dataset from a comma-separated file with a header row.
///
/// The first line names the columns; every following line holds one sample
/// with exactly one numeric value per column.  The column named
/// `target_name` becomes the target, all remaining columns become features
/// in file order.
///
/// Throws input_error when the file cannot be opened, the header lacks the
/// target ("target not found: <name>"), a header name repeats ("duplicate
/// column: <name>"), a cell fails to parse ("parse error at row <r>, column
/// <c>"), a row has the wrong width, or fewer than three samples remain
/// ("too few samples").
Dataset load_csv(const std::string& path, const std::string& target_name);

/// Writes the dataset as a comma-separated file with a header row.  The
/// target column comes first, features follow in dataset order.  Values are
/// printed with 17 significant digits so a load_csv round trip reproduces
/// every double exactly.
///
/// Throws input_error when the file cannot be created.
void save_csv(const Dataset& dataset, const std::string& path);

/// Same format as the path overload, written to an already-open stream.
void save_csv(const Dataset& dataset, std::ostream& out);

} // namespace tcmi
