#pragma once

#include "ksc/types.hpp"

#include <string>

namespace ksc {

/// Comma-separated numeric rows, no header. With `labeled`, the last field
/// of each row is an integer label. Errors name the offending line.
Dataset load_csv(const std::string& path, bool labeled = false);

/// Values are written with 17 significant digits (exact double round trip).
/// Labels, when present and `with_labels` is set, go in a trailing column.
void save_csv(const std::string& path, const Dataset& data, bool with_labels = true);

/// One label per line.
void save_labels(const std::string& path, const Labels& labels);
Labels load_labels(const std::string& path);

}  // namespace ksc
