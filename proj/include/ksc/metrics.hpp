#pragma once

#include "ksc/types.hpp"

namespace ksc {

/// Chance-corrected pair-counting agreement. Returns 1 for identical
/// partitions (up to relabeling), including the degenerate cases where the
/// chance correction is undefined.
double adjusted_rand_index(const Labels& a, const Labels& b);

/// Same-cluster pair precision/recall of `pred` against `truth`,
/// F = 2PR / (P + R). 0/0 ratios are 0.
double pairwise_f_measure(const Labels& pred, const Labels& truth);

}  // namespace ksc
