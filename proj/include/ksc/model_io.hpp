#pragma once

#include "ksc/sparse_model.hpp"

#include <iosfwd>
#include <string>

namespace ksc {

/// Text model format, version 1:
///
///   KSC-MODEL 1
///   kernel rbf|chi2
///   param <real>
///   K <int>
///   encoding sign|direction
///   bias_variant proposed|original
///   R <int>
///   d <int>
///   N_tr <int>
///   seed <int>
///   REDUCED      R lines of d values
///   XI           R lines of K-1 values
///   BIAS         one line of K-1 values
///   CODEBOOK | PROTOTYPES   K lines of K-1 values
///
/// Numbers carry 17 significant digits, fields are space-separated.
void save_model(std::ostream& out, const SparseKscModel& model);
void save_model(const std::string& path, const SparseKscModel& model);
SparseKscModel load_model(std::istream& in);
SparseKscModel load_model(const std::string& path);

}  // namespace ksc
