#pragma once

#include <string>

#include "core/points.hpp"

namespace ann {

// CSV of "f1,...,fd[,label]" rows. An optional header line is skipped when
// its first field is not numeric. Ragged rows and non-finite values raise
// DataError with the offending line number.
PointSet load_points_csv(const std::string& path, bool with_labels);

// Coordinates with 17 significant digits so a load round-trips bit-exactly.
void save_points_csv(const PointSet& points, const std::string& path, bool write_labels);

}  // namespace ann
