#pragma once

#include <span>
#include <vector>

namespace confront {

/// 1-based ranks; tied values (including +infinity) share the average of the
/// positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation. NaN when either series has zero variance or fewer
/// than two entries.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman's rho: Pearson correlation of the tie-averaged ranks.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace confront
