#pragma once

#include <set>
#include <vector>

#include "valleys/headmap.hpp"
#include "valleys/learner.hpp"
#include "valleys/synthdata.hpp"

namespace valleys {

/// Fraction of samples whose truth is missing from the first n predictions.
double topn_error(const std::vector<std::vector<int>>& predictions,
                  const std::vector<int>& truths, int n);

/// Confusion counts; row = true class, column = predicted class, in the
/// order listed in `labels`.
struct ConfusionMatrix {
  std::vector<int> labels;
  std::vector<std::vector<long>> counts;
};

ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& truths);

/// One evaluation checkpoint: associates heads on the calibration set and
/// measures Top-n errors on the test set. The pool is untouched.
std::vector<std::pair<int, double>> probe_pool(
    const Pool& pool, const std::vector<LabeledSample>& calib,
    const std::vector<LabeledSample>& test, const std::set<int>& ns);

}  // namespace valleys
