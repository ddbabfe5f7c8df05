#pragma once

#include <vector>

#include "valleys/learner.hpp"
#include "valleys/synthdata.hpp"

namespace valleys {

/// (class, plane, polarity) selected as the class discriminator.
struct ClassHead {
  int class_label = 0;
  int plane_id = 0;
  int polarity = +1;  ///< +1: w-side means "this class"
  double score = 0.0; ///< association quality, diagnostics only
};

struct HeadSet {
  std::vector<ClassHead> heads;

  const ClassHead* find(int class_label) const {
    for (const auto& h : heads) {
      if (h.class_label == class_label) return &h;
    }
    return nullptr;
  }
};

/// How the two count terms of the association score are combined.
enum class AssociationScoring {
  kBalanced,  ///< mean of per-class and per-rest rates (default)
  kRawCounts, ///< plain sum of the two counts
};

/// 1-vs-all selection: for each class, score every (plane, polarity) on the
/// labeled calibration set and keep the argmax. Ties break toward the
/// lowest plane id, then polarity +1.
HeadSet associate_labels(const Pool& pool,
                         const std::vector<LabeledSample>& calib,
                         AssociationScoring scoring =
                             AssociationScoring::kBalanced);

/// Classes ranked by their head's signed margin s·(w·x − θ), descending;
/// ties by class label ascending. Returns the first n labels.
std::vector<int> classify_topn(const HeadSet& heads, const Pool& pool,
                               const Vec& x, int n);

}  // namespace valleys
