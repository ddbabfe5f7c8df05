#include "valleys/headmap.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "valleys/geometry.hpp"

namespace valleys {

HeadSet associate_labels(const Pool& pool,
                         const std::vector<LabeledSample>& calib,
                         AssociationScoring scoring) {
  if (calib.empty()) {
    throw std::invalid_argument("associate_labels: empty calibration set");
  }
  std::map<int, std::size_t> class_counts;
  for (const auto& s : calib) ++class_counts[s.label];
  for (const auto& [label, count] : class_counts) {
    if (count == 0) {
      throw std::invalid_argument("associate_labels: empty class " +
                                  std::to_string(label));
    }
  }

  // Side of every (plane, sample) pair; +1 on the w side, −1 otherwise.
  const std::size_t n_planes = pool.planes.size();
  const std::size_t n_samples = calib.size();
  std::vector<signed char> side(n_planes * n_samples);
  for (std::size_t j = 0; j < n_planes; ++j) {
    const auto& h = pool.planes[j];
    for (std::size_t i = 0; i < n_samples; ++i) {
      side[j * n_samples + i] =
          signed_distance(calib[i].x, h.w, h.theta) > 0.0 ? +1 : -1;
    }
  }

  HeadSet set;
  for (const auto& [label, count] : class_counts) {
    const double n_class = static_cast<double>(count);
    const double n_rest = static_cast<double>(n_samples - count);
    ClassHead best;
    best.class_label = label;
    best.score = -1.0;
    for (std::size_t j = 0; j < n_planes; ++j) {
      // Count class samples on the + side and rest samples on the − side;
      // both polarities follow from the same two counts.
      double class_pos = 0.0;
      double rest_neg = 0.0;
      for (std::size_t i = 0; i < n_samples; ++i) {
        const bool pos = side[j * n_samples + i] > 0;
        if (calib[i].label == label) {
          class_pos += pos ? 1.0 : 0.0;
        } else {
          rest_neg += pos ? 0.0 : 1.0;
        }
      }
      for (int polarity : {+1, -1}) {
        const double hits = polarity > 0 ? class_pos : n_class - class_pos;
        const double rejects = polarity > 0 ? rest_neg : n_rest - rest_neg;
        double score;
        if (scoring == AssociationScoring::kBalanced) {
          score = 0.5 * hits / n_class +
                  (n_rest > 0 ? 0.5 * rejects / n_rest : 0.5);
        } else {
          score = hits + rejects;
        }
        const bool better =
            score > best.score ||
            (score == best.score &&
             (pool.planes[j].id < best.plane_id ||
              (pool.planes[j].id == best.plane_id && polarity > best.polarity)));
        if (best.score < 0.0 || better) {
          best.plane_id = pool.planes[j].id;
          best.polarity = polarity;
          best.score = score;
        }
      }
    }
    set.heads.push_back(best);
  }
  return set;
}

std::vector<int> classify_topn(const HeadSet& heads, const Pool& pool,
                               const Vec& x, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > heads.heads.size()) {
    throw std::invalid_argument("classify_topn: n out of range");
  }
  std::vector<const Hyperplane*> by_id(pool.planes.size(), nullptr);
  for (const auto& h : pool.planes) {
    by_id[static_cast<std::size_t>(h.id)] = &h;
  }
  std::vector<std::pair<double, int>> ranked;  // (margin, label)
  ranked.reserve(heads.heads.size());
  for (const auto& head : heads.heads) {
    const Hyperplane* plane = by_id[static_cast<std::size_t>(head.plane_id)];
    const double margin =
        head.polarity * signed_distance(x, plane->w, plane->theta);
    ranked.emplace_back(margin, head.class_label);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(ranked[i].second);
  return out;
}

}  // namespace valleys
