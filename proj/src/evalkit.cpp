#include "valleys/evalkit.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace valleys {

double topn_error(const std::vector<std::vector<int>>& predictions,
                  const std::vector<int>& truths, int n) {
  if (predictions.size() != truths.size()) {
    throw std::invalid_argument("topn_error: length mismatch");
  }
  if (predictions.empty()) return 0.0;
  std::size_t missed = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& p = predictions[i];
    if (p.size() < static_cast<std::size_t>(n)) {
      throw std::invalid_argument("topn_error: prediction list shorter than n");
    }
    const auto end = p.begin() + n;
    if (std::find(p.begin(), end, truths[i]) == end) ++missed;
  }
  return static_cast<double>(missed) / static_cast<double>(predictions.size());
}

ConfusionMatrix confusion(const std::vector<int>& predictions,
                          const std::vector<int>& truths) {
  if (predictions.size() != truths.size()) {
    throw std::invalid_argument("confusion: length mismatch");
  }
  std::map<int, std::size_t> index;
  for (int t : truths) index.emplace(t, 0);
  for (int p : predictions) index.emplace(p, 0);
  ConfusionMatrix m;
  for (auto& [label, idx] : index) {
    idx = m.labels.size();
    m.labels.push_back(label);
  }
  m.counts.assign(m.labels.size(), std::vector<long>(m.labels.size(), 0));
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ++m.counts[index[truths[i]]][index[predictions[i]]];
  }
  return m;
}

std::vector<std::pair<int, double>> probe_pool(
    const Pool& pool, const std::vector<LabeledSample>& calib,
    const std::vector<LabeledSample>& test, const std::set<int>& ns) {
  const HeadSet heads = associate_labels(pool, calib);
  std::vector<std::vector<int>> predictions;
  predictions.reserve(test.size());
  const int n_max = *ns.rbegin();
  const int n_eff = std::min<int>(n_max, static_cast<int>(heads.heads.size()));
  std::vector<int> truths;
  truths.reserve(test.size());
  for (const auto& s : test) {
    predictions.push_back(classify_topn(heads, pool, s.x, n_eff));
    truths.push_back(s.label);
  }
  std::vector<std::pair<int, double>> out;
  for (int n : ns) {
    out.emplace_back(n, topn_error(predictions, truths, std::min(n, n_eff)));
  }
  return out;
}

}  // namespace valleys
