#pragma once

#include <string>
#include <vector>

#include "valleys/headmap.hpp"
#include "valleys/learner.hpp"
#include "valleys/synthdata.hpp"

namespace valleys {

/// Sample CSV: header "f0,...,f{d-1},label", one row per sample, features
/// printed with 17 significant digits.
void write_samples_csv(const std::string& path,
                       const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> read_samples_csv(const std::string& path);

/// Pool snapshot JSON: {dim, config, planes:[{id, w, theta, t, shift_count,
/// mu1, mu2, c1, c2}]}; numeric fields round-trip exactly.
std::string pool_to_json(const Pool& pool);
Pool pool_from_json(const std::string& text);
void save_pool(const std::string& path, const Pool& pool);
Pool load_pool(const std::string& path);

/// HeadSet JSON: {heads:[{class, plane, polarity, score}]}.
std::string headset_to_json(const HeadSet& heads);
HeadSet headset_from_json(const std::string& text);
void save_headset(const std::string& path, const HeadSet& heads);
HeadSet load_headset(const std::string& path);

/// MixtureSpec JSON: {components:[{prior, mean, sigma, class}]}.
std::string mixture_to_json(const MixtureSpec& spec);
MixtureSpec mixture_from_json(const std::string& text);
void save_mixture(const std::string& path, const MixtureSpec& spec);
MixtureSpec load_mixture(const std::string& path);

/// RunTrace CSV: sample_index, top1, top3, top5, wall_ms, shifts, rotations.
void write_trace_csv(const std::string& path, const RunTrace& trace);
std::string trace_to_json(const RunTrace& trace);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace valleys
