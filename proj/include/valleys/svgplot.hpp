#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valleys/learner.hpp"
#include "valleys/synthdata.hpp"

namespace valleys {

/// 2-D scatter of class-colored samples with hyperplanes drawn as lines
/// clipped to the domain box. `before`, when given, is overlaid dashed.
/// Text SVG only; no rendering dependency.
std::string render_svg_2d(const Pool& pool,
                          const std::vector<LabeledSample>& samples,
                          const DomainBox& domain,
                          const Pool* before = nullptr);

void write_svg_2d(const std::string& path, const Pool& pool,
                  const std::vector<LabeledSample>& samples,
                  const DomainBox& domain, const Pool* before = nullptr);

}  // namespace valleys
