#pragma once

#include <string>

#include "statbench/plot.hpp"

namespace statbench::svg {

/// Standalone SVG drawing of the plot geometry. Output is deterministic.
std::string render(const plot::PlotSpec& spec, int width = 480, int height = 360);

}  // namespace statbench::svg
