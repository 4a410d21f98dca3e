#pragma once

// Self-contained SVG heatmaps. Every lattice cell is a <rect> carrying its
// exact sample as data-x / data-y / data-value ("%.17g"), so the picture can
// be checked numerically as well as looked at.

#include <span>
#include <string>
#include <vector>

#include "hyper/functions.hpp"

namespace hyper::cli {

struct Panel {
  std::string title;
  std::vector<double> values;  // row-major over the lattice
};

/// Side-by-side grayscale panels, each scaled linearly from its own min
/// (black) to max (white); the scale is printed in the legend.
std::string render_heatmaps(const Lattice& lattice, std::span<const Panel> panels);

/// Side-by-side label maps with values in {-1, 0, +1}.
std::string render_label_maps(const Lattice& lattice, std::span<const Panel> panels);

}  // namespace hyper::cli
