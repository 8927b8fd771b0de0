#pragma once

#include <functional>

namespace paretogof {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
Maximum golden_section_max(const std::function<double(double)>& f, double lo,
                           double hi, double x_tol = 1e-10);

// Scans f on a geometric grid over [lo, hi] to bracket the global maximum,
// then refines the bracket with golden-section search.
Maximum maximize_log_grid(const std::function<double(double)>& f, double lo,
                          double hi, int grid_points = 200,
                          double x_tol = 1e-10);

}  // namespace paretogof
