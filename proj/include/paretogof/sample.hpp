#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <vector>

namespace paretogof {

// Observations on [1, inf), kept sorted ascending. Immutable once built.
class Sample {
 public:
  // Throws DomainError on values < 1, NaN or infinity.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  // Ties have probability zero under a continuous model; flagged, not refused.
  bool has_ties() const { return has_ties_; }

 private:
  std::vector<double> values_;
  bool has_ties_ = false;
};

// One observation per line; blank lines and '#' comments are skipped.
// Errors cite the 1-based line number.
Sample read_sample(std::istream& in);

}  // namespace paretogof
