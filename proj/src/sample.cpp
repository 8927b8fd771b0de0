#include "paretogof/sample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "paretogof/error.hpp"

namespace paretogof {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("sample contains a non-finite value");
    if (!(v >= 1.0)) {
      std::ostringstream msg;
      msg << "observation " << v << " is outside the support [1, inf)";
      throw DomainError(msg.str());
    }
  }
  std::sort(values_.begin(), values_.end());
  has_ties_ =
      std::adjacent_find(values_.begin(), values_.end()) != values_.end();
}

Sample read_sample(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);

    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": cannot parse '" << token << "' as a number";
      throw DomainError(msg.str());
    }
    if (!std::isfinite(v) || !(v >= 1.0)) {
      std::ostringstream msg;
      msg << "line " << line_no << ": observation " << token
          << " is outside the support [1, inf)";
      throw DomainError(msg.str());
    }
    values.push_back(v);
  }
  if (in.bad()) throw IoError("failed while reading the sample");
  return Sample(std::move(values));
}

}  // namespace paretogof
