#include "paretogof/combinatorics.hpp"

#include <algorithm>
#include <limits>

#include "paretogof/error.hpp"

namespace paretogof {

Count binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  constexpr Count kMax = std::numeric_limits<Count>::max();
  Count result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    const Count factor = static_cast<Count>(n - r + i);
    if (result > kMax / factor) {
      throw DomainError("binomial coefficient overflows 128 bits");
    }
    // result * factor is divisible by i: it equals C(n - r + i, i) * i.
    result = result * factor / static_cast<Count>(i);
  }
  return result;
}

std::string to_string(Count c) {
  if (c == 0) return "0";
  std::string digits;
  while (c > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace paretogof
