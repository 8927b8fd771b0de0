#pragma once

#include <cstdint>
#include <string>

namespace paretogof {

// Exact subset counts. C(10^4, 8) ~ 2.5e27 still fits.
__extension__ typedef unsigned __int128 Count;

// C(n, r); 0 when r < 0 or r > n. Throws DomainError on overflow.
Count binomial(std::int64_t n, std::int64_t r);

// Rounded to nearest double.
inline double to_double(Count c) { return static_cast<double>(c); }

std::string to_string(Count c);

}  // namespace paretogof
