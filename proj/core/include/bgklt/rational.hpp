#pragma once

#include <gmpxx.h>

#include <string>

namespace bgklt {

/// Exact rational coefficient, arbitrary precision.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace bgklt
