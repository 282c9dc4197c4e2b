#pragma once

#include <gmpxx.h>

namespace latlab {

inline constexpr int kPreciseBits = 1536;

// High-precision view of a 2-D basis, attached to lattices whose generating
// data is known exactly (sqrt literals, decimal literals, or the exact
// dyadic values of a double matrix). The orbit walk reads this: tracking
// ||Diag(e^j, e^-j) L|| to exponent j needs the basis to roughly e^-2j.
struct PreciseBasis {
    mpf_class b11, b12, b21, b22;

    PreciseBasis()
        : b11(0, kPreciseBits), b12(0, kPreciseBits), b21(0, kPreciseBits),
          b22(0, kPreciseBits) {}

    mpf_class det() const { return b11 * b22 - b12 * b21; }
};

}  // namespace latlab
