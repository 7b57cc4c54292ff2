#pragma once

#include <array>

#include "kleinian2/types.hpp"

namespace testcurves {

using kleinian2::cplx;

// y^2 = 4x^5 - 4x, Weierstrass form
inline const std::array<cplx, 7> W5{0, -4, 0, 0, 0, 4, 0};
// y^2 = x^6 - 1
inline const std::array<cplx, 7> G6{-1, 0, 0, 0, 0, 0, 1};
// a generic sextic with complex coefficients
inline const std::array<cplx, 7> C6{cplx(0.3, -0.2), cplx(-1.1, 0.4), cplx(0.5, 0.1), cplx(0.7, 0),
                                    cplx(-0.2, 0.3), cplx(0.4, -0.1), cplx(1.2, 0.5)};

}  // namespace testcurves
