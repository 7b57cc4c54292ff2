#pragma once

#include <span>
#include <vector>

#include "kleinian2/types.hpp"

namespace kleinian2 {

/// Horner evaluation; coefficients in ascending degree order.
cplx poly_eval(std::span<const cplx> c, cplx x);
cplx poly_deriv(std::span<const cplx> c, cplx x, int order = 1);

/// Roots of a polynomial with nonzero leading coefficient c.back(): companion
/// matrix eigenvalues, then a few Newton steps on the original polynomial.
std::vector<cplx> poly_roots(std::span<const cplx> c);

/// Sort by real part, ties (within a relative tolerance) by imaginary part.
void sort_canonical(std::vector<cplx>& roots);

}  // namespace kleinian2
