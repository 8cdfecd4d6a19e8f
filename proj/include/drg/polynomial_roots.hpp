#pragma once

#include <vector>

namespace drg {

// Horner evaluation; coefficients in ascending powers.
double eval_poly(const std::vector<double>& coeffs, double x);

// Real roots of a real polynomial (ascending coefficients) from the
// eigenvalues of its companion matrix.  Roots whose imaginary part exceeds
// `imag_tol` are dropped unless they are a near-double real root, i.e. the
// polynomial (relative to its coefficient scale) nearly vanishes at the real
// part.  Accepted roots are Newton-polished, sorted and deduplicated.
std::vector<double> real_roots(std::vector<double> coeffs, double imag_tol = 1e-9);

}  // namespace drg
