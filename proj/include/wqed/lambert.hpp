// lambert.hpp — All-branch complex Lambert W function

#pragma once

#include <complex>

namespace wqed {

// n-th branch of the Lambert W function: w with w*e^w = z and Im(w) in the
// n-th branch band.  Residual |w e^w - z| <= 4 eps max(1,|z|).
// Throws InvalidBranch (n != 0, z == 0) and NonConvergence.
std::complex<double> lambert_w(int n, std::complex<double> z);

// Real fast path, branches 0 and -1 only.
// n=0: x >= -1/e; n=-1: -1/e <= x < 0.  Throws DomainError outside.
double lambert_w_real(int n, double x);

}  // namespace wqed
