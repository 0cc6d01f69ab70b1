#pragma once

#include <complex>

namespace thz {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
//
// Upper half plane: Weideman's rational expansion with 32 terms, switching
// to the Laplace continued fraction for |z| > 15. The lower half plane
// follows from w(z) = 2 exp(-z^2) - w(-z).
std::complex<double> faddeeva(std::complex<double> z);

}  // namespace thz
