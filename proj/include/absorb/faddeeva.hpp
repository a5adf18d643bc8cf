#pragma once

#include <complex>

namespace absorb {

// Faddeeva function w(z) = exp(-z^2) * erfc(-iz), valid in both half-planes.
// Relative accuracy: ~1e-14 for Im(z) >= 0; the lower half-plane goes through
// the reflection w(z) = 2 exp(-z^2) - w(-z) and loses a few digits to
// cancellation (target 1e-10).
// Throws std::overflow_error when exp(-z^2) is not representable (deep lower
// half-plane) and std::domain_error on non-finite input.
std::complex<double> faddeeva_w(std::complex<double> z);

// |w(-z) + w(z) - 2 exp(-z^2)|, for identity-based self checks.
double faddeeva_w_reflection_check(std::complex<double> z);

}  // namespace absorb
