#pragma once

namespace omlab::tol {

// Hermiticity admission: |a_ij - conj(a_ji)| <= kHermBase * (1 + max|entry|).
inline constexpr double kHermBase = 1e-12;

// Spectral reconstruction / witness Rayleigh-quotient agreement.
inline constexpr double kRecon = 1e-10;

// Domain snapping: eigenvalues within this distance below a closed endpoint
// are clamped onto the endpoint before scalar evaluation.
inline constexpr double kDomainSnap = 1e-10;

// Default PSD verdict tolerance: kPsdBase * (1 + spectral norm).
inline constexpr double kPsdBase = 1e-9;

// Divided-difference point separation: kMergeBase * (1 + |t|).
inline constexpr double kMergeBase = 1e-8;

// Gap below which off-diagonal divided differences switch to the midpoint
// derivative (cancellation guard).
inline constexpr double kMidpointGap = 1e-5;

// Upper-half-plane scan slack for Im/Re sign verdicts.
inline constexpr double kPick = 1e-10;

// Jacobi sweep convergence: off-diagonal Frobenius mass < kJacobiOff * ||A||_F.
inline constexpr double kJacobiOff = 1e-14;

}  // namespace omlab::tol
