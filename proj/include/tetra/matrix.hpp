#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

#include "tetra/errors.hpp"

namespace tetra {

using Complex = std::complex<double>;

// Dense complex matrix, the universal carrier for operators in this library.
using ComplexMatrix = Eigen::MatrixXcd;

bool all_finite(const ComplexMatrix& m);

// Largest singular value. Throws InvalidInputError on non-finite entries.
double operator_norm(const ComplexMatrix& m);

// D_T = (I - T*T)^{1/2} for a square contraction T, via Hermitian
// eigendecomposition with eigenvalues clamped at 0 from below.
// Throws NotAContractionError if ||T|| > 1 + 1e-12.
ComplexMatrix defect_operator(const ComplexMatrix& t);

// Moore-Penrose inverse of a Hermitian PSD matrix. Singular values below
// tol are treated as zero; tol < 0 selects 1e-10 * sigma_max.
ComplexMatrix restricted_inverse(const ComplexMatrix& m, double tol = -1.0);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the diagonal
// of R phase-normalized. Deterministic given seed.
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

// Counter-based seed derivation (splitmix64 mixing); results depend only on
// (seed, counter), so sampling loops are schedule-independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter);

// Standard normal deviates from a counter-derived stream.
double gaussian(std::uint64_t seed, std::uint64_t counter);
Complex complex_gaussian(std::uint64_t seed, std::uint64_t counter);

// Uniform double in [0, 1) from a counter-derived stream.
double uniform01(std::uint64_t seed, std::uint64_t counter);

}  // namespace tetra
