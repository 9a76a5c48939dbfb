#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tetra/matrix.hpp"

namespace tetra {

// A point (x1, x2, x3) of C^3 tested against the tetrablock E, its closure,
// and the distinguished boundary bE.
struct TetraPoint {
    Complex x1, x2, x3;
};

enum class Membership { Interior, ClosureBoundary, Outside };

struct MembershipVerdict {
    Membership status;
    // 1 - (minimal operator norm over the witness family); positive strictly
    // inside, negative strictly outside.
    double margin;
    // Best 2x2 matrix found with diagonal (x1, x2) and determinant x3;
    // present whenever the minimal norm is <= 1 + tol.
    std::optional<ComplexMatrix> witness;
};

// Scalar membership criterion: (1 - |x3|^2) - (|x1 - conj(x2) x3| + |x2 - conj(x1) x3|).
// Positive iff the point is in E, zero on the topological boundary.
double closed_form_slack(const TetraPoint& p);

// Minimal operator norm over witnesses [[x1, t], [p/t, x2]], p = x1 x2 - x3,
// by coarse log-grid plus golden-section search in t. Independent of the
// closed-form criterion; used to cross-validate it.
double min_witness_norm(const TetraPoint& p, ComplexMatrix* witness = nullptr);

// Classifies p against E / closure / outside using both methods; throws
// InternalInconsistencyError if they disagree beyond the boundary band.
MembershipVerdict member(const TetraPoint& p, double tol = 1e-9);

// True iff p lies in the closure of E and ||x3| - 1| <= tol.
bool on_distinguished_boundary(const TetraPoint& p, double tol = 1e-9);

// n points (u11, u22, det U) of Haar-random 2x2 unitaries; deterministic
// given seed, sample i depends only on (seed, i).
std::vector<TetraPoint> sample_distinguished_boundary(int n, std::uint64_t seed);

// Supremum of radii r with r * closed tridisk contained in E, by bisection
// with a torus-grid membership margin oracle plus local refinement.
double inscribed_polydisk_radius(double tol);

// Radius at default tolerance 1e-6, computed once per process.
double inscribed_polydisk_radius_cached();

}  // namespace tetra
