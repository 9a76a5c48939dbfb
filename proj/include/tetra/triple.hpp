#pragma once

#include "tetra/matrix.hpp"

namespace tetra {

// Three square matrices of equal dimension with certified pairwise
// commutation. Construct through make() so the residual invariant holds.
struct CommutingTriple {
    ComplexMatrix t1, t2, t3;
    double commutation_residual = 0.0;

    // Validates dimensions and pairwise commutation; throws
    // InvalidTripleError when the residual exceeds tol.
    static CommutingTriple make(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                                double tol = 1e-10);

    // T_j = lambda_j E12, the strictly upper-triangular 2x2 family.
    static CommutingTriple nilpotent_family(Complex l1, Complex l2, Complex l3);

    Eigen::Index dim() const { return t1.rows(); }
};

}  // namespace tetra
