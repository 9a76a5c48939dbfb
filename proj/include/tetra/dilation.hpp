#pragma once

#include <vector>

#include "tetra/structure.hpp"

namespace tetra {

// Analytic Toeplitz symbol on the defect space: coefficients[k] multiplies
// z^k and sits on the k-th block subdiagonal of the truncated operator.
struct ToeplitzSymbol {
    std::vector<ComplexMatrix> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Depth-N truncation of the dilation tuple on H + (defect)^N. Each V_j is
// block lower-triangular with (1,1) block T_j.
struct TruncatedDilation {
    int depth = 0;
    ComplexMatrix v1, v2, v3;
    Eigen::Index h_dim = 0;
    Eigen::Index defect_dim = 0;
    int slot = 1;  // position of D in the third column operator
    ToeplitzSymbol phi1, phi2, phi3;
};

struct ResidualReport {
    double coinvariance = 0.0;
    double compression_maxdeg = 0.0;
    double isometry_interior = 0.0;
    double commutation_interior = 0.0;
    double v1_eq_v2star_v3_interior = 0.0;
    double v2_norm = 0.0;
};

// Assembles the block tuple for given symbols; validates the symbol endpoint
// conditions phi1(0) = F1, phi2(0) = F2, and the adjoint matching of the top
// coefficients before building. Symbols and the column operators are
// expressed in an orthonormal basis of the defect space.
TruncatedDilation assemble_dilation(const CommutingTriple& t, const FundamentalPair& p,
                                    ToeplitzSymbol phi1, ToeplitzSymbol phi2, ToeplitzSymbol phi3,
                                    int depth, int slot);

// The tuple with phi1 = F1 + F2* z, phi2 = F2 + F1* z, phi3 = z I.
TruncatedDilation build_theoremB(const CommutingTriple& t, const FundamentalPair& p, int depth,
                                 int slot = 1);

enum class ExtendedForm { Square, GeneralN };

// Extended symbols with phi3 = z^n: for n = 2, phi1 = F1 + Xi z + F2* z^2
// and phi2 = F2 + Xi* z + F1* z^2; for general n the middle coefficients
// beyond the Xi slots are zero and only the endpoint conditions are
// enforced (the remaining coefficient relations are not validated).
TruncatedDilation build_extended(const CommutingTriple& t, const FundamentalPair& p,
                                 const ComplexMatrix& xi, int depth, ExtendedForm form, int n = 2,
                                 int slot = 1);

// max_j || P_H V_j* |_H - T_j* ||; exact 0 up to rounding by construction.
double verify_coinvariance(const TruncatedDilation& d, const CommutingTriple& t);

// max over monomials of total degree <= maxdeg of
// || P_H p(V1,V2,V3) |_H - p(T1,T2,T3) ||.
double verify_compression(const TruncatedDilation& d, const CommutingTriple& t, int maxdeg);

// Tetrablock-isometry conditions (V3*V3 = I, pairwise commutation,
// V1 = V2*V3) compressed to H + (defect)^{interior_depth}, plus ||V2|| on
// the full truncation. coinvariance/compression fields are left 0.
ResidualReport verify_isometry_conditions(const TruncatedDilation& d, int interior_depth);

// All six residuals in one report.
ResidualReport full_residual_report(const TruncatedDilation& d, const CommutingTriple& t,
                                    int maxdeg, int interior_depth);

}  // namespace tetra
