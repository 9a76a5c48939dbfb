#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tetra/poly.hpp"
#include "tetra/triple.hpp"

namespace tetra {

// F1, F2 of the equations T1 - T2*T3 = D F1 D, T2 - T1*T3 = D F2 D on the
// defect space of t3. Stored full-size, vanishing off the defect space.
struct FundamentalPair {
    ComplexMatrix f1, f2;
    ComplexMatrix defect_projector;  // orthogonal projection onto Ran D
    ComplexMatrix defect_basis;      // n x d orthonormal basis of Ran D
    double solve_residual = 0.0;
};

enum class Verdict { Certified, NotCertified, StatisticalPass, StatisticalFail };
enum class Method { SchwarzPath, Sampling };

struct CertificationReport {
    Verdict verdict;
    Method method;
    std::vector<std::pair<std::string, double>> details;
    std::uint64_t seed = 0;

    double detail(const std::string& name) const;
};

std::string to_string(Verdict v);
std::string to_string(Method m);

// Joint eigenvalues via Schur triangularization of a generic random linear
// combination, retried with fresh coefficients on matching failure.
std::vector<std::array<Complex, 3>> joint_spectrum(const CommutingTriple& t, double tol = 1e-8);

// Deterministic certificate for the nilpotent family: certified iff
// 0 < |lambda_j| < r for all j (spectrum containment plus the polydisk
// Schwarz bound plus the Blaschke / von Neumann reduction).
CertificationReport certify_nilpotent_family(Complex l1, Complex l2, Complex l3, double r);

// ||f(T)|| divided by the sampled bE sup estimate of f.
double polynomial_ratio(const CommutingTriple& t, const Poly3& f, int nsamples,
                        std::uint64_t seed);

// Statistical spot-check of the spectral-set inequality over random
// polynomials. slack compensates for the lower bias of the sampled sup.
CertificationReport certify_sampling(const CommutingTriple& t, int npolys, int degree,
                                     int nsamples, std::uint64_t seed, double slack = 5e-2);

// Solves the fundamental-operator equations through the restricted inverse
// of the defect operator; throws SolvabilityError when the right-hand sides
// are not compatible with the defect space.
FundamentalPair fundamental_operators(const CommutingTriple& t);

struct CommutatorResult {
    ComplexMatrix matrix;
    double norm;
};

CommutatorResult commutator(const FundamentalPair& p);

// Closed form ||l1|^2 - |l2|^2| * |l3| / (1 - |l3|^2)^{3/2} for the family.
double family_commutator_norm(Complex l1, Complex l2, Complex l3);

}  // namespace tetra
