#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "tetra/domain.hpp"
#include "tetra/triple.hpp"

namespace tetra {

// Sparse trivariate polynomial with complex coefficients, keyed by the
// multi-index (i, j, k) of z1^i z2^j z3^k.
class Poly3 {
public:
    using Index = std::array<int, 3>;

    Poly3() = default;

    static Poly3 constant(Complex c);
    static Poly3 variable(int which);  // 0, 1, 2 -> z1, z2, z3
    static Poly3 monomial(int i, int j, int k, Complex c = 1.0);

    void set(int i, int j, int k, Complex c);
    void add(int i, int j, int k, Complex c);
    Complex coeff(int i, int j, int k) const;

    int total_degree() const;
    const std::map<Index, Complex>& terms() const { return terms_; }

    Poly3 operator+(const Poly3& other) const;
    Poly3 operator*(const Poly3& other) const;
    Poly3 operator*(Complex scalar) const;

    // Formal partial derivative in variable `which`.
    Poly3 derivative(int which) const;

    std::string to_string() const;

private:
    std::map<Index, Complex> terms_;
    void prune();
};

Complex eval_point(const Poly3& f, const TetraPoint& p);

// Substitutes matrices for variables; throws InvalidTripleError when the
// triple's commutation residual exceeds 1e-10.
ComplexMatrix eval_triple(const Poly3& f, const CommutingTriple& t);

std::array<Complex, 3> gradient(const Poly3& f, const TetraPoint& p);

// Sampled lower estimate of sup |f| over the distinguished boundary:
// max over Haar samples, plus Nelder-Mead refinement in the bE chart
// (x1, x2, x3) = (s e^{i(c-b)}, s e^{ib}, e^{ic}), started both from the
// best sample and from a fixed coarse grid.
double sup_norm_bE(const Poly3& f, int nsamples, std::uint64_t seed);

// Blaschke factor (alpha - w) / (1 - conj(alpha) w); requires |alpha| < 1.
Complex blaschke(Complex alpha, Complex w);

struct KneseReport {
    double max_violation;
    std::array<Complex, 3> worst_point;
    bool violation;  // max_violation > 1e-9
};

// Checks sum_j (1 - |z_j|^2) |dg/dz_j| <= 1 - |g|^2 at sampled points of the
// open tridisk. The caller certifies sup |g| <= bound <= 1; the torus-grid
// certification is re-run here and a clear precondition breach throws.
KneseReport knese_check(const Poly3& g, double bound, int nsamples, std::uint64_t seed);

// Lower estimate of sup |g| over the closed tridisk from an n^3 torus grid.
double torus_sup_estimate(const Poly3& g, int grid_per_dim = 64);

// Torus estimate inflated by the standard (1 + 1e-3) safety factor; used to
// certify the knese_check precondition.
double tridisk_sup_certified(const Poly3& g);

struct SchwarzBound {
    double lhs, rhs;
    bool holds;
};

// lhs = r * sum_j |grad_j|, rhs = 1 - |f0|^2, holds with 1e-12 slack.
SchwarzBound schwarz_bound(const std::array<Complex, 3>& grad, double r, Complex f0);

// Random polynomial of total degree <= max_degree with complex Gaussian
// coefficients scaled by 1/(1 + total degree of the monomial).
Poly3 random_poly(int max_degree, std::uint64_t seed);

}  // namespace tetra
