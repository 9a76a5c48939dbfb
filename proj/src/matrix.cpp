#include "tetra/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace tetra {

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

double operator_norm(const ComplexMatrix& m) {
    if (!all_finite(m)) throw InvalidInputError("operator_norm: non-finite entries");
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

ComplexMatrix defect_operator(const ComplexMatrix& t) {
    if (t.rows() != t.cols()) throw InvalidInputError("defect_operator: matrix not square");
    const double nrm = operator_norm(t);
    if (nrm > 1.0 + 1e-12)
        throw NotAContractionError("defect_operator: operator norm " + std::to_string(nrm) +
                                   " exceeds 1");
    ComplexMatrix g = ComplexMatrix::Identity(t.rows(), t.cols()) - t.adjoint() * t;
    // I - T*T can dip slightly negative in floating point; clamp at 0.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (g + g.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix restricted_inverse(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw InvalidInputError("restricted_inverse: matrix not square");
    if (!all_finite(m)) throw InvalidInputError("restricted_inverse: non-finite entries");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd ev = es.eigenvalues();
    const double sigma_max = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
    const double cutoff = tol >= 0.0 ? tol : 1e-10 * sigma_max;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cutoff) inv(i) = 1.0 / ev(i);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ (counter * 0xd1b54a32d192ed03ULL + 1));
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(derive_seed(seed, counter) >> 11) * 0x1.0p-53;
}

double gaussian(std::uint64_t seed, std::uint64_t counter) {
    // Box-Muller on two counter-derived uniforms.
    const double u1 = uniform01(seed, 2 * counter);
    const double u2 = uniform01(seed, 2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1 + 0x1.0p-100));
    return r * std::cos(2.0 * M_PI * u2);
}

Complex complex_gaussian(std::uint64_t seed, std::uint64_t counter) {
    const double u1 = uniform01(seed, 2 * counter);
    const double u2 = uniform01(seed, 2 * counter + 1);
    const double r = std::sqrt(-std::log(u1 + 0x1.0p-100));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw InvalidInputError("random_unitary: dim must be >= 1");
    ComplexMatrix g(dim, dim);
    std::uint64_t c = 0;
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = complex_gaussian(seed, c++);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase-normalize so the distribution is exactly Haar.
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace tetra
