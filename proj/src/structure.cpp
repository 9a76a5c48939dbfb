#include "tetra/structure.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace tetra {

CommutingTriple CommutingTriple::make(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                                      double tol) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || c.rows() != c.cols() ||
        a.rows() != b.rows() || a.rows() != c.rows())
        throw InvalidInputError("CommutingTriple: matrices must be square and of equal size");
    if (!all_finite(a) || !all_finite(b) || !all_finite(c))
        throw InvalidInputError("CommutingTriple: non-finite entries");
    double res = 0.0;
    const ComplexMatrix* ms[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            res = std::max(res, operator_norm(*ms[i] * *ms[j] - *ms[j] * *ms[i]));
    if (res > tol)
        throw InvalidTripleError("CommutingTriple: commutation residual " + std::to_string(res) +
                                 " exceeds " + std::to_string(tol));
    return CommutingTriple{std::move(a), std::move(b), std::move(c), res};
}

CommutingTriple CommutingTriple::nilpotent_family(Complex l1, Complex l2, Complex l3) {
    ComplexMatrix t1 = ComplexMatrix::Zero(2, 2), t2 = t1, t3 = t1;
    t1(0, 1) = l1;
    t2(0, 1) = l2;
    t3(0, 1) = l3;
    return CommutingTriple{std::move(t1), std::move(t2), std::move(t3), 0.0};
}

double CertificationReport::detail(const std::string& name) const {
    for (const auto& [k, v] : details)
        if (k == name) return v;
    throw InvalidInputError("CertificationReport: no detail named " + name);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::NotCertified: return "not-certified";
        case Verdict::StatisticalPass: return "statistical-pass";
        case Verdict::StatisticalFail: return "statistical-fail";
    }
    return "?";
}

std::string to_string(Method m) {
    return m == Method::SchwarzPath ? "schwarz-path" : "sampling";
}

std::vector<std::array<Complex, 3>> joint_spectrum(const CommutingTriple& t, double tol) {
    const Eigen::Index n = t.dim();
    const double scale = std::max({1.0, operator_norm(t.t1), operator_norm(t.t2),
                                   operator_norm(t.t3)});
    for (int attempt = 0; attempt < 5; ++attempt) {
        Complex c1 = complex_gaussian(0x5eed5eedULL, 3 * attempt);
        Complex c2 = complex_gaussian(0x5eed5eedULL, 3 * attempt + 1);
        Complex c3 = complex_gaussian(0x5eed5eedULL, 3 * attempt + 2);
        ComplexMatrix m = c1 * t.t1 + c2 * t.t2 + c3 * t.t3;
        Eigen::ComplexSchur<ComplexMatrix> schur(m);
        if (schur.info() != Eigen::Success) continue;
        const ComplexMatrix& q = schur.matrixU();
        ComplexMatrix a1 = q.adjoint() * t.t1 * q;
        ComplexMatrix a2 = q.adjoint() * t.t2 * q;
        ComplexMatrix a3 = q.adjoint() * t.t3 * q;
        double lower = 0.0;
        for (const ComplexMatrix* a : {&a1, &a2, &a3})
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = j + 1; i < n; ++i) lower = std::max(lower, std::abs((*a)(i, j)));
        if (lower > tol * scale) continue;
        std::vector<std::array<Complex, 3>> pts;
        for (Eigen::Index i = 0; i < n; ++i) {
            std::array<Complex, 3> p{a1(i, i), a2(i, i), a3(i, i)};
            bool dup = false;
            for (const auto& q2 : pts)
                if (std::abs(p[0] - q2[0]) + std::abs(p[1] - q2[1]) + std::abs(p[2] - q2[2]) <=
                    3.0 * tol * scale)
                    dup = true;
            if (!dup) pts.push_back(p);
        }
        return pts;
    }
    throw NumericalDegeneracyError("joint_spectrum: simultaneous triangularization failed");
}

CertificationReport certify_nilpotent_family(Complex l1, Complex l2, Complex l3, double r) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidInputError("certify_nilpotent_family: r not in (0,1)");
    const double a1 = std::abs(l1), a2 = std::abs(l2), a3 = std::abs(l3);
    const bool ok = a1 > 0.0 && a2 > 0.0 && a3 > 0.0 && a1 < r && a2 < r && a3 < r;
    CertificationReport rep;
    rep.verdict = ok ? Verdict::Certified : Verdict::NotCertified;
    rep.method = Method::SchwarzPath;
    rep.details = {{"abs_lambda1", a1},
                   {"abs_lambda2", a2},
                   {"abs_lambda3", a3},
                   {"r", r},
                   {"margin", r - std::max({a1, a2, a3})}};
    return rep;
}

double polynomial_ratio(const CommutingTriple& t, const Poly3& f, int nsamples,
                        std::uint64_t seed) {
    const double sup = sup_norm_bE(f, nsamples, seed);
    if (sup == 0.0) throw InvalidInputError("polynomial_ratio: zero sup estimate");
    return operator_norm(eval_triple(f, t)) / sup;
}

CertificationReport certify_sampling(const CommutingTriple& t, int npolys, int degree,
                                     int nsamples, std::uint64_t seed, double slack) {
    if (npolys < 1 || degree < 1 || nsamples < 1)
        throw InvalidInputError("certify_sampling: bad parameters");
    for (const auto& p : joint_spectrum(t)) {
        const MembershipVerdict v = member({p[0], p[1], p[2]});
        if (v.status == Membership::Outside)
            throw ConstraintViolationError("certify_sampling: joint spectrum leaves the closed tetrablock");
    }
    double max_ratio = 0.0;
    int worst = -1;
    for (int i = 0; i < npolys; ++i) {
        const Poly3 f = random_poly(degree, derive_seed(seed, 2 * static_cast<std::uint64_t>(i)));
        const double ratio =
            polynomial_ratio(t, f, nsamples, derive_seed(seed, 2 * static_cast<std::uint64_t>(i) + 1));
        if (ratio > max_ratio) {
            max_ratio = ratio;
            worst = i;
        }
    }
    CertificationReport rep;
    rep.verdict = max_ratio <= 1.0 + slack ? Verdict::StatisticalPass : Verdict::StatisticalFail;
    rep.method = Method::Sampling;
    rep.seed = seed;
    rep.details = {{"max_ratio", max_ratio},
                   {"worst_poly_index", static_cast<double>(worst)},
                   {"slack", slack},
                   {"npolys", static_cast<double>(npolys)},
                   {"degree", static_cast<double>(degree)},
                   {"nsamples", static_cast<double>(nsamples)}};
    return rep;
}

FundamentalPair fundamental_operators(const CommutingTriple& t) {
    const Eigen::Index n = t.dim();
    const ComplexMatrix d = defect_operator(t.t3);

    // Spectral decomposition of D with an absolute noise floor: a contraction's
    // defect eigenvalues live in [0, 1], and values at the sqrt-of-epsilon
    // scale are indistinguishable from the defect of a unitary.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(d);
    const double maxeig = n ? es.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
    const double cutoff = std::max(1e-10 * maxeig, 1e-7);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (es.eigenvalues()(i) > cutoff) ++rank;
    ComplexMatrix basis(n, rank);
    ComplexMatrix dinv = ComplexMatrix::Zero(n, n);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (es.eigenvalues()(i) <= cutoff) continue;
        basis.col(col++) = es.eigenvectors().col(i);
        dinv += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint() /
                es.eigenvalues()(i);
    }
    const ComplexMatrix proj = basis * basis.adjoint();  // projection onto Ran D

    const ComplexMatrix x1 = t.t1 - t.t2.adjoint() * t.t3;
    const ComplexMatrix x2 = t.t2 - t.t1.adjoint() * t.t3;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    // Both right-hand sides must live on the defect space for the
    // fundamental-operator equations to be solvable.
    double compat = 0.0;
    for (const ComplexMatrix* x : {&x1, &x2}) {
        compat = std::max(compat, operator_norm((id - proj) * *x));
        compat = std::max(compat, operator_norm(*x * (id - proj)));
    }
    if (compat > 1e-10)
        throw SolvabilityError("fundamental_operators: right-hand sides leave the defect space "
                               "(residual " + std::to_string(compat) + ")");

    FundamentalPair out;
    out.f1 = proj * (dinv * x1 * dinv) * proj;
    out.f2 = proj * (dinv * x2 * dinv) * proj;
    out.defect_projector = proj;
    out.solve_residual = std::max(operator_norm(d * out.f1 * d - x1),
                                  operator_norm(d * out.f2 * d - x2));
    out.defect_basis = basis;
    return out;
}

CommutatorResult commutator(const FundamentalPair& p) {
    ComplexMatrix c = p.f1 * p.f2 - p.f2 * p.f1;
    const double nrm = operator_norm(c);
    return {std::move(c), nrm};
}

double family_commutator_norm(Complex l1, Complex l2, Complex l3) {
    const double a1 = std::norm(l1), a2 = std::norm(l2), a3 = std::abs(l3);
    return std::abs(a1 - a2) * a3 / std::pow(1.0 - a3 * a3, 1.5);
}

}  // namespace tetra
