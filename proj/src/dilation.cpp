#include "tetra/dilation.hpp"

#include <cmath>

namespace tetra {

namespace {

void check_symbol_sizes(const ToeplitzSymbol& s, Eigen::Index d, const char* name) {
    if (s.coefficients.empty()) throw InvalidSymbolError(std::string(name) + ": empty symbol");
    for (const ComplexMatrix& c : s.coefficients)
        if (c.rows() != d || c.cols() != d)
            throw InvalidSymbolError(std::string(name) + ": coefficient size mismatch");
}

}  // namespace

TruncatedDilation assemble_dilation(const CommutingTriple& t, const FundamentalPair& p,
                                    ToeplitzSymbol phi1, ToeplitzSymbol phi2, ToeplitzSymbol phi3,
                                    int depth, int slot) {
    const Eigen::Index h = t.dim();
    const ComplexMatrix& b = p.defect_basis;  // n x d
    const Eigen::Index dd = b.cols();
    if (depth < 2) throw InvalidInputError("assemble_dilation: depth must be >= 2");
    if (slot < 1 || slot > depth) throw InvalidInputError("assemble_dilation: slot out of range");

    check_symbol_sizes(phi1, dd, "phi1");
    check_symbol_sizes(phi2, dd, "phi2");
    check_symbol_sizes(phi3, dd, "phi3");

    const ComplexMatrix d_op = defect_operator(t.t3);
    const ComplexMatrix f1 = b.adjoint() * p.f1 * b;
    const ComplexMatrix f2 = b.adjoint() * p.f2 * b;

    if (dd > 0) {
        // Endpoint conditions: phi1(0) = F1 = (1/n!) phi2^(n)(0)*, and the
        // symmetric pair. With polynomial symbols the n-th derivative at 0 is
        // n! times the top coefficient.
        const int n1 = phi1.degree(), n2 = phi2.degree();
        const double tol = 1e-12 * std::max(1.0, operator_norm(f1) + operator_norm(f2));
        if (operator_norm(phi1.coefficients[0] - f1) > tol)
            throw InvalidSymbolError("phi1(0) != F1");
        if (operator_norm(phi2.coefficients[0] - f2) > tol)
            throw InvalidSymbolError("phi2(0) != F2");
        if (operator_norm(phi2.coefficients[n2].adjoint() - f1) > tol)
            throw InvalidSymbolError("top coefficient of phi2 does not adjoint-match F1");
        if (operator_norm(phi1.coefficients[n1].adjoint() - f2) > tol)
            throw InvalidSymbolError("top coefficient of phi1 does not adjoint-match F2");
    }

    TruncatedDilation out;
    out.depth = depth;
    out.h_dim = h;
    out.defect_dim = dd;
    out.slot = slot;
    out.phi1 = std::move(phi1);
    out.phi2 = std::move(phi2);
    out.phi3 = std::move(phi3);

    const Eigen::Index total = h + depth * dd;
    auto build = [&](const ComplexMatrix& tj, const ToeplitzSymbol& sym,
                     const std::vector<ComplexMatrix>& column) {
        ComplexMatrix v = ComplexMatrix::Zero(total, total);
        v.topLeftCorner(h, h) = tj;
        for (int m = 0; m < depth; ++m) {
            if (m < static_cast<int>(column.size()) && column[m].size() > 0)
                v.block(h + m * dd, 0, dd, h) = column[m];
            for (int n = 0; n <= m; ++n) {
                const int k = m - n;
                if (k <= sym.degree())
                    v.block(h + m * dd, h + n * dd, dd, dd) = sym.coefficients[k];
            }
        }
        return v;
    };

    // C1 = (F2* D, 0, ...)^t, C2 = (F1* D, 0, ...)^t, C3 has D at `slot`,
    // all mapped into defect coordinates.
    std::vector<ComplexMatrix> c1(depth), c2(depth), c3(depth);
    if (dd > 0) {
        c1[0] = b.adjoint() * p.f2.adjoint() * d_op;
        c2[0] = b.adjoint() * p.f1.adjoint() * d_op;
        c3[slot - 1] = b.adjoint() * d_op;
    }
    out.v1 = build(t.t1, out.phi1, c1);
    out.v2 = build(t.t2, out.phi2, c2);
    out.v3 = build(t.t3, out.phi3, c3);
    return out;
}

TruncatedDilation build_theoremB(const CommutingTriple& t, const FundamentalPair& p, int depth,
                                 int slot) {
    const ComplexMatrix& b = p.defect_basis;
    const Eigen::Index dd = b.cols();
    const ComplexMatrix f1 = b.adjoint() * p.f1 * b;
    const ComplexMatrix f2 = b.adjoint() * p.f2 * b;
    const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);
    const ComplexMatrix zero = ComplexMatrix::Zero(dd, dd);
    ToeplitzSymbol phi1{{f1, f2.adjoint()}};
    ToeplitzSymbol phi2{{f2, f1.adjoint()}};
    ToeplitzSymbol phi3{{zero, id}};
    return assemble_dilation(t, p, std::move(phi1), std::move(phi2), std::move(phi3), depth, slot);
}

TruncatedDilation build_extended(const CommutingTriple& t, const FundamentalPair& p,
                                 const ComplexMatrix& xi, int depth, ExtendedForm form, int n,
                                 int slot) {
    if (form == ExtendedForm::Square) n = 2;
    if (n < 2) throw InvalidInputError("build_extended: n must be >= 2");
    if (depth < n + 2) throw InvalidInputError("build_extended: depth must be >= n + 2");
    const ComplexMatrix& b = p.defect_basis;
    const Eigen::Index dd = b.cols();
    if (xi.rows() != b.rows() || xi.cols() != b.rows())
        throw InvalidInputError("build_extended: Xi must act on the same space as F1, F2");
    const ComplexMatrix f1 = b.adjoint() * p.f1 * b;
    const ComplexMatrix f2 = b.adjoint() * p.f2 * b;
    const ComplexMatrix xid = b.adjoint() * xi * b;
    const ComplexMatrix zero = ComplexMatrix::Zero(dd, dd);

    // phi1 = F1 + Xi z + ... + F2* z^n, phi2 = F2 + ... + Xi* z^{n-1} + F1* z^n.
    // The middle-coefficient relations beyond the Xi slots are unspecified
    // upstream and are not validated here.
    ToeplitzSymbol phi1, phi2, phi3;
    phi1.coefficients.assign(n + 1, zero);
    phi2.coefficients.assign(n + 1, zero);
    phi3.coefficients.assign(n + 1, zero);
    phi1.coefficients[0] = f1;
    phi1.coefficients[1] = xid;
    phi1.coefficients[n] = f2.adjoint();
    phi2.coefficients[0] = f2;
    phi2.coefficients[n - 1] = phi2.coefficients[n - 1] + xid.adjoint();
    phi2.coefficients[n] = f1.adjoint();
    phi3.coefficients[n] = ComplexMatrix::Identity(dd, dd);
    if (n == 1) throw InvalidInputError("build_extended: n must be >= 2");
    return assemble_dilation(t, p, std::move(phi1), std::move(phi2), std::move(phi3), depth, slot);
}

double verify_coinvariance(const TruncatedDilation& d, const CommutingTriple& t) {
    const Eigen::Index h = d.h_dim;
    double res = 0.0;
    const ComplexMatrix* vs[3] = {&d.v1, &d.v2, &d.v3};
    const ComplexMatrix* ts[3] = {&t.t1, &t.t2, &t.t3};
    for (int j = 0; j < 3; ++j) {
        // P_H V_j* |_H is the (1,1) block of V_j*, and V_j* |_H also needs
        // the (1,2) block of V_j to vanish for H to be co-invariant.
        res = std::max(res, operator_norm(
                                ComplexMatrix(vs[j]->topLeftCorner(h, h).adjoint()) - ts[j]->adjoint()));
        if (vs[j]->cols() > h)
            res = std::max(res, operator_norm(ComplexMatrix(
                                    vs[j]->topRightCorner(h, vs[j]->cols() - h))));
    }
    return res;
}

double verify_compression(const TruncatedDilation& d, const CommutingTriple& t, int maxdeg) {
    if (maxdeg < 1) throw InvalidInputError("verify_compression: maxdeg must be >= 1");
    const Eigen::Index h = d.h_dim;
    // Fixed-order monomial products V1^i V2^j V3^k vs T1^i T2^j T3^k.
    auto powers = [maxdeg](const ComplexMatrix& m) {
        std::vector<ComplexMatrix> p(maxdeg + 1);
        p[0] = ComplexMatrix::Identity(m.rows(), m.cols());
        for (int e = 1; e <= maxdeg; ++e) p[e] = p[e - 1] * m;
        return p;
    };
    const auto pv1 = powers(d.v1), pv2 = powers(d.v2), pv3 = powers(d.v3);
    const auto pt1 = powers(t.t1), pt2 = powers(t.t2), pt3 = powers(t.t3);
    double res = 0.0;
    for (int i = 0; i <= maxdeg; ++i)
        for (int j = 0; i + j <= maxdeg; ++j)
            for (int k = 0; i + j + k <= maxdeg; ++k) {
                if (i + j + k == 0) continue;
                const ComplexMatrix pv = pv1[i] * pv2[j] * pv3[k];
                const ComplexMatrix pt = pt1[i] * pt2[j] * pt3[k];
                res = std::max(res, operator_norm(ComplexMatrix(pv.topLeftCorner(h, h)) - pt));
            }
    return res;
}

ResidualReport verify_isometry_conditions(const TruncatedDilation& d, int interior_depth) {
    if (interior_depth < 0 || interior_depth > d.depth - 2)
        throw InvalidInputError("verify_isometry_conditions: interior_depth must be <= depth - 2");
    const Eigen::Index m = d.h_dim + interior_depth * d.defect_dim;
    auto interior = [&](const ComplexMatrix& x) { return ComplexMatrix(x.topLeftCorner(m, m)); };

    ResidualReport rep;
    rep.isometry_interior =
        operator_norm(interior(d.v3.adjoint() * d.v3) - ComplexMatrix::Identity(m, m));
    double comm = 0.0;
    const ComplexMatrix* vs[3] = {&d.v1, &d.v2, &d.v3};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            comm = std::max(comm, operator_norm(interior(*vs[i] * *vs[j] - *vs[j] * *vs[i])));
    rep.commutation_interior = comm;
    rep.v1_eq_v2star_v3_interior = operator_norm(interior(d.v1 - d.v2.adjoint() * d.v3));
    rep.v2_norm = operator_norm(d.v2);
    return rep;
}

ResidualReport full_residual_report(const TruncatedDilation& d, const CommutingTriple& t,
                                    int maxdeg, int interior_depth) {
    ResidualReport rep = verify_isometry_conditions(d, interior_depth);
    rep.coinvariance = verify_coinvariance(d, t);
    rep.compression_maxdeg = verify_compression(d, t, maxdeg);
    return rep;
}

}  // namespace tetra
