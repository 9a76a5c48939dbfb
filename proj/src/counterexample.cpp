#include "tetra/counterexample.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace tetra {

namespace {

nlohmann::ordered_json complex_json(Complex c) { return {c.real(), c.imag()}; }

nlohmann::ordered_json matrix_json(const ComplexMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

CounterexampleRecord generate(Complex l1, Complex l2, Complex l3, double margin) {
    const double r = inscribed_polydisk_radius_cached();
    const double bound = r - margin;
    const double a1 = std::abs(l1), a2 = std::abs(l2), a3 = std::abs(l3);
    if (!(a1 > 0.0 && a2 > 0.0 && a3 > 0.0))
        throw ConstraintViolationError("generate: hypothesis 0 < |lambda_j| fails");
    if (!(a1 < bound && a2 < bound && a3 < bound))
        throw ConstraintViolationError("generate: hypothesis |lambda_j| < r - margin fails (r = " +
                                       std::to_string(r) + ")");
    if (a1 == a2)
        throw ConstraintViolationError("generate: hypothesis |lambda_1| != |lambda_2| fails");

    CounterexampleRecord rec;
    rec.lambda = {l1, l2, l3};
    rec.r_used = r;
    rec.certification = certify_nilpotent_family(l1, l2, l3, r);
    rec.triple = CommutingTriple::nilpotent_family(l1, l2, l3);
    rec.fundamental = fundamental_operators(rec.triple);
    rec.commutator_norm = commutator(rec.fundamental).norm;

    const double closed = family_commutator_norm(l1, l2, l3);
    if (std::abs(rec.commutator_norm - closed) > 1e-12)
        throw InternalInconsistencyError("generate: commutator norm " +
                                         std::to_string(rec.commutator_norm) +
                                         " disagrees with closed form " + std::to_string(closed));

    const TruncatedDilation dil = build_theoremB(rec.triple, rec.fundamental, 8, 1);
    rec.theoremB_commutation_interior = verify_isometry_conditions(dil, 5).commutation_interior;
    return rec;
}

CounterexampleRecord generate_seeded(std::uint64_t seed, double margin) {
    const double r = inscribed_polydisk_radius_cached();
    const double bound = r - margin;
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t s = derive_seed(seed, attempt);
        Complex l[3];
        for (int j = 0; j < 3; ++j) {
            const double rad = bound * std::sqrt(uniform01(s, 2 * j));
            const double ang = 2.0 * M_PI * uniform01(s, 2 * j + 1);
            l[j] = rad * Complex{std::cos(ang), std::sin(ang)};
        }
        if (std::abs(l[0]) < 1e-3 || std::abs(l[1]) < 1e-3 || std::abs(l[2]) < 1e-3) continue;
        if (std::abs(std::abs(l[0]) - std::abs(l[1])) < 1e-6) continue;
        return generate(l[0], l[1], l[2], margin);
    }
}

CounterexampleSummary certify_report(const CounterexampleRecord& rec) {
    if (rec.certification.verdict != Verdict::Certified)
        throw InternalInconsistencyError("certify_report: record is not certified");
    if (!(rec.commutator_norm > 0.0))
        throw InternalInconsistencyError("certify_report: commutator norm is not positive");
    const double closed =
        family_commutator_norm(rec.lambda[0], rec.lambda[1], rec.lambda[2]);
    if (std::abs(rec.commutator_norm - closed) > 1e-12)
        throw InternalInconsistencyError("certify_report: commutator norm disagrees with closed form");

    nlohmann::ordered_json j;
    j["lambda"] = {complex_json(rec.lambda[0]), complex_json(rec.lambda[1]),
                   complex_json(rec.lambda[2])};
    j["r_used"] = rec.r_used;
    j["hypotheses"] = {{"nonzero_moduli", true},
                       {"moduli_below_r", true},
                       {"distinct_moduli_12", std::abs(rec.lambda[0]) != std::abs(rec.lambda[1])}};
    j["certificate"] = {{"verdict", to_string(rec.certification.verdict)},
                        {"method", to_string(rec.certification.method)}};
    j["fundamental"] = {{"f1", matrix_json(rec.fundamental.f1)},
                        {"f2", matrix_json(rec.fundamental.f2)},
                        {"solve_residual", rec.fundamental.solve_residual}};
    j["commutator_norm"] = rec.commutator_norm;
    j["theoremB_commutation_interior"] = rec.theoremB_commutation_interior;
    j["explicit_dilation_constructed"] = false;

    std::ostringstream os;
    os << "Tetrablock contraction certificate (Schwarz path)\n"
       << "  lambda = (" << rec.lambda[0] << ", " << rec.lambda[1] << ", " << rec.lambda[2]
       << "), r = " << rec.r_used << "\n"
       << "  hypotheses: 0 < |lambda_j| < r, |lambda_1| != |lambda_2| -- all hold\n"
       << "  fundamental operators solved with residual " << rec.fundamental.solve_residual << "\n"
       << "  ||[F1, F2]|| = " << rec.commutator_norm << " > 0 (non-commuting)\n"
       << "  Theorem-B-form tuple interior commutation residual = "
       << rec.theoremB_commutation_interior << "\n"
       << "  An explicit tetrablock isometric dilation for this triple is not constructed;\n"
       << "  existence of a tetrablock unitary dilation is guaranteed abstractly.\n";
    return {os.str(), j.dump(2)};
}

}  // namespace tetra
