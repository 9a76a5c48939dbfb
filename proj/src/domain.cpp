#include "tetra/domain.hpp"

#include <cmath>

#include "optim.hpp"

namespace tetra {

namespace {

bool finite_point(const TetraPoint& p) {
    for (Complex c : {p.x1, p.x2, p.x3})
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

ComplexMatrix witness_at(const TetraPoint& p, double t) {
    const Complex prod = p.x1 * p.x2 - p.x3;
    ComplexMatrix a(2, 2);
    a << p.x1, Complex(t, 0.0), prod / t, p.x2;
    return a;
}

}  // namespace

double closed_form_slack(const TetraPoint& p) {
    return (1.0 - std::norm(p.x3)) -
           (std::abs(p.x1 - std::conj(p.x2) * p.x3) + std::abs(p.x2 - std::conj(p.x1) * p.x3));
}

double min_witness_norm(const TetraPoint& p, ComplexMatrix* witness) {
    if (!finite_point(p)) throw InvalidInputError("min_witness_norm: non-finite point");
    // The witness family [[x1, t], [prod/t, x2]] has determinant exactly x3
    // for every t > 0; only t = |a12| varies. Coarse log-grid, then
    // golden-section around the best bracket.
    auto h = [&](double u) { return operator_norm(witness_at(p, std::exp(u))); };
    const double lo = -14.0, hi = 14.0;
    const int n = 57;
    double best_u = lo, best_v = h(lo);
    for (int i = 1; i < n; ++i) {
        const double u = lo + (hi - lo) * i / (n - 1);
        const double v = h(u);
        if (v < best_v) {
            best_v = v;
            best_u = u;
        }
    }
    const double span = (hi - lo) / (n - 1);
    const double u_star = detail::golden_section(h, best_u - span, best_u + span, 1e-12);
    double v_star = h(u_star);
    if (v_star > best_v) v_star = best_v; else best_u = u_star;
    if (witness) *witness = witness_at(p, std::exp(best_u));
    return v_star;
}

MembershipVerdict member(const TetraPoint& p, double tol) {
    if (!finite_point(p)) throw InvalidInputError("member: non-finite point");
    ComplexMatrix w;
    const double min_norm = min_witness_norm(p, &w);
    const double margin = 1.0 - min_norm;
    const double slack = closed_form_slack(p);

    Membership status;
    if (std::abs(margin) <= tol) {
        status = Membership::ClosureBoundary;
    } else {
        const Membership from_witness = margin > 0 ? Membership::Interior : Membership::Outside;
        const Membership from_closed_form = slack > 0 ? Membership::Interior : Membership::Outside;
        if (from_witness != from_closed_form)
            throw InternalInconsistencyError(
                "member: closed-form criterion and witness search disagree (margin " +
                std::to_string(margin) + ", slack " + std::to_string(slack) + ")");
        status = from_witness;
    }

    MembershipVerdict v{status, margin, std::nullopt};
    if (min_norm <= 1.0 + tol) v.witness = w;
    return v;
}

bool on_distinguished_boundary(const TetraPoint& p, double tol) {
    if (!finite_point(p)) throw InvalidInputError("on_distinguished_boundary: non-finite point");
    if (std::abs(std::abs(p.x3) - 1.0) > tol) return false;
    // Closure membership via the scalar criterion, within the same band.
    return closed_form_slack(p) >= -tol;
}

std::vector<TetraPoint> sample_distinguished_boundary(int n, std::uint64_t seed) {
    if (n < 1) throw InvalidInputError("sample_distinguished_boundary: n must be >= 1");
    std::vector<TetraPoint> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix u = random_unitary(2, derive_seed(seed, static_cast<std::uint64_t>(i)));
        pts.push_back({u(0, 0), u(1, 1), u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0)});
    }
    return pts;
}

namespace {

// Minimal closed-form membership slack over the torus |z_j| = r, by a
// 48^3 phase grid followed by Nelder-Mead refinement of the worst point.
double worst_slack_on_torus(double r) {
    constexpr int kGrid = 48;
    static std::vector<Complex> phase = [] {
        std::vector<Complex> ph(kGrid);
        for (int i = 0; i < kGrid; ++i) {
            const double a = 2.0 * M_PI * i / kGrid;
            ph[i] = {std::cos(a), std::sin(a)};
        }
        return ph;
    }();

    auto slack_at = [&](Complex w1, Complex w2, Complex w3) {
        const Complex z1 = r * w1, z2 = r * w2, z3 = r * w3;
        return (1.0 - std::norm(z3)) -
               (std::abs(z1 - std::conj(z2) * z3) + std::abs(z2 - std::conj(z1) * z3));
    };

    double best = 1.0;
    int bi = 0, bj = 0, bk = 0;
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j)
            for (int k = 0; k < kGrid; ++k) {
                const double s = slack_at(phase[i], phase[j], phase[k]);
                if (s < best) {
                    best = s;
                    bi = i;
                    bj = j;
                    bk = k;
                }
            }

    auto obj = [&](const std::vector<double>& a) {
        return slack_at({std::cos(a[0]), std::sin(a[0])}, {std::cos(a[1]), std::sin(a[1])},
                        {std::cos(a[2]), std::sin(a[2])});
    };
    const std::vector<double> refined = detail::nelder_mead(
        obj, {2.0 * M_PI * bi / kGrid, 2.0 * M_PI * bj / kGrid, 2.0 * M_PI * bk / kGrid},
        2.0 * M_PI / kGrid, 300);
    return std::min(best, obj(refined));
}

}  // namespace

double inscribed_polydisk_radius(double tol) {
    if (!(tol > 0.0 && tol < 1e-2)) throw InvalidInputError("inscribed_polydisk_radius: bad tol");
    // Inclusion of the closed polydisk r D^3 in E is monotone in r, and the
    // binding constraint is attained on the torus |z_j| = r.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (worst_slack_on_torus(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double inscribed_polydisk_radius_cached() {
    static const double r = inscribed_polydisk_radius(1e-6);
    return r;
}

}  // namespace tetra
