#include "tetra/poly.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "optim.hpp"

namespace tetra {

namespace {
constexpr double kPruneEps = 0.0;  // keep exact zeros out, nothing else
}

Poly3 Poly3::constant(Complex c) {
    Poly3 f;
    f.set(0, 0, 0, c);
    return f;
}

Poly3 Poly3::variable(int which) {
    Poly3 f;
    f.set(which == 0 ? 1 : 0, which == 1 ? 1 : 0, which == 2 ? 1 : 0, 1.0);
    return f;
}

Poly3 Poly3::monomial(int i, int j, int k, Complex c) {
    Poly3 f;
    f.set(i, j, k, c);
    return f;
}

void Poly3::set(int i, int j, int k, Complex c) {
    if (i < 0 || j < 0 || k < 0) throw InvalidInputError("Poly3: negative exponent");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InvalidInputError("Poly3: non-finite coefficient");
    if (c == Complex(0.0))
        terms_.erase({i, j, k});
    else
        terms_[{i, j, k}] = c;
}

void Poly3::add(int i, int j, int k, Complex c) { set(i, j, k, coeff(i, j, k) + c); }

Complex Poly3::coeff(int i, int j, int k) const {
    auto it = terms_.find({i, j, k});
    return it == terms_.end() ? Complex(0.0) : it->second;
}

int Poly3::total_degree() const {
    int d = 0;
    for (const auto& [idx, c] : terms_) d = std::max(d, idx[0] + idx[1] + idx[2]);
    return d;
}

Poly3 Poly3::operator+(const Poly3& other) const {
    Poly3 out = *this;
    for (const auto& [idx, c] : other.terms_) out.add(idx[0], idx[1], idx[2], c);
    return out;
}

Poly3 Poly3::operator*(const Poly3& other) const {
    Poly3 out;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : other.terms_) out.add(a[0] + b[0], a[1] + b[1], a[2] + b[2], ca * cb);
    return out;
}

Poly3 Poly3::operator*(Complex scalar) const {
    Poly3 out;
    for (const auto& [idx, c] : terms_) out.set(idx[0], idx[1], idx[2], c * scalar);
    return out;
}

Poly3 Poly3::derivative(int which) const {
    Poly3 out;
    for (const auto& [idx, c] : terms_) {
        if (idx[which] == 0) continue;
        Index d = idx;
        d[which] -= 1;
        out.add(d[0], d[1], d[2], c * static_cast<double>(idx[which]));
    }
    return out;
}

void Poly3::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (std::abs(it->second) <= kPruneEps) ? terms_.erase(it) : std::next(it);
}

std::string Poly3::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        if (idx[0]) os << " z1^" << idx[0];
        if (idx[1]) os << " z2^" << idx[1];
        if (idx[2]) os << " z3^" << idx[2];
    }
    return first ? "0" : os.str();
}

namespace {

// Per-variable power tables up to the degrees present in f.
std::array<int, 3> max_degrees(const Poly3& f) {
    std::array<int, 3> d{0, 0, 0};
    for (const auto& [idx, c] : f.terms())
        for (int v = 0; v < 3; ++v) d[v] = std::max(d[v], idx[v]);
    return d;
}

}  // namespace

Complex eval_point(const Poly3& f, const TetraPoint& p) {
    const auto deg = max_degrees(f);
    std::array<std::vector<Complex>, 3> pow;
    const std::array<Complex, 3> z{p.x1, p.x2, p.x3};
    for (int v = 0; v < 3; ++v) {
        pow[v].resize(deg[v] + 1);
        pow[v][0] = 1.0;
        for (int e = 1; e <= deg[v]; ++e) pow[v][e] = pow[v][e - 1] * z[v];
    }
    Complex acc = 0.0;
    for (const auto& [idx, c] : f.terms()) acc += c * pow[0][idx[0]] * pow[1][idx[1]] * pow[2][idx[2]];
    return acc;
}

ComplexMatrix eval_triple(const Poly3& f, const CommutingTriple& t) {
    if (t.commutation_residual > 1e-10)
        throw InvalidTripleError("eval_triple: commutation residual " +
                                 std::to_string(t.commutation_residual) + " exceeds 1e-10");
    const Eigen::Index n = t.dim();
    const auto deg = max_degrees(f);
    std::array<std::vector<ComplexMatrix>, 3> pow;
    const std::array<const ComplexMatrix*, 3> m{&t.t1, &t.t2, &t.t3};
    for (int v = 0; v < 3; ++v) {
        pow[v].resize(deg[v] + 1);
        pow[v][0] = ComplexMatrix::Identity(n, n);
        for (int e = 1; e <= deg[v]; ++e) pow[v][e] = pow[v][e - 1] * (*m[v]);
    }
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (const auto& [idx, c] : f.terms()) acc += c * pow[0][idx[0]] * pow[1][idx[1]] * pow[2][idx[2]];
    return acc;
}

std::array<Complex, 3> gradient(const Poly3& f, const TetraPoint& p) {
    return {eval_point(f.derivative(0), p), eval_point(f.derivative(1), p),
            eval_point(f.derivative(2), p)};
}

namespace {

// |f| at the bE chart point (s e^{i(c-b)}, s e^{ib}, e^{ic}), s clamped to [0, 1].
double abs_f_on_bE(const Poly3& f, double s, double b, double c) {
    s = std::clamp(s, 0.0, 1.0);
    const Complex x3{std::cos(c), std::sin(c)};
    const Complex x2 = s * Complex{std::cos(b), std::sin(b)};
    const Complex x1 = std::conj(x2) * x3;
    return std::abs(eval_point(f, {x1, x2, x3}));
}

double refine_on_bE(const Poly3& f, double s, double b, double c) {
    auto obj = [&](const std::vector<double>& a) { return -abs_f_on_bE(f, a[0], a[1], a[2]); };
    const std::vector<double> best = detail::nelder_mead(obj, {s, b, c}, 0.15, 250);
    return -obj(best);
}

}  // namespace

double sup_norm_bE(const Poly3& f, int nsamples, std::uint64_t seed) {
    if (nsamples < 1) throw InvalidInputError("sup_norm_bE: nsamples must be >= 1");
    double best = 0.0;
    TetraPoint best_pt{0.0, 0.0, 1.0};
    const std::vector<TetraPoint> pts = sample_distinguished_boundary(nsamples, seed);
    for (const TetraPoint& p : pts) {
        const double v = std::abs(eval_point(f, p));
        if (v >= best) {
            best = v;
            best_pt = p;
        }
    }
    // Refinement from the best sample.
    double out = std::max(best, refine_on_bE(f, std::abs(best_pt.x2), std::arg(best_pt.x2),
                                             std::arg(best_pt.x3)));
    // Second refinement from the best point of a fixed coarse chart grid;
    // this part is independent of nsamples, so the estimate stays monotone
    // as the nested sample set grows.
    constexpr int kS = 3, kAng = 6;
    double gbest = -1.0, gs = 1.0, gb = 0.0, gc = 0.0;
    for (int is = 0; is < kS; ++is)
        for (int ib = 0; ib < kAng; ++ib)
            for (int ic = 0; ic < kAng; ++ic) {
                const double s = (is + 1.0) / kS;
                const double b = 2.0 * M_PI * ib / kAng;
                const double c = 2.0 * M_PI * ic / kAng;
                const double v = abs_f_on_bE(f, s, b, c);
                if (v > gbest) {
                    gbest = v;
                    gs = s;
                    gb = b;
                    gc = c;
                }
            }
    return std::max(out, refine_on_bE(f, gs, gb, gc));
}

Complex blaschke(Complex alpha, Complex w) {
    if (std::abs(alpha) >= 1.0) throw InvalidInputError("blaschke: |alpha| must be < 1");
    const Complex den = 1.0 - std::conj(alpha) * w;
    if (den == Complex(0.0)) throw InvalidInputError("blaschke: pole at w");
    return (alpha - w) / den;
}

double torus_sup_estimate(const Poly3& g, int grid_per_dim) {
    if (grid_per_dim < 1) throw InvalidInputError("torus_sup_estimate: bad grid");
    std::vector<Complex> phase(grid_per_dim);
    for (int i = 0; i < grid_per_dim; ++i) {
        const double a = 2.0 * M_PI * i / grid_per_dim;
        phase[i] = {std::cos(a), std::sin(a)};
    }
    double best = 0.0;
    for (int i = 0; i < grid_per_dim; ++i)
        for (int j = 0; j < grid_per_dim; ++j)
            for (int k = 0; k < grid_per_dim; ++k)
                best = std::max(best, std::abs(eval_point(g, {phase[i], phase[j], phase[k]})));
    return best;
}

double tridisk_sup_certified(const Poly3& g) { return torus_sup_estimate(g, 64) * (1.0 + 1e-3); }

KneseReport knese_check(const Poly3& g, double bound, int nsamples, std::uint64_t seed) {
    if (!(bound <= 1.0)) throw InvalidInputError("knese_check: bound must be <= 1");
    if (nsamples < 1) throw InvalidInputError("knese_check: nsamples must be >= 1");
    // The torus estimate is a lower bound of the tridisk sup; exceeding the
    // certified bound is a definite precondition breach.
    if (torus_sup_estimate(g, 64) > bound * (1.0 + 1e-9))
        throw InvalidInputError("knese_check: g exceeds the certified bound on the torus");

    const Poly3 g1 = g.derivative(0), g2 = g.derivative(1), g3 = g.derivative(2);
    KneseReport rep{-std::numeric_limits<double>::infinity(), {0.0, 0.0, 0.0}, false};
    for (int i = 0; i < nsamples; ++i) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
        TetraPoint z;
        Complex* coords[3] = {&z.x1, &z.x2, &z.x3};
        for (int v = 0; v < 3; ++v) {
            const double r = std::sqrt(uniform01(s, 2 * v));
            const double a = 2.0 * M_PI * uniform01(s, 2 * v + 1);
            *coords[v] = r * Complex{std::cos(a), std::sin(a)};
        }
        const double lhs = (1.0 - std::norm(z.x1)) * std::abs(eval_point(g1, z)) +
                           (1.0 - std::norm(z.x2)) * std::abs(eval_point(g2, z)) +
                           (1.0 - std::norm(z.x3)) * std::abs(eval_point(g3, z));
        const double rhs = 1.0 - std::norm(eval_point(g, z));
        if (lhs - rhs > rep.max_violation) {
            rep.max_violation = lhs - rhs;
            rep.worst_point = {z.x1, z.x2, z.x3};
        }
    }
    rep.violation = rep.max_violation > 1e-9;
    return rep;
}

SchwarzBound schwarz_bound(const std::array<Complex, 3>& grad, double r, Complex f0) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidInputError("schwarz_bound: r must be in (0, 1)");
    const double lhs = r * (std::abs(grad[0]) + std::abs(grad[1]) + std::abs(grad[2]));
    const double rhs = 1.0 - std::norm(f0);
    return {lhs, rhs, lhs <= rhs + 1e-12};
}

Poly3 random_poly(int max_degree, std::uint64_t seed) {
    if (max_degree < 0) throw InvalidInputError("random_poly: negative degree");
    Poly3 f;
    std::uint64_t counter = 0;
    for (int d = 0; d <= max_degree; ++d)
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j) {
                const int k = d - i - j;
                f.set(i, j, k, complex_gaussian(seed, counter++) / (1.0 + d));
            }
    return f;
}

}  // namespace tetra
