#include <doctest.h>

#include <cmath>

#include "tetra/poly.hpp"
#include "tetra/structure.hpp"

using namespace tetra;

namespace {

Poly3 z(int which) { return Poly3::variable(which); }

// Triple T2 = p(T1), T3 = q(T1) commutes for any T1.
CommutingTriple random_commuting_triple(std::uint64_t seed) {
    ComplexMatrix t1(3, 3);
    std::uint64_t c = 0;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) t1(i, j) = 0.2 * complex_gaussian(seed, c++);
    const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
    const ComplexMatrix t2 = 0.3 * t1 * t1 + 0.1 * t1 + 0.05 * id;
    const ComplexMatrix t3 = 0.2 * t1 * t1 * t1 - 0.4 * t1 + 0.02 * id;
    return CommutingTriple::make(t1, t2, t3);
}

}  // namespace

TEST_CASE("eval_point basics") {
    CHECK(std::abs(eval_point(z(2), {0.0, 0.0, 1.0}) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(eval_point(Poly3::constant(1.0), {0.3, -0.2, 0.9}) - Complex(1.0)) == 0.0);
    const Poly3 f = z(0) * z(1) + z(2) * z(2);
    CHECK(std::abs(eval_point(f, {0.5, 0.2, 0.1}) - Complex(0.11)) < 1e-15);
}

TEST_CASE("eval_triple on coordinate functions and the nilpotent family") {
    const CommutingTriple fam = CommutingTriple::nilpotent_family(0.2, 0.1, 0.15);
    CHECK(operator_norm(eval_triple(z(0), fam) - fam.t1) == 0.0);
    CHECK(operator_norm(eval_triple(z(0) * z(1), fam)) == 0.0);

    const Poly3 f = z(0) + z(2) * 2.0;
    const ComplexMatrix m = eval_triple(f, fam);
    CHECK(std::abs(m(0, 1) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(m(0, 0)) + std::abs(m(1, 0)) + std::abs(m(1, 1)) < 1e-15);
}

TEST_CASE("eval_triple rejects non-commuting input") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = a;
    a(0, 1) = 1.0;
    b(1, 0) = 1.0;
    CHECK_THROWS_AS(CommutingTriple::make(a, b, ComplexMatrix::Zero(2, 2)), InvalidTripleError);
    CommutingTriple bad{a, b, ComplexMatrix::Zero(2, 2), 1.0};
    CHECK_THROWS_AS(eval_triple(z(0), bad), InvalidTripleError);
}

TEST_CASE("eval_triple is multiplicative on random commuting triples") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CommutingTriple t = random_commuting_triple(800 + s);
        const Poly3 f = random_poly(3, derive_seed(21, s));
        const Poly3 g = random_poly(2, derive_seed(22, s));
        CHECK(operator_norm(eval_triple(f * g, t) - eval_triple(f, t) * eval_triple(g, t)) <= 1e-10);
    }
}

TEST_CASE("nilpotent family: f(T) = f(0) I + <lambda, grad f(0)> E12") {
    const Complex l1{0.2, 0.05}, l2{-0.1, 0.02}, l3{0.0, 0.15};
    const CommutingTriple fam = CommutingTriple::nilpotent_family(l1, l2, l3);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Poly3 f = random_poly(4, derive_seed(55, s));
        const ComplexMatrix m = eval_triple(f, fam);
        const Complex f0 = eval_point(f, {0.0, 0.0, 0.0});
        const auto g = gradient(f, {0.0, 0.0, 0.0});
        CHECK(std::abs(m(0, 0) - f0) < 1e-12);
        CHECK(std::abs(m(1, 1) - f0) < 1e-12);
        CHECK(std::abs(m(1, 0)) < 1e-12);
        CHECK(std::abs(m(0, 1) - (l1 * g[0] + l2 * g[1] + l3 * g[2])) < 1e-12);
    }
}

TEST_CASE("gradient basics") {
    const auto g1 = gradient(z(1), {0.7, -0.3, 0.1});
    CHECK(std::abs(g1[0]) + std::abs(g1[1] - Complex(1.0)) + std::abs(g1[2]) < 1e-15);

    const auto g2 = gradient(z(0) * z(2), {0.0, 0.0, 0.0});
    CHECK(std::abs(g2[0]) + std::abs(g2[1]) + std::abs(g2[2]) < 1e-15);

    const Poly3 f = z(0) * z(0) + z(1) * z(2) * 3.0;
    const auto g3 = gradient(f, {1.0, 2.0, 0.0});
    CHECK(std::abs(g3[0] - Complex(2.0)) < 1e-14);
    CHECK(std::abs(g3[1]) < 1e-14);
    CHECK(std::abs(g3[2] - Complex(6.0)) < 1e-14);
}

TEST_CASE("gradient matches central finite differences") {
    const double h = 1e-5;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const Poly3 f = random_poly(5, derive_seed(33, s));
        const std::uint64_t q = derive_seed(34, s);
        const TetraPoint p{{uniform01(q, 0) - 0.5, uniform01(q, 1) - 0.5},
                           {uniform01(q, 2) - 0.5, uniform01(q, 3) - 0.5},
                           {uniform01(q, 4) - 0.5, uniform01(q, 5) - 0.5}};
        const auto g = gradient(f, p);
        const std::array<Complex, 3> zs{p.x1, p.x2, p.x3};
        for (int v = 0; v < 3; ++v) {
            auto shift = [&](double d) {
                std::array<Complex, 3> w = zs;
                w[v] += d;
                return eval_point(f, {w[0], w[1], w[2]});
            };
            const Complex fd = (shift(h) - shift(-h)) / (2.0 * h);
            CHECK(std::abs(fd - g[v]) < 1e-8);
        }
    }
}

TEST_CASE("sup_norm_bE on z3, constants, and z1") {
    CHECK(sup_norm_bE(z(2), 100, 5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sup_norm_bE(Poly3::constant({0.3, -0.4}), 10, 5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sup_norm_bE(z(0), 10000, 5) >= 0.999);
}

TEST_CASE("sup_norm_bE never exceeds the true sup and is monotone in nsamples") {
    // |z1 + z2 + z3| has sup 3 on bE; |z1 z2 z3| has sup 1.
    const Poly3 f = z(0) + z(1) + z(2);
    double prev = 0.0;
    for (int n : {10, 50, 100, 500, 2000}) {
        const double v = sup_norm_bE(f, n, 99);
        CHECK(v <= 3.0 + 1e-10);
        CHECK(v >= prev - 1e-13);
        prev = v;
    }
    CHECK(prev >= 2.9);
    CHECK(sup_norm_bE(z(0) * z(1) * z(2), 2000, 1) <= 1.0 + 1e-10);
}

TEST_CASE("blaschke factor behavior") {
    CHECK(std::abs(blaschke({0.3, 0.0}, {0.3, 0.0})) < 1e-15);
    const Complex w{0.4, -0.2};
    CHECK(std::abs(blaschke(0.0, w) + w) < 1e-15);
    for (int i = 0; i < 100; ++i) {
        const double th = 2.0 * M_PI * i / 100.0;
        const Complex ew{std::cos(th), std::sin(th)};
        CHECK(std::abs(std::abs(blaschke({0.5, 0.0}, ew)) - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(blaschke({1.0, 0.0}, {0.0, 0.0}), InvalidInputError);
}

TEST_CASE("knese_check: constants and the extremal coordinate function") {
    const KneseReport c = knese_check(Poly3::constant(0.5), 1.0, 500, 3);
    CHECK(c.max_violation <= -0.74);  // LHS = 0, RHS >= 0.75
    CHECK_FALSE(c.violation);

    const KneseReport e = knese_check(z(0), 1.0, 2000, 3);
    CHECK(e.max_violation <= 1e-12);
    CHECK_FALSE(e.violation);
}

TEST_CASE("knese_check holds for certified random polynomials") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        Poly3 g = random_poly(4, derive_seed(44, s));
        double l1 = 0.0;
        for (const auto& [idx, c] : g.terms()) l1 += std::abs(c);
        g = g * (1.0 / l1);  // now maps the closed tridisk into the closed disk
        REQUIRE(tridisk_sup_certified(g) <= 1.0 + 1e-3 + 1e-12);
        const KneseReport rep = knese_check(g, 1.0, 2000, derive_seed(45, s));
        CHECK(rep.max_violation <= 1e-9);
        CHECK_FALSE(rep.violation);
    }
}

TEST_CASE("knese inequality for products of single-variable blaschke factors") {
    const Complex alphas[3] = {{0.3, 0.1}, {-0.2, 0.4}, {0.0, -0.5}};
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const std::uint64_t q = derive_seed(66, s);
        Complex zv[3];
        for (int v = 0; v < 3; ++v) {
            const double r = std::sqrt(uniform01(q, 2 * v));
            const double a = 2.0 * M_PI * uniform01(q, 2 * v + 1);
            zv[v] = r * Complex{std::cos(a), std::sin(a)};
        }
        Complex b[3], db[3];
        for (int v = 0; v < 3; ++v) {
            b[v] = blaschke(alphas[v], zv[v]);
            const Complex den = 1.0 - std::conj(alphas[v]) * zv[v];
            db[v] = (std::norm(alphas[v]) - 1.0) / (den * den);
        }
        double lhs = 0.0;
        lhs += (1.0 - std::norm(zv[0])) * std::abs(db[0] * b[1] * b[2]);
        lhs += (1.0 - std::norm(zv[1])) * std::abs(b[0] * db[1] * b[2]);
        lhs += (1.0 - std::norm(zv[2])) * std::abs(b[0] * b[1] * db[2]);
        const double rhs = 1.0 - std::norm(b[0] * b[1] * b[2]);
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("knese_check rejects an uncertified bound") {
    const Poly3 g = z(0) * 2.0;  // torus sup 2 > bound
    CHECK_THROWS_AS(knese_check(g, 1.0, 10, 0), InvalidInputError);
    CHECK_THROWS_AS(knese_check(z(0), 1.5, 10, 0), InvalidInputError);
}

TEST_CASE("schwarz_bound arithmetic") {
    const SchwarzBound a = schwarz_bound({0.0, 0.0, 1.0}, 1.0 / 3.0, 0.0);
    CHECK(a.lhs == doctest::Approx(1.0 / 3.0));
    CHECK(a.rhs == doctest::Approx(1.0));
    CHECK(a.holds);

    CHECK(schwarz_bound({0.0, 0.0, 0.0}, 0.9, 0.0).holds);

    const auto g = gradient(z(0) + z(1) + z(2), {0.0, 0.0, 0.0});
    const SchwarzBound c = schwarz_bound(g, 1.0 / 3.0, 0.0);
    CHECK(c.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.holds);
}

TEST_CASE("poly parse-free construction helpers") {
    Poly3 f;
    f.set(1, 2, 3, {0.5, 0.0});
    f.add(1, 2, 3, {0.5, 0.0});
    CHECK(std::abs(f.coeff(1, 2, 3) - Complex(1.0)) == 0.0);
    f.add(1, 2, 3, {-1.0, 0.0});
    CHECK(f.terms().empty());
    CHECK(f.total_degree() == 0);
    CHECK_THROWS_AS(f.set(-1, 0, 0, 1.0), InvalidInputError);
}
