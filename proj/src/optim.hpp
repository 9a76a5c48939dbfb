#pragma once

// Small local-search helpers shared by the geometry and calculus modules.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace tetra::detail {

// Nelder-Mead minimization in low dimension. Deterministic for a given
// starting point; good enough for smooth local refinement.
inline std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x0, double step, int max_iter = 200,
                                       double ftol = 1e-13) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> p2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            p2[i] = pts[idx[i]];
            f2[i] = fv[idx[i]];
        }
        pts.swap(p2);
        fv.swap(f2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        if (std::abs(fv[n] - fv[0]) < ftol * (1.0 + std::abs(fv[0]))) break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
        auto at = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + coef * (pts[n][j] - centroid[j]);
            return x;
        };
        std::vector<double> xr = at(-1.0);
        double fr = f(xr);
        if (fr < fv[0]) {
            std::vector<double> xe = at(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                pts[n] = xe;
                fv[n] = fe;
            } else {
                pts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            pts[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = at(0.5);
            double fc = f(xc);
            if (fc < fv[n]) {
                pts[n] = xc;
                fv[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return pts[0];
}

// Golden-section minimization of a unimodal function on [a, b].
inline double golden_section(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-12) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace tetra::detail
