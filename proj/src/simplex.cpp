#include "qev/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qev/error.hpp"

namespace qev {

namespace {

using Point = std::vector<double>;

Point clamp(Point p, Box box) {
    for (double& v : p) v = std::clamp(v, box.lo, box.hi);
    return p;
}

// p = a + s * (b - a), clamped
Point along(const Point& a, const Point& b, double s, Box box) {
    Point p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + s * (b[i] - a[i]);
    return clamp(std::move(p), box);
}

double radical_inverse(std::size_t index, unsigned base) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

}  // namespace

SimplexResult minimize_simplex(const Objective& f, Point x0, Box box, const SimplexOptions& opt) {
    const std::size_t n = x0.size();
    if (n == 0) throw Error(Errc::BadConfig, "simplex needs at least one dimension");
    if (!(box.lo < box.hi)) throw Error(Errc::BadConfig, "empty search box");

    SimplexResult res;
    res.x = clamp(std::move(x0), box);
    res.f = f(res.x);

    double step = opt.initial_step * (box.hi - box.lo);
    for (int round = 0; round <= opt.restarts && res.iterations < opt.max_iters; ++round) {
        std::vector<Point> v(n + 1, res.x);
        for (std::size_t j = 0; j < n; ++j) {
            v[j + 1][j] += (v[j + 1][j] + step <= box.hi) ? step : -step;
            v[j + 1] = clamp(std::move(v[j + 1]), box);
        }
        std::vector<double> fv(n + 1);
        fv[0] = res.f;
        for (std::size_t j = 1; j <= n; ++j) fv[j] = f(v[j]);

        std::vector<std::size_t> order(n + 1);
        bool converged = false;
        while (res.iterations < opt.max_iters) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[n - 1];
            if (fv[worst] - fv[best] <= opt.f_tol) {
                converged = true;
                break;
            }
            ++res.iterations;

            Point centroid(n, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) centroid[i] += v[order[k]][i];
            }
            for (double& c : centroid) c /= static_cast<double>(n);

            const Point xr = along(centroid, v[worst], -1.0, box);
            const double fr = f(xr);
            if (fr < fv[best]) {
                const Point xe = along(centroid, v[worst], -2.0, box);
                const double fe = f(xe);
                if (fe < fr) {
                    v[worst] = xe;
                    fv[worst] = fe;
                } else {
                    v[worst] = xr;
                    fv[worst] = fr;
                }
                continue;
            }
            if (fr < fv[second]) {
                v[worst] = xr;
                fv[worst] = fr;
                continue;
            }
            const bool outside = fr < fv[worst];
            const Point xc = outside ? along(centroid, xr, 0.5, box) : along(centroid, v[worst], 0.5, box);
            const double fc = f(xc);
            if (fc < (outside ? fr : fv[worst])) {
                v[worst] = xc;
                fv[worst] = fc;
                continue;
            }
            for (std::size_t k = 1; k <= n; ++k) {
                const std::size_t idx = order[k];
                v[idx] = along(v[best], v[idx], 0.5, box);
                fv[idx] = f(v[idx]);
            }
        }

        const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
        const double previous = res.f;
        if (fv[best] <= res.f) {
            res.x = v[best];
            res.f = fv[best];
        }
        res.converged = converged;
        // A restart that gains nothing means the simplex did not collapse early.
        if (round > 0 && previous - res.f <= opt.f_tol) break;
        step *= 0.1;
    }
    return res;
}

std::vector<Point> halton_starts(std::size_t count, std::size_t dim, Box box) {
    static constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (dim > std::size(kPrimes)) throw Error(Errc::BadConfig, "too many dimensions for Halton starts");
    std::vector<Point> out(count, Point(dim));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            out[i][d] = box.lo + (box.hi - box.lo) * radical_inverse(i + 1, kPrimes[d]);
        }
    }
    return out;
}

}  // namespace qev
