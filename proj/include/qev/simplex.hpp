#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qev/error.hpp"

namespace qev {

struct Box {
    double lo = -10.0;
    double hi = 10.0;
};

struct SimplexOptions {
    double f_tol = 1e-10;   // stop when max f - min f over the simplex <= f_tol
    int max_iters = 2000;   // reflections/contractions, summed over restarts
    double initial_step = 0.1;  // fraction of the box width
    int restarts = 2;       // re-seed at the converged point to escape collapsed simplices
};

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5). Every trial point
/// is clamped into the box, so the result always lies inside it.
SimplexResult minimize_simplex(const Objective& f, std::vector<double> x0, Box box, const SimplexOptions& opt = {});

/// Deterministic start points: the Halton sequence (bases 2, 3, 5, ...)
/// scaled into the box. Point i uses sequence index i + 1.
std::vector<std::vector<double>> halton_starts(std::size_t count, std::size_t dim, Box box);

}  // namespace qev
