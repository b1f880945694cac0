#pragma once

#include <functional>

#include "gsns/dynamics.hpp"

namespace gsns {

struct NelderMeadResult {
    Vec x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
};

/// Standard downhill simplex (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Stops when the best value drops to target_value, the simplex
/// value spread falls below spread_tol, or max_iterations is hit. The best
/// vertex never worsens between iterations.
NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& objective, const Vec& start,
                             double initial_step, int max_iterations, double target_value = 0.0,
                             double spread_tol = 1e-14);

}  // namespace gsns
