#include "gsns/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace gsns {

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& objective, const Vec& start,
                             double initial_step, int max_iterations, double target_value,
                             double spread_tol) {
    const auto d = start.size();
    const auto m = static_cast<std::size_t>(d) + 1;

    std::vector<Vec> pts(m, start);
    std::vector<double> val(m);
    for (std::size_t i = 1; i < m; ++i) pts[i][static_cast<Eigen::Index>(i - 1)] += initial_step;
    int evals = 0;
    for (std::size_t i = 0; i < m; ++i) {
        val[i] = objective(pts[i]);
        ++evals;
    }

    std::vector<std::size_t> order(m);
    auto resort = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    };
    resort();

    NelderMeadResult res;
    int iter = 0;
    while (iter < max_iterations) {
        const std::size_t best = order[0], worst = order[m - 1], second = order[m - 2];
        if (val[best] <= target_value) break;
        if (val[worst] - val[best] < spread_tol) break;
        ++iter;

        Vec centroid = Vec::Zero(d);
        for (std::size_t i = 0; i < m; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(d);

        Vec refl = centroid + (centroid - pts[worst]);
        const double f_refl = objective(refl);
        ++evals;
        if (f_refl < val[best]) {
            Vec expa = centroid + 2.0 * (centroid - pts[worst]);
            const double f_expa = objective(expa);
            ++evals;
            if (f_expa < f_refl) {
                pts[worst] = std::move(expa);
                val[worst] = f_expa;
            } else {
                pts[worst] = std::move(refl);
                val[worst] = f_refl;
            }
        } else if (f_refl < val[second]) {
            pts[worst] = std::move(refl);
            val[worst] = f_refl;
        } else {
            Vec contr = f_refl < val[worst] ? Vec(centroid + 0.5 * (refl - centroid))
                                            : Vec(centroid + 0.5 * (pts[worst] - centroid));
            const double f_contr = objective(contr);
            ++evals;
            const double against = std::min(f_refl, val[worst]);
            if (f_contr < against) {
                pts[worst] = std::move(contr);
                val[worst] = f_contr;
            } else {
                for (std::size_t i = 0; i < m; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    val[i] = objective(pts[i]);
                    ++evals;
                }
            }
        }
        resort();
    }

    res.x = pts[order[0]];
    res.value = val[order[0]];
    res.iterations = iter;
    res.evaluations = evals;
    return res;
}

}  // namespace gsns
