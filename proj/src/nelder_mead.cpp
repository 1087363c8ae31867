#include "magnocool/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace magnocool {

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f,
                             const Vec& x0, double step, double ftol,
                             int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<Vec> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (int i = 0; i < n; ++i) xs[i + 1](i) += step;
  for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);

  std::vector<int> order(n + 1);
  NelderMeadResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0], worst = order[n], second_worst = order[n - 1];
    if (std::abs(fs[worst] - fs[best]) <=
        ftol * (std::abs(fs[best]) + std::abs(fs[worst]) + 1e-300) + ftol) {
      res.converged = true;
      break;
    }

    Vec centroid = Vec::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += xs[i];
    centroid /= n;

    const Vec xr = centroid + (centroid - xs[worst]);  // reflection
    const double fr = f(xr);
    if (fr < fs[best]) {
      const Vec xe = centroid + 2.0 * (centroid - xs[worst]);  // expansion
      const double fe = f(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second_worst]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      const Vec xc = centroid + 0.5 * (xs[worst] - centroid);  // contraction
      const double fc = f(xc);
      if (fc < fs[worst]) {
        xs[worst] = xc;
        fs[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {  // shrink toward best
          if (i == best) continue;
          xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
          fs[i] = f(xs[i]);
        }
      }
    }
  }

  const auto best_it = std::min_element(fs.begin(), fs.end());
  res.x = xs[static_cast<size_t>(best_it - fs.begin())];
  res.value = *best_it;
  res.iterations = iter;
  return res;
}

}  // namespace magnocool
