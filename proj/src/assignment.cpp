#include "ordo/assignment.hpp"

#include <limits>

#include "ordo/error.hpp"

namespace ordo {

// Shortest-augmenting-path assignment with row/column potentials on the
// negated matrix (minimization form).
double max_assignment(const std::vector<double>& values, std::size_t n,
                      std::vector<std::size_t>* column_of_row) {
  if (n == 0) return 0.0;
  if (values.size() < n * n) throw Error("assignment matrix too small");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  auto cost = [&](std::size_t i, std::size_t j) { return -values[i * n + j]; };

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  if (column_of_row) column_of_row->assign(n, 0);
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    total += values[(p[j] - 1) * n + (j - 1)];
    if (column_of_row) (*column_of_row)[p[j] - 1] = j - 1;
  }
  return total;
}

}  // namespace ordo
