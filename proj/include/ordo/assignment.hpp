#pragma once

#include <cstddef>
#include <vector>

namespace ordo {

// Maximum-total-value assignment of n rows to n columns over a dense
// row-major value matrix; O(n^3) shortest-augmenting-path method.
// Returns the optimal total; when `column_of_row` is non-null it receives
// the chosen column per row.
double max_assignment(const std::vector<double>& values, std::size_t n,
                      std::vector<std::size_t>* column_of_row = nullptr);

}  // namespace ordo
