#include "mcpc/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mcpc/errors.hpp"

namespace mcpc {

double wraparound_distance(const Point& p, const Point& q, double side) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(q.x) ||
        !std::isfinite(q.y))
        throw InputError("wraparound_distance: non-finite coordinates");
    if (!(side > 0.0) || !std::isfinite(side))
        throw InputError("wraparound_distance: side must be positive and finite");

    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            double dx = q.x + i * side - p.x;
            double dy = q.y + j * side - p.y;
            double d = std::hypot(dx, dy);
            if (d < best) best = d;
        }
    }
    return best;
}

int perfect_square_root(int n) {
    if (n < 0) return -1;
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    for (int c = r - 1; c <= r + 1; ++c)
        if (c >= 0 && c * c == n) return c;
    return -1;
}

std::vector<Point> grid_bs_positions(int num_cells, double side) {
    int n = perfect_square_root(num_cells);
    if (n <= 0)
        throw ConfigError("grid layout requires num_cells to be a perfect square, got " +
                          std::to_string(num_cells));
    double cell = side / n;
    std::vector<Point> bs(num_cells);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            bs[static_cast<std::size_t>(i) * n + j] = {(i + 0.5) * cell, (j + 0.5) * cell};
    return bs;
}

}  // namespace mcpc
