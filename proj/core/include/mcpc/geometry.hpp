#pragma once

#include <vector>

namespace mcpc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Torus distance on a square of side `side`: minimum Euclidean distance over
// the nine copies of q shifted by (i*side, j*side), i,j in {-1,0,1}.
// Throws InputError on non-finite coordinates or side <= 0.
double wraparound_distance(const Point& p, const Point& q, double side);

// Centers of an n x n grid of equal square sub-areas covering
// [0, side)^2, where n = sqrt(num_cells). Throws ConfigError when
// num_cells is not a perfect square.
std::vector<Point> grid_bs_positions(int num_cells, double side);

// Exact integer square root test; returns -1 when n is not a perfect square.
int perfect_square_root(int n);

}  // namespace mcpc
