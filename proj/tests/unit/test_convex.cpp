#include <doctest.h>

#include <cmath>

#include "mcpc/convex.hpp"
#include "mcpc/rng.hpp"

using namespace mcpc;

namespace {

ConvexProgram max_x_subject_to_x_le_zero() {
    ConvexProgram p;
    p.num_vars = 1;
    p.objective = {{ObjectiveTerm::Kind::Linear, 0, 1.0, 0.0}};
    LseConstraint c;
    c.bound = 0.0;
    c.terms.push_back({1.0, {{0, 1.0}}});
    p.constraints.push_back(c);
    return p;
}

std::vector<double> concavity_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 1e-12; x += step) g.push_back(x);
    return g;
}

}  // namespace

TEST_CASE("solve: maximize x with log(e^x) <= 0") {
    auto r = solve(max_x_subject_to_x_le_zero());
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(std::abs(r.x[0]) < 1e-6);
    CHECK(r.objective_value == doctest::Approx(0.0).scale(1).epsilon(1e-6));
    CHECK(r.kkt_residual <= 1e-7);
}

TEST_CASE("solve: symmetric two-variable log-sum-exp budget") {
    ConvexProgram p;
    p.num_vars = 2;
    p.objective = {{ObjectiveTerm::Kind::Linear, 0, 1.0, 0.0},
                   {ObjectiveTerm::Kind::Linear, 1, 1.0, 0.0}};
    LseConstraint c;
    c.bound = std::log(2.0);
    c.terms.push_back({1.0, {{0, 1.0}}});
    c.terms.push_back({1.0, {{1, 1.0}}});
    p.constraints.push_back(c);
    auto r = solve(p);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(std::abs(r.x[0]) < 1e-6);
    CHECK(std::abs(r.x[1]) < 1e-6);
}

TEST_CASE("solve: monotone loglog objective rides the upper bound") {
    ConvexProgram p;
    p.num_vars = 1;
    p.objective = {{ObjectiveTerm::Kind::LogLog1pExp, 0, 1.0, 1e-3}};
    p.lower = {-50.0};
    p.upper = {std::log(3.0)};
    auto r = solve(p);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.x[0] == doctest::Approx(std::log(3.0)).epsilon(1e-6));
}

TEST_CASE("solve: infeasible system is certified") {
    ConvexProgram p;
    p.num_vars = 1;
    p.objective = {{ObjectiveTerm::Kind::Linear, 0, 1.0, 0.0}};
    LseConstraint a; // x <= -1
    a.bound = -1.0;
    a.terms.push_back({1.0, {{0, 1.0}}});
    LseConstraint b; // -x <= -1  (x >= 1)
    b.bound = -1.0;
    b.terms.push_back({1.0, {{0, -1.0}}});
    p.constraints = {a, b};
    auto r = solve(p);
    CHECK(r.status == SolveStatus::Infeasible);
}

TEST_CASE("solve: phase one recovers from an infeasible warm start") {
    auto p = max_x_subject_to_x_le_zero();
    SolveOptions opts;
    opts.initial_point = {25.0}; // violates the constraint
    auto r = solve(p, opts);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(std::abs(r.x[0]) < 1e-6);
}

TEST_CASE("solve is deterministic") {
    ConvexProgram p;
    p.num_vars = 2;
    p.objective = {{ObjectiveTerm::Kind::LogLog1pExp, 0, 1.0, 1e-3},
                   {ObjectiveTerm::Kind::Linear, 1, 0.5, 0.0}};
    LseConstraint c;
    c.bound = 1.0;
    c.terms.push_back({0.5, {{0, 1.0}, {1, 1.0}}});
    c.terms.push_back({1.5, {{1, 1.0}}});
    p.constraints.push_back(c);
    p.lower = {-40.0, -40.0};
    p.upper = {40.0, 40.0};
    auto r1 = solve(p);
    auto r2 = solve(p);
    CHECK(r1.status == r2.status);
    CHECK(r1.iterations == r2.iterations);
    CHECK(r1.x[0] == r2.x[0]); // bitwise
    CHECK(r1.x[1] == r2.x[1]);
    CHECK(r1.objective_value == r2.objective_value);
}

TEST_CASE("on optimal, feasible perturbations never improve the objective") {
    ConvexProgram p;
    p.num_vars = 2;
    p.objective = {{ObjectiveTerm::Kind::LogLog1pExp, 0, 1.0, 1e-2},
                   {ObjectiveTerm::Kind::LogLog1pExp, 1, 1.0, 1e-2}};
    LseConstraint c; // log(e^{x0} + 2 e^{x1}) <= 2
    c.bound = 2.0;
    c.terms.push_back({1.0, {{0, 1.0}}});
    c.terms.push_back({2.0, {{1, 1.0}}});
    p.constraints.push_back(c);
    auto r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    Rng rng(17);
    int feasible_tried = 0;
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x = r.x;
        double dx = rng.normal(), dy = rng.normal();
        double norm = std::hypot(dx, dy);
        x[0] += 1e-3 * dx / norm;
        x[1] += 1e-3 * dy / norm;
        if (p.constraints[0].violation(x) <= 0.0) {
            ++feasible_tried;
            CHECK(p.objective_value(x) <= r.objective_value + 1e-7);
        }
    }
    CHECK(feasible_tried > 0);
}

TEST_CASE("LSE constraints are convex along random segments") {
    Rng rng(23);
    for (int inst = 0; inst < 20; ++inst) {
        LseConstraint c;
        c.bound = 0.0;
        int terms = 1 + static_cast<int>(rng.uniform() * 4);
        for (int j = 0; j < terms; ++j) {
            LseConstraint::Term t;
            t.coeff = std::exp(rng.uniform(-2.0, 2.0));
            for (int v = 0; v < 3; ++v)
                if (rng.uniform() < 0.7)
                    t.lin.emplace_back(v, std::round(rng.uniform(-2.0, 2.0)));
            c.terms.push_back(t);
        }
        std::vector<double> x(3), y(3), z(3);
        for (int v = 0; v < 3; ++v) {
            x[v] = rng.uniform(-3.0, 3.0);
            y[v] = rng.uniform(-3.0, 3.0);
        }
        double fx = c.violation(x), fy = c.violation(y);
        for (double theta : {0.1, 0.35, 0.6, 0.9}) {
            for (int v = 0; v < 3; ++v) z[v] = theta * x[v] + (1 - theta) * y[v];
            CHECK(c.violation(z) <= theta * fx + (1 - theta) * fy + 1e-9);
        }
    }
}

TEST_CASE("theorem-style concavity of loglog1pexp on the nonnegative axis") {
    for (double eps : {1e-4, 1e-3, 1e-2, 1e-1}) {
        double worst = check_concavity(eps, concavity_grid(0.0, 30.0, 0.01));
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("loglog1pexp first derivative positive, proof quantities") {
    // f'(x) > 0 at every grid point (the function is strictly increasing).
    for (double x = 0.0; x <= 30.0; x += 0.25)
        CHECK(loglog1pexp_d1(1e-3, x) > 0.0);
    // g(x) = e^x - log(1+eps+e^x) evaluated at 0 is positive for eps=1e-3.
    double eps = 1e-3;
    CHECK(1.0 - std::log(1.0 + eps + 1.0) > 0.0);
}

TEST_CASE("closed-form second derivative matches finite differences") {
    for (double eps : {1e-4, 1e-3, 1e-1}) {
        for (double x = 0.0; x <= 10.0; x += 0.37) {
            double h = 1e-2;
            double fd = (loglog1pexp(eps, x + h) - 2.0 * loglog1pexp(eps, x) +
                         loglog1pexp(eps, x - h)) /
                        (h * h);
            double cf = loglog1pexp_d2(eps, x);
            CHECK(std::abs(fd - cf) <= 1e-4 * std::max(1e-8, std::abs(cf)) + 1e-9);
        }
    }
}

TEST_CASE("gradient_check against finite differences") {
    {
        ConvexProgram p;
        p.num_vars = 2;
        p.objective = {{ObjectiveTerm::Kind::Linear, 0, 2.5, 0.0},
                       {ObjectiveTerm::Kind::Linear, 1, -1.0, 0.0}};
        CHECK(gradient_check(p, {0.3, -0.7}) <= 1e-9);
    }
    {
        ConvexProgram p;
        p.num_vars = 3;
        LseConstraint c;
        c.bound = 0.0;
        c.terms.push_back({0.7, {{0, 1.0}, {1, -1.0}}});
        c.terms.push_back({1.3, {{1, 2.0}, {2, 1.0}}});
        c.terms.push_back({0.1, {{2, -1.0}}});
        p.constraints.push_back(c);
        Rng rng(4);
        std::vector<double> x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                              rng.uniform(-1.0, 1.0)};
        CHECK(gradient_check(p, x) <= 1e-5);
    }
    {
        ConvexProgram p;
        p.num_vars = 1;
        p.objective = {{ObjectiveTerm::Kind::LogLog1pExp, 0, 1.0, 1e-3}};
        CHECK(gradient_check(p, {1.0}) <= 1e-5);
    }
}

TEST_CASE("program validation") {
    ConvexProgram p;
    p.num_vars = 0;
    CHECK_THROWS_AS(p.validate(), InputError);
    p.num_vars = 1;
    LseConstraint c;
    c.bound = 0.0;
    p.constraints.push_back(c); // no terms
    CHECK_THROWS_AS(p.validate(), InputError);
    p.constraints[0].terms.push_back({-1.0, {{0, 1.0}}}); // negative coeff
    CHECK_THROWS_AS(p.validate(), InputError);
    p.constraints[0].terms[0].coeff = 1.0;
    p.constraints[0].terms[0].lin = {{3, 1.0}}; // var out of range
    CHECK_THROWS_AS(p.validate(), InputError);
}
