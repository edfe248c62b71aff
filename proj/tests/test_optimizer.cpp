#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gres/optimizer.hpp"

using namespace gres;

namespace {

// Single-mode Lambda(s) for rho = diag(nu e^{2r}, nu e^{-2r}) and sigma = diag(e^{4s}, 1), eta = log(nu)/2.
double lambda_we18(double r, double eta, double s) {
    const double a = std::sinh(2 * s - eta - r) * std::sinh(r - eta);
    const double b = std::sinh(2 * s + eta - r) * std::sinh(r + eta);
    if (!(a >= 0.0 && b >= 0.0)) return std::numeric_limits<double>::infinity();
    return 2.0 * std::sinh(s) * std::exp(-eta) / (1.0 - std::tanh(s)) / (std::sqrt(a) + std::sqrt(b));
}

Objective two_basin() {
    Objective o;
    o.dimension = 2;
    o.lower = {-4.0, -4.0};
    o.upper = {4.0, 4.0};
    // Shallow basin at (-2, -2) with value 0.5, global basin at (2.5, 1) with value 0.
    o.evaluate = [](const Point& x) {
        const double d1 = (x[0] + 2) * (x[0] + 2) + (x[1] + 2) * (x[1] + 2);
        const double d2 = (x[0] - 2.5) * (x[0] - 2.5) + (x[1] - 1) * (x[1] - 1);
        return std::min(0.5 + d1, 4.0 * d2);
    };
    return o;
}

}  // namespace

TEST_CASE("minimize a quadratic") {
    Objective o;
    o.dimension = 1;
    o.evaluate = [](const Point& x) { return (x[0] - 2) * (x[0] - 2); };
    const OptimResult r = minimize(o, {0.0});
    CHECK(r.converged);
    CHECK(std::abs(r.best_point[0] - 2.0) < 1e-8);
}

TEST_CASE("minimize inside a box") {
    Objective o;
    o.dimension = 2;
    o.lower = {-1.0, -1.0};
    o.upper = {1.0, 1.0};
    o.evaluate = [](const Point& x) { return x[0] * x[0] + 10 * x[1] * x[1]; };
    const OptimResult r = minimize(o, {1.0, 1.0});
    CHECK(std::abs(r.best_point[0]) < 1e-6);
    CHECK(std::abs(r.best_point[1]) < 1e-6);
    for (int i = 0; i < 2; ++i) {
        CHECK(r.best_point[i] >= o.lower[i]);
        CHECK(r.best_point[i] <= o.upper[i]);
    }
}

TEST_CASE("minimize the single-mode Lambda curve") {
    const double r = 1.0, eta = 0.5;
    Objective o;
    o.dimension = 1;
    o.lower = {0.5 * (r + eta) + 1e-9};
    o.upper = {6.0};
    o.evaluate = [&](const Point& x) { return lambda_we18(r, eta, x[0]); };
    MinimizeOptions opt;
    opt.tol = 1e-12;
    const OptimResult res = minimize(o, {2.0}, opt);

    double grid_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200000; ++i) {
        const double s = o.lower[0] + (o.upper[0] - o.lower[0]) * i / 200000.0;
        grid_best = std::min(grid_best, lambda_we18(r, eta, s));
    }
    CHECK(std::abs(res.best_value - std::exp(0.5)) < 1e-6);
    CHECK(res.best_value <= grid_best + 1e-9);
}

TEST_CASE("penalties hold equality constraints") {
    Objective o;
    o.dimension = 2;
    o.evaluate = [](const Point& x) { return x[0] * x[0] + x[1] * x[1]; };
    o.penalties.push_back({[](const Point& x) { return x[0] + x[1] - 1.0; }, 1.0, true});
    const OptimResult r = minimize(o, {2.0, -1.0});
    CHECK(std::abs(r.best_point[0] + r.best_point[1] - 1.0) < 1e-6);
    CHECK(std::abs(r.best_point[0] - 0.5) < 1e-4);
}

TEST_CASE("infinite values are rejected like a barrier") {
    Objective o;
    o.dimension = 1;
    o.evaluate = [](const Point& x) {
        return x[0] < 1.0 ? std::numeric_limits<double>::infinity() : (x[0] - 0.5) * (x[0] - 0.5);
    };
    const OptimResult r = minimize(o, {3.0});
    CHECK(r.best_point[0] >= 1.0);
    CHECK(r.best_point[0] < 1.0 + 1e-6);
}

TEST_CASE("exhausted budget is flagged") {
    Objective o;
    o.dimension = 3;
    o.evaluate = [](const Point& x) { return std::pow(x[0] - 1, 2) + 100 * std::pow(x[1] - x[0] * x[0], 2) + x[2] * x[2]; };
    const OptimResult r = minimize(o, {-1.5, 2.0, 1.0}, 1e-12, 20);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 40);
}

TEST_CASE("multi-start finds the global basin") {
    const Objective o = two_basin();
    const auto starts = halton_points(o.lower, o.upper, 8);
    const OptimResult r = multi_start_minimize(o, starts);
    CHECK(std::abs(r.best_point[0] - 2.5) < 1e-6);
    CHECK(std::abs(r.best_point[1] - 1.0) < 1e-6);
    CHECK(r.best_value < 1e-10);
}

TEST_CASE("multi-start with one start matches minimize") {
    const Objective o = two_basin();
    const OptimResult a = multi_start_minimize(o, {{-3.0, -3.0}});
    const OptimResult b = minimize(o, {-3.0, -3.0});
    CHECK(a.best_value == b.best_value);
    CHECK(a.best_point == b.best_point);
}

TEST_CASE("start order and repetition do not change the answer") {
    const Objective o = two_basin();
    auto starts = halton_points(o.lower, o.upper, 8);
    const OptimResult a = multi_start_minimize(o, starts);
    std::reverse(starts.begin(), starts.end());
    const OptimResult b = multi_start_minimize(o, starts);
    const OptimResult c = multi_start_minimize(o, starts);
    CHECK(a.best_point == b.best_point);
    CHECK(b.best_point == c.best_point);
    CHECK(b.best_value == c.best_value);
    CHECK(b.evaluations == c.evaluations);
}

TEST_CASE("halton points and candidate selection") {
    const auto pts = halton_points({0.0, -1.0}, {1.0, 1.0}, 50);
    REQUIRE(pts.size() == 50);
    for (const Point& p : pts) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] <= 1.0);
        CHECK(p[1] >= -1.0);
        CHECK(p[1] <= 1.0);
    }
    auto f = [](const Point& p) { return p[0] < 0.5 ? std::numeric_limits<double>::infinity() : p[0]; };
    const auto best = best_candidates(f, pts, 3);
    REQUIRE(best.size() == 3);
    for (size_t i = 1; i < best.size(); ++i) CHECK(best[i - 1][0] <= best[i][0]);
    for (const Point& p : best) CHECK(p[0] >= 0.5);
}
