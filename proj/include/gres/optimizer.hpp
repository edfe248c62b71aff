#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace gres {

using Point = std::vector<double>;

struct Penalty {
    // Equality: residual == 0. Inequality: residual <= 0.
    std::function<double(const Point&)> residual;
    double weight = 1.0;
    bool equality = true;
};

struct Objective {
    int dimension = 0;
    std::function<double(const Point&)> evaluate;  // may return +inf
    Point lower, upper;                            // empty means unbounded
    std::vector<Penalty> penalties;
};

struct OptimResult {
    Point best_point;
    double best_value = std::numeric_limits<double>::infinity();
    long evaluations = 0;
    bool converged = false;
};

struct MinimizeOptions {
    double tol = 1e-9;         // simplex diameter
    long max_eval = 20000;
    double ftol = 0.0;         // optional relative spread stop, 0 disables
    double initial_step = 0.1; // fraction of box width (absolute when unbounded)
    int penalty_rounds = 8;    // weight x10 per round while residuals exceed 1e-6
};

OptimResult minimize(const Objective& obj, const Point& start, double tol = 1e-9, long max_eval = 20000);
OptimResult minimize(const Objective& obj, const Point& start, const MinimizeOptions& opt);

OptimResult multi_start_minimize(const Objective& obj, const std::vector<Point>& starts, double tol = 1e-9,
                                 long max_eval = 20000);
OptimResult multi_start_minimize(const Objective& obj, const std::vector<Point>& starts, const MinimizeOptions& opt);

// Halton points mapped into the box [lower, upper].
std::vector<Point> halton_points(const Point& lower, const Point& upper, int count, int skip = 1);

// Evaluate all candidates and keep the `keep` best finite ones, ties by index.
std::vector<Point> best_candidates(const std::function<double(const Point&)>& f, const std::vector<Point>& cands,
                                   int keep);

}  // namespace gres
