#include "gres/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gres/error.hpp"

namespace gres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sanitize(double v) { return std::isnan(v) ? kInf : v; }

bool bounded(const Objective& obj, int i) {
    return !obj.lower.empty() && !obj.upper.empty() && std::isfinite(obj.lower[i]) && std::isfinite(obj.upper[i]);
}

void project(const Objective& obj, Point& x) {
    for (int i = 0; i < obj.dimension; ++i) {
        if (!obj.lower.empty()) x[i] = std::max(x[i], obj.lower[i]);
        if (!obj.upper.empty()) x[i] = std::min(x[i], obj.upper[i]);
    }
}

double penalty_value(const Objective& obj, const Point& x, double scale) {
    double total = 0.0;
    for (const auto& p : obj.penalties) {
        double r = p.residual(x);
        if (!p.equality) r = std::max(r, 0.0);
        total += scale * p.weight * r * r;
    }
    return total;
}

double max_residual(const Objective& obj, const Point& x) {
    double worst = 0.0;
    for (const auto& p : obj.penalties) {
        double r = p.residual(x);
        worst = std::max(worst, p.equality ? std::abs(r) : std::max(r, 0.0));
    }
    return worst;
}

struct Vertex {
    Point x;
    double f;
};

// Nelder-Mead with adaptive coefficients and projection onto the box.
OptimResult nelder_mead(const Objective& obj, const Point& start, const MinimizeOptions& opt, double pen_scale,
                        double step_fraction, long budget) {
    const int d = obj.dimension;
    long evals = 0;
    auto f = [&](Point x) {
        project(obj, x);
        ++evals;
        double v = sanitize(obj.evaluate(x));
        if (!obj.penalties.empty() && std::isfinite(v)) v += penalty_value(obj, x, pen_scale);
        return Vertex{std::move(x), v};
    };

    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / d;
    const double rho = 0.75 - 1.0 / (2.0 * d);
    const double shrink = d > 1 ? 1.0 - 1.0 / d : 0.5;

    std::vector<Vertex> s;
    Point x0 = start;
    project(obj, x0);
    s.push_back(f(x0));
    for (int i = 0; i < d; ++i) {
        Point x = x0;
        double h = bounded(obj, i) ? step_fraction * (obj.upper[i] - obj.lower[i])
                                   : step_fraction * std::max(1.0, std::abs(x0[i]));
        if (h == 0.0) h = step_fraction;
        if (!obj.upper.empty() && x[i] + h > obj.upper[i]) h = -h;
        x[i] += h;
        s.push_back(f(x));
    }

    auto order = [&]() {
        std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    auto diameter = [&]() {
        double m = 0.0;
        for (int i = 1; i <= d; ++i)
            for (int k = 0; k < d; ++k) m = std::max(m, std::abs(s[i].x[k] - s[0].x[k]));
        return m;
    };

    bool converged = false;
    while (true) {
        order();
        const double diam = diameter();
        if (diam < opt.tol) {
            converged = true;
            break;
        }
        if (opt.ftol > 0.0 && std::isfinite(s[d].f) &&
            s[d].f - s[0].f <= opt.ftol * std::max(std::abs(s[0].f), 1e-300) && diam < std::sqrt(opt.tol)) {
            converged = true;
            break;
        }
        if (evals >= budget) break;

        Point c(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) c[k] += s[i].x[k] / d;
        auto along = [&](double t) {
            Point x(d);
            for (int k = 0; k < d; ++k) x[k] = c[k] + t * (s[d].x[k] - c[k]);
            return x;
        };

        Vertex r = f(along(-alpha));
        if (r.f < s[0].f) {
            Vertex e = f(along(-alpha * gamma));
            s[d] = e.f < r.f ? std::move(e) : std::move(r);
            continue;
        }
        if (r.f < s[d - 1].f) {
            s[d] = std::move(r);
            continue;
        }
        if (r.f < s[d].f) {
            Vertex oc = f(along(-alpha * rho));
            if (oc.f <= r.f) {
                s[d] = std::move(oc);
                continue;
            }
        } else {
            Vertex ic = f(along(rho));
            if (ic.f < s[d].f) {
                s[d] = std::move(ic);
                continue;
            }
        }
        for (int i = 1; i <= d; ++i) {
            Point x(d);
            for (int k = 0; k < d; ++k) x[k] = s[0].x[k] + shrink * (s[i].x[k] - s[0].x[k]);
            s[i] = f(x);
        }
    }
    order();
    OptimResult out;
    out.best_point = s[0].x;
    out.best_value = s[0].f;
    out.evaluations = evals;
    out.converged = converged;
    return out;
}

OptimResult run_with_restarts(const Objective& obj, const Point& start, const MinimizeOptions& opt,
                              double pen_scale) {
    OptimResult best = nelder_mead(obj, start, opt, pen_scale, opt.initial_step, opt.max_eval);
    long used = best.evaluations;
    // A fresh small simplex around the optimum guards against collapsed simplices.
    for (int k = 0; k < 3 && best.converged && used < opt.max_eval; ++k) {
        OptimResult again = nelder_mead(obj, best.best_point, opt, pen_scale, 1e-3 * opt.initial_step,
                                        opt.max_eval - used);
        used += again.evaluations;
        const bool improved = again.best_value < best.best_value;
        const double prev = best.best_value;
        if (improved) best = again;
        best.converged = again.converged;
        if (!improved || !(prev - again.best_value > 1e-13 * std::max(1.0, std::abs(prev)))) break;
    }
    best.evaluations = used;
    return best;
}

}  // namespace

OptimResult minimize(const Objective& obj, const Point& start, const MinimizeOptions& opt) {
    if (obj.dimension < 1 || static_cast<int>(start.size()) != obj.dimension)
        fail(ErrorKind::InvalidArgument, "start point dimension does not match objective");
    if (!(opt.tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (!obj.evaluate) fail(ErrorKind::InvalidArgument, "objective has no evaluate function");

    OptimResult res;
    if (obj.penalties.empty()) {
        res = run_with_restarts(obj, start, opt, 1.0);
    } else {
        Point x = start;
        long total = 0;
        double scale = 1.0;
        for (int round = 0; round < opt.penalty_rounds; ++round, scale *= 10.0) {
            res = run_with_restarts(obj, x, opt, scale);
            total += res.evaluations;
            x = res.best_point;
            if (max_residual(obj, x) <= 1e-6) break;
        }
        res.evaluations = total;
        if (max_residual(obj, res.best_point) > 1e-6) res.converged = false;
    }
    res.best_value = sanitize(obj.evaluate(res.best_point));
    ++res.evaluations;
    return res;
}

OptimResult minimize(const Objective& obj, const Point& start, double tol, long max_eval) {
    MinimizeOptions opt;
    opt.tol = tol;
    opt.max_eval = max_eval;
    return minimize(obj, start, opt);
}

OptimResult multi_start_minimize(const Objective& obj, const std::vector<Point>& starts, const MinimizeOptions& opt) {
    if (starts.empty()) fail(ErrorKind::InvalidArgument, "multi-start needs at least one start");
    OptimResult best;
    long total = 0;
    bool have = false;
    for (const auto& s : starts) {
        OptimResult r = minimize(obj, s, opt);
        total += r.evaluations;
        const bool better = !have || r.best_value < best.best_value ||
                            (r.best_value == best.best_value && r.best_point < best.best_point) ||
                            (std::isnan(best.best_value) && !std::isnan(r.best_value));
        if (better) {
            best = std::move(r);
            have = true;
        }
    }
    best.evaluations = total;
    return best;
}

OptimResult multi_start_minimize(const Objective& obj, const std::vector<Point>& starts, double tol, long max_eval) {
    MinimizeOptions opt;
    opt.tol = tol;
    opt.max_eval = max_eval;
    return multi_start_minimize(obj, starts, opt);
}

std::vector<Point> halton_points(const Point& lower, const Point& upper, int count, int skip) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    const size_t d = lower.size();
    if (d != upper.size() || d > std::size(primes)) fail(ErrorKind::InvalidArgument, "bad Halton dimension");
    std::vector<Point> pts;
    for (int k = 0; k < count; ++k) {
        Point p(d);
        for (size_t i = 0; i < d; ++i) {
            double fcur = 1.0, r = 0.0;
            for (int idx = k + skip; idx > 0; idx /= primes[i]) {
                fcur /= primes[i];
                r += fcur * (idx % primes[i]);
            }
            p[i] = lower[i] + r * (upper[i] - lower[i]);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> best_candidates(const std::function<double(const Point&)>& f, const std::vector<Point>& cands,
                                   int keep) {
    std::vector<std::pair<double, size_t>> scored;
    for (size_t i = 0; i < cands.size(); ++i) {
        const double v = sanitize(f(cands[i]));
        if (std::isfinite(v)) scored.emplace_back(v, i);
    }
    std::stable_sort(scored.begin(), scored.end());
    std::vector<Point> out;
    for (size_t i = 0; i < scored.size() && static_cast<int>(out.size()) < keep; ++i)
        out.push_back(cands[scored[i].second]);
    return out;
}

}  // namespace gres
