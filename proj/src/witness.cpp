#include <algorithm>
#include <cmath>

#include "gres/bounds.hpp"

namespace gres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Deterministic 1-D minimization: coarse grid, then golden section around the best cell.
double minimize_1d(const std::function<double(double)>& f, double lo, double hi, double* arg = nullptr) {
    const int grid = 48;
    double best_x = lo, best_f = kInf;
    std::vector<double> xs(grid + 1), fs(grid + 1);
    for (int k = 0; k <= grid; ++k) {
        xs[k] = lo + (hi - lo) * k / grid;
        fs[k] = f(xs[k]);
        if (fs[k] < best_f) best_f = fs[k], best_x = xs[k];
    }
    const int kb = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
    double a = xs[std::max(kb - 1, 0)], b = xs[std::min(kb + 1, grid)];
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - phi * (b - a), fc = f(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + phi * (b - a), fd = f(d);
        }
    }
    const double xm = fc < fd ? c : d, fm = std::min(fc, fd);
    if (fm < best_f) best_f = fm, best_x = xm;
    if (arg) *arg = best_x;
    return best_f;
}

OptimResult maximize(const std::function<double(const Point&)>& f, const Point& lo, const Point& hi, int prescan,
                     int starts, long max_eval = 20000) {
    Objective obj;
    obj.dimension = static_cast<int>(lo.size());
    obj.lower = lo;
    obj.upper = hi;
    obj.evaluate = [&](const Point& x) {
        const double v = f(x);
        return std::isfinite(v) ? -v : kInf;
    };
    auto cands = best_candidates(obj.evaluate, halton_points(lo, hi, prescan), starts);
    if (cands.empty()) cands.push_back(halton_points(lo, hi, 1).front());
    MinimizeOptions opt;
    opt.max_eval = max_eval;
    opt.ftol = 1e-13;
    OptimResult r = multi_start_minimize(obj, cands, opt);
    r.best_value = -r.best_value;
    return r;
}

std::pair<double, double> x_bounds(double e1, double e2) {
    const double ee = e1 * e2;
    const double root = 0.5 * std::sqrt(ee * ee + 4.0 * ee);
    return {1.0 + 0.5 * ee - root, 1.0 + 0.5 * ee + root};
}

// Single-mode witness ratio for an infinitely squeezed witness along angle theta
// with finite variance y in the orthogonal direction.
double single_mode_asymptotic(const Matrix& g, double theta, double y) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double orth = s * s * g(0, 0) - 2.0 * s * c * g(0, 1) + c * c * g(1, 1);
    return std::sqrt((y + 1.0) / (y + orth));
}

double single_mode_finite(const Matrix& g, double theta, double sq, double t) {
    // Work in the witness frame so the large variance never meets a cancellation.
    const double nu = std::exp(t), s = std::sin(theta), c = std::cos(theta);
    const double gxx = c * c * g(0, 0) + 2.0 * s * c * g(0, 1) + s * s * g(1, 1);
    const double gpp = s * s * g(0, 0) - 2.0 * s * c * g(0, 1) + c * c * g(1, 1);
    const double gxp = s * c * (g(1, 1) - g(0, 0)) + (c * c - s * s) * g(0, 1);
    const double wx = nu * std::exp(2.0 * sq), wp = nu * std::exp(-2.0 * sq);
    const double ratio = (wx + 1.0) / (wx + gxx) * (wp + 1.0) / (wp + gpp - gxp * gxp / (wx + gxx));
    return std::sqrt(ratio);
}

BoundResult single_mode_lower(const Matrix& g) {
    BoundResult out;
    out.method = "numeric:witness";
    const double pi = std::acos(-1.0);
    auto asym = maximize([&](const Point& x) { return single_mode_asymptotic(g, x[0], std::exp(x[1])); },
                         {0.0, -30.0}, {pi, 10.0}, 32, 4);
    auto fin = maximize([&](const Point& x) { return single_mode_finite(g, x[0], x[1], x[2]); }, {0.0, 0.0, 0.0},
                        {pi, 12.0, 4.0}, 64, 4);
    out.value = std::max({asym.best_value, fin.best_value, 1.0});
    out.argument = asym.best_value >= fin.best_value ? asym.best_point : fin.best_point;
    out.converged = asym.converged && fin.converged;
    return out;
}

TwoModeStandardForm normalized(TwoModeStandardForm s) {
    // Local reflection x2 -> -x2, p2 -> -p2 flips both correlations.
    if (s.c1 < 0.0) s.c1 = -s.c1, s.c2 = -s.c2;
    return s;
}

}  // namespace

double asymptotic_witness_ratio(const TwoModeStandardForm& s, Resource r, double p, double q, double e1, double e2) {
    const auto [xm, xp] = x_bounds(e1, e2);
    const double y = p * q;
    if (!(p > 0.0 && q > 0.0) || y < xm * (1.0 - 1e-12) || y > xp * (1.0 + 1e-12)) return 0.0;
    const double d1 = s.b + s.a * p * p + e1 * p - 2.0 * p * s.c1;
    const double d2 = s.b + s.a * q * q + e2 * q - 2.0 * q * s.c2;
    if (!(d1 > 0.0 && d2 > 0.0)) return 0.0;
    if (r == Resource::Nonclassicality)
        return std::sqrt((1.0 + e1 * p + p * p) / d1 * (1.0 + e2 * q + q * q) / d2);
    return (1.0 + y + std::sqrt(e1 * e2 * y)) / std::sqrt(d1 * d2);
}

double chart_pq_zero_epsilon(const TwoModeStandardForm& s0, Resource r, Point* arg) {
    const TwoModeStandardForm s = normalized(s0);
    double z = 0.0;
    const double v = -minimize_1d(
        [&](double lp) {
            const double p = std::exp(lp);
            return -asymptotic_witness_ratio(s, r, p, 1.0 / p, 0.0, 0.0);
        },
        -12.0, 12.0, &z);
    if (arg) *arg = {z};
    return std::max(v, 1.0);
}

double chart_q_from_x_minus(const TwoModeStandardForm& s0, Resource r, Point* arg) {
    const TwoModeStandardForm s = normalized(s0);
    auto res = maximize(
        [&](const Point& x) {
            const double p = std::exp(x[0]), e1 = std::exp(x[1]), e2 = std::exp(x[2]);
            return asymptotic_witness_ratio(s, r, p, x_bounds(e1, e2).first / p, e1, e2);
        },
        {-12.0, -15.0, -15.0}, {12.0, 8.0, 8.0}, 128, 8);
    if (arg) *arg = res.best_point;
    return std::max(res.best_value, 1.0);
}

double chart_free_pq(const TwoModeStandardForm& s0, Resource r, Point* arg) {
    const TwoModeStandardForm s = normalized(s0);
    auto res = maximize(
        [&](const Point& x) {
            const double p = std::exp(x[0]), e1 = std::exp(x[2]), e2 = std::exp(x[3]);
            const auto [xm, xp] = x_bounds(e1, e2);
            const double y = xm + x[1] * (xp - xm);
            return asymptotic_witness_ratio(s, r, p, y / p, e1, e2);
        },
        {-12.0, 0.0, -15.0, -15.0}, {12.0, 1.0, 8.0, 8.0}, 256, 8);
    if (arg) *arg = res.best_point;
    return std::max(res.best_value, 1.0);
}

double chart_single_block(const TwoModeStandardForm& s) {
    auto block = [](double a, double b, double c) {
        return std::sqrt(2.0 / (a + b - std::sqrt((a - b) * (a - b) + 4.0 * c * c)));
    };
    return std::max({block(s.a, s.b, s.c1), block(s.a, s.b, s.c2), 1.0});
}

BoundResult lower_bound_charted(const TwoModeStandardForm& s, Resource r) {
    BoundResult out;
    Point a1, a2;
    const double v1 = chart_pq_zero_epsilon(s, r, &a1);
    const double v2 = chart_q_from_x_minus(s, r, &a2);
    const double v3 = r == Resource::Nonclassicality ? chart_single_block(s) : 1.0;
    out.value = std::max({v1, v2, v3});
    if (out.value == v1) out.method = "chart:epsilon-zero", out.argument = a1;
    else if (out.value == v2) out.method = "chart:q-from-x-minus", out.argument = a2;
    else out.method = "chart:single-block";
    return out;
}

BoundResult lower_bound_witness(const TwoModeStandardForm& s, Resource r) {
    if (!is_physical(s.expand()).physical) fail(ErrorKind::InvalidArgument, "standard-form parameters are unphysical");
    BoundResult out = lower_bound_charted(s, r);
    Point arg;
    const double v4 = chart_free_pq(s, r, &arg);
    if (v4 > out.value) out.value = v4, out.method = "chart:free-pq", out.argument = arg;
    if (out.value <= 1.0) out.method = "free-state";
    out.method = "numeric:" + out.method;
    return out;
}

BoundResult lower_bound_witness(const CovarianceMatrix& gamma, Resource r) {
    if (!is_physical(gamma).physical) fail(ErrorKind::InvalidArgument, "covariance matrix is unphysical");
    if (gamma.modes() == 1) {
        if (r == Resource::Entanglement) return {1.0, "trivial:single-mode", true, {}};
        return single_mode_lower(gamma.matrix());
    }
    if (gamma.modes() == 2) {
        if (auto s = detect_standard_form(gamma.matrix())) return lower_bound_witness(*s, r);
    }
    if (auto s = detect_symmetric(gamma.matrix())) return lower_bound_witness(*s, r);
    fail(ErrorKind::Unsupported,
         "lower bounds support single-mode, two-mode standard-form and n-mode symmetric covariance matrices");
}

BoundResult lower_bound_witness(const SymmetricSpec& s, Resource r) {
    if (!is_physical(s.expand()).physical) fail(ErrorKind::InvalidArgument, "symmetric parameters are unphysical");
    BoundResult out;
    if (r == Resource::Nonclassicality) {
        Matrix g1 = Matrix::Zero(2, 2), g2 = Matrix::Zero(2, 2);
        g1(0, 0) = s.e(), g1(1, 1) = s.g();
        g2(0, 0) = s.f(), g2(1, 1) = s.h();
        const BoundResult b1 = single_mode_lower(g1), b2 = single_mode_lower(g2);
        out.value = std::max(b1.value * std::pow(b2.value, s.n - 1), 1.0);
        out.converged = b1.converged && b2.converged;
        out.method = "numeric:witness-decomposed";
        return out;
    }
    const int n = s.n;
    const double e = s.e(), f = s.f(), g = s.g(), h = s.h();
    // Infinitely squeezed collective witness: sup_fw inf_x (fw+x)^{n-1}/x / ((fw+f)^{n-1} g).
    auto asym = [&](double lfw) {
        const double fw = std::exp(lfw);
        return minimize_1d(
            [&](double lx) {
                const double x = std::exp(lx);
                return (n - 1) * std::log((fw + x) / (fw + f)) - std::log(x) - std::log(g);
            },
            -30.0, 30.0);
    };
    double arg_a = 0.0;
    const double omega_a = -minimize_1d([&](double l) { return -asym(l); }, -20.0, 20.0, &arg_a);
    // Finite symmetric witness (e_w, f_w, g_w, h_w), physical when e_w g_w >= 1 and f_w h_w >= 1.
    auto finite = [&](const Point& x) {
        const double ew = std::exp(x[0]), gw = std::exp(x[1] - x[0]);
        const double fw = std::exp(x[2]), hw = std::exp(x[3] - x[2]);
        const double den = std::log(ew + e) + (n - 1) * std::log(fw + f) + std::log(gw + g) +
                           (n - 1) * std::log(hw + h);
        return minimize_1d(
                   [&](double lx) {
                       const double xx = std::exp(lx);
                       return std::log(ew + xx) + (n - 1) * std::log(fw + xx) + std::log(gw + 1.0 / xx) +
                              (n - 1) * std::log(hw + 1.0 / xx);
                   },
                   -30.0, 30.0) -
               den;
    };
    auto fin = maximize(finite, {-10.0, 0.0, -10.0, 0.0}, {14.0, 6.0, 14.0, 6.0}, 64, 4, 4000);
    const double omega = std::max(omega_a, fin.best_value);
    out.value = std::max(std::exp(0.5 * omega), 1.0);
    out.method = omega_a >= fin.best_value ? "numeric:witness-collective-limit" : "numeric:witness-symmetric";
    out.argument = omega_a >= fin.best_value ? Point{arg_a} : fin.best_point;
    out.converged = fin.converged;
    return out;
}

}  // namespace gres
