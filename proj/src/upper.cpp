#include <algorithm>
#include <cmath>

#include "gres/bounds.hpp"

namespace gres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Search {
    int prescan = 256;
    int starts = 8;
    long max_eval = 20000;
};

OptimResult search_min(const std::function<double(const Point&)>& f, const Point& lo, const Point& hi,
                       const Search& cfg, const std::vector<Point>& extra = {}) {
    Objective obj;
    obj.dimension = static_cast<int>(lo.size());
    obj.lower = lo;
    obj.upper = hi;
    obj.evaluate = f;
    std::vector<Point> pool = halton_points(lo, hi, cfg.prescan);
    pool.insert(pool.end(), extra.begin(), extra.end());
    auto starts = best_candidates(f, pool, cfg.starts);
    if (starts.empty()) {
        OptimResult none;
        none.best_point = lo;
        none.converged = false;
        return none;
    }
    MinimizeOptions opt;
    opt.max_eval = cfg.max_eval;
    opt.ftol = 1e-13;
    return multi_start_minimize(obj, starts, opt);
}

double lambda_or_inf(const Matrix& g, const Matrix& gs) {
    try {
        const LambdaResult r = lambda_upper(g, gs);
        return r.exists ? r.value : kInf;
    } catch (const Error&) {
        return kInf;
    }
}

BoundResult finish(const OptimResult& r, const std::string& method) {
    BoundResult out;
    out.value = std::max(r.best_value, 1.0);
    out.converged = r.converged && std::isfinite(r.best_value);
    out.argument = r.best_point;
    out.method = method;
    return out;
}

// A finite Lambda needs gamma_sigma >= gamma (every quadrature marginal of rho
// dominated by that of sigma), so the charts below only cover free states that
// pass this test, or come close to it.

// Rank-one classical blocks I + t v v^T dominating a 2x2 block of rho. With
// rho's eigenvalues l1 >= l2 (l2 < 1) and principal angle th, domination needs
// t >= l1 - 1 and |theta - th| <= asin sqrt((1 - l2)(t + 1 - l1) / (t (l1 - l2))).
struct RankOneChart {
    double l1 = 1, l2 = 1, theta = 0;
    bool usable = false;

    explicit RankOneChart(const Matrix& block) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(block);
        l2 = es.eigenvalues()(0);
        l1 = es.eigenvalues()(1);
        const Vector v = es.eigenvectors().col(1);
        theta = std::atan2(v(1), v(0));
        usable = l2 < 1.0;
    }

    // y sets t above its floor on a log scale, w in [-1, 1] spans the angular window.
    Matrix block(double y, double w) const {
        const double t = std::max(l1 - 1.0, 0.0) + std::exp(y) * std::max(1.0, l1);
        double window = std::acos(-1.0) / 2.0;
        if (l1 - l2 > 1e-300) {
            const double s2 = (1.0 - l2) * (t + 1.0 - l1) / (t * (l1 - l2));
            window = std::asin(std::sqrt(std::clamp(s2, 0.0, 1.0)));
        }
        const double th = theta + w * window, c = std::cos(th), s = std::sin(th);
        Matrix m(2, 2);
        m << 1.0 + t * c * c, t * c * s, t * c * s, 1.0 + t * s * s;
        return m;
    }
};

BoundResult single_mode_upper(const Matrix& g) {
    if (is_classical(CovarianceMatrix(g)).classical) return {1.0, "free-state", true, {}};
    const RankOneChart chart(g);
    auto f = [&](const Point& x) { return lambda_or_inf(g, chart.block(x[0], x[1])); };
    Search cfg;
    cfg.prescan = 48;
    return finish(search_min(f, {-20.0, -1.0}, {6.0, 1.0}, cfg, {{-6.0, 0.0}, {-2.0, 0.0}, {0.0, 0.0}}),
                  "numeric:classical-boundary");
}

Matrix diag2(double x, double p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = x;
    m(1, 1) = p;
    return m;
}

TwoModeStandardForm normalized(TwoModeStandardForm s) {
    if (s.c1 < 0.0) s.c1 = -s.c1, s.c2 = -s.c2;
    return s;
}

// Classical boundary with a rank-one x-block and a general p-block
// (the kappa family): p-block = rho_p + PSD offset, kept only while
// gamma_sigma - I stays positive semidefinite.
BoundResult two_mode_classical_upper(const TwoModeStandardForm& s0, double stop_at) {
    TwoModeStandardForm s = s0;
    Matrix gx(2, 2);
    gx << s.a, s.c1, s.c1, s.b;
    // A quarter-period phase rotation on both modes is passive and exchanges the
    // blocks; use it when only the momentum block is squeezed below vacuum.
    if (!RankOneChart(gx).usable) std::swap(s.c1, s.c2);
    s = normalized(s);
    const Matrix g = s.expand().matrix();
    gx << s.a, s.c1, s.c1, s.b;
    const RankOneChart chart(gx);
    if (!chart.usable) return {std::numeric_limits<double>::infinity(), "numeric:classical-boundary", false, {}};
    // Two p-block charts: a PSD offset above rho_p, and the kappa family whose
    // kappa = +-1 edge puts both blocks on the classical boundary.
    auto make = [&](bool offset) {
        return [&, offset](const Point& x) {
            const double d1 = std::exp(x[2]), d2 = std::exp(x[3]);
            const double a2 = s.a + d1, b2 = s.b + d2;
            double c2 = x[4] * std::sqrt((a2 - 1.0) * (b2 - 1.0));
            if (offset) {
                c2 = s.c2 + x[4] * std::sqrt(d1 * d2);
                if (c2 * c2 > (a2 - 1.0) * (b2 - 1.0)) return kInf;
            }
            Matrix gs = Matrix::Zero(4, 4);
            gs.topLeftCorner(2, 2) = chart.block(x[0], x[1]);
            gs(2, 2) = a2;
            gs(3, 3) = b2;
            gs(2, 3) = gs(3, 2) = -c2;
            return lambda_or_inf(g, gs);
        };
    };
    const Point lo{-20.0, -1.0, -14.0, -14.0, -1.0}, hi{6.0, 1.0, 6.0, 6.0, 1.0};
    const OptimResult r1 = search_min(make(true), lo, hi, Search{});
    if (r1.best_value <= stop_at) return finish(r1, "numeric:classical-boundary");
    const OptimResult r2 = search_min(make(false), lo, hi, Search{});
    return finish(r1.best_value <= r2.best_value ? r1 : r2, "numeric:classical-boundary");
}

bool ppt_physical(const Matrix& g) {
    const Matrix pt = partial_transpose(g, 1);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    const CMatrix h = pt.cast<cdouble>() + cdouble(0, 1) * symplectic_form(2).cast<cdouble>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-9 * scale;
}

BoundResult two_mode_separable_upper(const TwoModeStandardForm& s) {
    const Matrix g = s.expand().matrix();
    auto f = [&](const Point& x) {
        // x-block = rho_x + PSD offset, so that block dominates by construction.
        const double d1 = std::exp(x[0]), d2 = std::exp(x[1]);
        const double a1 = s.a + d1, b1 = s.b + d2, c1 = s.c1 + x[4] * std::sqrt(d1 * d2);
        const double a2 = s.a + std::exp(x[2]), b2 = s.b + std::exp(x[3]);
        double best = kInf;
        for (double c2 : separable_boundary_roots(a1, b1, c1, a2, b2)) {
            Matrix gs = Matrix::Zero(4, 4);
            gs << a1, c1, 0, 0, c1, b1, 0, 0, 0, 0, a2, -c2, 0, 0, -c2, b2;
            if (!is_physical(gs).physical || !ppt_physical(gs)) continue;
            best = std::min(best, lambda_or_inf(g, gs));
        }
        return best;
    };
    Search cfg;
    cfg.prescan = 512;
    return finish(search_min(f, {-14.0, -14.0, -14.0, -14.0, -1.0}, {6.0, 6.0, 6.0, 6.0, 1.0}, cfg),
                  "numeric:separable-boundary");
}

}  // namespace

std::optional<TwoModeStandardForm> detect_standard_form(const Matrix& g, double tol) {
    if (g.rows() != 4 || g.cols() != 4) return std::nullopt;
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff()) * tol * 10.0;
    auto eq = [&](double x, double y) { return std::abs(x - y) <= scale; };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!eq(g(i, 2 + j), 0.0) || !eq(g(2 + i, j), 0.0)) return std::nullopt;
    if (!eq(g(0, 0), g(2, 2)) || !eq(g(1, 1), g(3, 3))) return std::nullopt;
    return TwoModeStandardForm{g(0, 0), g(1, 1), g(0, 1), -g(2, 3)};
}

std::optional<SymmetricSpec> detect_symmetric(const Matrix& g, double tol) {
    const int n = static_cast<int>(g.rows() / 2);
    if (n < 2 || g.rows() != g.cols()) return std::nullopt;
    SymmetricSpec s;
    s.n = n;
    s.a = g(0, 0);
    s.c1 = g(0, 1);
    s.b = g(n, n);
    s.c2 = -g(n, n + 1);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff()) * tol * 10.0;
    if ((s.expand().matrix() - g).cwiseAbs().maxCoeff() > scale) return std::nullopt;
    return s;
}

BoundResult upper_bound(const TwoModeStandardForm& s0, Resource r) { return upper_bound(s0, r, 1.0); }

BoundResult upper_bound(const TwoModeStandardForm& s0, Resource r, double known_lower) {
    // Once a chart meets a proven lower bound the remaining charts cannot improve it.
    const double stop_at = known_lower * (1.0 + 1e-7);
    const TwoModeStandardForm s = normalized(s0);
    const CovarianceMatrix g = s.expand();
    if (!is_physical(g).physical) fail(ErrorKind::InvalidArgument, "standard-form parameters are unphysical");
    if (is_classical(g).classical) return {1.0, "free-state", true, {}};
    BoundResult c = two_mode_classical_upper(s, stop_at);
    if (r == Resource::Nonclassicality || c.value <= stop_at) return c;
    if (ppt_physical(g.matrix())) return {1.0, "free-state", true, {}};
    BoundResult e = two_mode_separable_upper(s);
    if (c.value < e.value) {
        c.converged = c.converged && e.converged;
        return c;
    }
    e.converged = e.converged || c.converged;
    return e;
}

BoundResult upper_bound(const CovarianceMatrix& gamma, Resource r) {
    if (!is_physical(gamma).physical) fail(ErrorKind::InvalidArgument, "covariance matrix is unphysical");
    if (gamma.modes() == 1) {
        if (r == Resource::Entanglement) return {1.0, "trivial:single-mode", true, {}};
        return single_mode_upper(gamma.matrix());
    }
    if (gamma.modes() == 2) {
        if (auto s = detect_standard_form(gamma.matrix())) return upper_bound(*s, r);
    }
    if (auto s = detect_symmetric(gamma.matrix())) return upper_bound(*s, r);
    fail(ErrorKind::Unsupported,
         "upper bounds support single-mode, two-mode standard-form and n-mode symmetric covariance matrices");
}

BoundResult upper_bound(const SymmetricSpec& s, Resource r) {
    if (!is_physical(s.expand()).physical) fail(ErrorKind::InvalidArgument, "symmetric parameters are unphysical");
    const int n = s.n;
    const Matrix g1 = diag2(s.e(), s.g()), g2 = diag2(s.f(), s.h());
    const BoundResult u1 = single_mode_upper(g1), u2 = single_mode_upper(g2);
    BoundResult c;
    c.value = std::max(u1.value * std::pow(u2.value, n - 1), 1.0);
    c.converged = u1.converged && u2.converged;
    c.method = "numeric:classical-decomposed";
    if (r == Resource::Nonclassicality) return c;
    if (s.c1 >= 0.0 && s.c2 >= 0.0 && is_fully_separable_symmetric(s)) return {1.0, "free-state", true, {}};

    // Free state in collective coordinates: sigma_1 = diag(e_s, g_s), sigma_2 = diag(f_s, h_s)
    // with f_s g_s = 1 (separability boundary), e_s >= f_s and h_s >= g_s (non-negative correlations).
    auto f = [&](const Point& x) {
        const double fs = std::exp(x[0]), gs = 1.0 / fs;
        const double es = fs * std::exp(x[1]), hs = gs * std::exp(x[2]);
        const double l1 = lambda_or_inf(g1, diag2(es, gs));
        if (!std::isfinite(l1)) return kInf;
        const double l2 = lambda_or_inf(g2, diag2(fs, hs));
        return l1 * std::pow(l2, n - 1);
    };
    // sigma_2 = rho_2 is the natural candidate when it keeps the boundary reachable.
    std::vector<Point> extra;
    const double t2 = std::log(s.h() * s.f());
    if (t2 > 0.0) extra.push_back({std::log(s.f()), 1.0, std::min(t2, 12.0)});
    Search cfg;
    cfg.prescan = 128;
    BoundResult e = finish(search_min(f, {-8.0, 0.0, 0.0}, {8.0, 12.0, 12.0}, cfg, extra),
                           "numeric:separable-decomposed");
    return c.value < e.value ? c : e;
}

}  // namespace gres
