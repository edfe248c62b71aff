#include "gres/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace gres {

namespace {

long ipow(int base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Exponent digits of a flat index over `nv` variables with radix k.
void digits_of(long idx, int nv, int k, std::vector<int>& d) {
    for (int v = nv - 1; v >= 0; --v) {
        d[v] = static_cast<int>(idx % k);
        idx /= k;
    }
}

}  // namespace

void check_fock_size(int n, int cutoff) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "mode count must be at least 1");
    if (cutoff < 1) fail(ErrorKind::InvalidArgument, "cutoff must be at least 1");
    double dim = std::pow(double(cutoff), n);
    if (dim > 4096.0)
        fail(ErrorKind::Unsupported, "Fock space of dimension " + std::to_string(static_cast<long>(dim)) +
                                         " exceeds the 4096 limit; use a smaller cutoff");
}

CMatrix gaussian_kernel_elements(const CMatrix& m, int k, cdouble prefactor) {
    const int nv = static_cast<int>(m.rows());
    const int n = nv / 2;
    const long total = ipow(k, nv);
    std::vector<long> stride(nv);
    for (int v = 0; v < nv; ++v) stride[v] = ipow(k, nv - 1 - v);

    struct Term {
        int i, j;
        cdouble c;
    };
    std::vector<Term> terms;
    for (int i = 0; i < nv; ++i)
        for (int j = i; j < nv; ++j) {
            const cdouble c = i == j ? 0.5 * m(i, i) : 0.5 * (m(i, j) + m(j, i));
            if (c != cdouble(0.0)) terms.push_back({i, j, c});
        }

    // Homogeneous pieces Q^p / p! carry every monomial of degree 2p, so the
    // running term is the only contribution at that degree.
    std::vector<cdouble> coef(total, 0.0), term(total, 0.0), next(total, 0.0);
    term[0] = coef[0] = 1.0;
    std::vector<int> d(nv);
    const int max_p = nv * (k - 1) / 2;
    for (int p = 1; p <= max_p; ++p) {
        std::fill(next.begin(), next.end(), cdouble(0.0));
        bool any = false;
        for (long idx = 0; idx < total; ++idx) {
            const cdouble t = term[idx];
            if (t == cdouble(0.0)) continue;
            digits_of(idx, nv, k, d);
            for (const auto& tm : terms) {
                if (tm.i == tm.j) {
                    if (d[tm.i] + 2 > k - 1) continue;
                } else if (d[tm.i] + 1 > k - 1 || d[tm.j] + 1 > k - 1) {
                    continue;
                }
                next[idx + stride[tm.i] + stride[tm.j]] += tm.c * t;
            }
        }
        const double inv = 1.0 / p;
        for (long idx = 0; idx < total; ++idx) {
            next[idx] *= inv;
            if (next[idx] != cdouble(0.0)) any = true;
            coef[idx] += next[idx];
        }
        std::swap(term, next);
        if (!any) break;
    }

    const long dim = ipow(k, n);
    std::vector<double> half_lf(k);
    for (int v = 0; v < k; ++v) half_lf[v] = 0.5 * std::lgamma(v + 1.0);
    CMatrix out(dim, dim);
    for (long idx = 0; idx < total; ++idx) {
        digits_of(idx, nv, k, d);
        double lf = 0.0;
        for (int v = 0; v < nv; ++v) lf += half_lf[d[v]];
        out(idx / dim, idx % dim) = prefactor * std::exp(lf) * coef[idx];
    }
    return out;
}

FockTensor fock_elements(const CovarianceMatrix& gamma, int cutoff) {
    const int n = gamma.modes();
    check_fock_size(n, cutoff);
    const ComplexBeta cb = complex_beta(gamma);
    FockTensor t;
    t.n = n;
    t.cutoff = cutoff;
    t.elements = gaussian_kernel_elements(sigma1(n).cast<cdouble>() + cb.beta, cutoff, cb.normalization);
    t.trace_deficit = 1.0 - t.elements.trace().real();
    return t;
}

FockTensor fock_elements_single_mode(const Matrix& g, int cutoff) {
    if (cutoff < 1) fail(ErrorKind::InvalidArgument, "cutoff must be at least 1");
    if (g.rows() != 2 || g.cols() != 2 || std::abs(g(0, 1)) > 1e-14 * std::max(1.0, g.cwiseAbs().maxCoeff()) ||
        std::abs(g(1, 0)) > 1e-14 * std::max(1.0, g.cwiseAbs().maxCoeff()))
        fail(ErrorKind::InvalidArgument, "single-mode elements need a diagonal 2x2 covariance matrix");
    if (!is_physical(g).physical) fail(ErrorKind::InvalidArgument, "covariance matrix is unphysical");
    // (L (gamma + I) L^T / 2)^{-1} = [[B, A], [A, B]] for diagonal gamma.
    const double x = g(0, 0) + 1.0, p = g(1, 1) + 1.0;
    const double s = 0.25 * (p - x), t = 0.25 * (x + p);  // half of the real complex CM blocks
    const double det = s * s - t * t;
    const double bq = s / det, aq = -t / det;
    const double norm = std::sqrt(std::abs(aq * aq - bq * bq));
    FockTensor out;
    out.n = 1;
    out.cutoff = cutoff;
    out.elements = CMatrix::Zero(cutoff, cutoff);
    for (int l = 0; l < cutoff; ++l)
        for (int m = 0; m < cutoff; ++m) {
            if ((l - m) % 2 != 0) continue;
            double sum = 0.0;
            for (int k = std::min(l, m) % 2; k <= std::min(l, m); k += 2) {
                const int i = (m - k) / 2, j = (l - k) / 2;
                const double lw = 0.5 * (std::lgamma(m + 1.0) + std::lgamma(l + 1.0)) - std::lgamma(k + 1.0) -
                                  std::lgamma(i + 1.0) - std::lgamma(j + 1.0);
                double term = std::exp(lw);
                if (k > 0) term *= std::pow(1.0 - aq, k);
                if (i + j > 0) term *= std::pow(0.5 * bq, i + j);
                sum += term;
            }
            out.elements(l, m) = norm * sum;
        }
    out.trace_deficit = 1.0 - out.elements.trace().real();
    return out;
}

BruteForceLambda brute_force_lambda(const CovarianceMatrix& gamma, const Matrix& gamma_sigma, int cutoff) {
    const int n = gamma.modes();
    check_fock_size(n, cutoff);
    const SymplecticDecomposition dec = williamson(gamma_sigma);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) {
        u[i] = (dec.nu[i] - 1.0) / (dec.nu[i] + 1.0);
        if (!(u[i] > 0.0)) fail(ErrorKind::InvalidArgument, "free state has a pure mode");
    }
    const Matrix d = symplectic_form(n);
    const Matrix s_inv = -d * dec.S.transpose() * d;
    Matrix gp = s_inv * gamma.matrix() * s_inv.transpose();
    const FockTensor rho = fock_elements(CovarianceMatrix(0.5 * (gp + gp.transpose())), cutoff);

    const long dim = rho.elements.rows();
    Vector w(dim);
    std::vector<int> dg(n);
    for (long idx = 0; idx < dim; ++idx) {
        digits_of(idx, n, cutoff, dg);
        double lw = 0.0;
        for (int i = 0; i < n; ++i) lw += -0.5 * dg[i] * std::log(u[i]) - 0.5 * std::log(1.0 - u[i]);
        w(idx) = std::exp(lw);
    }
    const CMatrix v = w.asDiagonal() * rho.elements * w.asDiagonal();

    BruteForceLambda out;
    const int step = 2;
    for (int c = std::max(1, cutoff - 3 * step); c <= cutoff; c += step) out.cutoffs.push_back(c);
    if (out.cutoffs.back() != cutoff) out.cutoffs.push_back(cutoff);
    for (int c : out.cutoffs) {
        std::vector<long> keep;
        for (long idx = 0; idx < dim; ++idx) {
            digits_of(idx, n, cutoff, dg);
            if (*std::max_element(dg.begin(), dg.end()) < c) keep.push_back(idx);
        }
        CMatrix sub(keep.size(), keep.size());
        for (size_t i = 0; i < keep.size(); ++i)
            for (size_t j = 0; j < keep.size(); ++j) sub(i, j) = v(keep[i], keep[j]);
        sub = 0.5 * (sub + sub.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sub, Eigen::EigenvaluesOnly);
        out.ladder.push_back(es.eigenvalues().maxCoeff());
    }
    const size_t m = out.ladder.size();
    out.value = out.ladder.back();
    out.cutoff = out.cutoffs.back();
    if (m >= 2) {
        out.previous_cutoff = out.cutoffs[m - 2];
        out.previous_value = out.ladder[m - 2];
        out.stable = std::abs(out.value - out.previous_value) < 1e-4 * std::abs(out.value);
    }
    if (m >= 3) {
        const bool g1 = out.ladder[m - 1] > 1.02 * out.ladder[m - 2];
        const bool g2 = out.ladder[m - 2] > 1.02 * out.ladder[m - 3];
        out.divergent = g1 && g2;
    }
    return out;
}

BruteForceLambda brute_force_lambda(const CovarianceMatrix& gamma, const FreeStateParams& sigma, int cutoff) {
    const CovarianceMatrix gs =
        sigma.kind == FreeKind::ClassicalBoundary ? classical_boundary_expand(sigma) : separable_boundary_expand(sigma);
    return brute_force_lambda(gamma, gs.matrix(), cutoff);
}

WitnessEigen witness_eigen(int n, double a_w, double b_w, double c_w1, double c_w2) {
    return {n, a_w + (n - 1) * c_w1, a_w - c_w1, b_w + (n - 1) * c_w2, b_w - c_w2};
}

Matrix witness_cm(const WitnessEigen& w, double y) {
    const int n = w.n;
    auto fn = [n](double x, double z) { return hn_block(n, z + (x - z) / n, (x - z) / n); };
    Matrix g = Matrix::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n) = fn(w.a, w.b) / y;
    g.bottomRightCorner(n, n) = fn(w.c, w.d) * y;
    return g;
}

double presqueeze_nullify(double a, double b, double c, double d, int n) {
    if (!(a > 0 && b > 0 && c > 0 && d > 0) || n < 1)
        fail(ErrorKind::InvalidArgument, "presqueeze parameters must be positive");
    auto f = [&](double y) {
        return -y / (a + y) + 1.0 / (c * y + 1.0) - (n - 1) * y / (b + y) + (n - 1) / (d * y + 1.0);
    };
    double lo = 0.0, hi = 1.0;
    while (f(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) fail(ErrorKind::RootNotFound, "no sign change of the nullification equation on (0, 1e300]");
    }
    for (int it = 0; it < 2000 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double y = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
    if (std::abs(f(y)) > kTol.root)
        fail(ErrorKind::RootNotFound, "nullification residual " + std::to_string(f(y)) + " above tolerance");
    return y;
}

CMatrix presqueezed_beta(const WitnessEigen& w, double y) { return complex_beta(witness_cm(w, y)).beta; }

FockTensor witness_fock(const CMatrix& beta, int cutoff) {
    const int n = static_cast<int>(beta.rows() / 2);
    check_fock_size(n, cutoff);
    const CMatrix m = sigma1(n).cast<cdouble>() + beta;
    if (m.diagonal().cwiseAbs().maxCoeff() > kTol.nullify)
        fail(ErrorKind::InvalidArgument, "diagonal of the witness kernel is not nullified");
    FockTensor t;
    t.n = n;
    t.cutoff = cutoff;
    t.elements = gaussian_kernel_elements(m, cutoff, std::sqrt(std::abs(beta.determinant())));
    t.trace_deficit = 1.0 - t.elements.trace().real();
    return t;
}

ProductMeanResult max_product_mean(const FockTensor& omega, int starts, std::uint64_t seed) {
    const int n = omega.n, k = omega.cutoff;
    const long dim = omega.elements.rows();
    std::vector<std::vector<int>> dig(dim, std::vector<int>(n));
    for (long idx = 0; idx < dim; ++idx) digits_of(idx, n, k, dig[idx]);

    auto run = [&](ProductPureState st, bool& conv) {
        double value = -std::numeric_limits<double>::infinity();
        conv = false;
        for (int sweep = 0; sweep < 500; ++sweep) {
            double last = value;
            for (int j = 0; j < n; ++j) {
                CVector rest(dim);
                for (long idx = 0; idx < dim; ++idx) {
                    cdouble p = 1.0;
                    for (int i = 0; i < n; ++i)
                        if (i != j) p *= st.modes[i](dig[idx][i]);
                    rest(idx) = p;
                }
                CMatrix wj = CMatrix::Zero(k, k);
                for (long l = 0; l < dim; ++l) {
                    if (rest(l) == cdouble(0.0)) continue;
                    const cdouble cl = std::conj(rest(l));
                    for (long m = 0; m < dim; ++m) wj(dig[l][j], dig[m][j]) += cl * rest(m) * omega.elements(l, m);
                }
                wj = 0.5 * (wj + wj.adjoint()).eval();
                Eigen::SelfAdjointEigenSolver<CMatrix> es(wj);
                CVector c = es.eigenvectors().col(k - 1);
                Eigen::Index piv = 0;
                c.cwiseAbs().maxCoeff(&piv);
                c *= std::conj(c(piv)) / std::abs(c(piv));
                st.modes[j] = c;
                value = es.eigenvalues()(k - 1);
            }
            if (std::abs(value - last) < 1e-10 * std::max(1.0, std::abs(value))) {
                conv = true;
                break;
            }
        }
        return std::make_pair(value, st);
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    ProductMeanResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int s = 0; s <= starts; ++s) {
        ProductPureState st;
        for (int j = 0; j < n; ++j) {
            CVector c = CVector::Zero(k);
            if (s == 0) {
                c(0) = 1.0;
            } else {
                for (int q = 0; q < k; ++q) c(q) = cdouble(nd(rng), nd(rng));
                c.normalize();
            }
            st.modes.push_back(c);
        }
        bool conv = false;
        auto [v, fin] = run(st, conv);
        if (v > best.value + 1e-12) {
            best.value = v;
            best.state = fin;
            best.converged = conv;
        }
    }
    best.vacuum_overlap = 1.0;
    for (const auto& c : best.state.modes) best.vacuum_overlap *= std::norm(c(0));
    return best;
}

WitnessVerification verify_witness(const WitnessEigen& w, int cutoff, int starts, std::uint64_t seed) {
    check_fock_size(w.n, cutoff);
    if (!is_physical(witness_cm(w, 1.0)).physical) fail(ErrorKind::InvalidArgument, "witness covariance matrix is unphysical");
    WitnessVerification out;
    out.y = presqueeze_nullify(w.a, w.b, w.c, w.d, w.n);
    const CMatrix beta = presqueezed_beta(w, out.y);
    out.prefactor = std::sqrt(std::abs(beta.determinant()));
    out.mean = max_product_mean(witness_fock(beta, cutoff), starts, seed);
    out.m0 = out.mean.value / out.prefactor;
    return out;
}

bool ppt_partial_transpose_check(const CovarianceMatrix& gamma) {
    if (gamma.modes() != 2) fail(ErrorKind::Unsupported, "partial transpose check needs n = 2");
    return is_physical(partial_transpose(gamma.matrix(), 1)).physical;
}

}  // namespace gres
