#include "gres.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "gres/bounds.hpp"
#include "gres/cm_json.hpp"
#include "gres/criteria.hpp"
#include "gres/fock.hpp"

struct gres_cm {
    gres::CovarianceMatrix cm;
};

namespace {

thread_local std::string g_last_error;

gres_status to_status(gres::ErrorKind k) {
    switch (k) {
        case gres::ErrorKind::InvalidArgument: return GRES_ERR_INVALID_ARGUMENT;
        case gres::ErrorKind::SingularState: return GRES_ERR_SINGULAR;
        case gres::ErrorKind::Unsupported: return GRES_ERR_UNSUPPORTED;
        case gres::ErrorKind::RootNotFound: return GRES_ERR_ROOT_NOT_FOUND;
    }
    return GRES_ERR_INTERNAL;
}

template <class F>
gres_status guarded(F&& f) {
    g_last_error.clear();
    try {
        f();
        return GRES_OK;
    } catch (const gres::Error& e) {
        g_last_error = e.what();
        return to_status(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    }
    return GRES_ERR_INTERNAL;
}

void require(bool ok, const char* msg) {
    if (!ok) gres::fail(gres::ErrorKind::InvalidArgument, msg);
}

void copy_name(char* dst, const std::string& s) {
    std::strncpy(dst, s.c_str(), 63);
    dst[63] = '\0';
}

gres::Resource resource_of(gres_resource r) {
    require(r == GRES_NONCLASSICALITY || r == GRES_ENTANGLEMENT, "unknown resource");
    return r == GRES_NONCLASSICALITY ? gres::Resource::Nonclassicality : gres::Resource::Entanglement;
}

gres::Method method_of(gres_method m) {
    switch (m) {
        case GRES_METHOD_AUTO: return gres::Method::Auto;
        case GRES_METHOD_ANALYTIC: return gres::Method::Analytic;
        case GRES_METHOD_NUMERIC: return gres::Method::Numeric;
    }
    gres::fail(gres::ErrorKind::InvalidArgument, "unknown method");
}

void fill(const gres::RobustnessBounds& b, gres_bounds* out) {
    out->lower = b.lower;
    out->upper = b.upper;
    out->gap = b.gap;
    out->converged = b.converged ? 1 : 0;
    out->conjecture_conditional = b.conjecture_conditional ? 1 : 0;
    out->numeric_lower = b.numeric_lower;
    out->numeric_upper = b.numeric_upper;
    copy_name(out->lower_method, b.lower_method);
    copy_name(out->upper_method, b.upper_method);
}

gres_status make(gres::CovarianceMatrix cm, gres_cm** out) {
    *out = new gres_cm{std::move(cm)};
    return GRES_OK;
}

}  // namespace

extern "C" {

const char* gres_last_error(void) { return g_last_error.c_str(); }

const char* gres_version(void) { return "1.0.0"; }

gres_status gres_cm_create(int n, const double* entries, gres_cm** out) {
    return guarded([&] {
        require(out != nullptr && entries != nullptr, "null pointer argument");
        require(n >= 1, "mode count must be at least 1");
        gres::Matrix m(2 * n, 2 * n);
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < 2 * n; ++j) m(i, j) = entries[i * 2 * n + j];
        make(gres::CovarianceMatrix(m), out);
    });
}

gres_status gres_cm_from_json(const char* json, gres_cm** out) {
    return guarded([&] {
        require(out != nullptr && json != nullptr, "null pointer argument");
        make(gres::cm_from_json(json), out);
    });
}

gres_status gres_cm_two_mode_standard(double a, double b, double c1, double c2, gres_cm** out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        make(gres::TwoModeStandardForm{a, b, c1, c2}.expand(), out);
    });
}

gres_status gres_cm_symmetric(int n, double a, double b, double c1, double c2, gres_cm** out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        require(n >= 2, "symmetric family needs n >= 2");
        make(gres::SymmetricSpec{n, a, b, c1, c2}.expand(), out);
    });
}

void gres_cm_destroy(gres_cm* cm) { delete cm; }

int gres_cm_modes(const gres_cm* cm) { return cm ? cm->cm.modes() : 0; }

gres_status gres_cm_get(const gres_cm* cm, double* out, size_t len) {
    return guarded([&] {
        require(cm != nullptr && out != nullptr, "null pointer argument");
        const auto& m = cm->cm.matrix();
        require(len >= static_cast<size_t>(m.size()), "output buffer too small");
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
    });
}

gres_status gres_cm_symplectic_eigenvalues(const gres_cm* cm, double* out, size_t len) {
    return guarded([&] {
        require(cm != nullptr && out != nullptr, "null pointer argument");
        require(len >= static_cast<size_t>(cm->cm.modes()), "output buffer too small");
        const auto nu = gres::symplectic_eigenvalues(cm->cm);
        for (size_t i = 0; i < nu.size(); ++i) out[i] = nu[i];
    });
}

gres_status gres_classify(const gres_cm* cm, gres_classification* out) {
    return guarded([&] {
        require(cm != nullptr && out != nullptr, "null pointer argument");
        *out = gres_classification{};
        const auto ph = gres::is_physical(cm->cm);
        out->physical = ph.physical ? 1 : 0;
        out->min_eigenvalue = ph.min_eigenvalue;
        if (!ph.physical) return;
        const auto cl = gres::is_classical(cm->cm);
        out->classical = cl.classical ? 1 : 0;
        out->classical_margin = cl.margin;
        if (cm->cm.modes() == 2) {
            out->separability_known = 1;
            out->separable = gres::ppt_partial_transpose_check(cm->cm) ? 1 : 0;
        } else if (cl.classical) {
            out->separability_known = 1;
            out->separable = 1;
        } else if (cm->cm.modes() == 1) {
            out->separability_known = 1;
            out->separable = 1;
        } else if (auto s = gres::detect_symmetric(cm->cm.matrix())) {
            if (s->c1 >= 0.0 && s->c2 >= 0.0) {
                out->separability_known = 1;
                out->separable = gres::is_fully_separable_symmetric(*s) ? 1 : 0;
            }
        }
    });
}

gres_status gres_lambda_upper(const gres_cm* rho, const gres_cm* sigma, double* value, int* exists) {
    return guarded([&] {
        require(rho && sigma && value && exists, "null pointer argument");
        const auto r = gres::lambda_upper(rho->cm.matrix(), sigma->cm.matrix());
        *value = r.value;
        *exists = r.exists ? 1 : 0;
    });
}

gres_status gres_robustness(const gres_family_params* p, gres_resource resource, gres_method method,
                            gres_bounds* out) {
    return guarded([&] {
        require(p != nullptr && out != nullptr, "null pointer argument");
        gres::FamilyInput in;
        switch (p->family) {
            case GRES_FAMILY_SINGLE_MODE: in = gres::SingleModeInput{p->a, p->b, p->c}; break;
            case GRES_FAMILY_TWO_MODE_STANDARD: in = gres::TwoModeStandardForm{p->a, p->b, p->c1, p->c2}; break;
            case GRES_FAMILY_SYMMETRIC: in = gres::SymmetricSpec{p->n, p->a, p->b, p->c1, p->c2}; break;
            case GRES_FAMILY_GHZ: in = gres::GhzInput{p->n, p->r, p->eta}; break;
            default: gres::fail(gres::ErrorKind::Unsupported, "unknown family");
        }
        fill(gres::robustness(in, resource_of(resource), method_of(method)), out);
    });
}

gres_status gres_robustness_cm(const gres_cm* cm, gres_resource resource, gres_method method, gres_bounds* out) {
    return guarded([&] {
        require(cm != nullptr && out != nullptr, "null pointer argument");
        fill(gres::robustness(cm->cm, resource_of(resource), method_of(method)), out);
    });
}

gres_status gres_verify_witness(const gres_witness_request* req, gres_witness_report* out) {
    return guarded([&] {
        require(req != nullptr && out != nullptr, "null pointer argument");
        require(req->n >= 1, "mode count must be at least 1");
        require(req->starts >= 0, "starts must be non-negative");
        const auto w = gres::witness_eigen(req->n, req->a_w, req->b_w, req->c_w1, req->c_w2);
        const auto v = gres::verify_witness(w, req->cutoff, req->starts, req->seed);
        out->y = v.y;
        out->prefactor = v.prefactor;
        out->m0 = v.m0;
        out->vacuum_overlap = v.mean.vacuum_overlap;
        out->converged = v.mean.converged ? 1 : 0;
    });
}

}  // extern "C"
