#pragma once

namespace gres {

// Every numerical threshold used by the library lives here.
struct Tolerances {
    double symmetry = 1e-12;         // relative asymmetry allowed in a CM
    double physical = 1e-10;         // min eigenvalue of gamma + i*Delta
    double classical = 1e-10;        // min eigenvalue of gamma - I
    double separable_symmetric = 1e-10;
    double boundary = 1e-8;          // boundary membership of free states
    double cluster = 1e-11;          // relative gap merging degenerate symplectic eigenvalues
    double nu_floor = 1e-8;          // nu'' >= 1 - nu_floor
    double singular_rcond = 1e-13;   // reciprocal condition treated as singular
    double transfer_rcond = 1e-9;    // below this, switch Lambda evaluation route
    double nullify = 1e-10;          // presqueezed witness diagonal blocks
    double root = 1e-12;             // bisection residual
    double orthogonal = 1e-9;        // orthogonality / symplecticity checks on user matrices
};

inline constexpr Tolerances kTol{};

}  // namespace gres
