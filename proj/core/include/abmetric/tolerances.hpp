#pragma once

namespace abm {

// Every tolerance and finite-difference step in one place. Verdict
// thresholds follow the measured noise floors: paths that stay inside
// closed forms get 1e-8, paths through an FD oracle get 1e-6 (S) or
// 1e-4 (E).
struct Tolerances {
    // scalarpack
    double pack_identity = 1e-12;       // internal jet identities
    double constancy = 1e-8;            // profile constant iff var <= tol*(1+max|v|)
    double randers_type_fit = 1e-9;     // grid residual for randers-type detection
    double regularity_margin = 0.0;     // strictness of phi_validate positivity

    // curvature oracle agreement
    double spray_oracle_rel = 1e-7;
    double s_oracle_rel = 1e-5;
    double e_oracle_rel = 1e-4;
    double divergence_identity_abs = 1e-6;
    double homogeneity_rel = 1e-8;
    double euler_rel = 1e-6;
    double angular_rel = 1e-10;
    double cond_limit = 1e10;

    // classifier verdicts
    double fit_isotropic_s = 1e-6;
    double fit_weak_s = 1e-6;
    double fit_isotropic_e = 1e-4;
    double tensor_zero = 1e-10;
    double beta_case_fit = 1e-8;
    double ode_residual = 1e-8;
    double decompose_rel = 1e-8;
    double equivalence_c_match = 1e-3;

    // finite-difference steps (relative scales applied by the callers).
    // Calibrated so roundoff amplification stays well under the oracle
    // tolerances: eps/h^2 noise at h = 1e-3 sits near 1e-9 for O(1) data.
    double step_y_rel = 1e-3;    // y-stencils for g, E oracle, spray oracle
    double step_x_rel = 1e-5;    // x-stencils for d(ln sigma), db
    double step_b_rel = 1e-4;    // f'(b): step = step_b_rel * max(1, b)
    double step_div_rel = 1e-2;  // outer step for the oracle spray divergence

    int quadrature_points = 64;
    int order = 6;               // default jet truncation order

    static Tolerances defaults() { return Tolerances{}; }

    // All-closed-form profile: tightens the fit verdicts to 1e-8.
    static Tolerances strict() {
        Tolerances t;
        t.fit_isotropic_s = 1e-8;
        t.fit_weak_s = 1e-8;
        t.fit_isotropic_e = 1e-8;
        return t;
    }
};

}  // namespace abm
