#include "chaosync/adaptive_sync.hpp"

#include "chaosync/errors.hpp"
#include "chaosync/rk4.hpp"

#include <cmath>

namespace chaosync {

rabinovich_params apply_override(rabinovich_params p, const param_override& ov) {
    switch (ov.which) {
    case mod_param::upsilon: p.upsilon = ov.value; break;
    case mod_param::alpha: p.alpha = ov.value; break;
    case mod_param::gamma: p.gamma = ov.value; break;
    }
    return p;
}

cvec3 controller_theta(const cvec3& drive, const cvec3& response,
                       const rabinovich_params& true_params,
                       const parameter_estimates& est, const gain_matrices& gains) {
    const fgh_decomposition fx = fgh_eval(drive);
    const fgh_decomposition fy = fgh_eval(response);
    const cvec3 a = a_block(true_params);
    const cvec3 b = b_block(true_params);
    cvec3 theta;
    for (int i = 0; i < 3; ++i) {
        const cplx e = response[i] - drive[i];
        const cplx ea = est.a_hat[i] - a[i];
        const cplx eb = est.b_hat[i] - b[i];
        theta[i] = (fx.F[i] - fy.F[i]) * a[i] + fx.G[i] - fy.G[i] + (fx.H[i] - fy.H[i]) * b[i]
                 - gains.k1[i] * e - gains.k2[i] * ea - gains.k3[i] * eb;
    }
    return theta;
}

cvec3 controller_theta_expanded(const cvec3& drive, const cvec3& response,
                                const rabinovich_params& true_params,
                                const parameter_estimates& est, const gain_matrices& gains) {
    const cplx xd = drive[0], yd = drive[1], zd = drive[2];
    const cplx xr = response[0], yr = response[1], zr = response[2];
    const double u = true_params.upsilon, al = true_params.alpha;
    const double be = true_params.beta, ga = true_params.gamma;

    const cplx e1 = xr - xd, e2 = yr - yd, e3 = zr - zd;
    const cplx ea1 = est.a_hat[0] - u, ea2 = est.a_hat[1] - al, ea3 = est.a_hat[2] - ga;
    const cplx eb1 = est.b_hat[0], eb2 = est.b_hat[1] - be, eb3 = est.b_hat[2] - be;

    cvec3 theta;
    theta[0] = u * (xr - xd) + yd * std::conj(xd) + zd * std::conj(yd)
             - yr * std::conj(xr) - zr * std::conj(yr)
             - gains.k1[0] * e1 - gains.k2[0] * ea1 - gains.k3[0] * eb1;
    theta[1] = al * (yd - yr) - xd * xd + 2.0 * std::conj(xd) * zd + xr * xr
             - 2.0 * std::conj(xr) * zr - be * (std::norm(yd) * yd - std::norm(yr) * yr)
             - gains.k1[1] * e2 - gains.k2[1] * ea2 - gains.k3[1] * eb2;
    theta[2] = ga * (zd - zr) - 3.0 * xd * yd + 3.0 * xr * yr
             - be * (std::norm(zd) * zd - std::norm(zr) * zr)
             - gains.k1[2] * e3 - gains.k2[2] * ea3 - gains.k3[2] * eb3;
    return theta;
}

estimate_derivative estimate_update(const cvec3& response, const cvec3& error,
                                    const gain_matrices& gains) {
    const fgh_decomposition fy = fgh_eval(response);
    estimate_derivative d;
    for (int i = 0; i < 3; ++i) {
        d.da_hat[i] = -std::conj(fy.F[i]) * error[i] + gains.k2[i] * error[i];
        d.db_hat[i] = -std::conj(fy.H[i]) * error[i] + gains.k3[i] * error[i];
    }
    return d;
}

response_state response_rhs(const cvec3& drive_value, const response_state& s,
                            const rabinovich_params& true_params, const gain_matrices& gains) {
    response_state d;
    cvec3 e;
    for (int i = 0; i < 3; ++i) e[i] = s.response[i] - drive_value[i];

    const cvec3 theta = controller_theta(drive_value, s.response, true_params, s.est, gains);
    const fgh_decomposition fy = fgh_eval(s.response);
    for (int i = 0; i < 3; ++i)
        d.response[i] = fy.F[i] * s.est.a_hat[i] + fy.G[i] + fy.H[i] * s.est.b_hat[i] + theta[i];

    const estimate_derivative de = estimate_update(s.response, e, gains);
    d.est.a_hat = de.da_hat;
    d.est.b_hat = de.db_hat;
    return d;
}

sync_state coupled_rhs(const sync_state& s, const rabinovich_params& true_params,
                       const gain_matrices& gains,
                       const std::optional<param_override>& drive_override) {
    sync_state d;
    const rabinovich_params drive_params =
        drive_override ? apply_override(true_params, *drive_override) : true_params;
    d.drive = rabinovich_rhs_complex(s.drive, drive_params);

    const response_state dr = response_rhs(s.drive, {s.response, s.est}, true_params, gains);
    d.response = dr.response;
    d.est = dr.est;
    return d;
}

double lyapunov_V(const cvec3& e, const cvec3& e_a, const cvec3& e_b) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v += std::norm(e[i]) + std::norm(e_a[i]) + std::norm(e_b[i]);
    return 0.5 * v;
}

namespace {

using aug24 = std::array<double, 24>;

aug24 pack(const sync_state& s) {
    aug24 a{};
    const rvec6 d = realify(s.drive), r = realify(s.response);
    const rvec6 ea = realify(s.est.a_hat), eb = realify(s.est.b_hat);
    for (int i = 0; i < 6; ++i) {
        a[i] = d[i];
        a[6 + i] = r[i];
        a[12 + i] = ea[i];
        a[18 + i] = eb[i];
    }
    return a;
}

sync_state unpack(const aug24& a) {
    sync_state s;
    rvec6 d, r, ea, eb;
    for (int i = 0; i < 6; ++i) {
        d[i] = a[i];
        r[i] = a[6 + i];
        ea[i] = a[12 + i];
        eb[i] = a[18 + i];
    }
    s.drive = complexify(d);
    s.response = complexify(r);
    s.est.a_hat = complexify(ea);
    s.est.b_hat = complexify(eb);
    return s;
}

} // namespace

sync_state sync_rk4_step(const sync_state& s, double h, const rabinovich_params& params,
                         const gain_matrices& gains,
                         const std::optional<param_override>& drive_override) {
    auto rhs = [&](double, const aug24& a, aug24& da) {
        da = pack(coupled_rhs(unpack(a), params, gains, drive_override));
    };
    return unpack(rk4_step(rhs, 0.0, pack(s), h));
}

sync_run_report run_sync_experiment(const rabinovich_params& params, const gain_matrices& gains,
                                    const cvec3& drive_init, const cvec3& response_init,
                                    const parameter_estimates& estimate_init, double horizon,
                                    double sync_threshold, const sync_run_options& opt) {
    if (!gains.positive()) throw config_error("gain matrices must have positive diagonals");
    if (horizon <= 0.0 || opt.step <= 0.0) throw config_error("horizon and step must be positive");

    sync_state s{drive_init, response_init, estimate_init};
    const cvec3 a = a_block(params);
    const cvec3 b = b_block(params);

    auto errors = [&](const sync_state& st, cvec3& e, cvec3& ea, cvec3& eb) {
        for (int i = 0; i < 3; ++i) {
            e[i] = st.response[i] - st.drive[i];
            ea[i] = st.est.a_hat[i] - a[i];
            eb[i] = st.est.b_hat[i] - b[i];
        }
    };
    auto supnorm = [](const cvec3& e) {
        double m = 0.0;
        for (const cplx& c : e) {
            m = std::max(m, std::abs(c.real()));
            m = std::max(m, std::abs(c.imag()));
        }
        return m;
    };

    sync_run_report rep;
    const auto nsteps = static_cast<std::size_t>(std::llround(horizon / opt.step));
    const std::size_t every = opt.sample_every == 0 ? 1 : opt.sample_every;
    rep.times.reserve(nsteps / every + 2);

    cvec3 e, ea, eb;
    errors(s, e, ea, eb);
    double v_prev = lyapunov_V(e, ea, eb);
    double last_bad = -opt.step; // last time the error exceeded the threshold
    if (supnorm(e) >= sync_threshold) last_bad = 0.0;

    auto record = [&](double t, const cvec3& ce, const cvec3& cea, const cvec3& ceb, double v) {
        rep.times.push_back(t);
        rep.e.push_back(realify(ce));
        rep.e_a.push_back(realify(cea));
        rep.e_b.push_back(realify(ceb));
        rep.v.push_back(v);
    };
    record(0.0, e, ea, eb, v_prev);

    for (std::size_t i = 0; i < nsteps; ++i) {
        const double t = static_cast<double>(i + 1) * opt.step;
        try {
            s = sync_rk4_step(s, opt.step, params, gains);
        } catch (const non_finite_state&) {
            throw non_finite_state(t);
        }
        errors(s, e, ea, eb);
        const double v = lyapunov_V(e, ea, eb);
        rep.max_v_step_increase = std::max(rep.max_v_step_increase, v - v_prev);
        v_prev = v;
        if (supnorm(e) >= sync_threshold) last_bad = t;
        if (!rep.sync_time && t - last_bad >= opt.window_seconds)
            rep.sync_time = std::max(0.0, last_bad + opt.step);
        if ((i + 1) % every == 0 || i + 1 == nsteps) record(t, e, ea, eb, v);
    }

    rep.final_estimates = s.est;
    rep.final_state = s;
    return rep;
}

} // namespace chaosync
