#pragma once

#include "chaosync/rabinovich.hpp"

#include <optional>
#include <vector>

namespace chaosync {

// diagonal entries of the positive definite gain matrices
struct gain_matrices {
    std::array<double, 3> k1 = {66.0, 55.0, 77.0};
    std::array<double, 3> k2 = {13.0, 12.0, 15.0};
    std::array<double, 3> k3 = {15.0, 15.0, 59.0};
    bool positive() const {
        for (int i = 0; i < 3; ++i)
            if (k1[i] <= 0.0 || k2[i] <= 0.0 || k3[i] <= 0.0) return false;
        return true;
    }
};

struct parameter_estimates {
    cvec3 a_hat{}; // estimate of A = (upsilon, alpha, gamma)
    cvec3 b_hat{}; // estimate of B = (0, beta, beta)
};

// drive + response + estimates; flat real embedding is 24 components in the
// order drive(6), response(6), Re/Im interleaved a_hat(6), b_hat(6)
struct sync_state {
    cvec3 drive{};
    cvec3 response{};
    parameter_estimates est{};
};

enum class mod_param { upsilon, alpha, gamma };

// piecewise-constant drive parameter override used by parameter modulation
struct param_override {
    mod_param which = mod_param::gamma;
    double value = 0.0;
};

rabinovich_params apply_override(rabinovich_params p, const param_override& ov);

// controller: theta = [F(x)-F(y)]A + G(x)-G(y) + [H(x)-H(y)]B - K1 e - K2 eA - K3 eB
// where e = y - x, eA = a_hat - A, eB = b_hat - B; true params act as the
// pre-shared key in the communication setting
cvec3 controller_theta(const cvec3& drive, const cvec3& response,
                       const rabinovich_params& true_params,
                       const parameter_estimates& est, const gain_matrices& gains);

// same controller written out componentwise, kept as an independent
// cross-check of the matrix form
cvec3 controller_theta_expanded(const cvec3& drive, const cvec3& response,
                                const rabinovich_params& true_params,
                                const parameter_estimates& est, const gain_matrices& gains);

// update laws: dA/dt = -conj(F(y)) e + K2 e, dB/dt = -conj(H(y)) e + K3 e
// (F, H diagonal, so the conjugate transpose acts componentwise)
struct estimate_derivative {
    cvec3 da_hat;
    cvec3 db_hat;
};
estimate_derivative estimate_update(const cvec3& response, const cvec3& error,
                                    const gain_matrices& gains);

// response + estimator vector field for a frozen drive value; this is the
// receiver-side law when channel samples arrive under zero-order hold
struct response_state {
    cvec3 response{};
    parameter_estimates est{};
};
response_state response_rhs(const cvec3& drive_value, const response_state& s,
                            const rabinovich_params& true_params, const gain_matrices& gains);

// coupled drive / response / estimator vector field
sync_state coupled_rhs(const sync_state& s, const rabinovich_params& true_params,
                       const gain_matrices& gains,
                       const std::optional<param_override>& drive_override = std::nullopt);

// V = (e* e + eA* eA + eB* eB) / 2
double lyapunov_V(const cvec3& e, const cvec3& e_a, const cvec3& e_b);

struct sync_run_options {
    double step = 1e-4;
    std::size_t sample_every = 10;
    double window_seconds = 1.0; // sustained-error window for sync detection
};

struct sync_run_report {
    std::vector<double> times;
    std::vector<rvec6> e;             // realified response-minus-drive error
    std::vector<std::array<double, 6>> e_a; // realified estimate errors
    std::vector<std::array<double, 6>> e_b;
    std::vector<double> v;
    std::optional<double> sync_time;
    parameter_estimates final_estimates;
    sync_state final_state;
    double max_v_step_increase = 0.0;
};

sync_run_report run_sync_experiment(const rabinovich_params& params, const gain_matrices& gains,
                                    const cvec3& drive_init, const cvec3& response_init,
                                    const parameter_estimates& estimate_init, double horizon,
                                    double sync_threshold, const sync_run_options& opt = {});

// one RK4 step of the coupled system, exposed for callers that interleave
// their own per-step logic (channel sampling, modulation schedules)
sync_state sync_rk4_step(const sync_state& s, double h, const rabinovich_params& params,
                         const gain_matrices& gains,
                         const std::optional<param_override>& drive_override = std::nullopt);

} // namespace chaosync
