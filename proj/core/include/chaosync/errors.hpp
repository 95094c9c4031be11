#pragma once

#include <stdexcept>
#include <string>

namespace chaosync {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_finite_state : error {
    double t;
    explicit non_finite_state(double time)
        : error("non-finite state at t=" + std::to_string(time)), t(time) {}
};

struct empty_message : error {
    empty_message() : error("empty message") {}
};

struct non_positive_range : error {
    non_positive_range() : error("symbol range d must be positive") {}
};

struct schedule_too_short : error {
    using error::error;
};

struct header_mismatch : error {
    using error::error;
};

struct sync_failure : error {
    using error::error;
};

struct negative_sigma : error {
    negative_sigma() : error("noise sigma must be non-negative") {}
};

struct pixel_out_of_range : error {
    using error::error;
};

struct dimension_mismatch : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace chaosync
