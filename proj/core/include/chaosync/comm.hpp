#pragma once

#include "chaosync/adaptive_sync.hpp"
#include "chaosync/rabinovich.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chaosync {

enum class payload_kind { text, image };
const char* to_string(payload_kind k);
const char* to_string(mod_param m);
payload_kind payload_kind_from_string(const std::string& s);
mod_param mod_param_from_string(const std::string& s);

struct message {
    payload_kind kind = payload_kind::text;
    std::vector<std::int64_t> symbols;
    std::size_t rows = 0, cols = 0; // image dimensions; 0x0 for text
};

struct split_parts {
    std::vector<std::int64_t> part1, part2;
};

// part1 = first ceil(fraction * len) symbols
split_parts split_message(const message& msg, double fraction);
std::vector<std::int64_t> gather(const split_parts& parts);

// modulation pair: phi1 shifts the chosen drive parameter by symbol/(10 d),
// psi1 inverts it from the receiver's parameter estimate
double phi1(double symbol, double d, double gamma);
double psi1(double estimate, double gamma_key, double d);

// masking pair on a drive state component
double phi2(double x6, double symbol);
double psi2(double y6, double masked);

// UTF-8 text <-> unicode code points
std::vector<std::int64_t> encode_text(const std::string& utf8);
std::string decode_text(const std::vector<std::int64_t>& symbols);

struct comm_schedule {
    double dwell_seconds = 5.0;    // hold per part-1 symbol
    double sample_period = 2.5e-4; // shared channel sample clock
    double start_time = 20.0;      // key-sync phase before the payload
    double settle_seconds = 2.5;   // gap between modulation and masking phases
    double split_fraction = 0.01;
    double sync_threshold = 1e-2;
    mod_param modulation = mod_param::upsilon;
    int mask_component = 6; // 1-based index into the realified state, x6
    cvec3 drive_init = {cplx(1.0, 1.0), cplx(1.0, 1.0), cplx(1.0, 1.0)};
    double horizon = 0.0; // 0 = derive from the message length
};

struct transmission_header {
    payload_kind kind = payload_kind::text;
    double d = 1.0;
    bool d_clamped = false;
    std::size_t split_index = 0;
    std::size_t total_length = 0;
    std::size_t rows = 0, cols = 0;
    double dwell_seconds = 5.0;
    double sample_period = 2.5e-4;
    double start_time = 20.0;
    double settle_seconds = 2.5;
    mod_param modulation = mod_param::upsilon;
    int mask_component = 6;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct transmission_record {
    transmission_header header;
    std::vector<double> t1;      // channel-1 sample times
    std::vector<rvec6> channel1; // drive-state samples
    std::vector<double> t2;      // channel-2 sample times
    std::vector<double> channel2; // masked part-2 values
};

transmission_record transmit(const message& msg, const rabinovich_params& params,
                             const gain_matrices& gains, const comm_schedule& schedule,
                             double noise_sigma, std::uint64_t seed);

struct receive_stats {
    double key_sync_sup = 0.0;       // sup-norm drive/response error, last 1 s before payload
    double max_part1_residual = 0.0; // worst |decoded - rounded| over part-1 symbols
    double max_part2_residual = 0.0;
};

message receive(const transmission_record& record, const rabinovich_params& params_key,
                const gain_matrices& gains, const cvec3& response_init,
                const parameter_estimates& estimate_init, double sync_threshold = 1e-2,
                receive_stats* stats = nullptr);

// plain-text record file: `key value` header, blank line, channel-1 CSV,
// blank line, channel-2 CSV; numeric fields round-trip bit exactly
void write_record(const transmission_record& rec, const std::string& path);
transmission_record read_record(const std::string& path);

} // namespace chaosync
