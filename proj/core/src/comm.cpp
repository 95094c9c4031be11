#include "chaosync/comm.hpp"

#include "chaosync/errors.hpp"
#include "chaosync/rk4.hpp"
#include "chaosync/rng.hpp"

#include <algorithm>
#include <cmath>

namespace chaosync {

const char* to_string(payload_kind k) { return k == payload_kind::text ? "text" : "image"; }

const char* to_string(mod_param m) {
    switch (m) {
    case mod_param::upsilon: return "upsilon";
    case mod_param::alpha: return "alpha";
    default: return "gamma";
    }
}

payload_kind payload_kind_from_string(const std::string& s) {
    if (s == "text") return payload_kind::text;
    if (s == "image") return payload_kind::image;
    throw config_error("unknown payload kind: " + s);
}

mod_param mod_param_from_string(const std::string& s) {
    if (s == "upsilon") return mod_param::upsilon;
    if (s == "alpha") return mod_param::alpha;
    if (s == "gamma") return mod_param::gamma;
    throw config_error("unknown modulation parameter: " + s);
}

namespace {

int mod_index(mod_param m) {
    switch (m) {
    case mod_param::upsilon: return 0;
    case mod_param::alpha: return 1;
    default: return 2;
    }
}

double mod_value(const rabinovich_params& p, mod_param m) {
    switch (m) {
    case mod_param::upsilon: return p.upsilon;
    case mod_param::alpha: return p.alpha;
    default: return p.gamma;
    }
}

} // namespace

split_parts split_message(const message& msg, double fraction) {
    if (msg.symbols.empty()) throw empty_message();
    if (!(fraction > 0.0 && fraction < 1.0)) throw config_error("split fraction must lie in (0,1)");
    const std::size_t len = msg.symbols.size();
    auto n1 = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(len)));
    n1 = std::clamp<std::size_t>(n1, 1, len);
    split_parts p;
    p.part1.assign(msg.symbols.begin(), msg.symbols.begin() + static_cast<std::ptrdiff_t>(n1));
    p.part2.assign(msg.symbols.begin() + static_cast<std::ptrdiff_t>(n1), msg.symbols.end());
    return p;
}

std::vector<std::int64_t> gather(const split_parts& parts) {
    std::vector<std::int64_t> out = parts.part1;
    out.insert(out.end(), parts.part2.begin(), parts.part2.end());
    return out;
}

double phi1(double symbol, double d, double gamma) {
    if (d <= 0.0) throw non_positive_range();
    return symbol / (10.0 * d) + gamma;
}

double psi1(double estimate, double gamma_key, double d) {
    if (d <= 0.0) throw non_positive_range();
    return 10.0 * (estimate - gamma_key) * d;
}

double phi2(double x6, double symbol) { return x6 * x6 + (1.0 + x6 * x6) * symbol; }

double psi2(double y6, double masked) {
    return -y6 * y6 / (1.0 + y6 * y6) + masked / (1.0 + y6 * y6);
}

std::vector<std::int64_t> encode_text(const std::string& utf8) {
    std::vector<std::int64_t> cps;
    cps.reserve(utf8.size());
    const auto* b = reinterpret_cast<const unsigned char*>(utf8.data());
    const std::size_t n = utf8.size();
    std::size_t i = 0;
    auto bad = [](std::size_t at) { return io_error("invalid utf-8 at byte " + std::to_string(at)); };
    while (i < n) {
        const unsigned c = b[i];
        std::uint32_t cp = 0;
        int extra = 0;
        if (c < 0x80) {
            cp = c;
        } else if ((c & 0xe0) == 0xc0) {
            cp = c & 0x1f;
            extra = 1;
        } else if ((c & 0xf0) == 0xe0) {
            cp = c & 0x0f;
            extra = 2;
        } else if ((c & 0xf8) == 0xf0) {
            cp = c & 0x07;
            extra = 3;
        } else {
            throw bad(i);
        }
        if (i + static_cast<std::size_t>(extra) >= n) throw bad(i);
        for (int k = 1; k <= extra; ++k) {
            if ((b[i + static_cast<std::size_t>(k)] & 0xc0) != 0x80) throw bad(i + k);
            cp = (cp << 6) | (b[i + static_cast<std::size_t>(k)] & 0x3fu);
        }
        static constexpr std::uint32_t min_cp[4] = {0, 0x80, 0x800, 0x10000};
        if (cp < min_cp[extra] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) throw bad(i);
        cps.push_back(static_cast<std::int64_t>(cp));
        i += static_cast<std::size_t>(extra) + 1;
    }
    return cps;
}

std::string decode_text(const std::vector<std::int64_t>& symbols) {
    std::string out;
    out.reserve(symbols.size());
    for (const std::int64_t s : symbols) {
        if (s < 0 || s > 0x10ffff || (s >= 0xd800 && s <= 0xdfff))
            throw io_error("code point out of range: " + std::to_string(s));
        const auto cp = static_cast<std::uint32_t>(s);
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xc0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xe0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        } else {
            out += static_cast<char>(0xf0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            out += static_cast<char>(0x80 | (cp & 0x3f));
        }
    }
    return out;
}

transmission_record transmit(const message& msg, const rabinovich_params& params,
                             [[maybe_unused]] const gain_matrices& gains,
                             const comm_schedule& schedule, double noise_sigma,
                             std::uint64_t seed) {
    if (msg.symbols.empty()) throw empty_message();
    if (noise_sigma < 0.0) throw negative_sigma();
    if (schedule.dwell_seconds <= 0.0 || schedule.sample_period <= 0.0 ||
        schedule.start_time <= 0.0 || schedule.settle_seconds < 0.0)
        throw config_error("schedule times must be positive");
    if (schedule.mask_component < 1 || schedule.mask_component > 6)
        throw config_error("mask_component must lie in 1..6");
    if (msg.kind == payload_kind::image && msg.rows * msg.cols != msg.symbols.size())
        throw dimension_mismatch("image dimensions do not match symbol count");

    const split_parts parts = split_message(msg, schedule.split_fraction);
    const std::size_t n1 = parts.part1.size();
    const std::size_t n2 = parts.part2.size();

    const auto [lo, hi] = std::minmax_element(msg.symbols.begin(), msg.symbols.end());
    double d = static_cast<double>(*hi - *lo);
    bool d_clamped = false;
    if (d <= 0.0) {
        d = 1.0;
        d_clamped = true;
    }

    const double ds = schedule.sample_period;
    const double dwell = schedule.dwell_seconds;
    const double start = schedule.start_time;
    const double t2v = start + static_cast<double>(n1) * dwell + schedule.settle_seconds;
    const double total = t2v + static_cast<double>(n2 + 1) * ds;
    if (schedule.horizon > 0.0 && schedule.horizon < total)
        throw schedule_too_short("horizon " + std::to_string(schedule.horizon) +
                                 " s cannot fit the message; need " + std::to_string(total) + " s");

    const double base = mod_value(params, schedule.modulation);
    const int mask_idx = schedule.mask_component - 1;
    const auto nsamp = static_cast<std::size_t>(std::ceil(total / ds));
    const double h = ds / 2.0;

    transmission_record rec;
    rec.t1.reserve(nsamp + 1);
    rec.channel1.reserve(nsamp + 1);
    rvec6 x = realify(schedule.drive_init);
    rec.t1.push_back(0.0);
    rec.channel1.push_back(x);

    for (std::size_t i = 0; i < nsamp; ++i) {
        const double t = static_cast<double>(i) * ds;
        rabinovich_params p = params;
        if (t >= start) {
            const auto j = static_cast<std::size_t>((t - start) / dwell);
            if (j < n1)
                p = apply_override(
                    params, {schedule.modulation, phi1(static_cast<double>(parts.part1[j]), d, base)});
        }
        auto rhs = [&p](double, const rvec6& s, rvec6& dsdt) { dsdt = rabinovich_rhs_real(s, p); };
        for (int sub = 0; sub < 2; ++sub) {
            try {
                x = rk4_step(rhs, 0.0, x, h);
            } catch (const non_finite_state&) {
                throw non_finite_state(t + (sub + 1) * h);
            }
        }
        rec.t1.push_back(static_cast<double>(i + 1) * ds);
        rec.channel1.push_back(x);
    }

    const auto k0 = static_cast<std::size_t>(std::llround(t2v / ds));
    rec.t2.reserve(n2);
    rec.channel2.reserve(n2);
    for (std::size_t k = 0; k < n2; ++k) {
        const std::size_t idx = k0 + k;
        if (idx >= rec.channel1.size())
            throw schedule_too_short("channel-1 horizon too short for part-2 masking");
        rec.t2.push_back(static_cast<double>(idx) * ds);
        rec.channel2.push_back(phi2(rec.channel1[idx][mask_idx], static_cast<double>(parts.part2[k])));
    }

    if (noise_sigma > 0.0) {
        double sum2 = 0.0;
        for (const rvec6& s : rec.channel1)
            for (const double v : s) sum2 += v * v;
        const double rms1 = std::sqrt(sum2 / (6.0 * static_cast<double>(rec.channel1.size())));
        gaussian_stream g1(derive_seed(seed, 1));
        for (rvec6& s : rec.channel1)
            for (double& v : s) v += noise_sigma * rms1 * g1.next();
        if (!rec.channel2.empty()) {
            double sum2b = 0.0;
            for (const double v : rec.channel2) sum2b += v * v;
            const double rms2 = std::sqrt(sum2b / static_cast<double>(rec.channel2.size()));
            gaussian_stream g2(derive_seed(seed, 2));
            for (double& v : rec.channel2) v += noise_sigma * rms2 * g2.next();
        }
    }

    rec.header.kind = msg.kind;
    rec.header.d = d;
    rec.header.d_clamped = d_clamped;
    rec.header.split_index = n1;
    rec.header.total_length = msg.symbols.size();
    rec.header.rows = msg.rows;
    rec.header.cols = msg.cols;
    rec.header.dwell_seconds = dwell;
    rec.header.sample_period = ds;
    rec.header.start_time = start;
    rec.header.settle_seconds = schedule.settle_seconds;
    rec.header.modulation = schedule.modulation;
    rec.header.mask_component = schedule.mask_component;
    rec.header.noise_sigma = noise_sigma;
    rec.header.seed = seed;
    return rec;
}

message receive(const transmission_record& record, const rabinovich_params& params_key,
                const gain_matrices& gains, const cvec3& response_init,
                const parameter_estimates& estimate_init, double sync_threshold,
                receive_stats* stats) {
    const transmission_header& hd = record.header;
    if (!gains.positive()) throw config_error("gain matrices must have positive diagonals");
    if (hd.d <= 0.0) throw header_mismatch("header d must be positive");
    if (hd.split_index > hd.total_length) throw header_mismatch("split_index exceeds total_length");
    const std::size_t n1 = hd.split_index;
    const std::size_t n2 = record.channel2.size();
    if (n1 + n2 != hd.total_length)
        throw header_mismatch("channel-2 length disagrees with the header");
    if (hd.kind == payload_kind::image && hd.rows * hd.cols != hd.total_length)
        throw header_mismatch("image dimensions disagree with total_length");
    if (hd.mask_component < 1 || hd.mask_component > 6)
        throw header_mismatch("mask_component out of range");
    if (hd.sample_period <= 0.0 || hd.dwell_seconds <= 0.0 || hd.start_time <= 0.0 ||
        hd.settle_seconds < 0.0)
        throw header_mismatch("schedule fields must be positive");
    if (record.channel1.size() < 2) throw header_mismatch("channel 1 too short");

    const double ds = hd.sample_period;
    const double dwell = hd.dwell_seconds;
    const double start = hd.start_time;
    const double base = mod_value(params_key, hd.modulation);
    const int row = mod_index(hd.modulation);
    const int mask_idx = hd.mask_component - 1;
    const double t2v = start + static_cast<double>(n1) * dwell + hd.settle_seconds;
    const std::size_t nsamp = record.channel1.size() - 1;
    const auto k0 = static_cast<std::size_t>(std::llround(t2v / ds));
    if (k0 + n2 > nsamp) throw header_mismatch("record too short for its schedule");
    if (static_cast<double>(nsamp) * ds < start + static_cast<double>(n1) * dwell)
        throw header_mismatch("record too short for its schedule");

    // flat receiver state: response (6), a_hat (6), b_hat (6)
    std::array<double, 18> st{};
    {
        const rvec6 y = realify(response_init);
        const rvec6 a = realify(estimate_init.a_hat);
        const rvec6 b = realify(estimate_init.b_hat);
        for (int i = 0; i < 6; ++i) {
            st[i] = y[i];
            st[6 + i] = a[i];
            st[12 + i] = b[i];
        }
    }
    cvec3 xd{};
    auto rhs = [&](double, const std::array<double, 18>& v, std::array<double, 18>& dv) {
        response_state rs;
        rvec6 y, a, b;
        for (int i = 0; i < 6; ++i) {
            y[i] = v[i];
            a[i] = v[6 + i];
            b[i] = v[12 + i];
        }
        rs.response = complexify(y);
        rs.est.a_hat = complexify(a);
        rs.est.b_hat = complexify(b);
        const response_state dr = response_rhs(xd, rs, params_key, gains);
        const rvec6 dy = realify(dr.response);
        const rvec6 da = realify(dr.est.a_hat);
        const rvec6 db = realify(dr.est.b_hat);
        for (int i = 0; i < 6; ++i) {
            dv[i] = dy[i];
            dv[6 + i] = da[i];
            dv[12 + i] = db[i];
        }
    };

    std::vector<double> p_hat(nsamp + 1);
    p_hat[0] = st[6 + 2 * row];
    std::vector<double> s2_hat(n2, 0.0);
    double supkey = 0.0;
    const double h = ds / 2.0;

    for (std::size_t i = 0; i < nsamp; ++i) {
        const double t = static_cast<double>(i) * ds;
        xd = complexify(record.channel1[i]);
        // first half-step lands on the hold midpoint, where the response
        // tracks the sample itself rather than lagging it by ds/2
        try {
            st = rk4_step(rhs, 0.0, st, h);
        } catch (const non_finite_state&) {
            throw non_finite_state(t + h);
        }
        if (n2 > 0 && t >= t2v - 1e-12) {
            const auto k = std::llround((t - t2v) / ds);
            if (k >= 0 && k < static_cast<long long>(n2))
                s2_hat[static_cast<std::size_t>(k)] =
                    psi2(st[mask_idx], record.channel2[static_cast<std::size_t>(k)]);
        }
        if (t < start - 1e-12 && t > start - 1.0) {
            for (int c = 0; c < 3; ++c) {
                const cplx e(st[2 * c] - record.channel1[i][2 * c],
                             st[2 * c + 1] - record.channel1[i][2 * c + 1]);
                supkey = std::max(supkey, std::abs(e));
            }
        }
        try {
            st = rk4_step(rhs, 0.0, st, h);
        } catch (const non_finite_state&) {
            throw non_finite_state(t + 2.0 * h);
        }
        p_hat[i + 1] = st[6 + 2 * row];
    }

    if (stats) stats->key_sync_sup = supkey;
    if (supkey >= sync_threshold)
        throw sync_failure("drive/response error " + std::to_string(supkey) +
                           " above threshold at payload start");

    const std::int64_t sym_max = hd.kind == payload_kind::image ? 255 : 0x10ffff;
    std::vector<std::int64_t> part1(n1), part2(n2);
    double res1 = 0.0, res2 = 0.0;
    for (std::size_t j = 0; j < n1; ++j) {
        const double t_end = start + static_cast<double>(j + 1) * dwell;
        const double t_beg = t_end - 0.2 * dwell; // trailing fifth of the dwell window
        const auto i0 = static_cast<std::size_t>(std::ceil(t_beg / ds));
        const auto i1 = std::min(static_cast<std::size_t>(std::floor(t_end / ds)), nsamp);
        if (i0 > i1) throw header_mismatch("dwell window contains no samples");
        double acc = 0.0;
        for (std::size_t i = i0; i <= i1; ++i) acc += p_hat[i];
        const double est = acc / static_cast<double>(i1 - i0 + 1);
        const double val = psi1(est, base, hd.d);
        const auto sym = std::llround(val);
        res1 = std::max(res1, std::abs(val - static_cast<double>(sym)));
        part1[j] = std::clamp<std::int64_t>(sym, 0, sym_max);
    }
    for (std::size_t k = 0; k < n2; ++k) {
        const auto sym = std::llround(s2_hat[k]);
        res2 = std::max(res2, std::abs(s2_hat[k] - static_cast<double>(sym)));
        part2[k] = std::clamp<std::int64_t>(sym, 0, sym_max);
    }
    if (stats) {
        stats->max_part1_residual = res1;
        stats->max_part2_residual = res2;
    }

    message out;
    out.kind = hd.kind;
    out.rows = hd.rows;
    out.cols = hd.cols;
    out.symbols = gather({std::move(part1), std::move(part2)});
    return out;
}

} // namespace chaosync
