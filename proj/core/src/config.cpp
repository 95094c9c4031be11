#include "chaosync/config.hpp"

#include "chaosync/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace chaosync {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct line_ctx {
    const std::string& path;
    std::size_t lineno;
    [[noreturn]] void fail(const std::string& msg) const {
        throw config_error(path + ":" + std::to_string(lineno) + ": " + msg);
    }
};

double to_double(const std::string& s, const line_ctx& ctx) {
    const char* p = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p || *end != '\0') ctx.fail("expected a number, got '" + s + "'");
    return v;
}

std::uint64_t to_u64(const std::string& s, const line_ctx& ctx) {
    const char* p = s.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(p, &end, 10);
    if (end == p || *end != '\0' || s[0] == '-')
        ctx.fail("expected a non-negative integer, got '" + s + "'");
    return v;
}

std::vector<double> to_doubles(const std::string& s, std::size_t count, const line_ctx& ctx) {
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(to_double(tok, ctx));
    if (count != 0 && out.size() != count)
        ctx.fail("expected " + std::to_string(count) + " numbers, got " +
                 std::to_string(out.size()));
    if (out.empty()) ctx.fail("expected at least one number");
    return out;
}

void set_triple(std::array<double, 3>& dst, const std::string& val, const line_ctx& ctx) {
    const auto v = to_doubles(val, 3, ctx);
    for (int i = 0; i < 3; ++i) {
        if (v[i] <= 0.0) ctx.fail("gains must be positive");
        dst[i] = v[i];
    }
}

void apply_kv(experiment_config& cfg, const std::string& key, const std::string& val,
              const line_ctx& ctx) {
    auto positive = [&](double v) {
        if (v <= 0.0) ctx.fail(key + " must be positive");
        return v;
    };
    auto non_negative = [&](double v) {
        if (v < 0.0) ctx.fail(key + " must be non-negative");
        return v;
    };

    if (key == "upsilon") cfg.params.upsilon = to_double(val, ctx);
    else if (key == "alpha") cfg.params.alpha = to_double(val, ctx);
    else if (key == "beta") cfg.params.beta = to_double(val, ctx);
    else if (key == "gamma") cfg.params.gamma = to_double(val, ctx);
    else if (key == "k1") set_triple(cfg.gains.k1, val, ctx);
    else if (key == "k2") set_triple(cfg.gains.k2, val, ctx);
    else if (key == "k3") set_triple(cfg.gains.k3, val, ctx);
    else if (key == "comm_k1") set_triple(cfg.comm_gains.k1, val, ctx);
    else if (key == "comm_k2") set_triple(cfg.comm_gains.k2, val, ctx);
    else if (key == "comm_k3") set_triple(cfg.comm_gains.k3, val, ctx);
    else if (key == "drive_init") {
        const auto v = to_doubles(val, 6, ctx);
        for (int i = 0; i < 6; ++i) cfg.drive_init[i] = v[i];
        cfg.schedule.drive_init = complexify(cfg.drive_init);
    } else if (key == "response_init") {
        const auto v = to_doubles(val, 6, ctx);
        for (int i = 0; i < 6; ++i) cfg.response_init[i] = v[i];
    } else if (key == "estimate_init") {
        const auto v = to_doubles(val, 12, ctx);
        for (int i = 0; i < 12; ++i) cfg.estimate_init[i] = v[i];
    } else if (key == "step") cfg.step = positive(to_double(val, ctx));
    else if (key == "horizon") cfg.horizon = non_negative(to_double(val, ctx));
    else if (key == "sample_every") {
        cfg.sample_every = to_u64(val, ctx);
        if (cfg.sample_every == 0) ctx.fail("sample_every must be at least 1");
    } else if (key == "reorth_interval") cfg.reorth_interval = positive(to_double(val, ctx));
    else if (key == "sync_step") cfg.sync_step = positive(to_double(val, ctx));
    else if (key == "sync_sample_every") {
        cfg.sync_sample_every = to_u64(val, ctx);
        if (cfg.sync_sample_every == 0) ctx.fail("sync_sample_every must be at least 1");
    } else if (key == "sync_threshold") {
        cfg.sync_threshold = positive(to_double(val, ctx));
        cfg.schedule.sync_threshold = cfg.sync_threshold;
    } else if (key == "dwell_seconds") cfg.schedule.dwell_seconds = positive(to_double(val, ctx));
    else if (key == "sample_period") cfg.schedule.sample_period = positive(to_double(val, ctx));
    else if (key == "start_time") cfg.schedule.start_time = positive(to_double(val, ctx));
    else if (key == "settle_seconds") cfg.schedule.settle_seconds = non_negative(to_double(val, ctx));
    else if (key == "split_fraction") {
        const double v = to_double(val, ctx);
        if (!(v > 0.0 && v < 1.0)) ctx.fail("split_fraction must lie in (0,1)");
        cfg.schedule.split_fraction = v;
    } else if (key == "comm_horizon") cfg.schedule.horizon = non_negative(to_double(val, ctx));
    else if (key == "mod_param") {
        try {
            cfg.schedule.modulation = mod_param_from_string(val);
        } catch (const config_error&) {
            ctx.fail("mod_param must be upsilon, alpha, or gamma");
        }
    } else if (key == "mask_component") {
        const auto v = to_u64(val, ctx);
        if (v < 1 || v > 6) ctx.fail("mask_component must lie in 1..6");
        cfg.schedule.mask_component = static_cast<int>(v);
    } else if (key == "noise_sigma") cfg.noise_sigma = non_negative(to_double(val, ctx));
    else if (key == "seed") cfg.seed = to_u64(val, ctx);
    else if (key == "image_noise") {
        cfg.image_noise = to_doubles(val, 0, ctx);
        for (const double v : cfg.image_noise)
            if (v < 0.0) ctx.fail("image_noise entries must be non-negative");
    } else if (key == "out_dir") {
        if (val.empty()) ctx.fail("out_dir must not be empty");
        cfg.out_dir = val;
    } else ctx.fail("unknown key '" + key + "'");
}

} // namespace

void apply_config_text(experiment_config& cfg, const std::string& text, const std::string& path) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const line_ctx ctx{path, lineno};
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) ctx.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) ctx.fail("missing key");
        if (val.empty()) ctx.fail("missing value for '" + key + "'");
        apply_kv(cfg, key, val, ctx);
    }
}

experiment_config load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error(path + ": cannot open config file");
    std::ostringstream buf;
    buf << f.rdbuf();
    experiment_config cfg;
    apply_config_text(cfg, buf.str(), path);
    return cfg;
}

} // namespace chaosync
