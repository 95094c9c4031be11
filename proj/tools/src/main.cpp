#include "chaosync/comm.hpp"
#include "chaosync/config.hpp"
#include "chaosync/errors.hpp"
#include "chaosync/image.hpp"
#include "chaosync/lyapunov.hpp"
#include "chaosync/metrics.hpp"
#include "chaosync/rk4.hpp"
#include "chaosync/rng.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace chaosync;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw io_error("cannot open " + p.string() + " for writing");
    return f;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

struct cli_flags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> noise;
    std::optional<double> horizon;
    std::optional<double> step;
};

void add_common(CLI::App* cmd, cli_flags& f) {
    cmd->add_option("--config", f.config_path, "config file with `key = value` lines");
    cmd->add_option("--out", f.out_dir, "output directory (default from config: .)");
    cmd->add_option("--seed", f.seed, "64-bit seed for all noise streams (default 1)");
    cmd->add_option("--noise", f.noise, "channel noise sigma, fraction of channel RMS (default 0)");
    cmd->add_option("--horizon", f.horizon, "time horizon in seconds (default 100)");
    cmd->add_option("--step", f.step, "integrator step in seconds (default 1e-3; sync 1e-4)");
}

experiment_config make_config(const cli_flags& f) {
    experiment_config cfg =
        f.config_path.empty() ? experiment_config{} : load_config(f.config_path);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (f.seed) cfg.seed = *f.seed;
    if (f.noise) {
        if (*f.noise < 0.0) throw negative_sigma();
        cfg.noise_sigma = *f.noise;
    }
    if (f.horizon) {
        if (*f.horizon < 0.0) throw config_error("--horizon must be non-negative");
        cfg.horizon = *f.horizon;
        cfg.schedule.horizon = *f.horizon;
    }
    if (f.step) {
        if (*f.step <= 0.0) throw config_error("--step must be positive");
        cfg.step = *f.step;
        cfg.sync_step = *f.step;
    }
    fs::create_directories(cfg.out_dir);
    return cfg;
}

void cmd_simulate(const experiment_config& cfg) {
    const fs::path out = fs::path(cfg.out_dir) / "trajectory.csv";
    auto f = open_out(out);
    f << "t,x1,x2,x3,x4,x5,x6\n";
    if (cfg.horizon > 0.0) {
        auto rhs = [&cfg](double, const std::vector<double>& s, std::vector<double>& ds) {
            rvec6 x;
            std::copy_n(s.begin(), 6, x.begin());
            const rvec6 dx = rabinovich_rhs_real(x, cfg.params);
            std::copy(dx.begin(), dx.end(), ds.begin());
        };
        const integration_config ic{cfg.step, 0.0, cfg.horizon, cfg.sample_every};
        const trajectory tr = integrate(
            rhs, ic, std::vector<double>(cfg.drive_init.begin(), cfg.drive_init.end()));
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            f << fmt(tr.times[i]);
            for (const double v : tr.states[i]) f << "," << fmt(v);
            f << "\n";
        }
    }
    std::cout << "wrote " << out.string() << "\n";
}

void cmd_eigen(const experiment_config& cfg) {
    const auto eig = equilibrium_eigenvalues(cfg.params);
    const stability cls = classify_stability(cfg.params);
    std::ostringstream rep;
    rep << "upsilon " << fmt(cfg.params.upsilon) << "\n"
        << "alpha " << fmt(cfg.params.alpha) << "\n"
        << "beta " << fmt(cfg.params.beta) << "\n"
        << "gamma " << fmt(cfg.params.gamma) << "\n"
        << "eigenvalues";
    for (const double v : eig) rep << " " << fmt(v);
    rep << "\nclassification " << to_string(cls) << "\n";
    const fs::path out = fs::path(cfg.out_dir) / "eigen.txt";
    open_out(out) << rep.str();
    std::cout << rep.str() << "wrote " << out.string() << "\n";
}

void cmd_lyapunov(const experiment_config& cfg) {
    const lyapunov_options opt{cfg.horizon, cfg.reorth_interval, cfg.step};
    const lyapunov_report rep = lyapunov_spectrum(cfg.params, cfg.drive_init, opt);
    const fs::path out = fs::path(cfg.out_dir) / "lyapunov.csv";
    auto f = open_out(out);
    f << "key,value\n";
    for (int i = 0; i < 6; ++i) f << "le" << (i + 1) << "," << fmt(rep.exponents[i]) << "\n";
    f << "dimension," << fmt(rep.dimension) << "\n";
    f << "horizon," << fmt(rep.horizon) << "\n";
    std::cout << "exponents:";
    for (const double v : rep.exponents) std::cout << " " << fmt(v);
    std::cout << "\ndimension: " << fmt(rep.dimension) << "\nwrote " << out.string() << "\n";
}

void cmd_sync(const experiment_config& cfg) {
    const sync_run_options opt{cfg.sync_step, cfg.sync_sample_every, 1.0};
    const sync_run_report rep =
        run_sync_experiment(cfg.params, cfg.gains, cfg.drive_init_c(), cfg.response_init_c(),
                            cfg.estimates(), cfg.horizon, cfg.sync_threshold, opt);
    const fs::path out = fs::path(cfg.out_dir) / "sync.csv";
    auto f = open_out(out);
    f << "t,e1,e2,e3,e4,e5,e6,eA1,eA2,eA3,eA4,eA5,eA6,eB1,eB2,eB3,eB4,eB5,eB6,V\n";
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        f << fmt(rep.times[i]);
        for (const double v : rep.e[i]) f << "," << fmt(v);
        for (const double v : rep.e_a[i]) f << "," << fmt(v);
        for (const double v : rep.e_b[i]) f << "," << fmt(v);
        f << "," << fmt(rep.v[i]) << "\n";
    }
    if (rep.sync_time)
        std::cout << "sync_time: " << fmt(*rep.sync_time) << " s\n";
    else
        std::cout << "sync_time: not reached within the horizon\n";
    std::cout << "max per-step V increase: " << fmt(rep.max_v_step_increase) << "\n";
    const auto& est = rep.final_estimates;
    std::cout << "final a_hat:";
    for (const cplx& c : est.a_hat) std::cout << " " << fmt(c.real()) << (c.imag() < 0 ? "" : "+") << fmt(c.imag()) << "i";
    std::cout << "\nfinal b_hat:";
    for (const cplx& c : est.b_hat) std::cout << " " << fmt(c.real()) << (c.imag() < 0 ? "" : "+") << fmt(c.imag()) << "i";
    std::cout << "\nwrote " << out.string() << "\n";
}

void report_roundtrip(const message& sent, const message& got, const receive_stats& rs,
                      const fs::path& diff_path) {
    std::size_t mism = 0;
    std::ptrdiff_t first = -1;
    for (std::size_t i = 0; i < sent.symbols.size(); ++i) {
        if (sent.symbols[i] != got.symbols[i]) {
            ++mism;
            if (first < 0) first = static_cast<std::ptrdiff_t>(i);
        }
    }
    auto f = open_out(diff_path);
    f << "symbols " << sent.symbols.size() << "\n"
      << "mismatches " << mism << "\n"
      << "first_mismatch " << first << "\n"
      << "key_sync_sup " << fmt(rs.key_sync_sup) << "\n"
      << "max_part1_residual " << fmt(rs.max_part1_residual) << "\n"
      << "max_part2_residual " << fmt(rs.max_part2_residual) << "\n";
    std::cout << (mism == 0 ? "round-trip: exact" : "round-trip: " + std::to_string(mism) + " mismatched symbols")
              << " (part1 residual " << fmt(rs.max_part1_residual) << ", part2 residual "
              << fmt(rs.max_part2_residual) << ")\nwrote " << diff_path.string() << "\n";
}

void cmd_send_text(const experiment_config& cfg, const std::string& input) {
    const std::string text = read_file(input);
    if (text.empty()) throw empty_message();
    message msg;
    msg.kind = payload_kind::text;
    msg.symbols = encode_text(text);

    const transmission_record rec =
        transmit(msg, cfg.params, cfg.comm_gains, cfg.schedule, cfg.noise_sigma, cfg.seed);
    const fs::path rec_path = fs::path(cfg.out_dir) / "record.txt";
    write_record(rec, rec_path.string());

    receive_stats rs;
    const message got = receive(rec, cfg.params, cfg.comm_gains, cfg.response_init_c(),
                                cfg.estimates(), cfg.schedule.sync_threshold, &rs);
    const fs::path dec_path = fs::path(cfg.out_dir) / "decrypted.txt";
    open_out(dec_path) << decode_text(got.symbols);
    std::cout << "wrote " << rec_path.string() << "\nwrote " << dec_path.string() << "\n";
    report_roundtrip(msg, got, rs, fs::path(cfg.out_dir) / "diff.txt");
}

void cmd_send_image(const experiment_config& cfg, const std::string& input, double image_noise) {
    const image_matrix original = read_pgm(input);
    image_matrix sent_img = original;
    if (image_noise > 0.0) {
        sent_img = add_image_noise(original, image_noise, derive_seed(cfg.seed, 3));
        write_pgm(sent_img, (fs::path(cfg.out_dir) / "noisy_input.pgm").string());
    }
    message msg;
    msg.kind = payload_kind::image;
    msg.symbols = image_to_symbols(sent_img);
    msg.rows = sent_img.rows;
    msg.cols = sent_img.cols;

    const transmission_record rec =
        transmit(msg, cfg.params, cfg.comm_gains, cfg.schedule, cfg.noise_sigma, cfg.seed);
    const fs::path rec_path = fs::path(cfg.out_dir) / "record.txt";
    write_record(rec, rec_path.string());

    receive_stats rs;
    const message got = receive(rec, cfg.params, cfg.comm_gains, cfg.response_init_c(),
                                cfg.estimates(), cfg.schedule.sync_threshold, &rs);
    const image_matrix decoded = symbols_to_image(got.symbols, got.rows, got.cols);
    const fs::path dec_path = fs::path(cfg.out_dir) / "decrypted.pgm";
    write_pgm(decoded, dec_path.string());

    const fs::path met_path = fs::path(cfg.out_dir) / "metrics.csv";
    auto f = open_out(met_path);
    f << "image-id,mse,psnr_db,ssim\n";
    f << "retrieved_vs_sent," << fmt(mse(decoded, sent_img)) << "," << fmt(psnr(decoded, sent_img))
      << "," << fmt(ssim(decoded, sent_img)) << "\n";
    if (image_noise > 0.0)
        f << "retrieved_vs_clean," << fmt(mse(decoded, original)) << ","
          << fmt(psnr(decoded, original)) << "," << fmt(ssim(decoded, original)) << "\n";
    std::cout << "wrote " << rec_path.string() << "\nwrote " << dec_path.string() << "\nwrote "
              << met_path.string() << "\n";
    report_roundtrip(msg, got, rs, fs::path(cfg.out_dir) / "diff.txt");
}

void write_histogram(const image_matrix& img, const fs::path& path) {
    const auto h = histogram(img);
    auto f = open_out(path);
    f << "value,count\n";
    for (int v = 0; v < 256; ++v) f << v << "," << h[static_cast<std::size_t>(v)] << "\n";
}

void cmd_metrics(const experiment_config& cfg, const std::string& a_path,
                 const std::string& b_path) {
    const image_matrix a = read_pgm(a_path);
    const image_matrix b = read_pgm(b_path);
    const std::string row = fs::path(a_path).stem().string() + "_vs_" +
                            fs::path(b_path).stem().string() + "," + fmt(mse(a, b)) + "," +
                            fmt(psnr(a, b)) + "," + fmt(ssim(a, b));
    const fs::path met_path = fs::path(cfg.out_dir) / "metrics.csv";
    auto f = open_out(met_path);
    f << "image-id,mse,psnr_db,ssim\n" << row << "\n";
    write_histogram(a, fs::path(cfg.out_dir) / "hist_a.csv");
    write_histogram(b, fs::path(cfg.out_dir) / "hist_b.csv");
    std::cout << "image-id,mse,psnr_db,ssim\n" << row << "\n";
    std::cout << "wrote " << met_path.string() << "\n";
}

std::string category(const error& e) {
    if (dynamic_cast<const non_finite_state*>(&e)) return "non_finite_state";
    if (dynamic_cast<const empty_message*>(&e)) return "empty_message";
    if (dynamic_cast<const non_positive_range*>(&e)) return "non_positive_range";
    if (dynamic_cast<const schedule_too_short*>(&e)) return "schedule_too_short";
    if (dynamic_cast<const header_mismatch*>(&e)) return "header_mismatch";
    if (dynamic_cast<const sync_failure*>(&e)) return "sync_failure";
    if (dynamic_cast<const negative_sigma*>(&e)) return "negative_sigma";
    if (dynamic_cast<const pixel_out_of_range*>(&e)) return "pixel_out_of_range";
    if (dynamic_cast<const dimension_mismatch*>(&e)) return "dimension_mismatch";
    if (dynamic_cast<const config_error*>(&e)) return "config_error";
    if (dynamic_cast<const io_error*>(&e)) return "io_error";
    return "error";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperchaotic synchronization and two-channel secure communication experiments"};
    app.require_subcommand(1);
    app.footer("Config keys (defaults): upsilon (-0.03), alpha (0.5), beta (0.001), gamma (0.11),\n"
               "k1 (66 55 77), k2 (13 12 15), k3 (15 15 59), comm_k1 (66 55 77),\n"
               "comm_k2 (0.05 0.05 0.05), comm_k3 (0.05 0.05 0.05), drive_init (1 1 1 1 1 1),\n"
               "response_init (3 3 3 3 3 3), estimate_init (12 zeros), step (0.001), horizon (100),\n"
               "sample_every (1), reorth_interval (0.1), sync_step (0.0001), sync_sample_every (100),\n"
               "sync_threshold (0.01), dwell_seconds (5), sample_period (0.00025), start_time (20),\n"
               "settle_seconds (2.5), split_fraction (0.01), comm_horizon (0 = auto),\n"
               "mod_param (upsilon), mask_component (6), noise_sigma (0), seed (1),\n"
               "image_noise (0.03 0.07 0.1), out_dir (.)");

    cli_flags flags;
    std::string input_a, input_b;
    double image_noise = 0.0;

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the drive system, write t,x1..x6 CSV");
    add_common(simulate, flags);
    CLI::App* eigen = app.add_subcommand("eigen", "equilibrium eigenvalues and stability classification");
    add_common(eigen, flags);
    CLI::App* lyap = app.add_subcommand("lyapunov", "finite-time Lyapunov spectrum and dimension");
    add_common(lyap, flags);
    CLI::App* sync = app.add_subcommand("sync", "adaptive synchronization run, write error/V CSV");
    add_common(sync, flags);
    CLI::App* send_text = app.add_subcommand("send-text", "transmit a UTF-8 text file and decrypt it back");
    send_text->add_option("input", input_a, "input text file")->required();
    add_common(send_text, flags);
    CLI::App* send_image = app.add_subcommand("send-image", "transmit a PGM image and decrypt it back");
    send_image->add_option("input", input_a, "input image (binary PGM, maxval 255)")->required();
    send_image->add_option("--image-noise", image_noise,
                           "gaussian variance on [0,1] intensities applied before transmission");
    add_common(send_image, flags);
    CLI::App* metrics_cmd = app.add_subcommand("metrics", "mse/psnr/ssim and histograms for two images");
    metrics_cmd->add_option("a", input_a, "first image (PGM)")->required();
    metrics_cmd->add_option("b", input_b, "second image (PGM)")->required();
    add_common(metrics_cmd, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        const experiment_config cfg = make_config(flags);
        if (simulate->parsed()) cmd_simulate(cfg);
        else if (eigen->parsed()) cmd_eigen(cfg);
        else if (lyap->parsed()) cmd_lyapunov(cfg);
        else if (sync->parsed()) cmd_sync(cfg);
        else if (send_text->parsed()) cmd_send_text(cfg, input_a);
        else if (send_image->parsed()) cmd_send_image(cfg, input_a, image_noise);
        else if (metrics_cmd->parsed()) cmd_metrics(cfg, input_a, input_b);
    } catch (const error& e) {
        std::cerr << "error: " << category(e) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
