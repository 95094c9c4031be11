#include "doctest.h"

#include "chaosync/comm.hpp"
#include "chaosync/errors.hpp"
#include "chaosync/rng.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

using namespace chaosync;

namespace {

const gain_matrices comm_gains{{66.0, 55.0, 77.0}, {0.05, 0.05, 0.05}, {0.05, 0.05, 0.05}};
const cvec3 response_init = {cplx(3.0, 3.0), cplx(3.0, 3.0), cplx(3.0, 3.0)};

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

void replace_once(std::string& text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("phi1 hand values and inverse") {
    CHECK(phi1(0.0, 90.0, 0.11) == 0.11);
    CHECK(std::abs(phi1(104.0, 90.0, 0.11) - 0.2255555555555556) <= 1e-9);
    CHECK(std::abs(psi1(phi1(104.0, 90.0, 0.11), 0.11, 90.0) - 104.0) <= 1e-6);
    CHECK_THROWS_AS(phi1(1.0, 0.0, 0.11), non_positive_range);
    CHECK_THROWS_AS(psi1(0.2, 0.11, -3.0), non_positive_range);

    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> sym(0.0, 1e6), rng_d(0.1, 1e4), par(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double s = sym(eng), d = rng_d(eng), g = par(eng);
        CHECK(std::abs(psi1(phi1(s, d, g), g, d) - s) <= 1e-9 * std::max(1.0, s));
    }
}

TEST_CASE("phi2 hand values and inverse") {
    CHECK(phi2(0.0, 5.0) == 5.0);
    CHECK(phi2(2.0, 5.0) == 29.0);
    CHECK(psi2(2.0, 29.0) == 5.0);
    CHECK(psi2(0.0, 7.25) == 7.25);

    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> xs(-30.0, 30.0), sym(0.0, 255.0);
    for (int i = 0; i < 500; ++i) {
        double x = xs(eng), s = sym(eng);
        CHECK(std::abs(psi2(x, phi2(x, s)) - s) <= 1e-9);
    }
}

TEST_CASE("split_message takes the leading ceil(fraction * len) symbols") {
    message msg;
    msg.symbols = {97, 98, 99};
    split_parts p = split_message(msg, 0.5);
    CHECK(p.part1 == std::vector<std::int64_t>{97, 98});
    CHECK(p.part2 == std::vector<std::int64_t>{99});
    CHECK(gather(p) == msg.symbols);

    // a tiny fraction still sends at least one symbol over channel 1
    p = split_message(msg, 1e-9);
    CHECK(p.part1.size() == 1);
    CHECK(p.part2.size() == 2);

    message one;
    one.symbols = {65};
    p = split_message(one, 0.5);
    CHECK(p.part1.size() == 1);
    CHECK(p.part2.empty());

    message big;
    big.symbols.resize(65536, 7);
    CHECK(split_message(big, 0.5).part1.size() == 32768);

    message empty;
    CHECK_THROWS_AS(split_message(empty, 0.5), empty_message);
    CHECK_THROWS_AS(split_message(msg, 0.0), config_error);
    CHECK_THROWS_AS(split_message(msg, 1.0), config_error);
}

TEST_CASE("utf-8 codec round trip") {
    CHECK(encode_text("A") == std::vector<std::int64_t>{65});
    CHECK(decode_text({65}) == "A");
    // "hé中😀" spelled in raw utf-8 bytes
    std::string s = "h\xc3\xa9\xe4\xb8\xad\xf0\x9f\x98\x80";
    std::vector<std::int64_t> want = {104, 0xE9, 0x4E2D, 0x1F600};
    CHECK(encode_text(s) == want);
    CHECK(decode_text(want) == s);
    CHECK(encode_text("").empty());
    CHECK(decode_text({}).empty());
}

TEST_CASE("utf-8 codec rejects malformed input") {
    CHECK_THROWS_AS(encode_text("\xc3"), io_error);         // truncated sequence
    CHECK_THROWS_AS(encode_text("\x80"), io_error);         // stray continuation
    CHECK_THROWS_AS(encode_text("\xc0\xaf"), io_error);     // overlong
    CHECK_THROWS_AS(encode_text("\xed\xa0\x80"), io_error); // surrogate
    CHECK_THROWS_AS(encode_text("\xf4\x90\x80\x80"), io_error); // beyond U+10FFFF
    CHECK_THROWS_AS(decode_text({0x110000}), io_error);
    CHECK_THROWS_AS(decode_text({-1}), io_error);
    CHECK_THROWS_AS(decode_text({0xD800}), io_error);
}

TEST_CASE("awgn basics") {
    std::vector<double> data = {1.0, -2.0, 3.5};
    CHECK(awgn(data, 0.0, 42) == data);
    CHECK(awgn(data, 0.1, 42) == awgn(data, 0.1, 42));
    CHECK(awgn(data, 0.1, 42) != awgn(data, 0.1, 43));
    CHECK_THROWS_AS(awgn(data, -0.5, 42), negative_sigma);

    // sample mean and variance of the stream
    const std::size_t n = 1000000;
    gaussian_stream g(7);
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = g.next();
        sum += v;
        sq += v * v;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) <= 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(var - 1.0) <= 0.01);
}

TEST_CASE("record file round trip is bit exact") {
    transmission_record rec;
    rec.header.kind = payload_kind::image;
    rec.header.d = 0.1 + 0.2; // deliberately non-representable decimal
    rec.header.d_clamped = false;
    rec.header.split_index = 3;
    rec.header.total_length = 12;
    rec.header.rows = 3;
    rec.header.cols = 4;
    rec.header.dwell_seconds = 1.0 / 3.0;
    rec.header.sample_period = 2.5e-4;
    rec.header.start_time = 20.0;
    rec.header.settle_seconds = 2.5;
    rec.header.modulation = mod_param::alpha;
    rec.header.mask_component = 2;
    rec.header.noise_sigma = 1e-3;
    rec.header.seed = 0xDEADBEEFCAFEF00DULL;

    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    for (int i = 0; i < 5; ++i) {
        rec.t1.push_back(i * rec.header.sample_period);
        rvec6 s;
        for (double& v : s) v = dist(eng);
        rec.channel1.push_back(s);
    }
    for (int i = 0; i < 3; ++i) {
        rec.t2.push_back(21.0 + i * rec.header.sample_period);
        rec.channel2.push_back(dist(eng));
    }

    std::string path = temp_path("chaosync_record_roundtrip.txt");
    write_record(rec, path);
    transmission_record back = read_record(path);
    std::remove(path.c_str());

    CHECK(back.header.kind == rec.header.kind);
    CHECK(back.header.d == rec.header.d);
    CHECK(back.header.d_clamped == rec.header.d_clamped);
    CHECK(back.header.split_index == rec.header.split_index);
    CHECK(back.header.total_length == rec.header.total_length);
    CHECK(back.header.rows == rec.header.rows);
    CHECK(back.header.cols == rec.header.cols);
    CHECK(back.header.dwell_seconds == rec.header.dwell_seconds);
    CHECK(back.header.sample_period == rec.header.sample_period);
    CHECK(back.header.start_time == rec.header.start_time);
    CHECK(back.header.settle_seconds == rec.header.settle_seconds);
    CHECK(back.header.modulation == rec.header.modulation);
    CHECK(back.header.mask_component == rec.header.mask_component);
    CHECK(back.header.noise_sigma == rec.header.noise_sigma);
    CHECK(back.header.seed == rec.header.seed);
    CHECK(back.t1 == rec.t1);
    CHECK(back.channel1 == rec.channel1);
    CHECK(back.t2 == rec.t2);
    CHECK(back.channel2 == rec.channel2);
}

TEST_CASE("record reader rejects tampered files") {
    transmission_record rec;
    rec.header.total_length = 1;
    rec.header.split_index = 1;
    rec.t1 = {0.0, 2.5e-4};
    rec.channel1 = {rvec6{1, 2, 3, 4, 5, 6}, rvec6{1, 2, 3, 4, 5, 7}};
    std::string path = temp_path("chaosync_record_tamper.txt");
    write_record(rec, path);
    const std::string original = slurp(path);

    std::string t = original;
    replace_once(t, "kind text", "kind blob");
    spit(path, t);
    CHECK_THROWS_AS(read_record(path), config_error);

    t = original;
    replace_once(t, "seed 0", "sead 0");
    spit(path, t);
    CHECK_THROWS_AS(read_record(path), header_mismatch); // unknown + missing key

    t = original;
    replace_once(t, "start_time 20", "start_time twenty");
    spit(path, t);
    CHECK_THROWS_AS(read_record(path), io_error);

    t = original;
    replace_once(t, "1,2,3,4,5,7", "1,2,3,4,5");
    spit(path, t);
    CHECK_THROWS_AS(read_record(path), io_error);

    std::remove(path.c_str());
}

TEST_CASE("transmit validates message and schedule") {
    rabinovich_params p;
    comm_schedule sched;
    message empty;
    CHECK_THROWS_AS(transmit(empty, p, comm_gains, sched, 0.0, 1), empty_message);

    message msg;
    msg.symbols = {72, 105, 33};
    CHECK_THROWS_AS(transmit(msg, p, comm_gains, sched, -1.0, 1), negative_sigma);

    comm_schedule bad = sched;
    bad.mask_component = 0;
    CHECK_THROWS_AS(transmit(msg, p, comm_gains, bad, 0.0, 1), config_error);

    bad = sched;
    bad.horizon = 5.0; // start_time alone is already 20 s
    CHECK_THROWS_AS(transmit(msg, p, comm_gains, bad, 0.0, 1), schedule_too_short);

    message img;
    img.kind = payload_kind::image;
    img.symbols = {1, 2, 3};
    img.rows = 2;
    img.cols = 2;
    CHECK_THROWS_AS(transmit(img, p, comm_gains, sched, 0.0, 1), dimension_mismatch);
}

TEST_CASE("transmission is deterministic for a fixed seed") {
    rabinovich_params p;
    comm_schedule sched;
    sched.split_fraction = 0.34;
    message msg;
    msg.symbols = encode_text("Hi!");

    transmission_record a = transmit(msg, p, comm_gains, sched, 0.05, 9);
    transmission_record b = transmit(msg, p, comm_gains, sched, 0.05, 9);
    CHECK(a.channel1 == b.channel1);
    CHECK(a.channel2 == b.channel2);

    transmission_record c = transmit(msg, p, comm_gains, sched, 0.05, 10);
    CHECK(a.channel1 != c.channel1);
}

TEST_CASE("noiseless text loopback is exact") {
    rabinovich_params p;
    comm_schedule sched;
    sched.split_fraction = 0.34;
    message msg;
    msg.symbols = encode_text("Hi!");

    transmission_record rec = transmit(msg, p, comm_gains, sched, 0.0, 1);
    CHECK(rec.header.split_index == 2);
    CHECK(rec.header.total_length == 3);
    CHECK(rec.header.d == 72.0); // whole-message range, 105 - 33
    CHECK_FALSE(rec.header.d_clamped);
    CHECK(rec.t1.size() == rec.channel1.size());
    CHECK(rec.t2.size() == rec.channel2.size());
    CHECK(rec.t2.size() == 1);

    receive_stats stats;
    message out = receive(rec, p, comm_gains, response_init, {}, 1e-2, &stats);
    CHECK(out.kind == payload_kind::text);
    CHECK(out.symbols == msg.symbols);
    CHECK(decode_text(out.symbols) == "Hi!");
    CHECK(stats.key_sync_sup < 1e-2);
    CHECK(stats.max_part1_residual < 0.5);
    CHECK(stats.max_part2_residual < 0.5);
}

TEST_CASE("constant low payloads survive the d clamp") {
    // equal part-1 symbols make d = max - min = 0; the transmitter clamps d to 1.
    // small code points keep the parameter shift mild, so the loop stays exact.
    rabinovich_params p;
    comm_schedule sched;
    sched.split_fraction = 0.5;
    message msg;
    msg.symbols = {1, 1};

    transmission_record rec = transmit(msg, p, comm_gains, sched, 0.0, 1);
    CHECK(rec.header.d == 1.0);
    CHECK(rec.header.d_clamped);

    message out = receive(rec, p, comm_gains, response_init, {});
    CHECK(out.symbols == msg.symbols);
}

TEST_CASE("single-symbol message leaves channel 2 empty") {
    rabinovich_params p;
    comm_schedule sched;
    message msg;
    msg.symbols = {65};

    transmission_record rec = transmit(msg, p, comm_gains, sched, 0.0, 1);
    CHECK(rec.header.split_index == 1);
    CHECK(rec.header.total_length == 1);
    CHECK(rec.header.d_clamped);
    CHECK(rec.t2.empty());
    CHECK(rec.channel2.empty());
}

TEST_CASE("receive refuses an unsynchronized key threshold") {
    rabinovich_params p;
    comm_schedule sched;
    sched.split_fraction = 0.5;
    message msg;
    msg.symbols = {1, 1};
    transmission_record rec = transmit(msg, p, comm_gains, sched, 0.0, 1);
    CHECK_THROWS_AS(receive(rec, p, comm_gains, response_init, {}, 1e-9), sync_failure);
}

TEST_CASE("receive cross-checks the header against the payload") {
    rabinovich_params p;
    comm_schedule sched;
    sched.split_fraction = 0.34;
    message msg;
    msg.symbols = encode_text("Hi!");
    transmission_record rec = transmit(msg, p, comm_gains, sched, 0.0, 1);

    transmission_record bad = rec;
    bad.header.total_length = 99;
    CHECK_THROWS_AS(receive(bad, p, comm_gains, response_init, {}), header_mismatch);

    bad = rec;
    bad.header.d = -1.0;
    CHECK_THROWS_AS(receive(bad, p, comm_gains, response_init, {}), header_mismatch);

    bad = rec;
    bad.header.mask_component = 7;
    CHECK_THROWS_AS(receive(bad, p, comm_gains, response_init, {}), header_mismatch);

    bad = rec;
    bad.channel1.resize(10); // starve the schedule
    bad.t1.resize(10);
    CHECK_THROWS_AS(receive(bad, p, comm_gains, response_init, {}), header_mismatch);
}
