#include "chaosync/comm.hpp"
#include "chaosync/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace chaosync {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& what) {
    const char* p = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p || *end != '\0') throw io_error("malformed number in " + what + ": '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    const char* p = s.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(p, &end, 10);
    if (end == p || *end != '\0' || s[0] == '-')
        throw io_error("malformed integer in " + what + ": '" + s + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

void write_record(const transmission_record& rec, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw io_error("cannot open " + path + " for writing");
    const transmission_header& hd = rec.header;
    f << "kind " << to_string(hd.kind) << "\n";
    f << "d " << fmt(hd.d) << "\n";
    f << "split_index " << hd.split_index << "\n";
    f << "total_length " << hd.total_length << "\n";
    f << "dims " << hd.rows << " " << hd.cols << "\n";
    f << "dwell_seconds " << fmt(hd.dwell_seconds) << "\n";
    f << "sample_period " << fmt(hd.sample_period) << "\n";
    f << "start_time " << fmt(hd.start_time) << "\n";
    f << "noise_sigma " << fmt(hd.noise_sigma) << "\n";
    f << "seed " << hd.seed << "\n";
    f << "settle_seconds " << fmt(hd.settle_seconds) << "\n";
    f << "mod_param " << to_string(hd.modulation) << "\n";
    f << "mask_component " << hd.mask_component << "\n";
    f << "d_clamped " << (hd.d_clamped ? 1 : 0) << "\n";
    f << "\n";
    f << "t,x1,x2,x3,x4,x5,x6\n";
    for (std::size_t i = 0; i < rec.channel1.size(); ++i) {
        f << fmt(rec.t1[i]);
        for (const double v : rec.channel1[i]) f << "," << fmt(v);
        f << "\n";
    }
    f << "\n";
    f << "t,s2e\n";
    for (std::size_t k = 0; k < rec.channel2.size(); ++k)
        f << fmt(rec.t2[k]) << "," << fmt(rec.channel2[k]) << "\n";
    if (!f) throw io_error("write failed: " + path);
}

transmission_record read_record(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open " + path);

    transmission_record rec;
    transmission_header& hd = rec.header;
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        const auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw io_error(path + ":" + std::to_string(lineno) + ": expected 'key value'");
        const std::string key = line.substr(0, sp);
        const std::string val = line.substr(sp + 1);
        if (!kv.emplace(key, val).second)
            throw header_mismatch("duplicate header key: " + key);
    }

    auto need = [&](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw header_mismatch(std::string("missing header key: ") + key);
        return it->second;
    };

    hd.kind = payload_kind_from_string(need("kind"));
    hd.d = parse_double(need("d"), "d");
    hd.split_index = parse_u64(need("split_index"), "split_index");
    hd.total_length = parse_u64(need("total_length"), "total_length");
    {
        std::istringstream dims(need("dims"));
        std::uint64_t r = 0, c = 0;
        if (!(dims >> r >> c)) throw header_mismatch("malformed dims");
        std::string rest;
        if (dims >> rest) throw header_mismatch("malformed dims");
        hd.rows = r;
        hd.cols = c;
    }
    hd.dwell_seconds = parse_double(need("dwell_seconds"), "dwell_seconds");
    hd.sample_period = parse_double(need("sample_period"), "sample_period");
    hd.start_time = parse_double(need("start_time"), "start_time");
    hd.noise_sigma = parse_double(need("noise_sigma"), "noise_sigma");
    hd.seed = parse_u64(need("seed"), "seed");
    hd.settle_seconds = parse_double(need("settle_seconds"), "settle_seconds");
    hd.modulation = mod_param_from_string(need("mod_param"));
    hd.mask_component = static_cast<int>(parse_u64(need("mask_component"), "mask_component"));
    hd.d_clamped = parse_u64(need("d_clamped"), "d_clamped") != 0;

    const std::array<const char*, 14> known = {"kind",          "d",           "split_index",
                                               "total_length",  "dims",        "dwell_seconds",
                                               "sample_period", "start_time",  "noise_sigma",
                                               "seed",          "settle_seconds", "mod_param",
                                               "mask_component", "d_clamped"};
    for (const auto& [key, val] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw header_mismatch("unknown header key: " + key);
    }

    if (!std::getline(f, line)) throw io_error(path + ": missing channel-1 block");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,x1,x2,x3,x4,x5,x6") throw io_error(path + ": bad channel-1 column header");
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        const auto cells = split_csv(line);
        if (cells.size() != 7) throw io_error(path + ": channel-1 row needs 7 fields");
        rec.t1.push_back(parse_double(cells[0], "channel-1 time"));
        rvec6 s;
        for (int i = 0; i < 6; ++i) s[i] = parse_double(cells[i + 1], "channel-1 state");
        rec.channel1.push_back(s);
    }

    if (!std::getline(f, line)) throw io_error(path + ": missing channel-2 block");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,s2e") throw io_error(path + ": bad channel-2 column header");
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        const auto cells = split_csv(line);
        if (cells.size() != 2) throw io_error(path + ": channel-2 row needs 2 fields");
        rec.t2.push_back(parse_double(cells[0], "channel-2 time"));
        rec.channel2.push_back(parse_double(cells[1], "channel-2 value"));
    }

    return rec;
}

} // namespace chaosync
