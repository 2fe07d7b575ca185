#pragma once

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlkg/field.hpp"
#include "nlkg/trajectory.hpp"

namespace nlkg {

/// Write content to path via a temporary file and rename, so readers never see
/// a partial file.
inline void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

namespace detail {

inline void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

inline std::vector<double> parse_csv_row(const std::string& line, const char* where) {
    std::vector<double> vals;
    size_t pos = 0;
    while (pos <= line.size()) {
        size_t next = line.find(',', pos);
        if (next == std::string::npos) next = line.size();
        const std::string tok = line.substr(pos, next - pos);
        try {
            vals.push_back(tok.empty() ? std::numeric_limits<double>::quiet_NaN()
                                       : std::stod(tok));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(where) + ": bad numeric field '" + tok + "'");
        }
        if (next == line.size()) break;
        pos = next + 1;
    }
    return vals;
}

} // namespace detail

inline constexpr const char* state_csv_header =
    "r,re_u1,im_u1,re_u2,im_u2,re_v1,im_v1,re_v2,im_v2";

inline std::string state_to_csv(const State& s) {
    std::string out = state_csv_header;
    out += '\n';
    const RadialGrid& g = *s.grid();
    for (int j = 0; j < g.npts; ++j) {
        detail::append_number(out, g.r[j]);
        for (const Field* f : {&s.u1, &s.u2, &s.v1, &s.v2}) {
            out += ',';
            detail::append_number(out, (*f)[j].real());
            out += ',';
            detail::append_number(out, (*f)[j].imag());
        }
        out += '\n';
    }
    return out;
}

inline void write_state_csv(const std::filesystem::path& path, const State& s) {
    atomic_write_text(path, state_to_csv(s));
}

/// Rebuild a state from CSV; the grid dimension is not stored in the file and
/// must be supplied.
inline State read_state_csv(const std::filesystem::path& path, int dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state CSV " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty state CSV " + path.string());
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto vals = detail::parse_csv_row(line, "state CSV");
        if (vals.size() != 9)
            throw std::runtime_error("state CSV: expected 9 columns, got " +
                                     std::to_string(vals.size()));
        rows.push_back(std::move(vals));
    }
    if (rows.size() < 16) throw std::runtime_error("state CSV: too few rows");
    const GridPtr grid = make_grid(dim, rows.back()[0], static_cast<int>(rows.size()));
    for (size_t j = 0; j < rows.size(); ++j)
        if (std::abs(rows[j][0] - grid->r[j]) > 1e-9 * grid->rmax)
            throw std::runtime_error("state CSV: nodes are not a uniform mesh from 0");
    State s(grid);
    for (size_t j = 0; j < rows.size(); ++j) {
        s.u1[j] = {rows[j][1], rows[j][2]};
        s.u2[j] = {rows[j][3], rows[j][4]};
        s.v1[j] = {rows[j][5], rows[j][6]};
        s.v2[j] = {rows[j][7], rows[j][8]};
    }
    return s;
}

inline constexpr const char* trajectory_csv_header =
    "t,E,Q,H,P_omega,S_omega,xnorm,I_rho";

inline std::string trajectory_to_csv(const std::vector<TrajectoryRecord>& records) {
    std::string out = trajectory_csv_header;
    out += '\n';
    for (const auto& r : records) {
        detail::append_number(out, r.t);
        for (double v : {r.E, r.Q, r.H, r.P_omega, r.S_omega, r.xnorm, r.I_rho}) {
            out += ',';
            detail::append_number(out, v);
        }
        out += '\n';
    }
    return out;
}

inline void write_trajectory_csv(const std::filesystem::path& path,
                                 const std::vector<TrajectoryRecord>& records) {
    atomic_write_text(path, trajectory_to_csv(records));
}

inline std::vector<TrajectoryRecord> read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory CSV " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty trajectory CSV " + path.string());
    std::vector<TrajectoryRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto vals = detail::parse_csv_row(line, "trajectory CSV");
        if (vals.size() != 8)
            throw std::runtime_error("trajectory CSV: expected 8 columns, got " +
                                     std::to_string(vals.size()));
        out.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7]});
    }
    return out;
}

} // namespace nlkg
