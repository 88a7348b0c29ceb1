#pragma once

// File formats.
//
// Grid files (.ncg): a text header followed by a binary payload.
//     ncgrid 1
//     axes <d>
//     axis <min> <max> <count>          (d lines, %.17g)
//     meta <key> <value>                (optional lines)
//     data
// then count_0 * ... * count_{d-1} complex samples as little-endian IEEE
// doubles (re, im), row-major with axis 0 slowest.
//
// Gaussian state files: plain text.
//     ncgaussian 1
//     modes <n>
//     mean <2n values>
//     shape <2n rows of 2n values>
//     meta <key> <value>                (optional)
//
// Teleportation run records serialise to CSV rows via run_record_row().

#include "ncphase/gaussian.hpp"
#include "ncphase/grid.hpp"
#include "ncphase/protocols.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ncphase {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

inline void save_grid(const GridFunction& g, const std::string& path,
                      const std::map<std::string, std::string>& meta = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "ncgrid 1\n";
    out << "axes " << g.dimension() << "\n";
    for (int a = 0; a < g.dimension(); ++a)
        out << "axis " << detail::format_double(g.axis(a).min) << " "
            << detail::format_double(g.axis(a).max) << " " << g.axis(a).count << "\n";
    for (const auto& [k, v] : meta) out << "meta " << k << " " << v << "\n";
    out << "data\n";
    out.write(reinterpret_cast<const char*>(g.samples().data()),
              static_cast<std::streamsize>(g.size() * sizeof(GridFunction::Complex)));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline GridFunction load_grid(const std::string& path,
                              std::map<std::string, std::string>* meta = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "ncgrid 1")
        throw std::runtime_error(path + ": not a grid file");
    if (!std::getline(in, line)) throw std::runtime_error(path + ": truncated header");
    int d = 0;
    {
        std::istringstream s(line);
        std::string tag;
        s >> tag >> d;
        if (tag != "axes" || d < 1) throw std::runtime_error(path + ": bad axes line");
    }
    std::vector<GridAxis> axes;
    while (std::getline(in, line)) {
        std::istringstream s(line);
        std::string tag;
        s >> tag;
        if (tag == "axis") {
            GridAxis ax{};
            s >> ax.min >> ax.max >> ax.count;
            axes.push_back(ax);
        } else if (tag == "meta") {
            std::string k, v;
            s >> k;
            std::getline(s, v);
            if (!v.empty() && v.front() == ' ') v.erase(0, 1);
            if (meta) (*meta)[k] = v;
        } else if (tag == "data") {
            break;
        } else {
            throw std::runtime_error(path + ": unexpected header line: " + line);
        }
    }
    if (static_cast<int>(axes.size()) != d) throw std::runtime_error(path + ": axis count mismatch");
    GridFunction g(axes);
    in.read(reinterpret_cast<char*>(g.samples().data()),
            static_cast<std::streamsize>(g.size() * sizeof(GridFunction::Complex)));
    if (!in) throw std::runtime_error(path + ": truncated payload");
    return g;
}

inline void save_gaussian(const GaussianWigner& g, const std::string& path,
                          const std::map<std::string, std::string>& meta = {}) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "ncgaussian 1\n";
    out << "modes " << g.modes() << "\n";
    out << "mean";
    for (int i = 0; i < g.dim(); ++i) out << " " << detail::format_double(g.mean()[i]);
    out << "\n";
    for (int i = 0; i < g.dim(); ++i) {
        out << "shape";
        for (int j = 0; j < g.dim(); ++j) out << " " << detail::format_double(g.shape()(i, j));
        out << "\n";
    }
    for (const auto& [k, v] : meta) out << "meta " << k << " " << v << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline GaussianWigner load_gaussian(const std::string& path,
                                    std::map<std::string, std::string>* meta = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "ncgaussian 1")
        throw std::runtime_error(path + ": not a gaussian state file");
    int modes = 0;
    Vector mean;
    Matrix shape;
    int shape_row = 0;
    while (std::getline(in, line)) {
        std::istringstream s(line);
        std::string tag;
        s >> tag;
        if (tag == "modes") {
            s >> modes;
            mean = Vector::Zero(2 * modes);
            shape = Matrix::Zero(2 * modes, 2 * modes);
        } else if (tag == "mean") {
            for (int i = 0; i < 2 * modes; ++i) s >> mean[i];
        } else if (tag == "shape") {
            for (int j = 0; j < 2 * modes; ++j) s >> shape(shape_row, j);
            ++shape_row;
        } else if (tag == "meta") {
            std::string k, v;
            s >> k;
            std::getline(s, v);
            if (!v.empty() && v.front() == ' ') v.erase(0, 1);
            if (meta) (*meta)[k] = v;
        }
    }
    if (modes < 1 || shape_row != 2 * modes) throw std::runtime_error(path + ": malformed state file");
    return GaussianWigner(modes, mean, shape);
}

// CSV row: protocol, r or "delta", outcomes joined by ';', fidelity, seed.
inline std::string run_record_row(const TeleportationRun& run) {
    std::ostringstream out;
    char buf[40];
    out << run.protocol << ",";
    if (run.delta_limit)
        out << "delta";
    else {
        std::snprintf(buf, sizeof buf, "%.12g", run.r);
        out << buf;
    }
    out << ",";
    for (int i = 0; i < run.outcomes.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g", run.outcomes[i]);
        out << (i ? ";" : "") << buf;
    }
    std::snprintf(buf, sizeof buf, "%.12g", run.fidelity);
    out << "," << buf << "," << run.seed;
    return out.str();
}

} // namespace ncphase
