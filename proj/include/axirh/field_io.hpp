#pragma once

// Field exchange: CSV "x0,r,A,B" in row-major lattice order plus a JSON sidecar
// holding n, alpha and the lattice shape.

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "axirh/axial_core.hpp"
#include "axirh/errors.hpp"

namespace axirh {

/// Shortest round-trip decimal text of a double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p += ".meta.json";
    return p;
}

inline nlohmann::json field_metadata(const AxialField& f, double alpha) {
    const Lattice& L = f.lattice;
    double x_lo = 0.0, x_hi = 0.0, r_lo = 0.0, r_hi = 0.0;
    if (L.size() > 0) {
        x_lo = x_hi = L.x0[0];
        r_lo = r_hi = L.r[0];
        for (std::size_t k = 1; k < L.size(); ++k) {
            x_lo = std::min(x_lo, L.x0[k]);
            x_hi = std::max(x_hi, L.x0[k]);
            r_lo = std::min(r_lo, L.r[k]);
            r_hi = std::max(r_hi, L.r[k]);
        }
    }
    return {{"n", f.n},
            {"alpha", alpha},
            {"shape", {L.rows, L.cols}},
            {"periodic_rows", L.periodic_rows},
            {"extents", {{"x0", {x_lo, x_hi}}, {"r", {r_lo, r_hi}}}}};
}

inline void write_field_csv(const std::filesystem::path& path, const AxialField& f, double alpha) {
    f.validate();
    {
        std::ofstream out(path, std::ios::binary);
        require(static_cast<bool>(out), ErrorCode::io, "cannot open " + path.string() + " for writing");
        out << "x0,r,A,B\n";
        const Lattice& L = f.lattice;
        for (std::size_t k = 0; k < L.size(); ++k)
            out << format_double(L.x0[k]) << ',' << format_double(L.r[k]) << ',' << format_double(f.A[k]) << ','
                << format_double(f.B[k]) << '\n';
        require(static_cast<bool>(out), ErrorCode::io, "write failed: " + path.string());
    }
    std::ofstream meta(sidecar_path(path), std::ios::binary);
    require(static_cast<bool>(meta), ErrorCode::io, "cannot write sidecar for " + path.string());
    meta << field_metadata(f, alpha).dump(2) << '\n';
}

struct LoadedField {
    AxialField field;
    double alpha = 0.0;
};

namespace detail {

inline double parse_csv_number(const std::string& s, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    require(end != s.c_str() && *end == '\0' && errno != ERANGE, ErrorCode::io,
            "bad number '" + s + "' on CSV line " + std::to_string(line));
    return v;
}

}  // namespace detail

inline LoadedField read_field_csv(const std::filesystem::path& path) {
    std::ifstream meta_in(sidecar_path(path));
    require(static_cast<bool>(meta_in), ErrorCode::io, "missing sidecar " + sidecar_path(path).string());
    nlohmann::json meta;
    try {
        meta_in >> meta;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io, std::string("malformed sidecar: ") + e.what());
    }
    LoadedField out;
    try {
        out.field.n = meta.at("n").get<int>();
        out.alpha = meta.at("alpha").get<double>();
        out.field.lattice.rows = meta.at("shape").at(0).get<std::size_t>();
        out.field.lattice.cols = meta.at("shape").at(1).get<std::size_t>();
        out.field.lattice.periodic_rows = meta.at("periodic_rows").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io, std::string("incomplete sidecar: ") + e.what());
    }

    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::io, "cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    require(line == "x0,r,A,B", ErrorCode::io, "CSV header must be x0,r,A,B");
    Lattice& L = out.field.lattice;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        double v[4];
        int c = 0;
        while (std::getline(ss, cell, ',')) {
            require(c < 4, ErrorCode::io, "too many columns on CSV line " + std::to_string(lineno));
            v[c++] = detail::parse_csv_number(cell, lineno);
        }
        require(c == 4, ErrorCode::io, "expected 4 columns on CSV line " + std::to_string(lineno));
        L.x0.push_back(v[0]);
        L.r.push_back(v[1]);
        out.field.A.push_back(v[2]);
        out.field.B.push_back(v[3]);
    }
    require(L.x0.size() == L.rows * L.cols, ErrorCode::dimension, "CSV row count does not match the sidecar shape");
    return out;
}

}  // namespace axirh
