#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace axirh {

/// Machine-readable failure categories. The CLI serializes these into reports.
enum class ErrorCode {
    dimension,
    domain,
    singularity,
    extrapolation,
    invalid_map,
    inversion,
    unsupported_domain,
    convergence,
    degenerate_coefficient,
    undersampled,
    aliasing,
    transplantation,
    unsupported,
    solver,
    congruence,
    config,
    io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::dimension: return "dimension";
        case ErrorCode::domain: return "domain";
        case ErrorCode::singularity: return "singularity";
        case ErrorCode::extrapolation: return "extrapolation";
        case ErrorCode::invalid_map: return "invalid_map";
        case ErrorCode::inversion: return "inversion";
        case ErrorCode::unsupported_domain: return "unsupported_domain";
        case ErrorCode::convergence: return "convergence";
        case ErrorCode::degenerate_coefficient: return "degenerate_coefficient";
        case ErrorCode::undersampled: return "undersampled";
        case ErrorCode::aliasing: return "aliasing";
        case ErrorCode::transplantation: return "transplantation";
        case ErrorCode::unsupported: return "unsupported";
        case ErrorCode::solver: return "solver";
        case ErrorCode::congruence: return "congruence";
        case ErrorCode::config: return "config";
        case ErrorCode::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Compact scientific rendering for error messages.
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace axirh
