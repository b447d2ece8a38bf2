#pragma once

#include <stdexcept>
#include <string>

namespace csl {

/// Error taxonomy shared by the whole library. The CLI maps kinds onto its
/// stable exit codes, so constructors must pick the kind carefully:
///   structural      - malformed values, ambient mismatches, shape errors
///   unsupported     - structure outside the decidable fragment (orthant rule)
///   threshold       - a construction was asked below its proven threshold
///   capacity        - configured enumeration / size limit exceeded
///   invalid_witness - a supplied witness set fails its defining inclusion
///   not_ready       - layer structure not stabilized at the requested h
///   parse           - bad input files or flags
enum class errc {
    structural,
    unsupported,
    threshold,
    capacity,
    invalid_witness,
    not_ready,
    parse,
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

[[noreturn]] inline void fail_structural(const std::string& msg) { fail(errc::structural, msg); }
[[noreturn]] inline void fail_unsupported(const std::string& msg) { fail(errc::unsupported, msg); }
[[noreturn]] inline void fail_threshold(const std::string& msg) { fail(errc::threshold, msg); }
[[noreturn]] inline void fail_capacity(const std::string& msg) { fail(errc::capacity, msg); }

} // namespace csl
