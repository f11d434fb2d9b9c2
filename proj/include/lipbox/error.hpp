#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lipbox {

enum class ErrorCode {
    InvalidInput,
    DimensionMismatch,
    CapExceeded,
    Unbounded,
    Degenerate,
    NonConvergence,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorCode::InvalidInput, what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(ErrorCode::DimensionMismatch, what) {}
};

class CapExceeded : public Error {
public:
    CapExceeded(std::string cap, std::size_t limit, std::size_t requested)
        : Error(ErrorCode::CapExceeded,
                "cap exceeded: " + cap + " (limit " + std::to_string(limit) + ", requested " +
                    std::to_string(requested) + ")"),
          cap_(std::move(cap)),
          limit_(limit) {}
    const std::string& cap() const noexcept { return cap_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::string cap_;
    std::size_t limit_;
};

class UnboundedPolytope : public Error {
public:
    explicit UnboundedPolytope(const std::string& what) : Error(ErrorCode::Unbounded, what) {}
};

class DegeneratePolytope : public Error {
public:
    explicit DegeneratePolytope(const std::string& what) : Error(ErrorCode::Degenerate, what) {}
};

// Constraint generation hit the iteration cap; the message carries the
// bounds reached so far.
class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& what) : Error(ErrorCode::NonConvergence, what) {}
};

}  // namespace lipbox
