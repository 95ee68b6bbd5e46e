// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace osc {

// Base of every library error.  exit_code() drives the CLI mapping:
// 2 = bad input / violated precondition, 3 = numerically inconclusive
// or degenerate.  Verification verdicts (exit 1) are values, not errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const { return 2; }
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroJet : public Error {
public:
    using Error::Error;
};

class OrderExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& msg)
        : Error(msg), offset_(offset), expected_(std::move(expected)) {}
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class CurveSpecError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class CriticalPoint : public Error {
public:
    using Error::Error;
};

class NonpositiveRadius : public Error {
public:
    using Error::Error;
};

class NotAnEllipse : public Error {
public:
    using Error::Error;
};

class SeedOffCurve : public Error {
public:
    using Error::Error;
};

class IOError : public Error {
public:
    using Error::Error;
};

// Degenerate / inconclusive family: exit code 3.

class SingularSystem : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class RankDeficient : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class ZeroCurvature : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class OpenComponent : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class PoleOverlap : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class InconclusiveError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class NoisyJet : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

}  // namespace osc
