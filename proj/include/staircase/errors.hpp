#pragma once

#include <stdexcept>
#include <string>

namespace staircase {

/// Process exit codes shared by the CLI and the acceptance runner.
enum class ExitCode : int {
    ok = 0,
    usage = 2,
    resource = 3,
    theorem_violation = 4,
    oracle_inconclusive = 5,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual ExitCode code() const noexcept = 0;
};

/// Bad parameters, malformed input, or a precondition the caller could have checked.
class ValidationError : public Error {
public:
    using Error::Error;
    ExitCode code() const noexcept override { return ExitCode::usage; }
};

/// Index or offset outside the valid domain of an operation.
class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A preset or option exists in principle but is not supported for this request.
class UnsupportedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A configured size budget (materialization, window, big-integer bits) would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
    ExitCode code() const noexcept override { return ExitCode::resource; }
};

/// A structural claim about extremely elevated staircases failed on computed data.
class TheoremViolation : public Error {
public:
    using Error::Error;
    ExitCode code() const noexcept override { return ExitCode::theorem_violation; }
};

/// The increment ranges at some index do not partition [c_n, c_{n+1}).
class RangeGapError : public TheoremViolation {
public:
    using TheoremViolation::TheoremViolation;
};

/// Brute-force enumeration did not stabilize within the levels it may inspect.
class OracleInconclusive : public Error {
public:
    using Error::Error;
    ExitCode code() const noexcept override { return ExitCode::oracle_inconclusive; }
};

}  // namespace staircase
