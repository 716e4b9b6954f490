#ifndef ORTHOG_ERRORS_HPP
#define ORTHOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orthog {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid parameter value (negative threshold, k out of range, bad scenario id, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Requested rank outside [1, min(n, p)].
class RankError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Malformed input data: non-finite entries, empty matrix, shape mismatch.
class InputError : public Error {
public:
    using Error::Error;
};

class ShapeError : public InputError {
public:
    using InputError::InputError;
};

/// Design matrix is rank deficient (collinear columns).
class SingularDesignError : public Error {
public:
    using Error::Error;
};

/// Group variable has no variation (single level / constant column).
class DegenerateGroupError : public Error {
public:
    using Error::Error;
};

/// Candidate direction vanishes after deflation and residualization.
class SpanCollapseError : public Error {
public:
    using Error::Error;
};

/// Zero vector where a direction is required.
class DegenerateDirectionError : public Error {
public:
    using Error::Error;
};

/// Binary response with a single class.
class DegenerateLabelError : public Error {
public:
    using Error::Error;
};

/// CSV / JSON parsing and file-system failures.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace orthog

#endif
