#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nlpi {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

// malformed or inconsistent problem file
class ParseError : public Error {
public:
    using Error::Error;
};

// reduce() rejects rho = 0; callers should fall back to char_residual.
class UnsupportedReductionError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

class ContourError : public Error {
public:
    using Error::Error;
};

class PrecisionError : public Error {
public:
    using Error::Error;
};

class IsolationError : public Error {
public:
    using Error::Error;
};

class RefinementError : public Error {
public:
    RefinementError(const std::string& msg, std::complex<double> best, double best_residual)
        : Error(msg), best_iterate(best), residual(best_residual) {}
    std::complex<double> best_iterate;
    double residual;
};

class ThresholdNotFoundError : public Error {
public:
    using Error::Error;
};

class AssemblyError : public Error {
public:
    using Error::Error;
};

class StateError : public Error {
public:
    using Error::Error;
};

class NotAnEigenvalueError : public Error {
public:
    using Error::Error;
};

class NearSingularError : public Error {
public:
    NearSingularError(const std::string& msg, double dist)
        : Error(msg), distance_estimate(dist) {}
    double distance_estimate;
};

class DegenerateNormalizationError : public Error {
public:
    using Error::Error;
};

class CoverageError : public Error {
public:
    using Error::Error;
};

class HypothesisViolationError : public Error {
public:
    using Error::Error;
};

// real_eigen_census found two or more real eigenvalues; indicates a numerics bug.
class CensusAlarmError : public Error {
public:
    using Error::Error;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class NumericsAlarmError : public Error {
public:
    using Error::Error;
};

} // namespace nlpi
