#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace levcorr {

// Base class for every error raised by the library. Each subclass maps to one
// failure mode of a pipeline stage so callers can catch precisely.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- ingest ----------------------------------------------------------------

class MalformedLine : public Error {
public:
    explicit MalformedLine(std::size_t line_no, const std::string& why = {});
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::size_t line_no_;
};

class NonPositivePrice : public Error {
public:
    explicit NonPositivePrice(std::size_t line_no);
    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::size_t line_no_;
};

class EmptyInput : public Error {
public:
    EmptyInput() : Error("no valid tick records in input") {}
};

// ---- sampling / returns / crosscorr / jackknife -----------------------------

class InsufficientData : public Error {
public:
    using Error::Error;
};

class DegenerateVariance : public Error {
public:
    using Error::Error;
};

class LagOutOfRange : public Error {
public:
    LagOutOfRange(long lag, std::size_t n);
    long lag() const noexcept { return lag_; }

private:
    long lag_;
};

class ConfigInvalid : public Error {
public:
    using Error::Error;
};

// ---- fitting ---------------------------------------------------------------

class InsufficientPoints : public Error {
public:
    InsufficientPoints(std::size_t have, std::size_t need);
};

class NonPositiveData : public Error {
public:
    explicit NonPositiveData(std::vector<double> excluded_x);
    const std::vector<double>& excluded_x() const noexcept { return excluded_x_; }

private:
    std::vector<double> excluded_x_;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& why, std::vector<double> last_params, double last_chi2);
    const std::vector<double>& last_params() const noexcept { return last_params_; }
    double last_chi2() const noexcept { return last_chi2_; }

private:
    std::vector<double> last_params_;
    double last_chi2_;
};

class RangeMismatch : public Error {
public:
    using Error::Error;
};

class SingularNormalMatrix : public Error {
public:
    SingularNormalMatrix() : Error("normal matrix is singular") {}
};

class WrongModel : public Error {
public:
    using Error::Error;
};

// ---- synth / report ----------------------------------------------------------

class NonStationarySpec : public Error {
public:
    using Error::Error;
};

class MissingSigmas : public Error {
public:
    MissingSigmas() : Error("profile has no jackknife sigmas") {}
};

}  // namespace levcorr
