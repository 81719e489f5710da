#pragma once

#include <stdexcept>
#include <string>

namespace scatrec {

// Geometry constraints cannot be satisfied (phantom does not fit the box, ...).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// A discretization validity condition (k*h bound) was violated in strict mode.
class AccuracyError : public std::runtime_error {
public:
    explicit AccuracyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Linear solver did not reach the requested residual.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric is undefined for the given input (all-zero reference data, ...).
class MetricError : public std::runtime_error {
public:
    explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed config file or inconsistent experiment description.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class KhPolicy { warn, fail };

} // namespace scatrec
