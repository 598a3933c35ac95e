#pragma once

#include <stdexcept>
#include <string>

namespace spbzo {

// Bad argument values or shapes (dimension mismatch, sigma <= 0, ...).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The operation needs data the function does not carry (analytic gradient,
// 1-D pieces, level-set radius, ...).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of a special function.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Experiment configuration that cannot be resolved before running.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spbzo
