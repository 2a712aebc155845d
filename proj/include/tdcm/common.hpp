#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace tdcm {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad2deg(double rad) { return rad / (kPi / 180.0); }

// Invalid value for a domain quantity (bad segment, bad parameter set, ...).
class domain_error : public std::invalid_argument {
public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or inconsistent configuration input.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / stream failure.
class io_error : public std::runtime_error {
public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tdcm
