#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nsdgt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Signal length incompatible with (a, M, lambda). Carries the minimal length.
class InfeasibleLength : public Error {
 public:
  InfeasibleLength(std::int64_t L, std::int64_t L_min)
      : Error("illegal transform length " + std::to_string(L) +
              " (must be a multiple of L_min = " + std::to_string(L_min) + ")"),
        L_(L),
        L_min_(L_min) {}
  std::int64_t length() const { return L_; }
  std::int64_t min_length() const { return L_min_; }

 private:
  std::int64_t L_;
  std::int64_t L_min_;
};

class NotAFrame : public Error {
 public:
  explicit NotAFrame(const std::string& detail = "") : Error(detail.empty() ? "not a frame" : "not a frame: " + detail) {}
};

class NotUnimodular : public Error {
 public:
  NotUnimodular() : Error("not unimodular") {}
};

class SizeLimit : public Error {
 public:
  explicit SizeLimit(const std::string& what) : Error("oracle size limit: " + what) {}
};

}  // namespace nsdgt
