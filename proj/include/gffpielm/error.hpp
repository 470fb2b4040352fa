#pragma once

#include <stdexcept>
#include <string>

namespace gffpielm {

/// Base error for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a derivative order is beyond what an activation supports.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error with the pipeline stage that produced it ("sample", "assemble", ...).
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace gffpielm
