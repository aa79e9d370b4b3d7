#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace rotvel {

enum class ErrorCode {
  PointBehindCamera,
  DegenerateScale,
  TooFewSamples,
  DuplicateTimestamp,
  NumericalBreakdown,
  NoSignChange,
  NoCandidates,
  DegenerateNullspace,
  InsufficientConsensus,
  RejectionExhausted,
  ParseError,
  EmptyInput,
  MissingScale,
  CoverageGap,
};

const char* to_string(ErrorCode code);

struct Error {
  ErrorCode code;
  std::string message;
};

inline Error make_error(ErrorCode code, std::string message) {
  return Error{code, std::move(message)};
}

// Minimal expected-like carrier: either a value or an Error.
template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}        // NOLINT(google-explicit-constructor)
  Result(Error error) : state_(std::move(error)) {}    // NOLINT(google-explicit-constructor)

  bool has_value() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return has_value(); }

  const T& value() const& {
    assert(has_value());
    return std::get<T>(state_);
  }
  T& value() & {
    assert(has_value());
    return std::get<T>(state_);
  }
  T&& value() && {
    assert(has_value());
    return std::get<T>(std::move(state_));
  }

  const Error& error() const {
    assert(!has_value());
    return std::get<Error>(state_);
  }

 private:
  std::variant<T, Error> state_;
};

}  // namespace rotvel
