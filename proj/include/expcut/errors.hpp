#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expcut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replacement term would be captured by a binder; the caller must rename first.
class CaptureError : public Error {
 public:
  using Error::Error;
};

// Expansion tree or cut whose shallow formulas do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Substitution maps an eigenvariable to a non-variable term.
class NotPermitted : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Internal invariant breach: no minimal node although the relation is acyclic.
class Stuck : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NoMaximalClass : public Error {
 public:
  using Error::Error;
};

class MaxStepsExceeded : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class VerificationFailed : public Error {
 public:
  using Error::Error;
};

struct SourceSpan {
  std::size_t byteStart = 0;
  std::size_t byteEnd = 0;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string expected, std::string found)
      : Error("parse error at offset " + std::to_string(span.byteStart) +
              ": expected " + expected + ", found " + found),
        span_(span),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

}  // namespace expcut
