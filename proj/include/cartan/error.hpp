#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cartan {

/// Byte range [begin, end) into a source string.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Root of every error the library throws. `kind()` is the stable name used
/// in JSON diagnostics and CLI messages.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept = 0;
};

#define CARTAN_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                            \
  public:                                                                \
    using Error::Error;                                                  \
    std::string_view kind() const noexcept override { return #Name; }    \
  }

CARTAN_DEFINE_ERROR(DegenerateEvaluation);
CARTAN_DEFINE_ERROR(NotRational);
CARTAN_DEFINE_ERROR(DegreeZero);
CARTAN_DEFINE_ERROR(DegreeTooLow);
CARTAN_DEFINE_ERROR(NoRepellingSeedFound);
CARTAN_DEFINE_ERROR(DepthExceeded);
CARTAN_DEFINE_ERROR(GenericBaseNotFound);
CARTAN_DEFINE_ERROR(InternalInvariantBroken);
CARTAN_DEFINE_ERROR(InvalidArgument);

#undef CARTAN_DEFINE_ERROR

class SizeCapExceeded : public Error {
public:
  SizeCapExceeded(std::size_t requested, std::size_t cap)
      : Error("size cap exceeded: requested " + std::to_string(requested) +
              ", cap " + std::to_string(cap)),
        requested_(requested), cap_(cap) {}
  std::string_view kind() const noexcept override { return "SizeCapExceeded"; }
  std::size_t requested() const noexcept { return requested_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t requested_;
  std::size_t cap_;
};

class NoConvergence : public Error {
public:
  explicit NoConvergence(int iterations)
      : Error("root finder did not converge after " +
              std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  std::string_view kind() const noexcept override { return "NoConvergence"; }
  int iterations() const noexcept { return iterations_; }

private:
  int iterations_;
};

class RiemannHurwitzMismatch : public Error {
public:
  RiemannHurwitzMismatch(int found, int expected)
      : Error("Riemann-Hurwitz mismatch: critical multiplicity " +
              std::to_string(found) + ", expected " + std::to_string(expected)),
        found_(found), expected_(expected) {}
  std::string_view kind() const noexcept override {
    return "RiemannHurwitzMismatch";
  }
  int found() const noexcept { return found_; }
  int expected() const noexcept { return expected_; }

private:
  int found_;
  int expected_;
};

/// Errors raised while reading map expressions carry the offending byte span.
class SourceError : public Error {
public:
  SourceError(const std::string& message, Span span)
      : Error(message), span_(span) {}
  Span span() const noexcept { return span_; }

private:
  Span span_;
};

class LexError : public SourceError {
public:
  using SourceError::SourceError;
  std::string_view kind() const noexcept override { return "LexError"; }
};

class ParseError : public SourceError {
public:
  ParseError(const std::string& message, Span span, std::string expected)
      : SourceError(message, span), expected_(std::move(expected)) {}
  std::string_view kind() const noexcept override { return "ParseError"; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::string expected_;
};

}  // namespace cartan
