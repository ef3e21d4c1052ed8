#pragma once

#include <stdexcept>
#include <string>

namespace mpalkit {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroDenominator : Error {
  explicit ZeroDenominator(const std::string& what = "zero denominator") : Error(what) {}
};

struct UndefinedValue : Error {
  explicit UndefinedValue(const std::string& what = "continued fraction value is undefined") : Error(what) {}
};

struct NonStandardWord : Error {
  explicit NonStandardWord(const std::string& what = "word is not standard") : Error(what) {}
};

struct EmptyWord : Error {
  explicit EmptyWord(const std::string& what = "empty word not allowed here") : Error(what) {}
};

struct HypothesisViolated : Error {
  explicit HypothesisViolated(const std::string& what = "lemma hypothesis violated") : Error(what) {}
};

struct NotMPalindrome : Error {
  explicit NotMPalindrome(const std::string& what = "word is not m-palindromic") : Error(what) {}
};

struct UndefinedExtendedValue : Error {
  explicit UndefinedExtendedValue(const std::string& what = "extended continued fraction undefined or nonpositive")
      : Error(what) {}
};

struct InsufficientData : Error {
  explicit InsufficientData(const std::string& what = "not enough data") : Error(what) {}
};

struct InvalidParameters : Error {
  explicit InvalidParameters(const std::string& what = "invalid parameters") : Error(what) {}
};

struct ScheduleNotIncreasing : Error {
  explicit ScheduleNotIncreasing(const std::string& what = "schedule must be strictly increasing") : Error(what) {}
};

struct DegeneratePeriod : Error {
  explicit DegeneratePeriod(const std::string& what = "period solves to a rational value") : Error(what) {}
};

struct InvalidExponent : Error {
  explicit InvalidExponent(const std::string& what = "exponent outside the admissible range") : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what = "parse error") : Error(what) {}
};

}  // namespace mpalkit
