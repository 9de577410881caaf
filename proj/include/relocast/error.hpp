#pragma once

#include <stdexcept>
#include <string>

namespace relocast {

// Base of every error the library throws. The CLI maps ValidationError to
// exit code 2 and every other Error to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value is outside its documented range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (CSV row, JSON document).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value violates a physical bound of the data model.
class BoundError : public Error {
 public:
  using Error::Error;
};

// Site for which a stationarization divisor vanishes (polar night).
class UnsupportedSiteError : public Error {
 public:
  using Error::Error;
};

// Request for a value at an instant that is masked (sun too low).
class MaskedInstantError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public ParseError {
 public:
  using ParseError::ParseError;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace relocast
