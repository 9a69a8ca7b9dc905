#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fstar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position,
             std::vector<std::string> expected = {});

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class NonPositiveValue : public Error {
 public:
  using Error::Error;
};

class SingularAmplitude : public Error {
 public:
  using Error::Error;
};

class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ProfileUnavailable : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

}  // namespace fstar
