#ifndef DCG_ERRORS_HPP_
#define DCG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dcg {

// Malformed input file; message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requested beyond a representation or enumeration cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Random model generation failed (e.g. ill-conditioned system after retries).
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Degenerate or unusable data (e.g. zero-variance column).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dcg

#endif  // DCG_ERRORS_HPP_
