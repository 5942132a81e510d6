#ifndef CAUSALEVAL_ERROR_HPP
#define CAUSALEVAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causaleval {

// Malformed input text: CSV, schema files, model formulas.
class ParseError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit ParseError(const std::string& what, std::size_t byte_offset = npos)
      : std::runtime_error(byte_offset == npos
                               ? what
                               : what + " (at byte " + std::to_string(byte_offset) + ")"),
        offset_(byte_offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Bad arguments or violated preconditions.
class ValueError : public std::runtime_error {
 public:
  explicit ValueError(const std::string& what) : std::runtime_error(what) {}
};

// Statistical failures: rank deficiency, separation, non-convergence.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace causaleval

#endif  // CAUSALEVAL_ERROR_HPP
