#ifndef OPEKIT_ERRORS_HPP
#define OPEKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opekit {

/// Evaluation of a rational function at a zero of its denominator.
class pole_error : public std::domain_error {
 public:
  explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

/// An abstract flavor index occurring three or more times in one monomial.
class malformed_index_error : public std::invalid_argument {
 public:
  explicit malformed_index_error(const std::string& what)
      : std::invalid_argument(what) {}
};

/// DSL syntax or semantic error, annotated with a source position.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t position, const std::string& what)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace opekit

#endif
