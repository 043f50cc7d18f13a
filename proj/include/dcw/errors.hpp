#ifndef DCW_ERRORS_HPP
#define DCW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcw {

// Raised by the text parsers; `position` is a character offset for
// expressions and a 1-based line number for edge lists and decomposition
// files.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at " + std::to_string(position) + ")"),
          position(position) {}

    std::size_t position;
};

// Raised when an instance exceeds a configured size cap of an exponential
// routine (oracle search, clique search, recognizer).
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what_failed, int size, int cap)
        : std::runtime_error(what_failed + ": instance has " + std::to_string(size) +
                             " vertices, cap is " + std::to_string(cap)) {}
};

}  // namespace dcw

#endif
