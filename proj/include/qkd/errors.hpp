#ifndef QKD_ERRORS_HPP
#define QKD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qkd {

// Bad parameter values, violated invariants, malformed config.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Out-of-order or malformed classical-channel traffic.
class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// A decoy tally that cannot support the analysis (empty intensity class).
class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qkd

#endif
