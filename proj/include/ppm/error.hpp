#ifndef PPM_ERROR_HPP
#define PPM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppm {

enum class ErrorKind {
    empty_input,
    malformed_token,
    not_a_permutation,
    duplicate_values,
    length_mismatch,
    not_increasing,
    out_of_range,
    empty_segment,
    order_violation,
    pattern_longer_than_text,
    instance_too_small,
    instance_too_large,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::empty_input: return "empty input";
    case ErrorKind::malformed_token: return "malformed token";
    case ErrorKind::not_a_permutation: return "not a permutation";
    case ErrorKind::duplicate_values: return "duplicate values";
    case ErrorKind::length_mismatch: return "length mismatch";
    case ErrorKind::not_increasing: return "not strictly increasing";
    case ErrorKind::out_of_range: return "out of range";
    case ErrorKind::empty_segment: return "empty segment";
    case ErrorKind::order_violation: return "order violation";
    case ErrorKind::pattern_longer_than_text: return "k > n";
    case ErrorKind::instance_too_small: return "instance too small";
    case ErrorKind::instance_too_large: return "instance too large";
    }
    return "unknown error";
}

/// Thrown by every validating operation in the library. `kind()` identifies
/// the failed check; `what()` carries a one-line human readable diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}

#endif
