#pragma once

#include <stdexcept>
#include <string>

namespace predsearch {

/// Bad argument: out-of-range id, malformed parameter, invalid embedding.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Instance exceeds an exact-solver cap (tour DP, exact doubling cover).
struct CapacityError : std::length_error {
    explicit CapacityError(const std::string& msg) : std::length_error(msg) {}
};

/// Required vertices are mutually unreachable.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An agent tried to move to a vertex not on the current frontier.
struct ProtocolViolation : std::logic_error {
    explicit ProtocolViolation(const std::string& msg) : std::logic_error(msg) {}
};

/// Predictions contradict the error model an algorithm assumes.
struct ModelViolation : std::runtime_error {
    explicit ModelViolation(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed instance file.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A rejection-sampling generator ran out of attempts.
struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace predsearch
