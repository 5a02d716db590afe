#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smc {

enum class ErrorKind {
    empty_input,
    fewer_distinct_points_than_r,
    id_out_of_range,
    sequence_not_deduplicated,
    sequence_too_short,
    too_few_states,
    decomposition_failure,
    unassigned_visited_state,
    too_many_states_for_oracle,
    continuous_latent_unsupported,
    parse_error,
    invalid_config,
    io_error,
};

// Stable, machine-readable category name (used by the CLI on failure).
constexpr std::string_view error_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::empty_input: return "EmptyInput";
    case ErrorKind::fewer_distinct_points_than_r: return "FewerDistinctPointsThanR";
    case ErrorKind::id_out_of_range: return "IdOutOfRange";
    case ErrorKind::sequence_not_deduplicated: return "SequenceNotDeduplicated";
    case ErrorKind::sequence_too_short: return "SequenceTooShort";
    case ErrorKind::too_few_states: return "TooFewStates";
    case ErrorKind::decomposition_failure: return "DecompositionFailure";
    case ErrorKind::unassigned_visited_state: return "UnassignedVisitedState";
    case ErrorKind::too_many_states_for_oracle: return "TooManyStatesForOracle";
    case ErrorKind::continuous_latent_unsupported: return "ContinuousLatentUnsupported";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::invalid_config: return "InvalidConfig";
    case ErrorKind::io_error: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace smc
