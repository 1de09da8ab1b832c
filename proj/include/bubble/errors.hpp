#pragma once

#include <stdexcept>

namespace bubble {

// malformed input: bad ids, degenerate chords, inconsistent labels
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// parameters outside the feasible domain of a construction
struct InfeasibleError : std::domain_error {
    using std::domain_error::domain_error;
};

// a move was asked to act on a complex that does not match its pattern
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// iteration failed to converge or hit a degenerate configuration
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bubble
