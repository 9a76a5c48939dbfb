#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

// Bad arguments: non-finite entries, dimension mismatches, malformed symbols.
struct InvalidInputError : std::invalid_argument {
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// defect_operator called on an operator with norm > 1 beyond tolerance.
struct NotAContractionError : std::domain_error {
    explicit NotAContractionError(const std::string& what) : std::domain_error(what) {}
};

// Matrix substitution on a triple whose commutation residual exceeds tolerance.
struct InvalidTripleError : std::domain_error {
    explicit InvalidTripleError(const std::string& what) : std::domain_error(what) {}
};

// Two independent membership methods disagree away from the boundary band.
// Surfaced to the caller, never silently resolved.
struct InternalInconsistencyError : std::logic_error {
    explicit InternalInconsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Simultaneous triangularization failed after all retries.
struct NumericalDegeneracyError : std::runtime_error {
    explicit NumericalDegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// The fundamental-operator equations are not solvable for the given triple.
struct SolvabilityError : std::domain_error {
    explicit SolvabilityError(const std::string& what) : std::domain_error(what) {}
};

// A hypothesis of the certified construction is violated (named in the message).
struct ConstraintViolationError : std::domain_error {
    explicit ConstraintViolationError(const std::string& what) : std::domain_error(what) {}
};

// Dilation symbol fails the required endpoint conditions.
struct InvalidSymbolError : std::domain_error {
    explicit InvalidSymbolError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace tetra
