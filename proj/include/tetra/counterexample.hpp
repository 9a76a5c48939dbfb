#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "tetra/dilation.hpp"

namespace tetra {

// End-to-end record for one admissible lambda: the certified triple, its
// fundamental operators, the commutator, and the interior commutation
// residual of the Theorem-B-form truncated tuple.
struct CounterexampleRecord {
    std::array<Complex, 3> lambda;
    double r_used = 0.0;
    CertificationReport certification;
    CommutingTriple triple;
    FundamentalPair fundamental;
    double commutator_norm = 0.0;
    double theoremB_commutation_interior = 0.0;
};

// Builds the record for explicit lambda; throws ConstraintViolationError
// naming the violated hypothesis when lambda is inadmissible. margin keeps
// lambda strictly inside the open constraint set despite the bisection
// tolerance on r.
CounterexampleRecord generate(Complex l1, Complex l2, Complex l3, double margin = 1e-3);

// Draws lambda uniformly from the admissible region, rejecting
// ||l1| - |l2|| < 1e-6 so the commutator stays away from zero.
CounterexampleRecord generate_seeded(std::uint64_t seed, double margin = 1e-3);

struct CounterexampleSummary {
    std::string text;            // human-readable
    std::string json;            // machine-readable (tetra/1 schema fragment)
};

// Validates the record invariants (throws InternalInconsistencyError on a
// tampered record) and renders the summary.
CounterexampleSummary certify_report(const CounterexampleRecord& rec);

}  // namespace tetra
