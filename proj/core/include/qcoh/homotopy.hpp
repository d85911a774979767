#pragma once

#include "qcoh/quadruple.hpp"

#include <optional>

namespace qcoh {

/// Finds an equivariant integer homotopy triple with d h + h d = m in all
/// four positions, by solving the combined linear system (homotopy equations
/// plus equivariance constraints) over Z.  Deterministic; `ordering_variant`
/// permutes the unknowns so a second run can pick a different canonical
/// solution when the solution space is positive-dimensional.
std::optional<HomotopyTriple> solve_homotopy(const ExactQuadruple& q, std::int64_t m,
                                             int ordering_variant = 0);

/// The quadruple with a homotopy attached: the stored one if present, else a
/// solved one with the default scalar.  Throws when none exists.
ExactQuadruple ensure_homotopy(const ExactQuadruple& q);

} // namespace qcoh
