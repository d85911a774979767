#pragma once

#include "qcoh/intmat.hpp"
#include "qcoh/modmat.hpp"

#include <cstdint>
#include <vector>

namespace qcoh {

/// Coordinate system for a subquotient V/W of (Z/N)^dim, where V and W are
/// given by generating columns and W is contained in V.  Carries the
/// elementary divisors, canonical representative columns, and a projection
/// from V onto divisor coordinates that kills W.
class SubquotientStructure {
public:
    SubquotientStructure() = default;

    const std::vector<std::int64_t>& divisors() const { return divisors_; }
    const ModMatrix& rep_basis() const { return rep_basis_; } ///< columns
    std::int64_t modulus() const { return n_; }
    int ambient_dim() const { return ambient_dim_; }

    /// Order of the subquotient group (product of divisors).
    Int order() const;

    /// Divisor coordinates of an ambient vector known to lie in V.
    /// Throws when x is not in V.
    std::vector<std::int64_t> project(const std::vector<std::int64_t>& x) const;
    ModMatrix project_matrix(const ModMatrix& cols) const;

    /// Ambient representative of a coordinate vector.
    std::vector<std::int64_t> representative(const std::vector<std::int64_t>& coords) const;

    bool contains(const std::vector<std::int64_t>& x) const;

    static SubquotientStructure quotient(const ModMatrix& ker_cols, const ModMatrix& im_cols);

private:
    std::int64_t n_ = 2;
    int ambient_dim_ = 0;
    std::vector<std::int64_t> divisors_;
    ModMatrix rep_basis_;     // ambient_dim x s
    ModMatrix v_howell_;      // Howell rows spanning V
    std::vector<int> v_pivots_;
    IntMatrix coord_rows_;    // s x r rows of U^-1 picked at surviving divisors
    IntMatrix rep_coords_;    // r x s columns of U at surviving divisors

    std::vector<std::int64_t> generator_coords(const std::vector<std::int64_t>& x) const;
};

/// Subquotient of ker-span by im-span; throws when im is not contained in ker.
SubquotientStructure quotient_structure(const ModMatrix& ker_cols, const ModMatrix& im_cols);

} // namespace qcoh
