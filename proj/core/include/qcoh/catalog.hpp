#pragma once

#include "qcoh/quadruple.hpp"

#include <string>
#include <vector>

namespace qcoh {

struct CatalogEntryInfo {
    std::string family;
    std::string shape;
    std::string constraints;
    bool takes_k = false;
    bool takes_m = false;
};

/// The eight families: cyclic, sigma, dihedral, dihedral_plus, biquadratic,
/// biquadratic2, remark18, s4.
const std::vector<CatalogEntryInfo>& catalog_entries();

/// Build a catalog quadruple.  Unused parameters are ignored; constraint
/// violations throw std::invalid_argument.
ExactQuadruple catalog_build(const std::string& family, int k = 0, int m = 0);

/// Self-duality witness for the remark18 family: for odd k/m the dual equals
/// the quadruple on the nose; for even k/m the isomorphism is the half-shift
/// relabeling, equivariant after twisting by the reflection-swapping
/// automorphism sigma -> sigma, tau -> sigma tau.
QuadrupleIso remark18_selfduality(int k, int m);

/// A canonical nontrivial character G -> units(Z/m^2) for the entry's group,
/// used for twisted-coefficient runs.  Returns element-indexed values.
std::vector<std::int64_t> canonical_twist(const ExactQuadruple& q, std::int64_t m);

} // namespace qcoh
