#pragma once

#include "qcoh/ints.hpp"

#include <vector>

namespace qcoh {

/// Laurent polynomial with integer coefficients: coeffs[i] multiplies x^(low + i).
struct Laurent {
    int low = 0;
    std::vector<Int> coeffs;

    static Laurent monomial(const Int& c, int power);
    Laurent trimmed() const;
    bool is_zero() const;
    bool operator==(const Laurent& o) const;
    Int coeff(int power) const;
    /// f(1/x)
    Laurent reversed() const;
};

Laurent laurent_add(const Laurent& a, const Laurent& b);
Laurent laurent_sub(const Laurent& a, const Laurent& b);
Laurent laurent_mul(const Laurent& a, const Laurent& b);

/// Exact division; throws if the remainder is nonzero.
Laurent laurent_div_exact(const Laurent& num, const Laurent& den);

/// f with k - (1 + x + ... + x^{k-1}) = (1 - x) f(x).
Laurent cyclic_homotopy_poly(int k);

/// Laurent f with (x^{-1} + 2 + x) f(x) = 1 + sum_{i=-k/2+1}^{k/2-1} x^i.
Laurent dihedral_homotopy_poly(int k);

} // namespace qcoh
