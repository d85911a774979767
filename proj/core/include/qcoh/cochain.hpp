#pragma once

#include "qcoh/gmodule.hpp"
#include "qcoh/modmat.hpp"

#include <functional>
#include <stdexcept>

namespace qcoh {

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Normalized bar cochain complex of a finite group with coefficients in a
/// G-module over Z/N: C^n is the space of functions from n-tuples of
/// non-identity elements to the module, of dimension (|G|-1)^n * rank.
/// Tuples are indexed with the rightmost slot fastest; a cochain vector is
/// laid out tuple-major with the module coordinate fastest.
class CochainComplex {
public:
    CochainComplex(GroupPtr group, ModulePtr module);

    const GroupPtr& group() const { return group_; }
    const ModulePtr& module() const { return module_; }
    std::int64_t modulus() const { return n_; }

    std::int64_t dim(int degree) const;

    /// d^n applied to a cochain vector of dimension dim(n).
    std::vector<std::int64_t> coboundary(int n, const std::vector<std::int64_t>& f) const;

    /// Stream the rows of d^n (one row per coordinate of C^{n+1}).
    void coboundary_rows(int n, const std::function<void(const SparseRow&)>& sink) const;

    /// Matrix of d^n (dense); only sensible for small degrees.
    ModMatrix coboundary_matrix(int n) const;

    /// decode/encode tuples of non-identity group elements
    std::vector<int> tuple_of(int degree, std::int64_t flat) const;
    std::int64_t flat_of(const std::vector<int>& tuple) const;

private:
    GroupPtr group_;
    ModulePtr module_;
    std::int64_t n_;
    int q_; // |G| - 1
    std::vector<ModMatrix> action_;
};

} // namespace qcoh
