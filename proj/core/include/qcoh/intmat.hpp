#pragma once

#include "qcoh/ints.hpp"

#include <optional>
#include <vector>

namespace qcoh {

/// Dense matrix over Z with exact entries.  Row-major storage; zero-sized
/// dimensions are legal everywhere (empty kernels, rank-0 modules).
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
    IntMatrix(int rows, int cols, std::vector<Int> entries);

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator*(const Int& s) const;
    bool is_zero() const;

    /// Horizontal concatenation [this | o].
    IntMatrix hstack(const IntMatrix& o) const;
    /// Vertical concatenation [this; o].
    IntMatrix vstack(const IntMatrix& o) const;
    IntMatrix col(int c) const;
    IntMatrix submatrix_cols(const std::vector<int>& cols) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> data_;
};

struct SnfResult {
    IntMatrix u;   ///< unimodular, rows x rows
    IntMatrix s;   ///< diagonal with divisibility chain d1 | d2 | ...
    IntMatrix v;   ///< unimodular, cols x cols
    // Inverses tracked during elimination; A = u s v and l a r = s with
    // l = u^-1, r = v^-1.
    IntMatrix u_inv;
    IntMatrix v_inv;
    int rank = 0;
};

/// Smith normal form A = U S V, deterministic for a fixed input.
SnfResult snf(const IntMatrix& a);

/// Canonical basis of {x : A x = 0} as matrix columns (column HNF).
IntMatrix kernel_z(const IntMatrix& a);

/// Canonical lattice basis of the column span of A (column-HNF columns).
IntMatrix column_lattice_basis(const IntMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by the rows.
/// Unique per lattice: staircase, positive pivots, entries above each pivot
/// reduced into [0, pivot).
IntMatrix hnf_rows(const IntMatrix& a);

/// Some x with A x = b, canonicalized by reducing against the kernel
/// lattice; std::nullopt when no integer solution exists.
std::optional<IntMatrix> solve_z(const IntMatrix& a, const IntMatrix& b);

/// True iff the two column spans are the same sublattice of Z^rows.
bool same_column_lattice(const IntMatrix& a, const IntMatrix& b);

} // namespace qcoh
