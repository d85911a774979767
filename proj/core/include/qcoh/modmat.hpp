#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace qcoh {

class IntMatrix;

using SparseRow = std::vector<std::pair<int, std::int64_t>>;

/// Dense matrix over Z/N, entries kept reduced into [0, N).
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(int rows, int cols, std::int64_t n);
    ModMatrix(int rows, int cols, std::int64_t n, std::vector<std::int64_t> entries);

    static ModMatrix identity(int n, std::int64_t mod);
    static ModMatrix from_int(const IntMatrix& a, std::int64_t mod);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::int64_t modulus() const { return n_; }

    std::int64_t& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    std::int64_t at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    bool operator==(const ModMatrix& o) const = default;

    ModMatrix operator*(const ModMatrix& o) const;
    ModMatrix operator+(const ModMatrix& o) const;
    ModMatrix operator-(const ModMatrix& o) const;
    ModMatrix scaled(std::int64_t s) const;
    ModMatrix transpose() const;
    ModMatrix hstack(const ModMatrix& o) const;
    ModMatrix vstack(const ModMatrix& o) const;
    ModMatrix col(int c) const;
    bool is_zero() const;

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;
    IntMatrix lift() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::int64_t n_ = 2;
    std::vector<std::int64_t> data_;
};

std::int64_t mod_reduce(std::int64_t v, std::int64_t n);
/// Unit u with u * v == gcd(v, n) (mod n); v in [1, n).
std::int64_t unit_towards_gcd(std::int64_t v, std::int64_t n);
std::int64_t mod_inverse(std::int64_t v, std::int64_t n);
/// q with q * d == v (mod n), or nullopt.
std::optional<std::int64_t> divide_mod(std::int64_t v, std::int64_t d, std::int64_t n);

/// Incremental row-span reducer over Z/N.  Rows are pushed one at a time; the
/// accumulated staircase (with annihilator rows inserted eagerly) spans the
/// same module and finalizes to the canonical Howell form.  N == 2 runs on a
/// bit-packed fast path so bar-resolution streams stay cheap.
class RowSpan {
public:
    RowSpan(std::int64_t n, int cols);
    ~RowSpan();
    RowSpan(RowSpan&&) noexcept;
    RowSpan& operator=(RowSpan&&) noexcept;

    void add_sparse(const SparseRow& row);
    void add_dense(const std::vector<std::int64_t>& row);

    int cols() const;
    std::int64_t modulus() const;

    /// Canonical Howell form (sorted pivots, reduced above, unit-normalized).
    ModMatrix howell() const;

    /// Canonical generating set for {x : A x = 0} where A is the matrix whose
    /// rows were pushed, returned as matrix columns.
    ModMatrix kernel() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Howell form of the row span of a.
ModMatrix howell(const ModMatrix& a);

/// Canonical generating set of {x : A x = 0} as matrix columns.
ModMatrix kernel_mod(const ModMatrix& a);

/// Span equality of column sets over Z/N.
bool same_column_span(const ModMatrix& a, const ModMatrix& b);

/// Solver for A x = b over Z/N with a deterministic, Howell-reduced choice
/// of solution.  Construction cost is one Howell reduction of [A^T | I].
class LinearSolverMod {
public:
    explicit LinearSolverMod(const ModMatrix& a);

    std::optional<std::vector<std::int64_t>> solve(const std::vector<std::int64_t>& b) const;
    std::optional<ModMatrix> solve_matrix(const ModMatrix& b) const; ///< columnwise
    const ModMatrix& kernel() const { return kernel_; } ///< columns

private:
    int rows_;
    int cols_;
    std::int64_t n_;
    ModMatrix reduced_; // Howell form of [A^T | I]
    ModMatrix kernel_;
    std::vector<int> pivot_of_col_;
};

} // namespace qcoh
