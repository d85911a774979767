#include "qcoh/intmat.hpp"

#include <cassert>
#include <stdexcept>

namespace qcoh {

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != std::size_t(rows) * cols)
        throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::identity(int n)
{
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dim mismatch in product");
    IntMatrix p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(r, k);
            if (a == 0) continue;
            for (int c = 0; c < o.cols_; ++c) p.at(r, c) += a * o.at(k, c);
        }
    return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dim mismatch");
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + o.data_[i];
    return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMatrix: dim mismatch");
    IntMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - o.data_[i];
    return s;
}

IntMatrix IntMatrix::operator*(const Int& s) const
{
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
    return m;
}

bool IntMatrix::is_zero() const
{
    for (const Int& x : data_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const
{
    if (rows_ != o.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix m(rows_, cols_ + o.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
        for (int c = 0; c < o.cols_; ++c) m.at(r, cols_ + c) = o.at(r, c);
    }
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& o) const
{
    if (cols_ != o.cols_) throw std::invalid_argument("vstack: col mismatch");
    IntMatrix m(rows_ + o.rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    for (int r = 0; r < o.rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(rows_ + r, c) = o.at(r, c);
    return m;
}

IntMatrix IntMatrix::col(int c) const
{
    IntMatrix m(rows_, 1);
    for (int r = 0; r < rows_; ++r) m.at(r, 0) = at(r, c);
    return m;
}

IntMatrix IntMatrix::submatrix_cols(const std::vector<int>& cols) const
{
    IntMatrix m(rows_, int(cols.size()));
    for (int r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) m.at(r, int(j)) = at(r, cols[j]);
    return m;
}

namespace {

void swap_rows(IntMatrix& a, int i, int j)
{
    if (i == j) return;
    for (int c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
}

void swap_cols(IntMatrix& a, int i, int j)
{
    if (i == j) return;
    for (int r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
}

void add_row(IntMatrix& a, int dst, int src, const Int& f)
{
    if (f == 0) return;
    for (int c = 0; c < a.cols(); ++c) a.at(dst, c) += f * a.at(src, c);
}

void add_col(IntMatrix& a, int dst, int src, const Int& f)
{
    if (f == 0) return;
    for (int r = 0; r < a.rows(); ++r) a.at(r, dst) += f * a.at(r, src);
}

void negate_row(IntMatrix& a, int i)
{
    for (int c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
}

} // namespace

SnfResult snf(const IntMatrix& a)
{
    const int m = a.rows(), n = a.cols();
    const int nmin = std::min(m, n);
    SnfResult res;
    IntMatrix s = a;
    // l * a * r = s throughout; u = l^-1 and v = r^-1 are kept in step.
    IntMatrix l = IntMatrix::identity(m), linv = IntMatrix::identity(m);
    IntMatrix r = IntMatrix::identity(n), rinv = IntMatrix::identity(n);

    for (int i = 0; i < nmin; ++i) {
        for (;;) {
            // Smallest nonzero |entry| in the trailing block, row-major ties.
            int pr = -1, pc = -1;
            Int best = 0;
            for (int rr = i; rr < m; ++rr)
                for (int cc = i; cc < n; ++cc) {
                    const Int& x = s.at(rr, cc);
                    if (x == 0) continue;
                    Int ax = abs_int(x);
                    if (pr < 0 || ax < best) {
                        best = ax;
                        pr = rr;
                        pc = cc;
                    }
                }
            if (pr < 0) break; // trailing block zero

            swap_rows(s, i, pr);
            swap_rows(l, i, pr);
            swap_cols(linv, i, pr);
            swap_cols(s, i, pc);
            swap_cols(r, i, pc);
            swap_rows(rinv, i, pc);

            bool clean = true;
            for (int rr = i + 1; rr < m; ++rr) {
                if (s.at(rr, i) == 0) continue;
                Int q = s.at(rr, i) / s.at(i, i);
                add_row(s, rr, i, -q);
                add_row(l, rr, i, -q);
                add_col(linv, i, rr, q);
                if (s.at(rr, i) != 0) clean = false;
            }
            for (int cc = i + 1; cc < n; ++cc) {
                if (s.at(i, cc) == 0) continue;
                Int q = s.at(i, cc) / s.at(i, i);
                add_col(s, cc, i, -q);
                add_col(r, cc, i, -q);
                add_row(rinv, i, cc, q);
                if (s.at(i, cc) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot now alone in its row/col; pull in any non-multiple below-right.
            int br = -1;
            for (int rr = i + 1; rr < m && br < 0; ++rr)
                for (int cc = i + 1; cc < n; ++cc)
                    if (s.at(rr, cc) % s.at(i, i) != 0) {
                        br = rr;
                        break;
                    }
            if (br < 0) break;
            add_row(s, i, br, 1);
            add_row(l, i, br, 1);
            add_col(linv, br, i, -1);
        }
        if (i < nmin && s.at(i, i) < 0) {
            negate_row(s, i);
            negate_row(l, i);
            for (int rr = 0; rr < m; ++rr) linv.at(rr, i) = -linv.at(rr, i);
        }
    }

    int rank = 0;
    for (int i = 0; i < nmin; ++i)
        if (s.at(i, i) != 0) ++rank;

    res.u = linv;
    res.v = rinv;
    res.s = s;
    res.u_inv = l;
    res.v_inv = r;
    res.rank = rank;
    return res;
}

IntMatrix hnf_rows(const IntMatrix& a)
{
    IntMatrix h = a;
    const int m = h.rows(), n = h.cols();
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int piv = -1;
        for (int rr = row; rr < m; ++rr)
            if (h.at(rr, col) != 0) {
                piv = rr;
                break;
            }
        if (piv < 0) continue;
        swap_rows(h, row, piv);
        // Euclid the column below the pivot to zero.
        for (int rr = row + 1; rr < m; ++rr) {
            while (h.at(rr, col) != 0) {
                Int q = h.at(row, col) / h.at(rr, col);
                add_row(h, row, rr, -q);
                swap_rows(h, row, rr);
            }
        }
        if (h.at(row, col) < 0) negate_row(h, row);
        for (int rr = 0; rr < row; ++rr) {
            // reduce entries above the pivot into [0, pivot)
            Int q = h.at(rr, col) / h.at(row, col);
            if (h.at(rr, col) - q * h.at(row, col) < 0) q -= 1;
            add_row(h, rr, row, -q);
        }
        ++row;
    }
    IntMatrix out(row, n);
    for (int rr = 0; rr < row; ++rr)
        for (int cc = 0; cc < n; ++cc) out.at(rr, cc) = h.at(rr, cc);
    return out;
}

IntMatrix kernel_z(const IntMatrix& a)
{
    SnfResult f = snf(a);
    const int n = a.cols();
    std::vector<int> free_cols;
    for (int i = 0; i < n; ++i) {
        bool pivotal = i < std::min(a.rows(), n) && f.s.at(i, i) != 0;
        if (!pivotal) free_cols.push_back(i);
    }
    // x = v_inv * y with y supported on free coordinates
    IntMatrix basis = f.v_inv.submatrix_cols(free_cols);
    // canonicalize: column HNF via row HNF of the transpose
    return hnf_rows(basis.transpose()).transpose();
}

IntMatrix column_lattice_basis(const IntMatrix& a)
{
    return hnf_rows(a.transpose()).transpose();
}

bool same_column_lattice(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) return false;
    return hnf_rows(a.transpose()) == hnf_rows(b.transpose());
}

std::optional<IntMatrix> solve_z(const IntMatrix& a, const IntMatrix& b)
{
    if (b.rows() != a.rows() || b.cols() != 1) throw std::invalid_argument("solve_z: bad rhs");
    SnfResult f = snf(a);
    IntMatrix c = f.u_inv * b; // s * (v x) = c
    const int nmin = std::min(a.rows(), a.cols());
    IntMatrix y(a.cols(), 1);
    for (int i = 0; i < a.rows(); ++i) {
        Int si = i < nmin ? f.s.at(i, i) : Int(0);
        if (si == 0) {
            if (c.at(i, 0) != 0) return std::nullopt;
        } else {
            if (c.at(i, 0) % si != 0) return std::nullopt;
            y.at(i, 0) = c.at(i, 0) / si;
        }
    }
    IntMatrix x = f.v_inv * y;
    // canonicalize against the kernel lattice so the choice is reproducible
    IntMatrix k = kernel_z(a);
    if (k.cols() > 0) {
        IntMatrix kr = hnf_rows(k.transpose()); // rows = kernel basis, staircase
        for (int i = 0; i < kr.rows(); ++i) {
            int lead = -1;
            for (int c2 = 0; c2 < kr.cols(); ++c2)
                if (kr.at(i, c2) != 0) {
                    lead = c2;
                    break;
                }
            if (lead < 0) continue;
            Int q = x.at(lead, 0) / kr.at(i, lead);
            if (x.at(lead, 0) - q * kr.at(i, lead) < 0) q -= 1;
            for (int c2 = 0; c2 < kr.cols(); ++c2) x.at(c2, 0) -= q * kr.at(i, c2);
        }
    }
    return x;
}

} // namespace qcoh
