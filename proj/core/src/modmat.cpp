#include "qcoh/modmat.hpp"

#include "qcoh/intmat.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qcoh {

std::int64_t mod_reduce(std::int64_t v, std::int64_t n)
{
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

std::int64_t mod_inverse(std::int64_t v, std::int64_t n)
{
    if (n == 1) return 0;
    std::int64_t t = 0, newt = 1, r = n, newr = mod_reduce(v, n);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not a unit");
    return mod_reduce(t, n);
}

std::int64_t unit_towards_gcd(std::int64_t v, std::int64_t n)
{
    v = mod_reduce(v, n);
    if (v == 0) return 1;
    std::int64_t g = gcd_i64(v, n);
    std::int64_t vp = v / g, np = n / g;
    if (np == 1) return 1;
    std::int64_t t = mod_inverse(vp % np, np);
    // lift t to a unit mod n
    while (gcd_i64(t, n) != 1) t += np;
    return mod_reduce(t, n);
}

std::optional<std::int64_t> divide_mod(std::int64_t v, std::int64_t d, std::int64_t n)
{
    v = mod_reduce(v, n);
    d = mod_reduce(d, n);
    if (v == 0) return 0;
    if (d == 0) return std::nullopt;
    std::int64_t g = gcd_i64(d, n);
    if (v % g != 0) return std::nullopt;
    std::int64_t np = n / g;
    if (np == 1) return 0;
    std::int64_t q = ((v / g) % np) * mod_inverse((d / g) % np, np) % np;
    return mod_reduce(q, n);
}

ModMatrix::ModMatrix(int rows, int cols, std::int64_t n)
    : rows_(rows), cols_(cols), n_(n), data_(std::size_t(rows) * cols)
{
    if (n < 2) throw std::invalid_argument("ModMatrix: modulus must be >= 2");
}

ModMatrix::ModMatrix(int rows, int cols, std::int64_t n, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), n_(n), data_(std::move(entries))
{
    if (n < 2) throw std::invalid_argument("ModMatrix: modulus must be >= 2");
    if (data_.size() != std::size_t(rows) * cols)
        throw std::invalid_argument("ModMatrix: entry count mismatch");
    for (auto& v : data_) v = mod_reduce(v, n_);
}

ModMatrix ModMatrix::identity(int n, std::int64_t mod)
{
    ModMatrix m(n, n, mod);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % mod;
    return m;
}

ModMatrix ModMatrix::from_int(const IntMatrix& a, std::int64_t mod)
{
    ModMatrix m(a.rows(), a.cols(), mod);
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) {
            Int v = a.at(r, c) % mod;
            if (v < 0) v += mod;
            m.at(r, c) = v.convert_to<std::int64_t>();
        }
    return m;
}

IntMatrix ModMatrix::lift() const
{
    IntMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    return m;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const
{
    if (cols_ != o.rows_ || n_ != o.n_) throw std::invalid_argument("ModMatrix: dim/mod mismatch");
    ModMatrix p(rows_, o.cols_, n_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            std::int64_t a = at(r, k);
            if (!a) continue;
            for (int c = 0; c < o.cols_; ++c)
                p.at(r, c) = (p.at(r, c) + a * o.at(k, c)) % n_;
        }
    return p;
}

ModMatrix ModMatrix::operator+(const ModMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || n_ != o.n_)
        throw std::invalid_argument("ModMatrix: mismatch");
    ModMatrix s(rows_, cols_, n_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = (data_[i] + o.data_[i]) % n_;
    return s;
}

ModMatrix ModMatrix::operator-(const ModMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || n_ != o.n_)
        throw std::invalid_argument("ModMatrix: mismatch");
    ModMatrix s(rows_, cols_, n_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        s.data_[i] = mod_reduce(data_[i] - o.data_[i], n_);
    return s;
}

ModMatrix ModMatrix::scaled(std::int64_t s) const
{
    s = mod_reduce(s, n_);
    ModMatrix m(rows_, cols_, n_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s % n_;
    return m;
}

ModMatrix ModMatrix::transpose() const
{
    ModMatrix t(cols_, rows_, n_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

ModMatrix ModMatrix::hstack(const ModMatrix& o) const
{
    if (rows_ != o.rows_ || n_ != o.n_) throw std::invalid_argument("hstack: mismatch");
    ModMatrix m(rows_, cols_ + o.cols_, n_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
        for (int c = 0; c < o.cols_; ++c) m.at(r, cols_ + c) = o.at(r, c);
    }
    return m;
}

ModMatrix ModMatrix::vstack(const ModMatrix& o) const
{
    if (cols_ != o.cols_ || n_ != o.n_) throw std::invalid_argument("vstack: mismatch");
    ModMatrix m(rows_ + o.rows_, cols_, n_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    for (int r = 0; r < o.rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(rows_ + r, c) = o.at(r, c);
    return m;
}

ModMatrix ModMatrix::col(int c) const
{
    ModMatrix m(rows_, 1, n_);
    for (int r = 0; r < rows_; ++r) m.at(r, 0) = at(r, c);
    return m;
}

bool ModMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](std::int64_t v) { return v == 0; });
}

std::vector<std::int64_t> ModMatrix::apply(const std::vector<std::int64_t>& x) const
{
    if (int(x.size()) != cols_) throw std::invalid_argument("apply: size mismatch");
    std::vector<std::int64_t> y(rows_, 0);
    for (int r = 0; r < rows_; ++r) {
        std::int64_t acc = 0;
        const std::int64_t* row = &data_[std::size_t(r) * cols_];
        for (int c = 0; c < cols_; ++c) acc = (acc + row[c] * x[c]) % n_;
        y[r] = acc;
    }
    return y;
}

// ---------------------------------------------------------------------------
// RowSpan

namespace {

struct GenericSpan {
    std::int64_t n;
    int cols;
    std::vector<std::vector<std::int64_t>> rows; // staircase rows
    std::vector<int> pivot_of_col;               // index into rows, or -1

    GenericSpan(std::int64_t n_, int cols_) : n(n_), cols(cols_), pivot_of_col(cols_, -1) {}

    void insert(std::vector<std::int64_t> row)
    {
        std::vector<std::vector<std::int64_t>> work;
        work.push_back(std::move(row));
        while (!work.empty()) {
            std::vector<std::int64_t> r = std::move(work.back());
            work.pop_back();
            int p = 0;
            while (p < cols) {
                std::int64_t v = r[p];
                if (v == 0) {
                    ++p;
                    continue;
                }
                int pi = pivot_of_col[p];
                if (pi < 0) {
                    std::int64_t g = gcd_i64(v, n);
                    std::int64_t u = unit_towards_gcd(v, n);
                    if (u != 1)
                        for (auto& x : r) x = x * u % n;
                    pivot_of_col[p] = int(rows.size());
                    if (g != 1) {
                        // annihilator keeps the Howell property visible
                        std::vector<std::int64_t> ann(cols);
                        std::int64_t f = n / g;
                        for (int c = 0; c < cols; ++c) ann[c] = r[c] * f % n;
                        work.push_back(std::move(ann));
                    }
                    rows.push_back(std::move(r));
                    break;
                }
                std::vector<std::int64_t>& q = rows[pi];
                std::int64_t d = q[p]; // divides n by invariant
                if (v % d == 0) {
                    std::int64_t c0 = v / d;
                    for (int c = p; c < cols; ++c) r[c] = mod_reduce(r[c] - c0 * q[c], n);
                } else {
                    std::int64_t x, y; // x*d + y*v = g
                    std::int64_t g = [&] {
                        Int xi, yi;
                        Int gi = exgcd_int(Int(d), Int(v), xi, yi);
                        x = mod_reduce(xi.convert_to<std::int64_t>() % n, n);
                        y = mod_reduce(yi.convert_to<std::int64_t>() % n, n);
                        return gi.convert_to<std::int64_t>();
                    }();
                    std::vector<std::int64_t> np(cols), rp(cols);
                    std::int64_t dg = d / g, vg = v / g;
                    for (int c = 0; c < cols; ++c) {
                        np[c] = (x * q[c] + y * r[c]) % n;
                        rp[c] = mod_reduce(dg * r[c] % n - vg * q[c] % n, n);
                    }
                    rows[pi] = std::move(np);
                    std::vector<std::int64_t> ann(cols);
                    std::int64_t f = n / gcd_i64(g, n);
                    for (int c = 0; c < cols; ++c) ann[c] = rows[pi][c] * f % n;
                    work.push_back(std::move(ann));
                    r = std::move(rp);
                }
            }
        }
    }

    // rows sorted by pivot with entries above each pivot reduced below it
    std::vector<std::vector<std::int64_t>> canonical_rows() const
    {
        std::vector<int> order;
        for (int c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0) order.push_back(pivot_of_col[c]);
        std::vector<std::vector<std::int64_t>> out;
        out.reserve(order.size());
        for (int idx : order) out.push_back(rows[idx]);
        // position of pivot for out[i] is the i-th pivotal column
        std::vector<int> pcols;
        for (int c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0) pcols.push_back(c);
        for (std::size_t i = 0; i < out.size(); ++i) {
            int p = pcols[i];
            std::int64_t d = out[i][p];
            for (std::size_t j = 0; j < i; ++j) {
                std::int64_t e = out[j][p];
                std::int64_t q = e / d;
                if (q == 0) continue;
                for (int c = p; c < cols; ++c) out[j][c] = mod_reduce(out[j][c] - q * out[i][c], n);
            }
        }
        return out;
    }
};

constexpr int kWordBits = 64;

struct Gf2Span {
    int cols;
    int words;
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<int> pivot_of_col;

    Gf2Span(int cols_) : cols(cols_), words((cols_ + kWordBits - 1) / kWordBits), pivot_of_col(cols_, -1) {}

    static int first_bit(const std::vector<std::uint64_t>& r)
    {
        for (std::size_t w = 0; w < r.size(); ++w)
            if (r[w]) return int(w) * kWordBits + __builtin_ctzll(r[w]);
        return -1;
    }

    void insert(std::vector<std::uint64_t> r)
    {
        for (;;) {
            int p = first_bit(r);
            if (p < 0) return;
            int pi = pivot_of_col[p];
            if (pi < 0) {
                pivot_of_col[p] = int(rows.size());
                rows.push_back(std::move(r));
                return;
            }
            const std::vector<std::uint64_t>& q = rows[pi];
            for (int w = p / kWordBits; w < words; ++w) r[w] ^= q[w];
        }
    }

    void reduce_above()
    {
        for (int p = 0; p < cols; ++p) {
            int pi = pivot_of_col[p];
            if (pi < 0) continue;
            const int wstart = p / kWordBits;
            const std::uint64_t mask = 1ull << (p % kWordBits);
            for (int c = 0; c < p; ++c) {
                int pj = pivot_of_col[c];
                if (pj < 0) continue;
                if (rows[pj][wstart] & mask)
                    for (int w = wstart; w < words; ++w) rows[pj][w] ^= rows[pi][w];
            }
        }
    }
};

} // namespace

struct RowSpan::Impl {
    std::int64_t n;
    int cols;
    std::unique_ptr<GenericSpan> gen;
    std::unique_ptr<Gf2Span> gf2;
    mutable bool reduced = false;

    Impl(std::int64_t n_, int cols_) : n(n_), cols(cols_)
    {
        if (n == 2)
            gf2 = std::make_unique<Gf2Span>(cols_);
        else
            gen = std::make_unique<GenericSpan>(n_, cols_);
    }
};

RowSpan::RowSpan(std::int64_t n, int cols) : impl_(std::make_unique<Impl>(n, cols))
{
    if (n < 2) throw std::invalid_argument("RowSpan: modulus must be >= 2");
}

RowSpan::~RowSpan() = default;
RowSpan::RowSpan(RowSpan&&) noexcept = default;
RowSpan& RowSpan::operator=(RowSpan&&) noexcept = default;

int RowSpan::cols() const { return impl_->cols; }
std::int64_t RowSpan::modulus() const { return impl_->n; }

void RowSpan::add_sparse(const SparseRow& row)
{
    if (impl_->gf2) {
        std::vector<std::uint64_t> r(impl_->gf2->words, 0);
        for (auto [pos, val] : row)
            if (val & 1) r[pos / kWordBits] ^= 1ull << (pos % kWordBits);
        impl_->gf2->insert(std::move(r));
    } else {
        std::vector<std::int64_t> r(impl_->cols, 0);
        for (auto [pos, val] : row) r[pos] = mod_reduce(r[pos] + val, impl_->n);
        impl_->gen->insert(std::move(r));
    }
    impl_->reduced = false;
}

void RowSpan::add_dense(const std::vector<std::int64_t>& row)
{
    if (int(row.size()) != impl_->cols) throw std::invalid_argument("RowSpan: width mismatch");
    if (impl_->gf2) {
        std::vector<std::uint64_t> r(impl_->gf2->words, 0);
        for (int c = 0; c < impl_->cols; ++c)
            if (row[c] & 1) r[c / kWordBits] ^= 1ull << (c % kWordBits);
        impl_->gf2->insert(std::move(r));
    } else {
        std::vector<std::int64_t> r(row);
        for (auto& v : r) v = mod_reduce(v, impl_->n);
        impl_->gen->insert(std::move(r));
    }
    impl_->reduced = false;
}

ModMatrix RowSpan::howell() const
{
    const int cols = impl_->cols;
    if (impl_->gf2) {
        if (!impl_->reduced) {
            impl_->gf2->reduce_above();
            impl_->reduced = true;
        }
        std::vector<int> pcols;
        for (int c = 0; c < cols; ++c)
            if (impl_->gf2->pivot_of_col[c] >= 0) pcols.push_back(c);
        ModMatrix h(int(pcols.size()), cols, 2);
        for (std::size_t i = 0; i < pcols.size(); ++i) {
            const auto& r = impl_->gf2->rows[impl_->gf2->pivot_of_col[pcols[i]]];
            for (int c = 0; c < cols; ++c)
                h.at(int(i), c) = (r[c / kWordBits] >> (c % kWordBits)) & 1;
        }
        return h;
    }
    auto rows = impl_->gen->canonical_rows();
    ModMatrix h(int(rows.size()), cols, impl_->n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int c = 0; c < cols; ++c) h.at(int(i), c) = rows[i][c];
    return h;
}

namespace {

/// Kernel of a Howell-form matrix h over a prime modulus, via RREF read-off.
ModMatrix kernel_of_rref_prime(const ModMatrix& h)
{
    const int cols = h.cols();
    const std::int64_t n = h.modulus();
    std::vector<int> pivot_col(h.rows(), -1);
    std::vector<int> pivot_of_col(cols, -1);
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < cols; ++c)
            if (h.at(r, c) != 0) {
                pivot_col[r] = c;
                pivot_of_col[c] = r;
                break;
            }
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (pivot_of_col[c] < 0) free_cols.push_back(c);
    ModMatrix k(cols, int(free_cols.size()), n);
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        int fc = free_cols[j];
        k.at(fc, int(j)) = 1;
        for (int r = 0; r < h.rows(); ++r)
            if (pivot_col[r] >= 0 && pivot_col[r] < fc)
                k.at(pivot_col[r], int(j)) = mod_reduce(-h.at(r, fc), n);
    }
    return k;
}

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Kernel of an arbitrary matrix via the Howell form of [A^T | I].
ModMatrix kernel_general(const ModMatrix& a)
{
    const int r = a.rows(), c = a.cols();
    const std::int64_t n = a.modulus();
    RowSpan span(n, r + c);
    for (int i = 0; i < c; ++i) {
        std::vector<std::int64_t> row(r + c, 0);
        for (int j = 0; j < r; ++j) row[j] = a.at(j, i);
        row[r + i] = 1;
        span.add_dense(row);
    }
    ModMatrix h = span.howell();
    std::vector<int> keep;
    for (int i = 0; i < h.rows(); ++i) {
        bool lead_zero = true;
        for (int j = 0; j < r && lead_zero; ++j)
            if (h.at(i, j) != 0) lead_zero = false;
        if (lead_zero) keep.push_back(i);
    }
    ModMatrix k(c, int(keep.size()), n);
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (int j = 0; j < c; ++j) k.at(j, int(i)) = h.at(keep[i], r + j);
    return k;
}

} // namespace

ModMatrix RowSpan::kernel() const
{
    ModMatrix h = howell();
    if (is_prime(impl_->n)) return kernel_of_rref_prime(h);
    return kernel_general(h);
}

ModMatrix howell(const ModMatrix& a)
{
    RowSpan span(a.modulus(), a.cols());
    std::vector<std::int64_t> row(a.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) row[c] = a.at(r, c);
        span.add_dense(row);
    }
    return span.howell();
}

ModMatrix kernel_mod(const ModMatrix& a)
{
    RowSpan span(a.modulus(), a.cols());
    std::vector<std::int64_t> row(a.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) row[c] = a.at(r, c);
        span.add_dense(row);
    }
    return span.kernel();
}

bool same_column_span(const ModMatrix& a, const ModMatrix& b)
{
    if (a.rows() != b.rows() || a.modulus() != b.modulus()) return false;
    return howell(a.transpose()) == howell(b.transpose());
}

LinearSolverMod::LinearSolverMod(const ModMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), n_(a.modulus()),
      reduced_(0, 0, a.modulus()), kernel_(0, 0, a.modulus())
{
    RowSpan span(n_, rows_ + cols_);
    for (int i = 0; i < cols_; ++i) {
        std::vector<std::int64_t> row(rows_ + cols_, 0);
        for (int j = 0; j < rows_; ++j) row[j] = a.at(j, i);
        row[rows_ + i] = 1;
        span.add_dense(row);
    }
    reduced_ = span.howell();
    std::vector<int> keep;
    for (int i = 0; i < reduced_.rows(); ++i) {
        bool lead_zero = true;
        for (int j = 0; j < rows_ && lead_zero; ++j)
            if (reduced_.at(i, j) != 0) lead_zero = false;
        if (lead_zero) keep.push_back(i);
    }
    kernel_ = ModMatrix(cols_, int(keep.size()), n_);
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (int j = 0; j < cols_; ++j) kernel_.at(j, int(i)) = reduced_.at(keep[i], rows_ + j);

    pivot_of_col_.assign(rows_ + cols_, -1);
    for (int i = 0; i < reduced_.rows(); ++i)
        for (int c = 0; c < rows_ + cols_; ++c)
            if (reduced_.at(i, c) != 0) {
                pivot_of_col_[c] = i;
                break;
            }
}

std::optional<std::vector<std::int64_t>> LinearSolverMod::solve(const std::vector<std::int64_t>& b) const
{
    if (int(b.size()) != rows_) throw std::invalid_argument("solve: rhs size mismatch");
    const int width = rows_ + cols_;
    std::vector<std::int64_t> w(width, 0);
    for (int i = 0; i < rows_; ++i) w[i] = mod_reduce(b[i], n_);

    const std::vector<int>& pivot_of_col = pivot_of_col_;

    for (int p = 0; p < rows_; ++p) {
        if (w[p] == 0) continue;
        int pi = pivot_of_col[p];
        if (pi < 0) return std::nullopt;
        auto q = divide_mod(w[p], reduced_.at(pi, p), n_);
        if (!q) return std::nullopt;
        for (int c = p; c < width; ++c) w[c] = mod_reduce(w[c] - *q * reduced_.at(pi, c), n_);
    }
    // canonicalize the solution against the kernel rows
    for (int p = rows_; p < width; ++p) {
        if (w[p] == 0) continue;
        int pi = pivot_of_col[p];
        if (pi < 0) continue;
        std::int64_t d = reduced_.at(pi, p);
        std::int64_t q = w[p] / d;
        if (q == 0) continue;
        for (int c = p; c < width; ++c) w[c] = mod_reduce(w[c] - q * reduced_.at(pi, c), n_);
    }
    std::vector<std::int64_t> x(cols_);
    for (int i = 0; i < cols_; ++i) x[i] = mod_reduce(-w[rows_ + i], n_);
    return x;
}

std::optional<ModMatrix> LinearSolverMod::solve_matrix(const ModMatrix& b) const
{
    if (b.rows() != rows_) throw std::invalid_argument("solve_matrix: dim mismatch");
    ModMatrix x(cols_, b.cols(), n_);
    std::vector<std::int64_t> column(rows_);
    for (int c = 0; c < b.cols(); ++c) {
        for (int r = 0; r < rows_; ++r) column[r] = b.at(r, c);
        auto sol = solve(column);
        if (!sol) return std::nullopt;
        for (int r = 0; r < cols_; ++r) x.at(r, c) = (*sol)[r];
    }
    return x;
}

} // namespace qcoh
