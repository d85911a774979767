#include "qcoh/subquotient.hpp"

#include <stdexcept>

namespace qcoh {

namespace {

std::vector<int> pivots_of(const ModMatrix& h)
{
    std::vector<int> p(h.rows(), -1);
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c)
            if (h.at(r, c) != 0) {
                p[r] = c;
                break;
            }
    return p;
}

/// Greedy reduction of x against Howell rows; returns generator coefficients
/// when x lies in the span, nullopt otherwise.
std::optional<std::vector<std::int64_t>> howell_coords(const ModMatrix& h, const std::vector<int>& pivots,
                                                       std::vector<std::int64_t> x)
{
    const std::int64_t n = h.modulus();
    std::vector<std::int64_t> coeff(h.rows(), 0);
    for (int r = 0; r < h.rows(); ++r) {
        int p = pivots[r];
        if (p < 0) continue;
        if (x[p] == 0) continue;
        auto q = divide_mod(x[p], h.at(r, p), n);
        if (!q) return std::nullopt;
        coeff[r] = *q;
        if (*q != 0)
            for (int c = p; c < h.cols(); ++c) x[c] = mod_reduce(x[c] - *q * h.at(r, c), n);
    }
    for (std::int64_t v : x)
        if (v != 0) return std::nullopt;
    return coeff;
}

} // namespace

SubquotientStructure SubquotientStructure::quotient(const ModMatrix& ker_cols, const ModMatrix& im_cols)
{
    SubquotientStructure s;
    s.n_ = ker_cols.modulus();
    s.ambient_dim_ = ker_cols.rows();
    if (im_cols.rows() != ker_cols.rows() || im_cols.modulus() != s.n_)
        throw std::invalid_argument("quotient_structure: ambient mismatch");

    s.v_howell_ = howell(ker_cols.transpose());
    s.v_pivots_ = pivots_of(s.v_howell_);
    const int r = s.v_howell_.rows();

    // Relations among the r Howell generators: left kernel of v_howell_,
    // the images of W written in generator coordinates, and N * I.
    std::vector<IntMatrix> relation_cols;
    {
        ModMatrix lk = kernel_mod(s.v_howell_.transpose()); // columns y with y^T H = 0
        for (int c = 0; c < lk.cols(); ++c) {
            IntMatrix v(r, 1);
            for (int i = 0; i < r; ++i) v.at(i, 0) = lk.at(i, c);
            relation_cols.push_back(v);
        }
    }
    for (int c = 0; c < im_cols.cols(); ++c) {
        std::vector<std::int64_t> x(s.ambient_dim_);
        for (int i = 0; i < s.ambient_dim_; ++i) x[i] = im_cols.at(i, c);
        auto y = howell_coords(s.v_howell_, s.v_pivots_, std::move(x));
        if (!y) throw std::invalid_argument("not a subquotient");
        IntMatrix v(r, 1);
        for (int i = 0; i < r; ++i) v.at(i, 0) = (*y)[i];
        relation_cols.push_back(v);
    }

    IntMatrix rel(r, int(relation_cols.size()) + r);
    for (std::size_t j = 0; j < relation_cols.size(); ++j)
        for (int i = 0; i < r; ++i) rel.at(i, int(j)) = relation_cols[j].at(i, 0);
    for (int i = 0; i < r; ++i) rel.at(i, int(relation_cols.size()) + i) = s.n_;

    SnfResult f = snf(rel);
    // Z^r / col-span(rel) = (+) Z/s_i via y -> (U^-1 y); every s_i here is
    // nonzero because N*I sits inside the relations.
    std::vector<int> keep;
    std::vector<std::int64_t> divisors;
    for (int i = 0; i < r; ++i) {
        Int d = i < std::min(rel.rows(), rel.cols()) ? f.s.at(i, i) : Int(0);
        if (d == 0) throw std::logic_error("quotient_structure: unexpected free part");
        if (d > 1) {
            keep.push_back(i);
            divisors.push_back(d.convert_to<std::int64_t>());
        }
    }
    s.divisors_ = divisors;

    const int k = int(keep.size());
    s.coord_rows_ = IntMatrix(k, r);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j) s.coord_rows_.at(i, j) = f.u_inv.at(keep[i], j);
    s.rep_coords_ = IntMatrix(r, k);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < k; ++j) s.rep_coords_.at(i, j) = f.u.at(i, keep[j]);

    s.rep_basis_ = ModMatrix(s.ambient_dim_, k, s.n_);
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < r; ++i) {
            Int cij = s.rep_coords_.at(i, j);
            std::int64_t c64 = mod_reduce(Int(cij % s.n_).convert_to<std::int64_t>(), s.n_);
            if (!c64) continue;
            for (int a = 0; a < s.ambient_dim_; ++a)
                s.rep_basis_.at(a, j) = (s.rep_basis_.at(a, j) + c64 * s.v_howell_.at(i, a)) % s.n_;
        }
    }
    return s;
}

Int SubquotientStructure::order() const
{
    Int o = 1;
    for (auto d : divisors_) o *= d;
    return o;
}

std::vector<std::int64_t> SubquotientStructure::generator_coords(const std::vector<std::int64_t>& x) const
{
    if (int(x.size()) != ambient_dim_) throw std::invalid_argument("project: size mismatch");
    auto y = howell_coords(v_howell_, v_pivots_, x);
    if (!y) throw std::invalid_argument("project: vector not in the subgroup");
    return *y;
}

std::vector<std::int64_t> SubquotientStructure::project(const std::vector<std::int64_t>& x) const
{
    auto y = generator_coords(x);
    std::vector<std::int64_t> coords(divisors_.size(), 0);
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        Int acc = 0;
        for (int j = 0; j < coord_rows_.cols(); ++j) acc += coord_rows_.at(int(i), j) * y[j];
        Int red = acc % divisors_[i];
        if (red < 0) red += divisors_[i];
        coords[i] = red.convert_to<std::int64_t>();
    }
    return coords;
}

ModMatrix SubquotientStructure::project_matrix(const ModMatrix& cols) const
{
    ModMatrix out(int(divisors_.size()), cols.cols(), n_);
    std::vector<std::int64_t> x(ambient_dim_);
    for (int c = 0; c < cols.cols(); ++c) {
        for (int i = 0; i < ambient_dim_; ++i) x[i] = cols.at(i, c);
        auto coords = project(x);
        for (std::size_t i = 0; i < coords.size(); ++i) out.at(int(i), c) = coords[i];
    }
    return out;
}

std::vector<std::int64_t> SubquotientStructure::representative(const std::vector<std::int64_t>& coords) const
{
    if (coords.size() != divisors_.size()) throw std::invalid_argument("representative: size mismatch");
    std::vector<std::int64_t> x(ambient_dim_, 0);
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (coords[j] == 0) continue;
        for (int a = 0; a < ambient_dim_; ++a)
            x[a] = (x[a] + coords[j] * rep_basis_.at(a, int(j))) % n_;
    }
    return x;
}

bool SubquotientStructure::contains(const std::vector<std::int64_t>& x) const
{
    return howell_coords(v_howell_, v_pivots_, x).has_value();
}

SubquotientStructure quotient_structure(const ModMatrix& ker_cols, const ModMatrix& im_cols)
{
    return SubquotientStructure::quotient(ker_cols, im_cols);
}

} // namespace qcoh
