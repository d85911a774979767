#include "qcoh/finab.hpp"

#include <stdexcept>

namespace qcoh {

FinAb::FinAb(std::vector<std::int64_t> divisors) : divisors_(std::move(divisors))
{
    for (std::int64_t d : divisors_)
        if (d <= 1) throw std::invalid_argument("FinAb: divisors must be > 1");
}

bool FinAb::is_chain() const
{
    for (std::size_t i = 1; i < divisors_.size(); ++i)
        if (divisors_[i] % divisors_[i - 1] != 0) return false;
    return true;
}

Int FinAb::order() const
{
    Int o = 1;
    for (auto d : divisors_) o *= d;
    return o;
}

std::vector<std::int64_t> FinAb::reduce(std::vector<Int> v) const
{
    if (v.size() != divisors_.size()) throw std::invalid_argument("FinAb::reduce: size mismatch");
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int r = v[i] % divisors_[i];
        if (r < 0) r += divisors_[i];
        out[i] = r.convert_to<std::int64_t>();
    }
    return out;
}

FinAb FinAb::direct_sum(const FinAb& a, const FinAb& b)
{
    // merge and re-normalize into a divisor chain via SNF of a diagonal matrix
    std::vector<std::int64_t> all = a.divisors_;
    all.insert(all.end(), b.divisors_.begin(), b.divisors_.end());
    if (all.empty()) return FinAb{};
    IntMatrix d(int(all.size()), int(all.size()));
    for (std::size_t i = 0; i < all.size(); ++i) d.at(int(i), int(i)) = all[i];
    SnfResult f = snf(d);
    std::vector<std::int64_t> divs;
    for (int i = 0; i < int(all.size()); ++i) {
        Int v = f.s.at(i, i);
        if (v > 1) divs.push_back(v.convert_to<std::int64_t>());
    }
    return FinAb(std::move(divs));
}

FinAbMap::FinAbMap(FinAb src, FinAb tgt, IntMatrix m)
    : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(m))
{
    if (m_.rows() != tgt_.rank() || m_.cols() != src_.rank())
        throw std::invalid_argument("FinAbMap: matrix shape mismatch");
    for (int j = 0; j < src_.rank(); ++j)
        for (int i = 0; i < tgt_.rank(); ++i)
            if ((m_.at(i, j) * src_.divisors()[j]) % tgt_.divisors()[i] != 0)
                throw std::invalid_argument("FinAbMap: not well-defined on divisors");
    canonicalize();
}

void FinAbMap::canonicalize()
{
    for (int i = 0; i < m_.rows(); ++i)
        for (int j = 0; j < m_.cols(); ++j) {
            Int r = m_.at(i, j) % tgt_.divisors()[i];
            if (r < 0) r += tgt_.divisors()[i];
            m_.at(i, j) = r;
        }
}

FinAbMap FinAbMap::zero(const FinAb& src, const FinAb& tgt)
{
    return FinAbMap(src, tgt, IntMatrix(tgt.rank(), src.rank()));
}

FinAbMap FinAbMap::identity(const FinAb& g)
{
    return FinAbMap(g, g, IntMatrix::identity(g.rank()));
}

std::vector<std::int64_t> FinAbMap::apply(const std::vector<std::int64_t>& x) const
{
    if (int(x.size()) != src_.rank()) throw std::invalid_argument("FinAbMap::apply: size");
    std::vector<Int> y(tgt_.rank(), 0);
    for (int i = 0; i < tgt_.rank(); ++i)
        for (int j = 0; j < src_.rank(); ++j) y[i] += m_.at(i, j) * x[j];
    return tgt_.reduce(std::move(y));
}

FinAbMap FinAbMap::compose(const FinAbMap& inner) const
{
    if (!(inner.tgt_ == src_)) throw std::invalid_argument("FinAbMap::compose: mismatch");
    return FinAbMap(inner.src_, tgt_, m_ * inner.m_);
}

FinAbMap FinAbMap::operator+(const FinAbMap& o) const
{
    if (!(src_ == o.src_) || !(tgt_ == o.tgt_)) throw std::invalid_argument("FinAbMap: +");
    return FinAbMap(src_, tgt_, m_ + o.m_);
}

FinAbMap FinAbMap::operator-(const FinAbMap& o) const
{
    if (!(src_ == o.src_) || !(tgt_ == o.tgt_)) throw std::invalid_argument("FinAbMap: -");
    return FinAbMap(src_, tgt_, m_ - o.m_);
}

FinAbMap FinAbMap::scaled(std::int64_t s) const { return FinAbMap(src_, tgt_, m_ * Int(s)); }

bool FinAbMap::is_zero() const { return m_.is_zero(); }

bool FinAbMap::equal_to(const FinAbMap& o) const
{
    return src_ == o.src_ && tgt_ == o.tgt_ && m_ == o.m_;
}

Int subgroup_order(const FinAb& g, const IntMatrix& gens)
{
    if (gens.rows() != g.rank()) throw std::invalid_argument("subgroup_order: ambient mismatch");
    const int r = g.rank();
    if (r == 0) return 1;
    IntMatrix rel(r, gens.cols() + r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < gens.cols(); ++j) rel.at(i, j) = gens.at(i, j);
        rel.at(i, gens.cols() + i) = g.divisors()[i];
    }
    SnfResult f = snf(rel);
    Int quotient_order = 1;
    for (int i = 0; i < r; ++i) quotient_order *= f.s.at(i, i);
    return g.order() / quotient_order;
}

Int FinAbMap::image_order() const { return subgroup_order(tgt_, m_); }

Int FinAbMap::kernel_order() const
{
    return src_.order() / image_order();
}

IntMatrix FinAbMap::kernel_generators() const
{
    // x with M x = 0 in the target: integer solutions of [M | diag(tgt)] y = 0
    // projected onto the x block, plus the source divisor lattice.
    const int s = src_.rank(), t = tgt_.rank();
    IntMatrix aug(t, s + t);
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < s; ++j) aug.at(i, j) = m_.at(i, j);
        aug.at(i, s + i) = tgt_.divisors()[i];
    }
    IntMatrix k = kernel_z(aug);
    IntMatrix proj(s, k.cols() + s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < k.cols(); ++j) proj.at(i, j) = k.at(i, j);
        proj.at(i, k.cols() + i) = src_.divisors()[i];
    }
    return column_lattice_basis(proj);
}

bool FinAbMap::injective() const { return kernel_order() == 1; }

bool FinAbMap::surjective() const { return image_order() == tgt_.order(); }

FinAbMap FinAbMap::block_row(const FinAbMap& a, const FinAbMap& b)
{
    if (!(a.tgt_ == b.tgt_)) throw std::invalid_argument("block_row: target mismatch");
    std::vector<std::int64_t> d = a.src_.divisors();
    d.insert(d.end(), b.src_.divisors().begin(), b.src_.divisors().end());
    return FinAbMap(FinAb::product(std::move(d)), a.tgt_, a.m_.hstack(b.m_));
}

FinAbMap FinAbMap::block_col(const FinAbMap& a, const FinAbMap& b)
{
    if (!(a.src_ == b.src_)) throw std::invalid_argument("block_col: source mismatch");
    std::vector<std::int64_t> d = a.tgt_.divisors();
    d.insert(d.end(), b.tgt_.divisors().begin(), b.tgt_.divisors().end());
    FinAb tgt = FinAb::product(d);
    return FinAbMap(a.src_, tgt, a.m_.vstack(b.m_));
}

FinAbMap FinAbMap::direct_sum(const FinAbMap& a, const FinAbMap& b)
{
    std::vector<std::int64_t> ds = a.src_.divisors();
    ds.insert(ds.end(), b.src_.divisors().begin(), b.src_.divisors().end());
    std::vector<std::int64_t> dt = a.tgt_.divisors();
    dt.insert(dt.end(), b.tgt_.divisors().begin(), b.tgt_.divisors().end());
    FinAb src = FinAb::product(ds), tgt = FinAb::product(dt);
    IntMatrix m(tgt.rank(), src.rank());
    for (int i = 0; i < a.m_.rows(); ++i)
        for (int j = 0; j < a.m_.cols(); ++j) m.at(i, j) = a.m_.at(i, j);
    for (int i = 0; i < b.m_.rows(); ++i)
        for (int j = 0; j < b.m_.cols(); ++j) m.at(a.m_.rows() + i, a.m_.cols() + j) = b.m_.at(i, j);
    return FinAbMap(src, tgt, std::move(m));
}

FinAbSubgroup subgroup_from_generators(const FinAb& parent, const IntMatrix& gens)
{
    if (gens.rows() != parent.rank()) throw std::invalid_argument("subgroup_from_generators: shape");
    const int t = gens.cols();
    // relations among the generators: x with gens * x = 0 in the parent
    IntMatrix aug(parent.rank(), t + parent.rank());
    for (int i = 0; i < parent.rank(); ++i) {
        for (int j = 0; j < t; ++j) aug.at(i, j) = gens.at(i, j);
        aug.at(i, t + i) = parent.divisors()[i];
    }
    IntMatrix k = kernel_z(aug);
    IntMatrix rel(t, k.cols());
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < k.cols(); ++j) rel.at(i, j) = k.at(i, j);
    SnfResult f = snf(rel);
    std::vector<int> keep;
    std::vector<std::int64_t> divisors;
    const int nmin = std::min(rel.rows(), rel.cols());
    for (int i = 0; i < t; ++i) {
        Int d = i < nmin ? f.s.at(i, i) : Int(0);
        if (d == 0) throw std::logic_error("subgroup_from_generators: free part impossible");
        if (d > 1) {
            keep.push_back(i);
            divisors.push_back(d.convert_to<std::int64_t>());
        }
    }
    FinAb sub = FinAb::product(divisors);
    // inclusion: coordinate e_i of the subgroup is gens * (column keep[i] of U)
    IntMatrix incl(parent.rank(), int(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        IntMatrix col = gens * f.u.col(keep[i]);
        for (int r = 0; r < parent.rank(); ++r) incl.at(r, int(i)) = col.at(r, 0);
    }
    return FinAbSubgroup{sub, FinAbMap(sub, parent, std::move(incl))};
}

FinAbQuotient quotient_by_generators(const FinAb& parent, const IntMatrix& gens)
{
    if (gens.rows() != parent.rank()) throw std::invalid_argument("quotient_by_generators: shape");
    const int r = parent.rank();
    IntMatrix rel(r, gens.cols() + r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < gens.cols(); ++j) rel.at(i, j) = gens.at(i, j);
        rel.at(i, gens.cols() + i) = parent.divisors()[i];
    }
    SnfResult f = snf(rel);
    std::vector<int> keep;
    std::vector<std::int64_t> divisors;
    for (int i = 0; i < r; ++i) {
        Int d = f.s.at(i, i);
        if (d == 0) throw std::logic_error("quotient_by_generators: free part impossible");
        if (d > 1) {
            keep.push_back(i);
            divisors.push_back(d.convert_to<std::int64_t>());
        }
    }
    FinAb quot = FinAb::product(divisors);
    IntMatrix proj(int(keep.size()), r);
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (int j = 0; j < r; ++j) proj.at(int(i), j) = f.u_inv.at(keep[i], j);
    return FinAbQuotient{quot, FinAbMap(parent, quot, std::move(proj))};
}

std::optional<std::vector<std::int64_t>> finab_preimage(const FinAbMap& f,
                                                        const std::vector<std::int64_t>& y)
{
    // solve f(x) = y over the integers with the target divisors as slack
    const int s = f.source().rank(), t = f.target().rank();
    IntMatrix aug(t, s + t);
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < s; ++j) aug.at(i, j) = f.matrix().at(i, j);
        aug.at(i, s + i) = f.target().divisors()[i];
    }
    IntMatrix rhs(t, 1);
    for (int i = 0; i < t; ++i) rhs.at(i, 0) = y[i];
    auto sol = solve_z(aug, rhs);
    if (!sol) return std::nullopt;
    std::vector<Int> x(s);
    for (int i = 0; i < s; ++i) x[i] = sol->at(i, 0);
    return f.source().reduce(std::move(x));
}

FinAbMap restrict_to_subgroup(const FinAbMap& f, const FinAbSubgroup& sub)
{
    return f.compose(sub.include);
}

FinAbMap corestrict_to_subgroup(const FinAbMap& f, const FinAbSubgroup& sub)
{
    IntMatrix m(sub.sub.rank(), f.source().rank());
    std::vector<std::int64_t> y(f.target().rank());
    for (int c = 0; c < f.source().rank(); ++c) {
        for (int i = 0; i < f.target().rank(); ++i) {
            Int v = f.matrix().at(i, c) % f.target().divisors()[i];
            if (v < 0) v += f.target().divisors()[i];
            y[i] = v.convert_to<std::int64_t>();
        }
        auto x = finab_preimage(sub.include, y);
        if (!x) throw std::invalid_argument("corestrict_to_subgroup: image leaves the subgroup");
        for (int i = 0; i < sub.sub.rank(); ++i) m.at(i, c) = (*x)[i];
    }
    return FinAbMap(f.source(), sub.sub, std::move(m));
}

FinAbMap descend_to_quotient(const FinAbMap& f, const FinAbQuotient& quot)
{
    if (!(quot.project.source() == f.source()))
        throw std::invalid_argument("descend_to_quotient: source mismatch");
    // choose coordinate preimages through the projection and check the
    // result kills the denominators
    const int qr = quot.quot.rank();
    IntMatrix m(f.target().rank(), qr);
    for (int c = 0; c < qr; ++c) {
        std::vector<std::int64_t> e(qr, 0);
        e[c] = 1;
        auto x = finab_preimage(quot.project, e);
        if (!x) throw std::logic_error("descend_to_quotient: projection not surjective");
        auto y = f.apply(*x);
        for (int i = 0; i < f.target().rank(); ++i) m.at(i, c) = y[i];
    }
    FinAbMap g(quot.quot, f.target(), std::move(m));
    // well-definedness: f must vanish where the projection does; verified by
    // comparing f with g o project
    if (!g.compose(quot.project).equal_to(f))
        throw std::invalid_argument("descend_to_quotient: map does not descend");
    return g;
}

ExactnessVerdict exact_at(const FinAbMap& f, const FinAbMap& g)
{
    if (!(f.target() == g.source())) throw std::invalid_argument("exact_at: middle mismatch");
    ExactnessVerdict v;
    v.composite_zero = g.compose(f).is_zero();
    v.image_order = f.image_order();
    v.kernel_order = g.kernel_order();
    v.exact = v.composite_zero && v.image_order == v.kernel_order;
    return v;
}

} // namespace qcoh
