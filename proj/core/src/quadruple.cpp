#include "qcoh/quadruple.hpp"

#include <sstream>
#include <stdexcept>

namespace qcoh {

ExactQuadruple::ExactQuadruple(std::string name, ModuleMap d_ab, ModuleMap d_bc, ModuleMap d_cd,
                               std::optional<HomotopyTriple> homotopy, std::int64_t default_scalar,
                               std::array<std::vector<Summand>, 4> summands)
    : name_(std::move(name)), group_(d_ab.source()->group()),
      modules_{d_ab.source(), d_ab.target(), d_bc.target(), d_cd.target()},
      homotopy_(std::move(homotopy)), default_scalar_(default_scalar),
      summands_(std::move(summands))
{
    if (d_bc.source() != modules_[1] || d_cd.source() != modules_[2])
        throw std::invalid_argument("ExactQuadruple: differentials do not chain");
    if (!modules_[0]->ring().is_integers())
        throw std::invalid_argument("ExactQuadruple: integer modules required");
    diffs_ = {std::move(d_ab), std::move(d_bc), std::move(d_cd)};
    if (homotopy_) {
        const auto& h = *homotopy_;
        if (h.h_ba.source() != modules_[1] || h.h_ba.target() != modules_[0] ||
            h.h_cb.source() != modules_[2] || h.h_cb.target() != modules_[1] ||
            h.h_dc.source() != modules_[3] || h.h_dc.target() != modules_[2])
            throw std::invalid_argument("ExactQuadruple: homotopy shape mismatch");
    }
    for (int i = 0; i < 4; ++i) {
        int total = 0;
        for (const auto& s : summands_[i]) total += s.rank;
        if (!summands_[i].empty() && total != modules_[i]->rank())
            throw std::invalid_argument("ExactQuadruple: summand ranks do not cover the module");
    }
}

ExactQuadruple ExactQuadruple::with_homotopy(HomotopyTriple h) const
{
    return ExactQuadruple(name_, diffs_[0], diffs_[1], diffs_[2], std::move(h), default_scalar_,
                          summands_);
}

QuadrupleReport verify(const ExactQuadruple& q)
{
    QuadrupleReport r;
    std::ostringstream details;

    IntMatrix bc_ab = q.d_bc().matrix() * q.d_ab().matrix();
    IntMatrix cd_bc = q.d_cd().matrix() * q.d_bc().matrix();
    r.complex_ok = bc_ab.is_zero() && cd_bc.is_zero();
    if (!r.complex_ok) details << "d o d != 0; ";

    r.injective_at_a = kernel_z(q.d_ab().matrix()).cols() == 0;
    if (!r.injective_at_a) details << "kernel at A nonzero; ";

    r.exact_at_b = same_column_lattice(kernel_z(q.d_bc().matrix()),
                                       column_lattice_basis(q.d_ab().matrix()));
    if (!r.exact_at_b) details << "ker != im at B; ";

    r.exact_at_c = same_column_lattice(kernel_z(q.d_cd().matrix()),
                                       column_lattice_basis(q.d_bc().matrix()));
    if (!r.exact_at_c) details << "ker != im at C; ";

    {
        SnfResult f = snf(q.d_cd().matrix());
        r.surjective_at_d = f.rank == q.module(3)->rank();
        for (int i = 0; i < f.rank && r.surjective_at_d; ++i)
            if (f.s.at(i, i) != 1) r.surjective_at_d = false;
        if (!r.surjective_at_d) details << "not surjective at D; ";
    }

    if (q.homotopy()) {
        const auto& h = *q.homotopy();
        const Int s = h.scalar;
        auto id = [&](const ModulePtr& m) { return IntMatrix::identity(m->rank()) * s; };
        bool ok = true;
        ok = ok && (h.h_ba.matrix() * q.d_ab().matrix() == id(q.module(0)));
        ok = ok && (q.d_ab().matrix() * h.h_ba.matrix() + h.h_cb.matrix() * q.d_bc().matrix() ==
                    id(q.module(1)));
        ok = ok && (q.d_bc().matrix() * h.h_cb.matrix() + h.h_dc.matrix() * q.d_cd().matrix() ==
                    id(q.module(2)));
        ok = ok && (q.d_cd().matrix() * h.h_dc.matrix() == id(q.module(3)));
        r.homotopy_ok = ok;
        if (!ok) details << "homotopy identity fails; ";
    }
    r.details = details.str();
    return r;
}

ExactQuadruple dualize(const ExactQuadruple& q)
{
    std::array<ModulePtr, 4> dual = {dual_module(q.module(3)), dual_module(q.module(2)),
                                     dual_module(q.module(1)), dual_module(q.module(0))};
    ModuleMap d1(dual[0], dual[1], q.d_cd().matrix().transpose());
    ModuleMap d2(dual[1], dual[2], q.d_bc().matrix().transpose());
    ModuleMap d3(dual[2], dual[3], q.d_ab().matrix().transpose());
    std::optional<HomotopyTriple> h;
    if (q.homotopy()) {
        const auto& old = *q.homotopy();
        h = HomotopyTriple{ModuleMap(dual[1], dual[0], old.h_dc.matrix().transpose()),
                           ModuleMap(dual[2], dual[1], old.h_cb.matrix().transpose()),
                           ModuleMap(dual[3], dual[2], old.h_ba.matrix().transpose()), old.scalar};
    }
    std::array<std::vector<Summand>, 4> summands = {q.summands()[3], q.summands()[2],
                                                    q.summands()[1], q.summands()[0]};
    return ExactQuadruple(q.name() + "*", std::move(d1), std::move(d2), std::move(d3), std::move(h),
                          q.default_scalar(), std::move(summands));
}

namespace {

std::vector<Summand> restrict_summands(const std::vector<Summand>& summands,
                                       const GroupEmbedding& e)
{
    std::vector<Summand> out;
    for (const auto& s : summands) {
        if (!s.permutational()) {
            out.push_back(s);
            continue;
        }
        auto pieces = orbits_under(*s.gset, e);
        for (auto& p : pieces) {
            Summand ns;
            ns.gset = p.gset;
            ns.rank = p.gset.points();
            for (int orig : p.original_points) {
                int amb = s.ambient_indices.empty() ? orig : s.ambient_indices[orig];
                ns.ambient_indices.push_back(amb);
            }
            out.push_back(std::move(ns));
        }
    }
    return out;
}

} // namespace

ExactQuadruple restrict_quadruple(const ExactQuadruple& q, const GroupEmbedding& e)
{
    if (e.target() != q.group()) throw std::invalid_argument("restrict_quadruple: group mismatch");
    std::array<ModulePtr, 4> mods;
    for (int i = 0; i < 4; ++i) mods[i] = restrict_action(q.module(i), e);
    ModuleMap d1(mods[0], mods[1], q.d_ab().matrix());
    ModuleMap d2(mods[1], mods[2], q.d_bc().matrix());
    ModuleMap d3(mods[2], mods[3], q.d_cd().matrix());
    std::optional<HomotopyTriple> h;
    if (q.homotopy()) {
        const auto& old = *q.homotopy();
        h = HomotopyTriple{ModuleMap(mods[1], mods[0], old.h_ba.matrix()),
                           ModuleMap(mods[2], mods[1], old.h_cb.matrix()),
                           ModuleMap(mods[3], mods[2], old.h_dc.matrix()), old.scalar};
    }
    std::array<std::vector<Summand>, 4> summands;
    for (int i = 0; i < 4; ++i) summands[i] = restrict_summands(q.summands()[i], e);
    return ExactQuadruple(q.name() + "|" + e.source()->name(), std::move(d1), std::move(d2),
                          std::move(d3), std::move(h), q.default_scalar(), std::move(summands));
}

TensoredQuadruple tensor_with(const ExactQuadruple& q, const ModulePtr& t2, std::int64_t m)
{
    const std::int64_t n2 = t2->ring().modulus;
    if (n2 != m * m) throw std::invalid_argument("tensor_with: coefficients must live over Z/m^2");
    if (t2->group() != q.group()) throw std::invalid_argument("tensor_with: group mismatch");

    TensoredQuadruple t;
    t.name = q.name() + " (x) " + t2->name();
    t.group = q.group();
    t.m = m;
    t.coeff = t2;
    for (int i = 0; i < 4; ++i) t.modules[i] = tensor(reduce_mod(q.module(i), n2), t2);
    auto tensor_map = [&](const ModuleMap& f, const ModulePtr& src, const ModulePtr& tgt) {
        IntMatrix k(tgt->rank(), src->rank());
        const IntMatrix& a = f.matrix();
        const int tr = t2->rank();
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) {
                if (a.at(i, j) == 0) continue;
                for (int p = 0; p < tr; ++p) k.at(i * tr + p, j * tr + p) = a.at(i, j);
            }
        return ModuleMap(src, tgt, std::move(k));
    };
    t.diffs.push_back(tensor_map(q.d_ab(), t.modules[0], t.modules[1]));
    t.diffs.push_back(tensor_map(q.d_bc(), t.modules[1], t.modules[2]));
    t.diffs.push_back(tensor_map(q.d_cd(), t.modules[2], t.modules[3]));

    if (q.homotopy()) {
        const auto& old = *q.homotopy();
        Int factor = 1;
        if (old.scalar != m) {
            if (m % old.scalar != 0)
                throw std::invalid_argument("tensor_with: stored scalar does not divide m");
            factor = m / old.scalar;
        }
        auto scale_map = [&](const ModuleMap& f, const ModulePtr& src, const ModulePtr& tgt) {
            ModuleMap g = tensor_map(f, src, tgt);
            return ModuleMap(src, tgt, g.matrix() * factor);
        };
        t.homotopy = HomotopyTriple{scale_map(old.h_ba, t.modules[1], t.modules[0]),
                                    scale_map(old.h_cb, t.modules[2], t.modules[1]),
                                    scale_map(old.h_dc, t.modules[3], t.modules[2]), m};
    }
    return t;
}

bool verify_tensored(const TensoredQuadruple& t)
{
    const std::int64_t n2 = t.m * t.m;
    auto zero = [&](const IntMatrix& a) { return ModMatrix::from_int(a, n2).is_zero(); };
    if (!zero(t.diffs[1].matrix() * t.diffs[0].matrix())) return false;
    if (!zero(t.diffs[2].matrix() * t.diffs[1].matrix())) return false;
    if (t.homotopy) {
        const auto& h = *t.homotopy;
        const Int s = h.scalar;
        auto idm = [&](const ModulePtr& m) { return IntMatrix::identity(m->rank()) * s; };
        if (!zero(h.h_ba.matrix() * t.diffs[0].matrix() - idm(t.modules[0]))) return false;
        if (!zero(t.diffs[0].matrix() * h.h_ba.matrix() + h.h_cb.matrix() * t.diffs[1].matrix() -
                  idm(t.modules[1])))
            return false;
        if (!zero(t.diffs[1].matrix() * h.h_cb.matrix() + h.h_dc.matrix() * t.diffs[2].matrix() -
                  idm(t.modules[2])))
            return false;
        if (!zero(t.diffs[2].matrix() * h.h_dc.matrix() - idm(t.modules[3]))) return false;
    }
    return true;
}

bool check_quadruple_iso(const ExactQuadruple& src, const ExactQuadruple& dst,
                         const QuadrupleIso& iso)
{
    const auto& g = *dst.group();
    if (src.group()->order() != g.order()) return false;
    // automorphism sanity
    const auto& alpha = iso.automorphism;
    if (int(alpha.size()) != g.order()) return false;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (alpha[g.mul(a, b)] != g.mul(alpha[a], alpha[b])) return false;

    for (int i = 0; i < 4; ++i) {
        const IntMatrix& phi = iso.maps[i];
        if (phi.rows() != dst.module(i)->rank() || phi.cols() != src.module(i)->rank()) return false;
        // invertible over Z
        SnfResult f = snf(phi);
        if (phi.rows() != phi.cols() || f.rank != phi.rows()) return false;
        for (int j = 0; j < f.rank; ++j)
            if (f.s.at(j, j) != 1) return false;
        // twisted equivariance: phi rho_src(a) = rho_dst(alpha(a)) phi
        for (int a = 0; a < g.order(); ++a)
            if (!(phi * src.module(i)->action(a) == dst.module(i)->action(alpha[a]) * phi))
                return false;
    }
    const ModuleMap* sd[3] = {&src.d_ab(), &src.d_bc(), &src.d_cd()};
    const ModuleMap* dd[3] = {&dst.d_ab(), &dst.d_bc(), &dst.d_cd()};
    for (int i = 0; i < 3; ++i)
        if (!(iso.maps[i + 1] * sd[i]->matrix() == dd[i]->matrix() * iso.maps[i])) return false;
    return true;
}

} // namespace qcoh
