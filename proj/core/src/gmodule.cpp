#include "qcoh/gmodule.hpp"

#include "qcoh/subquotient.hpp"

#include <sstream>
#include <stdexcept>

namespace qcoh {

namespace {

IntMatrix reduce_entries(IntMatrix m, std::int64_t n)
{
    if (n == 0) return m;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            Int v = m.at(r, c) % n;
            if (v < 0) v += n;
            m.at(r, c) = v;
        }
    return m;
}

bool ring_equal(const IntMatrix& a, const IntMatrix& b, const RingSpec& ring)
{
    if (ring.is_integers()) return a == b;
    return reduce_entries(a - b, ring.modulus).is_zero();
}

} // namespace

GModule::GModule(GroupPtr group, RingSpec ring, int rank, std::vector<IntMatrix> action,
                 std::string name)
    : group_(std::move(group)), ring_(ring), rank_(rank), action_(std::move(action)),
      name_(std::move(name))
{
    if (int(action_.size()) != group_->order())
        throw std::invalid_argument("GModule: one action matrix per group element required");
    for (auto& m : action_) {
        if (m.rows() != rank_ || m.cols() != rank_)
            throw std::invalid_argument("GModule: action matrix shape mismatch");
        m = reduce_entries(std::move(m), ring_.modulus);
    }
    if (!ring_equal(action_[0], IntMatrix::identity(rank_), ring_))
        throw std::invalid_argument("GModule: identity must act as the identity matrix");
    for (int g = 0; g < group_->order(); ++g)
        for (int h = 0; h < group_->order(); ++h)
            if (!ring_equal(action_[g] * action_[h], action_[group_->mul(g, h)], ring_))
                throw std::invalid_argument("GModule: action is not multiplicative");
}

ModMatrix GModule::action_mod(int g) const
{
    if (ring_.is_integers()) throw std::logic_error("action_mod: integer module");
    return ModMatrix::from_int(action_[g], ring_.modulus);
}

bool GModule::is_permutational() const
{
    for (const auto& m : action_) {
        for (int r = 0; r < rank_; ++r) {
            int count = 0;
            for (int c = 0; c < rank_; ++c) {
                const Int& v = m.at(r, c);
                if (v == 0) continue;
                if (v != 1) return false;
                ++count;
            }
            if (count != 1) return false;
        }
    }
    return true;
}

std::string GModule::cache_key() const
{
    // groups are interned, so the pointer identifies the group
    std::ostringstream os;
    os << group_.get() << ':' << ring_.modulus << ':' << rank_ << ':';
    for (const auto& m : action_)
        for (int r = 0; r < rank_; ++r)
            for (int c = 0; c < rank_; ++c) os << m.at(r, c) << ',';
    return os.str();
}

ModuleMap::ModuleMap(ModulePtr source, ModulePtr target, IntMatrix m)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(m))
{
    if (!(source_->ring() == target_->ring()))
        throw std::invalid_argument("ModuleMap: ring mismatch");
    if (source_->group() != target_->group())
        throw std::invalid_argument("ModuleMap: group mismatch");
    if (m_.rows() != target_->rank() || m_.cols() != source_->rank())
        throw std::invalid_argument("ModuleMap: matrix shape mismatch");
    m_ = reduce_entries(std::move(m_), source_->ring().modulus);
    for (int g = 0; g < source_->group()->order(); ++g)
        if (!ring_equal(m_ * source_->action(g), target_->action(g) * m_, source_->ring()))
            throw std::invalid_argument("ModuleMap: not equivariant");
}

ModMatrix ModuleMap::matrix_mod() const
{
    return ModMatrix::from_int(m_, source_->ring().modulus);
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const
{
    if (inner.target_ != source_ && !(inner.target_->cache_key() == source_->cache_key()))
        throw std::invalid_argument("ModuleMap::compose: mismatch");
    return ModuleMap(inner.source_, target_, m_ * inner.m_);
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const
{
    return ModuleMap(source_, target_, m_ + o.m_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const
{
    return ModuleMap(source_, target_, m_ - o.m_);
}

ModuleMap ModuleMap::scaled(const Int& s) const { return ModuleMap(source_, target_, m_ * s); }

bool ModuleMap::is_zero() const
{
    return reduce_entries(m_, source_->ring().modulus).is_zero();
}

ModulePtr perm_module(const GSet& x, RingSpec ring)
{
    std::vector<IntMatrix> action;
    action.reserve(x.group()->order());
    for (int g = 0; g < x.group()->order(); ++g) {
        IntMatrix m(x.points(), x.points());
        for (int p = 0; p < x.points(); ++p) m.at(x.act(p, g), p) = 1;
        action.push_back(std::move(m));
    }
    return std::make_shared<GModule>(x.group(), ring, x.points(), std::move(action),
                                     "Z[" + x.name() + "]");
}

ModulePtr trivial_module(const GroupPtr& g, RingSpec ring, int rank)
{
    std::vector<IntMatrix> action(g->order(), IntMatrix::identity(rank));
    return std::make_shared<GModule>(g, ring, rank, std::move(action), "triv");
}

ModulePtr character_twist(const ModulePtr& m, const std::vector<std::int64_t>& chi)
{
    const auto& g = *m->group();
    if (int(chi.size()) != g.order()) throw std::invalid_argument("character_twist: size mismatch");
    const std::int64_t n = m->ring().modulus;
    for (int a = 0; a < g.order(); ++a) {
        if (n != 0 && gcd_i64(mod_reduce(chi[a], n), n) != 1)
            throw std::invalid_argument("character_twist: value is not a unit");
        if (n == 0 && chi[a] != 1 && chi[a] != -1)
            throw std::invalid_argument("character_twist: integer units are +-1");
        for (int b = 0; b < g.order(); ++b) {
            std::int64_t lhs = chi[g.mul(a, b)], rhs = chi[a] * chi[b];
            bool ok = n == 0 ? lhs == rhs : mod_reduce(lhs - rhs, n) == 0;
            if (!ok) throw std::invalid_argument("character_twist: not multiplicative");
        }
    }
    std::vector<IntMatrix> action;
    for (int a = 0; a < g.order(); ++a) action.push_back(m->action(a) * Int(chi[a]));
    return std::make_shared<GModule>(m->group(), m->ring(), m->rank(), std::move(action),
                                     m->name() + "*chi");
}

namespace {

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    k.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return k;
}

} // namespace

ModulePtr tensor(const ModulePtr& a, const ModulePtr& b)
{
    if (a->group() != b->group() || !(a->ring() == b->ring()))
        throw std::invalid_argument("tensor: group/ring mismatch");
    std::vector<IntMatrix> action;
    for (int g = 0; g < a->group()->order(); ++g)
        action.push_back(kronecker(a->action(g), b->action(g)));
    return std::make_shared<GModule>(a->group(), a->ring(), a->rank() * b->rank(),
                                     std::move(action), a->name() + "(x)" + b->name());
}

ModulePtr dual_module(const ModulePtr& m)
{
    std::vector<IntMatrix> action;
    for (int g = 0; g < m->group()->order(); ++g)
        action.push_back(m->action(m->group()->inverse(g)).transpose());
    return std::make_shared<GModule>(m->group(), m->ring(), m->rank(), std::move(action),
                                     m->name() + "*");
}

ModuleMap dual_map(const ModuleMap& f)
{
    return ModuleMap(dual_module(f.target()), dual_module(f.source()), f.matrix().transpose());
}

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b)
{
    if (a->group() != b->group() || !(a->ring() == b->ring()))
        throw std::invalid_argument("direct_sum: group/ring mismatch");
    std::vector<IntMatrix> action;
    for (int g = 0; g < a->group()->order(); ++g) {
        IntMatrix m(a->rank() + b->rank(), a->rank() + b->rank());
        for (int i = 0; i < a->rank(); ++i)
            for (int j = 0; j < a->rank(); ++j) m.at(i, j) = a->action(g).at(i, j);
        for (int i = 0; i < b->rank(); ++i)
            for (int j = 0; j < b->rank(); ++j)
                m.at(a->rank() + i, a->rank() + j) = b->action(g).at(i, j);
        action.push_back(std::move(m));
    }
    return std::make_shared<GModule>(a->group(), a->ring(), a->rank() + b->rank(),
                                     std::move(action), a->name() + "(+)" + b->name());
}

ModulePtr reduce_mod(const ModulePtr& m, std::int64_t target)
{
    if (target < 2) throw std::invalid_argument("reduce_mod: target modulus >= 2 required");
    if (!m->ring().is_integers() && m->ring().modulus % target != 0)
        throw std::invalid_argument("reduce_mod: target must divide the source modulus");
    std::vector<IntMatrix> action;
    for (int g = 0; g < m->group()->order(); ++g) action.push_back(m->action(g));
    return std::make_shared<GModule>(m->group(), ring_mod(target), m->rank(), std::move(action),
                                     m->name() + "/" + std::to_string(target));
}

BocksteinTriple bockstein_triple(const ModulePtr& m2)
{
    const std::int64_t n2 = m2->ring().modulus;
    if (n2 == 0) throw std::invalid_argument("bockstein_triple: modular module required");
    std::int64_t m = 1;
    while (m * m < n2) ++m;
    if (m * m != n2) throw std::invalid_argument("bockstein_triple: modulus must be a square");
    ModulePtr m1 = reduce_mod(m2, m);
    IntMatrix tau = IntMatrix::identity(m1->rank()) * Int(m);
    IntMatrix pi = IntMatrix::identity(m1->rank());
    // cross-ring equivariance: tau rho_1(g) = rho_2(g) tau mod m^2 and
    // pi rho_2(g) = rho_1(g) pi mod m
    for (int g = 0; g < m2->group()->order(); ++g) {
        if (!ModMatrix::from_int(tau * m1->action(g) - m2->action(g) * tau, n2).is_zero())
            throw std::logic_error("bockstein_triple: tau not equivariant");
        if (!ModMatrix::from_int(pi * m2->action(g) - m1->action(g) * pi, m).is_zero())
            throw std::logic_error("bockstein_triple: pi not equivariant");
    }
    return BocksteinTriple{m1, m2, std::move(tau), std::move(pi), m};
}

std::optional<ModMatrix> free_basis_of_span(const ModMatrix& gens)
{
    const std::int64_t n = gens.modulus();
    const int c = gens.rows();
    // lattice spanned by the lifted generators and N Z^c
    IntMatrix lat(c, gens.cols() + c);
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < gens.cols(); ++j) lat.at(i, j) = gens.at(i, j);
        lat.at(i, gens.cols() + i) = n;
    }
    SnfResult f = snf(lat);
    std::vector<int> unit_cols;
    for (int i = 0; i < c; ++i) {
        Int d = f.s.at(i, i);
        if (d == 1)
            unit_cols.push_back(i);
        else if (d != n)
            return std::nullopt; // genuine torsion: not free
    }
    IntMatrix basis = f.u.submatrix_cols(unit_cols);
    return ModMatrix::from_int(basis, n);
}

namespace {

/// Induced action on a free submodule given by basis columns; solves
/// basis * x = rho(g) * basis over the ring.
std::vector<IntMatrix> induced_action_on_basis(const ModulePtr& ambient, const ModMatrix& basis)
{
    LinearSolverMod solver(basis);
    std::vector<IntMatrix> action;
    for (int g = 0; g < ambient->group()->order(); ++g) {
        ModMatrix moved = ModMatrix::from_int(ambient->action(g), basis.modulus()) * basis;
        auto x = solver.solve_matrix(moved);
        if (!x) throw std::logic_error("induced_action_on_basis: submodule not invariant");
        action.push_back(x->lift());
    }
    return action;
}

std::vector<IntMatrix> induced_action_on_basis_z(const ModulePtr& ambient, const IntMatrix& basis)
{
    std::vector<IntMatrix> action;
    for (int g = 0; g < ambient->group()->order(); ++g) {
        IntMatrix moved = ambient->action(g) * basis;
        IntMatrix x(basis.cols(), basis.cols());
        for (int c = 0; c < basis.cols(); ++c) {
            auto sol = solve_z(basis, moved.col(c));
            if (!sol) throw std::logic_error("induced action: sublattice not invariant");
            for (int r = 0; r < basis.cols(); ++r) x.at(r, c) = sol->at(r, 0);
        }
        action.push_back(std::move(x));
    }
    return action;
}

SubmoduleResult submodule_from_columns_z(const ModulePtr& ambient, const IntMatrix& cols,
                                         const std::string& name)
{
    IntMatrix basis = column_lattice_basis(cols);
    auto action = induced_action_on_basis_z(ambient, basis);
    auto mod = std::make_shared<GModule>(ambient->group(), ambient->ring(), basis.cols(),
                                         std::move(action), name);
    return SubmoduleResult{mod, ModuleMap(mod, ambient, basis)};
}

SubmoduleResult submodule_from_columns_mod(const ModulePtr& ambient, const ModMatrix& cols,
                                           const std::string& name)
{
    auto basis = free_basis_of_span(cols);
    if (!basis) throw std::invalid_argument("submodule is not free over the ring");
    auto action = induced_action_on_basis(ambient, *basis);
    auto mod = std::make_shared<GModule>(ambient->group(), ambient->ring(), basis->cols(),
                                         std::move(action), name);
    return SubmoduleResult{mod, ModuleMap(mod, ambient, basis->lift())};
}

} // namespace

SubmoduleResult kernel_module(const ModuleMap& f)
{
    if (f.source()->ring().is_integers())
        return submodule_from_columns_z(f.source(), kernel_z(f.matrix()),
                                        "ker(" + f.source()->name() + ")");
    return submodule_from_columns_mod(f.source(), kernel_mod(f.matrix_mod()),
                                      "ker(" + f.source()->name() + ")");
}

SubmoduleResult image_module(const ModuleMap& f)
{
    if (f.source()->ring().is_integers())
        return submodule_from_columns_z(f.target(), column_lattice_basis(f.matrix()),
                                        "im(" + f.source()->name() + ")");
    return submodule_from_columns_mod(f.target(), f.matrix_mod(),
                                      "im(" + f.source()->name() + ")");
}

FiberProductResult fiber_product(const ModuleMap& f, const ModuleMap& g)
{
    if (f.target() != g.target() && f.target()->cache_key() != g.target()->cache_key())
        throw std::invalid_argument("fiber_product: targets differ");
    ModulePtr sum = direct_sum(f.source(), g.source());
    IntMatrix stacked = f.matrix().hstack(g.matrix() * Int(-1));
    ModuleMap combined(sum, f.target(), stacked);
    SubmoduleResult ker = kernel_module(combined);
    const int ra = f.source()->rank();
    IntMatrix incl = ker.include.matrix();
    IntMatrix first(ra, incl.cols()), second(g.source()->rank(), incl.cols());
    for (int c = 0; c < incl.cols(); ++c) {
        for (int r = 0; r < ra; ++r) first.at(r, c) = incl.at(r, c);
        for (int r = 0; r < g.source()->rank(); ++r) second.at(r, c) = incl.at(ra + r, c);
    }
    return FiberProductResult{ker.module, ModuleMap(ker.module, f.source(), first),
                              ModuleMap(ker.module, g.source(), second)};
}

QuotientModuleResult quotient_free(const ModulePtr& ambient, const IntMatrix& relation_cols,
                                   const std::string& name)
{
    const RingSpec ring = ambient->ring();
    const int total = ambient->rank();
    if (relation_cols.rows() != total) throw std::invalid_argument("quotient_free: shape mismatch");

    IntMatrix proj, section;
    int qrank = 0;
    if (ring.is_integers()) {
        SnfResult fac = snf(relation_cols);
        std::vector<int> free_rows;
        const int nmin = std::min(relation_cols.rows(), relation_cols.cols());
        for (int i = 0; i < total; ++i) {
            Int d = i < nmin ? fac.s.at(i, i) : Int(0);
            if (d == 0)
                free_rows.push_back(i);
            else if (d != 1)
                throw std::invalid_argument("quotient_free: integer quotient has torsion");
        }
        qrank = int(free_rows.size());
        proj = IntMatrix(qrank, total);
        section = IntMatrix(total, qrank);
        for (int i = 0; i < qrank; ++i)
            for (int j = 0; j < total; ++j) {
                proj.at(i, j) = fac.u_inv.at(free_rows[i], j);
                section.at(j, i) = fac.u.at(j, free_rows[i]);
            }
    } else {
        const std::int64_t n = ring.modulus;
        SubquotientStructure q =
            quotient_structure(ModMatrix::identity(total, n), ModMatrix::from_int(relation_cols, n));
        for (auto d : q.divisors())
            if (d != n) throw std::invalid_argument("quotient_free: quotient is not free over Z/N");
        qrank = int(q.divisors().size());
        proj = q.project_matrix(ModMatrix::identity(total, n)).lift();
        section = q.rep_basis().lift();
    }
    std::vector<IntMatrix> action;
    for (int a = 0; a < ambient->group()->order(); ++a)
        action.push_back(proj * ambient->action(a) * section);
    auto mod = std::make_shared<GModule>(ambient->group(), ring, qrank, std::move(action), name);
    return QuotientModuleResult{mod, ModuleMap(ambient, mod, proj), section};
}

PushoutResult pushout(const ModuleMap& f, const ModuleMap& g)
{
    if (f.source() != g.source() && f.source()->cache_key() != g.source()->cache_key())
        throw std::invalid_argument("pushout: sources differ");
    ModulePtr sum = direct_sum(f.target(), g.target());
    IntMatrix anti = f.matrix().vstack(g.matrix() * Int(-1));
    QuotientModuleResult q = quotient_free(sum, anti, "pushout");
    const int total = sum->rank();
    IntMatrix ia(total, f.target()->rank()), ib(total, g.target()->rank());
    for (int r = 0; r < f.target()->rank(); ++r) ia.at(r, r) = 1;
    for (int r = 0; r < g.target()->rank(); ++r) ib.at(f.target()->rank() + r, r) = 1;
    return PushoutResult{q.module, ModuleMap(f.target(), q.module, q.project.matrix() * ia),
                         ModuleMap(g.target(), q.module, q.project.matrix() * ib)};
}

ModulePtr restrict_action(const ModulePtr& m, const GroupEmbedding& e)
{
    if (e.target() != m->group()) throw std::invalid_argument("restrict_action: target mismatch");
    std::vector<IntMatrix> action;
    for (int g = 0; g < e.source()->order(); ++g) action.push_back(m->action(e.image_of(g)));
    return std::make_shared<GModule>(e.source(), m->ring(), m->rank(), std::move(action),
                                     m->name() + "|");
}

ModulePtr inflate_action(const ModulePtr& m, const GroupPtr& g,
                         const std::vector<int>& image_in_quotient)
{
    if (int(image_in_quotient.size()) != g->order())
        throw std::invalid_argument("inflate_action: size mismatch");
    std::vector<IntMatrix> action;
    for (int a = 0; a < g->order(); ++a) action.push_back(m->action(image_in_quotient[a]));
    return std::make_shared<GModule>(g, m->ring(), m->rank(), std::move(action),
                                     m->name() + "^infl");
}

SubmoduleResult invariants(const ModulePtr& m)
{
    // kernel of the stacked (rho(g) - I)
    const int order = m->group()->order();
    IntMatrix stacked(m->rank() * order, m->rank());
    for (int g = 0; g < order; ++g) {
        IntMatrix d = m->action(g) - IntMatrix::identity(m->rank());
        for (int r = 0; r < m->rank(); ++r)
            for (int c = 0; c < m->rank(); ++c) stacked.at(g * m->rank() + r, c) = d.at(r, c);
    }
    if (m->ring().is_integers())
        return submodule_from_columns_z(m, kernel_z(stacked), m->name() + "^G");
    return submodule_from_columns_mod(m, kernel_mod(ModMatrix::from_int(stacked, m->ring().modulus)),
                                      m->name() + "^G");
}

QuotientModuleResult coinvariants(const ModulePtr& m)
{
    // cokernel of the span of (rho(g) - I)
    const int order = m->group()->order();
    IntMatrix gens(m->rank(), m->rank() * order);
    for (int g = 0; g < order; ++g) {
        IntMatrix d = m->action(g) - IntMatrix::identity(m->rank());
        for (int r = 0; r < m->rank(); ++r)
            for (int c = 0; c < m->rank(); ++c) gens.at(r, g * m->rank() + c) = d.at(r, c);
    }
    return quotient_free(m, gens, m->name() + "_G");
}

ModuleExtension make_extension(ModuleMap inject, ModuleMap project)
{
    if (inject.target() != project.source() &&
        inject.target()->cache_key() != project.source()->cache_key())
        throw std::invalid_argument("make_extension: middle mismatch");
    ModuleExtension e{inject.source(), inject.target(), project.target(), inject, project};
    // composite zero
    if (!project.compose(inject).is_zero()) throw std::invalid_argument("extension: composite not zero");
    const RingSpec ring = e.left->ring();
    if (ring.is_integers()) {
        if (kernel_z(e.inject.matrix()).cols() != 0)
            throw std::invalid_argument("extension: inject not injective");
        SnfResult f = snf(e.project.matrix());
        if (f.rank != e.right->rank()) throw std::invalid_argument("extension: project not surjective");
        for (int i = 0; i < f.rank; ++i)
            if (f.s.at(i, i) != 1) throw std::invalid_argument("extension: project not surjective");
    } else {
        if (kernel_mod(e.inject.matrix_mod()).cols() != 0)
            throw std::invalid_argument("extension: inject not injective");
        ModMatrix img = howell(e.project.matrix_mod().transpose());
        if (!(img == ModMatrix::identity(e.right->rank(), ring.modulus)))
            throw std::invalid_argument("extension: project not surjective");
        if (e.middle->rank() != e.left->rank() + e.right->rank())
            throw std::invalid_argument("extension: rank bookkeeping |N| = |A| |D| fails");
    }
    return e;
}

} // namespace qcoh
