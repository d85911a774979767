#include "qcoh/cohomology.hpp"

#include "qcoh/embedding.hpp"

#include <sstream>

namespace qcoh {

CohomologyGroup::CohomologyGroup(std::shared_ptr<const CochainComplex> complex, int degree,
                                 SubquotientStructure structure)
    : complex_(std::move(complex)), degree_(degree), structure_(std::move(structure)),
      finab_(structure_.divisors())
{
}

std::vector<std::int64_t> CohomologyGroup::representative(const std::vector<std::int64_t>& coords) const
{
    return structure_.representative(coords);
}

std::vector<std::int64_t> CohomologyGroup::rep_of_basis(int i) const
{
    std::vector<std::int64_t> coords(divisors().size(), 0);
    coords[i] = 1;
    return structure_.representative(coords);
}

std::vector<std::int64_t> CohomologyGroup::project(const std::vector<std::int64_t>& cocycle) const
{
    return structure_.project(cocycle);
}

std::shared_ptr<const CochainComplex> CohomologyContext::complex_of(const GroupPtr& g,
                                                                    const ModulePtr& m)
{
    std::ostringstream key;
    key << g.get() << '#' << m->cache_key();
    auto it = complex_cache_.find(key.str());
    if (it != complex_cache_.end()) return it->second;
    auto c = std::make_shared<CochainComplex>(g, m);
    complex_cache_.emplace(key.str(), c);
    return c;
}

CohomPtr CohomologyContext::cohomology(const GroupPtr& g, const ModulePtr& m, int n)
{
    std::ostringstream key;
    key << g.get() << '#' << n << '#' << m->cache_key();
    auto it = cache_.find(key.str());
    if (it != cache_.end()) return it->second;

    if (g->order() > opts_.group_order_cap)
        throw ResourceLimitError("cohomology: group order exceeds the cap");
    if (n > opts_.degree_cap) throw ResourceLimitError("cohomology: degree exceeds the cap");
    auto complex = complex_of(g, m);
    if (complex->dim(n + 1) > opts_.dim_ceiling)
        throw ResourceLimitError("cohomology: cochain dimension exceeds the ceiling");

    const std::int64_t nmod = m->ring().modulus;
    const std::int64_t dim_n = complex->dim(n);

    // kernel of d^n from the streamed rows
    RowSpan span(nmod, int(dim_n));
    complex->coboundary_rows(n, [&](const SparseRow& row) { span.add_sparse(row); });
    ModMatrix ker = span.kernel();

    // image of d^{n-1} columnwise
    ModMatrix im(int(dim_n), 0, nmod);
    if (n > 0) {
        const std::int64_t dim_prev = complex->dim(n - 1);
        im = ModMatrix(int(dim_n), int(dim_prev), nmod);
        std::vector<std::int64_t> basis(dim_prev, 0);
        for (std::int64_t c = 0; c < dim_prev; ++c) {
            basis[c] = 1;
            auto img = complex->coboundary(n - 1, basis);
            basis[c] = 0;
            for (std::int64_t r = 0; r < dim_n; ++r) im.at(int(r), int(c)) = img[r];
        }
    }
    auto group = std::make_shared<CohomologyGroup>(complex, n, quotient_structure(ker, im));
    cache_.emplace(key.str(), group);
    return group;
}

CohomologyMap CohomologyContext::map_from_cochain(
    const CohomPtr& src, const CohomPtr& tgt,
    const std::function<std::vector<std::int64_t>(const std::vector<std::int64_t>&)>& f)
{
    const int s = int(src->divisors().size());
    IntMatrix m(int(tgt->divisors().size()), s);
    for (int i = 0; i < s; ++i) {
        auto image = f(src->rep_of_basis(i));
        // image must be a cocycle in the target complex
        auto d = tgt->complex()->coboundary(tgt->degree(), image);
        for (auto v : d)
            if (v != 0) throw std::logic_error("map_from_cochain: image is not a cocycle");
        auto coords = tgt->project(image);
        for (std::size_t r = 0; r < coords.size(); ++r) m.at(int(r), i) = coords[r];
    }
    return CohomologyMap{src, tgt, FinAbMap(src->group_structure(), tgt->group_structure(), m)};
}

CohomologyMap CohomologyContext::induced(const ModuleMap& f, int n)
{
    CohomPtr src = cohomology(f.source()->group(), f.source(), n);
    CohomPtr tgt = cohomology(f.target()->group(), f.target(), n);
    ModMatrix fm = f.matrix_mod();
    const int r1 = f.source()->rank(), r2 = f.target()->rank();
    const std::int64_t nmod = f.source()->ring().modulus;
    return map_from_cochain(src, tgt, [=](const std::vector<std::int64_t>& x) {
        const std::int64_t tuples = std::int64_t(x.size()) / r1;
        std::vector<std::int64_t> y(tuples * r2, 0);
        for (std::int64_t t = 0; t < tuples; ++t)
            for (int i = 0; i < r2; ++i) {
                std::int64_t acc = 0;
                for (int j = 0; j < r1; ++j) acc += fm.at(i, j) * x[t * r1 + j];
                y[t * r2 + i] = acc % nmod;
            }
        return y;
    });
}

CohomologyMap CohomologyContext::res(const Subgroup& h, const ModulePtr& m, int n)
{
    GroupPtr big = h.parent();
    GroupPtr small = h.as_group();
    ModulePtr mh = restrict_action(m, embed_subgroup(h));
    CohomPtr src = cohomology(big, m, n);
    CohomPtr tgt = cohomology(small, mh, n);
    auto big_complex = src->complex();
    auto small_complex = tgt->complex();
    const int rank = m->rank();
    return map_from_cochain(src, tgt, [=, &h](const std::vector<std::int64_t>& x) {
        const std::int64_t tuples = small_complex->dim(n) / rank;
        std::vector<std::int64_t> y(small_complex->dim(n));
        std::vector<int> tup;
        for (std::int64_t t = 0; t < tuples; ++t) {
            tup = small_complex->tuple_of(n, t);
            std::vector<int> gt(tup.size());
            for (std::size_t i = 0; i < tup.size(); ++i) gt[i] = h.elements()[tup[i]];
            std::int64_t flat = big_complex->flat_of(gt);
            for (int r = 0; r < rank; ++r) y[t * rank + r] = x[flat * rank + r];
        }
        return y;
    });
}

CohomologyMap CohomologyContext::cor(const Subgroup& h, const ModulePtr& m, int n)
{
    GroupPtr big = h.parent();
    GroupPtr small = h.as_group();
    ModulePtr mh = restrict_action(m, embed_subgroup(h));
    CohomPtr src = cohomology(small, mh, n);
    CohomPtr tgt = cohomology(big, m, n);
    auto big_complex = tgt->complex();
    auto small_complex = src->complex();
    const int rank = m->rank();
    const std::int64_t nmod = m->ring().modulus;

    return map_from_cochain(src, tgt, [=, &h](const std::vector<std::int64_t>& x) {
        const std::int64_t tuples = big_complex->dim(n) / rank;
        std::vector<std::int64_t> y(big_complex->dim(n), 0);
        std::vector<int> tup(n);
        for (std::int64_t t = 0; t < tuples; ++t) {
            tup = big_complex->tuple_of(n, t);
            for (int rep : h.coset_reps()) {
                // walk the tuple right to left, rewriting with coset
                // representatives: r_n = rep, r_{i-1} = rep(g_i r_i)
                std::vector<int> args(n);
                int r_right = rep;
                bool normalized_zero = false;
                for (int i = n - 1; i >= 0; --i) {
                    int moved = big->mul(tup[i], r_right);
                    int r_left = h.coset_rep_of(moved);
                    int arg = big->mul(big->inverse(r_left), moved);
                    if (arg == 0) normalized_zero = true;
                    args[i] = arg;
                    r_right = r_left;
                }
                if (normalized_zero) continue;
                // value = r_0 . x(args) with args read in subgroup indexing
                std::vector<int> sub_args(n);
                for (int i = 0; i < n; ++i) sub_args[i] = h.position(args[i]);
                std::int64_t flat = small_complex->flat_of(sub_args);
                const IntMatrix& rho = m->action(r_right);
                for (int r = 0; r < rank; ++r) {
                    std::int64_t acc = 0;
                    for (int c = 0; c < rank; ++c) {
                        Int v = rho.at(r, c) % nmod;
                        if (v < 0) v += nmod;
                        acc += v.convert_to<std::int64_t>() * x[flat * rank + c];
                    }
                    y[t * rank + r] = (y[t * rank + r] + acc) % nmod;
                }
            }
        }
        return y;
    });
}

CohomologyMap CohomologyContext::connecting(const ModuleMap& inject, const ModuleMap& project, int n)
{
    const ModulePtr x = inject.source();
    const ModulePtr yy = inject.target();
    const ModulePtr z = project.target();
    if (project.source() != yy) throw std::invalid_argument("connecting: middle mismatch");
    const std::int64_t nmod = x->ring().modulus;

    // exactness of the triple
    {
        ModMatrix comp = project.matrix_mod() * inject.matrix_mod();
        if (!comp.is_zero()) throw std::invalid_argument("connecting: not a complex");
        if (!same_column_span(inject.matrix_mod(), kernel_mod(project.matrix_mod())))
            throw std::invalid_argument("connecting: triple is not exact");
        if (!(howell(project.matrix_mod().transpose()) == ModMatrix::identity(z->rank(), nmod)))
            throw std::invalid_argument("connecting: projection is not surjective");
    }

    CohomPtr src = cohomology(z->group(), z, n);
    CohomPtr tgt = cohomology(x->group(), x, n + 1);
    auto yc = complex_of(yy->group(), yy);
    LinearSolverMod lift_solver(project.matrix_mod());
    LinearSolverMod pull_solver(inject.matrix_mod());
    const int rz = z->rank(), ry = yy->rank(), rx = x->rank();

    return map_from_cochain(src, tgt, [=](const std::vector<std::int64_t>& f) {
        // lift along the projection with the canonical set-section
        const std::int64_t tuples = std::int64_t(f.size()) / rz;
        std::vector<std::int64_t> lifted(tuples * ry, 0);
        std::vector<std::int64_t> val(rz);
        for (std::int64_t t = 0; t < tuples; ++t) {
            for (int r = 0; r < rz; ++r) val[r] = f[t * rz + r];
            auto pre = lift_solver.solve(val);
            if (!pre) throw std::logic_error("connecting: lift failed");
            for (int r = 0; r < ry; ++r) lifted[t * ry + r] = (*pre)[r];
        }
        auto dy = yc->coboundary(n, lifted);
        // pull back along the injection
        const std::int64_t out_tuples = std::int64_t(dy.size()) / ry;
        std::vector<std::int64_t> out(out_tuples * rx);
        std::vector<std::int64_t> w(ry);
        for (std::int64_t t = 0; t < out_tuples; ++t) {
            for (int r = 0; r < ry; ++r) w[r] = dy[t * ry + r];
            auto back = pull_solver.solve(w);
            if (!back) throw std::logic_error("connecting: pullback failed (exactness)");
            for (int r = 0; r < rx; ++r) out[t * rx + r] = (*back)[r];
        }
        return out;
    });
}

CohomologyMap CohomologyContext::bockstein(const GroupPtr& g, const ModulePtr& m2, int n)
{
    BocksteinTriple triple = bockstein_triple(m2);
    const std::int64_t m = triple.m;
    CohomPtr src = cohomology(g, triple.m1, n);
    CohomPtr tgt = cohomology(g, triple.m1, n + 1);
    auto c2 = complex_of(g, m2);

    return map_from_cochain(src, tgt, [=](const std::vector<std::int64_t>& f) {
        // entrywise lift into [0, m) inside Z/m^2, coboundary there, divide by m
        std::vector<std::int64_t> lifted(f.begin(), f.end());
        auto d = c2->coboundary(n, lifted);
        std::vector<std::int64_t> out(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] % m != 0) throw std::logic_error("bockstein: coboundary not divisible by m");
            out[i] = (d[i] / m) % m;
        }
        return out;
    });
}

bool CohomologyContext::bockstein_vanishes(const GroupPtr& g, const ModulePtr& m2, int n)
{
    return bockstein(g, m2, n).is_zero();
}

CohomologyMap CohomologyContext::connecting_bockstein(const BocksteinTriple& t, int n)
{
    const GroupPtr g = t.m2->group();
    const std::int64_t m = t.m, n2 = m * m;
    CohomPtr src = cohomology(g, t.m1, n);
    CohomPtr tgt = cohomology(g, t.m1, n + 1);
    auto c2 = complex_of(g, t.m2);

    return map_from_cochain(src, tgt, [=](const std::vector<std::int64_t>& f) {
        // lift along pi: the canonical set-section picks residues in [0, m)
        std::vector<std::int64_t> lifted(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) lifted[i] = mod_reduce(f[i], m);
        auto d = c2->coboundary(n, lifted);
        // pull back along tau = m * id: solve m x = d_i over Z/m^2
        std::vector<std::int64_t> out(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            auto q = divide_mod(d[i], m, n2);
            if (!q) throw std::logic_error("connecting_bockstein: not divisible");
            out[i] = mod_reduce(*q, m);
        }
        return out;
    });
}

CohomologyMap CohomologyContext::cup1(const std::vector<std::int64_t>& u_values, const ModulePtr& m,
                                      int n)
{
    const GroupPtr g = m->group();
    if (int(u_values.size()) != g->order()) throw std::invalid_argument("cup1: size mismatch");
    const std::int64_t nmod = m->ring().modulus;
    if (u_values[0] % nmod != 0) throw std::invalid_argument("cup1: u not normalized at identity");
    // u must be a 1-cocycle with trivial coefficients: u(gh) = u(g) + u(h)
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            if (mod_reduce(u_values[g->mul(a, b)] - u_values[a] - u_values[b], nmod) != 0)
                throw std::invalid_argument("cup1: u is not a homomorphism");

    CohomPtr src = cohomology(g, m, n);
    CohomPtr tgt = cohomology(g, m, n + 1);
    auto complex = src->complex();
    const int rank = m->rank();

    return map_from_cochain(src, tgt, [=](const std::vector<std::int64_t>& c) {
        const std::int64_t tuples = tgt->complex()->dim(n + 1) / rank;
        std::vector<std::int64_t> out(tuples * rank, 0);
        for (std::int64_t t = 0; t < tuples; ++t) {
            auto tup = tgt->complex()->tuple_of(n + 1, t);
            std::int64_t u = mod_reduce(u_values[tup[0]], nmod);
            if (u == 0) continue;
            std::vector<int> rest(tup.begin() + 1, tup.end());
            std::int64_t flat = complex->flat_of(rest);
            const ModMatrix rho = m->action_mod(tup[0]);
            for (int r = 0; r < rank; ++r) {
                std::int64_t acc = 0;
                for (int cidx = 0; cidx < rank; ++cidx)
                    acc += rho.at(r, cidx) * c[flat * rank + cidx];
                out[t * rank + r] = u * (acc % nmod) % nmod;
            }
        }
        return out;
    });
}

std::vector<FinAbMap> CohomologyContext::sigma_action(const Subgroup& h, const ModulePtr& m, int n)
{
    if (!is_normal(h)) throw std::invalid_argument("sigma_action: subgroup must be normal");
    GroupPtr big = h.parent();
    GroupPtr small = h.as_group();
    ModulePtr mh = restrict_action(m, embed_subgroup(h));
    CohomPtr coh = cohomology(small, mh, n);
    auto complex = coh->complex();
    const int rank = m->rank();
    const std::int64_t nmod = m->ring().modulus;

    std::vector<FinAbMap> out;
    for (int rep : h.coset_reps()) {
        // (sigma . c)(h_1, ..., h_n) = s . c(s^-1 h_1 s, ..., s^-1 h_n s)
        auto act = [&, rep](const std::vector<std::int64_t>& c) {
            const std::int64_t tuples = complex->dim(n) / rank;
            std::vector<std::int64_t> y(complex->dim(n));
            const int sinv = big->inverse(rep);
            const ModMatrix rho = ModMatrix::from_int(m->action(rep), nmod);
            for (std::int64_t t = 0; t < tuples; ++t) {
                auto tup = complex->tuple_of(n, t);
                std::vector<int> conj(tup.size());
                for (std::size_t i = 0; i < tup.size(); ++i) {
                    int gelt = h.elements()[tup[i]];
                    int c2 = big->mul(big->mul(sinv, gelt), rep);
                    conj[i] = h.position(c2);
                }
                std::int64_t flat = complex->flat_of(conj);
                for (int r = 0; r < rank; ++r) {
                    std::int64_t acc = 0;
                    for (int cx = 0; cx < rank; ++cx) acc += rho.at(r, cx) * c[flat * rank + cx];
                    y[t * rank + r] = acc % nmod;
                }
            }
            return y;
        };
        out.push_back(map_from_cochain(coh, coh, act).map);
    }
    return out;
}

FinAbSubgroup CohomologyContext::sigma_invariants(const Subgroup& h, const ModulePtr& m, int n)
{
    auto action = sigma_action(h, m, n);
    const FinAb& parent = action.front().source();
    FinAbMap id = FinAbMap::identity(parent);
    // kernel of all (sigma - 1) at once
    FinAbMap stacked = action.front() - id;
    for (std::size_t i = 1; i < action.size(); ++i)
        stacked = FinAbMap::block_col(stacked, action[i] - id);
    return subgroup_from_generators(parent, stacked.kernel_generators());
}

FinAbQuotient CohomologyContext::sigma_coinvariants(const Subgroup& h, const ModulePtr& m, int n)
{
    auto action = sigma_action(h, m, n);
    const FinAb& parent = action.front().source();
    FinAbMap id = FinAbMap::identity(parent);
    IntMatrix gens(parent.rank(), 0);
    for (const auto& a : action) gens = gens.hstack((a - id).matrix());
    return quotient_by_generators(parent, gens);
}

CohomologyMap CohomologyContext::shapiro(const Subgroup& h, const ModulePtr& coset_tensor_m,
                                         const ModulePtr& m, int n)
{
    GroupPtr big = h.parent();
    GroupPtr small = h.as_group();
    ModulePtr mh = restrict_action(m, embed_subgroup(h));
    CohomPtr src = cohomology(big, coset_tensor_m, n);
    CohomPtr tgt = cohomology(small, mh, n);
    auto big_complex = src->complex();
    auto small_complex = tgt->complex();
    const int rank = m->rank();
    const int big_rank = coset_tensor_m->rank();
    if (big_rank != h.index() * rank)
        throw std::invalid_argument("shapiro: coefficients are not Z[G/H] (x) M");

    CohomologyMap out = map_from_cochain(src, tgt, [=, &h](const std::vector<std::int64_t>& x) {
        const std::int64_t tuples = small_complex->dim(n) / rank;
        std::vector<std::int64_t> y(small_complex->dim(n));
        for (std::int64_t t = 0; t < tuples; ++t) {
            auto tup = small_complex->tuple_of(n, t);
            std::vector<int> gt(tup.size());
            for (std::size_t i = 0; i < tup.size(); ++i) gt[i] = h.elements()[tup[i]];
            std::int64_t flat = big_complex->flat_of(gt);
            // identity-coset block: coordinates [0, rank)
            for (int r = 0; r < rank; ++r) y[t * rank + r] = x[flat * big_rank + r];
        }
        return y;
    });
    if (!(out.map.injective() && out.map.surjective()))
        throw std::logic_error("shapiro: evaluation map is not an isomorphism");
    return out;
}

} // namespace qcoh
