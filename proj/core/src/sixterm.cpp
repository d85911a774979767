#include "qcoh/sixterm.hpp"

#include <map>
#include <set>
#include <sstream>

namespace qcoh {

namespace {

/// Dense linear system over Z/N for matrix-valued unknowns.
struct ModSystem {
    std::int64_t n;
    int unknowns;
    std::vector<std::int64_t> entries;
    std::vector<std::int64_t> rhs;
    int rows = 0;

    ModSystem(std::int64_t n_, int unknowns_) : n(n_), unknowns(unknowns_) {}

    std::int64_t* new_row(std::int64_t b)
    {
        entries.resize(entries.size() + unknowns, 0);
        rhs.push_back(mod_reduce(b, n));
        ++rows;
        return &entries[entries.size() - unknowns];
    }

    std::optional<std::vector<std::int64_t>> solve() const
    {
        ModMatrix a(rows, unknowns, n, entries);
        LinearSolverMod solver(a);
        return solver.solve(rhs);
    }
};

std::int64_t int_to_mod(const Int& v, std::int64_t n)
{
    Int r = v % n;
    if (r < 0) r += n;
    return r.convert_to<std::int64_t>();
}

} // namespace

std::optional<IntMatrix> equivariant_section(const ModuleMap& proj)
{
    const ModulePtr p = proj.source();
    const ModulePtr d = proj.target();
    const std::int64_t n = p->ring().modulus;
    const int rp = p->rank(), rd = d->rank();
    ModSystem sys(n, rp * rd);
    auto at = [rd](int i, int j) { return i * rd + j; };
    // proj o s = I
    for (int i = 0; i < rd; ++i)
        for (int l = 0; l < rd; ++l) {
            auto* row = sys.new_row(i == l ? 1 : 0);
            for (int j = 0; j < rp; ++j) row[at(j, l)] = int_to_mod(proj.matrix().at(i, j), n);
        }
    // equivariance on generators
    std::vector<int> gens = p->group()->generators();
    if (gens.empty())
        for (int g = 1; g < p->group()->order(); ++g) gens.push_back(g);
    for (int g : gens)
        for (int i = 0; i < rp; ++i)
            for (int l = 0; l < rd; ++l) {
                auto* row = sys.new_row(0);
                for (int j = 0; j < rd; ++j)
                    row[at(i, j)] =
                        mod_reduce(row[at(i, j)] + int_to_mod(d->action(g).at(j, l), n), n);
                for (int j = 0; j < rp; ++j)
                    row[at(j, l)] =
                        mod_reduce(row[at(j, l)] - int_to_mod(p->action(g).at(i, j), n), n);
            }
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    IntMatrix s(rp, rd);
    for (int i = 0; i < rp; ++i)
        for (int j = 0; j < rd; ++j) s.at(i, j) = (*sol)[at(i, j)];
    return s;
}

TripleWithHomotopy make_triple(ModuleMap i2, ModuleMap p2, ModuleMap h_yx, ModuleMap h_zy,
                               std::int64_t m)
{
    const std::int64_t n2 = m * m;
    if (i2.source()->ring().modulus != n2)
        throw std::invalid_argument("make_triple: modules must live over Z/m^2");
    if (!(p2.matrix_mod() * i2.matrix_mod()).is_zero())
        throw std::invalid_argument("make_triple: p o i != 0");
    if (kernel_mod(i2.matrix_mod()).cols() != 0)
        throw std::invalid_argument("make_triple: i not injective");
    if (!same_column_span(i2.matrix_mod(), kernel_mod(p2.matrix_mod())))
        throw std::invalid_argument("make_triple: im(i) != ker(p)");
    if (!(howell(p2.matrix_mod().transpose()) == ModMatrix::identity(p2.target()->rank(), n2)))
        throw std::invalid_argument("make_triple: p not surjective");
    auto ident = [&](const ModulePtr& mod) { return IntMatrix::identity(mod->rank()) * Int(m); };
    auto zero2 = [&](const IntMatrix& a) { return ModMatrix::from_int(a, n2).is_zero(); };
    if (!zero2(h_yx.matrix() * i2.matrix() - ident(i2.source())))
        throw std::invalid_argument("make_triple: homotopy fails at X");
    if (!zero2(i2.matrix() * h_yx.matrix() + h_zy.matrix() * p2.matrix() - ident(i2.target())))
        throw std::invalid_argument("make_triple: homotopy fails at Y");
    if (!zero2(p2.matrix() * h_zy.matrix() - ident(p2.target())))
        throw std::invalid_argument("make_triple: homotopy fails at Z");

    ModulePtr x1 = reduce_mod(i2.source(), m);
    ModulePtr y1 = reduce_mod(i2.target(), m);
    ModulePtr z1 = reduce_mod(p2.target(), m);
    ModuleMap i1(x1, y1, i2.matrix());
    ModuleMap p1(y1, z1, p2.matrix());
    ModuleMap h_yx1(y1, x1, h_yx.matrix());
    ModuleMap h_zy1(z1, y1, h_zy.matrix());

    // h_XZ: compose the reduced homotopy with any linear section of p1
    // (free Z/m modules split); independent of the section because h_yx1
    // kills im(i1)
    LinearSolverMod sec(p1.matrix_mod());
    auto section = sec.solve_matrix(ModMatrix::identity(z1->rank(), m));
    if (!section) throw std::logic_error("make_triple: no linear section of p1");
    ModuleMap h_xz(z1, x1, (h_yx1.matrix_mod() * *section).lift());

    if (!ModMatrix::from_int(h_xz.matrix() * p1.matrix() - h_yx1.matrix(), m).is_zero())
        throw std::logic_error("make_triple: h_XZ o p1 != h1");
    if (!ModMatrix::from_int(i1.matrix() * h_xz.matrix() + h_zy1.matrix(), m).is_zero())
        throw std::logic_error("make_triple: i1 o h_XZ != -h1");

    return TripleWithHomotopy{m,
                              std::move(i2),
                              std::move(p2),
                              std::move(h_yx),
                              std::move(h_zy),
                              x1,
                              y1,
                              z1,
                              std::move(i1),
                              std::move(p1),
                              std::move(h_yx1),
                              std::move(h_zy1),
                              std::move(h_xz)};
}

SplitQuadruple split_quadruple(const ExactQuadruple& qz, const TensoredQuadruple& q)
{
    const std::int64_t m = q.m, n2 = m * m;
    // integer image basis of d_BC and the integral factorization d_BC = incl o p
    SubmoduleResult lz = image_module(qz.d_bc());
    const IntMatrix& incl = lz.include.matrix();
    IntMatrix p_z(lz.module->rank(), qz.module(1)->rank());
    for (int c = 0; c < qz.module(1)->rank(); ++c) {
        auto sol = solve_z(incl, qz.d_bc().matrix().col(c));
        if (!sol) throw std::logic_error("split_quadruple: image factorization failed");
        for (int r = 0; r < lz.module->rank(); ++r) p_z.at(r, c) = sol->at(r, 0);
    }

    ModulePtr l2 = tensor(reduce_mod(lz.module, n2), q.coeff);
    const int t_rank = q.coeff->rank();
    auto tensor_matrix = [&](const IntMatrix& a) {
        IntMatrix k(a.rows() * t_rank, a.cols() * t_rank);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) {
                if (a.at(i, j) == 0) continue;
                for (int p = 0; p < t_rank; ++p) k.at(i * t_rank + p, j * t_rank + p) = a.at(i, j);
            }
        return k;
    };

    ModuleMap p2(q.modules[1], l2, tensor_matrix(p_z));
    ModuleMap i2(l2, q.modules[2], tensor_matrix(incl));

    if (!q.homotopy) throw std::invalid_argument("split_quadruple: homotopy required");
    const auto& h = *q.homotopy;

    // induced homotopies: (h_BA, h_CB o i2) on the first triple and
    // (p2 o h_CB, h_DC) on the second
    ModuleMap h1_zy(l2, q.modules[1], h.h_cb.matrix() * i2.matrix());
    ModuleMap h2_yx(q.modules[2], l2, p2.matrix() * h.h_cb.matrix());

    TripleWithHomotopy first = make_triple(q.diffs[0], p2, h.h_ba, std::move(h1_zy), m);
    TripleWithHomotopy second = make_triple(i2, q.diffs[2], std::move(h2_yx), h.h_dc, m);
    return SplitQuadruple{l2, std::move(first), std::move(second)};
}

bool degree_shift_identity(CohomologyContext& ctx, const TripleWithHomotopy& t, int n)
{
    CohomologyMap delta = ctx.connecting(t.i1, t.p1, n);
    CohomologyMap beta_x = ctx.bockstein(t.x2()->group(), t.x2(), n);
    CohomologyMap beta_z = ctx.bockstein(t.z2()->group(), t.z2(), n);
    CohomologyMap h_n = ctx.induced(t.h_xz, n);
    CohomologyMap h_n1 = ctx.induced(t.h_xz, n + 1);
    FinAbMap rhs = beta_x.map.compose(h_n.map) - h_n1.map.compose(beta_z.map);
    return delta.map.equal_to(rhs);
}

Int triple_max_order(const TripleWithHomotopy& t)
{
    Int m2 = Int(t.m) * t.m;
    Int best = 1;
    for (const ModulePtr& mod : {t.x2(), t.y2(), t.z2()}) {
        Int order = 1;
        for (int i = 0; i < mod->rank(); ++i) order *= m2;
        if (order > best) best = order;
    }
    return best;
}

namespace {

using Vec = std::vector<std::int64_t>;

Vec apply_int(const IntMatrix& m, const Vec& x, std::int64_t mod)
{
    Vec y(m.rows(), 0);
    for (int r = 0; r < m.rows(); ++r) {
        Int acc = 0;
        for (int c = 0; c < m.cols(); ++c) acc += m.at(r, c) * x[c];
        y[r] = int_to_mod(acc, mod);
    }
    return y;
}

Vec concat(const Vec& a, const Vec& b)
{
    Vec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<Vec> all_vectors(int r, std::int64_t n)
{
    std::vector<Vec> out;
    Vec v(r, 0);
    for (;;) {
        out.push_back(v);
        int i = 0;
        while (i < r && ++v[i] == n) v[i++] = 0;
        if (i == r) break;
    }
    return out;
}

} // namespace

bool degree_shift_extension_check(const TripleWithHomotopy& t)
{
    const std::int64_t m = t.m, n2 = m * m;
    const int rx = t.x2()->rank(), ry = t.y2()->rank(), rz = t.z2()->rank();
    const GroupPtr g = t.x2()->group();

    // FP = X2 x_{X1} Z1: pairs (x2, z1) with x2 mod m = h_xz(z1)
    std::map<Vec, int> fp_index;
    std::vector<Vec> fp_elems; // concatenated (x2 | z1)
    for (const Vec& z1 : all_vectors(rz, m)) {
        Vec base = apply_int(t.h_xz.matrix(), z1, m);
        for (const Vec& tt : all_vectors(rx, m)) {
            Vec x2(rx);
            for (int i = 0; i < rx; ++i) x2[i] = mod_reduce(base[i] + m * tt[i], n2);
            Vec e = concat(x2, z1);
            fp_index.emplace(e, int(fp_elems.size()));
            fp_elems.push_back(e);
        }
    }

    // PO = (X1 (+) Z2) / {(h_xz z, -tau z)}; the relators form a subgroup,
    // so one pass of minimization finds the canonical coset representative
    std::vector<Vec> relators;
    for (const Vec& z : all_vectors(rz, m)) {
        Vec hx = apply_int(t.h_xz.matrix(), z, m);
        Vec tz(rz);
        for (int i = 0; i < rz; ++i) tz[i] = mod_reduce(-m * z[i], n2);
        relators.push_back(concat(hx, tz));
    }
    auto po_canon = [&](const Vec& v) {
        Vec best = v;
        for (const Vec& r : relators) {
            Vec w(rx + rz);
            for (int i = 0; i < rx; ++i) w[i] = (v[i] + r[i]) % m;
            for (int i = 0; i < rz; ++i) w[rx + i] = (v[rx + i] + r[rx + i]) % n2;
            if (w < best) best = w;
        }
        return best;
    };

    auto po_pr = [&](const Vec& po) {
        Vec z1(rz);
        for (int i = 0; i < rz; ++i) z1[i] = po[rx + i] % m;
        return z1;
    };
    auto fp_pr = [&](const Vec& fp) { return Vec(fp.begin() + rx, fp.end()); };

    std::map<Vec, std::vector<Vec>> po_by_pr;
    {
        std::set<Vec> seen;
        for (const Vec& x1 : all_vectors(rx, m))
            for (const Vec& z2 : all_vectors(rz, n2)) {
                Vec rep = po_canon(concat(x1, z2));
                if (seen.insert(rep).second) po_by_pr[po_pr(rep)].push_back(rep);
            }
    }

    // K = kernel of (fp, po) -> pr(fp) - pr(po)
    struct KElem {
        int fp;
        Vec po;
    };
    std::map<std::pair<int, Vec>, int> k_index;
    std::vector<KElem> k_elems;
    for (std::size_t f = 0; f < fp_elems.size(); ++f) {
        auto it = po_by_pr.find(fp_pr(fp_elems[f]));
        if (it == po_by_pr.end()) continue;
        for (const Vec& rep : it->second) {
            k_index.emplace(std::make_pair(int(f), rep), int(k_elems.size()));
            k_elems.push_back({int(f), rep});
        }
    }

    // image of X1 -> K: x -> ((tau x, 0), [(x, 0)])
    std::set<int> image;
    for (const Vec& x : all_vectors(rx, m)) {
        Vec tx(rx);
        for (int i = 0; i < rx; ++i) tx[i] = mod_reduce(m * x[i], n2);
        Vec fp = concat(tx, Vec(rz, 0));
        Vec po = po_canon(concat(x, Vec(rz, 0)));
        auto fit = fp_index.find(fp);
        if (fit == fp_index.end()) return false;
        auto kit = k_index.find({fit->second, po});
        if (kit == k_index.end()) return false;
        image.insert(kit->second);
    }
    {
        Int expected = 1;
        for (int i = 0; i < rx; ++i) expected *= m;
        if (Int(std::int64_t(image.size())) != expected) return false; // iota must be injective
    }

    auto k_add = [&](int a_idx, int b_idx) {
        const KElem& a = k_elems[a_idx];
        const KElem& b = k_elems[b_idx];
        Vec fp(rx + rz);
        for (int i = 0; i < rx; ++i) fp[i] = (fp_elems[a.fp][i] + fp_elems[b.fp][i]) % n2;
        for (int i = 0; i < rz; ++i) fp[rx + i] = (fp_elems[a.fp][rx + i] + fp_elems[b.fp][rx + i]) % m;
        Vec po(rx + rz);
        for (int i = 0; i < rx; ++i) po[i] = (a.po[i] + b.po[i]) % m;
        for (int i = 0; i < rz; ++i) po[rx + i] = (a.po[rx + i] + b.po[rx + i]) % n2;
        return k_index.at({fp_index.at(fp), po_canon(po)});
    };
    std::map<int, int> class_of;
    for (int k = 0; k < int(k_elems.size()); ++k) {
        if (class_of.count(k)) continue;
        int min_rep = k;
        std::vector<int> members;
        for (int img : image) {
            int other = k_add(k, img);
            members.push_back(other);
            min_rep = std::min(min_rep, other);
        }
        for (int mem : members) class_of[mem] = min_rep;
    }
    std::set<int> class_ids;
    for (auto& [k, c] : class_of) class_ids.insert(c);
    Int y1_order = 1;
    for (int i = 0; i < ry; ++i) y1_order *= m;
    if (Int(std::int64_t(class_ids.size())) != y1_order) return false;

    // f(y1) = (h(y2), p1(y1)) (+) [(h1(y1), p(y2))], all lifts y2 agreeing
    auto f_of = [&](const Vec& y1, const Vec& lift_offset) -> std::optional<int> {
        Vec y2(ry);
        for (int i = 0; i < ry; ++i) y2[i] = (y1[i] + m * lift_offset[i]) % n2;
        Vec hy2 = apply_int(t.h_yx.matrix(), y2, n2);
        Vec p1y1 = apply_int(t.p1.matrix(), y1, m);
        auto fit = fp_index.find(concat(hy2, p1y1));
        if (fit == fp_index.end()) return std::nullopt;
        Vec h1y1 = apply_int(t.h_yx1.matrix(), y1, m);
        Vec py2 = apply_int(t.p2.matrix(), y2, n2);
        Vec po = po_canon(concat(h1y1, py2));
        auto kit = k_index.find({fit->second, po});
        if (kit == k_index.end()) return std::nullopt;
        return class_of.at(kit->second);
    };

    std::map<Vec, int> f_value;
    for (const Vec& y1 : all_vectors(ry, m)) {
        std::optional<int> cls;
        for (const Vec& off : all_vectors(ry, m)) {
            auto v = f_of(y1, off);
            if (!v) return false;
            if (!cls)
                cls = v;
            else if (*cls != *v)
                return false;
        }
        f_value[y1] = *cls;
    }
    std::set<int> hit;
    for (auto& [y, c] : f_value) hit.insert(c);
    if (hit.size() != f_value.size()) return false;
    if (Int(std::int64_t(hit.size())) != y1_order) return false;

    std::map<int, int> class_rep;
    for (auto& [k, c] : class_of)
        if (!class_rep.count(c)) class_rep[c] = k;

    std::vector<int> gens = g->generators();
    if (gens.empty())
        for (int a = 1; a < g->order(); ++a) gens.push_back(a);
    auto k_act = [&](int gelt, int k) {
        const KElem& e = k_elems[k];
        Vec x2(fp_elems[e.fp].begin(), fp_elems[e.fp].begin() + rx);
        Vec z1v(fp_elems[e.fp].begin() + rx, fp_elems[e.fp].end());
        Vec fp = concat(apply_int(t.x2()->action(gelt), x2, n2),
                        apply_int(t.z1->action(gelt), z1v, m));
        Vec x1v(e.po.begin(), e.po.begin() + rx);
        Vec z2v(e.po.begin() + rx, e.po.end());
        Vec po = po_canon(concat(apply_int(t.x1->action(gelt), x1v, m),
                                 apply_int(t.z2()->action(gelt), z2v, n2)));
        return class_of.at(k_index.at({fp_index.at(fp), po}));
    };
    for (const auto& [y1, cls] : f_value)
        for (int gelt : gens) {
            Vec gy = apply_int(t.y1->action(gelt), y1, m);
            if (f_value.at(gy) != k_act(gelt, class_rep.at(cls))) return false;
        }

    // structural maps.  The homology module is the Baer difference of the
    // two composed extensions: its left map sends x to the class of
    // (iota_FP(x), 0) -- the diagonal (iota_FP x, iota_PO x) is exactly what
    // was quotiented out.  f o i1 must match that left map.
    for (const Vec& x : all_vectors(rx, m)) {
        Vec i1x = apply_int(t.i1.matrix(), x, m);
        Vec tx(rx);
        for (int i = 0; i < rx; ++i) tx[i] = mod_reduce(m * x[i], n2);
        int k = k_index.at(
            {fp_index.at(concat(tx, Vec(rz, 0))), po_canon(Vec(rx + rz, 0))});
        if (f_value.at(i1x) != class_of.at(k)) return false;
    }
    for (const auto& [y1, cls] : f_value) {
        const KElem& e = k_elems[class_rep.at(cls)];
        if (fp_pr(fp_elems[e.fp]) != apply_int(t.p1.matrix(), y1, m)) return false;
    }
    return true;
}

NExtensionResult build_n_extension(CohomologyContext& ctx, const ExactQuadruple& qz,
                                   const TensoredQuadruple& q, int n)
{
    SplitQuadruple split = split_quadruple(qz, q);
    const std::int64_t m = q.m;

    const ModuleMap& h_ld = split.second.h_xz; // D1 -> L1
    const ModuleMap& h_al = split.first.h_xz;  // L1 -> A1
    ModuleMap p1_bl = split.first.p1;          // B1 -> L1

    FiberProductResult fp = fiber_product(p1_bl, h_ld);
    ModulePtr a1 = split.first.x1;
    ModulePtr d1 = split.second.z1;
    IntMatrix stacked = fp.to_first.matrix().vstack(fp.to_second.matrix());
    IntMatrix rhs = split.first.i1.matrix().vstack(IntMatrix(d1->rank(), a1->rank()));
    LinearSolverMod sol(ModMatrix::from_int(stacked, m));
    auto inj_mat = sol.solve_matrix(ModMatrix::from_int(rhs, m));
    if (!inj_mat) throw std::logic_error("build_n_extension: injection does not factor");
    ModuleMap inject(a1, fp.module, inj_mat->lift());
    ModuleExtension ext = make_extension(inject, fp.to_second);

    NExtensionResult out{std::move(ext),
                         h_ld,
                         h_al,
                         false,
                         false,
                         false,
                         false,
                         CohomologyMap{}};

    // pushout along A1 -> B1 splits: build the induced projection to D1 and
    // look for an equivariant section
    {
        PushoutResult po = pushout(out.ext.inject, split.first.i1);
        const int rpo = po.module->rank();
        ModSystem sys(m, rpo * d1->rank());
        auto at = [&](int i, int j) { return i * d1->rank() + j; };
        for (int c = 0; c < out.ext.middle->rank(); ++c)
            for (int i = 0; i < d1->rank(); ++i) {
                auto* row = sys.new_row(int_to_mod(out.ext.project.matrix().at(i, c), m));
                for (int j = 0; j < rpo; ++j)
                    row[at(j, i)] = int_to_mod(po.from_first.matrix().at(j, c), m);
            }
        for (int c = 0; c < split.first.y1->rank(); ++c)
            for (int i = 0; i < d1->rank(); ++i) {
                auto* row = sys.new_row(0);
                for (int j = 0; j < rpo; ++j)
                    row[at(j, i)] = int_to_mod(po.from_second.matrix().at(j, c), m);
            }
        auto pim = sys.solve();
        if (!pim) throw std::logic_error("build_n_extension: pushout projection missing");
        IntMatrix pimat(d1->rank(), rpo);
        for (int i = 0; i < d1->rank(); ++i)
            for (int j = 0; j < rpo; ++j) pimat.at(i, j) = (*pim)[at(j, i)];
        ModuleMap pi_hat(po.module, d1, pimat);
        out.pushout_splits = equivariant_section(pi_hat).has_value();
    }
    // pullback along C1 -> D1 splits
    {
        ModuleMap p1_cd = split.second.p1; // C1 -> D1
        FiberProductResult pb = fiber_product(out.ext.project, p1_cd);
        out.pullback_splits = equivariant_section(pb.to_second).has_value();
    }

    out.nu = ctx.connecting(out.ext.inject, out.ext.project, n);
    CohomologyMap delta_al = ctx.connecting(split.first.i1, split.first.p1, n);
    CohomologyMap delta_ld = ctx.connecting(split.second.i1, split.second.p1, n);
    CohomologyMap h_ld_n = ctx.induced(out.h_ld, n);
    CohomologyMap h_al_n1 = ctx.induced(out.h_al, n + 1);
    out.nu_equals_delta_hld = out.nu.map.equal_to(delta_al.map.compose(h_ld_n.map));
    out.nu_equals_minus_hal_delta =
        out.nu.map.equal_to(h_al_n1.map.compose(delta_ld.map).scaled(-1));
    return out;
}

SixTermReport six_term(CohomologyContext& ctx, const ExactQuadruple& q, const ModulePtr& t2,
                       int n)
{
    ExactQuadruple qh = ensure_homotopy(q);
    TensoredQuadruple t = tensor_with(qh, t2, qh.homotopy()->scalar);
    if (!verify_tensored(t)) throw std::logic_error("six_term: tensored quadruple invalid");
    const std::int64_t m = t.m;

    SixTermReport rep;
    rep.m = m;
    rep.degree = n;
    rep.quadruple_name = q.name();
    std::ostringstream details;

    // Bockstein gates, cheap modules first so a failing gate short-circuits
    // before the expensive cohomology of B and C
    const int order_of_check[4] = {0, 3, 1, 2};
    bool gates = true;
    for (int idx : order_of_check) {
        bool v = ctx.bockstein_vanishes(t.group, t.modules[idx], n);
        rep.bockstein_vanishes[idx] = v;
        if (!v) {
            gates = false;
            details << "bockstein nonzero for module " << "ABCD"[idx] << "; ";
            break;
        }
    }
    rep.gates_passed = gates;
    if (!gates) {
        rep.details = details.str();
        return rep;
    }

    NExtensionResult next = build_n_extension(ctx, qh, t, n);
    rep.n_extension_ok = next.pushout_splits && next.pullback_splits &&
                         next.nu_equals_delta_hld && next.nu_equals_minus_hal_delta;
    if (!rep.n_extension_ok) details << "N-extension invariants failed; ";

    ModulePtr a1 = reduce_mod(t.modules[0], m);
    ModulePtr b1 = reduce_mod(t.modules[1], m);
    ModulePtr c1 = reduce_mod(t.modules[2], m);
    ModulePtr d1 = reduce_mod(t.modules[3], m);
    ModulePtr bd = direct_sum(b1, d1);
    ModulePtr ac = direct_sum(a1, c1);

    ModuleMap d_bc1(b1, c1, t.diffs[1].matrix());
    ModuleMap d_cd1(c1, d1, t.diffs[2].matrix());
    ModuleMap d_ab1(a1, b1, t.diffs[0].matrix());
    ModuleMap h_dc1(d1, c1, t.homotopy->h_dc.matrix());
    ModuleMap h_ba1(b1, a1, t.homotopy->h_ba.matrix());

    ModuleMap map1_mod(bd, c1, d_bc1.matrix().hstack(h_dc1.matrix()));
    ModuleMap map5_mod(b1, ac, h_ba1.matrix().vstack(d_bc1.matrix()));

    CohomologyMap m1 = ctx.induced(map1_mod, n);
    CohomologyMap m2 = ctx.induced(d_cd1, n);
    CohomologyMap m3 = next.nu;
    CohomologyMap m4 = ctx.induced(d_ab1, n + 1);
    CohomologyMap m5 = ctx.induced(map5_mod, n + 1);

    rep.groups = {m1.source->group_structure(), m2.source->group_structure(),
                  m3.source->group_structure(), m4.source->group_structure(),
                  m5.source->group_structure(), m5.target->group_structure()};
    rep.maps = {m1.map, m2.map, m3.map, m4.map, m5.map};

    rep.exact_at_interior[0] = exact_at(m1.map, m2.map).exact;
    rep.exact_at_interior[1] = exact_at(m2.map, m3.map).exact;
    rep.exact_at_interior[2] = exact_at(m3.map, m4.map).exact;
    rep.exact_at_interior[3] = exact_at(m4.map, m5.map).exact;
    for (int i = 0; i < 4; ++i)
        if (!rep.exact_at_interior[i]) details << "not exact at interior position " << i << "; ";
    rep.details = details.str();
    return rep;
}

NuIndependenceResult nu_independence(CohomologyContext& ctx, const ExactQuadruple& q,
                                     const HomotopyTriple& h1, const HomotopyTriple& h2,
                                     const ModulePtr& t2, int n)
{
    if (h1.scalar != h2.scalar) throw std::invalid_argument("nu_independence: scalar mismatch");
    ExactQuadruple q1 = q.with_homotopy(h1);
    ExactQuadruple q2 = q.with_homotopy(h2);
    if (!verify(q1).homotopy_ok.value_or(false) || !verify(q2).homotopy_ok.value_or(false))
        throw std::invalid_argument("nu_independence: homotopy does not verify");

    TensoredQuadruple t1 = tensor_with(q1, t2, h1.scalar);
    TensoredQuadruple t2q = tensor_with(q2, t2, h2.scalar);
    NExtensionResult n1 = build_n_extension(ctx, q1, t1, n);
    NExtensionResult n2 = build_n_extension(ctx, q2, t2q, n);

    NuIndependenceResult out;
    out.nu_equal = n1.nu.map.equal_to(n2.nu.map);

    out.applicable_extension_check =
        q.module(0)->is_permutational() && q.module(3)->is_permutational();
    if (out.applicable_extension_check) {
        const ModulePtr na = n1.ext.middle;
        const ModulePtr nb = n2.ext.middle;
        const std::int64_t m = t1.m;
        ModSystem sys(m, nb->rank() * na->rank());
        auto at = [&](int i, int j) { return i * na->rank() + j; }; // phi[i][j]: na -> nb
        // phi o inj1 = inj2
        for (int c = 0; c < n1.ext.left->rank(); ++c)
            for (int i = 0; i < nb->rank(); ++i) {
                auto* row = sys.new_row(int_to_mod(n2.ext.inject.matrix().at(i, c), m));
                for (int j = 0; j < na->rank(); ++j)
                    row[at(i, j)] = int_to_mod(n1.ext.inject.matrix().at(j, c), m);
            }
        // proj2 o phi = proj1
        for (int c = 0; c < na->rank(); ++c)
            for (int i = 0; i < n1.ext.right->rank(); ++i) {
                auto* row = sys.new_row(int_to_mod(n1.ext.project.matrix().at(i, c), m));
                for (int j = 0; j < nb->rank(); ++j)
                    row[at(j, c)] = mod_reduce(
                        row[at(j, c)] + int_to_mod(n2.ext.project.matrix().at(i, j), m), m);
            }
        // equivariance
        std::vector<int> gens = q.group()->generators();
        if (gens.empty())
            for (int g = 1; g < q.group()->order(); ++g) gens.push_back(g);
        for (int g : gens)
            for (int i = 0; i < nb->rank(); ++i)
                for (int l = 0; l < na->rank(); ++l) {
                    auto* row = sys.new_row(0);
                    for (int j = 0; j < na->rank(); ++j)
                        row[at(i, j)] =
                            mod_reduce(row[at(i, j)] + int_to_mod(na->action(g).at(j, l), m), m);
                    for (int j = 0; j < nb->rank(); ++j)
                        row[at(j, l)] =
                            mod_reduce(row[at(j, l)] - int_to_mod(nb->action(g).at(i, j), m), m);
                }
        auto phi = sys.solve();
        if (phi) {
            ModMatrix pm(nb->rank(), na->rank(), m);
            for (int i = 0; i < nb->rank(); ++i)
                for (int j = 0; j < na->rank(); ++j) pm.at(i, j) = (*phi)[at(i, j)];
            out.extensions_isomorphic =
                kernel_mod(pm).cols() == 0 &&
                howell(pm.transpose()) == ModMatrix::identity(nb->rank(), m);
        }
    }
    return out;
}

} // namespace qcoh
