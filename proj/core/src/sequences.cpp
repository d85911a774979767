#include "qcoh/sequences.hpp"

#include "qcoh/catalog.hpp"

#include <sstream>

namespace qcoh {

namespace {

Subgroup subgroup_of_elements(const GroupPtr& g, const std::vector<int>& elements)
{
    return Subgroup(g, elements);
}

/// L as a subgroup of K.as_group(), for nested subgroups L <= K of a parent.
Subgroup nested_subgroup(const Subgroup& k, const std::vector<int>& l_elements_in_parent)
{
    std::vector<int> positions;
    for (int e : l_elements_in_parent) {
        int p = k.position(e);
        if (p < 0) throw std::invalid_argument("nested_subgroup: element outside the subgroup");
        positions.push_back(p);
    }
    return Subgroup(k.as_group(), positions);
}

ModulePtr restrict_to(const Subgroup& h, const ModulePtr& m)
{
    return restrict_action(m, embed_subgroup(h));
}

/// res from a subgroup's own group to a nested subgroup, as a map between
/// the cohomology over k.as_group() and over the nested group.
CohomologyMap res_nested(CohomologyContext& ctx, const Subgroup& k, const Subgroup& l_in_k,
                         const ModulePtr& m, int n)
{
    return ctx.res(l_in_k, restrict_to(k, m), n);
}

CohomologyMap cor_nested(CohomologyContext& ctx, const Subgroup& k, const Subgroup& l_in_k,
                         const ModulePtr& m, int n)
{
    return ctx.cor(l_in_k, restrict_to(k, m), n);
}

} // namespace

std::vector<std::int64_t> quotient_character(const Subgroup& l_in_k, std::int64_t m)
{
    GroupPtr k = l_in_k.parent();
    if (!is_normal(l_in_k)) throw std::invalid_argument("quotient_character: kernel not normal");
    GroupPtr q = quotient_group(l_in_k);
    const int d = q->order();
    if (m % d != 0) throw std::invalid_argument("quotient_character: order does not divide m");
    // canonical generator: the minimal-index element of full order
    int gen = -1;
    for (int a = 1; a < d; ++a)
        if (q->element_order(a) == d) {
            gen = a;
            break;
        }
    if (gen < 0 && d > 1) throw std::invalid_argument("quotient_character: quotient not cyclic");
    std::vector<int> exponent(d, 0);
    if (d > 1) {
        int x = 0;
        for (int e = 0; e < d; ++e) {
            exponent[x] = e;
            x = q->mul(x, gen);
        }
    }
    std::vector<std::int64_t> u(k->order(), 0);
    for (int g = 0; g < k->order(); ++g) u[g] = (m / d) * exponent[coset_index(l_in_k, g)] % m;
    return u;
}

SequenceReport cyclic_quotient_sequence(CohomologyContext& ctx, const Subgroup& h, std::int64_t m,
                                        const ModulePtr& t2, int n)
{
    const GroupPtr g = h.parent();
    SequenceReport rep;
    rep.m = m;
    rep.degree = n;
    rep.name = "cyclic-quotient over " + g->name();
    std::ostringstream details;

    if (!is_normal(h)) throw std::invalid_argument("cyclic_quotient_sequence: H must be normal");
    GroupPtr sigma = quotient_group(h);
    const int k = sigma->order();
    if (m % k != 0) throw std::invalid_argument("cyclic_quotient_sequence: k must divide m");
    {
        bool cyclic = false;
        for (int a = 0; a < k; ++a)
            if (sigma->element_order(a) == k) cyclic = true;
        if (k == 1) cyclic = true;
        if (!cyclic) throw std::invalid_argument("cyclic_quotient_sequence: quotient not cyclic");
    }
    const std::int64_t scale = m / k;

    ModulePtr t1 = reduce_mod(t2, m);
    ModulePtr t2h = restrict_to(h, t2);

    rep.bockstein_gates.push_back({"G", ctx.bockstein_vanishes(g, t2, n)});
    rep.bockstein_gates.push_back({"H", ctx.bockstein_vanishes(h.as_group(), t2h, n)});
    rep.gates_passed = rep.bockstein_gates[0].second && rep.bockstein_gates[1].second;

    // groups and maps of the display
    CohomologyMap res_n = ctx.res(h, t1, n);
    CohomologyMap cor_n = ctx.cor(h, t1, n);
    CohomologyMap res_n1 = ctx.res(h, t1, n + 1);
    CohomologyMap cor_n1 = ctx.cor(h, t1, n + 1);
    FinAbQuotient coin = ctx.sigma_coinvariants(h, t1, n);
    FinAbSubgroup inv = ctx.sigma_invariants(h, t1, n + 1);

    std::vector<std::int64_t> u = quotient_character(h, m);
    CohomologyMap cup = ctx.cup1(u, t1, n);

    FinAbMap map1 = coin.project.compose(res_n.map).scaled(scale);
    FinAbMap map2 = descend_to_quotient(cor_n.map, coin);
    FinAbMap map3 = cup.map;
    FinAbMap map4 = corestrict_to_subgroup(res_n1.map, inv);
    FinAbMap map5 = restrict_to_subgroup(cor_n1.map, inv).scaled(scale);

    rep.groups = {map1.source(), map2.source(), map3.source(),
                  map4.source(), map5.source(), map5.target()};
    rep.maps = {map1, map2, map3, map4, map5};
    rep.exact_at = {exact_at(map1, map2).exact, exact_at(map2, map3).exact,
                    exact_at(map3, map4).exact, exact_at(map4, map5).exact};
    for (std::size_t i = 0; i < rep.exact_at.size(); ++i)
        if (!rep.exact_at[i]) details << "not exact at interior position " << i << "; ";
    rep.details = details.str();
    return rep;
}

TowerSequenceReports cyclic_tower_sequences(CohomologyContext& ctx, const Subgroup& h,
                                            std::int64_t m, const ModulePtr& t2, int n)
{
    const GroupPtr g = h.parent();
    if (!is_normal(h)) throw std::invalid_argument("cyclic_tower_sequences: H must be normal");
    GroupPtr sigma = quotient_group(h);
    const int k = sigma->order();
    if (k % m != 0) throw std::invalid_argument("cyclic_tower_sequences: m must divide k");

    // K = preimage of the order-m subgroup Pi of Sigma
    int gen = -1;
    for (int a = 1; a < k; ++a)
        if (sigma->element_order(a) == k) {
            gen = a;
            break;
        }
    if (gen < 0) throw std::invalid_argument("cyclic_tower_sequences: quotient not cyclic");
    int pi_gen = 0;
    for (int i = 0; i < k / int(m); ++i) pi_gen = sigma->mul(pi_gen, gen);
    std::vector<int> k_elements;
    for (int a = 0; a < g->order(); ++a) {
        // image of a in Sigma lies in <pi_gen>?
        int img = coset_index(h, a);
        int x = 0;
        bool in_pi = false;
        for (std::int64_t i = 0; i < m; ++i) {
            if (x == img) in_pi = true;
            x = sigma->mul(x, pi_gen);
        }
        if (in_pi) k_elements.push_back(a);
    }
    Subgroup ksub = subgroup_of_elements(g, k_elements);
    Subgroup h_in_k = nested_subgroup(ksub, h.elements());

    ModulePtr t1 = reduce_mod(t2, m);
    ModulePtr t1k = restrict_to(ksub, t1);
    ModulePtr t2k = restrict_to(ksub, t2);

    TowerSequenceReports out;
    std::ostringstream d1s, d2s;
    out.first.name = "tower-first over " + g->name();
    out.second.name = "tower-second over " + g->name();
    out.first.m = out.second.m = m;
    out.first.degree = out.second.degree = n;

    // gates: G, H, K
    bool bg = ctx.bockstein_vanishes(g, t2, n);
    bool bh = ctx.bockstein_vanishes(h.as_group(), restrict_to(h, t2), n);
    bool bk = ctx.bockstein_vanishes(ksub.as_group(), t2k, n);
    for (auto* rep : {&out.first, &out.second}) {
        rep->bockstein_gates = {{"G", bg}, {"H", bh}, {"K", bk}};
        rep->gates_passed = bg && bh && bk;
    }

    // u in H^1(K, Z/m): the character K -> Pi = K/H
    std::vector<std::int64_t> u = quotient_character(h_in_k, m);

    FinAbQuotient coin_h = ctx.sigma_coinvariants(h, t1, n);           // H^n(H)_Sigma
    FinAbQuotient coin_k = ctx.sigma_coinvariants(ksub, t1, n);        // H^n(K)_{Sigma/Pi}
    FinAbSubgroup inv_h = ctx.sigma_invariants(h, t1, n + 1);          // H^{n+1}(H)^Sigma
    FinAbSubgroup inv_k = ctx.sigma_invariants(ksub, t1, n + 1);       // H^{n+1}(K)^{Sigma/Pi}

    CohomologyMap cor_hk_n = cor_nested(ctx, ksub, h_in_k, t1, n);
    CohomologyMap cor_hk_n1 = cor_nested(ctx, ksub, h_in_k, t1, n + 1);
    CohomologyMap res_kh_n = res_nested(ctx, ksub, h_in_k, t1, n);
    CohomologyMap res_kh_n1 = res_nested(ctx, ksub, h_in_k, t1, n + 1);
    CohomologyMap cup_k = ctx.cup1(u, t1k, n);
    CohomologyMap cor_kg = ctx.cor(ksub, t1, n + 1);
    CohomologyMap res_gh_n1 = ctx.res(h, t1, n + 1);
    CohomologyMap res_gk_n = ctx.res(ksub, t1, n);
    CohomologyMap cor_hg_n = ctx.cor(h, t1, n);
    CohomologyMap cup_k_after_res = ctx.cup1(u, t1k, n);

    // first display:
    // H^n(H)_S --cor--> H^n(K)_{S/P} --cor o u cup--> H^{n+1}(G)
    //   --res--> H^{n+1}(H)^S --cor--> H^{n+1}(K)^{S/P}
    {
        FinAbMap m1 = descend_to_quotient(coin_k.project.compose(cor_hk_n.map), coin_h);
        FinAbMap m2 = descend_to_quotient(cor_kg.map.compose(cup_k.map), coin_k);
        FinAbMap m3 = corestrict_to_subgroup(res_gh_n1.map, inv_h);
        FinAbMap m4r = corestrict_to_subgroup(restrict_to_subgroup(cor_hk_n1.map, inv_h), inv_k);
        out.first.groups = {m1.source(), m2.source(), m3.source(), m4r.source(), m4r.target()};
        out.first.maps = {m1, m2, m3, m4r};
        out.first.exact_at = {exact_at(m1, m2).exact, exact_at(m2, m3).exact,
                              exact_at(m3, m4r).exact};
    }
    // second display:
    // H^n(K)_{S/P} --res--> H^n(H)_S --cor--> H^n(G)
    //   --u cup o res--> H^{n+1}(K)^{S/P} --res--> H^{n+1}(H)^S
    {
        FinAbMap m1 = descend_to_quotient(coin_h.project.compose(res_kh_n.map), coin_k);
        FinAbMap m2 = descend_to_quotient(cor_hg_n.map, coin_h);
        FinAbMap m3 =
            corestrict_to_subgroup(cup_k_after_res.map.compose(res_gk_n.map), inv_k);
        FinAbMap m4 = corestrict_to_subgroup(restrict_to_subgroup(res_kh_n1.map, inv_k), inv_h);
        out.second.groups = {m1.source(), m2.source(), m3.source(), m4.source(), m4.target()};
        out.second.maps = {m1, m2, m3, m4};
        out.second.exact_at = {exact_at(m1, m2).exact, exact_at(m2, m3).exact,
                               exact_at(m3, m4).exact};
    }
    for (std::size_t i = 0; i < out.first.exact_at.size(); ++i) {
        if (!out.first.exact_at[i]) d1s << "first not exact at " << i << "; ";
        if (!out.second.exact_at[i]) d2s << "second not exact at " << i << "; ";
    }
    out.first.details = d1s.str();
    out.second.details = d2s.str();

    // Shapiro-transport agreement: the six-term nu of the sigma quadruple
    // inflated to G corresponds to cor_{K -> G} o (u cup) under the
    // evaluation isomorphism H^n(G, Z[G/K] (x) T) = H^n(K, T)
    {
        ExactQuadruple qs = catalog_build("sigma", k, int(m));
        // inflate along G -> Sigma; sigma quadruple lives over cyclic(k),
        // whose element indexing is the power of the canonical generator
        std::vector<int> to_quotient(g->order());
        std::vector<int> power_of(k);
        {
            int x = 0;
            for (int e = 0; e < k; ++e) {
                power_of[x] = e;
                x = sigma->mul(x, gen);
            }
        }
        for (int a = 0; a < g->order(); ++a) to_quotient[a] = power_of[coset_index(h, a)];
        std::array<ModulePtr, 4> mods;
        for (int i = 0; i < 4; ++i) mods[i] = inflate_action(qs.module(i), g, to_quotient);
        ModuleMap dab(mods[0], mods[1], qs.d_ab().matrix());
        ModuleMap dbc(mods[1], mods[2], qs.d_bc().matrix());
        ModuleMap dcd(mods[2], mods[3], qs.d_cd().matrix());
        ExactQuadruple qg(qs.name() + "^infl", dab, dbc, dcd, std::nullopt, m, {});
        auto hsol = solve_homotopy(qg, m);
        if (hsol) {
            ExactQuadruple qgh = qg.with_homotopy(*hsol);
            TensoredQuadruple tq = tensor_with(qgh, t2, m);
            NExtensionResult next = build_n_extension(ctx, qgh, tq, n);
            // D1 = Z[G/K] (x) T1 and A1 = T1; transport nu through shapiro
            ModulePtr d1mod = reduce_mod(tq.modules[3], m);
            CohomologyMap shap = ctx.shapiro(ksub, d1mod, t1, n);
            // cor o (u cup): H^n(K) -> H^{n+1}(G)
            FinAbMap direct = cor_kg.map.compose(cup_k.map);
            // shapiro source coordinates -> K coordinates: nu o shap^{-1} vs direct
            // compare nu = direct o shap (both H^n(G, D1) -> H^{n+1}(G, T1))
            FinAbMap via_shap = direct.compose(shap.map);
            if (next.nu.map.equal_to(via_shap)) {
                out.nu_agrees_with_shapiro = true;
                out.nu_shapiro_sign = 1;
            } else if (next.nu.map.equal_to(via_shap.scaled(-1))) {
                out.nu_agrees_with_shapiro = true;
                out.nu_shapiro_sign = -1;
            }
        }

        // dual route: for the dual quadruple, D* = Z and A* = Z[G/K], so nu
        // runs H^n(G, T1) -> H^{n+1}(G, Z[G/K] (x) T1) and corresponds to
        // (u cup) o res under the evaluation isomorphism at degree n + 1
        ExactQuadruple qd = dualize(qs);
        std::array<ModulePtr, 4> dmods;
        for (int i = 0; i < 4; ++i) dmods[i] = inflate_action(qd.module(i), g, to_quotient);
        ModuleMap ddab(dmods[0], dmods[1], qd.d_ab().matrix());
        ModuleMap ddbc(dmods[1], dmods[2], qd.d_bc().matrix());
        ModuleMap ddcd(dmods[2], dmods[3], qd.d_cd().matrix());
        ExactQuadruple qdg(qd.name() + "^infl", ddab, ddbc, ddcd, std::nullopt, m, {});
        auto hdual = solve_homotopy(qdg, m);
        if (hdual) {
            ExactQuadruple qdgh = qdg.with_homotopy(*hdual);
            TensoredQuadruple tq = tensor_with(qdgh, t2, m);
            NExtensionResult next = build_n_extension(ctx, qdgh, tq, n);
            ModulePtr a1mod = reduce_mod(tq.modules[0], m);
            CohomologyMap shap1 = ctx.shapiro(ksub, a1mod, t1, n + 1);
            FinAbMap direct = cup_k_after_res.map.compose(res_gk_n.map);
            FinAbMap via_shap = shap1.map.compose(next.nu.map);
            if (via_shap.equal_to(direct)) {
                out.dual_nu_agrees_with_shapiro = true;
                out.dual_nu_shapiro_sign = 1;
            } else if (via_shap.equal_to(direct.scaled(-1))) {
                out.dual_nu_agrees_with_shapiro = true;
                out.dual_nu_shapiro_sign = -1;
            }
        }
    }
    return out;
}

SequenceReport dihedral_sequence_first(CohomologyContext& ctx, int k, const ModulePtr& t2, int n)
{
    if (k % 4 != 0) throw std::invalid_argument("dihedral_sequence_first: 4 | k required");
    GroupPtr gamma = build_dihedral(k);
    if (t2->group() != gamma) throw std::invalid_argument("dihedral_sequence_first: wrong group");
    const std::int64_t n2 = t2->ring().modulus;
    std::int64_t m = 1;
    while (m * m < n2) ++m;
    ModulePtr t1 = reduce_mod(t2, m);

    GSet verts = vertices_gset(gamma, k);
    GSet edges = edges_gset(gamma, k);
    Subgroup pi(gamma, {k / 2});
    GSet vp = orbits_mod(pi, verts);
    GSet ep = orbits_mod(pi, edges);

    Subgroup lp(gamma, verts.stabilizer(0));   // L' = Stab(v0)
    Subgroup lpp(gamma, edges.stabilizer(0));  // L'' = Stab(e0)
    Subgroup kp(gamma, vp.stabilizer(0));      // K' = Stab([v0])
    Subgroup kpp(gamma, ep.stabilizer(0));     // K'' = Stab([e0])
    Subgroup esub = pi;                        // E <-> Pi
    Subgroup msub(gamma, {});                  // M <-> trivial subgroup

    SequenceReport rep;
    rep.name = "dihedral-first over " + gamma->name();
    rep.m = m;
    rep.degree = n;
    std::ostringstream details;

    // gates: all the named subgroups
    const std::pair<std::string, const Subgroup*> gate_list[] = {
        {"F", nullptr}, {"L'", &lp}, {"L''", &lpp}, {"K'", &kp}, {"K''", &kpp}, {"E", &esub}};
    bool gates = ctx.bockstein_vanishes(gamma, t2, n);
    rep.bockstein_gates.push_back({"F", gates});
    for (auto& [tag, sub] : gate_list) {
        if (!sub) continue;
        bool v = ctx.bockstein_vanishes(sub->as_group(), restrict_to(*sub, t2), n);
        rep.bockstein_gates.push_back({tag, v});
        gates = gates && v;
    }
    rep.gates_passed = gates;

    // nested pieces
    Subgroup lpp_in_kpp = nested_subgroup(kpp, lpp.elements());
    Subgroup e_in_kpp = nested_subgroup(kpp, esub.elements());
    Subgroup e_in_kp = nested_subgroup(kp, esub.elements());
    Subgroup m_in_lpp = nested_subgroup(lpp, msub.elements());
    Subgroup m_in_lp = nested_subgroup(lp, msub.elements());
    Subgroup lp_in_kp = nested_subgroup(kp, lp.elements());

    // map 1: H^n(L'') (+) H^n(K') -> H^n(K'')
    CohomologyMap cor_lpp_kpp = cor_nested(ctx, kpp, lpp_in_kpp, t1, n);
    CohomologyMap res_kp_e = res_nested(ctx, kp, e_in_kp, t1, n);
    CohomologyMap cor_e_kpp = cor_nested(ctx, kpp, e_in_kpp, t1, n);
    FinAbMap m1 = FinAbMap::block_row(cor_lpp_kpp.map, cor_e_kpp.map.compose(res_kp_e.map));

    // map 2: cor_{K''->F} o (u_{L''/K''} cup -)
    std::vector<std::int64_t> u = quotient_character(lpp_in_kpp, m);
    CohomologyMap cup = ctx.cup1(u, restrict_to(kpp, t1), n);
    CohomologyMap cor_kpp_g = ctx.cor(kpp, t1, n + 1);
    FinAbMap m2 = cor_kpp_g.map.compose(cup.map);

    // map 3: res_{F -> L'}
    CohomologyMap res_lp = ctx.res(lp, t1, n + 1);
    FinAbMap m3 = res_lp.map;

    // map 4: (cor_{M->L''} o res_{M->L'}, cor_{L'->K'})
    CohomologyMap res_lp_m = res_nested(ctx, lp, m_in_lp, t1, n + 1);
    CohomologyMap cor_m_lpp = cor_nested(ctx, lpp, m_in_lpp, t1, n + 1);
    CohomologyMap cor_lp_kp = cor_nested(ctx, kp, lp_in_kp, t1, n + 1);
    FinAbMap m4 = FinAbMap::block_col(cor_m_lpp.map.compose(res_lp_m.map), cor_lp_kp.map);

    rep.groups = {m1.source(), m2.source(), m3.source(), m4.source(), m4.target()};
    rep.maps = {m1, m2, m3, m4};
    rep.exact_at = {exact_at(m1, m2).exact, exact_at(m2, m3).exact, exact_at(m3, m4).exact};
    for (std::size_t i = 0; i < rep.exact_at.size(); ++i)
        if (!rep.exact_at[i]) details << "not exact at interior position " << i << "; ";
    rep.details = details.str();
    return rep;
}

SequenceReport dihedral_sequence_second(CohomologyContext& ctx, int k, const ModulePtr& t2, int n)
{
    if (k % 2 != 0) throw std::invalid_argument("dihedral_sequence_second: even k required");
    GroupPtr gamma = build_dihedral(k);
    if (t2->group() != gamma) throw std::invalid_argument("dihedral_sequence_second: wrong group");
    const std::int64_t n2 = t2->ring().modulus;
    std::int64_t m = 1;
    while (m * m < n2) ++m;
    ModulePtr t1 = reduce_mod(t2, m);

    GSet verts = vertices_gset(gamma, k);
    GSet edges = edges_gset(gamma, k);
    Subgroup pi(gamma, {k / 2});
    GSet vp = orbits_mod(pi, verts);
    GSet ep = orbits_mod(pi, edges);

    Subgroup lp(gamma, verts.stabilizer(0));
    Subgroup lpp(gamma, edges.stabilizer(0));
    Subgroup kp(gamma, vp.stabilizer(0));
    Subgroup kpp(gamma, ep.stabilizer(0));
    Subgroup esub = pi;
    Subgroup msub(gamma, {});

    SequenceReport rep;
    rep.name = "dihedral-second over " + gamma->name();
    rep.m = m;
    rep.degree = n;
    std::ostringstream details;

    bool gates = ctx.bockstein_vanishes(gamma, t2, n);
    rep.bockstein_gates.push_back({"F", gates});
    for (auto& [tag, sub] : std::vector<std::pair<std::string, const Subgroup*>>{
             {"L'", &lp}, {"L''", &lpp}, {"K'", &kp}, {"K''", &kpp}, {"E", &esub}}) {
        bool v = ctx.bockstein_vanishes(sub->as_group(), restrict_to(*sub, t2), n);
        rep.bockstein_gates.push_back({tag, v});
        gates = gates && v;
    }
    rep.gates_passed = gates;

    Subgroup lp_in_kp = nested_subgroup(kp, lp.elements());
    Subgroup lpp_in_kpp = nested_subgroup(kpp, lpp.elements());
    Subgroup e_in_kp = nested_subgroup(kp, esub.elements());
    Subgroup e_in_kpp = nested_subgroup(kpp, esub.elements());

    // map 1: cor^4 : H^n(L') (+) H^n(L'') (+) H^n(E) -> H^n(K') (+) H^n(K'')
    CohomologyMap cor_lp_kp = cor_nested(ctx, kp, lp_in_kp, t1, n);
    CohomologyMap cor_lpp_kpp = cor_nested(ctx, kpp, lpp_in_kpp, t1, n);
    CohomologyMap cor_e_kp = cor_nested(ctx, kp, e_in_kp, t1, n);
    CohomologyMap cor_e_kpp = cor_nested(ctx, kpp, e_in_kpp, t1, n);
    FinAbMap zero_lpp_kp = FinAbMap::zero(cor_lpp_kpp.map.source(), cor_lp_kp.map.target());
    FinAbMap zero_lp_kpp = FinAbMap::zero(cor_lp_kp.map.source(), cor_lpp_kpp.map.target());
    FinAbMap row1 = FinAbMap::block_row(FinAbMap::block_row(cor_lp_kp.map, zero_lpp_kp),
                                        cor_e_kp.map);
    FinAbMap row2 = FinAbMap::block_row(FinAbMap::block_row(zero_lp_kpp, cor_lpp_kpp.map),
                                        cor_e_kpp.map);
    FinAbMap m1 = FinAbMap::block_col(row1, row2);

    // map 2: sum of cor_{K^(i) -> F} o (u_i cup -)
    std::vector<std::int64_t> up = quotient_character(lp_in_kp, m);
    std::vector<std::int64_t> upp = quotient_character(lpp_in_kpp, m);
    CohomologyMap cup_p = ctx.cup1(up, restrict_to(kp, t1), n);
    CohomologyMap cup_pp = ctx.cup1(upp, restrict_to(kpp, t1), n);
    CohomologyMap cor_kp_g = ctx.cor(kp, t1, n + 1);
    CohomologyMap cor_kpp_g = ctx.cor(kpp, t1, n + 1);
    FinAbMap m2 = FinAbMap::block_row(cor_kp_g.map.compose(cup_p.map),
                                      cor_kpp_g.map.compose(cup_pp.map));

    // map 3: res_{F -> M}
    CohomologyMap res_m = ctx.res(msub, t1, n + 1);
    FinAbMap m3 = res_m.map;

    // map 4: cor^3 from H^{n+1}(M)
    Subgroup m_in_lp = nested_subgroup(lp, msub.elements());
    Subgroup m_in_lpp = nested_subgroup(lpp, msub.elements());
    Subgroup m_in_e = nested_subgroup(esub, msub.elements());
    CohomologyMap cor_m_lp = cor_nested(ctx, lp, m_in_lp, t1, n + 1);
    CohomologyMap cor_m_lpp = cor_nested(ctx, lpp, m_in_lpp, t1, n + 1);
    CohomologyMap cor_m_e = cor_nested(ctx, esub, m_in_e, t1, n + 1);
    FinAbMap m4 = FinAbMap::block_col(FinAbMap::block_col(cor_m_lp.map, cor_m_lpp.map),
                                      cor_m_e.map);

    rep.groups = {m1.source(), m2.source(), m3.source(), m4.source(), m4.target()};
    rep.maps = {m1, m2, m3, m4};
    rep.exact_at = {exact_at(m1, m2).exact, exact_at(m2, m3).exact, exact_at(m3, m4).exact};
    for (std::size_t i = 0; i < rep.exact_at.size(); ++i)
        if (!rep.exact_at[i]) details << "not exact at interior position " << i << "; ";
    rep.details = details.str();
    return rep;
}

SequenceReport biquadratic_sequence(CohomologyContext& ctx, const ModulePtr& t2, int n)
{
    GroupPtr theta = build_klein_four();
    if (t2->group() != theta) throw std::invalid_argument("biquadratic_sequence: Klein group required");
    const std::int64_t n2 = t2->ring().modulus;
    std::int64_t m = 1;
    while (m * m < n2) ++m;
    if (m != 2) throw std::invalid_argument("biquadratic_sequence: 2-primary coefficients required");
    ModulePtr t1 = reduce_mod(t2, m);

    Subgroup ka(theta, {1}), kb(theta, {2}), kc(theta, {3});
    Subgroup lsub(theta, {});

    SequenceReport rep;
    rep.name = "biquadratic";
    rep.m = m;
    rep.degree = n;
    std::ostringstream details;

    bool gates = ctx.bockstein_vanishes(theta, t2, n);
    rep.bockstein_gates.push_back({"F", gates});
    for (auto& [tag, sub] : std::vector<std::pair<std::string, const Subgroup*>>{
             {"K_a", &ka}, {"K_b", &kb}, {"K_c", &kc}}) {
        bool v = ctx.bockstein_vanishes(sub->as_group(), restrict_to(*sub, t2), n);
        rep.bockstein_gates.push_back({tag, v});
        gates = gates && v;
    }
    // L is the trivial subgroup; its Bockstein vanishes identically
    rep.bockstein_gates.push_back({"L", true});
    rep.gates_passed = gates;

    // map 1: (cor, res^3): H^n(L) (+) H^n(F)^3 -> (+)_theta H^n(K_theta)
    Subgroup l_in_a = nested_subgroup(ka, lsub.elements());
    Subgroup l_in_b = nested_subgroup(kb, lsub.elements());
    Subgroup l_in_c = nested_subgroup(kc, lsub.elements());
    CohomologyMap cor_l_a = cor_nested(ctx, ka, l_in_a, t1, n);
    CohomologyMap cor_l_b = cor_nested(ctx, kb, l_in_b, t1, n);
    CohomologyMap cor_l_c = cor_nested(ctx, kc, l_in_c, t1, n);
    CohomologyMap res_a = ctx.res(ka, t1, n);
    CohomologyMap res_b = ctx.res(kb, t1, n);
    CohomologyMap res_c = ctx.res(kc, t1, n);
    auto zero = [](const FinAb& s, const FinAb& t) { return FinAbMap::zero(s, t); };
    const FinAb& hf = res_a.map.source();
    FinAbMap rowa = FinAbMap::block_row(
        FinAbMap::block_row(FinAbMap::block_row(cor_l_a.map, res_a.map), zero(hf, res_a.map.target())),
        zero(hf, res_a.map.target()));
    FinAbMap rowb = FinAbMap::block_row(
        FinAbMap::block_row(FinAbMap::block_row(cor_l_b.map, zero(hf, res_b.map.target())), res_b.map),
        zero(hf, res_b.map.target()));
    FinAbMap rowc = FinAbMap::block_row(
        FinAbMap::block_row(FinAbMap::block_row(cor_l_c.map, zero(hf, res_c.map.target())),
                            zero(hf, res_c.map.target())),
        res_c.map);
    FinAbMap m1 = FinAbMap::block_col(FinAbMap::block_col(rowa, rowb), rowc);

    // map 2: cor^3 into Theta (x) H^n(F), coordinates over the basis a, b
    // with c contributing to both (c = a + b)
    CohomologyMap cor_a = ctx.cor(ka, t1, n);
    CohomologyMap cor_b = ctx.cor(kb, t1, n);
    CohomologyMap cor_c = ctx.cor(kc, t1, n);
    FinAbMap top = FinAbMap::block_row(FinAbMap::block_row(cor_a.map, zero(cor_b.map.source(), hf)),
                                       cor_c.map);
    FinAbMap bot = FinAbMap::block_row(FinAbMap::block_row(zero(cor_a.map.source(), hf), cor_b.map),
                                       cor_c.map);
    FinAbMap m2 = FinAbMap::block_col(top, bot);

    // map 3: the pairing (y_a, y_b) -> chi_a cup y_a + chi_b cup y_b
    std::vector<std::int64_t> chi_a = {0, 0, 1, 1}; // kernel {1, a}
    std::vector<std::int64_t> chi_b = {0, 1, 0, 1}; // kernel {1, b}
    CohomologyMap cup_a = ctx.cup1(chi_a, t1, n);
    CohomologyMap cup_b = ctx.cup1(chi_b, t1, n);
    FinAbMap m3 = FinAbMap::block_row(cup_a.map, cup_b.map);

    // map 4: res to H^{n+1}(L)
    CohomologyMap res_l = ctx.res(lsub, t1, n + 1);
    FinAbMap m4 = res_l.map;

    // map 5: cor^3 from H^{n+1}(L)
    CohomologyMap cor_l_a1 = cor_nested(ctx, ka, l_in_a, t1, n + 1);
    CohomologyMap cor_l_b1 = cor_nested(ctx, kb, l_in_b, t1, n + 1);
    CohomologyMap cor_l_c1 = cor_nested(ctx, kc, l_in_c, t1, n + 1);
    FinAbMap m5 = FinAbMap::block_col(FinAbMap::block_col(cor_l_a1.map, cor_l_b1.map), cor_l_c1.map);

    rep.groups = {m1.source(), m2.source(), m3.source(), m4.source(), m5.source(), m5.target()};
    rep.maps = {m1, m2, m3, m4, m5};
    rep.exact_at = {exact_at(m1, m2).exact, exact_at(m2, m3).exact, exact_at(m3, m4).exact,
                    exact_at(m4, m5).exact};
    for (std::size_t i = 0; i < rep.exact_at.size(); ++i)
        if (!rep.exact_at[i]) details << "not exact at interior position " << i << "; ";
    rep.details = details.str();
    return rep;
}

} // namespace qcoh
