#include "doctest.h"

#include "qcoh/cohomology.hpp"
#include "qcoh/embedding.hpp"

using namespace qcoh;

namespace {

/// Independent oracle: H^n of a cyclic group with trivial Z/m coefficients
/// via the 2-periodic resolution ... -> Z[G] --(1-s)--> Z[G] --norm--> Z[G]:
/// H^0 = Z/m and H^n = Z/gcd(k, m) for n >= 1.
std::vector<std::int64_t> cyclic_trivial_oracle(int k, std::int64_t m, int n)
{
    if (n == 0) return m > 1 ? std::vector<std::int64_t>{m} : std::vector<std::int64_t>{};
    std::int64_t g = gcd_i64(k, m);
    return g > 1 ? std::vector<std::int64_t>{g} : std::vector<std::int64_t>{};
}

} // namespace

TEST_CASE("trivial group cohomology")
{
    CohomologyContext ctx;
    auto one = build_trivial();
    auto m = trivial_module(one, ring_mod(4), 1);
    CHECK(ctx.cohomology(one, m, 0)->divisors() == std::vector<std::int64_t>{4});
    CHECK(ctx.cohomology(one, m, 1)->divisors().empty());
    CHECK(ctx.cohomology(one, m, 2)->divisors().empty());
}

TEST_CASE("bar complex matches the cyclic periodic-resolution oracle")
{
    CohomologyContext ctx;
    for (int k = 2; k <= 8; ++k)
        for (std::int64_t m : {2, 3, 4})
            for (int n = 0; n <= 3; ++n) {
                auto g = build_cyclic(k);
                auto t = trivial_module(g, ring_mod(m), 1);
                auto h = ctx.cohomology(g, t, n);
                INFO("k=", k, " m=", m, " n=", n);
                CHECK(h->divisors() == cyclic_trivial_oracle(k, m, n));
            }
}

TEST_CASE("frozen: H^1(Z/4, Z/2) and H^2(Z/2, Z/2)")
{
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    CHECK(ctx.cohomology(z4, trivial_module(z4, ring_mod(2), 1), 1)->divisors() ==
          std::vector<std::int64_t>{2});
    auto z2 = build_cyclic(2);
    CHECK(ctx.cohomology(z2, trivial_module(z2, ring_mod(2), 1), 2)->divisors() ==
          std::vector<std::int64_t>{2});
}

TEST_CASE("dihedral(4) mod-2 cohomology has dimensions 1, 2, 3")
{
    // cross-check against the published Poincare series of the order-8
    // dihedral group: dim H^n = 1, 2, 3 in degrees 0, 1, 2
    CohomologyContext ctx;
    auto d4 = build_dihedral(4);
    auto t = trivial_module(d4, ring_mod(2), 1);
    CHECK(ctx.cohomology(d4, t, 0)->divisors() == std::vector<std::int64_t>{2});
    CHECK(ctx.cohomology(d4, t, 1)->divisors() == std::vector<std::int64_t>({2, 2}));
    CHECK(ctx.cohomology(d4, t, 2)->divisors() == std::vector<std::int64_t>({2, 2, 2}));
}

TEST_CASE("free modules are cohomologically trivial in positive degrees")
{
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    auto reg = perm_module(regular_gset(z4), ring_mod(2));
    CHECK(ctx.cohomology(z4, reg, 1)->divisors().empty());
    CHECK(ctx.cohomology(z4, reg, 2)->divisors().empty());
}

TEST_CASE("induced maps: identity, zero, functorial, tau pi kills H^1(Z/2, Z/4)")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    auto t4 = trivial_module(z2, ring_mod(4), 1);
    ModuleMap id(t4, t4, IntMatrix::identity(1));
    auto hid = ctx.induced(id, 1);
    CHECK(hid.map.equal_to(FinAbMap::identity(hid.source->group_structure())));

    ModuleMap zero(t4, t4, IntMatrix(1, 1));
    CHECK(ctx.induced(zero, 1).is_zero());

    // multiplication by 2 is zero on H^1(Z/2, Z/4) = Z/2
    ModuleMap two(t4, t4, IntMatrix::identity(1) * Int(2));
    CHECK(ctx.cohomology(z2, t4, 1)->divisors() == std::vector<std::int64_t>{2});
    CHECK(ctx.induced(two, 1).is_zero());
}

TEST_CASE("res to the trivial subgroup kills positive degrees")
{
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    auto t = trivial_module(z4, ring_mod(2), 1);
    Subgroup triv(z4, {});
    auto r = ctx.res(triv, t, 1);
    CHECK(r.target->divisors().empty());
}

TEST_CASE("cor o res = [G:H] on H^n(G, M)")
{
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    auto t = trivial_module(z4, ring_mod(2), 1);
    Subgroup h(z4, {2});
    for (int n = 0; n <= 2; ++n) {
        auto r = ctx.res(h, t, n);
        auto c = ctx.cor(h, t, n);
        FinAbMap comp = c.map.compose(r.map);
        // index 2 = 0 mod 2: the composite must vanish
        INFO("n = ", n);
        CHECK(comp.equal_to(FinAbMap::identity(comp.source()).scaled(2)));
    }
}

TEST_CASE("cor: H^1(Z/2, Z/2) -> H^1(Z/4, Z/2) is nonzero")
{
    // cross-check: the transfer is dual to the Verlagerung Z/4 -> Z/2, which
    // is surjective here, so cor of the generator is the nonzero character
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    auto t = trivial_module(z4, ring_mod(2), 1);
    Subgroup h(z4, {2});
    auto c = ctx.cor(h, t, 1);
    CHECK_FALSE(c.is_zero());
}

TEST_CASE("connecting: split triples vanish, the Z/2 -> Z/4 -> Z/2 snake does not")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    // split triple M -> M (+) M -> M
    auto m = trivial_module(z2, ring_mod(2), 1);
    auto mm = trivial_module(z2, ring_mod(2), 2);
    ModuleMap inj(m, mm, IntMatrix(2, 1, {Int(1), Int(0)}));
    ModuleMap prj(mm, m, IntMatrix(1, 2, {Int(0), Int(1)}));
    CHECK(ctx.connecting(inj, prj, 1).is_zero());

    // the coefficient triple Z/2 -> Z/4 -> Z/2 run through the snake:
    // connecting H^1 -> H^2 is nonzero and agrees with bockstein bit-for-bit
    auto t4 = trivial_module(z2, ring_mod(4), 1);
    BocksteinTriple triple = bockstein_triple(t4);
    for (int n : {0, 1}) {
        auto snake = ctx.connecting_bockstein(triple, n);
        auto beta = ctx.bockstein(z2, t4, n);
        INFO("n = ", n);
        CHECK(snake.map.equal_to(beta.map));
    }
    CHECK_FALSE(ctx.connecting_bockstein(triple, 1).is_zero());
}

TEST_CASE("bockstein: beta^0 trivial coefficients vanish, beta^1 on Z/2 is an iso")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    auto t4 = trivial_module(z2, ring_mod(4), 1);
    CHECK(ctx.bockstein_vanishes(z2, t4, 0));
    auto b1 = ctx.bockstein(z2, t4, 1);
    CHECK_FALSE(b1.is_zero());
    CHECK(b1.map.bijective());
    // beta o beta = 0
    auto b2 = ctx.bockstein(z2, t4, 2);
    CHECK(b2.map.compose(b1.map).is_zero());
}

TEST_CASE("bockstein naturality for maps defined over Z/m^2")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    auto reg2 = perm_module(regular_gset(z2), ring_mod(4));
    auto t4 = trivial_module(z2, ring_mod(4), 1);
    // augmentation Z/4[G] -> Z/4 is defined over Z/4
    ModuleMap aug(reg2, t4, IntMatrix(1, 2, {Int(1), Int(1)}));
    auto aug1 = ModuleMap(reduce_mod(reg2, 2), reduce_mod(t4, 2), aug.matrix());
    for (int n : {0, 1}) {
        auto lhs = ctx.induced(aug1, n + 1).map.compose(ctx.bockstein(z2, reg2, n).map);
        auto rhs = ctx.bockstein(z2, t4, n).map.compose(ctx.induced(aug1, n).map);
        INFO("n = ", n);
        CHECK(lhs.equal_to(rhs));
    }
}

TEST_CASE("cup with a degree-1 class")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    auto t = trivial_module(z2, ring_mod(2), 1);
    // u = 0 gives the zero map
    CHECK(ctx.cup1({0, 0}, t, 0).is_zero());
    // u the generator of H^1(Z/2, Z/2): H^0 -> H^1 is an isomorphism
    auto cup = ctx.cup1({0, 1}, t, 0);
    CHECK(cup.map.bijective());

    // res_H(u cup c) = res_H(u) cup res_H(c): take G = Z/2 x Z/2 (klein),
    // u a character vanishing on H = first factor
    auto klein = build_klein_four();
    auto tk = trivial_module(klein, ring_mod(2), 1);
    Subgroup h(klein, {1});
    // character with kernel {0, 1}: u(2) = u(3) = 1
    std::vector<std::int64_t> u = {0, 0, 1, 1};
    for (int n : {0, 1}) {
        auto cupk = ctx.cup1(u, tk, n);
        auto resh = ctx.res(h, tk, n + 1);
        auto composite = resh.map.compose(cupk.map);
        INFO("n = ", n);
        CHECK(composite.is_zero()); // res(u) = 0 kills the product
    }
}

TEST_CASE("cup1 associativity sample: u cup (u cup c) = (u cup u) cup c")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    auto t = trivial_module(z2, ring_mod(2), 1);
    std::vector<std::int64_t> u = {0, 1};
    // (u cup u) as a cochain-level 2-cocycle: (g1, g2) -> u(g1) u(g2);
    // for Z/2 this is the nonzero class of H^2, and u cup (u cup c) at the
    // class level must match composing the two cup1 maps
    auto c01 = ctx.cup1(u, t, 0);
    auto c12 = ctx.cup1(u, t, 1);
    auto square = c12.map.compose(c01.map);
    // H^0 -> H^2 composite: x -> (u cup u) cup x, which is nonzero for Z/2
    CHECK_FALSE(square.is_zero());
}

TEST_CASE("sigma action: full subgroup is trivial, abelian case is trivial")
{
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    auto t = trivial_module(z4, ring_mod(2), 1);
    Subgroup full(z4, {1});
    auto act_full = ctx.sigma_action(full, t, 1);
    CHECK(act_full.size() == 1);
    CHECK(act_full[0].equal_to(FinAbMap::identity(act_full[0].source())));

    Subgroup h(z4, {2});
    auto act = ctx.sigma_action(h, t, 1);
    CHECK(act.size() == 2);
    for (const auto& a : act) CHECK(a.equal_to(FinAbMap::identity(a.source())));

    auto inv = ctx.sigma_invariants(h, t, 1);
    CHECK(inv.sub.order() == ctx.cohomology(h.as_group(), trivial_module(h.as_group(), ring_mod(2), 1), 1)->group_structure().order());
    auto coin = ctx.sigma_coinvariants(h, t, 1);
    CHECK(coin.quot.order() == inv.sub.order());
}

TEST_CASE("conjugation action is well-defined on classes independent of lift")
{
    // D4 with H the rotation subgroup: both lifts of the nontrivial coset
    // give the same class-level action
    CohomologyContext ctx;
    auto d4 = build_dihedral(4);
    auto t = trivial_module(d4, ring_mod(2), 1);
    Subgroup rot(d4, {1});
    auto act = ctx.sigma_action(rot, t, 1);
    REQUIRE(act.size() == 2);
    // recompute with a different lift: conjugating by s and s * h0 for
    // h0 in H agree on classes; spot-check via idempotency of the action
    auto twice = act[1].compose(act[1]);
    CHECK(twice.equal_to(FinAbMap::identity(act[1].source())));
}

TEST_CASE("shapiro evaluation is an isomorphism")
{
    CohomologyContext ctx;
    auto z4 = build_cyclic(4);
    Subgroup h(z4, {2});
    auto t = trivial_module(z4, ring_mod(2), 1);
    auto big = tensor(perm_module(cosets_gset(h), ring_mod(2)), t);
    for (int n : {0, 1, 2}) {
        auto s = ctx.shapiro(h, big, t, n);
        INFO("n = ", n);
        CHECK(s.map.bijective());
    }
}

TEST_CASE("resource guard")
{
    CohomologyContext ctx(CohomologyOptions{3, 48, 100});
    auto d4 = build_dihedral(4);
    auto t = trivial_module(d4, ring_mod(2), 1);
    CHECK_THROWS_AS((void)ctx.cohomology(d4, t, 2), ResourceLimitError);
}

TEST_CASE("d o d = 0 on constructed cochain complexes")
{
    for (auto [g, nmod] : std::vector<std::pair<GroupPtr, std::int64_t>>{
             {build_cyclic(3), 9}, {build_dihedral(4), 4}, {build_klein_four(), 2}}) {
        auto m = trivial_module(g, ring_mod(nmod), 1);
        CochainComplex complex(g, m);
        for (int n = 0; n <= 1; ++n) {
            // push every basis cochain through d twice
            for (std::int64_t i = 0; i < complex.dim(n); ++i) {
                std::vector<std::int64_t> e(complex.dim(n), 0);
                e[i] = 1;
                auto dd = complex.coboundary(n + 1, complex.coboundary(n, e));
                for (auto v : dd) CHECK(v == 0);
            }
        }
    }
}

TEST_CASE("functoriality of induced maps")
{
    CohomologyContext ctx;
    auto z2 = build_cyclic(2);
    auto reg = perm_module(regular_gset(z2), ring_mod(4));
    auto t = trivial_module(z2, ring_mod(4), 1);
    ModuleMap aug(reg, t, IntMatrix(1, 2, {Int(1), Int(1)}));
    ModuleMap norm(t, reg, IntMatrix(2, 1, {Int(1), Int(1)}));
    for (int n : {0, 1, 2}) {
        auto lhs = ctx.induced(aug.compose(norm), n);
        auto rhs = ctx.induced(aug, n).map.compose(ctx.induced(norm, n).map);
        INFO("n = ", n);
        CHECK(lhs.map.equal_to(rhs));
    }
}

TEST_CASE("res and cor are transitive along subgroup chains")
{
    CohomologyContext ctx;
    auto z8 = build_cyclic(8);
    Subgroup h4(z8, {2}); // order 4
    Subgroup h2(z8, {4}); // order 2
    auto t = trivial_module(z8, ring_mod(2), 1);
    auto t4 = restrict_action(t, embed_subgroup(h4));
    // h2 as a subgroup of h4's abstract group
    std::vector<int> pos;
    for (int e : h2.elements()) pos.push_back(h4.position(e));
    Subgroup h2_in_h4(h4.as_group(), pos);

    for (int n : {0, 1, 2}) {
        INFO("n = ", n);
        auto res_direct = ctx.res(h2, t, n);
        auto res_step = ctx.res(h2_in_h4, t4, n).map.compose(ctx.res(h4, t, n).map);
        CHECK(res_direct.map.equal_to(res_step));

        auto cor_direct = ctx.cor(h2, t, n);
        auto cor_step = ctx.cor(h4, t, n).map.compose(ctx.cor(h2_in_h4, t4, n).map);
        CHECK(cor_direct.map.equal_to(cor_step));
    }
}
