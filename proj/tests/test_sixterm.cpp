#include "doctest.h"

#include "qcoh/catalog.hpp"
#include "qcoh/sixterm.hpp"

using namespace qcoh;

namespace {

TensoredQuadruple tensored_trivial(const ExactQuadruple& q)
{
    ExactQuadruple qh = ensure_homotopy(q);
    std::int64_t m = qh.homotopy()->scalar;
    auto t2 = trivial_module(q.group(), ring_mod(m * m), 1);
    return tensor_with(qh, t2, m);
}

} // namespace

TEST_CASE("split_quadruple: cyclic(2) (x) Z/4 has L2 free of rank 1")
{
    ExactQuadruple q = catalog_build("cyclic", 2);
    TensoredQuadruple t = tensored_trivial(q);
    SplitQuadruple s = split_quadruple(q, t);
    CHECK(s.l2->rank() == 1);
    // the integer image basis of 1 - sigma is the lattice {(1, -1)}
    CHECK(s.first.p2.target()->rank() == 1);
}

TEST_CASE("split_quadruple: dihedral(4) (x) Z/4 has rank(L2) = 4")
{
    ExactQuadruple q = catalog_build("dihedral", 4);
    TensoredQuadruple t = tensored_trivial(q);
    SplitQuadruple s = split_quadruple(q, t);
    CHECK(s.l2->rank() == q.module(1)->rank() - q.module(0)->rank());
    CHECK(s.l2->rank() == 4);
}

TEST_CASE("degree-shift identity on the catalog triples at n = 0, 1")
{
    CohomologyContext ctx;
    for (auto [fam, k, m] : std::vector<std::tuple<const char*, int, int>>{
             {"cyclic", 2, 0}, {"cyclic", 3, 0}, {"cyclic", 4, 0}, {"sigma", 4, 2},
             {"biquadratic", 0, 0}, {"biquadratic2", 0, 0}}) {
        ExactQuadruple q = catalog_build(fam, k, m);
        TensoredQuadruple t = tensored_trivial(q);
        SplitQuadruple s = split_quadruple(ensure_homotopy(q), t);
        for (int n : {0, 1}) {
            INFO(fam, "(", k, ",", m, ") n=", n);
            CHECK(degree_shift_identity(ctx, s.first, n));
            CHECK(degree_shift_identity(ctx, s.second, n));
        }
    }
}

TEST_CASE("degree-shift identity with a twisted coefficient module")
{
    CohomologyContext ctx;
    ExactQuadruple q = ensure_homotopy(catalog_build("cyclic", 2));
    auto chi = canonical_twist(q, 2);
    auto t2 = character_twist(trivial_module(q.group(), ring_mod(4), 1), chi);
    TensoredQuadruple t = tensor_with(q, t2, 2);
    SplitQuadruple s = split_quadruple(q, t);
    for (int n : {0, 1}) {
        INFO("n = ", n);
        CHECK(degree_shift_identity(ctx, s.first, n));
        CHECK(degree_shift_identity(ctx, s.second, n));
    }
}

TEST_CASE("extension-level identity by enumeration")
{
    ExactQuadruple q2 = ensure_homotopy(catalog_build("cyclic", 2));
    TensoredQuadruple t = tensored_trivial(q2);
    SplitQuadruple s = split_quadruple(q2, t);
    CHECK(triple_max_order(s.first) <= 4096);
    CHECK(degree_shift_extension_check(s.first));
    CHECK(degree_shift_extension_check(s.second));

    // a split triple: X -> X (+) Z -> Z with the evident homotopy m * split
    {
        auto g = build_cyclic(2);
        auto x = trivial_module(g, ring_mod(4), 1);
        auto xz = trivial_module(g, ring_mod(4), 2);
        ModuleMap i2(x, xz, IntMatrix(2, 1, {Int(1), Int(0)}));
        ModuleMap p2(xz, x, IntMatrix(1, 2, {Int(0), Int(1)}));
        ModuleMap h_yx(xz, x, IntMatrix(1, 2, {Int(2), Int(0)}));
        ModuleMap h_zy(x, xz, IntMatrix(2, 1, {Int(0), Int(2)}));
        TripleWithHomotopy t2 = make_triple(i2, p2, h_yx, h_zy, 2);
        CHECK(degree_shift_extension_check(t2));
    }
}

TEST_CASE("extension-level identity on sigma(4,2) triples")
{
    ExactQuadruple q = ensure_homotopy(catalog_build("sigma", 4, 2));
    TensoredQuadruple t = tensored_trivial(q);
    SplitQuadruple s = split_quadruple(q, t);
    CHECK(triple_max_order(s.first) <= 4096);
    CHECK(triple_max_order(s.second) <= 4096);
    CHECK(degree_shift_extension_check(s.first));
    CHECK(degree_shift_extension_check(s.second));
}

TEST_CASE("N-extension for cyclic(2): order bookkeeping and split compositions")
{
    CohomologyContext ctx;
    ExactQuadruple q = ensure_homotopy(catalog_build("cyclic", 2));
    TensoredQuadruple t = tensored_trivial(q);
    NExtensionResult n = build_n_extension(ctx, q, t, 0);
    // |N| = |A1| * |D1| = 2 * 2 = 4: rank 2 over Z/2
    CHECK(n.ext.middle->rank() == 2);
    CHECK(n.pushout_splits);
    CHECK(n.pullback_splits);
    CHECK(n.nu_equals_delta_hld);
    CHECK(n.nu_equals_minus_hal_delta);
}

TEST_CASE("nu routes agree for cyclic(4)")
{
    CohomologyContext ctx;
    ExactQuadruple q = ensure_homotopy(catalog_build("cyclic", 4));
    TensoredQuadruple t = tensored_trivial(q);
    NExtensionResult n = build_n_extension(ctx, q, t, 0);
    CHECK(n.nu_equals_delta_hld);
    CHECK(n.nu_equals_minus_hal_delta);
}

TEST_CASE("six_term: cyclic(2) (x) Z/4 at n = 0 is exact with nonzero nu")
{
    CohomologyContext ctx;
    ExactQuadruple q = catalog_build("cyclic", 2);
    auto t2 = trivial_module(q.group(), ring_mod(4), 1);
    SixTermReport rep = six_term(ctx, q, t2, 0);
    INFO(rep.details);
    CHECK(rep.gates_passed);
    CHECK(rep.n_extension_ok);
    for (int i = 0; i < 4; ++i) CHECK(rep.exact_at_interior[i]);
    // the middle arrow specializes to an isomorphism H^0(D) -> H^1(A)
    CHECK_FALSE(rep.maps[2].is_zero());
    CHECK(rep.maps[2].bijective());
}

TEST_CASE("six_term: dihedral(4) (x) Z/4 at n = 0 is exact")
{
    CohomologyContext ctx;
    ExactQuadruple q = catalog_build("dihedral", 4);
    auto t2 = trivial_module(q.group(), ring_mod(4), 1);
    SixTermReport rep = six_term(ctx, q, t2, 0);
    INFO(rep.details);
    CHECK(rep.gates_passed);
    CHECK(rep.n_extension_ok);
    for (int i = 0; i < 4; ++i) CHECK(rep.exact_at_interior[i]);
}

TEST_CASE("six_term with twisted coefficients: exact wherever the gates pass")
{
    CohomologyContext ctx;
    for (auto [fam, k, m] : std::vector<std::tuple<const char*, int, int>>{
             {"cyclic", 2, 0}, {"cyclic", 3, 0}, {"sigma", 4, 2},
             {"dihedral", 4, 0}, {"biquadratic", 0, 0}, {"remark18", 4, 2}}) {
        ExactQuadruple q = ensure_homotopy(catalog_build(fam, k, m));
        std::int64_t scalar = q.homotopy()->scalar;
        auto chi = canonical_twist(q, scalar);
        auto t2 = character_twist(trivial_module(q.group(), ring_mod(scalar * scalar), 1), chi);
        for (int n : {0, 1}) {
            SixTermReport rep = six_term(ctx, q, t2, n);
            INFO(fam, "(", k, ",", m, ") twisted n=", n, ": ", rep.details);
            if (!rep.gates_passed) continue;
            for (int i = 0; i < 4; ++i) CHECK(rep.exact_at_interior[i]);
            CHECK(rep.n_extension_ok);
        }
    }
    // frozen non-vacuous instance: the sign-twisted Bockstein of cyclic(2)
    // vanishes on H^1, so the n = 1 sequence is asserted and exact
    {
        ExactQuadruple q = ensure_homotopy(catalog_build("cyclic", 2));
        auto chi = canonical_twist(q, 2);
        auto t2 = character_twist(trivial_module(q.group(), ring_mod(4), 1), chi);
        SixTermReport rep = six_term(ctx, q, t2, 1);
        CHECK(rep.gates_passed);
        CHECK(rep.exact_when_gated());
        CHECK(rep.n_extension_ok);
    }
}

TEST_CASE("six_term gates: cyclic(2) at n = 1 is gated by the nonzero Bockstein")
{
    CohomologyContext ctx;
    ExactQuadruple q = catalog_build("cyclic", 2);
    auto t2 = trivial_module(q.group(), ring_mod(4), 1);
    SixTermReport rep = six_term(ctx, q, t2, 1);
    CHECK_FALSE(rep.gates_passed);
    CHECK_FALSE(rep.bockstein_vanishes[0]); // the trivial module A
    CHECK(rep.exact_when_gated());          // nothing asserted
}

TEST_CASE("nu independence: stored vs solved homotopy for cyclic(2)")
{
    CohomologyContext ctx;
    ExactQuadruple q = catalog_build("cyclic", 2);
    auto t2 = trivial_module(q.group(), ring_mod(4), 1);
    HomotopyTriple stored = *q.homotopy();
    auto solved = solve_homotopy(q, 2);
    REQUIRE(solved.has_value());
    NuIndependenceResult r = nu_independence(ctx, q, stored, *solved, t2, 0);
    CHECK(r.nu_equal);
    CHECK(r.applicable_extension_check);
    CHECK(r.extensions_isomorphic);
}

TEST_CASE("nu independence: two solver orderings for sigma(4,2)")
{
    CohomologyContext ctx;
    ExactQuadruple q = catalog_build("sigma", 4, 2);
    auto h1 = solve_homotopy(q, 2, 0);
    auto h2 = solve_homotopy(q, 2, 1);
    REQUIRE(h1.has_value());
    REQUIRE(h2.has_value());
    auto t2 = trivial_module(q.group(), ring_mod(4), 1);
    NuIndependenceResult r = nu_independence(ctx, q, *h1, *h2, t2, 0);
    CHECK(r.nu_equal);
    CHECK(r.applicable_extension_check);
    CHECK(r.extensions_isomorphic);
}
