#include "doctest.h"

#include "qcoh/catalog.hpp"
#include "qcoh/homotopy.hpp"
#include "qcoh/laurent.hpp"

using namespace qcoh;

TEST_CASE("cyclic homotopy polynomial")
{
    // (1-x) f(x) + (1 + ... + x^{k-1}) = k as polynomials
    for (int k = 2; k <= 12; ++k) {
        Laurent f = cyclic_homotopy_poly(k);
        Laurent one_minus_x{0, {1, -1}};
        Laurent norm{0, std::vector<Int>(k, 1)};
        Laurent lhs = laurent_add(laurent_mul(one_minus_x, f), norm);
        CHECK(lhs == Laurent::monomial(k, 0));
    }
    // frozen: k = 3 gives f(x) = 2 + x (long division)
    Laurent f3 = cyclic_homotopy_poly(3);
    CHECK(f3.low == 0);
    CHECK(f3.coeffs == std::vector<Int>{2, 1});
}

TEST_CASE("dihedral Laurent polynomial")
{
    for (int k : {4, 8, 12}) {
        Laurent f = dihedral_homotopy_poly(k);
        Laurent den{-1, {1, 2, 1}};
        Laurent rhs;
        rhs.low = -k / 2 + 1;
        rhs.coeffs.assign(k - 1, 1);
        rhs.coeffs[k / 2 - 1] += 1;
        CHECK(laurent_mul(den, f) == rhs);
        // psi needs f symmetric under x -> 1/x for Gamma-equivariance
        CHECK(f == f.reversed());
    }
    // frozen: k = 4 gives f = 1, so psi = sigma^{-1/2} + sigma^{1/2}
    Laurent f4 = dihedral_homotopy_poly(4);
    CHECK(f4 == Laurent::monomial(1, 0));
}

TEST_CASE("catalog list has the eight families")
{
    CHECK(catalog_entries().size() == 8);
}

TEST_CASE("cyclic quadruples verify for k = 2..12")
{
    for (int k = 2; k <= 12; ++k) {
        ExactQuadruple q = catalog_build("cyclic", k);
        QuadrupleReport r = verify(q);
        INFO("k = ", k, ": ", r.details);
        CHECK(r.all_ok());
        REQUIRE(r.homotopy_ok.has_value());
        CHECK(*r.homotopy_ok);
    }
}

TEST_CASE("sigma quadruples verify (no stored homotopy)")
{
    ExactQuadruple q = catalog_build("sigma", 4, 2);
    QuadrupleReport r = verify(q);
    INFO(r.details);
    CHECK(r.all_ok());
    CHECK_FALSE(q.homotopy().has_value());

    // first map column over the basis (Z[S] (+) Z) is (1,1,1,1 | -2)
    const IntMatrix& d = q.d_ab().matrix();
    for (int i = 0; i < 4; ++i) CHECK(d.at(i, 0) == 1);
    CHECK(d.at(4, 0) == -2);

    for (auto [k, m] : std::vector<std::pair<int, int>>{{8, 2}, {8, 4}, {9, 3}, {6, 2}, {4, 4}}) {
        QuadrupleReport r2 = verify(catalog_build("sigma", k, m));
        INFO("sigma(", k, ",", m, "): ", r2.details);
        CHECK(r2.all_ok());
    }
    CHECK_THROWS(catalog_build("sigma", 5, 2));
}

TEST_CASE("dihedral quadruples verify including the stored homotopy")
{
    for (int k : {4, 8, 12}) {
        ExactQuadruple q = catalog_build("dihedral", k);
        QuadrupleReport r = verify(q);
        INFO("k = ", k, ": ", r.details);
        CHECK(r.all_ok());
        REQUIRE(r.homotopy_ok.has_value());
        CHECK(*r.homotopy_ok);
    }
    CHECK_THROWS(catalog_build("dihedral", 6));
}

TEST_CASE("dihedral_plus(8) has the expected orbit shape")
{
    ExactQuadruple q = catalog_build("dihedral_plus", 8);
    CHECK(q.group()->order() == 8); // Gamma_4
    QuadrupleReport r = verify(q);
    INFO(r.details);
    CHECK(r.all_ok());
    CHECK(*r.homotopy_ok); // restriction keeps the homotopy

    // B: one principal homogeneous orbit of size 8 plus the trivial Z
    const auto& sb = q.summands()[1];
    REQUIRE(sb.size() == 2);
    CHECK(sb[0].permutational());
    CHECK(sb[0].rank == 8);
    CHECK(sb[0].gset->stabilizer(0).size() == 1);
    // C: three orbits of size 4
    const auto& sc = q.summands()[2];
    REQUIRE(sc.size() == 3);
    for (const auto& s : sc) CHECK(s.rank == 4);
    // D: two orbits of size 2
    const auto& sd = q.summands()[3];
    REQUIRE(sd.size() == 2);
    for (const auto& s : sd) CHECK(s.rank == 2);
}

TEST_CASE("biquadratic restriction matches the displayed orbit shape")
{
    ExactQuadruple q = catalog_build("biquadratic");
    CHECK(q.group()->order() == 4);
    QuadrupleReport r = verify(q);
    INFO(r.details);
    CHECK(r.all_ok());
    CHECK(*r.homotopy_ok);

    // B: Theta-regular orbit of size 4 plus Z
    const auto& sb = q.summands()[1];
    REQUIRE(sb.size() == 2);
    CHECK(sb[0].rank == 4);
    CHECK(sb[0].gset->stabilizer(0).size() == 1);
    // C: Delta'' splits into two 2-point orbits, Delta'/Pi is one more
    const auto& sc = q.summands()[2];
    REQUIRE(sc.size() == 3);
    int two_point = 0;
    for (const auto& s : sc)
        if (s.rank == 2) ++two_point;
    CHECK(two_point == 3);
    // D: rank-2 trivial action (the concrete coordinates of Z^3/Z)
    CHECK(q.module(3)->rank() == 2);
    for (int g = 0; g < 4; ++g) CHECK(q.module(3)->action(g) == IntMatrix::identity(2));
}

TEST_CASE("biquadratic2: the cancelled edge-restriction")
{
    ExactQuadruple q = catalog_build("biquadratic2");
    CHECK(q.group()->order() == 4);
    // shape Z -> Z[T/a] (+) Z[T/b] -> Z[T] (+) Z -> Z[T/c]
    CHECK(q.module(0)->rank() == 1);
    CHECK(q.module(1)->rank() == 4);
    CHECK(q.module(2)->rank() == 5);
    CHECK(q.module(3)->rank() == 2);
    QuadrupleReport r = verify(q);
    INFO(r.details);
    CHECK(r.all_ok());
    // D has a genuine 2-point orbit (non-trivial action)
    bool nontrivial = false;
    for (int g = 0; g < 4; ++g)
        if (!(q.module(3)->action(g) == IntMatrix::identity(2))) nontrivial = true;
    CHECK(nontrivial);
}

TEST_CASE("remark18 verifies in both parity branches")
{
    for (auto [k, m] : std::vector<std::pair<int, int>>{{4, 2}, {8, 2}, {6, 3}, {6, 2}, {8, 4},
                                                        {12, 2}, {12, 4}}) {
        ExactQuadruple q = catalog_build("remark18", k, m);
        QuadrupleReport r = verify(q);
        INFO("remark18(", k, ",", m, "): ", r.details);
        CHECK(r.all_ok());
    }
    CHECK_THROWS(catalog_build("remark18", 5, 2));
}

TEST_CASE("remark18 self-duality witnessed by the explicit permutation")
{
    for (auto [k, m] : std::vector<std::pair<int, int>>{{4, 2}, {8, 2}, {6, 3}, {6, 2}}) {
        ExactQuadruple q = catalog_build("remark18", k, m);
        ExactQuadruple dq = dualize(q);
        QuadrupleIso iso = remark18_selfduality(k, m);
        INFO("remark18(", k, ",", m, ")");
        CHECK(check_quadruple_iso(dq, q, iso));
    }
}

TEST_CASE("s4 quadruple verifies")
{
    ExactQuadruple q = catalog_build("s4");
    QuadrupleReport r = verify(q);
    INFO(r.details);
    CHECK(r.all_ok());
}

TEST_CASE("dualize: double dual is the identity, verdicts preserved")
{
    // duals of the asymmetric families also stay exact
    for (auto [fam, k, m] : std::vector<std::tuple<const char*, int, int>>{
             {"sigma", 4, 2}, {"s4", 0, 0}, {"biquadratic2", 0, 0}}) {
        QuadrupleReport r = verify(dualize(catalog_build(fam, k, m)));
        INFO(fam, ": ", r.details);
        CHECK(r.all_ok());
    }
    for (const char* fam : {"cyclic", "dihedral"}) {
        ExactQuadruple q = catalog_build(fam, 4, 0);
        ExactQuadruple dd = dualize(dualize(q));
        CHECK(dd.d_ab().matrix() == q.d_ab().matrix());
        CHECK(dd.d_bc().matrix() == q.d_bc().matrix());
        CHECK(dd.d_cd().matrix() == q.d_cd().matrix());
        QuadrupleReport r = verify(dualize(q));
        INFO(fam, ": ", r.details);
        CHECK(r.all_ok());
    }
    // dual of cyclic: norm-dual and (1 - sigma^{-1}) shapes
    ExactQuadruple q = catalog_build("cyclic", 3);
    ExactQuadruple d = dualize(q);
    CHECK(d.d_ab().matrix() == q.d_cd().matrix().transpose());
    CHECK(d.d_bc().matrix() == q.d_bc().matrix().transpose());
}

TEST_CASE("restriction preserves verify verdicts")
{
    ExactQuadruple q = catalog_build("cyclic", 4);
    Subgroup triv(q.group(), {});
    ExactQuadruple rq = restrict_quadruple(q, embed_subgroup(triv));
    CHECK(verify(rq).all_ok());
    for (int g = 0; g < 1; ++g) CHECK(rq.module(1)->action(g) == IntMatrix::identity(4));

    ExactQuadruple d8 = catalog_build("dihedral", 8);
    ExactQuadruple plus = restrict_quadruple(d8, embed_dihedral_index2(8, EmbedVariant::VertexTransitive));
    CHECK(verify(plus).all_ok());
}

TEST_CASE("corrupted quadruple is caught by verify")
{
    // flipping the sign of the -m component of the sigma first map keeps
    // equivariance but breaks d o d = 0
    ExactQuadruple q = catalog_build("sigma", 4, 2);
    IntMatrix bad_mat = q.d_ab().matrix();
    bad_mat.at(4, 0) = 2;
    ModuleMap bad(q.module(0), q.module(1), bad_mat);
    ExactQuadruple corrupted("bad", bad, q.d_bc(), q.d_cd(), std::nullopt, 2, {});
    QuadrupleReport r = verify(corrupted);
    CHECK_FALSE(r.complex_ok);
    CHECK_FALSE(r.all_ok());

    // doubling a differential keeps the complex but breaks exactness
    ExactQuadruple q2 = catalog_build("cyclic", 3);
    ModuleMap doubled(q2.module(0), q2.module(1), q2.d_ab().matrix() * Int(2));
    QuadrupleReport r2 = verify(ExactQuadruple("bad2", doubled, q2.d_bc(), q2.d_cd(), std::nullopt, 3, {}));
    CHECK(r2.complex_ok);
    CHECK_FALSE(r2.exact_at_b);
}

TEST_CASE("homotopy solver succeeds where solutions are known to exist")
{
    for (auto [fam, k, m, scalar] : std::vector<std::tuple<const char*, int, int, int>>{
             {"sigma", 4, 2, 2}, {"remark18", 4, 2, 2}, {"s4", 0, 0, 2}}) {
        ExactQuadruple q = catalog_build(fam, k, m);
        auto h = solve_homotopy(q, scalar);
        INFO(fam, "(", k, ",", m, ")");
        REQUIRE(h.has_value());
        ExactQuadruple qh = q.with_homotopy(*h);
        QuadrupleReport r = verify(qh);
        REQUIRE(r.homotopy_ok.has_value());
        CHECK(*r.homotopy_ok);
    }
}

TEST_CASE("solver scalar-1 regression on cyclic(3)")
{
    // frozen from the solver run: no equivariant contracting homotopy exists
    // (h_BA o d_AB = 1 would force an equivariant retraction of the norm map,
    // i.e. 3c = 1 over Z), so the solver must return none
    ExactQuadruple q = catalog_build("cyclic", 3);
    CHECK_FALSE(solve_homotopy(q, 1).has_value());
}

TEST_CASE("tensor_with rescales stored homotopies")
{
    ExactQuadruple q2 = catalog_build("cyclic", 2);
    auto t4 = trivial_module(q2.group(), ring_mod(16), 1);
    // m = 4, stored scalar 2: h = 2 h_2
    TensoredQuadruple t = tensor_with(q2, t4, 4);
    CHECK(verify_tensored(t));
    REQUIRE(t.homotopy.has_value());
    CHECK(t.homotopy->scalar == 4);
    CHECK(t.homotopy->h_ba.matrix() == q2.homotopy()->h_ba.matrix() * Int(2));

    // m = 2 = stored scalar: unchanged
    auto t2 = trivial_module(q2.group(), ring_mod(4), 1);
    TensoredQuadruple u = tensor_with(q2, t2, 2);
    CHECK(verify_tensored(u));
    CHECK(u.homotopy->h_ba.matrix() == q2.homotopy()->h_ba.matrix());

    // scalar 3 does not divide into m = 2
    ExactQuadruple q3 = catalog_build("cyclic", 3);
    auto t9 = trivial_module(q3.group(), ring_mod(4), 1);
    CHECK_THROWS(tensor_with(q3, t9, 2));

    // dihedral keeps scalar 2
    ExactQuadruple d4 = catalog_build("dihedral", 4);
    TensoredQuadruple td = tensor_with(d4, trivial_module(d4.group(), ring_mod(4), 1), 2);
    CHECK(verify_tensored(td));
    CHECK(td.homotopy->scalar == 2);
}

TEST_CASE("canonical twists are nontrivial characters")
{
    for (auto [fam, k, m, scalar] : std::vector<std::tuple<const char*, int, int, int>>{
             {"cyclic", 2, 0, 2}, {"cyclic", 3, 0, 3}, {"sigma", 4, 2, 2},
             {"dihedral", 4, 0, 2}, {"biquadratic", 0, 0, 2}, {"s4", 0, 0, 2}}) {
        ExactQuadruple q = catalog_build(fam, k, m);
        auto chi = canonical_twist(q, scalar);
        INFO(fam);
        bool nontrivial = false;
        for (auto v : chi)
            if (v != 1) nontrivial = true;
        CHECK(nontrivial);
        // multiplicative into units: checked by character_twist
        auto t2 = trivial_module(q.group(), ring_mod(std::int64_t(scalar) * scalar), 1);
        CHECK_NOTHROW(character_twist(t2, chi));
    }
}
