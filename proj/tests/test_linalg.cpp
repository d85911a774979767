#include "doctest.h"

#include "qcoh/intmat.hpp"
#include "qcoh/modmat.hpp"
#include "qcoh/subquotient.hpp"

#include <random>
#include <set>

using namespace qcoh;

namespace {

IntMatrix im(int rows, int cols, std::vector<long long> v)
{
    std::vector<Int> e(v.begin(), v.end());
    return IntMatrix(rows, cols, std::move(e));
}

ModMatrix mm(int rows, int cols, std::int64_t n, std::vector<std::int64_t> v)
{
    return ModMatrix(rows, cols, n, std::move(v));
}

bool is_unimodular(const IntMatrix& a)
{
    // |det| = 1 iff SNF is the identity
    SnfResult f = snf(a);
    if (a.rows() != a.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        if (f.s.at(i, i) != 1) return false;
    return true;
}

// Exhaustively enumerate the row span of a over Z/n (ground truth for small cases).
std::set<std::vector<std::int64_t>> enumerate_row_span(const ModMatrix& a)
{
    std::set<std::vector<std::int64_t>> span;
    const int r = a.rows();
    const std::int64_t n = a.modulus();
    std::vector<std::int64_t> coeff(r, 0);
    for (;;) {
        std::vector<std::int64_t> v(a.cols(), 0);
        for (int i = 0; i < r; ++i)
            for (int c = 0; c < a.cols(); ++c) v[c] = (v[c] + coeff[i] * a.at(i, c)) % n;
        span.insert(v);
        int i = 0;
        while (i < r && ++coeff[i] == n) coeff[i++] = 0;
        if (i == r) break;
    }
    return span;
}

} // namespace

TEST_CASE("snf identity and zero cases")
{
    SnfResult f = snf(IntMatrix::identity(2));
    CHECK(f.s == IntMatrix::identity(2));
    CHECK(f.u * f.s * f.v == IntMatrix::identity(2));

    IntMatrix z(1, 3);
    SnfResult fz = snf(z);
    CHECK(fz.s.is_zero());
    CHECK(fz.rank == 0);
}

TEST_CASE("snf of [[2,4],[6,8]] has invariant factors 2, 4")
{
    // invariant factors by the gcd-of-minors formula: d1 = gcd of entries = 2,
    // d1*d2 = |det| = |16 - 24| = 8, so the chain is (2, 4)
    IntMatrix a = im(2, 2, {2, 4, 6, 8});
    SnfResult f = snf(a);
    CHECK(f.s.at(0, 0) == 2);
    CHECK(f.s.at(1, 1) == 4);
    CHECK(f.u * f.s * f.v == a);
    CHECK(is_unimodular(f.u));
    CHECK(is_unimodular(f.v));
}

TEST_CASE("snf on random small matrices: U S V = A, unimodularity, divisor chain")
{
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 6), entry(-5, 5);
    for (int trial = 0; trial < 60; ++trial) {
        int r = dim(rng), c = dim(rng);
        IntMatrix a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = entry(rng);
        SnfResult f = snf(a);
        CHECK(f.u * f.s * f.v == a);
        CHECK(is_unimodular(f.u));
        CHECK(is_unimodular(f.v));
        CHECK(f.u * f.u_inv == IntMatrix::identity(r));
        CHECK(f.v * f.v_inv == IntMatrix::identity(c));
        for (int i = 0; i + 1 < std::min(r, c); ++i) {
            Int d1 = f.s.at(i, i), d2 = f.s.at(i + 1, i + 1);
            if (d1 != 0) CHECK(d2 % d1 == 0);
            if (d1 == 0) CHECK(d2 == 0);
        }
        for (int i = 0; i < std::min(r, c); ++i)
            for (int j = 0; j < std::min(r, c); ++j)
                if (i != j) CHECK(f.s.at(i, j) == 0);
    }
}

TEST_CASE("integer kernel basics")
{
    // A = [1 1] has kernel generated by (1, -1)
    IntMatrix a = im(1, 2, {1, 1});
    IntMatrix k = kernel_z(a);
    REQUIRE(k.cols() == 1);
    CHECK((a * k).is_zero());
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(1, 0) == -1);

    CHECK(kernel_z(IntMatrix::identity(3)).cols() == 0);
}

TEST_CASE("integer solve")
{
    IntMatrix a = im(2, 2, {2, 0, 0, 3});
    auto x = solve_z(a, im(2, 1, {4, 9}));
    REQUIRE(x.has_value());
    CHECK(a * *x == im(2, 1, {4, 9}));
    CHECK_FALSE(solve_z(a, im(2, 1, {1, 0})).has_value());
}

TEST_CASE("howell form: canonical, idempotent, span-faithful")
{
    // full span over Z/4
    CHECK(howell(ModMatrix::identity(2, 4)) == ModMatrix::identity(2, 4));
    // single canonical generator
    CHECK(howell(mm(1, 1, 4, {2})) == mm(1, 1, 4, {2}));

    // frozen regression: the span of {(2,2),(0,2)} over Z/4 is {0,2}x{0,2},
    // derived by enumeration below; canonical generators are (2,0),(0,2)
    ModMatrix a = mm(2, 2, 4, {2, 2, 0, 2});
    ModMatrix h = howell(a);
    CHECK(enumerate_row_span(a) == enumerate_row_span(h));
    CHECK(h == mm(2, 2, 4, {2, 0, 0, 2}));
    CHECK(howell(h) == h);
}

TEST_CASE("howell form: span equality iff form equality (exhaustive, Z/4 and Z/3)")
{
    for (std::int64_t n : {2, 3, 4}) {
        // all 2x2 matrices over Z/n, bucketed by span
        std::map<std::set<std::vector<std::int64_t>>, ModMatrix> canon;
        std::vector<std::int64_t> e(4, 0);
        for (;;) {
            ModMatrix a = mm(2, 2, n, e);
            ModMatrix h = howell(a);
            auto span = enumerate_row_span(a);
            CHECK(enumerate_row_span(h) == span);
            auto [it, fresh] = canon.insert({span, h});
            if (!fresh) CHECK(it->second == h);
            int i = 0;
            while (i < 4 && ++e[i] == n) e[i++] = 0;
            if (i == 4) break;
        }
    }
}

TEST_CASE("kernel over Z/N")
{
    // A = [[2]] over Z/4 -> kernel generated by (2)
    ModMatrix k = kernel_mod(mm(1, 1, 4, {2}));
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == 2);
    // identity -> trivial kernel
    CHECK(kernel_mod(ModMatrix::identity(3, 4)).cols() == 0);
}

TEST_CASE("kernel over Z/N matches exhaustive enumeration")
{
    std::mt19937 rng(777);
    for (std::int64_t n : {2, 3, 4, 6, 8, 9}) {
        std::uniform_int_distribution<std::int64_t> entry(0, n - 1);
        for (int trial = 0; trial < 30; ++trial) {
            int r = 1 + int(rng() % 3), c = 1 + int(rng() % 3);
            ModMatrix a(r, c, n);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) a.at(i, j) = entry(rng);
            ModMatrix k = kernel_mod(a);
            // every generator is in the kernel
            CHECK((a * k).is_zero());
            // exhaustive: count kernel elements and compare with span of k
            std::set<std::vector<std::int64_t>> truth;
            std::vector<std::int64_t> x(c, 0);
            for (;;) {
                if (ModMatrix(c, 1, n, x).transpose().is_zero() || true) {
                    auto y = a.apply(x);
                    bool zero = std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; });
                    if (zero) truth.insert(x);
                }
                int i = 0;
                while (i < c && ++x[i] == n) x[i++] = 0;
                if (i == c) break;
            }
            CHECK(enumerate_row_span(k.transpose()).size() == truth.size());
        }
    }
}

TEST_CASE("linear solver over Z/N")
{
    // A = I: solve returns b
    LinearSolverMod id(ModMatrix::identity(2, 4));
    auto x = id.solve({3, 1});
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<std::int64_t>{3, 1});

    // A = [[2]] over Z/4: b = 2 solvable with x = 1, b = 1 unsolvable
    LinearSolverMod s(mm(1, 1, 4, {2}));
    auto x1 = s.solve({2});
    REQUIRE(x1.has_value());
    CHECK((*x1)[0] * 2 % 4 == 2);
    CHECK_FALSE(s.solve({1}).has_value());
}

TEST_CASE("linear solver: solve found => exact, none => exhaustive agrees")
{
    std::mt19937 rng(4242);
    for (std::int64_t n : {2, 3, 4, 9}) {
        std::uniform_int_distribution<std::int64_t> entry(0, n - 1);
        for (int trial = 0; trial < 25; ++trial) {
            int r = 1 + int(rng() % 3), c = 1 + int(rng() % 3);
            ModMatrix a(r, c, n);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) a.at(i, j) = entry(rng);
            std::vector<std::int64_t> b(r);
            for (auto& v : b) v = entry(rng);
            LinearSolverMod solver(a);
            auto x = solver.solve(b);
            bool solvable = false;
            std::vector<std::int64_t> y(c, 0);
            for (;;) {
                if (a.apply(y) == b) {
                    solvable = true;
                    break;
                }
                int i = 0;
                while (i < c && ++y[i] == n) y[i++] = 0;
                if (i == c) break;
            }
            CHECK(x.has_value() == solvable);
            if (x) CHECK(a.apply(*x) == b);
        }
    }
}

TEST_CASE("quotient structure basics")
{
    // full quotient (Z/4)^2 / 0 -> divisors [4, 4]
    ModMatrix full = ModMatrix::identity(2, 4);
    ModMatrix none(2, 0, 4);
    SubquotientStructure s = quotient_structure(full, none);
    CHECK(s.divisors() == std::vector<std::int64_t>{4, 4});

    // Z/4 modulo 2*(Z/4) -> divisors [2]
    SubquotientStructure s2 = quotient_structure(ModMatrix::identity(1, 4), mm(1, 1, 4, {2}));
    CHECK(s2.divisors() == std::vector<std::int64_t>{2});

    // ker = im -> trivial quotient
    SubquotientStructure s3 = quotient_structure(mm(1, 1, 4, {2}), mm(1, 1, 4, {2}));
    CHECK(s3.divisors().empty());

    // containment violations are rejected
    CHECK_THROWS(quotient_structure(mm(1, 1, 4, {2}), ModMatrix::identity(1, 4)));
}

TEST_CASE("quotient structure: order, projection, representatives (enumerated)")
{
    std::mt19937 rng(99);
    for (std::int64_t n : {2, 3, 4, 8}) {
        std::uniform_int_distribution<std::int64_t> entry(0, n - 1);
        for (int trial = 0; trial < 20; ++trial) {
            int dim = 1 + int(rng() % 3);
            ModMatrix ker(dim, 1 + int(rng() % 3), n);
            for (int i = 0; i < ker.rows(); ++i)
                for (int j = 0; j < ker.cols(); ++j) ker.at(i, j) = entry(rng);
            // choose the image inside the kernel span: random combinations
            ModMatrix im_cols(dim, 2, n);
            for (int j = 0; j < 2; ++j) {
                std::vector<std::int64_t> coeff(ker.cols());
                for (auto& v : coeff) v = entry(rng);
                for (int i = 0; i < dim; ++i) {
                    std::int64_t acc = 0;
                    for (int t = 0; t < ker.cols(); ++t) acc = (acc + coeff[t] * ker.at(i, t)) % n;
                    im_cols.at(i, j) = acc;
                }
            }
            SubquotientStructure s = quotient_structure(ker, im_cols);
            // |V| / |W| = order of the quotient
            auto vset = enumerate_row_span(ker.transpose());
            auto wset = enumerate_row_span(im_cols.transpose());
            CHECK(Int(vset.size() / wset.size()) == s.order());
            // projection kills W
            for (int j = 0; j < im_cols.cols(); ++j) {
                std::vector<std::int64_t> w(dim);
                for (int i = 0; i < dim; ++i) w[i] = im_cols.at(i, j);
                auto coords = s.project(w);
                for (auto cv : coords) CHECK(cv == 0);
            }
            // project o representative = identity on coordinates
            if (!s.divisors().empty()) {
                std::vector<std::int64_t> coords(s.divisors().size(), 0);
                coords[0] = s.divisors()[0] - 1;
                auto rep = s.representative(coords);
                CHECK(s.project(rep) == coords);
            }
        }
    }
}
