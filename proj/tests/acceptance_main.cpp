// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria carry their own runtime budgets; exceeding a budget
// fails the criterion.

#include "qcoh/catalog.hpp"
#include "qcoh/cli.hpp"
#include "qcoh/io.hpp"
#include "qcoh/sequences.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qcoh;

namespace {

struct Tally {
    int passed = 0;
    int failed = 0;
};

void report(Tally& tally, int number, const std::string& name, bool ok, double seconds,
            double budget_seconds, const std::string& detail = "")
{
    bool in_budget = budget_seconds <= 0 || seconds < budget_seconds;
    bool final_ok = ok && in_budget;
    std::cout << (final_ok ? "PASS" : "FAIL") << " criterion-" << number << " " << name << " ("
              << seconds << "s";
    if (budget_seconds > 0) std::cout << " / budget " << budget_seconds << "s";
    std::cout << ")";
    if (!detail.empty()) std::cout << "  -- " << detail;
    std::cout << std::endl;
    (final_ok ? tally.passed : tally.failed) += 1;
}

double run_timed(const std::function<bool()>& f, bool& ok, std::string& detail)
{
    auto start = std::chrono::steady_clock::now();
    try {
        ok = f();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(end - start).count();
}

// representative parameter choices where a criterion quantifies over the
// whole catalog
const std::vector<std::tuple<std::string, int, int>>& representative_catalog()
{
    static const std::vector<std::tuple<std::string, int, int>> entries = {
        {"cyclic", 2, 0},    {"cyclic", 3, 0},       {"cyclic", 4, 0},
        {"sigma", 4, 2},     {"dihedral", 4, 0},     {"dihedral", 8, 0},
        {"dihedral_plus", 8, 0}, {"biquadratic", 0, 0}, {"biquadratic2", 0, 0},
        {"remark18", 4, 2},  {"remark18", 6, 3},     {"s4", 0, 0},
    };
    return entries;
}

ModulePtr trivial_t2(const ExactQuadruple& q)
{
    std::int64_t m = q.default_scalar();
    return trivial_module(q.group(), ring_mod(m * m), 1);
}

ModulePtr twisted_t2(const ExactQuadruple& q)
{
    std::int64_t m = q.default_scalar();
    return character_twist(trivial_module(q.group(), ring_mod(m * m), 1), canonical_twist(q, m));
}

bool criterion_catalog_integrity(std::string& detail)
{
    std::ostringstream bad;
    auto check = [&](const std::string& fam, int k, int m) {
        ExactQuadruple q = catalog_build(fam, k, m);
        QuadrupleReport r = verify(q);
        if (!r.all_ok()) bad << q.name() << " [" << r.details << "] ";
    };
    for (int k = 2; k <= 12; ++k) check("cyclic", k, 0);
    for (int k : {4, 8, 12}) check("dihedral", k, 0);
    for (auto [k, m] : std::vector<std::pair<int, int>>{{4, 2}, {8, 2}, {8, 4}, {9, 3}})
        check("sigma", k, m);
    for (auto [k, m] : std::vector<std::pair<int, int>>{{4, 2}, {8, 2}, {6, 3}})
        check("remark18", k, m);
    check("biquadratic", 0, 0);
    check("biquadratic2", 0, 0);
    check("s4", 0, 0);
    detail = bad.str();
    return detail.empty();
}

bool criterion_homotopy_solver(std::string& detail)
{
    std::ostringstream bad;
    auto check = [&](const std::string& fam, int k, int m, std::int64_t scalar) {
        ExactQuadruple q = catalog_build(fam, k, m);
        auto h = solve_homotopy(q, scalar);
        if (!h) {
            bad << fam << ": no solution; ";
            return;
        }
        QuadrupleReport r = verify(q.with_homotopy(*h));
        if (!r.homotopy_ok.value_or(false)) bad << fam << ": identity fails; ";
    };
    check("sigma", 4, 2, 2);
    check("sigma", 8, 2, 2);
    check("remark18", 4, 2, 2);
    check("s4", 0, 0, 2);
    detail = bad.str();
    return detail.empty();
}

bool criterion_oracle_equivalence(std::string& detail)
{
    // the independent oracle: H^0 = Z/m, H^{n >= 1} = Z/gcd(k, m) from the
    // 2-periodic resolution of cyclic groups
    CohomologyContext ctx;
    std::ostringstream bad;
    for (int k = 2; k <= 8; ++k)
        for (std::int64_t m : {2, 3, 4})
            for (int n = 0; n <= 3; ++n) {
                std::vector<std::int64_t> oracle;
                if (n == 0)
                    oracle = {m};
                else if (gcd_i64(k, m) > 1)
                    oracle = {gcd_i64(k, m)};
                auto g = build_cyclic(k);
                auto h = ctx.cohomology(g, trivial_module(g, ring_mod(m), 1), n);
                if (h->divisors() != oracle) bad << "k=" << k << ",m=" << m << ",n=" << n << "; ";
            }
    detail = bad.str();
    return detail.empty();
}

bool criterion_transfer_identity(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;

    struct Case {
        GroupPtr g;
        std::vector<int> h_gens;
        std::string tag;
        std::vector<std::int64_t> twist; // over Z/4
    };
    std::vector<Case> cases;
    {
        auto z4 = build_cyclic(4);
        cases.push_back({z4, {2}, "Z4/Z2", {1, 3, 1, 3}});
        auto klein = build_klein_four();
        cases.push_back({klein, {1}, "V4/Z2", {1, 1, 3, 3}});
        auto d4 = build_dihedral(4);
        std::vector<std::int64_t> det(8, 1);
        for (int i = 4; i < 8; ++i) det[i] = 3; // reflections act by -1
        cases.push_back({d4, {1}, "Gamma4/Sigma4", det});
    }
    for (const auto& c : cases) {
        Subgroup h(c.g, c.h_gens);
        const Int index = h.index();
        std::vector<ModulePtr> coefficients = {
            trivial_module(c.g, ring_mod(2), 1),
            character_twist(trivial_module(c.g, ring_mod(4), 1), c.twist)};
        for (const auto& m : coefficients)
            for (int n = 0; n <= 2; ++n) {
                auto res = ctx.res(h, m, n);
                auto cor = ctx.cor(h, m, n);
                FinAbMap composite = cor.map.compose(res.map);
                FinAbMap expected = FinAbMap::identity(composite.source()).scaled(index.convert_to<std::int64_t>());
                if (!composite.equal_to(expected))
                    bad << c.tag << " modulus " << m->ring().modulus << " n=" << n << "; ";
            }
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_bockstein_properties(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;

    // beta o beta = 0 on the computed instances
    struct Inst {
        GroupPtr g;
        ModulePtr m2;
        std::string tag;
    };
    std::vector<Inst> instances;
    {
        auto z2 = build_cyclic(2);
        auto z3 = build_cyclic(3);
        auto z4 = build_cyclic(4);
        auto klein = build_klein_four();
        auto d4 = build_dihedral(4);
        instances.push_back({z2, trivial_module(z2, ring_mod(4), 1), "Z2/t4"});
        instances.push_back({z2, character_twist(trivial_module(z2, ring_mod(4), 1), {1, 3}), "Z2/tw4"});
        instances.push_back({z3, trivial_module(z3, ring_mod(9), 1), "Z3/t9"});
        instances.push_back({z4, trivial_module(z4, ring_mod(4), 1), "Z4/t4"});
        instances.push_back({klein, trivial_module(klein, ring_mod(4), 1), "V4/t4"});
        instances.push_back({d4, trivial_module(d4, ring_mod(4), 1), "D4/t4"});
    }
    for (const auto& inst : instances)
        for (int n = 0; n <= 1; ++n) {
            auto b1 = ctx.bockstein(inst.g, inst.m2, n);
            auto b2 = ctx.bockstein(inst.g, inst.m2, n + 1);
            if (!b2.map.compose(b1.map).is_zero()) bad << inst.tag << " beta^2 != 0 at n=" << n << "; ";
        }

    // beta^0 = 0 for trivially-acted coefficients
    for (const auto& inst : instances) {
        bool trivially_acted = true;
        for (int g = 0; g < inst.g->order(); ++g)
            if (!(inst.m2->action(g) == IntMatrix::identity(inst.m2->rank()))) trivially_acted = false;
        if (trivially_acted && !ctx.bockstein_vanishes(inst.g, inst.m2, 0))
            bad << inst.tag << " beta^0 != 0; ";
    }

    // naturality for module maps defined over Z/m^2
    {
        auto z2 = build_cyclic(2);
        auto reg2 = perm_module(regular_gset(z2), ring_mod(4));
        auto t4 = trivial_module(z2, ring_mod(4), 1);
        ModuleMap aug(reg2, t4, IntMatrix(1, 2, {Int(1), Int(1)}));
        ModuleMap norm(t4, reg2, IntMatrix(2, 1, {Int(1), Int(1)}));
        for (const ModuleMap& f : {aug, norm}) {
            ModuleMap f1(reduce_mod(f.source(), 2), reduce_mod(f.target(), 2), f.matrix());
            for (int n = 0; n <= 1; ++n) {
                auto lhs = ctx.induced(f1, n + 1).map.compose(ctx.bockstein(z2, f.source(), n).map);
                auto rhs = ctx.bockstein(z2, f.target(), n).map.compose(ctx.induced(f1, n).map);
                if (!lhs.equal_to(rhs)) bad << "naturality fails at n=" << n << "; ";
            }
        }
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_degree_shift(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;
    for (const auto& [fam, k, m] : representative_catalog()) {
        ExactQuadruple q = ensure_homotopy(catalog_build(fam, k, m));
        for (int twisted = 0; twisted <= 1; ++twisted) {
            ModulePtr t2 = twisted ? twisted_t2(q) : trivial_t2(q);
            TensoredQuadruple t = tensor_with(q, t2, q.homotopy()->scalar);
            SplitQuadruple s = split_quadruple(q, t);
            for (int n = 0; n <= 1; ++n) {
                if (!degree_shift_identity(ctx, s.first, n))
                    bad << q.name() << (twisted ? "/tw" : "") << " first n=" << n << "; ";
                if (!degree_shift_identity(ctx, s.second, n))
                    bad << q.name() << (twisted ? "/tw" : "") << " second n=" << n << "; ";
            }
            for (const TripleWithHomotopy* tr : {&s.first, &s.second}) {
                if (triple_max_order(*tr) > 4096) continue;
                if (!degree_shift_extension_check(*tr))
                    bad << q.name() << (twisted ? "/tw" : "") << " extension-level; ";
            }
        }
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_six_term(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;
    for (const auto& [fam, k, m] : representative_catalog()) {
        ExactQuadruple q = ensure_homotopy(catalog_build(fam, k, m));
        ModulePtr t2 = trivial_t2(q);
        for (int n = 0; n <= 1; ++n) {
            SixTermReport rep = six_term(ctx, q, t2, n);
            if (!rep.gates_passed) continue; // nothing asserted at this degree
            for (int i = 0; i < 4; ++i)
                if (!rep.exact_at_interior[i])
                    bad << q.name() << " n=" << n << " position " << i << "; ";
            if (!rep.n_extension_ok) bad << q.name() << " n=" << n << " N-extension; ";
        }
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_prop78(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;
    // prop7 instances (G, H, m, k)
    struct P7 {
        GroupPtr g;
        int h_order;
        std::int64_t m;
        int k;
    };
    std::vector<P7> p7 = {{build_cyclic(2), 1, 2, 2},
                          {build_cyclic(4), 2, 4, 2},
                          {build_cyclic(4), 1, 4, 4}};
    for (const auto& c : p7) {
        Subgroup h = c.h_order == 1 ? Subgroup(c.g, {}) : Subgroup(c.g, {c.g->order() / c.h_order});
        auto t2 = trivial_module(c.g, ring_mod(c.m * c.m), 1);
        for (int n = 0; n <= 1; ++n) {
            SequenceReport rep = cyclic_quotient_sequence(ctx, h, c.m, t2, n);
            if (n == 0 && !rep.gates_passed) {
                bad << rep.name << " gate failed at n=0; ";
                continue;
            }
            if (rep.gates_passed && !rep.all_exact())
                bad << rep.name << " m=" << c.m << " not exact at n=" << n << "; ";
            // k = m: the display must be the unscaled classical one; verify
            // the first map carries no m/k scaling by recomputing it
            if (n == 0 && c.k == int(c.m)) {
                auto res_map = ctx.res(h, reduce_mod(t2, c.m), 0);
                FinAbQuotient coin = ctx.sigma_coinvariants(h, reduce_mod(t2, c.m), 0);
                FinAbMap unscaled = coin.project.compose(res_map.map);
                if (!rep.maps[0].equal_to(unscaled)) bad << rep.name << " k=m scaling wrong; ";
            }
        }
    }
    // prop8 instances (G, H, m)
    struct P8 {
        GroupPtr g;
        int h_order;
        std::int64_t m;
    };
    std::vector<P8> p8 = {{build_cyclic(4), 1, 2}, {build_cyclic(8), 1, 2}, {build_cyclic(8), 2, 2}};
    for (const auto& c : p8) {
        Subgroup h = c.h_order == 1 ? Subgroup(c.g, {}) : Subgroup(c.g, {c.g->order() / c.h_order});
        auto t2 = trivial_module(c.g, ring_mod(c.m * c.m), 1);
        TowerSequenceReports rep = cyclic_tower_sequences(ctx, h, c.m, t2, 0);
        if (!rep.first.gates_passed) {
            bad << rep.first.name << " gates failed; ";
            continue;
        }
        if (!rep.first.all_exact()) bad << rep.first.name << " first not exact; ";
        if (!rep.second.all_exact()) bad << rep.second.name << " second not exact; ";
        if (!rep.nu_agrees_with_shapiro) bad << rep.first.name << " nu-shapiro transport; ";
        if (!rep.dual_nu_agrees_with_shapiro) bad << rep.first.name << " dual nu-shapiro transport; ";
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_section5(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;
    {
        auto g8 = build_dihedral(8);
        SequenceReport rep = dihedral_sequence_first(ctx, 8, trivial_module(g8, ring_mod(4), 1), 0);
        if (!rep.gates_passed)
            bad << "dihedral-first gates; ";
        else if (!rep.all_exact())
            bad << "dihedral-first not exact [" << rep.details << "]; ";
    }
    {
        auto g4 = build_dihedral(4);
        SequenceReport rep = dihedral_sequence_second(ctx, 4, trivial_module(g4, ring_mod(4), 1), 0);
        if (!rep.gates_passed)
            bad << "dihedral-second gates; ";
        else if (!rep.all_exact())
            bad << "dihedral-second not exact [" << rep.details << "]; ";
    }
    {
        auto theta = build_klein_four();
        auto t2 = trivial_module(theta, ring_mod(4), 1);
        for (int n = 0; n <= 1; ++n) {
            SequenceReport rep = biquadratic_sequence(ctx, t2, n);
            if (rep.gates_passed && !rep.all_exact())
                bad << "biquadratic not exact at n=" << n << "; ";
            if (n == 0 && !rep.gates_passed) bad << "biquadratic gate failed at n=0; ";
        }
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_nu_independence(std::string& detail)
{
    CohomologyContext ctx;
    std::ostringstream bad;
    auto check = [&](const ExactQuadruple& q, const HomotopyTriple& h1, const HomotopyTriple& h2) {
        auto t2 = trivial_t2(q);
        NuIndependenceResult r = nu_independence(ctx, q, h1, h2, t2, 0);
        if (!r.nu_equal) bad << q.name() << " nu differs; ";
        if (r.applicable_extension_check && !r.extensions_isomorphic)
            bad << q.name() << " extensions not isomorphic; ";
    };
    {
        ExactQuadruple q = catalog_build("cyclic", 2);
        auto solved = solve_homotopy(q, 2);
        check(q, *q.homotopy(), *solved);
    }
    {
        ExactQuadruple q = catalog_build("cyclic", 4);
        auto solved = solve_homotopy(q, 4);
        check(q, *q.homotopy(), *solved);
    }
    {
        ExactQuadruple q = catalog_build("sigma", 4, 2);
        auto h1 = solve_homotopy(q, 2, 0);
        auto h2 = solve_homotopy(q, 2, 1);
        check(q, *h1, *h2);
    }
    detail = bad.str();
    return detail.empty();
}

bool criterion_determinism(std::string& detail)
{
    std::ostringstream bad;
    std::vector<std::vector<std::string>> commands = {
        {"catalog", "list", "--format", "json"},
        {"verify", "dihedral", "--k", "8", "--format", "json"},
        {"verify", "s4", "--solve-homotopy", "2", "--format", "json"},
        {"cohomology", "--group", "dihedral:4", "--coeff", "trivial:2", "--nmax", "2", "--format",
         "json"},
        {"sixterm", "--quadruple", "cyclic", "--k", "2", "--coeff", "trivial", "--n", "0",
         "--format", "json"},
        {"sixterm", "--variant", "prop8", "--group", "cyclic:4", "--m", "2", "--n", "0",
         "--format", "json"},
        {"sixterm", "--variant", "biquadratic", "--n", "0", "--format", "json"},
    };
    for (const auto& cmd : commands) {
        std::ostringstream out1, out2, err;
        int c1 = run_command(cmd, out1, err);
        int c2 = run_command(cmd, out2, err);
        if (c1 != c2 || out1.str() != out2.str()) {
            bad << "command";
            for (const auto& a : cmd) bad << " " << a;
            bad << " not byte-stable; ";
        }
        if (out1.str().empty()) bad << "empty output; ";
    }
    // export twice, compare file bytes
    std::filesystem::create_directories("/tmp/qcoh_accept");
    for (const char* path : {"/tmp/qcoh_accept/a.json", "/tmp/qcoh_accept/b.json"}) {
        std::ostringstream out, err;
        run_command({"export", "--quadruple", "dihedral", "--k", "4", "--out-file", path}, out, err);
    }
    std::ifstream a("/tmp/qcoh_accept/a.json"), b("/tmp/qcoh_accept/b.json");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str().empty() || sa.str() != sb.str()) bad << "export not byte-stable; ";
    detail = bad.str();
    return detail.empty();
}

} // namespace

int main()
{
    Tally tally;
    auto run = [&](int number, const std::string& name, double budget,
                   const std::function<bool(std::string&)>& f) {
        bool ok = false;
        std::string detail;
        double secs = run_timed([&] { return f(detail); }, ok, detail);
        report(tally, number, name, ok, secs, budget, detail);
    };

    run(1, "catalog-integrity", 30, criterion_catalog_integrity);
    run(2, "homotopy-solver", 60, criterion_homotopy_solver);
    run(3, "cohomology-oracle-equivalence", 60, criterion_oracle_equivalence);
    run(4, "transfer-identity", 0, criterion_transfer_identity);
    run(5, "bockstein-properties", 0, criterion_bockstein_properties);
    run(6, "degree-shift-identity", 300, criterion_degree_shift);
    run(7, "six-term-exactness", 600, criterion_six_term);
    run(8, "cyclic-quotient-and-tower", 0, criterion_prop78);
    run(9, "dihedral-and-biquadratic", 0, criterion_section5);
    run(10, "nu-independence", 0, criterion_nu_independence);
    run(11, "determinism", 0, criterion_determinism);

    std::cout << tally.passed << " passed, " << tally.failed << " failed" << std::endl;
    return tally.failed == 0 ? 0 : 1;
}
