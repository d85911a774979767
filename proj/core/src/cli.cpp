#include "qcoh/cli.hpp"

#include "qcoh/catalog.hpp"
#include "qcoh/io.hpp"
#include "qcoh/sequences.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace qcoh {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitCorrupt = 4;

struct CommonOpts {
    std::string format = "text";
    std::string out_path;
    int degree_cap = 3;
    int order_cap = 48;
    std::int64_t dim_ceiling = 200000;
    bool timing = false;
    std::chrono::steady_clock::duration start_time{};
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", o.out_path);
    cmd->add_option("--degree-cap", o.degree_cap);
    cmd->add_option("--order-cap", o.order_cap);
    cmd->add_option("--dim-ceiling", o.dim_ceiling);
    cmd->add_flag("--timing", o.timing);
}

void load_config_env(CommonOpts& o)
{
    const char* path = std::getenv("QCOH_CONFIG");
    if (!path) return;
    std::ifstream in(path);
    if (!in) return;
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) return;
    o.degree_cap = j.value("degree_cap", o.degree_cap);
    o.order_cap = j.value("order_cap", o.order_cap);
    o.dim_ceiling = j.value("dim_ceiling", o.dim_ceiling);
}

CohomologyOptions to_options(const CommonOpts& o)
{
    return CohomologyOptions{o.degree_cap, o.order_cap, o.dim_ceiling};
}

void emit(const CommonOpts& o, Json j, const std::string& text, std::ostream& out)
{
    // timing is opt-in: reports stay byte-identical across runs by default
    if (o.timing) {
        auto now = std::chrono::steady_clock::now().time_since_epoch();
        j["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now - o.start_time).count();
    }
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        f << j.dump(2) << '\n';
    }
    if (o.format == "json")
        out << j.dump(2) << '\n';
    else
        out << text;
}

GroupPtr parse_group_spec(const std::string& spec)
{
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    int k = colon == std::string::npos ? 0 : std::stoi(spec.substr(colon + 1));
    if (kind == "trivial") return build_trivial();
    if (kind == "cyclic") return build_cyclic(k);
    if (kind == "dihedral") return build_dihedral(k);
    if (kind == "klein_four") return build_klein_four();
    if (kind == "symmetric") return build_symmetric(k);
    throw std::invalid_argument("unknown group spec: " + spec);
}

ModulePtr parse_coeff_spec(const std::string& spec, const GroupPtr& g)
{
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    if (kind == "trivial") {
        if (colon == std::string::npos) throw std::invalid_argument("coeff: trivial:<m> expected");
        std::int64_t m = std::stoll(spec.substr(colon + 1));
        return trivial_module(g, ring_mod(m), 1);
    }
    throw std::invalid_argument("unknown coefficient spec: " + spec);
}

int cmd_catalog(const CommonOpts& o, std::ostream& out)
{
    Json entries = Json::array();
    std::string text;
    for (const auto& e : catalog_entries()) {
        entries.push_back(Json{{"family", e.family},
                               {"shape", e.shape},
                               {"constraints", e.constraints},
                               {"takes_k", e.takes_k},
                               {"takes_m", e.takes_m}});
        text += e.family;
        if (e.takes_k || e.takes_m) {
            text += " (";
            if (e.takes_k) text += "k";
            if (e.takes_k && e.takes_m) text += ", ";
            if (e.takes_m) text += "m";
            text += ")";
        }
        if (!e.constraints.empty()) text += "  [" + e.constraints + "]";
        text += "\n    " + e.shape + "\n";
    }
    emit(o, Json{{"command", "catalog list"}, {"entries", entries}}, text, out);
    return kExitOk;
}

int cmd_verify(const CommonOpts& o, const std::string& family, int k, int m,
               std::int64_t solve_scalar, std::ostream& out)
{
    ExactQuadruple q = catalog_build(family, k, m);
    if (solve_scalar > 0 && !q.homotopy()) {
        auto h = solve_homotopy(q, solve_scalar);
        if (h) q = q.with_homotopy(std::move(*h));
    }
    QuadrupleReport r = verify(q);
    Json j = quadruple_report_to_json(q, r);
    std::string text = "quadruple " + q.name() + ": " + (r.all_ok() ? "ok" : "FAILED") + "\n";
    if (!r.details.empty()) text += "  " + r.details + "\n";
    if (solve_scalar > 0 && !q.homotopy()) text += "  solver found no homotopy\n";
    emit(o, j, text, out);
    if (solve_scalar > 0 && !q.homotopy()) return kExitVerdict;
    return r.all_ok() ? kExitOk : kExitVerdict;
}

int cmd_cohomology(const CommonOpts& o, const std::string& group_spec,
                   const std::string& coeff_spec, int nmax, std::ostream& out)
{
    GroupPtr g = parse_group_spec(group_spec);
    ModulePtr m = parse_coeff_spec(coeff_spec, g);
    CohomologyContext ctx(to_options(o));
    Json table = Json::array();
    std::string text = "H^n(" + g->name() + ", " + coeff_spec + "):\n";
    for (int n = 0; n <= nmax; ++n) {
        auto h = ctx.cohomology(g, m, n);
        Json divisors = Json::array();
        text += "  n=" + std::to_string(n) + ": ";
        if (h->divisors().empty()) text += "0";
        for (auto d : h->divisors()) {
            divisors.push_back(d);
            text += "Z/" + std::to_string(d) + " ";
        }
        text += "\n";
        table.push_back(Json{{"degree", n}, {"divisors", divisors}});
    }
    emit(o,
         Json{{"command", "cohomology"},
              {"group", group_spec},
              {"coeff", coeff_spec},
              {"table", table}},
         text, out);
    return kExitOk;
}

Subgroup cyclic_subgroup_of_order(const GroupPtr& g, int order)
{
    if (order <= 1) return Subgroup(g, {});
    for (int a = 1; a < g->order(); ++a)
        if (g->element_order(a) == order) return Subgroup(g, {a});
    throw std::invalid_argument("no cyclic subgroup of the requested order");
}

int cmd_sixterm(const CommonOpts& o, const std::string& variant, const std::string& family, int k,
                int m, const std::string& coeff, int n, const std::string& group_spec, int h_order,
                int display, std::ostream& out)
{
    CohomologyContext ctx(to_options(o));
    if (variant == "theorem6") {
        ExactQuadruple q = catalog_build(family, k, m);
        std::int64_t scalar = q.default_scalar();
        ModulePtr t2;
        if (coeff == "trivial")
            t2 = trivial_module(q.group(), ring_mod(scalar * scalar), 1);
        else if (coeff == "twist")
            t2 = character_twist(trivial_module(q.group(), ring_mod(scalar * scalar), 1),
                                 canonical_twist(q, scalar));
        else
            throw std::invalid_argument("coeff must be trivial or twist");
        SixTermReport rep = six_term(ctx, q, t2, n);
        Json j = six_term_report_to_json(rep);
        std::string text = "six-term for " + q.name() + " at n=" + std::to_string(n) + ": ";
        if (!rep.gates_passed)
            text += "gated (a Bockstein is nonzero)\n";
        else
            text += rep.exact_when_gated() && rep.n_extension_ok ? "exact\n" : "FAILED\n";
        if (!rep.details.empty()) text += "  " + rep.details + "\n";
        emit(o, j, text, out);
        return rep.gates_passed && rep.exact_when_gated() && rep.n_extension_ok ? kExitOk
                                                                                : kExitVerdict;
    }
    if (variant == "prop7" || variant == "prop8") {
        GroupPtr g = parse_group_spec(group_spec);
        Subgroup h = cyclic_subgroup_of_order(g, h_order);
        auto t2 = trivial_module(g, ring_mod(std::int64_t(m) * m), 1);
        if (variant == "prop7") {
            SequenceReport rep = cyclic_quotient_sequence(ctx, h, m, t2, n);
            Json j = sequence_report_to_json(rep);
            std::string text = rep.name + ": " +
                               (rep.gates_passed ? (rep.all_exact() ? "exact" : "FAILED")
                                                 : "gated") +
                               "\n";
            emit(o, j, text, out);
            return rep.gates_passed && rep.all_exact() ? kExitOk : kExitVerdict;
        }
        TowerSequenceReports rep = cyclic_tower_sequences(ctx, h, m, t2, n);
        Json j = Json{{"command", "sixterm"},
                      {"variant", "prop8"},
                      {"first", sequence_report_to_json(rep.first)},
                      {"second", sequence_report_to_json(rep.second)},
                      {"nu_agrees_with_shapiro", rep.nu_agrees_with_shapiro},
                      {"nu_shapiro_sign", rep.nu_shapiro_sign}};
        bool ok = rep.first.gates_passed && rep.first.all_exact() && rep.second.all_exact();
        std::string text = std::string("tower sequences: ") + (ok ? "both exact" : "FAILED") + "\n";
        emit(o, j, text, out);
        return ok ? kExitOk : kExitVerdict;
    }
    if (variant == "dihedral") {
        GroupPtr g = build_dihedral(k);
        auto t2 = parse_coeff_spec(coeff == "trivial" ? "trivial:4" : coeff, g);
        SequenceReport rep = display == 2 ? dihedral_sequence_second(ctx, k, t2, n)
                                          : dihedral_sequence_first(ctx, k, t2, n);
        Json j = sequence_report_to_json(rep);
        std::string text =
            rep.name + ": " +
            (rep.gates_passed ? (rep.all_exact() ? "exact" : "FAILED") : "gated") + "\n";
        emit(o, j, text, out);
        return rep.gates_passed && rep.all_exact() ? kExitOk : kExitVerdict;
    }
    if (variant == "biquadratic") {
        GroupPtr g = build_klein_four();
        auto t2 = trivial_module(g, ring_mod(4), 1);
        SequenceReport rep = biquadratic_sequence(ctx, t2, n);
        Json j = sequence_report_to_json(rep);
        std::string text =
            rep.name + ": " +
            (rep.gates_passed ? (rep.all_exact() ? "exact" : "FAILED") : "gated") + "\n";
        emit(o, j, text, out);
        return rep.gates_passed && rep.all_exact() ? kExitOk : kExitVerdict;
    }
    throw std::invalid_argument("unknown variant: " + variant);
}

int cmd_export(const CommonOpts& o, const std::string& family, int k, int m,
               const std::string& path, std::ostream& out)
{
    ExactQuadruple q = catalog_build(family, k, m);
    Json j = quadruple_to_json(q);
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << j.dump(2) << '\n';
    if (o.format == "json")
        out << Json{{"command", "export"}, {"quadruple", q.name()}, {"path", path}}.dump(2) << '\n';
    else
        out << "wrote " << q.name() << " to " << path << "\n";
    return kExitOk;
}

int cmd_import(const CommonOpts& o, const std::string& path, std::ostream& out)
{
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    Json j = Json::parse(f, nullptr, false);
    if (j.is_discarded()) throw SchemaError("not valid JSON");
    ExactQuadruple q = quadruple_from_json(j);
    QuadrupleReport r = verify(q);
    Json rep = quadruple_report_to_json(q, r);
    std::string text = "imported " + q.name() + "; verify: " + (r.all_ok() ? "ok" : "FAILED") + "\n";
    emit(o, rep, text, out);
    return r.all_ok() ? kExitOk : kExitVerdict;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact quadruples of permutational representations and finite group cohomology"};
    app.require_subcommand(1);
    CommonOpts opts;
    opts.start_time = std::chrono::steady_clock::now().time_since_epoch();
    load_config_env(opts);

    auto* catalog = app.add_subcommand("catalog", "list the quadruple catalog");
    std::string catalog_action;
    catalog->add_option("action", catalog_action)->required()->check(CLI::IsMember({"list"}));
    add_common(catalog, opts);

    std::string family;
    int k = 0, m = 0;
    std::int64_t solve_scalar = 0;
    auto* verify_cmd = app.add_subcommand("verify", "build and verify a catalog quadruple");
    verify_cmd->add_option("family", family)->required();
    verify_cmd->add_option("--k", k);
    verify_cmd->add_option("--m", m);
    verify_cmd->add_option("--solve-homotopy", solve_scalar);
    add_common(verify_cmd, opts);

    std::string group_spec, coeff_spec = "trivial:2";
    int nmax = 3;
    auto* coh = app.add_subcommand("cohomology", "elementary divisor table of H^n");
    coh->add_option("--group", group_spec)->required();
    coh->add_option("--coeff", coeff_spec)->required();
    coh->add_option("--nmax", nmax);
    add_common(coh, opts);

    std::string variant = "theorem6", st_family = "cyclic", st_coeff = "trivial";
    int st_k = 0, st_m = 0, st_n = 0, h_order = 1, display = 1;
    std::string st_group;
    auto* st = app.add_subcommand("sixterm", "six-term sequence checks");
    st->add_option("--variant", variant)
        ->check(CLI::IsMember({"theorem6", "prop7", "prop8", "dihedral", "biquadratic"}));
    st->add_option("--quadruple", st_family);
    st->add_option("--k", st_k);
    st->add_option("--m", st_m);
    st->add_option("--coeff", st_coeff);
    st->add_option("--n", st_n);
    st->add_option("--group", st_group);
    st->add_option("--h-order", h_order);
    st->add_option("--display", display);
    add_common(st, opts);

    std::string exp_family, exp_path;
    int exp_k = 0, exp_m = 0;
    auto* exp = app.add_subcommand("export", "write a quadruple document");
    exp->add_option("--quadruple", exp_family)->required();
    exp->add_option("--k", exp_k);
    exp->add_option("--m", exp_m);
    exp->add_option("--out-file", exp_path)->required();
    add_common(exp, opts);

    std::string imp_path;
    auto* imp = app.add_subcommand("import", "read and re-validate a quadruple document");
    imp->add_option("path", imp_path)->required();
    add_common(imp, opts);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(catalog)) return cmd_catalog(opts, out);
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(opts, family, k, m, solve_scalar, out);
        if (app.got_subcommand(coh)) return cmd_cohomology(opts, group_spec, coeff_spec, nmax, out);
        if (app.got_subcommand(st))
            return cmd_sixterm(opts, variant, st_family, st_k, st_m, st_coeff, st_n, st_group,
                               h_order, display, out);
        if (app.got_subcommand(exp)) return cmd_export(opts, exp_family, exp_k, exp_m, exp_path, out);
        if (app.got_subcommand(imp)) return cmd_import(opts, imp_path, out);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvariantError& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const std::invalid_argument& e) {
        err << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerdict;
    }
    err << "no subcommand\n";
    return kExitUsage;
}

} // namespace qcoh
