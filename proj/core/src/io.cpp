#include "qcoh/io.hpp"

namespace qcoh {

Json matrix_to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).convert_to<long long>());
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j)
{
    if (!j.is_array()) throw SchemaError("matrix: array expected");
    const int rows = int(j.size());
    int cols = rows == 0 ? 0 : int(j[0].size());
    IntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || int(j[r].size()) != cols)
            throw SchemaError("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) {
            if (!j[r][c].is_number_integer()) throw SchemaError("matrix: integer entries expected");
            m.at(r, c) = Int(j[r][c].get<long long>());
        }
    }
    return m;
}

Json finab_to_json(const FinAb& g)
{
    Json divisors = Json::array();
    for (auto d : g.divisors()) divisors.push_back(d);
    return Json{{"divisors", divisors}};
}

Json finab_map_to_json(const FinAbMap& m)
{
    return Json{{"source", finab_to_json(m.source())},
                {"target", finab_to_json(m.target())},
                {"matrix", matrix_to_json(m.matrix())}};
}

namespace {

std::string ring_to_string(const RingSpec& r)
{
    return r.is_integers() ? "Z" : "Z/" + std::to_string(r.modulus);
}

RingSpec ring_from_string(const std::string& s)
{
    if (s == "Z") return ring_z();
    if (s.rfind("Z/", 0) == 0) {
        long long n = std::stoll(s.substr(2));
        if (n < 2) throw SchemaError("ring: modulus must be >= 2");
        return ring_mod(n);
    }
    throw SchemaError("ring: expected Z or Z/N");
}

Json module_to_json(const ModulePtr& m, const std::string& name)
{
    Json action = Json::object();
    for (int g = 0; g < m->group()->order(); ++g)
        action[std::to_string(g)] = matrix_to_json(m->action(g));
    return Json{{"name", name},
                {"rank", m->rank()},
                {"ring", ring_to_string(m->ring())},
                {"action", std::move(action)}};
}

} // namespace

Json quadruple_to_json(const ExactQuadruple& q)
{
    Json table = Json::array();
    for (int a = 0; a < q.group()->order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < q.group()->order(); ++b) row.push_back(q.group()->mul(a, b));
        table.push_back(std::move(row));
    }
    const char* names[4] = {"A", "B", "C", "D"};
    Json modules = Json::array();
    for (int i = 0; i < 4; ++i) modules.push_back(module_to_json(q.module(i), names[i]));
    Json maps = Json::array();
    maps.push_back(Json{{"from", "A"}, {"to", "B"}, {"matrix", matrix_to_json(q.d_ab().matrix())}});
    maps.push_back(Json{{"from", "B"}, {"to", "C"}, {"matrix", matrix_to_json(q.d_bc().matrix())}});
    maps.push_back(Json{{"from", "C"}, {"to", "D"}, {"matrix", matrix_to_json(q.d_cd().matrix())}});
    Json homotopy;
    if (q.homotopy()) {
        Json hm = Json::array();
        hm.push_back(Json{{"from", "B"}, {"to", "A"}, {"matrix", matrix_to_json(q.homotopy()->h_ba.matrix())}});
        hm.push_back(Json{{"from", "C"}, {"to", "B"}, {"matrix", matrix_to_json(q.homotopy()->h_cb.matrix())}});
        hm.push_back(Json{{"from", "D"}, {"to", "C"}, {"matrix", matrix_to_json(q.homotopy()->h_dc.matrix())}});
        homotopy = Json{{"scalar", q.homotopy()->scalar}, {"maps", std::move(hm)}};
    } else {
        homotopy = nullptr;
    }
    return Json{{"name", q.name()},
                {"scalar", q.default_scalar()},
                {"group", Json{{"order", q.group()->order()}, {"table", std::move(table)}}},
                {"modules", std::move(modules)},
                {"maps", std::move(maps)},
                {"homotopy", std::move(homotopy)}};
}

ExactQuadruple quadruple_from_json(const Json& j)
{
    if (!j.is_object()) throw SchemaError("document: object expected");
    for (const char* key : {"group", "modules", "maps"})
        if (!j.contains(key)) throw SchemaError(std::string("document: missing key ") + key);

    const Json& jg = j["group"];
    if (!jg.contains("order") || !jg.contains("table")) throw SchemaError("group: order/table required");
    const int order = jg["order"].get<int>();
    std::vector<std::vector<int>> table;
    for (const auto& row : jg["table"]) {
        std::vector<int> r;
        for (const auto& v : row) r.push_back(v.get<int>());
        table.push_back(std::move(r));
    }
    if (int(table.size()) != order) throw SchemaError("group: table size mismatch");
    GroupPtr group;
    try {
        group = intern_group(std::move(table), "imported");
    } catch (const std::invalid_argument& e) {
        throw InvariantError(std::string("group: ") + e.what());
    }

    const Json& jm = j["modules"];
    if (!jm.is_array() || jm.size() != 4) throw SchemaError("modules: four expected");
    std::vector<ModulePtr> modules;
    for (const auto& md : jm) {
        if (!md.contains("rank") || !md.contains("ring") || !md.contains("action"))
            throw SchemaError("module: rank/ring/action required");
        RingSpec ring = ring_from_string(md["ring"].get<std::string>());
        int rank = md["rank"].get<int>();
        std::vector<IntMatrix> action(order, IntMatrix::identity(rank));
        for (int g = 0; g < order; ++g) {
            std::string key = std::to_string(g);
            if (!md["action"].contains(key)) throw SchemaError("module: missing action for element");
            action[g] = matrix_from_json(md["action"][key]);
        }
        try {
            modules.push_back(std::make_shared<GModule>(group, ring, rank, std::move(action),
                                                        md.value("name", "M")));
        } catch (const std::invalid_argument& e) {
            throw InvariantError(std::string("module: ") + e.what());
        }
    }

    const Json& jmaps = j["maps"];
    if (!jmaps.is_array() || jmaps.size() != 3) throw SchemaError("maps: three expected");
    auto index_of = [&](const std::string& name) {
        const char* names[4] = {"A", "B", "C", "D"};
        for (int i = 0; i < 4; ++i)
            if (name == names[i]) return i;
        throw SchemaError("map: unknown module name " + name);
    };
    std::vector<ModuleMap> diffs;
    for (int i = 0; i < 3; ++i) {
        const auto& jd = jmaps[i];
        int from = index_of(jd["from"].get<std::string>());
        int to = index_of(jd["to"].get<std::string>());
        if (from != i || to != i + 1) throw SchemaError("maps: must chain A->B->C->D");
        try {
            diffs.emplace_back(modules[from], modules[to], matrix_from_json(jd["matrix"]));
        } catch (const std::invalid_argument& e) {
            throw InvariantError(std::string("map: ") + e.what());
        }
    }

    std::optional<HomotopyTriple> homotopy;
    std::int64_t scalar = j.value("scalar", 0);
    if (j.contains("homotopy") && !j["homotopy"].is_null()) {
        const Json& jh = j["homotopy"];
        if (!jh.contains("scalar") || !jh.contains("maps") || jh["maps"].size() != 3)
            throw SchemaError("homotopy: scalar and three maps required");
        try {
            homotopy = HomotopyTriple{
                ModuleMap(modules[1], modules[0], matrix_from_json(jh["maps"][0]["matrix"])),
                ModuleMap(modules[2], modules[1], matrix_from_json(jh["maps"][1]["matrix"])),
                ModuleMap(modules[3], modules[2], matrix_from_json(jh["maps"][2]["matrix"])),
                jh["scalar"].get<std::int64_t>()};
        } catch (const std::invalid_argument& e) {
            throw InvariantError(std::string("homotopy: ") + e.what());
        }
        if (scalar == 0) scalar = homotopy->scalar;
    }
    if (scalar == 0) scalar = 1;

    ExactQuadruple q(j.value("name", "imported"), diffs[0], diffs[1], diffs[2],
                     std::move(homotopy), scalar, {});

    // structural invariants: d o d = 0 and the homotopy identity
    if (!(q.d_bc().matrix() * q.d_ab().matrix()).is_zero() ||
        !(q.d_cd().matrix() * q.d_bc().matrix()).is_zero())
        throw InvariantError("document: d o d != 0");
    if (q.homotopy()) {
        QuadrupleReport r = verify(q);
        if (!r.homotopy_ok.value_or(false)) throw InvariantError("document: homotopy identity fails");
    }
    return q;
}

Json quadruple_report_to_json(const ExactQuadruple& q, const QuadrupleReport& r)
{
    Json verdicts{{"complex_ok", r.complex_ok},
                  {"injective_at_A", r.injective_at_a},
                  {"exact_at_B", r.exact_at_b},
                  {"exact_at_C", r.exact_at_c},
                  {"surjective_at_D", r.surjective_at_d}};
    if (r.homotopy_ok) verdicts["homotopy_ok"] = *r.homotopy_ok;
    Json ranks = Json::array();
    for (int i = 0; i < 4; ++i) ranks.push_back(q.module(i)->rank());
    return Json{{"command", "verify"},
                {"quadruple", q.name()},
                {"group_order", q.group()->order()},
                {"ranks", std::move(ranks)},
                {"verdicts", std::move(verdicts)},
                {"all_ok", r.all_ok()},
                {"details", r.details}};
}

Json six_term_report_to_json(const SixTermReport& r)
{
    Json gates = Json::array();
    for (int i = 0; i < 4; ++i)
        gates.push_back(Json{{"module", std::string(1, "ABCD"[i])}, {"vanishes", r.bockstein_vanishes[i]}});
    Json groups = Json::array();
    for (const auto& g : r.groups) groups.push_back(finab_to_json(g));
    Json maps = Json::array();
    for (const auto& m : r.maps) maps.push_back(finab_map_to_json(m));
    Json exact = Json::array();
    for (int i = 0; i < 4; ++i) exact.push_back(r.exact_at_interior[i]);
    return Json{{"command", "sixterm"},
                {"quadruple", r.quadruple_name},
                {"m", r.m},
                {"degree", r.degree},
                {"bockstein_gates", std::move(gates)},
                {"gates_passed", r.gates_passed},
                {"groups", std::move(groups)},
                {"maps", std::move(maps)},
                {"exact_at_interior", std::move(exact)},
                {"n_extension_ok", r.n_extension_ok},
                {"details", r.details}};
}

Json sequence_report_to_json(const SequenceReport& r)
{
    Json gates = Json::array();
    for (const auto& [tag, v] : r.bockstein_gates)
        gates.push_back(Json{{"subgroup", tag}, {"vanishes", v}});
    Json groups = Json::array();
    for (const auto& g : r.groups) groups.push_back(finab_to_json(g));
    Json maps = Json::array();
    for (const auto& m : r.maps) maps.push_back(finab_map_to_json(m));
    Json exact = Json::array();
    for (bool b : r.exact_at) exact.push_back(b);
    return Json{{"command", "sixterm"},
                {"sequence", r.name},
                {"m", r.m},
                {"degree", r.degree},
                {"bockstein_gates", std::move(gates)},
                {"gates_passed", r.gates_passed},
                {"groups", std::move(groups)},
                {"maps", std::move(maps)},
                {"exact_at_interior", std::move(exact)},
                {"details", r.details}};
}

} // namespace qcoh
