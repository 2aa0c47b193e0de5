#include "eds/scenario.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

namespace eds {

using json = nlohmann::json;

namespace data {
extern const EmbeddedScenario scenarios[];
extern const std::size_t scenario_count;
}

const std::vector<EmbeddedScenario>& embedded_scenarios()
{
    static const std::vector<EmbeddedScenario> v(data::scenarios, data::scenarios + data::scenario_count);
    return v;
}

const EmbeddedScenario* find_scenario(const std::string& id)
{
    for (auto& s : embedded_scenarios())
        if (id == s.id) return &s;
    return nullptr;
}

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw std::runtime_error("sha256 failed");
    std::string out;
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

std::string golden_data_hash()
{
    std::string all;
    for (auto& s : embedded_scenarios()) all += std::string(s.id) + ":" + s.sha256 + "\n";
    return sha256_hex(all);
}

std::unique_ptr<ScenarioModel> build_scenario(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
    }
    auto m = std::make_unique<ScenarioModel>();
    try {
        m->id = j.at("id").get<std::string>();
        std::vector<std::string> dirs;
        for (auto& b : j.at("basis")) {
            std::string dir = std::to_string(m->basis.size());
            m->basis.push_back(m->sp.add_gen(b.get<std::string>(), 1, dir));
            dirs.push_back(dir);
        }
        m->sp.set_basis(m->basis);
        m->reg.set_directions(dirs);
        for (auto& c : j.value("connection", json::array())) {
            int g = m->sp.add_gen(c.get<std::string>());
            m->sp.set_unknown(g);
            m->connection.push_back(g);
        }
        for (auto& s : j.value("side_conditions", json::array())) m->reg.side_conditions.push_back(s.get<std::string>());
        std::map<Var, Expr> params;
        const json params_j = j.value("parameters", json::object());
        for (auto& [k, v] : params_j.items()) {
            Var p = m->reg.parameter(k);
            params[p] = v.is_string() ? m->reg.parse(v.get<std::string>()) : Expr(v.get<long>());
        }
        const json& st = j.at("structure");
        for (int g : m->basis) {
            const std::string& name = m->sp.frame.gen(g).name;
            Form f = m->sp.parse(st.at(name).get<std::string>()).subs(params);
            m->sp.set_d(g, f);
            m->structure.push_back(f);
        }
        m->primaries = symbols_of(m->reg, m->structure);
        const json derivs_j = j.value("derivatives", json::object());
        for (auto& [k, v] : derivs_j.items())
            m->published[m->reg.lookup(k)] = m->sp.parse(v.get<std::string>()).subs(params);
        const json mod_j = j.value("d2_mod", json::object());
        for (auto& [k, v] : mod_j.items()) {
            auto it = std::find(m->basis.begin(), m->basis.end(), m->sp.frame.at(k));
            std::set<int> kill;
            for (auto& g : v) kill.insert(m->sp.frame.at(g.get<std::string>()));
            m->d2_mod[static_cast<int>(it - m->basis.begin())] = kill;
        }
        for (auto& f : j.value("free", json::array())) m->free.push_back(m->reg.lookup(f.get<std::string>()));
        for (auto& f : j.value("absorb_targets", json::array())) m->targets.push_back(m->reg.lookup(f.get<std::string>()));
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& e) {
        throw ScenarioError("scenario " + m->id + ": " + e.what());
    }
    return m;
}

std::vector<Form> d2_residuals(ScenarioModel& m, const std::map<Var, Form>& rules)
{
    for (auto& [v, f] : rules) m.sp.override_d(v, f);
    std::vector<Form> out;
    for (std::size_t k = 0; k < m.basis.size(); ++k) {
        Form r = m.sp.d(m.structure[k]);
        auto it = m.d2_mod.find(static_cast<int>(k));
        if (it != m.d2_mod.end()) r = reduce_mod(r, it->second);
        out.push_back(r);
    }
    for (auto& [v, f] : rules) m.sp.clear_override(v);
    return out;
}

bool ScenarioResult::ok() const
{
    if (!hash_ok) return false;
    for (auto& c : checks)
        if (!c.ok) return false;
    return true;
}

namespace {

std::string join(const std::vector<int>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::string join(std::vector<std::string> v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s + "]";
}

void check(ScenarioResult& r, const std::string& field, const std::string& expected, const std::string& actual)
{
    r.checks.push_back({field, expected, actual, expected == actual});
}

}

ScenarioResult verify_scenario(const std::string& text, const std::string& pinned, std::uint64_t seed)
{
    ScenarioResult r;
    r.sha256 = sha256_hex(text);
    r.pinned = pinned;
    r.hash_ok = r.sha256 == pinned;
    json j = json::parse(text, nullptr, false);
    r.id = j.is_object() ? j.value("id", std::string("?")) : "?";
    if (!r.hash_ok) {
        check(r, "sha256", pinned, r.sha256);
        return r;
    }
    auto m = build_scenario(text);
    Registry& reg = m->reg;
    const json ex = j.value("expected", json::object());

    bool d2ok = true;
    for (auto& f : d2_residuals(*m, m->published)) {
        r.d2_published.push_back(m->sp.str(f));
        if (!f.zero()) d2ok = false;
    }
    check(r, "d2_identities", "true", d2ok ? "true" : "false");

    std::set<Var> prefer(m->free.begin(), m->free.end());
    prefer.insert(m->targets.begin(), m->targets.end());
    std::vector<Var> unknowns = derivative_unknowns(m->sp, m->primaries);
    ConstraintSystem cs = solve_linear_constraints(d2_residuals(*m, {}), unknowns, prefer);
    r.raw = cs.raw;
    r.distinct = cs.distinct;
    r.scalar_distinct = cs.scalar_distinct;
    r.solved = cs.rank;
    r.free_count = cs.free.size();
    check(r, "constraints_consistent", "true", cs.consistent && cs.torsion.empty() ? "true" : "false");
    {
        std::vector<std::string> want, got;
        for (Var v : prefer) want.push_back(reg.name(v));
        for (Var v : cs.free) got.push_back(reg.name(v));
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        check(r, "free", join(want), join(got));
    }
    if (ex.contains("equation_count")) check(r, "equation_count", std::to_string(ex["equation_count"].get<int>()), std::to_string(r.distinct));
    if (ex.contains("solved_count")) check(r, "solved_count", std::to_string(ex["solved_count"].get<int>()), std::to_string(r.solved));

    std::map<Var, std::vector<Expr>> D;
    for (Var p : m->primaries)
        for (int g : m->basis) {
            Var u = reg.derived(p, {m->sp.frame.gen(g).dir});
            auto it = cs.solved.find(u);
            D[p].push_back(it == cs.solved.end() ? Expr::var(u) : it->second);
        }
    Tableau t0 = extract_tableau(m->sp, m->primaries, D, cs.free, m->connection);
    CartanReport rep0 = cartan_test(t0, reg, seed);
    r.tableau_dim_before = rep0.tableau_dim;
    r.obstructions = rep0.required_relations;
    Relations rel = relations_from(rep0.obstructions, m->targets);
    std::vector<std::string> solved_names;
    for (auto& [v, e] : rel.solved) {
        r.relations.push_back(reg.name(v) + " = " + reg.str(e));
        solved_names.push_back(reg.name(v));
    }
    for (auto& e : rel.unresolved) r.relations.push_back("0 = " + reg.str(e));
    if (ex.contains("relations")) {
        std::vector<std::string> want = ex["relations"].get<std::vector<std::string>>();
        std::sort(want.begin(), want.end());
        std::sort(solved_names.begin(), solved_names.end());
        if (!rel.unresolved.empty()) solved_names.push_back("<unresolved>");
        check(r, "relations", join(want), join(solved_names));
    }
    if (ex.contains("tableau_dim_before")) check(r, "tableau_dim_before", std::to_string(ex["tableau_dim_before"].get<int>()), std::to_string(r.tableau_dim_before));

    std::map<Var, std::vector<Expr>> D2;
    for (auto& [p, row] : D)
        for (auto& e : row) D2[p].push_back(e.subs(rel.solved));
    std::vector<Var> fr2;
    for (Var v : cs.free)
        if (!rel.solved.count(v)) fr2.push_back(v);
    Tableau t = extract_tableau(m->sp, m->primaries, D2, fr2, m->connection);
    r.report = cartan_test(t, reg, seed);

    r.derivatives_match = true;
    for (auto& [p, f] : m->published) {
        auto it = D2.find(p);
        if (it == D2.end()) {
            r.derivatives_match = false;
            r.derivative_mismatches.push_back(reg.name(p) + ": not a primary invariant");
            continue;
        }
        Form mine(&m->sp.frame, 1);
        for (std::size_t k = 0; k < m->basis.size(); ++k)
            mine.add_term(Key{static_cast<std::uint16_t>(m->basis[k])}, it->second[k]);
        Form diff = mine - f;
        if (!diff.zero()) {
            r.derivatives_match = false;
            r.derivative_mismatches.push_back("d" + reg.name(p) + " differs by " + m->sp.str(diff));
        }
    }
    if (!m->published.empty()) check(r, "derivatives_match", "true", r.derivatives_match ? "true" : "false");

    for (int al = 0; al < t.a; ++al) {
        std::vector<std::string> row;
        for (int jj = 0; jj < t.n; ++jj) {
            Form cell(&m->sp.frame, 1);
            for (int c = 0; c < t.s; ++c) {
                const Expr& e = t.A[static_cast<std::size_t>(al)][static_cast<std::size_t>(c)][static_cast<std::size_t>(jj)];
                if (!e.zero()) cell.add_term(Key{static_cast<std::uint16_t>(m->sp.frame.at(t.pis[static_cast<std::size_t>(c)]))}, e);
            }
            row.push_back(m->sp.str(cell));
        }
        r.tableau.push_back(row);
    }
    if (ex.contains("tableau")) {
        // compared up to one overall sign
        const json cols = ex.value("tableau_columns", json::object());
        std::vector<std::string> want, got_pos, got_neg;
        for (auto& row : ex["tableau"])
            for (auto& cell : row) {
                std::string c = cell.get<std::string>();
                want.push_back(c == "0" ? "0" : "pi(" + cols.at(c).get<std::string>() + ")");
            }
        for (auto& row : r.tableau)
            for (auto& cell : row) got_pos.push_back(cell);
        std::vector<std::string> neg_want;
        for (auto& w : want) neg_want.push_back(w == "0" ? "0" : "-" + w);
        std::string g = join(got_pos);
        check(r, "tableau", join(want), g == join(neg_want) ? join(want) : g);
    }

    if (ex.contains("tableau_dim")) check(r, "tableau_dim", std::to_string(ex["tableau_dim"].get<int>()), std::to_string(r.report.tableau_dim));
    if (ex.contains("characters")) check(r, "characters", join(ex["characters"].get<std::vector<int>>()), join(r.report.characters));
    if (ex.contains("prolongation_dim")) check(r, "prolongation_dim", std::to_string(ex["prolongation_dim"].get<int>()), std::to_string(r.report.prolongation_dim));
    if (ex.contains("involutive")) check(r, "involutive", ex["involutive"].get<bool>() ? "true" : "false", r.report.involutive ? "true" : "false");
    if (ex.contains("absorbed")) check(r, "absorbed", ex["absorbed"].get<bool>() ? "true" : "false", r.report.absorbed ? "true" : "false");
    return r;
}

}
