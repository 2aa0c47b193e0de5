#include "eds/report.hpp"
#include "eds/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace eds;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag) return *flag;
    if (const char* env = std::getenv("EDS_SEED")) {
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("EDS_SEED is not an unsigned integer: ") + env);
    }
    return 20240611;
}

void write_json(const std::string& path, const json& j)
{
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

// "a,b,c,d" or "a b c d"
Mat2 parse_mat(Registry& reg, const std::string& text)
{
    std::string t = text;
    for (char& ch : t)
        if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream is(t);
    std::vector<std::string> parts;
    for (std::string s; is >> s;) parts.push_back(s);
    if (parts.size() != 4) throw InputError("a 2x2 matrix needs 4 entries: " + text);
    std::vector<Expr> e;
    for (auto& p : parts) e.push_back(reg.parse(p));
    return mat(e[0], e[1], e[2], e[3]);
}

std::string mat_str(const Registry& reg, const Mat2& m)
{
    return "[[" + reg.str(m[0][0]) + ", " + reg.str(m[0][1]) + "], [" + reg.str(m[1][0]) + ", " + reg.str(m[1][1]) + "]]";
}

json mat_json(const Registry& reg, const Mat2& m)
{
    return json::array({json::array({reg.str(m[0][0]), reg.str(m[0][1])}), json::array({reg.str(m[1][0]), reg.str(m[1][1])})});
}

void print_scenario(const ScenarioResult& r)
{
    std::cout << r.id << ": " << (r.ok() ? "ok" : "MISMATCH");
    if (r.hash_ok)
        std::cout << " (equations " << r.distinct << " [raw " << r.raw << "], solved " << r.solved << ", characters "
                  << json(r.report.characters).dump() << ", tableau " << r.report.tableau_dim << ", prolongation "
                  << r.report.prolongation_dim << ", involutive " << (r.report.involutive ? "true" : "false") << ")";
    std::cout << "\n";
    for (auto& rel : r.relations) std::cout << "  relation " << rel << "\n";
    for (auto& c : r.checks)
        if (!c.ok) std::cout << "  " << c.field << ": expected " << c.expected << ", got " << c.actual << "\n";
}

struct Outcome {
    bool ok = false;
    json body;
    std::string text;
};

Outcome verify_case1()
{
    Outcome o;
    auto m = case1_model(std::nullopt, std::nullopt);
    CaseICoframe c = case1_coframe(*m);
    CaseIPDE p = case1_pde(*m);
    auto flat = case1_model(std::string("0"), std::string("x*y"));
    std::string flat_pde = case1_pde(*flat).text;
    json res = json::object();
    for (auto& r : c.residuals) res[r.name] = r.residual.zero() ? "0" : m->sp.str(r.residual);
    res["pde_check"] = p.check.zero() ? "0" : m->sp.str(p.check);
    const std::string want = "z_xy + x z_x - y z_y - x*y z = 0";
    o.ok = c.ok() && p.check.zero() && flat_pde == want;
    o.body = {{"id", "case1"}, {"ok", o.ok}, {"residuals", res}, {"A", m->reg.str(c.A)}, {"pde", p.text}, {"example_pde", flat_pde}};
    o.text = std::string("case1: ") + (o.ok ? "ok" : "MISMATCH") + " (structure equations and dphi0, dphi1 round trip; " +
             flat_pde + ")\n";
    return o;
}

Outcome from_transcript(const ReductionTranscript& t, const std::string& id)
{
    Outcome o;
    o.ok = t.ok;
    o.body = to_json(t);
    o.body["id"] = id;
    std::ostringstream os;
    os << id << ": " << (t.ok ? "ok" : "MISMATCH") << " (" << t.target << ", outcome " << t.outcome << ")\n";
    o.text = os.str();
    return o;
}

Outcome from_scenario(const ScenarioResult& r)
{
    Outcome o;
    o.ok = r.ok();
    o.body = to_json(r);
    std::ostringstream os;
    std::streambuf* old = std::cout.rdbuf(os.rdbuf());
    print_scenario(r);
    std::cout.rdbuf(old);
    o.text = os.str();
    return o;
}

void print_transcript(const ReductionTranscript& t)
{
    std::cout << t.target << ": " << (t.ok ? "ok" : "MISMATCH") << ", outcome " << t.outcome << "\n";
    int i = 1;
    for (auto& s : t.steps) {
        std::cout << "step " << i++ << ": " << s.assumption << "\n";
        std::cout << "  computed: " << s.residual << "\n";
        if (!s.relation.empty()) std::cout << "  result: " << s.relation << "\n";
        if (!s.citation.empty()) std::cout << "  ref: " << s.citation << "\n";
    }
    for (auto& [k, v] : t.counts) std::cout << "  " << k << " = " << v << "\n";
    for (auto& c : t.certificates)
        std::cout << "  certificate: " << c.combo.size() << " equations combine to 0 = " << c.value
                  << (c.valid ? " (checked)" : " (INVALID)") << "\n";
    for (auto& e : t.table)
        std::cout << "  " << e.name << " = " << e.computed << "; displayed " << e.expected << "; residual " << e.residual
                  << (e.residual == e.residual_mod ? "" : " (0 with P30 = 0)") << (e.ok ? "" : " FAILED") << "\n";
    for (auto& c : t.contradictions) std::cout << "  contradiction: " << c << "\n";
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Exterior differential systems toolkit for hyperbolic Monge-Ampere systems", "edsctl"};
    app.set_version_flag("--version", EDS_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::uint64_t> seed_flag;
    std::string json_path;
    app.add_option("--seed", seed_flag, "random seed for generic-point evaluation (default EDS_SEED or fixed)");
    app.add_option("--json", json_path, "write a JSON report to this path");

    auto* classify = app.add_subcommand("classify", "classify A(rs-t^2) + Br + 2Cs + Dt + E = 0");
    std::string cA = "0", cB = "0", cC = "0", cD = "0", cE = "0", eq_file;
    classify->add_option("--A", cA);
    classify->add_option("--B", cB);
    classify->add_option("--C", cC);
    classify->add_option("--D", cD);
    classify->add_option("--E", cE);
    classify->add_option("--file", eq_file, "key-value file with lines A = ..., B = ...");

    auto* verify = app.add_subcommand("verify", "verify golden scenarios");
    std::string scenario = "all", scenario_file;
    verify->add_option("--scenario", scenario, "all, a scenario id, case2b, case1 or thm3x");
    verify->add_option("--scenario-file", scenario_file, "scenario JSON file checked against its pinned hash");

    auto* replay = app.add_subcommand("replay", "replay an elimination computation");
    std::string target;
    replay->add_option("--target", target, "section3, appendixA:+, appendixA:- or appendixB")->required();

    auto* case1 = app.add_subcommand("case1", "Case I coordinate models");
    std::string c1what;
    std::optional<std::string> f_text, phi_text;
    case1->add_option("what", c1what, "pde, coframe, cohomogeneity or invariantA")->required();
    case1->add_option("-f,--f", f_text, "f(x,y); symbolic when omitted");
    case1->add_option("--phi", phi_text, "Phi(x,y) with Phi_xy = exp(2f); symbolic when omitted");

    auto* orbit = app.add_subcommand("orbit", "group action on (S1, S2)");
    std::string owhat, s1_text = "0,0,0,0", s2_text, a_text = "1", A_text = "1,0,0,1", B_text = "1,0,0,1";
    int jcount = 0;
    orbit->add_option("what", owhat, "normalize-s2 or act")->required();
    orbit->add_option("--s1", s1_text, "S1 entries a,b,c,d");
    orbit->add_option("--s2", s2_text, "S2 entries a,b,c,d")->required();
    orbit->add_option("--a", a_text);
    orbit->add_option("--A", A_text);
    orbit->add_option("--B", B_text);
    orbit->add_option("--j", jcount, "number of J applications");

    auto* cartan = app.add_subcommand("cartan", "Cartan's test for a system in scenario format");
    std::string system_file;
    cartan->add_option("--system", system_file, "scenario-format JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

    try {
        std::uint64_t seed = resolve_seed(seed_flag);

        if (classify->parsed()) {
            if (!eq_file.empty()) {
                std::istringstream in(read_file(eq_file));
                for (std::string line; std::getline(in, line);) {
                    auto hash = line.find('#');
                    if (hash != std::string::npos) line.erase(hash);
                    auto eqp = line.find('=');
                    if (eqp == std::string::npos) {
                        if (line.find_first_not_of(" \t\r") != std::string::npos) throw InputError("bad line: " + line);
                        continue;
                    }
                    std::string k = line.substr(0, eqp), v = line.substr(eqp + 1);
                    k.erase(0, k.find_first_not_of(" \t"));
                    k.erase(k.find_last_not_of(" \t\r") + 1);
                    if (k == "A") cA = v;
                    else if (k == "B") cB = v;
                    else if (k == "C") cC = v;
                    else if (k == "D") cD = v;
                    else if (k == "E") cE = v;
                    else throw InputError("unknown key " + k);
                }
            }
            ContactSpace cs;
            cs.reg.auto_register = false;
            ClassicalMA eq = cs.parse(cA, cB, cC, cD, cE);
            ContactSystem sys = build_contact_system(cs.sp, eq);
            MATypeResult r = classify_type(cs.sp, sys.psi, sys.theta, sys.dtheta);
            std::cout << to_string(r.kind) << ", discriminant " << cs.reg.str(r.discriminant) << "\n";
            json res = to_json(cs.reg, r);
            res["psi"] = cs.sp.str(sys.psi);
            write_json(json_path, envelope(command, seed, res));
            return 0;
        }

        if (verify->parsed()) {
            std::vector<std::function<Outcome()>> jobs;
            if (!scenario_file.empty()) {
                std::string text = read_file(scenario_file);
                json j = json::parse(text, nullptr, false);
                if (!j.is_object() || !j.contains("id")) throw InputError(scenario_file + " is not a scenario file");
                const EmbeddedScenario* pin = find_scenario(j["id"].get<std::string>());
                if (!pin) throw InputError("no pinned hash for scenario " + j["id"].get<std::string>());
                std::string pinned = pin->sha256;
                jobs.push_back([text, pinned, seed] { return from_scenario(verify_scenario(text, pinned, seed)); });
            } else {
                auto add_embedded = [&](const std::string& id) {
                    const EmbeddedScenario* s = find_scenario(id);
                    if (!s) throw InputError("unknown scenario " + id);
                    jobs.push_back([s, seed] { return from_scenario(verify_scenario(s->text, s->sha256, seed)); });
                };
                bool all = scenario == "all";
                bool known = all || scenario == "case2b" || scenario == "case1" || scenario == "thm3x";
                if (all)
                    for (auto& s : embedded_scenarios()) add_embedded(s.id);
                else if (scenario == "case2b") {
                    add_embedded("case2b_pos");
                    add_embedded("case2b_neg");
                } else if (!known)
                    add_embedded(scenario);
                if (all || scenario == "case1") jobs.push_back([] { return verify_case1(); });
                if (all || scenario == "thm3x")
                    jobs.push_back([seed] { return from_transcript(replay_section3(seed), "thm3x"); });
            }
            std::vector<std::future<Outcome>> futs;
            for (auto& job : jobs) futs.push_back(std::async(std::launch::async, job));
            bool ok = true;
            json results = json::array();
            for (auto& f : futs) {
                Outcome o = f.get();
                std::cout << o.text;
                ok = ok && o.ok;
                results.push_back(o.body);
            }
            write_json(json_path, envelope(command, seed, results));
            return ok ? 0 : 1;
        }

        if (replay->parsed()) {
            ReductionTranscript t;
            if (target == "section3") t = replay_section3(seed);
            else if (target == "appendixA:+") t = replay_appendix_A(1);
            else if (target == "appendixA:-") t = replay_appendix_A(-1);
            else if (target == "appendixB") t = replay_appendix_B();
            else throw InputError("unknown target " + target);
            print_transcript(t);
            write_json(json_path, envelope(command, seed, to_json(t)));
            return t.ok ? 0 : 1;
        }

        if (case1->parsed()) {
            std::unique_ptr<CaseIModel> m;
            try {
                m = case1_model(f_text, phi_text);
            } catch (const std::exception& e) {
                throw InputError(e.what());
            }
            json res = {{"f", m->reg.str(m->f)}, {"Phi", m->reg.str(m->Phi)}};
            int code = 0;
            if (c1what == "pde") {
                CaseIPDE p = case1_pde(*m);
                std::cout << p.text << "\n";
                res["pde"] = p.text;
                res["a"] = m->reg.str(p.a);
                res["b"] = m->reg.str(p.b);
                res["c"] = m->reg.str(p.c);
                res["check"] = p.check.zero() ? "0" : m->sp.str(p.check);
                if (!p.check.zero()) code = 1;
            } else if (c1what == "coframe") {
                CaseICoframe c = case1_coframe(*m);
                json forms = json::object();
                for (int i = 0; i < 5; ++i) {
                    std::string s = m->sp.str(c.omega[static_cast<std::size_t>(i)]);
                    std::cout << "w" << i << " = " << s << "\n";
                    forms["w" + std::to_string(i)] = s;
                }
                for (auto& [n, f] : std::vector<std::pair<std::string, Form*>>{
                         {"phi0", &c.phi0}, {"phi1", &c.phi1}, {"phi3", &c.phi3}, {"phi7", &c.phi7}}) {
                    std::string s = f->zero() ? "0" : m->sp.str(*f);
                    std::cout << n << " = " << s << "\n";
                    forms[n] = s;
                }
                std::cout << "A = " << m->reg.str(c.A) << "\n";
                json res2 = json::object();
                for (auto& r : c.residuals) {
                    std::string s = r.residual.zero() ? "0" : m->sp.str(r.residual);
                    std::cout << "residual " << r.name << ": " << s << "\n";
                    res2[r.name] = s;
                }
                res["forms"] = forms;
                res["A"] = m->reg.str(c.A);
                res["residuals"] = res2;
                res["ok"] = c.ok();
                if (!c.ok()) code = 1;
            } else if (c1what == "cohomogeneity") {
                Cohomogeneity h = case1_cohomogeneity(*m);
                std::cout << "cohomogeneity " << to_string(h.level) << "\n";
                json w = json::object();
                for (auto& [n, e] : h.witnesses) {
                    std::cout << "  " << n << " = " << m->reg.str(e) << "\n";
                    w[n] = m->reg.str(e);
                }
                res["level"] = to_string(h.level);
                res["witnesses"] = w;
            } else if (c1what == "invariantA") {
                Expr A = invariant_A(*m);
                std::cout << "A = " << m->reg.str(A) << "\n";
                res["A"] = m->reg.str(A);
            } else {
                throw InputError("unknown case1 command " + c1what);
            }
            write_json(json_path, envelope(command, seed, res));
            return code;
        }

        if (orbit->parsed()) {
            Registry reg;
            reg.auto_register = false;
            S1S2 s{parse_mat(reg, s1_text), parse_mat(reg, s2_text)};
            json res;
            if (owhat == "normalize-s2") {
                Normalization n;
                try {
                    n = normalize_S2(s);
                } catch (const GroupError& e) {
                    throw InputError(e.what());
                }
                std::cout << "orbit " << to_string(n.orbit) << "\n";
                std::cout << "g: a = " << reg.str(n.g.a) << ", A = " << mat_str(reg, n.g.A) << ", B = " << mat_str(reg, n.g.B) << "\n";
                std::cout << "normal S1 = " << mat_str(reg, n.normal.S1) << ", S2 = " << mat_str(reg, n.normal.S2) << "\n";
                res = {{"orbit", to_string(n.orbit)},
                       {"g", {{"a", reg.str(n.g.a)}, {"A", mat_json(reg, n.g.A)}, {"B", mat_json(reg, n.g.B)}, {"j", n.g.j}}},
                       {"normal", {{"S1", mat_json(reg, n.normal.S1)}, {"S2", mat_json(reg, n.normal.S2)}}}};
            } else if (owhat == "act") {
                GroupElement g;
                g.a = reg.parse(a_text);
                g.A = parse_mat(reg, A_text);
                g.B = parse_mat(reg, B_text);
                g.j = jcount;
                S1S2 r;
                try {
                    r = act(g, s);
                } catch (const GroupError& e) {
                    throw InputError(e.what());
                }
                std::cout << "S1 = " << mat_str(reg, r.S1) << "\nS2 = " << mat_str(reg, r.S2) << "\n";
                res = {{"S1", mat_json(reg, r.S1)}, {"S2", mat_json(reg, r.S2)}};
            } else {
                throw InputError("unknown orbit command " + owhat);
            }
            write_json(json_path, envelope(command, seed, res));
            return 0;
        }

        if (cartan->parsed()) {
            std::string text = read_file(system_file);
            ScenarioResult r;
            try {
                r = verify_scenario(text, sha256_hex(text), seed);
            } catch (const ScenarioError& e) {
                throw InputError(e.what());
            } catch (const json::exception& e) {
                throw InputError(e.what());
            }
            const CartanReport& c = r.report;
            std::cout << "characters " << json(c.characters).dump() << "\n";
            std::cout << "tableau_dim " << c.tableau_dim << "\n";
            std::cout << "prolongation_dim " << c.prolongation_dim << "\n";
            std::cout << "involutive " << (c.involutive ? "true" : "false") << "\n";
            std::cout << "absorbed " << (c.absorbed ? "true" : "false") << "\n";
            for (auto& rel : r.relations) std::cout << "relation " << rel << "\n";
            for (auto& ch : r.checks)
                if (!ch.ok) std::cout << "  " << ch.field << ": expected " << ch.expected << ", got " << ch.actual << "\n";
            json res = to_json(c);
            res["checks"] = to_json(r)["checks"];
            write_json(json_path, envelope(command, seed, res));
            return r.ok() ? 0 : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
