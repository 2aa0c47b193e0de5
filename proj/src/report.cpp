#include "eds/report.hpp"

#include "eds/version.hpp"

namespace eds {

json to_json(const CartanReport& r)
{
    return {{"characters", r.characters},
            {"tableau_dim", r.tableau_dim},
            {"prolongation_dim", r.prolongation_dim},
            {"involutive", r.involutive},
            {"absorbed", r.absorbed},
            {"required_relations", r.required_relations},
            {"seed", r.seed},
            {"samples", r.samples},
            {"side_conditions", r.side_conditions}};
}

json to_json(const ScenarioResult& r)
{
    json checks = json::array();
    for (auto& c : r.checks) checks.push_back({{"field", c.field}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
    json j = {{"id", r.id},
              {"ok", r.ok()},
              {"sha256", r.sha256},
              {"pinned_sha256", r.pinned},
              {"hash_ok", r.hash_ok},
              {"checks", checks}};
    if (!r.hash_ok) return j;
    j["d2_published"] = r.d2_published;
    j["counts"] = {{"raw", r.raw}, {"distinct", r.distinct}, {"scalar_distinct", r.scalar_distinct},
                   {"solved", r.solved}, {"free", r.free_count}};
    j["count_convention"] = "distinct counts identical unknown-bearing coefficient equations; scalar_distinct merges scalar multiples";
    j["relations"] = r.relations;
    j["obstructions"] = r.obstructions;
    j["tableau_dim_before"] = r.tableau_dim_before;
    j["report"] = to_json(r.report);
    j["derivatives_match"] = r.derivatives_match;
    j["derivative_mismatches"] = r.derivative_mismatches;
    j["tableau"] = r.tableau;
    return j;
}

json to_json(const ReductionTranscript& t)
{
    json steps = json::array();
    for (auto& s : t.steps)
        steps.push_back({{"assumption", s.assumption}, {"residual", s.residual}, {"relation", s.relation}, {"citation", s.citation}});
    json certs = json::array();
    for (auto& c : t.certificates) {
        json combo = json::array();
        for (auto& [k, e] : c.combo) combo.push_back({{"coefficient", k}, {"equation", e}});
        certs.push_back({{"combination", combo}, {"value", c.value}, {"valid", c.valid}});
    }
    json table = json::array();
    for (auto& e : t.table)
        table.push_back({{"name", e.name}, {"expected", e.expected}, {"computed", e.computed}, {"residual", e.residual},
                         {"residual_mod_torsion", e.residual_mod}, {"ok", e.ok}});
    return {{"target", t.target},   {"ok", t.ok},
            {"outcome", t.outcome}, {"steps", steps},
            {"relations", t.relations}, {"obstructions", t.obstructions},
            {"certificates", certs}, {"verified_table", table},
            {"counts", t.counts},   {"contradictions", t.contradictions}};
}

json to_json(const Registry& reg, const MATypeResult& r)
{
    return {{"kind", to_string(r.kind)},
            {"discriminant", reg.str(r.discriminant)},
            {"a", reg.str(r.a)},
            {"b", reg.str(r.b)},
            {"c", reg.str(r.c)}};
}

json envelope(const std::string& command, std::uint64_t seed, const json& results)
{
    return {{"version", EDS_VERSION},
            {"golden_data_hash", golden_data_hash()},
            {"command", command},
            {"seed", seed},
            {"results", results}};
}

}
