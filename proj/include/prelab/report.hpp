#pragma once

#include <json.hpp>

#include "prelab/grammar.hpp"
#include "prelab/structfile.hpp"
#include "prelab/verify.hpp"

namespace prelab {

using json = nlohmann::json;

// nlohmann::json objects are backed by std::map, so dumped keys are sorted;
// that is the stable-key contract for machine output.

inline json to_json(const PropertyVector& v) {
    json j;
    j["strict"] = v.strict;
    j["pointed"] = v.pointed;
    j["representable"] = v.representable;
    j["frobenius"] = v.frobenius;
    j["special"] = v.special;
    j["spider"] = v.spider;
    j["pregroup"] = v.pregroup;
    j["left_residuated"] = v.left_residuated;
    j["right_residuated"] = v.right_residuated;
    if (v.counterexample) {
        j["counterexample"] = {{"condition", v.counterexample->condition},
                               {"tuple", v.counterexample->tuple}};
    }
    return j;
}

inline json to_json(const TheoremReport& r) {
    json dirs = json::array();
    for (const DirectionReport& d : r.directions) {
        json jd;
        jd["name"] = d.name;
        jd["passed"] = d.passed;
        if (!d.witness.empty()) jd["witness"] = d.witness;
        dirs.push_back(jd);
    }
    return json{{"theorem", r.theorem}, {"passed", r.passed}, {"directions", dirs}};
}

inline json to_json(const PregroupStructure& pg, const Preorder& p) {
    json j;
    j["unit"] = p.label(pg.unit_elem);
    json mult = json::array();
    for (int x = 0; x < pg.size; ++x)
        for (int y = 0; y < pg.size; ++y)
            mult.push_back(json::array(
                {p.label(x), p.label(y), p.label(pg.times(x, y))}));
    j["mult_table"] = mult;
    json ell = json::object(), arr = json::object();
    for (int x = 0; x < pg.size; ++x) {
        ell[p.label(x)] = p.label(pg.ell[x]);
        arr[p.label(x)] = p.label(pg.arr[x]);
    }
    j["ell"] = ell;
    j["arr"] = arr;
    return j;
}

inline json to_json(const Covering& cov) {
    json comps = json::array();
    for (const CoverComponent& c : cov.components) {
        json jc;
        jc["basepoint"] = cov.ambient.carrier().label(c.basepoint);
        json carrier = json::array();
        for (int e : c.elements) carrier.push_back(cov.ambient.carrier().label(e));
        jc["carrier"] = carrier;
        json pg = to_json(c.pg, c.sub.carrier());
        jc["mult_table"] = pg["mult_table"];
        jc["ell"] = pg["ell"];
        jc["arr"] = pg["arr"];
        jc["unit"] = pg["unit"];
        comps.push_back(jc);
    }
    return json{{"components", comps}};
}

/// A prelation dumps as its carriers' sizes and the related index pairs.
inline json to_json(const Prelation& f) {
    json pairs = json::array();
    for (int x = 0; x < f.dom().size(); ++x)
        for (int y = 0; y < f.cod().size(); ++y)
            if (f.at(x, y)) pairs.push_back(json::array({x, y}));
    return json{{"dom_size", f.dom().size()}, {"cod_size", f.cod().size()}, {"pairs", pairs}};
}

inline json to_json(const CatalogViolation& v) {
    return json{{"theorem", v.theorem}, {"subject", v.subject}, {"direction", v.direction}};
}

inline json to_json(const CatalogReport& r) {
    json j;
    j["mode"] = r.config.mode == EnumMode::General       ? "general"
                : r.config.mode == EnumMode::Representable ? "representable"
                                                           : "sampled";
    j["size"] = r.config.size;
    j["seed"] = r.config.seed;
    j["count"] = r.config.count;
    j["generated"] = r.generated;
    j["complete"] = r.complete;
    j["class_counts"] = r.class_counts;
    j["per_preorder"] = r.per_preorder;
    json viols = json::array();
    for (const auto& v : r.violations) viols.push_back(to_json(v));
    j["violations"] = viols;
    json cexs = json::array();
    for (const auto& c : r.counterexamples)
        cexs.push_back(json{{"subject", c.subject},
                            {"condition", c.condition},
                            {"tuple", c.tuple}});
    j["counterexamples"] = cexs;
    j["discrepancies"] = r.discrepancies;
    return j;
}

inline json to_json(const VerifyReport& r) {
    json j;
    j["general_size"] = r.config.general_size;
    j["representable_size"] = r.config.representable_size;
    j["selected_semantics"] = r.selected_semantics;
    j["subjects"] = r.subjects;
    j["spiders"] = r.spiders;
    j["class_counts"] = r.class_counts;
    json viols = json::array();
    for (const auto& v : r.violations) viols.push_back(to_json(v));
    j["violations"] = viols;
    j["passed"] = r.passed();
    return j;
}

inline json to_json(const grammar::ReductionTrace& tr) {
    json links = json::array();
    for (auto [i, j] : tr.links) links.push_back(json::array({i + 1, j + 1}));  // 1-indexed
    return json{{"links", links},
                {"residual", tr.residual + 1},
                {"lexical_choice", tr.lexical_choice}};
}

/// FNV-1a digest of an input text, for report provenance.
inline std::string input_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace prelab
