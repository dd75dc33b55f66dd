#pragma once

#include "prelab/enumerate.hpp"
#include "prelab/parallel.hpp"

namespace prelab {

/// Configuration of the theorem sweep. Sizes are clamped by the enumeration
/// guards unless the guards themselves are raised (PRELAB_SIZE_LIMIT).
struct VerifyConfig {
    int general_size = 2;        // 0 skips the general sweep
    int representable_size = 3;  // 0 skips the representable sweep
    int jobs = 1;
    bool include_fixtures = true;
    int general_limit = kGeneralSizeLimit;
    int representable_limit = kRepresentableSizeLimit;
    int preorder_limit = kEnumeratePreordersLimit;
};

struct VerifyReport {
    VerifyConfig config;
    std::string selected_semantics;  // "polar" or "direct"
    long long subjects = 0;
    long long spiders = 0;
    std::map<std::string, long long> class_counts;
    std::vector<CatalogViolation> violations;

    bool passed() const { return violations.empty(); }
};

/// Collects the sweep subjects in deterministic order.
inline std::vector<PrelMonoid> verify_subjects(const VerifyConfig& cfg) {
    std::vector<PrelMonoid> subjects;
    for (int n = 1; n <= cfg.general_size; ++n)
        for (const Preorder& p : enumerate_preorders(n, cfg.preorder_limit))
            for (PrelMonoid& m : enumerate_general_monoids(p, cfg.general_limit))
                subjects.push_back(std::move(m));
    for (int n = 1; n <= cfg.representable_size; ++n)
        for (const Preorder& p : enumerate_preorders(n, cfg.preorder_limit))
            for (PrelMonoid& m : enumerate_representable_monoids(p, cfg.representable_limit))
                subjects.push_back(std::move(m));
    if (cfg.include_fixtures)
        for (const std::string& name : fixture_names()) subjects.push_back(fixture(name));
    return subjects;
}

/// Runs the semantics selection and then Theorems 1-3 over every subject.
/// Results are merged by subject index, so the report is byte-identical for
/// any job count.
inline VerifyReport run_verify(const VerifyConfig& cfg) {
    VerifyReport rep;
    rep.config = cfg;
    PlugSemantics sem = select_plug_semantics();
    rep.selected_semantics = sem == PlugSemantics::Polar ? "polar" : "direct";
    std::vector<PrelMonoid> subjects = verify_subjects(cfg);
    rep.subjects = static_cast<long long>(subjects.size());

    struct SubjectResult {
        std::string cls;
        bool spider = false;
        std::vector<CatalogViolation> violations;
    };
    auto results = parallel_map<SubjectResult>(
        static_cast<int>(subjects.size()), cfg.jobs, [&](int i) {
            const PrelMonoid& m = subjects[i];
            SubjectResult r;
            PropertyVector v = classify(m, sem);
            r.cls = class_signature(v);
            r.spider = v.spider;
            for (const TheoremReport& tr :
                 {verify_theorem_1(m), verify_theorem_2(m, sem), verify_theorem_3(m)})
                for (const DirectionReport& d : tr.directions)
                    if (!d.passed) r.violations.push_back({tr.theorem, monoid_key(m), d.name});
            return r;
        });
    for (const SubjectResult& r : results) {
        ++rep.class_counts[r.cls];
        if (r.spider) ++rep.spiders;
        for (const CatalogViolation& v : r.violations) rep.violations.push_back(v);
    }
    return rep;
}

}  // namespace prelab
