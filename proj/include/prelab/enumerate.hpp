#pragma once

#include <random>

#include "prelab/spider.hpp"

namespace prelab {

enum class EnumMode { General, Representable, Sampled };

inline constexpr int kGeneralSizeLimit = 2;
inline constexpr int kRepresentableSizeLimit = 3;
inline constexpr int kSampledSizeLimit = 3;

/// All lawful monoids on P with every closed ternary relation and every
/// lower-set unit (raw filter; the filter itself is the documented oracle).
/// Deterministic order: nabla cells as a little-endian number, then unit mask.
/// The cell recursion is the hook for unit-law propagation pruning, the
/// extension path toward size-3 general search.
inline std::vector<PrelMonoid> enumerate_general_monoids(const Preorder& p,
                                                         int limit = kGeneralSizeLimit) {
    int n = p.size();
    if (n > limit)
        throw LimitExceeded("enumerate_monoids(general): size " + std::to_string(n) +
                            " exceeds limit " + std::to_string(limit));
    std::vector<PrelMonoid> out;
    int cells = n * n;
    Row per_cell = full_mask(n);
    std::vector<Row> nab(cells, 0);
    std::vector<ClosedSet> units = completion(p, Side::Lower);
    std::function<void(int)> rec = [&](int cell) {
        if (cell == cells) {
            PrelMonoid cand = PrelMonoid::unchecked(p, nab, 0);
            // closure + associativity are unit-independent
            auto probe = PrelMonoid::unchecked(p, nab, full_mask(n));
            auto bad = probe.check_laws();
            if (bad && (bad->law == "closure" || bad->law == "associativity")) return;
            for (const ClosedSet& u : units) {
                PrelMonoid m = PrelMonoid::unchecked(p, nab, u.members());
                if (!m.check_laws()) out.push_back(std::move(m));
            }
            return;
        }
        for (Row img = 0;; ++img) {
            nab[cell] = img;
            rec(cell + 1);
            if (img == per_cell) break;
        }
        nab[cell] = 0;
    };
    rec(0);
    return out;
}

/// All multiplication tables with a (table-exact) unit element, lifted to
/// ∇(x,y,z) = derr(mult(x,y), z) with ⊥ = ↓unit, filtered by the monoid
/// laws. Emission order: table lexicographic, then unit element.
inline std::vector<PrelMonoid> enumerate_representable_monoids(
    const Preorder& p, int limit = kRepresentableSizeLimit) {
    int n = p.size();
    if (n > limit)
        throw LimitExceeded("enumerate_monoids(representable): size " + std::to_string(n) +
                            " exceeds limit " + std::to_string(limit));
    std::vector<PrelMonoid> out;
    if (n == 0) return out;
    std::vector<int> mult(static_cast<std::size_t>(n) * n, 0);
    std::function<void(int)> rec = [&](int cell) {
        if (cell == n * n) {
            // associativity of the table
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    for (int z = 0; z < n; ++z)
                        if (mult[mult[x * n + y] * n + z] != mult[x * n + mult[y * n + z]])
                            return;
            for (int e = 0; e < n; ++e) {
                bool unit = true;
                for (int x = 0; x < n && unit; ++x)
                    unit = mult[e * n + x] == x && mult[x * n + e] == x;
                if (!unit) continue;
                std::vector<Row> nab(static_cast<std::size_t>(n) * n, 0);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) nab[x * n + y] = p.row(mult[x * n + y]);
                PrelMonoid m = PrelMonoid::unchecked(p, std::move(nab), p.row(e));
                if (!m.check_laws()) out.push_back(std::move(m));
            }
            return;
        }
        for (int v = 0; v < n; ++v) {
            mult[cell] = v;
            rec(cell + 1);
        }
        mult[cell] = 0;
    };
    rec(0);
    return out;
}

/// k law-passing structures from seeded random closed relations (duplicates
/// deduplicated); reproducible bit-for-bit from (seed, k). Gives up after a
/// bounded number of attempts and returns what it found.
inline std::vector<PrelMonoid> sample_monoids(const Preorder& p, std::uint64_t seed,
                                              int k, int limit = kSampledSizeLimit) {
    int n = p.size();
    if (n > limit)
        throw LimitExceeded("enumerate_monoids(sampled): size " + std::to_string(n) +
                            " exceeds limit " + std::to_string(limit));
    std::mt19937_64 rng(seed);
    std::vector<PrelMonoid> out;
    std::vector<std::pair<std::vector<Row>, Row>> seen;
    long long attempts = 0, max_attempts = 2000LL * k + 1000;
    while (static_cast<int>(out.size()) < k && attempts < max_attempts) {
        ++attempts;
        std::vector<Row> nab(static_cast<std::size_t>(n) * n, 0);
        Row word = rng();
        for (int c = 0; c < n * n; ++c) {
            nab[c] = (word >> (c * n % 60)) & full_mask(n);
            if (c % 5 == 4) word = rng();
        }
        PrelMonoid::close_nabla(p, nab);
        Row ugens = rng() & full_mask(n);
        Row unit = 0;
        for (int t = 0; t < n; ++t)
            if (has(ugens, t)) unit |= p.row(t);
        PrelMonoid m = PrelMonoid::unchecked(p, nab, unit);
        if (m.check_laws()) continue;
        auto key = std::make_pair(m.nabla_rows(), m.unit_mask());
        bool dup = false;
        for (const auto& s : seen)
            if (s == key) { dup = true; break; }
        if (dup) continue;
        seen.push_back(std::move(key));
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// fixtures

/// The named instances used throughout the suites, pre-validated.
inline PrelMonoid fixture(const std::string& name) {
    auto table_monoid = [](const Preorder& p, std::vector<int> mult, int e) {
        int n = p.size();
        std::vector<Row> nab(static_cast<std::size_t>(n) * n, 0);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) nab[x * n + y] = p.row(mult[x * n + y]);
        return PrelMonoid::from_raw(p, std::move(nab), p.row(e));
    };
    if (name == "Z2")
        return table_monoid(Preorder::discrete(2), {0, 1, 1, 0}, 0);
    if (name == "Z3")
        return table_monoid(Preorder::discrete(3), {0, 1, 2, 1, 2, 0, 2, 0, 1}, 0);
    if (name == "MIN2")
        return table_monoid(Preorder::chain(2), {0, 0, 0, 1}, 1);
    if (name == "D2-idempotent")
        return table_monoid(Preorder::discrete(2), {0, 1, 1, 1}, 0);
    if (name == "G21")
        return PrelMonoid::build(Preorder::discrete(3),
                                 {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {2, 2, 2}},
                                 {0, 2});
    if (name == "two-Z2-disjoint")
        return PrelMonoid::build(Preorder::discrete(4),
                                 {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
                                  {2, 2, 2}, {2, 3, 3}, {3, 2, 3}, {3, 3, 2}},
                                 {0, 2});
    throw InvalidInput("unknown fixture: " + name);
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {
        "Z2", "Z3", "G21", "MIN2", "D2-idempotent", "two-Z2-disjoint"};
    return names;
}

// ---------------------------------------------------------------------------
// semantics selection (the residuation theorem is the ground truth)

/// Runs both candidate plugging semantics over the exhaustive size <= 2
/// general suite; returns the unique one under which Theorem 2 validates.
/// Throws unless exactly one candidate validates.
inline PlugSemantics select_plug_semantics() {
    bool ok[2] = {true, true};
    PlugSemantics sems[2] = {PlugSemantics::Polar, PlugSemantics::Direct};
    for (int n = 1; n <= kGeneralSizeLimit; ++n)
        for (const Preorder& p : enumerate_preorders(n))
            for (const PrelMonoid& m : enumerate_general_monoids(p)) {
                bool frob = !check_frobenius(m).has_value();
                for (int i = 0; i < 2; ++i) {
                    if (!ok[i]) continue;
                    if (check_residuated(m, true, sems[i]) != frob ||
                        check_residuated(m, false, sems[i]) != frob)
                        ok[i] = false;
                }
            }
    if (ok[0] == ok[1])
        throw std::runtime_error(ok[0] ? "semantics selection: both candidates validate"
                                       : "semantics selection: no candidate validates");
    return ok[0] ? sems[0] : sems[1];
}

// ---------------------------------------------------------------------------
// catalog

struct CatalogConfig {
    int size = kGeneralSizeLimit;
    EnumMode mode = EnumMode::General;
    std::uint64_t seed = 0;
    int count = 0;  // sampled mode only
    int general_limit = kGeneralSizeLimit;
    int representable_limit = kRepresentableSizeLimit;
    int sampled_limit = kSampledSizeLimit;
    int preorder_limit = kEnumeratePreordersLimit;
};

struct CatalogViolation {
    int theorem = 0;
    std::string subject;
    std::string direction;
};

struct CatalogCounterexample {
    std::string subject;
    std::string condition;
    std::vector<int> tuple;
};

struct CatalogReport {
    CatalogConfig config;
    long long generated = 0;
    std::map<std::string, long long> class_counts;
    // per-preorder breakdown of the same counts, keyed by the relation rows
    std::map<std::string, std::map<std::string, long long>> per_preorder;
    std::vector<CatalogViolation> violations;
    std::vector<CatalogCounterexample> counterexamples;
    std::vector<std::string> discrepancies;
    bool complete = true;
};

inline std::string class_signature(const PropertyVector& v) {
    std::string s;
    auto add = [&](bool b, const char* name) {
        if (b) {
            if (!s.empty()) s += "+";
            s += name;
        }
    };
    add(v.strict, "strict");
    add(v.pointed, "pointed");
    add(v.representable, "representable");
    add(v.frobenius, "frobenius");
    add(v.special, "special");
    add(v.spider, "spider");
    add(v.pregroup, "pregroup");
    add(v.left_residuated, "lres");
    add(v.right_residuated, "rres");
    return s.empty() ? "plain" : s;
}

inline std::string preorder_key(const Preorder& p) {
    std::ostringstream os;
    os << "n" << p.size() << ":";
    for (Row r : p.rows()) os << r << ".";
    return os.str();
}

inline std::string monoid_key(const PrelMonoid& m) {
    std::ostringstream os;
    os << preorder_key(m.carrier()) << ":N";
    for (Row r : m.nabla_rows()) os << r << ".";
    os << ":U" << m.unit_mask();
    return os.str();
}

inline void catalog_subject(const PrelMonoid& m, CatalogReport& rep,
                            PlugSemantics sem = PlugSemantics::Polar) {
    ++rep.generated;
    PropertyVector v = classify(m, sem);
    ++rep.class_counts[class_signature(v)];
    ++rep.per_preorder[preorder_key(m.carrier())][class_signature(v)];
    if (v.counterexample)
        rep.counterexamples.push_back(
            {monoid_key(m), v.counterexample->condition, v.counterexample->tuple});
    for (const TheoremReport& tr :
         {verify_theorem_1(m), verify_theorem_2(m, sem), verify_theorem_3(m)})
        for (const DirectionReport& d : tr.directions)
            if (!d.passed)
                rep.violations.push_back({tr.theorem, monoid_key(m), d.name});
}

/// Runs classify + the theorem verifiers over the configured enumeration.
/// Always appends the MIN2 discrepancy note: representable and pointed over
/// a complete lattice, yet Frobenius fails and element 0 has no left adjoint,
/// against the remark that all monoid structures over complete lattices are
/// pregroups.
inline CatalogReport catalog(const CatalogConfig& cfg) {
    CatalogReport rep;
    rep.config = cfg;
    switch (cfg.mode) {
        case EnumMode::General:
            for (int n = 1; n <= cfg.size; ++n)
                for (const Preorder& p : enumerate_preorders(n, cfg.preorder_limit))
                    for (const PrelMonoid& m : enumerate_general_monoids(p, cfg.general_limit))
                        catalog_subject(m, rep);
            break;
        case EnumMode::Representable:
            for (int n = 1; n <= cfg.size; ++n)
                for (const Preorder& p : enumerate_preorders(n, cfg.preorder_limit))
                    for (const PrelMonoid& m :
                         enumerate_representable_monoids(p, cfg.representable_limit))
                        catalog_subject(m, rep);
            break;
        case EnumMode::Sampled: {
            std::uint64_t s = cfg.seed;
            for (const Preorder& p : enumerate_preorders(cfg.size, cfg.preorder_limit)) {
                auto ms = sample_monoids(p, s++, cfg.count, cfg.sampled_limit);
                if (static_cast<int>(ms.size()) < cfg.count) rep.complete = false;
                for (const PrelMonoid& m : ms) catalog_subject(m, rep);
            }
            break;
        }
    }
    {
        PrelMonoid min2 = fixture("MIN2");
        PropertyVector v = classify(min2);
        if (v.representable && v.pointed && !v.frobenius && first_unadjoined(min2) == 0)
            rep.discrepancies.push_back(
                "MIN2 (min on a 2-chain, unit = top) is representable and pointed over a "
                "complete lattice but fails Frobenius and element 0 has no left adjoint; "
                "the complete-lattice remark does not hold for it");
    }
    return rep;
}

}  // namespace prelab
