#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "prelab/verify.hpp"

using namespace prelab;

namespace {

using MonoidKeyT = std::pair<std::vector<Row>, Row>;

MonoidKeyT key_of(const PrelMonoid& m) { return {m.nabla_rows(), m.unit_mask()}; }

}  // namespace

TEST_CASE("the singleton carrier has exactly one monoid") {
    auto ms = enumerate_general_monoids(Preorder::discrete(1));
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].unit_mask() == 0b1u);
}

TEST_CASE("general monoid counts per size-2 preorder") {
    // frozen by the independent raw filter (prototype sweep)
    std::map<std::vector<Row>, std::size_t> expected = {
        {{1, 2}, 9},  // discrete
        {{3, 2}, 3},  // 0 ⊢ 1
        {{1, 3}, 3},  // 1 ⊢ 0
        {{3, 3}, 1},  // full equivalence
    };
    for (const Preorder& p : enumerate_preorders(2)) {
        auto ms = enumerate_general_monoids(p);
        CHECK(ms.size() == expected.at(p.rows()));
        for (const PrelMonoid& m : ms) CHECK_FALSE(m.check_laws().has_value());
    }
}

TEST_CASE("representable monoids on the discrete pair: 2 units x 2 tables") {
    auto ms = enumerate_representable_monoids(Preorder::discrete(2));
    CHECK(ms.size() == 4);
}

TEST_CASE("representable emissions are lawful and land inside general mode") {
    for (const Preorder& p : enumerate_preorders(2)) {
        std::set<MonoidKeyT> general;
        for (const PrelMonoid& m : enumerate_general_monoids(p)) general.insert(key_of(m));
        for (const PrelMonoid& m : enumerate_representable_monoids(p)) {
            CHECK_FALSE(m.check_laws().has_value());
            CHECK(general.count(key_of(m)) == 1);
        }
    }
}

TEST_CASE("general monoids classified representable appear in the representable lift") {
    for (const Preorder& p : enumerate_preorders(2)) {
        std::set<MonoidKeyT> lifted;
        for (const PrelMonoid& m : enumerate_representable_monoids(p))
            lifted.insert(key_of(m));
        for (const PrelMonoid& m : enumerate_general_monoids(p)) {
            if (!is_strict(m) || !is_pointed(m)) continue;
            CHECK(lifted.count(key_of(m)) == 1);
        }
    }
}

TEST_CASE("representable count at size 3 is frozen") {
    long long total = 0;
    for (const Preorder& p : enumerate_preorders(3))
        total += static_cast<long long>(enumerate_representable_monoids(p).size());
    CHECK(total == 360);
}

TEST_CASE("mode guards refuse oversized carriers") {
    CHECK_THROWS_AS(enumerate_general_monoids(Preorder::discrete(3)), LimitExceeded);
    CHECK_THROWS_AS(enumerate_representable_monoids(Preorder::discrete(4)), LimitExceeded);
    CHECK_THROWS_AS(sample_monoids(Preorder::discrete(4), 1, 1), LimitExceeded);
    // raised guards admit larger carriers
    CHECK_NOTHROW(enumerate_representable_monoids(Preorder::discrete(2), 4));
}

TEST_CASE("sampling is reproducible bit for bit and lawful") {
    Preorder p = Preorder::chain(3);
    auto a = sample_monoids(p, 123, 20);
    auto b = sample_monoids(p, 123, 20);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    for (const PrelMonoid& m : a) CHECK_FALSE(m.check_laws().has_value());
    auto c = sample_monoids(p, 124, 20);
    bool all_equal = a.size() == c.size();
    for (std::size_t i = 0; all_equal && i < a.size(); ++i) all_equal = a[i] == c[i];
    CHECK_FALSE(all_equal);
}

TEST_CASE("fixtures are pre-validated and classify as documented") {
    for (const std::string& name : fixture_names()) {
        PrelMonoid m = fixture(name);
        CHECK_FALSE(m.check_laws().has_value());
    }
    CHECK(classify(fixture("Z2")).pregroup);
    CHECK_FALSE(classify(fixture("MIN2")).frobenius);
    PropertyVector g21 = classify(fixture("G21"));
    CHECK(g21.spider);
    CHECK_FALSE(g21.pointed);
    CHECK(pregroup_cover(fixture("G21")).components.size() == 2);
    CHECK_THROWS_AS(fixture("nope"), InvalidInput);
}

TEST_CASE("catalog over the general corpus is violation-free") {
    CatalogConfig cfg;
    cfg.size = 2;
    cfg.mode = EnumMode::General;
    CatalogReport rep = catalog(cfg);
    CHECK(rep.generated == 17);
    CHECK(rep.violations.empty());
    CHECK(rep.complete);
    long long sum = 0;
    for (const auto& [cls, cnt] : rep.class_counts) sum += cnt;
    CHECK(sum == rep.generated);
    // the per-preorder breakdown sums to the same total, one entry per carrier
    long long per_sum = 0;
    for (const auto& [pk, counts] : rep.per_preorder)
        for (const auto& [cls, cnt] : counts) per_sum += cnt;
    CHECK(per_sum == rep.generated);
    CHECK(rep.per_preorder.size() == 5);  // the 1 + 4 carriers
    // the non-frobenius structures log their first failing tuple
    CHECK_FALSE(rep.counterexamples.empty());
    REQUIRE(rep.discrepancies.size() == 1);  // the complete-lattice remark
}

TEST_CASE("catalog in sampled mode is seeded and labeled") {
    CatalogConfig cfg;
    cfg.size = 2;
    cfg.mode = EnumMode::Sampled;
    cfg.seed = 7;
    cfg.count = 10;
    CatalogReport a = catalog(cfg);
    CatalogReport b = catalog(cfg);
    CHECK(a.generated == b.generated);
    CHECK(a.class_counts == b.class_counts);
    CHECK(a.violations.empty());
}

TEST_CASE("verify sweep passes and is independent of the job count") {
    VerifyConfig cfg;
    cfg.jobs = 1;
    VerifyReport r1 = run_verify(cfg);
    CHECK(r1.passed());
    CHECK(r1.selected_semantics == "polar");
    CHECK(r1.spiders >= 47);
    cfg.jobs = 8;
    VerifyReport r8 = run_verify(cfg);
    CHECK(r8.class_counts == r1.class_counts);
    CHECK(r8.subjects == r1.subjects);
    CHECK(r8.violations.size() == r1.violations.size());
}
