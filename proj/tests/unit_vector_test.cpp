#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "ucp/unit_vector.hpp"

using namespace ucp;

namespace {

// Independent oracle: plain per-symbol integer arithmetic over the union of
// symbols, zeros dropped. Deliberately avoids UnitVector's own operations.
std::map<std::string, int> oracle_apply(const UnitVector& a, const UnitVector& b, int sign) {
    std::set<std::string> symbols;
    for (const auto& [s, _] : a.exponents()) symbols.insert(s);
    for (const auto& [s, _] : b.exponents()) symbols.insert(s);
    std::map<std::string, int> out;
    for (const std::string& s : symbols) {
        int e = a.exponent_of(s) + sign * b.exponent_of(s);
        if (e != 0) out[s] = e;
    }
    return out;
}

}  // namespace

TEST_CASE("combine adds exponents so reciprocal units cancel") {
    UnitVector shirts{{"shirts", 1}};
    UnitVector dollars_per_shirt{{"dollars", 1}, {"shirts", -1}};
    CHECK(shirts.combine(dollars_per_shirt) == UnitVector{{"dollars", 1}});

    UnitVector people{{"people", 1}};
    UnitVector slices_per_person{{"slices", 1}, {"people", -1}};
    CHECK(people.combine(slices_per_person) == UnitVector{{"slices", 1}});
}

TEST_CASE("dimensionless is the identity element") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        UnitVector x = testing::random_unit_vector(rng);
        CHECK(x.combine(UnitVector{}) == x);
        CHECK(UnitVector{}.combine(x) == x);
    }
}

TEST_CASE("difference keeps negative exponents") {
    UnitVector miles{{"miles", 1}};
    UnitVector hour{{"hour", 1}};
    CHECK(miles.difference(hour) == UnitVector{{"miles", 1}, {"hour", -1}});

    UnitVector cents{{"cents", 1}};
    UnitVector cents_per_quarter{{"cents", 1}, {"quarters", -1}};
    CHECK(cents.difference(cents_per_quarter) == UnitVector{{"quarters", 1}});
}

TEST_CASE("difference of a vector with itself is dimensionless") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        UnitVector x = testing::random_unit_vector(rng);
        CHECK(x.difference(x) == UnitVector{});
        CHECK(x.difference(x).dimensionless());
    }
}

TEST_CASE("invert negates every exponent and is an involution") {
    UnitVector cups_per_dozen{{"cups", 1}, {"dozen", -1}};
    CHECK(cups_per_dozen.invert() == UnitVector{{"cups", -1}, {"dozen", 1}});
    CHECK(UnitVector{}.invert() == UnitVector{});
    UnitVector kb_per_s{{"kb", 1}, {"seconds", -1}};
    CHECK(kb_per_s.invert() == UnitVector{{"kb", -1}, {"seconds", 1}});

    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        UnitVector x = testing::random_unit_vector(rng);
        CHECK(x.invert().invert() == x);
        // per-symbol negation oracle
        for (const auto& [sym, exp] : x.exponents()) CHECK(x.invert().exponent_of(sym) == -exp);
    }
}

TEST_CASE("equality is exact symbol-and-exponent comparison") {
    CHECK(UnitVector{{"books", 1}} == UnitVector{{"books", 1}});
    // "dozen" vs "dozens" are distinct symbols; no plural folding
    UnitVector a{{"dozen", -1}, {"cups", 1}};
    UnitVector b{{"cups", 1}, {"dozens", -1}};
    CHECK(!(a == b));
    CHECK(!(UnitVector{} == UnitVector{{"percent", 1}}));
}

TEST_CASE("group laws hold over random vectors") {
    std::mt19937 rng(42);
    for (int i = 0; i < 1200; ++i) {
        UnitVector a = testing::random_unit_vector(rng);
        UnitVector b = testing::random_unit_vector(rng);
        UnitVector c = testing::random_unit_vector(rng);
        CHECK(a.combine(b) == b.combine(a));
        CHECK(a.combine(b).combine(c) == a.combine(b.combine(c)));
        CHECK(a.combine(UnitVector{}) == a);
        CHECK(a.combine(a.invert()) == UnitVector{});
        CHECK(a.difference(b) == a.combine(b.invert()));
    }
}

TEST_CASE("no operation ever stores a zero exponent") {
    std::mt19937 rng(99);
    for (int i = 0; i < 1000; ++i) {
        UnitVector a = testing::random_unit_vector(rng);
        UnitVector b = testing::random_unit_vector(rng);
        for (const UnitVector& v : {a.combine(b), a.difference(b), a.invert()})
            for (const auto& [sym, exp] : v.exponents()) {
                CHECK(exp != 0);
                CHECK(!sym.empty());
            }
    }
}

TEST_CASE("difference agrees with the per-symbol subtraction oracle") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 1000; ++i) {
        UnitVector a = testing::random_unit_vector(rng);
        UnitVector b = testing::random_unit_vector(rng);
        CHECK(a.difference(b).exponents() == oracle_apply(a, b, -1));
        CHECK(a.combine(b).exponents() == oracle_apply(a, b, +1));
    }
}

TEST_CASE("canonical text form sorts symbols") {
    UnitVector v{{"slices", 1}, {"people", -1}};
    CHECK(v.to_string() == "Counter({\"people\": -1, \"slices\": 1})");
    CHECK(UnitVector{}.to_string() == "Counter()");
    UnitVector sq{{"square inches", 2}};
    CHECK(sq.to_string() == "Counter({\"square inches\": 2})");
}
