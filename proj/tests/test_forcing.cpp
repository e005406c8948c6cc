#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "relce/errors.hpp"
#include "relce/forcing.hpp"

using namespace relce;
using namespace relce::forcing;
using enumop::EnumOperator;

namespace {

BinaryString bs(const char* s) { return BinaryString::parse(s); }

std::vector<std::string> all_strings(std::size_t length) {
    std::vector<std::string> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << length); ++v) {
        std::string s(length, '0');
        for (std::size_t i = 0; i < length; ++i) s[i] = ((v >> (length - 1 - i)) & 1) ? '1' : '0';
        out.push_back(s);
    }
    return out;
}

std::vector<FiniteNatSet> changed_sets(const FixpointResult& r) {
    std::vector<FiniteNatSet> out;
    for (const auto& s : r.trace) out.push_back(s.changed);
    return out;
}

}  // namespace

TEST_CASE("j_map worked values") {
    CHECK(j_map(bs("1010")).text() == "0101");
    CHECK(j_map(bs("0000")).text() == "0000");
    CHECK(j_map(bs("1111")).text() == "0000");
    CHECK(j_map(BinaryString{}).empty());
}

TEST_CASE("j_map agrees with the pair-walking oracle for |sigma| <= 10") {
    for (std::size_t len = 0; len <= 10; ++len) {
        for (const auto& s : all_strings(len)) {
            CHECK(j_map(BinaryString::parse(s)).text() == oracle::j_map(s));
        }
    }
}

TEST_CASE("recover_x worked values") {
    CHECK(recover_x(bs("0101")) == FiniteNatSet{0});
    CHECK(recover_x(bs("0000")).empty());
    const auto recovered = recover_x(j_map(bs("1010")));
    CHECK(recovered == FiniteNatSet{0});
    CHECK(recovered.is_subset_of(string_to_set(bs("1010"))));
}

TEST_CASE("danger_member worked values") {
    const EnumOperator op({{0, {1}}});
    auto d = danger_member(bs("1010"), op);
    CHECK(d.member);
    CHECK(d.witness == Nat{0});
    d = danger_member(bs("0010"), op);
    CHECK_FALSE(d.member);
    CHECK_FALSE(d.witness);
    CHECK_FALSE(danger_member(bs("1111"), EnumOperator{}).member);
}

TEST_CASE("danger_member reports the least witness") {
    // j("1100") = "0011", so the oracle is {2, 3} and both axioms fire
    const EnumOperator op({{1, {3}}, {0, {3}}});
    const auto d = danger_member(bs("1100"), op);
    CHECK(d.member);
    CHECK(d.witness == Nat{0});
}

TEST_CASE("fixpoint worked values") {
    auto r = fixpoint_remove_witnesses(bs("000000"), 1);
    CHECK(r.sigma.text() == "011010");
    CHECK(changed_sets(r) == std::vector<FiniteNatSet>{{1}, {2}, {4}, {}});
    CHECK(r.trace.size() == 4);
    CHECK(r.effective_stages() == 3);
    CHECK(j_map(r.sigma).text() == "000000");
    CHECK(oracle::j_map("011010") == "000000");

    r = fixpoint_remove_witnesses(bs("1000"), 2);
    CHECK(r.sigma.text() == "1010");
    CHECK(j_map(bs("1000")).text() == "0101");
    CHECK(j_map(r.sigma).text() == "0101");

    r = fixpoint_remove_witnesses(bs("00"), 1);
    CHECK(r.sigma.text() == "01");
}

TEST_CASE("fixpoint preconditions") {
    CHECK_THROWS_AS(fixpoint_remove_witnesses(bs("00"), 2), PreconditionViolated);
    CHECK_THROWS_AS(fixpoint_remove_witnesses(bs("01"), 1), PreconditionViolated);
    try {
        fixpoint_remove_witnesses(bs("10"), 1);
        FAIL("expected a precondition error");
    } catch (const PreconditionViolated& e) {
        CHECK(e.details()["pair"] == nlohmann::ordered_json::array({0, 0}));
    }
}

TEST_CASE("running past the j-bit precondition breaks j preservation") {
    const auto r = detail::iterate_fixpoint(bs("10"), 1);
    CHECK(r.sigma.text() == "11");
    CHECK(j_map(r.sigma).text() == "00");
    CHECK(j_map(bs("10")).text() == "01");
}

TEST_CASE("fixpoint invariants, exhaustive for |sigma0| <= 8") {
    for (std::size_t len = 1; len <= 8; ++len) {
        for (const auto& s : all_strings(len)) {
            const auto sigma0 = BinaryString::parse(s);
            const auto j0 = oracle::j_map(s);
            for (Nat p = 0; p < len; ++p) {
                if (s[p] == '1' || j0[p] == '1') continue;
                const auto r = fixpoint_remove_witnesses(sigma0, p);
                CHECK(r.sigma.at(p));
                CHECK(string_to_set(sigma0).is_subset_of(string_to_set(r.sigma)));
                CHECK(oracle::j_map(r.sigma.text()) == j0);
                CHECK(r.trace.back().changed.empty());
                CHECK(r.effective_stages() <= len);
                for (std::size_t i = 1; i + 1 < r.trace.size(); ++i) {
                    CHECK(*r.trace[i - 1].changed.begin() < *r.trace[i].changed.begin());
                }
            }
        }
    }
}

TEST_CASE("avoidance_check worked values") {
    CHECK(avoidance_check(bs("0101"), 1, 6, EnumOperator{}).holds);

    const EnumOperator op({{0, {1}}});
    auto r = avoidance_check(BinaryString{}, 0, 2, op);
    CHECK_FALSE(r.holds);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->text() == "10");
    CHECK(r.witness == Nat{0});

    r = avoidance_check(bs("00"), 2, 2, op);
    CHECK(r.holds);
    CHECK(r.scanned == 1);
}

TEST_CASE("avoidance_check errors") {
    CHECK_THROWS_AS(avoidance_check(bs("0"), 2, 4, EnumOperator{}), PreconditionViolated);
    CHECK_THROWS_AS(avoidance_check(bs("00000"), 0, 4, EnumOperator{}), PreconditionViolated);
    CHECK_THROWS_AS(avoidance_check(BinaryString{}, 0, 25, EnumOperator{}), BudgetExceeded);
    CHECK_THROWS_AS(avoidance_check(BinaryString{}, 0, 11, EnumOperator{}, 1024), BudgetExceeded);
    CHECK_NOTHROW(avoidance_check(BinaryString{}, 0, 10, EnumOperator{}, 1024));
}

TEST_CASE("avoidance_check returns the globally least counterexample") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        EnumOperator op;
        for (int k = 0; k < 2; ++k) op.add({rng() % 6, FiniteNatSet{rng() % 6}});
        const auto r = avoidance_check(BinaryString{}, 0, 6, op);
        std::optional<std::string> expected;
        for (std::size_t len = 0; len <= 6 && !expected; ++len) {
            for (const auto& s : all_strings(len)) {
                if (danger_member(BinaryString::parse(s), op).member) {
                    expected = s;
                    break;
                }
            }
        }
        CHECK(r.holds == !expected.has_value());
        if (expected) CHECK(r.counterexample->text() == *expected);
    }
}

TEST_CASE("force_meet_or_avoid worked values") {
    auto r = force_meet_or_avoid({{0, std::vector{bs("1")}}}, 2);
    CHECK(r.sigma.text() == "10");
    REQUIRE(r.log.size() == 1);
    CHECK(r.log[0].met);
    CHECK(r.log[0].via == bs("1"));

    r = force_meet_or_avoid({}, 3);
    CHECK(r.sigma.text() == "000");
    CHECK(r.log.empty());

    r = force_meet_or_avoid({{0, std::vector{bs("11")}}, {1, std::vector{bs("110")}}}, 3);
    CHECK(r.sigma.text() == "110");
    REQUIRE(r.log.size() == 2);
    CHECK(r.log[0].met);
    CHECK(r.log[1].met);
}

TEST_CASE("force_meet_or_avoid orders by id and records avoidance") {
    auto r = force_meet_or_avoid({{2, std::vector{bs("01")}}, {1, std::vector{bs("1"), bs("0")}}}, 3);
    REQUIRE(r.log.size() == 2);
    CHECK(r.log[0].id == 1);
    CHECK(r.log[0].via == bs("0"));
    CHECK(r.log[1].id == 2);
    CHECK(r.log[1].met);
    CHECK(r.sigma.text() == "010");

    r = force_meet_or_avoid({{0, std::vector{bs("1")}}, {1, std::vector{bs("0")}}}, 2);
    CHECK(r.log[1].met == false);
    CHECK_FALSE(r.log[1].via);
    CHECK(r.sigma.text() == "10");

    CHECK_THROWS_AS(force_meet_or_avoid({{0, std::vector{bs("0000")}}}, 3), SchemaError);
}

TEST_CASE("force with explicit sets matches an exhaustive scan") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Requirement> reqs;
        for (Nat id = 0; id < 3; ++id) {
            std::vector<BinaryString> members;
            for (int k = 0; k < 3; ++k) members.push_back(oracle::random_string(rng, rng() % 6));
            reqs.push_back({id, members});
        }
        const auto r = force_meet_or_avoid(reqs, 5);

        std::string sigma;
        for (const auto& req : reqs) {
            const auto& members = std::get<std::vector<BinaryString>>(req.spec);
            std::optional<std::string> hit;
            for (std::size_t len = sigma.size(); len <= 5 && !hit; ++len) {
                for (const auto& s : all_strings(len)) {
                    if (s.compare(0, sigma.size(), sigma) != 0) continue;
                    for (const auto& m : members) {
                        if (m.text() == s) hit = s;
                    }
                    if (hit) break;
                }
            }
            if (hit) sigma = *hit;
        }
        sigma.resize(5, '0');
        CHECK(r.sigma.text() == sigma);
    }
}

TEST_CASE("force with a danger-set requirement") {
    const EnumOperator op({{0, {1}}});
    auto r = force_meet_or_avoid({{0, op}}, 3);
    CHECK(r.sigma.text() == "100");
    CHECK(r.log[0].via == bs("10"));

    // starting from "0", nothing extending it puts 0 into sigma
    r = force_meet_or_avoid({{0, std::vector{bs("0")}}, {1, op}}, 4);
    CHECK(r.log[1].met == false);
    CHECK(r.sigma.text() == "0000");

    CHECK_THROWS_AS(force_meet_or_avoid({{0, op}}, 30), BudgetExceeded);
}

TEST_CASE("theorem3_demo worked values") {
    const EnumOperator op({{2, {1}}});
    auto d = theorem3_demo(bs("1000"), 1, op);
    REQUIRE(d.certificate);
    CHECK(d.certificate->p == 2);
    CHECK(d.certificate->tau.text() == "1010");
    CHECK(d.certificate->danger_witness == 2);
    CHECK(d.certificate->t == 4);
    CHECK(d.z_t == FiniteNatSet{2});
    CHECK(verify_certificate(*d.certificate, op).empty());

    d = theorem3_demo(bs("0000"), 0, op);
    CHECK_FALSE(d.certificate);
    CHECK(d.z_t.empty());

    d = theorem3_demo(bs("1000"), 3, op);
    CHECK_FALSE(d.certificate);
    CHECK(d.z_t == FiniteNatSet{2});

    CHECK_THROWS_AS(theorem3_demo(bs("10"), 3, op), PreconditionViolated);
}

TEST_CASE("demo skips candidates that carry a j-bit") {
    // j("1000") = "0101"; 3 = <0,1> is a j-bit, so p = 3 is not allowed
    const EnumOperator op({{3, {1}}});
    const auto d = theorem3_demo(bs("1000"), 1, op);
    CHECK(d.z_t == FiniteNatSet{3});
    CHECK_FALSE(d.certificate);
}

TEST_CASE("tampered certificates are rejected") {
    const EnumOperator op({{2, {1}}});
    const auto good = *theorem3_demo(bs("1000"), 1, op).certificate;

    auto bad = good;
    bad.tau = bs("1011");
    CHECK_FALSE(verify_certificate(bad, op).empty());
    bad = good;
    bad.p = 3;
    CHECK_FALSE(verify_certificate(bad, op).empty());
    bad = good;
    bad.l = 3;
    CHECK_FALSE(verify_certificate(bad, op).empty());
    bad = good;
    bad.danger_witness = 0;
    CHECK_FALSE(verify_certificate(bad, op).empty());
    CHECK_FALSE(verify_certificate(good, EnumOperator{}).empty());
}

TEST_CASE("JSON shapes") {
    using json = nlohmann::ordered_json;
    const auto r = fixpoint_remove_witnesses(bs("00"), 1);
    CHECK(trace_json(r.trace).dump() ==
          R"([{"i":1,"sigma":"01","changed":[1]},{"i":2,"sigma":"01","changed":[]}])");
    CHECK(trace_from_json(trace_json(r.trace)).size() == 2);

    const auto cert = *theorem3_demo(bs("1000"), 1, EnumOperator({{2, {1}}})).certificate;
    CHECK(json(cert).dump() ==
          R"({"l":1,"t":4,"p":2,"sigma0":"1000","tau":"1010","danger_witness":2})");
    CHECK(json(cert).get<Certificate>() == cert);

    const auto req = json::parse(R"({"id": 3, "danger": {"axioms": [[0, [1]]]}})").get<Requirement>();
    CHECK(req.id == 3);
    CHECK(std::holds_alternative<EnumOperator>(req.spec));
    CHECK(json(req).dump() == R"({"id":3,"danger":{"axioms":[[0,[1]]]}})");

    CHECK_THROWS_AS(json::parse(R"({"id": 1})").get<Requirement>(), SchemaError);
    CHECK_THROWS_AS(json::parse(R"({"id": 1, "members": ["2"]})").get<Requirement>(), SchemaError);
    CHECK_THROWS_AS(json::parse(R"({"l": 1})").get<Certificate>(), SchemaError);
}
