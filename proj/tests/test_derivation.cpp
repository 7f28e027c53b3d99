#include <doctest.h>

#include <string>

#include "dehn/derivation.hpp"
#include "dehn/errors.hpp"
#include "dehn/homrep.hpp"
#include "support.hpp"

using namespace dehn;

namespace {

const Corpus& corpus() {
  static const Corpus c = testing::shipped_corpus();
  return c;
}

const VerifyResult& verified() {
  static const VerifyResult r = verify_corpus(corpus());
  return r;
}

ProofReport check_text(const std::string& text, const RelationStore& store) {
  auto scripts = parse_derivations(text);
  REQUIRE(scripts.size() == 1);
  return check_derivation(scripts[0], store, corpus().surfaces.at(scripts[0].target.surface));
}

}  // namespace

TEST_CASE("script grammar") {
  auto s = parse_derivations(R"(# comment
relation r on sigma_1_1 : a b = a b   # trailing
proof
  insert 0 a~
  lhs: cancel 0
  rhs: comm 1
  braid 0 lr
  braid 2 rl
  ident s1 at 3 fwd
  subst x via sigma_1_1 at 0 rev
  auto 4
  expect (a b)^2
  rhs: expect 1
qed
)");
  REQUIRE(s.size() == 1);
  CHECK(s[0].target.name == "r");
  CHECK(s[0].target.surface == "sigma_1_1");
  REQUIRE(s[0].steps.size() == 10);
  CHECK(s[0].steps[0].move.gen == TwistGen{"a", -1});
  CHECK(s[0].steps[2].side == Side::Rhs);
  CHECK(s[0].steps[3].move.kind == MoveKind::BraidLR);
  CHECK(s[0].steps[5].move.name == "s1");
  CHECK(s[0].steps[6].move.via == "sigma_1_1");
  CHECK(s[0].steps[6].move.dir == Direction::Reverse);
  CHECK(s[0].steps[7].move.kind == MoveKind::Auto);
  CHECK(s[0].steps[8].kind == Step::Kind::Expect);
  CHECK(s[0].steps[8].expected.size() == 4);
  CHECK(s[0].steps[9].expected.empty());
  CHECK(s[0].steps[1].line == 5);
  CHECK(s[0].dependencies() == std::vector<std::string>{"x"});
}

TEST_CASE("malformed scripts") {
  CHECK_THROWS_AS(parse_derivations("relation r on s : a = a\nproof\n  cancel\nqed\n"), ParseError);
  CHECK_THROWS_AS(parse_derivations("relation r on s : a = a\nproof\n  cancel 0\n"), ParseError);
  CHECK_THROWS_AS(parse_derivations("relation r on s : a = a\nproof\n  twist 0\nqed\n"), ParseError);
  CHECK_THROWS_AS(parse_derivations("relation r on s a = a\nproof\nqed\n"), ParseError);
  CHECK_THROWS_AS(parse_derivations("relation r on s : a = a\nproof\n  braid 0 up\nqed\n"), ParseError);
}

TEST_CASE("shipped proofs succeed") {
  const auto& r = verified();
  CHECK(r.ok());
  for (const char* name : {"one_holed", "two_holed", "star", "four_holed", "four_holed_symmetric",
                           "five_holed", "six_holed", "seven_holed", "eight_holed", "nine_holed",
                           "nine_holed_cyclic", "four_holed_pow2", "star_pow4",
                           "five_holed_pow3", "nine_holed_pow2"}) {
    INFO(name);
    CHECK(r.store.established(name));
  }
  CHECK(r.store.find("two_holed")->lhs == parse_word("(a1 a2 b)^4"));
  CHECK(r.store.find("nine_holed")->lhs ==
        parse_word("b4 s3 s6 a5 b1 s4 s7 a2 b7 s5 s8 a8"));
  const auto* four = r.store.entry("four_holed");
  REQUIRE(four != nullptr);
  CHECK(std::find(four->deps.begin(), four->deps.end(), "star") != four->deps.end());
}

TEST_CASE("reports are deterministic") {
  const auto& c = corpus();
  const auto& r = verified();
  for (const auto& s : c.scripts) {
    auto a = check_derivation(s, r.store, c.surfaces.at(s.target.surface));
    auto b = check_derivation(s, r.store, c.surfaces.at(s.target.surface));
    CHECK(a.to_json() == b.to_json());
  }
}

TEST_CASE("a wrong step is localized") {
  auto rep = check_text(R"(relation probe on sigma_1_1 : a b a = b a b
proof
  expect a b a
  comm 0
qed
)", axiom_store(corpus()));
  CHECK_FALSE(rep.success);
  REQUIRE(rep.failed_step.has_value());
  CHECK(*rep.failed_step == 1);
  CHECK(rep.failed_line == 4);
  CHECK(rep.failure.find("comm") != std::string::npos);
  CHECK(rep.text().find("FAILED") != std::string::npos);
  CHECK(rep.to_json()["failed_line"] == 4);
}

TEST_CASE("a proof must close the gap") {
  auto rep = check_text("relation probe on sigma_1_1 : a b a = b a b\nproof\nqed\n",
                        axiom_store(corpus()));
  CHECK_FALSE(rep.success);
  auto ok = check_text("relation probe on sigma_1_1 : a b a = b a b\nproof\n  braid 0 lr\nqed\n",
                       axiom_store(corpus()));
  CHECK(ok.success);
}

TEST_CASE("failed expectations") {
  auto rep = check_text(
      "relation probe on sigma_1_1 : a b a = b a b\nproof\n  braid 0 lr\n  expect a a\nqed\n",
      axiom_store(corpus()));
  CHECK_FALSE(rep.success);
  CHECK(rep.failed_line == 4);
}

TEST_CASE("unproven dependencies are refused") {
  auto rep = check_text(
      "relation probe on sigma_1_2 : (a1 a2 b)^4 = d1 d2\nproof\n  from two_holed\nqed\n",
      axiom_store(corpus()));
  CHECK_FALSE(rep.success);
}

TEST_CASE("auto steps bridge short gaps and record the moves") {
  auto rep = check_text(
      "relation probe on sigma_1_1 : b a b a~ = a b\nproof\n  auto 4\nqed\n",
      axiom_store(corpus()));
  CHECK(rep.success);
  REQUIRE(rep.steps.size() == 1);
  CHECK_FALSE(rep.steps[0].expansion.empty());
}

TEST_CASE("homology-false targets are rejected up front") {
  auto rep = check_text("relation probe on sigma_1_1 : a = b\nproof\nqed\n", axiom_store(corpus()));
  CHECK_FALSE(rep.success);
}

TEST_CASE("store rejects duplicates and self-dependency") {
  RelationStore s = axiom_store(corpus());
  Relation r{"r", "sigma_1_1", parse_word("a"), parse_word("a"), RelationStatus::Unproven};
  CHECK_THROWS_AS(s.register_relation(r, {"r"}, "script"), CycleDetected);
  s.register_relation(r, {}, "script");
  CHECK_THROWS_AS(s.register_relation(r, {}, "script"), DuplicateName);
  CHECK_THROWS_AS(s.register_relation(Relation{"q", "sigma_1_1", {}, {}, RelationStatus::Unproven},
                                      {"missing"}, "script"),
                  UnprovenRelation);
  RelationStore before = axiom_store(corpus());
  RelationStore after = register_relation(r, {}, "script", before);
  CHECK_FALSE(before.established("r"));
  CHECK(after.established("r"));
}

TEST_CASE("verify_power_relation") {
  RelationStore s = verified().store;
  const auto& c = corpus();
  Relation p = verify_power_relation("nine_holed", 2, s, c.surfaces.at("sigma_1_9"));
  CHECK(p.lhs.size() == 24);
  CHECK(p.rhs == parse_word("d1^2 d2^2 d3^2 d4^2 d5^2 d6^2 d7^2 d8^2 d9^2"));
  Relation base = verify_power_relation("nine_holed", 1, s, c.surfaces.at("sigma_1_9"));
  CHECK(base.lhs == s.find("nine_holed")->lhs);
  Relation star4 = verify_power_relation("star", 4, s, c.surfaces.at("sigma_1_3"));
  CHECK(star4.lhs == parse_word("(a1 a2 a3 b)^12"));
  CHECK(star4.rhs == parse_word("d1^4 d2^4 d3^4"));
  CHECK(relation_holds_in_homology(star4, c.surfaces.at("sigma_1_3")));
  Relation five3 = verify_power_relation("five_holed", 3, s, c.surfaces.at("sigma_1_5"));
  CHECK(s.established(five3.name));
}
