#include "autotamp/stl.hpp"

#include "autotamp/monitor.hpp"
#include "doctest.h"
#include "support/helpers.hpp"
#include "support/naive_monitor.hpp"

using namespace autotamp;
using testsupport::Rng;

TEST_CASE("preorder parse: conjunction of two eventualities") {
  auto r = parse_preorder("and finally enter(room_purple) finally enter(room_pink)");
  REQUIRE(r.ok());
  auto expected = make_and(make_finally(TimeInterval::all(), make_enter("room_purple")),
                           make_finally(TimeInterval::all(), make_enter("room_pink")));
  CHECK(equal(r.formula, expected));
}

TEST_CASE("preorder parse: single predicate") {
  auto r = parse_preorder("enter(goal_1)");
  REQUIRE(r.ok());
  CHECK(equal(r.formula, make_enter("goal_1")));
}

TEST_CASE("preorder parse: leftover token after complete tree") {
  auto r = parse_preorder("until [286, 348] enter(a) enter(b) enter(c)");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == DiagCode::UnbalancedStructure);
  CHECK(r.diagnostics[0].message.find("enter(c)") != std::string::npos);
}

TEST_CASE("preorder parse: truncated input reports arity mismatch") {
  auto r = parse_preorder("and enter(a)");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == DiagCode::ArityMismatch);
}

TEST_CASE("preorder parse: unknown keyword is named verbatim") {
  auto r = parse_preorder("and eventually enter(a) enter(b)");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == DiagCode::UnknownToken);
  CHECK(r.diagnostics[0].message.find("eventually") != std::string::npos);
  CHECK(r.diagnostics[0].token_index == 1);
}

TEST_CASE("preorder parse: negation alias and spaced region names") {
  auto r = parse_preorder("negation enter(blue restroom2)");
  REQUIRE(r.ok());
  CHECK(equal(r.formula, make_not(make_enter("blue_restroom2"))));
  CHECK(serialize_preorder(r.formula) == "not enter(blue_restroom2)");
}

TEST_CASE("inorder parse: parenthesized conjunction with intervals") {
  auto r = parse_inorder("(finally[0, 10] enter(room_purple) and finally[0, 10] enter(room_pink))");
  REQUIRE(r.ok());
  auto expected = make_and(make_finally(TimeInterval::of(0, 10), make_enter("room_purple")),
                           make_finally(TimeInterval::of(0, 10), make_enter("room_pink")));
  CHECK(equal(r.formula, expected));
}

TEST_CASE("inorder parse: bare predicate") {
  auto r = parse_inorder("enter(a)");
  REQUIRE(r.ok());
  CHECK(equal(r.formula, make_enter("a")));
}

TEST_CASE("inorder parse: grouping controls associativity") {
  auto r = parse_inorder("(enter(a) and enter(b)) or enter(c)");
  REQUIRE(r.ok());
  auto expected = make_or(make_and(make_enter("a"), make_enter("b")), make_enter("c"));
  CHECK(equal(r.formula, expected));

  auto left_chain = parse_inorder("enter(a) and enter(b) or enter(c)");
  REQUIRE(left_chain.ok());
  CHECK(equal(left_chain.formula, expected));
}

TEST_CASE("inorder parse: mismatched parentheses") {
  auto r = parse_inorder("(enter(a) and enter(b)");
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == DiagCode::UnbalancedStructure);
}

TEST_CASE("inorder parse: infix until with interval") {
  auto r = parse_inorder("not enter(door_1) until[0, 5] enter(key_1)");
  REQUIRE(r.ok());
  auto expected = make_until(TimeInterval::of(0, 5), make_not(make_enter("door_1")), make_enter("key_1"));
  CHECK(equal(r.formula, expected));
}

TEST_CASE("serialize: predicate and canonical operator text") {
  CHECK(serialize_preorder(make_enter("goal_1")) == "enter(goal_1)");
  auto f = make_and(make_finally(TimeInterval::all(), make_enter("a")),
                    make_globally(TimeInterval::all(), make_not_enter("walls")));
  CHECK(serialize_preorder(f) == "and finally [0, infinite] enter(a) globally [0, infinite] not_enter(walls)");
}

TEST_CASE("serialize: numbers render without trailing noise") {
  auto f = make_until(TimeInterval::of(286, 348), make_enter("a"), make_enter("b"));
  CHECK(serialize_preorder(f) == "until [286, 348] enter(a) enter(b)");
  auto g = make_finally(TimeInterval::of(0.5, 2.25), make_enter("a"));
  CHECK(serialize_preorder(g) == "finally [0.5, 2.25] enter(a)");
}

TEST_CASE("round-trip: 1000 random trees of depth <= 8") {
  Rng rng(20240301);
  const std::vector<std::string> pool{"room_a", "room_b", "room_c", "goal_1", "walls"};
  for (int k = 0; k < 1000; ++k) {
    auto f = testsupport::random_formula(rng, 8, pool);
    auto text = serialize_preorder(f);
    auto back = parse_preorder(text);
    REQUIRE_MESSAGE(back.ok(), text);
    CHECK_MESSAGE(equal(f, back.formula), text);
  }
}

TEST_CASE("validate: unknown region, malformed interval, clean formula") {
  Environment env = testsupport::small_env();

  auto unknown = make_finally(TimeInterval::all(), make_enter("goal_9"));
  auto diags = validate(*unknown, env);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == DiagCode::UnknownRegion);
  CHECK(diags[0].message.find("goal_9") != std::string::npos);

  auto bad = make_globally(TimeInterval::of(5, 2), make_enter("room_a"));
  diags = validate(*bad, env);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == DiagCode::MalformedInterval);

  auto ok = make_and(make_finally(TimeInterval::of(0, 4), make_enter("room_a")),
                     make_globally(TimeInterval::all(), make_not_enter("room_b")));
  CHECK(validate(*ok, env).empty());
}

TEST_CASE("validate: group attribute resolves region names") {
  Environment env = testsupport::small_env();
  env.regions.push_back(Region{"wall_1", Rect{0, 1, 9, 10}, {{"group", "walls"}, {"function", "wall"}}});
  env.regions.push_back(Region{"wall_2", Rect{9, 10, 9, 10}, {{"group", "walls"}, {"function", "wall"}}});
  auto f = make_globally(TimeInterval::all(), make_not_enter("walls"));
  CHECK(validate(*f, env).empty());
  CHECK(env.resolve_region("walls").size() == 2);
}

TEST_CASE("nnf: temporal duality and implication rewrite") {
  auto a = make_not(make_finally(TimeInterval::of(0, 3), make_enter("a")));
  CHECK(equal(to_nnf(a), make_globally(TimeInterval::of(0, 3), make_not_enter("a"))));

  auto imp = make_imply(make_enter("ing_1"), make_finally(TimeInterval::of(0, 3), make_enter("cook")));
  CHECK(equal(to_nnf(imp), make_or(make_not_enter("ing_1"),
                                   make_finally(TimeInterval::of(0, 3), make_enter("cook")))));

  auto dn = make_not(make_not(make_enter("a")));
  CHECK(equal(to_nnf(dn), make_enter("a")));

  auto np = make_not(make_not_enter("a"));
  CHECK(equal(to_nnf(np), make_enter("a")));
}

TEST_CASE("nnf: negation stays only on Until nodes") {
  auto u = make_until(TimeInterval::of(0, 5), make_enter("a"), make_enter("b"));
  auto f = make_not(make_and(u, make_enter("c")));
  auto g = to_nnf(f);
  // not(and(u, c)) -> or(not(u), not_enter(c))
  REQUIRE(g->kind == StlKind::Or);
  CHECK(g->left->kind == StlKind::Not);
  CHECK(g->left->left->kind == StlKind::Until);
  CHECK(equal(g->right, make_not_enter("c")));
}

TEST_CASE("nnf preserves robustness on random formula/trajectory pairs") {
  Rng rng(777);
  Environment env = testsupport::small_env();
  const std::vector<std::string> pool{"room_a", "room_b", "room_c"};
  for (int k = 0; k < 200; ++k) {
    auto f = testsupport::random_formula(rng, 4, pool);
    auto traj = testsupport::random_trajectory(rng, env, 8);
    auto g = to_nnf(f);
    const double a = robustness(*f, traj, env, 0.0);
    const double b = robustness(*g, traj, env, 0.0);
    // Clipped-away windows legitimately produce identical infinities.
    const bool same = a == b || std::abs(a - b) <= 1e-9;
    CHECK_MESSAGE(same, serialize_preorder(f));
  }
}

TEST_CASE("interval defaults and explicit infinite token") {
  auto r = parse_preorder("finally enter(a)");
  REQUIRE(r.ok());
  CHECK(r.formula->interval == TimeInterval::all());

  auto r2 = parse_preorder("globally [2, infinite] enter(a)");
  REQUIRE(r2.ok());
  CHECK(r2.formula->interval.lower == 2.0);
  CHECK(r2.formula->interval.upper_unbounded());
}
