#include <doctest.h>

#include "proactive/error.hpp"
#include "proactive/model.hpp"

using namespace proactive;

TEST_CASE("atoms render and parse") {
  auto atom = parse_atom("(Gathered  Backpack)");
  CHECK(atom == make_atom("gathered", {"backpack"}));
  CHECK(to_string(atom) == "(gathered backpack)");
  CHECK(to_string(make_atom("human-at-home")) == "(human-at-home)");
  CHECK_THROWS_AS(parse_atom("(gathered"), ParseError);
  CHECK_THROWS_AS(parse_atom("gathered"), ParseError);
}

TEST_CASE("formula evaluation is closed-world") {
  AtomSet state = parse_atoms({"(dishes-dirty)", "(human-at-home)"});
  auto dirty = Formula::of(make_atom("dishes-dirty"));
  auto half = Formula::of(make_atom("dishes-half-dirty"));
  CHECK(satisfies(state, dirty));
  CHECK_FALSE(satisfies(state, half));
  CHECK(satisfies(state, Formula::negation(half)));
  CHECK(satisfies(state, Formula::any_of({dirty, half})));
  CHECK_FALSE(satisfies(state, Formula::all_of({dirty, half})));
  CHECK(satisfies({}, Formula()));

  auto lifted = Formula::all_of({Formula::negation(Formula::of(make_atom("gathered", {"?o"})))});
  CHECK(to_string(instantiate(lifted, {{"?o", "hat"}})) == "(and (not (gathered hat)))");
}

TEST_CASE("apply yields one successor per alternative") {
  GroundAction clean{"clean-dishes",
                     {},
                     AgentKind::both,
                     Formula::any_of({Formula::of(make_atom("dishes-dirty")), Formula::of(make_atom("dishes-half-dirty"))}),
                     {EffectList{{}, parse_atoms({"(dishes-dirty)", "(dishes-half-dirty)"})},
                      EffectList{parse_atoms({"(dishes-half-dirty)"}), parse_atoms({"(dishes-dirty)"})}}};
  AtomSet state = parse_atoms({"(dishes-dirty)", "(human-at-home)"});
  REQUIRE(applicable(state, clean));
  auto next = proactive::apply(state, clean);
  REQUIRE(next.size() == 2);
  CHECK(next[0] == parse_atoms({"(human-at-home)"}));
  CHECK(next[1] == parse_atoms({"(dishes-half-dirty)", "(human-at-home)"}));
  CHECK_FALSE(clean.deterministic());
  CHECK(clean.label() == "clean-dishes");
  CHECK_THROWS_AS(proactive::apply(parse_atoms({"(human-at-home)"}), clean), PreconditionViolated);
}

TEST_CASE("action schemes exist only for robot-capable actions") {
  GroundAction human{"leave-home", {}, AgentKind::human, Formula(), {EffectList{}}};
  GroundAction robot{"gather", {"hat"}, AgentKind::both, Formula(), {EffectList{}}};
  CHECK_FALSE(ActionScheme::from(human).has_value());
  REQUIRE(ActionScheme::from(robot).has_value());
  CHECK(ActionScheme::from(robot)->label() == "gather(hat)");
  CHECK(robot_schemes({human, robot}).size() == 1);
}

TEST_CASE("input labels round trip") {
  for (const char* text : {"null", "human:leave-home", "robot:warn-human", "env:hail"})
    CHECK(to_string(InputLabel::parse(text)) == text);
  CHECK(InputLabel::parse("null").is_null());
  CHECK_THROWS_AS(InputLabel::parse("alien:x"), Error);
}

TEST_CASE("dynamic system completes sinks and rejects duplicates") {
  std::vector<WorldState> states{{"a", parse_atoms({"(p)"})}, {"b", parse_atoms({"(q)"})}, {"c", parse_atoms({"(r)"})}};
  std::vector<Transition> edges{{0, InputLabel::null(), 2}, {0, InputLabel::null(), 1}, {1, InputLabel::robot("x"), 2}};
  DynamicSystem system(states, edges);
  CHECK(system.free_successors(0) == std::vector<StateIndex>{1, 2});
  CHECK(system.free_successors(1) == std::vector<StateIndex>{1});
  CHECK(system.completed_sink(1));
  CHECK_FALSE(system.completed_sink(0));
  CHECK(system.find(parse_atoms({"(q)"})) == StateIndex{1});
  CHECK_FALSE(system.find(parse_atoms({"(z)"})).has_value());
  CHECK_THROWS_AS(system.index_of("zz"), UnknownState);
  CHECK(system.free_successors(WorldState{"renamed", parse_atoms({"(p)"})}).size() == 2);
  CHECK_THROWS_AS(system.free_successors(WorldState{"x", parse_atoms({"(z)"})}), UnknownState);

  auto extended = system.with_sink({"x", parse_atoms({"(z)"})});
  CHECK(extended.size() == 4);
  CHECK(extended.free_successors(3) == std::vector<StateIndex>{3});

  CHECK_THROWS_AS(DynamicSystem({states[0], {"a", parse_atoms({"(z)"})}}, {}), ScenarioError);
  CHECK_THROWS_AS(DynamicSystem({states[0], {"d", parse_atoms({"(p)"})}}, {}), ScenarioError);
  CHECK_THROWS_AS(DynamicSystem(states, {{0, InputLabel::null(), 9}}), UnknownState);
  CHECK(WorldState{"one", parse_atoms({"(p)"})} == WorldState{"two", parse_atoms({"(p)"})});
}

TEST_CASE("derived free run closes under uncontrollable actions") {
  GroundAction rain{"rain", {}, AgentKind::both, Formula::negation(Formula::of(make_atom("wet"))),
                    {EffectList{parse_atoms({"(wet)"}), {}}, EffectList{parse_atoms({"(wet)", "(cold)"}), {}}}};
  auto system = derive_free_run({"start", {}}, {rain});
  REQUIRE(system.size() == 3);
  CHECK(system.state(0).id == "d0");
  CHECK(system.free_successors(0).size() == 2);
  CHECK(system.completed_sink(1));
  CHECK_THROWS_AS(derive_free_run({"start", {}}, {rain}, 2), Error);
}

TEST_CASE("desirability map validates and falls back") {
  DesirabilityMap des({{"a", 0.25}}, 0.1);
  CHECK(des.degree("a") == 0.25);
  CHECK(des.degree("unlisted") == 0.1);
  CHECK_THROWS_AS(DesirabilityMap({{"a", 1.3}}, 0.0), ScenarioError);
  CHECK_THROWS_AS(DesirabilityMap({}, -0.1), ScenarioError);
}

TEST_CASE("goals are satisfied by supersets") {
  Goal goal("hiking", parse_atoms({"(gathered compass)", "(human-outside)"}));
  CHECK(goal.satisfied_by(parse_atoms({"(gathered compass)", "(human-outside)", "(weather-rain)"})));
  CHECK_FALSE(goal.satisfied_by(parse_atoms({"(gathered compass)"})));
  CHECK_THROWS_AS(Goal("empty", {}), Error);
}
