#include <doctest.h>

#include "common.hpp"
#include "proactive/error.hpp"
#include "proactive/sim/session.hpp"

using namespace proactive;
using namespace proactive::testing;

namespace {

const std::vector<std::string> kTrajectory{"s0", "s1.0", "s2.0", "s3.0"};

}  // namespace

TEST_CASE("replay reproduces the golden traces") {
  for (auto mode : {RunMode::hir, RunMode::eqm, RunMode::combined}) {
    CAPTURE(to_string(mode));
    auto events = replay(domestic_knowledge(), mode, kTrajectory, 1);
    CHECK(to_jsonl(events) == read_source("tests/golden/" + std::string(to_string(mode)) + ".jsonl"));
  }
}

TEST_CASE("the HIR run goes off the graph and back") {
  auto events = replay(domestic_knowledge(), RunMode::hir, kTrajectory, 1);
  REQUIRE(events.size() == 4);
  CHECK(events[1].dispatched == std::optional<std::string>("gather(water-bottle)"));
  CHECK(events[1].result_state == "s1.0'");
  CHECK(events[2].state == "s2.0'");
  CHECK(events[2].graph_state == std::optional<std::string>("s3.0"));
  CHECK(events[2].dispatched == std::optional<std::string>("tell-ready-to-leave"));
  CHECK(events[2].message.has_value());
  CHECK_FALSE(events[3].changed);
  CHECK_FALSE(events[3].chosen.has_value());
}

TEST_CASE("trajectories are checked") {
  CHECK(replay(domestic_knowledge(), RunMode::hir, {}, 1).empty());
  CHECK_THROWS_AS(replay(domestic_knowledge(), RunMode::hir, {"s0", "s2.0"}, 1), TrajectoryError);
  CHECK_THROWS_AS(replay(domestic_knowledge(), RunMode::hir, {"s0", "nowhere"}, 1), TrajectoryError);
  CHECK_NOTHROW(check_trajectory(*domestic_knowledge(), {"s3.0", "s4.1", "s4.1"}));
}

TEST_CASE("illegal picks are rejected without side effects") {
  Session session(domestic_knowledge(), RunMode::eqm, 1);
  CHECK_THROWS_AS(session.step(Pick::to("s1.0")), Error);
  CHECK_THROWS_AS(session.start("nowhere"), UnknownState);
  session.start("s0");
  CHECK_THROWS_AS(session.step(Pick::to("s3.0")), IllegalPick);
  CHECK_THROWS_AS(session.step(Pick::to("ghost")), IllegalPick);
  CHECK_THROWS_AS(session.step(Pick::act("warn-human")), IllegalPick);
  CHECK_THROWS_AS(session.step(Pick::act("fly")), IllegalPick);
  CHECK_THROWS_AS(session.step(Pick::act("clean-dishes")), IllegalPick);
  CHECK_THROWS_AS(session.step(Pick::none()), IllegalPick);
  CHECK(session.steps() == 1);
  CHECK(session.label() == "s0");
}

TEST_CASE("human actions draw outcomes from the seeded stream") {
  auto run = [](std::uint32_t seed) {
    Session session(domestic_knowledge(), RunMode::hir, seed);
    session.start("s1.0");
    std::vector<std::size_t> outcomes;
    for (int i = 0; i < 1; ++i) outcomes.push_back(*session.step(Pick::act("clean-dishes")).pick.outcome);
    return std::make_pair(outcomes, to_jsonl(session.trace()));
  };
  CHECK(run(5) == run(5));

  Session forced(domestic_knowledge(), RunMode::hir, 1);
  forced.start("s1.0");
  auto event = forced.step(Pick::act("clean-dishes", 1));
  CHECK(event.pick.outcome == std::optional<std::size_t>(1));
  CHECK(forced.atoms().contains(make_atom("dishes-half-dirty")));
  CHECK_THROWS_AS(forced.step(Pick::act("gather(tea)", 3)), IllegalPick);
}

TEST_CASE("primed labels compare by atoms") {
  Session session(domestic_knowledge(), RunMode::hir, 1);
  session.start("s2.0");
  CHECK(session.label() == "s2.0'");
  CHECK(session.anchor() == "s2.0");
  CHECK(session.trace().back().graph_state == std::optional<std::string>("s2.0"));
  CHECK(WorldState{session.label(), session.atoms()} == WorldState{"s3.0", atoms_of("s3.0")});

  auto event = session.step(Pick::act("gather(hat)"));
  CHECK(event.changed);
  CHECK(event.state == "s2.0'");
  CHECK_FALSE(event.graph_state.has_value());

  Session back(domestic_knowledge(), RunMode::eqm, 1);
  back.start("s3.0");
  auto listed = back.step(Pick::to("s4.1"));
  CHECK(listed.state.rfind("s4.1", 0) == 0);
  CHECK(back.anchor() == "s4.1");
}

TEST_CASE("mode switches only affect later decisions") {
  Session session(domestic_knowledge(), RunMode::hir, 1);
  session.start("s0");
  auto first = session.trace().front();
  session.set_mode(RunMode::eqm);
  session.step(Pick::to("s1.0"));
  CHECK(session.trace().front() == first);
  CHECK(session.trace().back().mode == RunMode::eqm);
  CHECK_FALSE(session.trace().back().intention.has_value());

  session.reset(9);
  CHECK(session.trace().empty());
  CHECK_FALSE(session.started());
  CHECK(session.seed() == 9);
}

TEST_CASE("trace lines round trip") {
  auto events = replay(domestic_knowledge(), RunMode::combined, kTrajectory, 1);
  auto text = to_jsonl(events);
  CHECK(parse_jsonl(text) == events);
  CHECK(text.find(std::string(kTraceSchema)) != std::string::npos);
  CHECK_THROWS_AS(parse_jsonl("{\"schema\":\"other/1\"}\n"), Error);
  CHECK_THROWS(parse_jsonl("not json\n"));
  CHECK(parse_jsonl("").empty());
}
