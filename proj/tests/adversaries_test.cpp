#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <notionlab/adversaries.hpp>

using namespace notionlab;

namespace {

std::set<LeakageFunction> leaks(std::initializer_list<LeakageFunction> fs) {
  return std::set<LeakageFunction>(fs);
}

GameConfig game_config(const std::string& notion, int c, int n, int senders = 2,
                       int receivers = 2) {
  GameConfig cfg;
  cfg.notion = resolve_notion(notion);
  cfg.c = c;
  cfg.n = n;
  cfg.seed = 5;
  cfg.senders = senders;
  cfg.receivers = receivers;
  return cfg;
}

bool accepts(const std::string& notion, const AttackScript& s, int c, int n, int senders = 2,
             int receivers = 2) {
  Game game(game_config(notion, c, n, senders, receivers), nullptr);
  try {
    run_attack(game, s);
    return true;
  } catch (const AttackAborted&) {
    return false;
  }
}

int play(const std::string& notion, const AttackScript& s, const std::set<LeakageFunction>& ls,
         int b, int c, int n, int senders = 2, int receivers = 2) {
  GameConfig cfg = game_config(notion, c, n, senders, receivers);
  cfg.forced_b = b;
  Game game(cfg, std::make_shared<LeakyIdeal>(ls));
  return run_attack(game, s).guess;
}

// Query with the same one-row batch pair in both instances.
ChallengeBatchQuery row_pair(Communication scen0, Communication scen1) {
  return simple_query(Batch{std::move(scen0)}, Batch{std::move(scen1)});
}

}  // namespace

TEST_CASE("attack scripts round-trip through json") {
  AttackScript s;
  s.notion = "S!O";
  s.steps.push_back(AttackStep::batch(
      row_pair(Communication::make(0, 1, "m"), Communication::make(1, 1, "m")), 2));
  s.steps.push_back(AttackStep::corrupt(3));
  s.steps.push_back(AttackStep::protocol("dump-config"));
  s.steps.push_back(AttackStep::switch_stage());
  s.guess.kind = GuessKind::MatchExpect;
  s.guess.expect0 = {"one\n", "two\n"};
  s.leaks = leaks({LeakageFunction::ActiveSenders, LeakageFunction::CommCount});

  const AttackScript back = script_from_json(json::parse(to_json(s).dump()));
  CHECK(back == s);

  AttackScript coin = random_guesser("R!O");
  CHECK(script_from_json(to_json(coin)) == coin);
}

TEST_CASE("oracle witnesses become deterministic distinguishers") {
  OracleBounds bounds;
  bounds.max_message_len = 1;
  const auto ls = leaks({LeakageFunction::ActiveSenders});
  const SafetyReport rep = observation_invariance(ls, resolve_notion("S!O"), bounds);
  REQUIRE_FALSE(rep.safe);

  const AttackScript script = observable_distinguisher(ls, rep.witness, resolve_notion("S!O"));
  CHECK(script.notion == "S!O");
  CHECK(script.guess.kind == GuessKind::MatchExpect);
  CHECK(script.leaks == ls);
  for (int b = 0; b < 2; ++b) {
    CHECK(play("S!O", script, ls, b, 8, 1) == b);
    CHECK(play("S!O", script, ls, b, 8, 1) == b);
  }
}

TEST_CASE("overlapping observation streams are rejected") {
  std::vector<OracleStep> steps;
  OracleStep st;
  st.query = row_pair(Communication::make(0, 0, "m"), Communication::make(1, 0, "m"));
  steps.push_back(st);
  CHECK_THROWS_AS(observable_distinguisher(leaks({LeakageFunction::ReceiverCount}), steps,
                                           resolve_notion("S!O")),
                  NotDistinguishing);
}

TEST_CASE("the random guesser is accepted by every notion") {
  for (const NotionSpec& n : registry()) {
    const AttackScript coin = random_guesser(n.name);
    GameConfig cfg;
    cfg.notion = n;
    cfg.c = 1;
    cfg.n = 1;
    Game game(cfg, nullptr);
    const AttackOutcome out = run_attack(game, coin, 11);
    CHECK((out.guess == 0 || out.guess == 1));
  }
  Game g0(game_config("S!O", 1, 1), nullptr);
  Game g1(game_config("S!O", 1, 1), nullptr);
  CHECK(run_attack(g0, random_guesser("S!O"), 42).guess ==
        run_attack(g1, random_guesser("S!O"), 42).guess);
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    Game g(game_config("S!O", 1, 1), nullptr);
    seen.insert(run_attack(g, random_guesser("S!O"), seed).guess);
  }
  CHECK(seen.size() == 2);
}

TEST_CASE("rejected queries abort the attack") {
  AttackScript s;
  s.notion = "S!O";
  s.steps.push_back(AttackStep::batch(
      row_pair(Communication::make(0, 0, "m"), Communication::make(1, 1, "m"))));
  Game game(game_config("S!O", 1, 1), nullptr);
  try {
    run_attack(game, s);
    FAIL("expected an abort");
  } catch (const AttackAborted& e) {
    CHECK(e.step == 0);
  }
}

namespace {

// One challenge row in the sender-receiver pattern: senders follow the
// instance, receivers follow instance xor scenario, the message is shared.
ChallengeBatchQuery sr_pattern_row() {
  ChallengeBatchQuery q;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) q.at(a, b).push_back(Communication::make(a, b ? 1 - a : a, "m"));
  return q;
}

}  // namespace

TEST_CASE("instance fixing produces valid fixed-instance attacks") {
  const auto ls = leaks({LeakageFunction::SenderReceiverPairs});
  std::vector<OracleStep> steps;
  OracleStep st;
  st.query = sr_pattern_row();
  steps.push_back(st);
  const AttackScript src = observable_distinguisher(ls, steps, resolve_notion("(SR)!O"));
  CHECK(accepts("(SR)!O", src, 1, 1));

  SUBCASE("same-instance mode lands in the receiver notion") {
    Translation t;
    t.target = "R!O";
    const std::vector<AttackScript> out = translate(src, t);
    REQUIRE(out.size() == 2);
    for (const AttackScript& fixed : out) {
      CHECK(fixed.notion == "R!O");
      CHECK(accepts("R!O", fixed, 1, 1));
      for (int b = 0; b < 2; ++b) CHECK(play("R!O", fixed, ls, b, 1, 1) == b);
    }
  }

  SUBCASE("cross-instance mode lands in the sender notion") {
    Translation t;
    t.target = "S!O";
    t.cross = true;
    const std::vector<AttackScript> out = translate(src, t);
    REQUIRE(out.size() == 2);
    for (const AttackScript& fixed : out) {
      CHECK(accepts("S!O", fixed, 1, 1));
      for (int b = 0; b < 2; ++b) CHECK(play("S!O", fixed, ls, b, 1, 1) == b);
    }
  }

  SUBCASE("same-instance mode is not valid for the sender notion") {
    Translation t;
    t.target = "S!O";
    const std::vector<AttackScript> out = translate(src, t);
    CHECK_FALSE(accepts("S!O", out[0], 1, 1));
  }

  SUBCASE("each challenge gets its own instance bit") {
    AttackScript multi = src;
    multi.steps.push_back(AttackStep::batch(sr_pattern_row(), 2));
    Translation t;
    t.target = "R!O";
    const std::vector<AttackScript> out = translate(multi, t);
    CHECK(out.size() == 4);
    for (const AttackScript& fixed : out) CHECK(accepts("R!O", fixed, 2, 2));
  }

  SUBCASE("explicit challenge tags are out of scope") {
    AttackScript tagged = src;
    tagged.steps[0].query.at(0, 0)[0].get().aux.challenge = 1;
    Translation t;
    t.target = "R!O";
    CHECK_THROWS_AS(translate(tagged, t), TranslationInapplicable);
  }
}

TEST_CASE("batch splitting maps hiding attacks to half-open rows") {
  ChallengeBatchQuery q = simple_query(
      Batch{Communication::make(0, 0, "a"), Communication::make(1, 1, "b")},
      Batch{Communication::empty(), Communication::make(1, 1, "b")});
  const auto ls = leaks({LeakageFunction::CommCount});
  std::vector<OracleStep> steps;
  OracleStep st;
  st.query = q;
  steps.push_back(st);
  const AttackScript src = observable_distinguisher(ls, steps, resolve_notion("C!O"));
  CHECK(accepts("C!O", src, 1, 1));

  Translation t;
  t.kind = TranslationKind::BatchSplit;
  t.target = "LS!O";
  const std::vector<AttackScript> out = translate(src, t);
  REQUIRE(out.size() == 1);
  const AttackScript& split = out[0];
  REQUIRE(split.steps.size() == 3);
  CHECK(split.steps[0].psi == 1);
  CHECK(split.steps[1].psi == 2);
  CHECK(split.steps[0].query.rows() == 1);
  CHECK(split.steps[0].query.at(0, 1)[0].is_empty());
  CHECK(split.steps[1].query.at(0, 0)[0].is_empty());

  CHECK(accepts("LS!O", split, 2, 2));
  CHECK(accepts("LS!O_CR1", split, 2, 2));
  for (int b = 0; b < 2; ++b) {
    CHECK(play("C!O", src, ls, b, 1, 1) == b);
    CHECK(play("LS!O", split, ls, b, 2, 2) == b);
  }
}

TEST_CASE("sender replacement pins the challenge senders") {
  AttackScript src;
  src.notion = "S!O";
  src.steps.push_back(AttackStep::batch(
      row_pair(Communication::make(0, 0, "m"), Communication::make(1, 0, "m"))));
  src.steps.push_back(AttackStep::batch(
      row_pair(Communication::make(0, 1, "x"), Communication::make(0, 1, "x"))));
  CHECK(accepts("S!O", src, 1, 1));
  CHECK_FALSE(accepts("S!O'", src, 1, 1));

  Translation t;
  t.kind = TranslationKind::SenderReplace;
  t.target = "S!O'";
  t.senders_universe = 4;
  const std::vector<AttackScript> out = translate(src, t);
  REQUIRE(out.size() == 1);
  const AttackScript& pinned = out[0];
  CHECK(pinned.steps[0].query == src.steps[0].query);
  CHECK(pinned.steps[1].query.at(0, 0)[0].get().sender == 2);
  CHECK(pinned.steps[1].query.at(0, 1)[0].get().sender == 2);
  CHECK(accepts("S!O'", pinned, 1, 1, 4));

  SUBCASE("a full universe leaves no fresh sender") {
    Translation tight = t;
    tight.senders_universe = 2;
    CHECK_THROWS_AS(translate(src, tight), TranslationInapplicable);
  }

  SUBCASE("a script without challenge rows cannot be pinned") {
    AttackScript flat;
    flat.notion = "S!O";
    flat.steps.push_back(AttackStep::batch(
        row_pair(Communication::make(0, 1, "x"), Communication::make(0, 1, "x"))));
    CHECK_THROWS_AS(translate(flat, t), TranslationInapplicable);
  }
}

TEST_CASE("challenge renumbering retags rows in chunks") {
  Batch scen0, scen1;
  for (int j = 0; j < 3; ++j) {
    scen0.push_back(Communication::make(0, j % 2, "m" + std::to_string(j)));
    scen1.push_back(Communication::make(1, j % 2, "m" + std::to_string(j)));
  }
  scen0.push_back(Communication::make(1, 0, "x"));
  scen1.push_back(Communication::make(1, 0, "x"));
  AttackScript src;
  src.notion = "S!O";
  src.steps.push_back(AttackStep::batch(simple_query(scen0, scen1)));
  src.steps.push_back(AttackStep::batch(
      row_pair(Communication::make(0, 0, "y"), Communication::make(1, 0, "y"))));
  CHECK(accepts("S!O", src, 4, 1));

  Translation t;
  t.kind = TranslationKind::ChallengeRenumber;
  t.target = "S!O";

  SUBCASE("one row per challenge") {
    const AttackScript out = translate(src, t)[0];
    const ChallengeBatchQuery& q = out.steps[0].query;
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(q.at(a, b)[j].get().aux.challenge == j + 1);
    CHECK_FALSE(q.at(0, 0)[3].get().aux.challenge.has_value());
    CHECK(out.steps[1].query.at(0, 0)[0].get().aux.challenge == 4);
    CHECK(accepts("S!O", out, 4, 4));
    CHECK(accepts("S!O_CR1", out, 4, 4));
  }

  SUBCASE("two rows per challenge") {
    t.c_prime = 2;
    const AttackScript out = translate(src, t)[0];
    const ChallengeBatchQuery& q = out.steps[0].query;
    CHECK(q.at(0, 0)[0].get().aux.challenge == 1);
    CHECK(q.at(0, 0)[1].get().aux.challenge == 1);
    CHECK(q.at(0, 0)[2].get().aux.challenge == 2);
    CHECK(out.steps[1].query.at(0, 0)[0].get().aux.challenge == 3);
    CHECK(accepts("S!O", out, 4, 3));
  }

  SUBCASE("observations are unchanged by retagging") {
    const auto ls = leaks({LeakageFunction::ActiveSenders});
    const AttackScript out = translate(src, t)[0];
    for (int b = 0; b < 2; ++b) {
      GameConfig c0 = game_config("S!O", 4, 1);
      c0.forced_b = b;
      GameConfig c1 = game_config("S!O", 4, 4);
      c1.forced_b = b;
      Game g0(c0, std::make_shared<LeakyIdeal>(ls));
      Game g1(c1, std::make_shared<LeakyIdeal>(ls));
      CHECK(run_attack(g0, src).observations == run_attack(g1, out).observations);
    }
  }

  SUBCASE("chunks cannot be empty") {
    t.c_prime = 0;
    CHECK_THROWS_AS(translate(src, t), TranslationInapplicable);
  }
}

namespace {

// Two-row challenge unit where the varied pair swaps across scenarios while
// the anchor field stays with the row. The builders mirror the paired
// patterns of the linkability notions.
ChallengeBatchQuery msm_unit() {
  ChallengeBatchQuery q;
  const std::string m[2] = {"a", "b"};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      q.at(a, b).push_back(Communication::make(a, 0, b ? m[1 - a] : m[a]));
      q.at(a, b).push_back(Communication::make(1 - a, 1, b ? m[a] : m[1 - a]));
    }
  return q;
}

ChallengeBatchQuery mrm_unit() {
  ChallengeBatchQuery q;
  const std::string m[2] = {"a", "b"};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      q.at(a, b).push_back(Communication::make(0, a, b ? m[1 - a] : m[a]));
      q.at(a, b).push_back(Communication::make(1, 1 - a, b ? m[a] : m[1 - a]));
    }
  return q;
}

ChallengeBatchQuery msr_unit() {
  ChallengeBatchQuery q;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      q.at(a, b).push_back(Communication::make(a, b ? 1 - a : a, "a"));
      q.at(a, b).push_back(Communication::make(1 - a, b ? a : 1 - a, "a"));
    }
  return q;
}

}  // namespace

TEST_CASE("row duplication rewrites paired patterns to plain challenge rows") {
  SUBCASE("sender-message pairs") {
    const auto ls = leaks({LeakageFunction::SenderMessagePairs});
    std::vector<OracleStep> steps;
    OracleStep st;
    st.query = msm_unit();
    steps.push_back(st);
    const AttackScript src = observable_distinguisher(ls, steps, resolve_notion("(SM)!L"));
    CHECK(accepts("(SM)!L", src, 2, 1));

    Translation t;
    t.kind = TranslationKind::RowDuplicate;
    t.target = "SM!L";
    const std::vector<AttackScript> out = translate(src, t);
    REQUIRE(out.size() == 2);
    for (const AttackScript& fixed : out) {
      CHECK(accepts("SM!L", fixed, 2, 1));
      for (int b = 0; b < 2; ++b) CHECK(play("SM!L", fixed, ls, b, 2, 1) == b);
    }
  }

  SUBCASE("receiver-message pairs") {
    AttackScript src;
    src.notion = "(RM)!L";
    src.steps.push_back(AttackStep::batch(mrm_unit()));
    CHECK(accepts("(RM)!L", src, 2, 1));

    Translation t;
    t.kind = TranslationKind::RowDuplicate;
    t.target = "RM!L";
    for (const AttackScript& fixed : translate(src, t)) CHECK(accepts("RM!L", fixed, 2, 1));
  }

  SUBCASE("sender-receiver pairs") {
    AttackScript src;
    src.notion = "(SR)!L";
    src.steps.push_back(AttackStep::batch(msr_unit()));
    CHECK(accepts("(SR)!L", src, 2, 1));

    Translation t;
    t.kind = TranslationKind::RowDuplicate;
    t.target = "SM!L-P";
    for (const AttackScript& fixed : translate(src, t)) CHECK(accepts("SM!L-P", fixed, 2, 1));
  }

  SUBCASE("plain notions have no paired pattern") {
    AttackScript src;
    src.notion = "S!O";
    src.steps.push_back(AttackStep::batch(
        row_pair(Communication::make(0, 0, "m"), Communication::make(1, 0, "m"))));
    Translation t;
    t.kind = TranslationKind::RowDuplicate;
    t.target = "SM!L";
    CHECK_THROWS_AS(translate(src, t), TranslationInapplicable);
  }

  SUBCASE("challenge rows must pair up") {
    AttackScript src;
    src.notion = "(SM)!L";
    ChallengeBatchQuery q = msm_unit();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) q.at(a, b).resize(1);
    src.steps.push_back(AttackStep::batch(q));
    Translation t;
    t.kind = TranslationKind::RowDuplicate;
    t.target = "SM!L";
    CHECK_THROWS_AS(translate(src, t), TranslationInapplicable);
  }
}

TEST_CASE("translations keep verbatim guesses without a recorded leak set") {
  AttackScript src;
  src.notion = "(SR)!O";
  src.steps.push_back(AttackStep::batch(sr_pattern_row()));
  src.guess.kind = GuessKind::MatchExpect;
  src.guess.expect0 = {"frozen\n"};
  Translation t;
  t.target = "R!O";
  for (const AttackScript& fixed : translate(src, t))
    CHECK(fixed.guess.expect0 == std::vector<std::string>{"frozen\n"});
}
