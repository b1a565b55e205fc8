#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <notionlab/oracle.hpp>

using namespace notionlab;

namespace {

std::set<LeakageFunction> leaks(std::initializer_list<LeakageFunction> fs) {
  return std::set<LeakageFunction>(fs);
}

std::set<LeakageFunction> all_leaks() {
  std::set<LeakageFunction> out;
  for (const auto& [k, n] : leakage_names()) out.insert(k);
  return out;
}

OracleBounds len1_bounds() {
  OracleBounds b;
  b.max_message_len = 1;
  return b;
}

OracleBounds tiny_bounds() {
  OracleBounds b;
  b.max_message_len = 1;
  b.max_rows = 2;
  return b;
}

GameConfig config_for(const NotionSpec& notion, const OracleBounds& bounds) {
  GameConfig cfg;
  cfg.notion = notion;
  cfg.c = bounds.max_rows * bounds.max_batches;
  cfg.n = bounds.challenges;
  cfg.senders = bounds.senders;
  cfg.receivers = bounds.receivers;
  cfg.max_batch_rows = static_cast<std::size_t>(bounds.max_rows);
  return cfg;
}

bool witness_replays(const NotionSpec& notion, const OracleBounds& bounds,
                     const std::vector<OracleStep>& witness) {
  Game game(config_for(notion, bounds), nullptr);
  for (const OracleStep& s : witness) {
    const bool ok = s.stage_switch ? game.switch_stage().accepted()
                                   : game.batch_query(s.query, s.psi).accepted();
    if (!ok) return false;
  }
  return true;
}

// Observation streams of the witness, one per (instance, scenario) choice.
std::array<std::array<std::string, 2>, 2> witness_streams(const std::set<LeakageFunction>& ls,
                                                          const std::vector<OracleStep>& witness) {
  std::array<std::array<std::string, 2>, 2> sig;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<Batch> fed;
      for (const OracleStep& s : witness)
        if (!s.stage_switch) fed.push_back(s.query.at(a, b));
      sig[a][b] = oracle_detail::leak_signature(ls, fed);
    }
  return sig;
}

bool streams_disjoint(const std::set<LeakageFunction>& ls,
                      const std::vector<OracleStep>& witness) {
  const auto sig = witness_streams(ls, witness);
  return sig[0][0] != sig[0][1] && sig[0][0] != sig[1][1] && sig[1][0] != sig[0][1] &&
         sig[1][0] != sig[1][1];
}

SafetyReport run(const char* notion, std::set<LeakageFunction> ls,
                 OracleBounds bounds = OracleBounds{}) {
  return observation_invariance(ls, resolve_notion(notion), bounds);
}

}  // namespace

TEST_CASE("message universe enumerates words by length") {
  CHECK(message_universe(OracleBounds{}) ==
        std::vector<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"});
  OracleBounds b;
  b.alphabet = 3;
  b.max_message_len = 1;
  CHECK(message_universe(b) == std::vector<std::string>{"", "a", "b", "c"});
}

TEST_CASE("sender unobservability tolerates receiver and message leaks") {
  const SafetyReport broken = run("S!O", leaks({LeakageFunction::ActiveSenders}));
  CHECK_FALSE(broken.safe);
  CHECK(broken.witness.size() == 1);
  CHECK(broken.checked > 0);
  CHECK(witness_replays(resolve_notion("S!O"), OracleBounds{}, broken.witness));
  CHECK(streams_disjoint(leaks({LeakageFunction::ActiveSenders}), broken.witness));

  const SafetyReport safe = run(
      "S!O", leaks({LeakageFunction::ActiveReceivers, LeakageFunction::ReceiverFreqs,
                    LeakageFunction::ReceiverCount, LeakageFunction::ReceiverHistogram,
                    LeakageFunction::ReceiverPartition, LeakageFunction::MessageLengths,
                    LeakageFunction::MessageContents, LeakageFunction::ReceiverMessagePairs,
                    LeakageFunction::CommCount, LeakageFunction::FirstRowReceiver}));
  CHECK(safe.safe);
  CHECK(safe.witness.empty());
}

TEST_CASE("graded sender notions separate the linking leaks") {
  CHECK(run("S!O-P", leaks({LeakageFunction::SenderPartition})).safe);
  CHECK_FALSE(run("S!O-P", leaks({LeakageFunction::ActiveSenders})).safe);

  CHECK(run("S!O-H", leaks({LeakageFunction::SenderHistogram})).safe);
  CHECK_FALSE(run("S!O-H", leaks({LeakageFunction::SenderFreqs})).safe);

  CHECK(run("S!O-|U|", leaks({LeakageFunction::SenderCount})).safe);
  CHECK_FALSE(run("S!O-|U|", leaks({LeakageFunction::SenderFreqs})).safe);

  CHECK(run("SF!L", leaks({LeakageFunction::ActiveSenders})).safe);
  CHECK_FALSE(run("SF!L", leaks({LeakageFunction::SenderFreqs})).safe);

  CHECK(run("SM!L", leaks({LeakageFunction::SenderFreqs})).safe);
  CHECK_FALSE(run("SM!L", leaks({LeakageFunction::SenderPartition})).safe);

  CHECK(run("S!O{R!O-|U'|}", leaks({LeakageFunction::ReceiverCount})).safe);
  CHECK_FALSE(run("S!O{R!O-|U'|}", leaks({LeakageFunction::ActiveReceivers})).safe);
}

TEST_CASE("communication volume is the whole story for the weakest notions") {
  CHECK_FALSE(run("C!O", leaks({LeakageFunction::CommCount})).safe);
  CHECK(run("C!O", {}).safe);

  const SafetyReport ls = run("LS!O", leaks({LeakageFunction::CommCount}));
  CHECK_FALSE(ls.safe);
  CHECK(ls.witness.size() == 1);
  CHECK(witness_replays(resolve_notion("LS!O"), OracleBounds{}, ls.witness));
  CHECK(run("LS!O", {}).safe);
}

TEST_CASE("sender-receiver swaps hide from sender leaks but not pair leaks") {
  CHECK(run("(SR)!O", leaks({LeakageFunction::ActiveSenders}), len1_bounds()).safe);

  const SafetyReport broken =
      run("(SR)!O", leaks({LeakageFunction::SenderReceiverPairs}), len1_bounds());
  CHECK_FALSE(broken.safe);
  CHECK(witness_replays(resolve_notion("(SR)!O"), len1_bounds(), broken.witness));
  CHECK(streams_disjoint(leaks({LeakageFunction::SenderReceiverPairs}), broken.witness));
}

TEST_CASE("instance and scenario information distinguish only in combination") {
  CHECK(run("(SM)!O", leaks({LeakageFunction::ActiveSenders}), len1_bounds()).safe);
  CHECK(run("(SM)!O", leaks({LeakageFunction::MessageContents}), len1_bounds()).safe);

  const auto both = leaks({LeakageFunction::ActiveSenders, LeakageFunction::MessageContents});
  const SafetyReport broken = run("(SM)!O", both, len1_bounds());
  CHECK_FALSE(broken.safe);
  CHECK(broken.witness.size() == 1);
  CHECK_FALSE(broken.witness[0].stage_switch);
  CHECK(witness_replays(resolve_notion("(SM)!O"), len1_bounds(), broken.witness));
  CHECK(streams_disjoint(both, broken.witness));
}

TEST_CASE("two-stage notions expose the second-stage swap") {
  const SafetyReport broken = run("(2S)!L", leaks({LeakageFunction::ActiveSenders}), len1_bounds());
  CHECK_FALSE(broken.safe);
  const bool has_switch =
      std::any_of(broken.witness.begin(), broken.witness.end(),
                  [](const OracleStep& s) { return s.stage_switch; });
  CHECK(has_switch);
  CHECK(witness_replays(resolve_notion("(2S)!L"), len1_bounds(), broken.witness));

  CHECK(run("(2S)!L", leaks({LeakageFunction::ActiveReceivers}), len1_bounds()).safe);
  CHECK(run("(2S)!L", leaks({LeakageFunction::FirstRowSenderReceiver}), len1_bounds()).safe);
}

TEST_CASE("stage one can reveal the instance that decodes stage two") {
  const SafetyReport broken =
      run("(2R)!L", leaks({LeakageFunction::ReceiverCount}), len1_bounds());
  CHECK_FALSE(broken.safe);
  const bool has_switch =
      std::any_of(broken.witness.begin(), broken.witness.end(),
                  [](const OracleStep& s) { return s.stage_switch; });
  CHECK(has_switch);
  CHECK(witness_replays(resolve_notion("(2R)!L"), len1_bounds(), broken.witness));
  CHECK(streams_disjoint(leaks({LeakageFunction::ReceiverCount}), broken.witness));

  CHECK(run("(2R)!L", leaks({LeakageFunction::SenderCount}), len1_bounds()).safe);
}

TEST_CASE("restricted and session variants fall outside the exhaustive check") {
  CHECK_THROWS_AS(run("S!O'", leaks({LeakageFunction::ActiveSenders})), SpaceTooLarge);

  CHECK(run("sess-S!O", leaks({LeakageFunction::ReceiverFreqs})).safe);
  CHECK_THROWS_AS(run("sess-S!O", leaks({LeakageFunction::ActiveSenders})), SpaceTooLarge);

  OracleBounds two;
  two.challenges = 2;
  two.max_message_len = 1;
  CHECK_THROWS_AS(run("(SR)!O", leaks({LeakageFunction::ActiveSenders}), two), SpaceTooLarge);
}

TEST_CASE("safety is monotone in the leak set") {
  CHECK_FALSE(
      run("S!O-P", leaks({LeakageFunction::ActiveSenders, LeakageFunction::SenderPartition}))
          .safe);
  CHECK(run("S!O-P", {}).safe);
}

TEST_CASE("every registry notion is safe without leaks and broken under full leakage") {
  CHECK(registry().size() == 57);
  for (const NotionSpec& n : registry()) {
    CAPTURE(n.name);
    if (n.atoms.count(Atom::NoSend) || n.atoms.count(Atom::NoSendp)) {
      CHECK_THROWS_AS(observation_invariance({}, n, tiny_bounds()), SpaceTooLarge);
      continue;
    }
    CHECK(observation_invariance({}, n, tiny_bounds()).safe);
    CHECK_FALSE(observation_invariance(all_leaks(), n, tiny_bounds()).safe);
  }
}

TEST_CASE("reports are deterministic") {
  const auto both = leaks({LeakageFunction::ActiveSenders, LeakageFunction::MessageContents});
  const SafetyReport r1 = run("(SM)!O", both, len1_bounds());
  const SafetyReport r2 = run("(SM)!O", both, len1_bounds());
  REQUIRE(r1.witness.size() == r2.witness.size());
  CHECK(r1.checked == r2.checked);
  for (std::size_t i = 0; i < r1.witness.size(); ++i) {
    CHECK(r1.witness[i].stage_switch == r2.witness[i].stage_switch);
    CHECK(r1.witness[i].psi == r2.witness[i].psi);
    CHECK(r1.witness[i].query == r2.witness[i].query);
  }
}

TEST_CASE("compliance projections agree with the challenger") {
  const OracleBounds bounds;
  const std::vector<std::string> msgs = message_universe(bounds);
  Rng rng(derive_seed(17, 0x0aac1e));
  const char* names[] = {"S!O",      "S!O-H", "S!O-P",        "SF!L",      "SM!L",
                         "M!O",      "M!O-|M|", "S!O[M!O]",   "M!O[M!L]",  "S!O{R!O-|U'|}",
                         "S!O{RF!L}", "R^HT_SA"};
  for (const char* name : names) {
    const NotionSpec notion = resolve_notion(name);
    const Game probe(config_for(notion, bounds), nullptr);
    int agreements = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t rows = 1 + rng.below(3);
      Batch b0, b1;
      for (std::size_t j = 0; j < rows; ++j) {
        b0.push_back(Communication::make(static_cast<int>(rng.below(2)),
                                         static_cast<int>(rng.below(2)),
                                         msgs[rng.below(msgs.size())]));
        b1.push_back(Communication::make(static_cast<int>(rng.below(2)),
                                         static_cast<int>(rng.below(2)),
                                         msgs[rng.below(msgs.size())]));
      }
      const bool same_key = oracle_detail::compliance_key(notion, b0) ==
                            oracle_detail::compliance_key(notion, b1);
      const bool admitted = probe.admit(simple_query(b0, b1), 1).verdict.ok;
      CAPTURE(name);
      CAPTURE(trial);
      CHECK(same_key == admitted);
      agreements += same_key == admitted;
    }
    CHECK(agreements == 200);
  }
}
