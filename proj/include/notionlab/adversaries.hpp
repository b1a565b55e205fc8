#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <notionlab/challenger.hpp>
#include <notionlab/model.hpp>
#include <notionlab/notions.hpp>
#include <notionlab/oracle.hpp>
#include <notionlab/protocols.hpp>

namespace notionlab {

struct AttackAborted : std::runtime_error {
  std::size_t step;
  AttackAborted(std::size_t at, const std::string& reason)
      : std::runtime_error("attack aborted at step " + std::to_string(at) + ": " + reason),
        step(at) {}
};

struct NotDistinguishing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TranslationInapplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StepKind { Batch, Corrupt, Protocol, SwitchStage };

struct AttackStep {
  StepKind kind = StepKind::Batch;
  ChallengeBatchQuery query;  // Batch
  int psi = 1;                // Batch: default challenge number
  int user = 0;               // Corrupt
  std::string payload;        // Protocol

  static AttackStep batch(ChallengeBatchQuery q, int psi = 1) {
    AttackStep s;
    s.query = std::move(q);
    s.psi = psi;
    return s;
  }
  static AttackStep corrupt(int user) {
    AttackStep s;
    s.kind = StepKind::Corrupt;
    s.user = user;
    return s;
  }
  static AttackStep protocol(std::string payload) {
    AttackStep s;
    s.kind = StepKind::Protocol;
    s.payload = std::move(payload);
    return s;
  }
  static AttackStep switch_stage() {
    AttackStep s;
    s.kind = StepKind::SwitchStage;
    return s;
  }

  friend bool operator==(const AttackStep&, const AttackStep&) = default;
};

enum class GuessKind { MatchExpect, Random };

// MatchExpect guesses 0 exactly when the full observation stream is one of
// the expected streams; Random flips a seeded coin.
struct GuessRule {
  GuessKind kind = GuessKind::Random;
  std::vector<std::string> expect0;

  friend bool operator==(const GuessRule&, const GuessRule&) = default;
};

struct AttackScript {
  std::string notion;  // name of the notion the script plays against
  std::vector<AttackStep> steps;
  GuessRule guess;
  // Leakage functions the guess expectations were computed against. When
  // nonempty, translations recompute the expectations for the rewritten
  // steps; when empty, the guess rule is carried over verbatim.
  std::set<LeakageFunction> leaks;

  friend bool operator==(const AttackScript&, const AttackScript&) = default;
};

inline json to_json(const AttackStep& s) {
  switch (s.kind) {
    case StepKind::Batch:
      return {{"kind", "batch"}, {"query", to_json(s.query)}, {"psi", s.psi}};
    case StepKind::Corrupt:
      return {{"kind", "corrupt"}, {"user", s.user}};
    case StepKind::Protocol:
      return {{"kind", "protocol"}, {"payload", s.payload}};
    case StepKind::SwitchStage:
      return {{"kind", "switch_stage"}};
  }
  throw std::logic_error("unknown step kind");
}

inline AttackStep step_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "batch")
    return AttackStep::batch(query_from_json(j.at("query")), j.value("psi", 1));
  if (kind == "corrupt") return AttackStep::corrupt(j.at("user").get<int>());
  if (kind == "protocol") return AttackStep::protocol(j.at("payload").get<std::string>());
  if (kind == "switch_stage") return AttackStep::switch_stage();
  throw std::runtime_error("unknown step kind: " + kind);
}

inline json to_json(const AttackScript& s) {
  json steps = json::array();
  for (const AttackStep& st : s.steps) steps.push_back(to_json(st));
  json leaks = json::array();
  for (LeakageFunction l : s.leaks) leaks.push_back(leakage_name(l));
  return {{"notion", s.notion},
          {"steps", std::move(steps)},
          {"guess",
           {{"kind", s.guess.kind == GuessKind::MatchExpect ? "match_expect" : "random"},
            {"expect0", s.guess.expect0}}},
          {"leaks", std::move(leaks)}};
}

inline AttackScript script_from_json(const json& j) {
  AttackScript s;
  s.notion = j.at("notion").get<std::string>();
  for (const json& st : j.at("steps")) s.steps.push_back(step_from_json(st));
  const json& g = j.at("guess");
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "match_expect")
    s.guess.kind = GuessKind::MatchExpect;
  else if (kind == "random")
    s.guess.kind = GuessKind::Random;
  else
    throw std::runtime_error("unknown guess kind: " + kind);
  s.guess.expect0 = g.value("expect0", std::vector<std::string>{});
  for (const json& l : j.value("leaks", json::array()))
    s.leaks.insert(leakage_from_name(l.get<std::string>()));
  return s;
}

struct AttackOutcome {
  int guess = 0;
  std::string observations;
};

// Plays the script against a live game: one query per step, observation
// stream accumulated in order, then the guess rule applied. Any rejected
// query is a hard failure.
inline AttackOutcome run_attack(Game& game, const AttackScript& script,
                                std::uint64_t adversary_seed = 0) {
  AttackOutcome out;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const AttackStep& st = script.steps[i];
    QueryResult r;
    switch (st.kind) {
      case StepKind::Batch:
        r = game.batch_query(st.query, st.psi);
        break;
      case StepKind::Corrupt:
        r = game.corrupt_query(st.user);
        break;
      case StepKind::Protocol:
        r = game.protocol_query(st.payload);
        break;
      case StepKind::SwitchStage:
        r = game.switch_stage();
        break;
    }
    if (!r.accepted()) throw AttackAborted(i, r.reason);
    if (r.kind == QueryResult::Kind::Observation) {
      out.observations += r.observation.dump();
      out.observations += '\n';
    } else if (r.kind == QueryResult::Kind::UserState) {
      out.observations += r.state;
      out.observations += '\n';
    }
  }
  switch (script.guess.kind) {
    case GuessKind::MatchExpect: {
      const auto& e = script.guess.expect0;
      out.guess = std::find(e.begin(), e.end(), out.observations) != e.end() ? 0 : 1;
      break;
    }
    case GuessKind::Random:
      out.guess = Rng(derive_seed(adversary_seed, 0x67e55)).bit();
      break;
  }
  return out;
}

namespace attack_detail {

inline bool is_challenge_row(const ChallengeBatchQuery& q, std::size_t j) {
  const Communication& c = q.at(0, 0)[j];
  return !(q.at(0, 1)[j] == c && q.at(1, 0)[j] == c && q.at(1, 1)[j] == c);
}

// Observation stream the leaky ideal protocol produces when the game runs
// with challenge bit b and every challenge at instance a.
inline std::string expected_stream(const std::set<LeakageFunction>& leaks,
                                   const std::vector<AttackStep>& steps, int a, int b) {
  LeakyIdeal proto(leaks);
  proto.reset(0);
  std::string stream;
  for (const AttackStep& st : steps) {
    switch (st.kind) {
      case StepKind::Batch: {
        Batch fed;
        for (std::size_t j = 0; j < st.query.rows(); ++j)
          fed.push_back(st.query.at(is_challenge_row(st.query, j) ? a : 0, b)[j]);
        stream += proto.on_batch(fed).dump();
        stream += '\n';
        break;
      }
      case StepKind::Corrupt:
        stream += proto.user_state(st.user);
        stream += '\n';
        break;
      case StepKind::Protocol: {
        std::optional<json> reply = proto.on_protocol_query(st.payload);
        if (!reply) throw std::runtime_error("protocol step rejected by the leaky ideal");
        stream += reply->dump();
        stream += '\n';
        break;
      }
      case StepKind::SwitchStage:
        break;
    }
  }
  return stream;
}

inline void push_unique(std::vector<std::string>& v, std::string s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

// Rewrites the guess expectations for a script whose steps changed. Scripts
// without a recorded leak set keep their rule untouched.
inline void refresh_guess(AttackScript& s) {
  if (s.guess.kind != GuessKind::MatchExpect || s.leaks.empty()) return;
  s.guess.expect0.clear();
  for (int a = 0; a < 2; ++a) push_unique(s.guess.expect0, expected_stream(s.leaks, s.steps, a, 0));
}

}  // namespace attack_detail

// Turns a broken-safety witness into a deterministic distinguisher against
// the leaky ideal protocol with the given leak set. Throws when the
// observation streams of the two scenarios overlap.
inline AttackScript observable_distinguisher(const std::set<LeakageFunction>& leaks,
                                             const std::vector<OracleStep>& steps,
                                             const NotionSpec& notion) {
  AttackScript script;
  script.notion = notion.name;
  for (const OracleStep& st : steps)
    script.steps.push_back(st.stage_switch ? AttackStep::switch_stage()
                                           : AttackStep::batch(st.query, st.psi));
  std::vector<std::string> e0, e1;
  for (int a = 0; a < 2; ++a) {
    attack_detail::push_unique(e0, attack_detail::expected_stream(leaks, script.steps, a, 0));
    attack_detail::push_unique(e1, attack_detail::expected_stream(leaks, script.steps, a, 1));
  }
  for (const std::string& s : e0)
    if (std::find(e1.begin(), e1.end(), s) != e1.end())
      throw NotDistinguishing("observation streams overlap across scenarios");
  script.guess.kind = GuessKind::MatchExpect;
  script.guess.expect0 = std::move(e0);
  script.leaks = leaks;
  return script;
}

// One batch with a single row identical in all four cells: accepted by every
// notion, followed by a fair coin.
inline AttackScript random_guesser(const std::string& notion_name) {
  AttackScript s;
  s.notion = notion_name;
  s.steps.push_back(AttackStep::batch(
      simple_query(Batch{Communication::make(0, 0, "a")}, Batch{Communication::make(0, 0, "a")})));
  s.guess.kind = GuessKind::Random;
  return s;
}

enum class TranslationKind { InstanceFix, BatchSplit, SenderReplace, ChallengeRenumber, RowDuplicate };

struct Translation {
  TranslationKind kind = TranslationKind::InstanceFix;
  std::string target;        // notion the translated scripts play against
  bool cross = false;        // InstanceFix: scenario 1 reads the opposite instance
  int c_prime = 1;           // ChallengeRenumber: challenge rows per new challenge
  int senders_universe = 2;  // SenderReplace: size of the sender universe
};

namespace attack_detail {

inline void set_both_instances(ChallengeBatchQuery& q, int b, const Communication& c) {
  q.at(0, b).push_back(c);
  q.at(1, b).push_back(c);
}

// Pins every challenge to a fixed instance. One script per assignment of an
// instance bit to each challenge number that owns a challenge row.
inline std::vector<AttackScript> instance_fix(const AttackScript& script, const Translation& t) {
  std::vector<int> psis;
  for (const AttackStep& st : script.steps) {
    if (st.kind != StepKind::Batch) continue;
    bool has_cr = false;
    for (std::size_t j = 0; j < st.query.rows(); ++j) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Communication& c = st.query.at(a, b)[j];
          if (!c.is_empty() && c.get().aux.challenge)
            throw TranslationInapplicable(
                "rows with explicit challenge tags are outside the per-step grain");
        }
      if (is_challenge_row(st.query, j)) has_cr = true;
    }
    if (has_cr && std::find(psis.begin(), psis.end(), st.psi) == psis.end())
      psis.push_back(st.psi);
  }
  if (psis.size() > 8)
    throw TranslationInapplicable("too many distinct challenges to enumerate instance bits");
  const bool target_staged = resolve_notion(t.target).has_stages();
  std::vector<AttackScript> out;
  const std::size_t combos = std::size_t{1} << psis.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    AttackScript fixed;
    fixed.notion = t.target;
    fixed.leaks = script.leaks;
    fixed.guess = script.guess;
    for (const AttackStep& st : script.steps) {
      if (st.kind == StepKind::SwitchStage && !target_staged) continue;
      if (st.kind != StepKind::Batch) {
        fixed.steps.push_back(st);
        continue;
      }
      const auto slot = std::find(psis.begin(), psis.end(), st.psi) - psis.begin();
      const int a0 = (mask >> slot) & 1;
      const int a1 = t.cross ? 1 - a0 : a0;
      ChallengeBatchQuery q;
      for (std::size_t j = 0; j < st.query.rows(); ++j) {
        const bool cr = is_challenge_row(st.query, j);
        set_both_instances(q, 0, st.query.at(cr ? a0 : 0, 0)[j]);
        set_both_instances(q, 1, st.query.at(cr ? a1 : 0, 1)[j]);
      }
      fixed.steps.push_back(AttackStep::batch(std::move(q), st.psi));
    }
    refresh_guess(fixed);
    out.push_back(std::move(fixed));
  }
  return out;
}

// Splits every challenge row into two single-row batches, one per scenario,
// with the other scenario empty. Each split batch becomes its own challenge,
// so the result stays valid under a one-row-per-challenge bound.
// Non-challenge rows become their own identical single-row batch.
inline std::vector<AttackScript> batch_split(const AttackScript& script, const Translation& t) {
  AttackScript split;
  split.notion = t.target;
  split.leaks = script.leaks;
  split.guess = script.guess;
  int next_psi = 0;
  for (const AttackStep& st : script.steps) {
    if (st.kind != StepKind::Batch) {
      split.steps.push_back(st);
      continue;
    }
    for (std::size_t j = 0; j < st.query.rows(); ++j) {
      if (is_challenge_row(st.query, j)) {
        ChallengeBatchQuery left, right;
        set_both_instances(left, 0, st.query.at(0, 0)[j]);
        set_both_instances(left, 1, Communication::empty());
        set_both_instances(right, 0, Communication::empty());
        set_both_instances(right, 1, st.query.at(0, 1)[j]);
        split.steps.push_back(AttackStep::batch(std::move(left), ++next_psi));
        split.steps.push_back(AttackStep::batch(std::move(right), ++next_psi));
      } else {
        ChallengeBatchQuery kept;
        set_both_instances(kept, 0, st.query.at(0, 0)[j]);
        set_both_instances(kept, 1, st.query.at(0, 0)[j]);
        split.steps.push_back(AttackStep::batch(std::move(kept), st.psi));
      }
    }
  }
  refresh_guess(split);
  return {std::move(split)};
}

// Replaces the two senders of the first challenge row with a fresh sender
// everywhere else in the script, so that the pinned sender of scenario 0
// never communicates in scenario 1.
inline std::vector<AttackScript> sender_replace(const AttackScript& script, const Translation& t) {
  std::size_t cr_step = script.steps.size();
  std::size_t cr_row = 0;
  for (std::size_t i = 0; i < script.steps.size() && cr_step == script.steps.size(); ++i) {
    if (script.steps[i].kind != StepKind::Batch) continue;
    for (std::size_t j = 0; j < script.steps[i].query.rows(); ++j)
      if (is_challenge_row(script.steps[i].query, j)) {
        cr_step = i;
        cr_row = j;
        break;
      }
  }
  if (cr_step == script.steps.size())
    throw TranslationInapplicable("script has no challenge row to pin");
  const ChallengeBatchQuery& crq = script.steps[cr_step].query;
  if (crq.at(0, 0)[cr_row].is_empty() || crq.at(0, 1)[cr_row].is_empty())
    throw TranslationInapplicable("first challenge row has no sender to pin");
  const int u0 = crq.at(0, 0)[cr_row].get().sender;
  const int u1 = crq.at(0, 1)[cr_row].get().sender;
  std::set<int> used;
  for (const AttackStep& st : script.steps) {
    if (st.kind != StepKind::Batch) continue;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (const Communication& c : st.query.at(a, b))
          if (!c.is_empty()) used.insert(c.get().sender);
  }
  int fresh = 0;
  while (used.count(fresh)) ++fresh;
  if (fresh >= t.senders_universe)
    throw TranslationInapplicable("no unused sender left in the universe");
  AttackScript pinned;
  pinned.notion = t.target;
  pinned.leaks = script.leaks;
  pinned.guess = script.guess;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    AttackStep st = script.steps[i];
    if (st.kind == StepKind::Batch) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (std::size_t j = 0; j < st.query.rows(); ++j) {
            if (i == cr_step && j == cr_row) continue;
            Communication& c = st.query.at(a, b)[j];
            if (!c.is_empty() && (c.get().sender == u0 || c.get().sender == u1))
              c.get().sender = fresh;
          }
    }
    pinned.steps.push_back(std::move(st));
  }
  refresh_guess(pinned);
  return {std::move(pinned)};
}

// Retags challenge rows batch by batch: each run of c' challenge rows gets
// the next unused challenge number, written into the row cells.
inline std::vector<AttackScript> challenge_renumber(const AttackScript& script,
                                                    const Translation& t) {
  if (t.c_prime < 1) throw TranslationInapplicable("challenge size must be at least 1");
  AttackScript renumbered;
  renumbered.notion = t.target;
  renumbered.leaks = script.leaks;
  renumbered.guess = script.guess;
  int next_tag = 0;
  for (const AttackStep& st : script.steps) {
    if (st.kind != StepKind::Batch) {
      renumbered.steps.push_back(st);
      continue;
    }
    AttackStep out = st;
    int in_chunk = t.c_prime;
    for (std::size_t j = 0; j < out.query.rows(); ++j) {
      if (!is_challenge_row(out.query, j)) continue;
      if (in_chunk == t.c_prime) {
        ++next_tag;
        in_chunk = 0;
      }
      ++in_chunk;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Communication& c = out.query.at(a, b)[j];
          if (!c.is_empty()) c.get().aux.challenge = next_tag;
        }
    }
    renumbered.steps.push_back(std::move(out));
  }
  refresh_guess(renumbered);
  return {std::move(renumbered)};
}

// Rewrites each two-row challenge unit of a paired-pattern attack into two
// plain challenge rows at a fixed instance: the varied cell is coalesced
// across the unit and the scenario-1 rows are exchanged, which realigns the
// rows with the per-row equality the target notion demands. One script per
// instance bit.
inline std::vector<AttackScript> row_duplicate(const AttackScript& script, const Translation& t) {
  const NotionSpec source = resolve_notion(script.notion);
  enum class Coalesce { Receiver, Sender, Message } field;
  if (source.atoms.count(Atom::MSM))
    field = Coalesce::Receiver;
  else if (source.atoms.count(Atom::MRM))
    field = Coalesce::Sender;
  else if (source.atoms.count(Atom::MSR))
    field = Coalesce::Message;
  else
    throw TranslationInapplicable("source notion has no paired challenge pattern");
  std::vector<AttackScript> out;
  for (int ap = 0; ap < 2; ++ap) {
    AttackScript fixed;
    fixed.notion = t.target;
    fixed.leaks = script.leaks;
    fixed.guess = script.guess;
    for (const AttackStep& st : script.steps) {
      if (st.kind != StepKind::Batch) {
        fixed.steps.push_back(st);
        continue;
      }
      ChallengeBatchQuery q;
      for (std::size_t j = 0; j < st.query.rows();) {
        if (!is_challenge_row(st.query, j)) {
          set_both_instances(q, 0, st.query.at(ap, 0)[j]);
          set_both_instances(q, 1, st.query.at(ap, 1)[j]);
          ++j;
          continue;
        }
        if (j + 1 >= st.query.rows() || !is_challenge_row(st.query, j + 1))
          throw TranslationInapplicable("challenge rows must form adjacent pairs");
        Communication a = st.query.at(ap, 0)[j];
        Communication b = st.query.at(ap, 0)[j + 1];
        Communication c = st.query.at(ap, 1)[j];
        Communication d = st.query.at(ap, 1)[j + 1];
        if (a.is_empty() || b.is_empty() || c.is_empty() || d.is_empty())
          throw TranslationInapplicable("challenge pair contains an empty communication");
        for (Communication* x : {&b, &c, &d}) switch (field) {
            case Coalesce::Receiver:
              x->get().receiver = a.get().receiver;
              break;
            case Coalesce::Sender:
              x->get().sender = a.get().sender;
              break;
            case Coalesce::Message:
              x->get().message = a.get().message;
              break;
          }
        set_both_instances(q, 0, a);
        set_both_instances(q, 0, b);
        set_both_instances(q, 1, d);
        set_both_instances(q, 1, c);
        j += 2;
      }
      fixed.steps.push_back(AttackStep::batch(std::move(q), st.psi));
    }
    refresh_guess(fixed);
    out.push_back(std::move(fixed));
  }
  return out;
}

}  // namespace attack_detail

inline std::vector<AttackScript> translate(const AttackScript& script, const Translation& t) {
  switch (t.kind) {
    case TranslationKind::InstanceFix:
      return attack_detail::instance_fix(script, t);
    case TranslationKind::BatchSplit:
      return attack_detail::batch_split(script, t);
    case TranslationKind::SenderReplace:
      return attack_detail::sender_replace(script, t);
    case TranslationKind::ChallengeRenumber:
      return attack_detail::challenge_renumber(script, t);
    case TranslationKind::RowDuplicate:
      return attack_detail::row_duplicate(script, t);
  }
  throw std::logic_error("unknown translation kind");
}

}  // namespace notionlab
