#pragma once

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <notionlab/model.hpp>
#include <notionlab/notions.hpp>
#include <notionlab/props.hpp>
#include <notionlab/protocols.hpp>

namespace notionlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GameConfig {
  NotionSpec notion;
  int c = 1;  // total challenge-row budget
  int n = 1;  // number of distinguishable challenges
  std::uint64_t seed = 0;
  int senders = 2;
  int receivers = 2;
  std::size_t max_batch_rows = 8;
  std::optional<int> forced_b;  // harness hook; unset means the seeded draw
};

struct QueryResult {
  enum class Kind { Observation, Abort, UserState, Ok };

  Kind kind = Kind::Ok;
  json observation;
  std::string reason;
  std::string state;

  bool accepted() const { return kind != Kind::Abort; }

  static QueryResult observe(json o) {
    QueryResult r;
    r.kind = Kind::Observation;
    r.observation = std::move(o);
    return r;
  }
  static QueryResult abort(std::string why) {
    QueryResult r;
    r.kind = Kind::Abort;
    r.reason = std::move(why);
    return r;
  }
  static QueryResult user_state(std::string bytes) {
    QueryResult r;
    r.kind = Kind::UserState;
    r.state = std::move(bytes);
    return r;
  }
  static QueryResult ok() { return {}; }
};

inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string describe(const Verdict& v) {
  if (v.ok) return "accept";
  std::string out = "reject";
  if (v.atom) out += std::string("[") + atom_name(*v.atom) + "]";
  out += " " + v.reason;
  if (v.row) out += " (row " + std::to_string(*v.row) + ")";
  return out;
}

// The distinguishing game: validates adversary queries against the notion and
// drives the protocol model on the selected instance/scenario rows. With a null
// protocol the game still validates, which makes it reusable as a pure
// compliance checker.
class Game {
 public:
  Game(GameConfig cfg, std::shared_ptr<ProtocolModel> protocol)
      : cfg_(std::move(cfg)),
        proto_(std::move(protocol)),
        rng_(derive_seed(cfg_.seed, 0xc4a11e)) {
    if (cfg_.c < 0) throw ConfigError("challenge-row budget must be nonnegative");
    if (cfg_.n < 1) throw ConfigError("challenge count must be at least 1");
    if (cfg_.senders < 1 || cfg_.receivers < 1) throw ConfigError("universes must be nonempty");
    b_ = cfg_.forced_b ? (*cfg_.forced_b ? 1 : 0) : rng_.bit();
    if (proto_) proto_->reset(derive_seed(cfg_.seed, 0x9107e));
  }

  const GameConfig& config() const { return cfg_; }
  int b() const { return b_; }
  int stage() const { return stage_; }
  bool aborted() const { return aborted_.has_value(); }
  const std::vector<std::string>& transcript() const { return transcript_; }
  const std::map<int, ChallengeProps>& challenges() const { return challenges_; }
  const std::set<int>& corrupted() const { return corrupted_; }
  int challenge_rows_used() const { return c_t_; }

  // Everything an accepted batch would change, computed without touching game
  // state. Newly created challenges carry a placeholder instance bit; validity
  // never depends on it.
  struct Admission {
    Verdict verdict;
    std::vector<int> row_psi;
    std::vector<int> new_psis;
    std::map<int, ChallengeProps> challenges;
    int c_t = 0;
  };

  Admission admit(const ChallengeBatchQuery& q, int psi_default = 1) const {
    Admission adm;
    adm.challenges = challenges_;
    adm.c_t = c_t_;
    if (aborted_) {
      adm.verdict = Verdict::fail("game already aborted");
      return adm;
    }
    if (!q.well_formed()) {
      adm.verdict = Verdict::fail("malformed query: instance/scenario batches must share one length >= 1");
      return adm;
    }
    if (cfg_.max_batch_rows && q.rows() > cfg_.max_batch_rows) {
      adm.verdict = Verdict::fail("batch exceeds the configured row bound");
      return adm;
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (std::size_t j = 0; j < q.rows(); ++j) {
          const Communication& c = q.at(a, b)[j];
          if (c.is_empty()) continue;
          const Real& r = c.get();
          if (r.sender < 0 || r.sender >= cfg_.senders || r.receiver < 0 ||
              r.receiver >= cfg_.receivers) {
            adm.verdict = Verdict::fail("user outside the configured universes", j);
            return adm;
          }
        }

    adm.row_psi.assign(q.rows(), psi_default);
    for (std::size_t j = 0; j < q.rows(); ++j) {
      std::optional<int> tag;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Communication& c = q.at(a, b)[j];
          if (c.is_empty() || !c.get().aux.challenge) continue;
          if (tag && *tag != *c.get().aux.challenge) {
            adm.verdict = Verdict::fail("conflicting challenge tags in one row", j);
            return adm;
          }
          tag = *c.get().aux.challenge;
        }
      if (tag) adm.row_psi[j] = *tag;
    }

    const std::vector<std::size_t> crs = challenge_rows(q);
    for (std::size_t j : crs) {
      const int psi = adm.row_psi[j];
      if (psi < 1 || psi > cfg_.n) {
        adm.verdict = Verdict::fail("challenge number out of range", j);
        return adm;
      }
      if (!adm.challenges.count(psi)) {
        adm.challenges[psi] = ChallengeProps{};
        adm.new_psis.push_back(psi);
      }
    }

    adm.c_t += static_cast<int>(crs.size());
    if (adm.c_t > cfg_.c) {
      adm.verdict = Verdict::fail("challenge-row budget exceeded");
      return adm;
    }

    const int stage_idx = stage_ - 1;
    for (std::size_t j : crs) {
      ChallengeProps& ch = adm.challenges[adm.row_psi[j]];
      ch.cr_count += 1;
      if (ch.first_cr[stage_idx]) continue;
      bool all_real = true;
      for (int a = 0; a < 2 && all_real; ++a)
        for (int b = 0; b < 2 && all_real; ++b) all_real = !q.at(a, b)[j].is_empty();
      if (!all_real) continue;
      StoredChallengeRow stored;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) stored.by_ab[a][b] = q.at(a, b)[j].get();
      ch.first_cr[stage_idx] = stored;
    }

    adm.verdict = validate(q, adm.row_psi, crs, adm.challenges);
    return adm;
  }

  QueryResult batch_query(const ChallengeBatchQuery& q, int psi_default = 1) {
    json payload = to_json(q);
    payload["psi"] = psi_default;
    Admission adm = admit(q, psi_default);
    if (!adm.verdict) {
      QueryResult r = QueryResult::abort(describe(adm.verdict));
      if (!aborted_) aborted_ = r.reason;
      return log("batch", payload, r);
    }
    subsequent_ = true;
    challenges_ = std::move(adm.challenges);
    for (int psi : adm.new_psis)
      challenges_[psi].a = cfg_.notion.pairing() == PairingMode::AllPairs ? rng_.bit() : 0;
    c_t_ = adm.c_t;
    history_.push(q);

    const std::vector<std::size_t> crs = challenge_rows(q);
    const std::set<std::size_t> cr_set(crs.begin(), crs.end());
    Batch fed;
    for (std::size_t j = 0; j < q.rows(); ++j) {
      const int a = cr_set.count(j) ? challenges_.at(adm.row_psi[j]).a : 0;
      Communication c = q.at(a, b_)[j];
      if (!c.is_empty()) {
        c.get().aux.challenge.reset();
        if (c.get().aux.session) c.get().aux.session = session_id(*c.get().aux.session);
      }
      fed.push_back(std::move(c));
    }
    json obs;
    if (proto_) obs = proto_->on_batch(fed);
    return log("batch", payload, QueryResult::observe(std::move(obs)));
  }

  QueryResult corrupt_query(int u) {
    const json payload = u;
    if (aborted_) return log("corrupt", payload, QueryResult::abort("game already aborted"));
    if (u < 0 || u >= std::max(cfg_.senders, cfg_.receivers))
      return abort_and_log("corrupt", payload, "user outside the configured universes");
    const Verdict v =
        check_corrupt_query(policy_atom(), subsequent_, u, corrupted_);
    if (!v) return abort_and_log("corrupt", payload, describe(v));
    corrupted_.insert(u);
    return log("corrupt", payload, QueryResult::user_state(proto_ ? proto_->user_state(u) : ""));
  }

  QueryResult protocol_query(const std::string& payload) {
    const json jp = payload;
    if (aborted_) return log("protocol", jp, QueryResult::abort("game already aborted"));
    if (!proto_) return abort_and_log("protocol", jp, "no protocol model attached");
    std::optional<json> reply = proto_->on_protocol_query(payload);
    if (!reply) return abort_and_log("protocol", jp, "protocol model rejects the payload");
    return log("protocol", jp, QueryResult::observe(std::move(*reply)));
  }

  QueryResult switch_stage() {
    const json payload = nullptr;
    if (aborted_) return log("switch_stage", payload, QueryResult::abort("game already aborted"));
    if (!cfg_.notion.has_stages())
      return abort_and_log("switch_stage", payload, "notion has no stages");
    if (stage_ == 2) return abort_and_log("switch_stage", payload, "stage already switched");
    stage_ = 2;
    return log("switch_stage", payload, QueryResult::ok());
  }

 private:
  Atom policy_atom() const {
    switch (cfg_.notion.options.policy) {
      case CorruptionPolicy::Adaptive: return Atom::CorrAdaptive;
      case CorruptionPolicy::Static: return Atom::CorrStatic;
      case CorruptionPolicy::None: return Atom::CorrNo;
    }
    return Atom::CorrAdaptive;
  }

  std::optional<Atom> batch_corruption_atom() const {
    switch (cfg_.notion.options.batch) {
      case CorruptionBatch::Unrestricted: return std::nullopt;
      case CorruptionBatch::EqualBehavior: return Atom::CorrC;
      case CorruptionBatch::NoComm: return Atom::CorrN;
      case CorruptionBatch::NoSend: return Atom::CorrS;
      case CorruptionBatch::NoReceive: return Atom::CorrR;
    }
    return std::nullopt;
  }

  Verdict validate(const ChallengeBatchQuery& q, const std::vector<int>& row_psi,
                   const std::vector<std::size_t>& crs,
                   const std::map<int, ChallengeProps>& challenges) const {
    const PairingMode mode = cfg_.notion.pairing();
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t j : crs) groups[row_psi[j]].push_back(j);

    LinkingHistory staged = history_;
    staged.push(q);

    for (Atom atom : cfg_.notion.atoms) {
      Verdict v = Verdict::accept();
      if (is_simple_atom(atom)) {
        v = eval_simple(atom, q, mode);
      } else if (is_activity_atom(atom)) {
        v = eval_activity(atom, staged, mode);
      } else if (atom == Atom::G) {
        v = eval_g(staged, mode);
      } else if (atom == Atom::NoSend || atom == Atom::NoSendp) {
        v = check_nosend(atom, q, challenges);
      } else if (is_complex_atom(atom)) {
        for (const auto& [psi, rows] : groups) {
          v = eval_complex(atom, q, rows, challenges.at(psi), stage_);
          if (!v) break;
        }
      } else {
        throw std::logic_error(std::string("notion carries a non-query atom: ") + atom_name(atom));
      }
      if (!v) return v;
    }

    if (cfg_.notion.options.cr_bound) {
      for (const auto& [psi, rows] : groups)
        if (challenges.at(psi).cr_count > *cfg_.notion.options.cr_bound)
          return Verdict::reject(Atom::CrBound, "challenge " + std::to_string(psi) +
                                                    " exceeds its challenge-row bound");
    }
    if (cfg_.notion.options.session) {
      for (const auto& [psi, rows] : groups) {
        Verdict v = eval_sess(q, rows, challenges.at(psi), stage_, psi);
        if (!v) return v;
      }
    }
    if (const std::optional<Atom> variant = batch_corruption_atom()) {
      Verdict v = check_corruption_batch(*variant, q, corrupted_);
      if (!v) return v;
    }
    return Verdict::accept();
  }

  Verdict check_nosend(Atom atom, const ChallengeBatchQuery& q,
                       const std::map<int, ChallengeProps>& challenges) const {
    for (const auto& [psi, ch] : challenges) {
      if (!ch.first_cr[0]) continue;
      Verdict v = eval_nosend(atom, q, ch);
      if (!v) return v;
      const Real& first = ch.first_cr[0]->by_ab[0][0];
      const bool sender_side = atom == Atom::NoSend;
      const auto& prior = sender_side ? history_.sender[0][1] : history_.receiver[0][1];
      const int user = sender_side ? first.sender : first.receiver;
      for (const BatchLinking& l : prior)
        if (l.by_user.count(user))
          return Verdict::reject(atom,
                                 "first-challenge-row user was active in an earlier scenario-1 batch");
    }
    return Verdict::accept();
  }

  std::string session_id(const std::string& token) {
    auto it = session_table_.find(token);
    if (it != session_table_.end()) return it->second;
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_.u64()),
                  static_cast<unsigned long long>(rng_.u64()));
    return session_table_.emplace(token, buf).first->second;
  }

  QueryResult abort_and_log(const char* type, const json& payload, std::string why) {
    QueryResult r = QueryResult::abort(std::move(why));
    aborted_ = r.reason;
    return log(type, payload, r);
  }

  QueryResult log(const char* type, const json& payload, QueryResult r) {
    std::string result_bytes;
    switch (r.kind) {
      case QueryResult::Kind::Observation: result_bytes = "obs:" + r.observation.dump(); break;
      case QueryResult::Kind::Abort: result_bytes = "abort:" + r.reason; break;
      case QueryResult::Kind::UserState: result_bytes = "state:" + base64_encode(r.state); break;
      case QueryResult::Kind::Ok: result_bytes = "ok"; break;
    }
    const json line = {{"type", type},
                       {"payload", payload},
                       {"payload_digest", fnv1a_hex(payload.dump())},
                       {"verdict", r.kind == QueryResult::Kind::Abort ? r.reason : "accept"},
                       {"observation_digest", fnv1a_hex(result_bytes)}};
    transcript_.push_back(line.dump());
    return r;
  }

  GameConfig cfg_;
  std::shared_ptr<ProtocolModel> proto_;
  Rng rng_;
  int b_ = 0;
  int stage_ = 1;
  bool subsequent_ = false;
  std::optional<std::string> aborted_;
  int c_t_ = 0;
  std::set<int> corrupted_;
  std::map<int, ChallengeProps> challenges_;
  LinkingHistory history_;
  std::map<std::string, std::string> session_table_;
  std::vector<std::string> transcript_;
};

// Re-drives the logged queries against a fresh game; the result is byte-identical
// to the original transcript exactly when the game is deterministic.
inline std::vector<std::string> replay_transcript(const GameConfig& cfg,
                                                  std::shared_ptr<ProtocolModel> protocol,
                                                  const std::vector<std::string>& lines) {
  Game game(cfg, std::move(protocol));
  for (const std::string& line : lines) {
    const json entry = json::parse(line);
    const std::string type = entry.at("type").get<std::string>();
    if (type == "batch") {
      const json& payload = entry.at("payload");
      game.batch_query(query_from_json(payload), payload.at("psi").get<int>());
    } else if (type == "corrupt") {
      game.corrupt_query(entry.at("payload").get<int>());
    } else if (type == "protocol") {
      game.protocol_query(entry.at("payload").get<std::string>());
    } else if (type == "switch_stage") {
      game.switch_stage();
    } else {
      throw std::invalid_argument("transcript: unknown entry type '" + type + "'");
    }
  }
  return game.transcript();
}

}  // namespace notionlab
