#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <notionlab/challenger.hpp>

namespace notionlab {

struct OracleBounds {
  int senders = 2;
  int receivers = 2;
  int alphabet = 2;
  int max_message_len = 2;
  int max_rows = 3;
  int max_batches = 2;
  int challenges = 1;
};

inline std::vector<std::string> message_universe(const OracleBounds& b) {
  std::vector<std::string> out{""};
  std::vector<std::string> frontier{""};
  for (int len = 1; len <= b.max_message_len; ++len) {
    std::vector<std::string> next;
    for (const std::string& base : frontier)
      for (int s = 0; s < b.alphabet; ++s) next.push_back(base + static_cast<char>('a' + s));
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

struct SpaceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleStep {
  bool stage_switch = false;
  ChallengeBatchQuery query;
  int psi = 1;
};

struct SafetyReport {
  bool safe = true;
  std::vector<OracleStep> witness;
  std::uint64_t checked = 0;
};

namespace oracle_detail {

inline std::vector<Communication> comm_universe(const OracleBounds& b, bool with_empty) {
  std::vector<Communication> out;
  if (with_empty) out.push_back(Communication::empty());
  for (int s = 0; s < b.senders; ++s)
    for (int r = 0; r < b.receivers; ++r)
      for (const std::string& m : message_universe(b)) out.push_back(Communication::make(s, r, m));
  return out;
}

inline std::vector<Batch> all_batches(const OracleBounds& b, bool with_empty) {
  const std::vector<Communication> comms = comm_universe(b, with_empty);
  std::vector<Batch> out;
  std::vector<Batch> frontier{Batch{}};
  for (int rows = 1; rows <= b.max_rows; ++rows) {
    std::vector<Batch> next;
    for (const Batch& base : frontier)
      for (const Communication& c : comms) {
        Batch grown = base;
        grown.push_back(c);
        next.push_back(std::move(grown));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Observation stream of the leakage functions over a fed batch sequence,
// including the effect of the frozen first-row state.
inline std::string leak_signature(const std::set<LeakageFunction>& leaks,
                                  const std::vector<Batch>& fed) {
  LeakyIdeal proto(leaks);
  proto.reset(0);
  std::string sig;
  for (const Batch& batch : fed) {
    sig += proto.on_batch(batch).dump();
    sig += '\n';
  }
  return sig;
}

inline std::string leak_signature(const std::set<LeakageFunction>& leaks, const Batch& fed) {
  return leak_signature(leaks, std::vector<Batch>{fed});
}

inline bool has_equality_atom(const NotionSpec& n) {
  for (Atom a : {Atom::ES, Atom::ER, Atom::EM, Atom::ESM, Atom::ERM, Atom::ESR})
    if (n.atoms.count(a)) return true;
  return false;
}

inline bool has_empty_row(const Batch& b) {
  return std::any_of(b.begin(), b.end(), [](const Communication& c) { return c.is_empty(); });
}

// Canonical projection of one scenario batch under the notion's per-batch
// atoms: two single batches form a compliant scenario pair exactly when their
// projections are equal. Challenge-row pattern atoms never take this path.
inline std::string compliance_key(const NotionSpec& notion, const Batch& batch) {
  std::string key = "rows=" + std::to_string(batch.size());
  auto append_rows = [&](const char* tag, auto&& project) {
    key += "|";
    key += tag;
    key += ":";
    for (const Communication& c : batch) {
      if (c.is_empty()) key += "[e]";
      else key += "[" + project(c.get()) + "]";
    }
  };
  auto sender_linking = [&] {
    std::map<int, std::vector<std::string>> by_user;
    for (const Communication& c : batch)
      if (!c.is_empty()) by_user[c.get().sender].push_back(c.get().message.bytes);
    for (auto& [u, m] : by_user) std::sort(m.begin(), m.end());
    return by_user;
  };
  auto receiver_linking = [&] {
    std::map<int, std::vector<std::string>> by_user;
    for (const Communication& c : batch)
      if (!c.is_empty()) by_user[c.get().receiver].push_back(c.get().message.bytes);
    for (auto& [u, m] : by_user) std::sort(m.begin(), m.end());
    return by_user;
  };
  auto partition_of = [](const std::map<int, std::vector<std::string>>& linking) {
    std::vector<std::vector<std::string>> parts;
    for (const auto& [u, m] : linking) parts.push_back(m);
    std::sort(parts.begin(), parts.end());
    json j = json::array();
    for (const auto& p : parts) j.push_back(p);
    return j.dump();
  };
  auto histogram_of = [](const std::map<int, std::vector<std::string>>& linking) {
    std::map<std::size_t, int> hist;
    for (const auto& [u, m] : linking) ++hist[m.size()];
    std::string out;
    for (const auto& [sz, n] : hist) out += std::to_string(sz) + "x" + std::to_string(n) + ",";
    return out;
  };
  auto freqs_of = [](const std::map<int, std::vector<std::string>>& linking) {
    std::string out;
    for (const auto& [u, m] : linking)
      out += std::to_string(u) + "x" + std::to_string(m.size()) + ",";
    return out;
  };
  auto users_of = [](const std::map<int, std::vector<std::string>>& linking) {
    std::string out;
    for (const auto& [u, m] : linking) out += std::to_string(u) + ",";
    return out;
  };

  for (Atom atom : notion.atoms) {
    switch (atom) {
      case Atom::Something:
      case Atom::Nothing:
        break;
      case Atom::LenEq:
        append_rows("len", [](const Real& r) { return std::to_string(r.message.length()); });
        break;
      case Atom::ES:
        append_rows("es", [](const Real& r) {
          return std::to_string(r.receiver) + ";" + r.message.bytes + ";" + r.aux.free;
        });
        break;
      case Atom::ER:
        append_rows("er", [](const Real& r) {
          return std::to_string(r.sender) + ";" + r.message.bytes + ";" + r.aux.free;
        });
        break;
      case Atom::EM:
        append_rows("em", [](const Real& r) {
          return std::to_string(r.sender) + ";" + std::to_string(r.receiver) + ";" + r.aux.free;
        });
        break;
      case Atom::ESM:
        append_rows("esm",
                    [](const Real& r) { return std::to_string(r.receiver) + ";" + r.aux.free; });
        break;
      case Atom::ERM:
        append_rows("erm",
                    [](const Real& r) { return std::to_string(r.sender) + ";" + r.aux.free; });
        break;
      case Atom::ESR:
        append_rows("esr", [](const Real& r) { return r.message.bytes + ";" + r.aux.free; });
        break;
      case Atom::U: key += "|u:" + users_of(sender_linking()); break;
      case Atom::Up: key += "|u':" + users_of(receiver_linking()); break;
      case Atom::Q: key += "|q:" + freqs_of(sender_linking()); break;
      case Atom::Qp: key += "|q':" + freqs_of(receiver_linking()); break;
      case Atom::CardU: key += "|#u:" + std::to_string(sender_linking().size()); break;
      case Atom::CardUp: key += "|#u':" + std::to_string(receiver_linking().size()); break;
      case Atom::H: key += "|h:" + histogram_of(sender_linking()); break;
      case Atom::Hp: key += "|h':" + histogram_of(receiver_linking()); break;
      case Atom::P: key += "|p:" + partition_of(sender_linking()); break;
      case Atom::Pp: key += "|p':" + partition_of(receiver_linking()); break;
      // A sender permutation matching one batch exists exactly when the
      // name-erased partitions agree; admission below re-runs the real search.
      case Atom::G: key += "|g:" + partition_of(sender_linking()); break;
      default:
        throw std::logic_error(std::string("compliance_key: unsupported atom ") + atom_name(atom));
    }
  }
  return key;
}

// Per-(instance, scenario) observation signatures of one candidate sequence.
struct Candidate {
  std::vector<OracleStep> steps;
  std::array<std::array<std::string, 2>, 2> sig;  // [instance][scenario]

  // The instance bit is drawn uniformly, so the scenarios are distinguishable
  // exactly when the observation multisets over that draw differ.
  bool violating() const {
    return std::minmax(sig[0][0], sig[1][0]) != std::minmax(sig[0][1], sig[1][1]);
  }
  bool disjoint() const {
    return sig[0][0] != sig[0][1] && sig[0][0] != sig[1][1] && sig[1][0] != sig[0][1] &&
           sig[1][0] != sig[1][1];
  }
  // Scenario swap changes the observation of some fixed instance.
  bool scenario_visible() const { return sig[0][0] != sig[0][1] || sig[1][0] != sig[1][1]; }
  // Swapping the instance does not compensate the scenario swap.
  bool cross_asymmetric() const { return sig[0][0] != sig[1][1] || sig[1][0] != sig[0][1]; }
};

}  // namespace oracle_detail

// Exhaustively decides whether the leakage functions keep the observation
// distribution of every notion-compliant bounded query sequence identical
// across the two scenarios (the distribution is over the uniform challenge
// instance draw).
//
// For notions whose games pin the instance, a sequence distinguishes exactly
// when some batch's observations differ across scenarios, and the first such
// batch is itself a compliant distinguishing query (per-batch and subset
// properties constrain a standalone batch at least as much, and the frozen
// first-row state cannot differ across scenarios before the observations do),
// so single-batch enumeration is exhaustive. For notions whose games draw the
// instance per challenge, a sequence built from one stored-parameter choice
// distinguishes exactly when some compliant batch is scenario-visible and some
// compliant batch breaks the instance-for-scenario swap symmetry, so the check
// enumerates batches per stored-parameter choice, collects the two kinds, and
// verifies an assembled one- or two-batch sequence. Two-stage notions prepend
// the first-stage batch that fixes the stored pairs. Corrupt queries never
// help against a model with empty user state, and auxiliary bytes reach no
// leakage function, so neither is enumerated.
inline SafetyReport observation_invariance(const std::set<LeakageFunction>& leaks,
                                           const NotionSpec& notion, const OracleBounds& bounds) {
  using namespace oracle_detail;

  if (notion.atoms.count(Atom::NoSend) || notion.atoms.count(Atom::NoSendp))
    throw SpaceTooLarge("restricted-activity notions are not supported by the exhaustive check");
  if (notion.options.session) {
    NotionSpec base = notion;
    base.options.session = false;
    SafetyReport r = observation_invariance(leaks, base, bounds);
    if (r.safe) return r;
    throw SpaceTooLarge("cannot certify a violation under session-token constraints");
  }
  if (bounds.challenges != 1 &&
      (notion.has_complex() || notion.has_stages() || notion.options.cr_bound))
    throw SpaceTooLarge("stored-pair and bounded notions are checked for one challenge only");

  GameConfig cfg;
  cfg.notion = notion;
  cfg.c = bounds.max_rows * bounds.max_batches;
  cfg.n = bounds.challenges;
  cfg.senders = bounds.senders;
  cfg.receivers = bounds.receivers;
  cfg.max_batch_rows = static_cast<std::size_t>(bounds.max_rows);
  const Game probe(cfg, nullptr);

  SafetyReport report;
  std::optional<Candidate> partial;
  std::uint64_t unverified = 0;

  auto stream_sigs = [&](const std::vector<OracleStep>& steps) {
    std::array<std::array<std::string, 2>, 2> sig;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        std::vector<Batch> fed;
        for (const OracleStep& s : steps)
          if (!s.stage_switch) fed.push_back(s.query.at(a, b));
        sig[a][b] = leak_signature(leaks, fed);
      }
    return sig;
  };

  // Admission check of a whole sequence plus its observation signatures.
  auto try_candidate = [&](std::vector<OracleStep> steps) -> std::optional<Candidate> {
    Game game(cfg, nullptr);
    for (const OracleStep& s : steps) {
      const bool ok = s.stage_switch ? game.switch_stage().accepted()
                                     : game.batch_query(s.query, s.psi).accepted();
      if (!ok) {
        ++unverified;
        return std::nullopt;
      }
    }
    Candidate cand;
    cand.sig = stream_sigs(steps);
    cand.steps = std::move(steps);
    return cand;
  };

  // Returns true when the search can stop (perfect witness found).
  auto note = [&](Candidate cand) -> bool {
    if (!cand.violating()) return false;
    if (cand.disjoint()) {
      report.safe = false;
      report.witness = std::move(cand.steps);
      return true;
    }
    if (!partial) partial = std::move(cand);
    return false;
  };

  auto finish = [&]() -> SafetyReport {
    if (partial) {
      report.safe = false;
      report.witness = partial->steps;
    } else if (unverified > 0) {
      // Some assembled sequence was rejected (a per-challenge row bound can
      // veto the combination), so a smaller combination may still exist.
      throw SpaceTooLarge("cannot certify safety: a candidate sequence was rejected");
    }
    return report;
  };

  const std::vector<std::string> msgs = message_universe(bounds);
  const std::vector<Communication> noncr = comm_universe(bounds, false);
  constexpr std::size_t kListCap = 16;

  if (notion.has_stages()) {
    const bool sender_side = notion.atoms.count(Atom::TS) > 0;
    const int stored_univ = sender_side ? bounds.senders : bounds.receivers;
    const int fixed_univ = sender_side ? bounds.receivers : bounds.senders;

    // Layouts for one batch: -1 marks a pattern row, other entries index noncr.
    std::vector<std::vector<int>> layouts;
    {
      std::vector<int> cur;
      auto expand = [&](auto&& self) -> void {
        if (std::count(cur.begin(), cur.end(), -1) > 0) layouts.push_back(cur);
        if (static_cast<int>(cur.size()) == bounds.max_rows) return;
        cur.push_back(-1);
        self(self);
        cur.pop_back();
        for (std::size_t i = 0; i < noncr.size(); ++i) {
          cur.push_back(static_cast<int>(i));
          self(self);
          cur.pop_back();
        }
      };
      expand(expand);
    }

    for (int x0 = 0; x0 < stored_univ; ++x0)
      for (int x1 = 0; x1 < stored_univ; ++x1) {
        if (x0 == x1) continue;  // no challenge row can exist, nothing is revealed
        for (int y0 = 0; y0 < fixed_univ; ++y0) {
          // First-stage pattern row: identical scenarios within each instance.
          auto stage1_row = [&](int a, const std::string& m) {
            const int s = sender_side ? (a == 0 ? x0 : x1) : y0;
            const int r = sender_side ? y0 : (a == 0 ? x0 : x1);
            return Communication::make(s, r, m);
          };
          ChallengeBatchQuery canonical;
          for (int a = 0; a < 2; ++a) {
            canonical.at(a, 0) = Batch{stage1_row(a, msgs[1])};
            canonical.at(a, 1) = Batch{stage1_row(a, msgs[1])};
          }
          Game base(cfg, nullptr);
          if (!base.batch_query(canonical, 1).accepted() || !base.switch_stage().accepted())
            throw std::logic_error("canonical first-stage batch was rejected");

          // First-stage batches can reveal the instance but never the scenario.
          std::vector<Candidate> stage1_cross;
          for (const std::vector<int>& layout : layouts) {
            std::vector<std::size_t> pattern_pos;
            for (std::size_t j = 0; j < layout.size(); ++j)
              if (layout[j] == -1) pattern_pos.push_back(j);
            std::vector<std::size_t> mchoice(pattern_pos.size(), 0);
            while (true) {
              ChallengeBatchQuery q1;
              for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) q1.at(a, b).resize(layout.size());
              for (std::size_t j = 0; j < layout.size(); ++j)
                if (layout[j] >= 0)
                  for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) q1.at(a, b)[j] = noncr[layout[j]];
              for (std::size_t pi = 0; pi < pattern_pos.size(); ++pi)
                for (int a = 0; a < 2; ++a)
                  for (int b = 0; b < 2; ++b)
                    q1.at(a, b)[pattern_pos[pi]] = stage1_row(a, msgs[mchoice[pi]]);
              ++report.checked;
              if (stage1_cross.size() < kListCap && probe.admit(q1, 1).verdict.ok) {
                Candidate cand;
                cand.steps = {OracleStep{false, q1, 1}};
                cand.sig = stream_sigs(cand.steps);
                if (cand.cross_asymmetric()) stage1_cross.push_back(std::move(cand));
              }
              std::size_t carry = 0;
              while (carry < mchoice.size()) {
                if (++mchoice[carry] < msgs.size()) break;
                mchoice[carry] = 0;
                ++carry;
              }
              if (mchoice.empty() || carry == mchoice.size()) break;
            }
          }

          for (int anchor = 0; anchor < fixed_univ; ++anchor) {
            std::vector<Candidate> visible, cross;
            for (const std::vector<int>& layout : layouts) {
              std::vector<std::size_t> pattern_pos;
              for (std::size_t j = 0; j < layout.size(); ++j)
                if (layout[j] == -1) pattern_pos.push_back(j);
              std::vector<std::size_t> mchoice(pattern_pos.size(), 0);
              while (true) {
                ChallengeBatchQuery q2;
                for (int a = 0; a < 2; ++a)
                  for (int b = 0; b < 2; ++b) q2.at(a, b).resize(layout.size());
                for (std::size_t j = 0; j < layout.size(); ++j)
                  if (layout[j] >= 0)
                    for (int a = 0; a < 2; ++a)
                      for (int b = 0; b < 2; ++b) q2.at(a, b)[j] = noncr[layout[j]];
                for (std::size_t pi = 0; pi < pattern_pos.size(); ++pi) {
                  const std::size_t j = pattern_pos[pi];
                  const std::string& m = msgs[mchoice[pi]];
                  for (int a = 0; a < 2; ++a) {
                    const int xa = a == 0 ? x0 : x1;
                    const int xo = a == 0 ? x1 : x0;
                    if (sender_side) {
                      q2.at(a, 0)[j] = Communication::make(xa, anchor, m);
                      q2.at(a, 1)[j] = Communication::make(xo, anchor, m);
                    } else {
                      q2.at(a, 0)[j] = Communication::make(anchor, xa, m);
                      q2.at(a, 1)[j] = Communication::make(anchor, xo, m);
                    }
                  }
                }
                ++report.checked;
                if (base.admit(q2, 1).verdict.ok) {
                  Candidate cand;
                  cand.steps = {OracleStep{false, canonical, 1}, OracleStep{true, {}, 1},
                                OracleStep{false, q2, 1}};
                  cand.sig = stream_sigs(cand.steps);
                  const bool vis = cand.scenario_visible();
                  const bool crs = cand.cross_asymmetric();
                  if (vis && crs && note(cand)) return report;
                  if (vis && visible.size() < kListCap) visible.push_back(cand);
                  if (crs && cross.size() < kListCap) cross.push_back(std::move(cand));
                }
                std::size_t carry = 0;
                while (carry < mchoice.size()) {
                  if (++mchoice[carry] < msgs.size()) break;
                  mchoice[carry] = 0;
                  ++carry;
                }
                if (mchoice.empty() || carry == mchoice.size()) break;
              }
            }
            // Assemble two-batch sequences: an instance-revealing first stage
            // before a scenario-visible second stage.
            for (const Candidate& v : visible) {
              for (const Candidate& x : stage1_cross) {
                std::vector<OracleStep> steps = {x.steps[0], OracleStep{true, {}, 1},
                                                 v.steps[2]};
                if (auto cand = try_candidate(std::move(steps)); cand && note(std::move(*cand)))
                  return report;
              }
              if (bounds.max_batches >= 3) {
                for (const Candidate& x : cross) {
                  if (x.steps[2].query == v.steps[2].query) continue;
                  std::vector<OracleStep> steps = {v.steps[0], OracleStep{true, {}, 1},
                                                   x.steps[2], v.steps[2]};
                  if (auto cand = try_candidate(std::move(steps)); cand && note(std::move(*cand)))
                    return report;
                }
              }
            }
          }
        }
      }
    return finish();
  }

  if (notion.has_complex()) {
    Atom cx = Atom::RSR;
    for (Atom a : notion.atoms)
      if (is_complex_atom(a)) cx = a;
    const bool paired = (cx == Atom::MSR || cx == Atom::MSM || cx == Atom::MRM);

    struct Stored {
      int s0 = 0, s1 = 0, r0 = 0, r1 = 0;
      std::string m0, m1;
    };
    std::vector<Stored> params;
    if (cx == Atom::RSR || cx == Atom::MSR) {
      for (int s0 = 0; s0 < bounds.senders; ++s0)
        for (int s1 = 0; s1 < bounds.senders; ++s1)
          for (int r0 = 0; r0 < bounds.receivers; ++r0)
            for (int r1 = 0; r1 < bounds.receivers; ++r1) {
              if (s0 == s1 && r0 == r1) continue;  // no challenge row can exist
              params.push_back(Stored{s0, s1, r0, r1, "", ""});
            }
    } else if (cx == Atom::RSM || cx == Atom::MSM) {
      for (int s0 = 0; s0 < bounds.senders; ++s0)
        for (int s1 = 0; s1 < bounds.senders; ++s1)
          for (const std::string& m0 : msgs)
            for (const std::string& m1 : msgs) {
              if (s0 == s1 && m0 == m1) continue;
              params.push_back(Stored{s0, s1, 0, 0, m0, m1});
            }
    } else {
      for (int r0 = 0; r0 < bounds.receivers; ++r0)
        for (int r1 = 0; r1 < bounds.receivers; ++r1)
          for (const std::string& m0 : msgs)
            for (const std::string& m1 : msgs) {
              if (r0 == r1 && m0 == m1) continue;
              params.push_back(Stored{0, 0, r0, r1, m0, m1});
            }
    }

    // One pattern unit is one challenge row (or one adjacent row pair) built
    // from the stored parameters plus the unit's own free parameters.
    struct Unit {
      std::array<std::array<std::vector<Communication>, 2>, 2> rows;  // [a][b]
    };
    auto units_for = [&](const Stored& p) {
      std::vector<Unit> units;
      auto real = [](int s, int r, const std::string& m) { return Communication::make(s, r, m); };
      if (cx == Atom::RSR) {
        for (const std::string& m : msgs) {
          Unit u;
          for (int a = 0; a < 2; ++a) {
            const int sa = a == 0 ? p.s0 : p.s1;
            const int ra = a == 0 ? p.r0 : p.r1;
            const int ro = a == 0 ? p.r1 : p.r0;
            u.rows[a][0] = {real(sa, ra, m)};
            u.rows[a][1] = {real(sa, ro, m)};
          }
          units.push_back(std::move(u));
        }
      } else if (cx == Atom::RSM) {
        for (int rc = 0; rc < bounds.receivers; ++rc) {
          Unit u;
          for (int a = 0; a < 2; ++a) {
            const int sa = a == 0 ? p.s0 : p.s1;
            const std::string& ma = a == 0 ? p.m0 : p.m1;
            const std::string& mo = a == 0 ? p.m1 : p.m0;
            u.rows[a][0] = {real(sa, rc, ma)};
            u.rows[a][1] = {real(sa, rc, mo)};
          }
          units.push_back(std::move(u));
        }
      } else if (cx == Atom::RRM) {
        for (int sn = 0; sn < bounds.senders; ++sn) {
          Unit u;
          for (int a = 0; a < 2; ++a) {
            const int ra = a == 0 ? p.r0 : p.r1;
            const std::string& ma = a == 0 ? p.m0 : p.m1;
            const std::string& mo = a == 0 ? p.m1 : p.m0;
            u.rows[a][0] = {real(sn, ra, ma)};
            u.rows[a][1] = {real(sn, ra, mo)};
          }
          units.push_back(std::move(u));
        }
      } else if (cx == Atom::MSR) {
        for (const std::string& m : msgs)
          for (const std::string& m2 : msgs) {
            Unit u;
            for (int a = 0; a < 2; ++a) {
              const int sa = a == 0 ? p.s0 : p.s1, so = a == 0 ? p.s1 : p.s0;
              const int ra = a == 0 ? p.r0 : p.r1, ro = a == 0 ? p.r1 : p.r0;
              u.rows[a][0] = {real(sa, ra, m), real(so, ro, m2)};
              u.rows[a][1] = {real(sa, ro, m), real(so, ra, m2)};
            }
            units.push_back(std::move(u));
          }
      } else if (cx == Atom::MSM) {
        for (int rc = 0; rc < bounds.receivers; ++rc)
          for (int rc2 = 0; rc2 < bounds.receivers; ++rc2) {
            Unit u;
            for (int a = 0; a < 2; ++a) {
              const int sa = a == 0 ? p.s0 : p.s1, so = a == 0 ? p.s1 : p.s0;
              const std::string& ma = a == 0 ? p.m0 : p.m1;
              const std::string& mo = a == 0 ? p.m1 : p.m0;
              u.rows[a][0] = {real(sa, rc, ma), real(so, rc2, mo)};
              u.rows[a][1] = {real(sa, rc, mo), real(so, rc2, ma)};
            }
            units.push_back(std::move(u));
          }
      } else {
        for (int sn = 0; sn < bounds.senders; ++sn)
          for (int sn2 = 0; sn2 < bounds.senders; ++sn2) {
            Unit u;
            for (int a = 0; a < 2; ++a) {
              const int ra = a == 0 ? p.r0 : p.r1, ro = a == 0 ? p.r1 : p.r0;
              const std::string& ma = a == 0 ? p.m0 : p.m1;
              const std::string& mo = a == 0 ? p.m1 : p.m0;
              u.rows[a][0] = {real(sn, ra, ma), real(sn2, ro, mo)};
              u.rows[a][1] = {real(sn, ra, mo), real(sn2, ro, ma)};
            }
            units.push_back(std::move(u));
          }
      }
      return units;
    };

    const int unit_rows = paired ? 2 : 1;
    // Layouts of pattern units and plain rows; a pattern slot is -1.
    std::vector<std::vector<int>> layouts;
    {
      std::vector<int> cur;
      int cur_rows = 0;
      auto expand = [&](auto&& self) -> void {
        if (std::count(cur.begin(), cur.end(), -1) > 0) layouts.push_back(cur);
        if (cur_rows + unit_rows <= bounds.max_rows) {
          cur.push_back(-1);
          cur_rows += unit_rows;
          self(self);
          cur.pop_back();
          cur_rows -= unit_rows;
        }
        if (cur_rows + 1 <= bounds.max_rows) {
          for (std::size_t i = 0; i < noncr.size(); ++i) {
            cur.push_back(static_cast<int>(i));
            cur_rows += 1;
            self(self);
            cur.pop_back();
            cur_rows -= 1;
          }
        }
      };
      expand(expand);
    }

    for (const Stored& p : params) {
      const std::vector<Unit> units = units_for(p);
      std::vector<Candidate> visible, cross;
      for (const std::vector<int>& layout : layouts) {
        std::vector<std::size_t> pattern_pos;
        for (std::size_t j = 0; j < layout.size(); ++j)
          if (layout[j] == -1) pattern_pos.push_back(j);
        std::vector<std::size_t> choice(pattern_pos.size(), 0);
        while (true) {
          ChallengeBatchQuery q;
          std::size_t next_pattern = 0;
          for (std::size_t j = 0; j < layout.size(); ++j) {
            if (layout[j] == -1) {
              const Unit& u = units[choice[next_pattern++]];
              for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                  q.at(a, b).insert(q.at(a, b).end(), u.rows[a][b].begin(), u.rows[a][b].end());
            } else {
              for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) q.at(a, b).push_back(noncr[layout[j]]);
            }
          }
          ++report.checked;
          if (probe.admit(q, 1).verdict.ok) {
            Candidate cand;
            cand.steps = {OracleStep{false, q, 1}};
            cand.sig = stream_sigs(cand.steps);
            const bool vis = cand.scenario_visible();
            const bool crs = cand.cross_asymmetric();
            if (vis && crs && note(cand)) return report;
            if (vis && visible.size() < kListCap) visible.push_back(cand);
            if (crs && cross.size() < kListCap) cross.push_back(std::move(cand));
          }
          std::size_t carry = 0;
          while (carry < choice.size()) {
            if (++choice[carry] < units.size()) break;
            choice[carry] = 0;
            ++carry;
          }
          if (choice.empty() || carry == choice.size()) break;
        }
      }
      // Assemble two-batch sequences from one scenario-visible and one
      // cross-asymmetric batch sharing the stored parameters.
      if (bounds.max_batches >= 2) {
        for (const Candidate& v : visible)
          for (const Candidate& x : cross) {
            if (v.steps[0].query == x.steps[0].query) continue;
            for (int order = 0; order < 2; ++order) {
              std::vector<OracleStep> steps = order == 0
                                                  ? std::vector<OracleStep>{x.steps[0], v.steps[0]}
                                                  : std::vector<OracleStep>{v.steps[0], x.steps[0]};
              if (auto cand = try_candidate(std::move(steps)); cand && note(std::move(*cand)))
                return report;
            }
          }
      }
    }
    return finish();
  }

  if (notion.atoms.count(Atom::EDia)) {
    const std::vector<Communication> comms = comm_universe(bounds, true);
    for (const Batch& b0 : all_batches(bounds, true)) {
      std::vector<std::vector<Communication>> per_row(b0.size());
      for (std::size_t j = 0; j < b0.size(); ++j) {
        if (b0[j].is_empty()) per_row[j] = comms;
        else per_row[j] = {b0[j], Communication::empty()};
      }
      std::vector<std::size_t> choice(b0.size(), 0);
      while (true) {
        Batch b1;
        for (std::size_t j = 0; j < b0.size(); ++j) b1.push_back(per_row[j][choice[j]]);
        const ChallengeBatchQuery q = simple_query(b0, b1);
        ++report.checked;
        if (probe.admit(q, 1).verdict.ok) {
          Candidate cand;
          cand.steps = {OracleStep{false, q, 1}};
          cand.sig = stream_sigs(cand.steps);
          if (note(std::move(cand))) return report;
        }
        std::size_t carry = 0;
        while (carry < choice.size()) {
          if (++choice[carry] < per_row[carry].size()) break;
          choice[carry] = 0;
          ++carry;
        }
        if (carry == choice.size()) break;
      }
    }
    return finish();
  }

  // Single-batch core: group batches by the canonical projection, then compare
  // leak signatures inside each group.
  const bool allow_empty = !notion.atoms.count(Atom::Something);
  const bool strict_rows = has_equality_atom(notion);
  const std::vector<Batch> batches = all_batches(bounds, allow_empty);
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> buckets;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    ++report.checked;
    // Under strict row equality a batch with an empty row pairs with nothing.
    const std::string key = (strict_rows && has_empty_row(batches[i]))
                                ? "unpairable:" + std::to_string(i)
                                : compliance_key(notion, batches[i]);
    buckets[key][leak_signature(leaks, batches[i])].push_back(i);
  }
  for (const auto& [key, by_sig] : buckets) {
    if (by_sig.size() < 2) continue;
    std::vector<const std::vector<std::size_t>*> groups;
    for (const auto& [sig, members] : by_sig) groups.push_back(&members);
    if (!notion.options.cr_bound) {
      const ChallengeBatchQuery q =
          simple_query(batches[groups[0]->front()], batches[groups[1]->front()]);
      if (!probe.admit(q, 1).verdict.ok) {
        if (notion.atoms.count(Atom::G))
          throw std::logic_error(
              "per-batch partition equality and the permutation search disagree");
        throw std::logic_error("projection-equal batch pair was rejected by the challenger");
      }
      report.safe = false;
      report.witness = {OracleStep{false, q, 1}};
      return report;
    }
    // A per-challenge row bound vetoes pairs individually; scan cross products.
    std::uint64_t tried = 0;
    for (std::size_t g1 = 0; g1 < groups.size(); ++g1)
      for (std::size_t g2 = g1 + 1; g2 < groups.size(); ++g2)
        for (std::size_t i : *groups[g1])
          for (std::size_t j : *groups[g2]) {
            if (++tried > 4096)
              throw SpaceTooLarge("cannot decide safety under per-challenge row bounds");
            const ChallengeBatchQuery q = simple_query(batches[i], batches[j]);
            if (probe.admit(q, 1).verdict.ok) {
              report.safe = false;
              report.witness = {OracleStep{false, q, 1}};
              return report;
            }
          }
  }
  return finish();
}

}  // namespace notionlab
