#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <notionlab/model.hpp>

namespace notionlab {

// ---- property atoms ----------------------------------------------------------

enum class Atom {
  LenEq,  // |M|
  ES,
  ER,
  EM,
  ESM,
  ERM,
  ESR,
  Something,  // no empty communication anywhere
  Nothing,    // always satisfied
  U,
  Up,
  Q,
  Qp,
  CardU,
  CardUp,
  P,
  Pp,
  H,
  Hp,
  RSR,
  RSM,
  RRM,
  MSR,
  MSM,
  MRM,
  TS,
  TR,
  EDia,     // rows equal across scenarios unless empty on one side
  NoSend,   // the first-challenge-row sender never sends in scenario 1
  NoSendp,  // receiver dual
  G,        // sender permutation maps the current batch linking across scenarios
  Sess,
  CorrAdaptive,
  CorrStatic,
  CorrNo,
  CorrC,  // corrupted users behave identically in both scenarios
  CorrN,  // corrupted users may not communicate
  CorrS,  // corrupted users may not send
  CorrR,  // corrupted users may not receive
  CrBound,
};

inline const char* atom_name(Atom a) {
  switch (a) {
    case Atom::LenEq: return "|M|";
    case Atom::ES: return "E_S";
    case Atom::ER: return "E_R";
    case Atom::EM: return "E_M";
    case Atom::ESM: return "E_SM";
    case Atom::ERM: return "E_RM";
    case Atom::ESR: return "E_SR";
    case Atom::Something: return "SOMETHING";
    case Atom::Nothing: return "NOTHING";
    case Atom::U: return "U";
    case Atom::Up: return "U'";
    case Atom::Q: return "Q";
    case Atom::Qp: return "Q'";
    case Atom::CardU: return "|U|";
    case Atom::CardUp: return "|U'|";
    case Atom::P: return "P";
    case Atom::Pp: return "P'";
    case Atom::H: return "H";
    case Atom::Hp: return "H'";
    case Atom::RSR: return "R_SR";
    case Atom::RSM: return "R_SM";
    case Atom::RRM: return "R_RM";
    case Atom::MSR: return "M_SR";
    case Atom::MSM: return "M_SM";
    case Atom::MRM: return "M_RM";
    case Atom::TS: return "T_S";
    case Atom::TR: return "T_R";
    case Atom::EDia: return "E_DIA";
    case Atom::NoSend: return "NOSEND";
    case Atom::NoSendp: return "NOSEND'";
    case Atom::G: return "G";
    case Atom::Sess: return "SESS";
    case Atom::CorrAdaptive: return "CORR_ADAPTIVE";
    case Atom::CorrStatic: return "CORR_STATIC";
    case Atom::CorrNo: return "CORR_NO";
    case Atom::CorrC: return "CORR_C";
    case Atom::CorrN: return "CORR_N";
    case Atom::CorrS: return "CORR_S";
    case Atom::CorrR: return "CORR_R";
    case Atom::CrBound: return "CR";
  }
  return "?";
}

struct Verdict {
  bool ok = true;
  std::optional<Atom> atom;
  std::optional<std::size_t> row;
  std::string reason;

  static Verdict accept() { return {}; }
  static Verdict reject(Atom a, std::string why, std::optional<std::size_t> at = {}) {
    return Verdict{false, a, at, std::move(why)};
  }
  // Structural rejection not tied to a property atom (malformed query, budget, range).
  static Verdict fail(std::string why, std::optional<std::size_t> at = {}) {
    return Verdict{false, std::nullopt, at, std::move(why)};
  }
  explicit operator bool() const { return ok; }
};

// ---- field equality helpers ---------------------------------------------------

// Session tokens and challenge numbers are challenger-only and excluded from
// property-level aux equality.
inline bool aux_prop_equal(const Aux& x, const Aux& y) { return x.free == y.free; }

inline bool comm_prop_equal(const Communication& x, const Communication& y) {
  if (x.is_empty() != y.is_empty()) return false;
  if (x.is_empty()) return true;
  const Real& a = x.get();
  const Real& b = y.get();
  return a.sender == b.sender && a.receiver == b.receiver && a.message == b.message &&
         aux_prop_equal(a.aux, b.aux);
}

// ---- simple properties ---------------------------------------------------------

enum class PairingMode { InstanceZero, AllPairs };

namespace detail {

struct FieldMask {
  bool sender;
  bool receiver;
  bool message;
};

// The rows of scenario 1 must equal scenario 0 on every field the mask keeps.
inline Verdict eval_equal_except(Atom atom, FieldMask keep, const Batch& b0, const Batch& b1) {
  for (std::size_t j = 0; j < b0.size(); ++j) {
    if (b0[j].is_empty() || b1[j].is_empty())
      return Verdict::reject(atom, "empty communication in pattern row", j);
    const Real& r0 = b0[j].get();
    const Real& r1 = b1[j].get();
    if (keep.sender && r1.sender != r0.sender)
      return Verdict::reject(atom, "senders must be equal", j);
    if (keep.receiver && r1.receiver != r0.receiver)
      return Verdict::reject(atom, "receivers must be equal", j);
    if (keep.message && r1.message != r0.message)
      return Verdict::reject(atom, "messages must be equal", j);
    if (!aux_prop_equal(r0.aux, r1.aux))
      return Verdict::reject(atom, "aux must be equal", j);
  }
  return Verdict::accept();
}

inline Verdict eval_simple_pair(Atom atom, const Batch& b0, const Batch& b1) {
  switch (atom) {
    case Atom::Nothing:
      return Verdict::accept();
    case Atom::Something: {
      for (std::size_t j = 0; j < b0.size(); ++j)
        if (b0[j].is_empty() || b1[j].is_empty())
          return Verdict::reject(Atom::Something, "empty communication not allowed", j);
      return Verdict::accept();
    }
    case Atom::LenEq: {
      for (std::size_t j = 0; j < b0.size(); ++j) {
        if (b0[j].is_empty() != b1[j].is_empty())
          return Verdict::reject(Atom::LenEq, "one side empty", j);
        if (b0[j].is_empty()) continue;
        if (b0[j].get().message.length() != b1[j].get().message.length())
          return Verdict::reject(Atom::LenEq, "message lengths differ", j);
      }
      return Verdict::accept();
    }
    case Atom::ES: return eval_equal_except(atom, {false, true, true}, b0, b1);
    case Atom::ER: return eval_equal_except(atom, {true, false, true}, b0, b1);
    case Atom::EM: return eval_equal_except(atom, {true, true, false}, b0, b1);
    case Atom::ESM: return eval_equal_except(atom, {false, true, false}, b0, b1);
    case Atom::ERM: return eval_equal_except(atom, {true, false, false}, b0, b1);
    case Atom::ESR: return eval_equal_except(atom, {false, false, true}, b0, b1);
    case Atom::EDia: {
      for (std::size_t j = 0; j < b0.size(); ++j) {
        if (b0[j].is_empty() || b1[j].is_empty()) continue;
        if (!comm_prop_equal(b0[j], b1[j]))
          return Verdict::reject(Atom::EDia, "rows differ and neither is empty", j);
      }
      return Verdict::accept();
    }
    default:
      throw std::invalid_argument("eval_simple_pair: not a simple atom");
  }
}

}  // namespace detail

inline bool is_simple_atom(Atom a) {
  switch (a) {
    case Atom::LenEq:
    case Atom::ES:
    case Atom::ER:
    case Atom::EM:
    case Atom::ESM:
    case Atom::ERM:
    case Atom::ESR:
    case Atom::Something:
    case Atom::Nothing:
    case Atom::EDia:
      return true;
    default:
      return false;
  }
}

inline Verdict eval_simple(Atom atom, const ChallengeBatchQuery& q,
                           PairingMode mode = PairingMode::InstanceZero) {
  if (mode == PairingMode::InstanceZero) return detail::eval_simple_pair(atom, q.at(0, 0), q.at(0, 1));
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1) {
      Verdict v = detail::eval_simple_pair(atom, q.at(a0, 0), q.at(a1, 1));
      if (!v) return v;
    }
  return Verdict::accept();
}

// ---- linking history and activity properties -----------------------------------

// Per-user message multisets of one batch; multisets kept as sorted vectors.
struct BatchLinking {
  std::map<int, std::vector<std::string>> by_user;

  friend bool operator==(const BatchLinking&, const BatchLinking&) = default;
};

inline constexpr std::size_t kMaxPartitionBatches = 6;

struct HistoryTooDeep : std::runtime_error {
  HistoryTooDeep()
      : std::runtime_error("partition properties are limited to " +
                           std::to_string(kMaxPartitionBatches) + " batches") {}
};

struct LinkingHistory {
  // sender[a][b][k], receiver[a][b][k]
  std::array<std::array<std::vector<BatchLinking>, 2>, 2> sender;
  std::array<std::array<std::vector<BatchLinking>, 2>, 2> receiver;

  std::size_t batches() const { return sender[0][0].size(); }

  void push(const ChallengeBatchQuery& q) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        BatchLinking ls, lr;
        for (const Communication& c : q.at(a, b)) {
          if (c.is_empty()) continue;
          ls.by_user[c.get().sender].push_back(c.get().message.bytes);
          lr.by_user[c.get().receiver].push_back(c.get().message.bytes);
        }
        for (auto& [u, m] : ls.by_user) std::sort(m.begin(), m.end());
        for (auto& [u, m] : lr.by_user) std::sort(m.begin(), m.end());
        sender[a][b].push_back(std::move(ls));
        receiver[a][b].push_back(std::move(lr));
      }
  }
};

namespace detail {

inline std::set<int> active_users(const BatchLinking& l) {
  std::set<int> out;
  for (const auto& [u, m] : l.by_user) out.insert(u);
  return out;
}

inline std::map<int, std::size_t> user_freqs(const BatchLinking& l) {
  std::map<int, std::size_t> out;
  for (const auto& [u, m] : l.by_user) out[u] = m.size();
  return out;
}

// Multiset of per-user combined message multisets over the batch subset mask.
inline std::vector<std::vector<std::string>> combined_partition(
    const std::vector<BatchLinking>& hist, unsigned mask) {
  std::map<int, std::vector<std::string>> per_user;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (!(mask & (1u << k))) continue;
    for (const auto& [u, m] : hist[k].by_user) {
      auto& acc = per_user[u];
      acc.insert(acc.end(), m.begin(), m.end());
    }
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(per_user.size());
  for (auto& [u, m] : per_user) {
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::map<std::size_t, std::size_t> histogram_of(
    const std::vector<std::vector<std::string>>& partition) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& m : partition) ++out[m.size()];
  return out;
}

inline Verdict eval_activity_pair(Atom atom, const std::vector<BatchLinking>& h0,
                                  const std::vector<BatchLinking>& h1) {
  const std::size_t k = h0.size();
  if (k == 0) return Verdict::accept();
  const BatchLinking& cur0 = h0.back();
  const BatchLinking& cur1 = h1.back();
  switch (atom) {
    case Atom::U:
    case Atom::Up:
      if (active_users(cur0) != active_users(cur1))
        return Verdict::reject(atom, "active sets differ in the current batch");
      return Verdict::accept();
    case Atom::Q:
    case Atom::Qp:
      if (user_freqs(cur0) != user_freqs(cur1))
        return Verdict::reject(atom, "per-user frequencies differ in the current batch");
      return Verdict::accept();
    case Atom::CardU:
    case Atom::CardUp:
      if (cur0.by_user.size() != cur1.by_user.size())
        return Verdict::reject(atom, "active counts differ in the current batch");
      return Verdict::accept();
    case Atom::P:
    case Atom::Pp:
    case Atom::H:
    case Atom::Hp: {
      if (k > kMaxPartitionBatches) throw HistoryTooDeep{};
      const bool histogram_only = (atom == Atom::H || atom == Atom::Hp);
      for (unsigned mask = 1; mask < (1u << k); ++mask) {
        auto p0 = combined_partition(h0, mask);
        auto p1 = combined_partition(h1, mask);
        if (histogram_only) {
          if (histogram_of(p0) != histogram_of(p1))
            return Verdict::reject(atom, "histogram differs on a batch subset");
        } else if (p0 != p1) {
          return Verdict::reject(atom, "partition differs on a batch subset");
        }
      }
      return Verdict::accept();
    }
    default:
      throw std::invalid_argument("eval_activity_pair: not an activity atom");
  }
}

}  // namespace detail

inline bool is_activity_atom(Atom a) {
  switch (a) {
    case Atom::U:
    case Atom::Up:
    case Atom::Q:
    case Atom::Qp:
    case Atom::CardU:
    case Atom::CardUp:
    case Atom::P:
    case Atom::Pp:
    case Atom::H:
    case Atom::Hp:
      return true;
    default:
      return false;
  }
}

inline Verdict eval_activity(Atom atom, const LinkingHistory& h,
                             PairingMode mode = PairingMode::InstanceZero) {
  const bool receiver_side = (atom == Atom::Up || atom == Atom::Qp || atom == Atom::CardUp ||
                              atom == Atom::Pp || atom == Atom::Hp);
  const auto& side = receiver_side ? h.receiver : h.sender;
  if (mode == PairingMode::InstanceZero)
    return detail::eval_activity_pair(atom, side[0][0], side[0][1]);
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1) {
      Verdict v = detail::eval_activity_pair(atom, side[a0][0], side[a1][1]);
      if (!v) return v;
    }
  return Verdict::accept();
}

// G: some permutation of the sender universe maps the current batch's linking of
// scenario 0 onto scenario 1. Exact backtracking search over candidate images.
inline Verdict eval_g(const LinkingHistory& h, PairingMode mode = PairingMode::InstanceZero) {
  auto pair_holds = [&](const std::vector<BatchLinking>& h0,
                        const std::vector<BatchLinking>& h1) -> bool {
    if (h0.empty()) return true;
    const BatchLinking& l0 = h0.back();
    const BatchLinking& l1 = h1.back();
    if (l0.by_user.size() != l1.by_user.size()) return false;
    std::vector<const std::vector<std::string>*> want;
    for (const auto& [u, m] : l0.by_user) want.push_back(&m);
    std::vector<std::pair<int, const std::vector<std::string>*>> pool;
    for (const auto& [u, m] : l1.by_user) pool.emplace_back(u, &m);
    std::vector<bool> used(pool.size(), false);
    auto search = [&](auto&& self, std::size_t i) -> bool {
      if (i == want.size()) return true;
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (used[j] || *pool[j].second != *want[i]) continue;
        used[j] = true;
        if (self(self, i + 1)) return true;
        used[j] = false;
      }
      return false;
    };
    return search(search, 0);
  };
  if (mode == PairingMode::InstanceZero) {
    if (!pair_holds(h.sender[0][0], h.sender[0][1]))
      return Verdict::reject(Atom::G, "no sender permutation matches the current batch");
    return Verdict::accept();
  }
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1)
      if (!pair_holds(h.sender[a0][0], h.sender[a1][1]))
        return Verdict::reject(Atom::G, "no sender permutation matches the current batch");
  return Verdict::accept();
}

// ---- complex properties ---------------------------------------------------------

// Full first-challenge-row communications of one challenge, per (instance, scenario),
// recorded separately per stage.
struct StoredChallengeRow {
  std::array<std::array<Real, 2>, 2> by_ab;  // [a][b]
};

struct ChallengeProps {
  int a = 0;
  int cr_count = 0;
  std::array<std::optional<StoredChallengeRow>, 2> first_cr;  // index = stage - 1
};

namespace detail {

inline bool match_row(const Communication& c, int sender, int receiver, const Message& m,
                      const Aux& aux) {
  if (c.is_empty()) return false;
  const Real& r = c.get();
  return r.sender == sender && r.receiver == receiver && r.message == m &&
         aux_prop_equal(r.aux, aux);
}

struct PairRefs {
  // Stored first-challenge-row fields for scenario 0 of each instance.
  std::array<int, 2> sender;
  std::array<int, 2> receiver;
  std::array<Message, 2> message;
};

inline PairRefs pair_refs(const StoredChallengeRow& s) {
  PairRefs out;
  for (int a = 0; a < 2; ++a) {
    out.sender[a] = s.by_ab[a][0].sender;
    out.receiver[a] = s.by_ab[a][0].receiver;
    out.message[a] = s.by_ab[a][0].message;
  }
  return out;
}

}  // namespace detail

inline bool is_complex_atom(Atom a) {
  switch (a) {
    case Atom::RSR:
    case Atom::RSM:
    case Atom::RRM:
    case Atom::MSR:
    case Atom::MSM:
    case Atom::MRM:
    case Atom::TS:
    case Atom::TR:
      return true;
    default:
      return false;
  }
}

// crs: the challenge-row indices of ONE challenge within this query.
inline Verdict eval_complex(Atom atom, const ChallengeBatchQuery& q,
                            const std::vector<std::size_t>& crs, const ChallengeProps& ch,
                            int stage) {
  if (crs.empty()) return Verdict::accept();
  if (!ch.first_cr[0] && (atom != Atom::TS && atom != Atom::TR))
    return Verdict::reject(atom, "no stored challenge-row pairs");

  auto ref_msg = [&](std::size_t j) -> const Real& { return q.at(1, 0)[j].get(); };
  auto all_real = [&](std::size_t j) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (q.at(a, b)[j].is_empty()) return false;
    return true;
  };

  switch (atom) {
    case Atom::RSR:
    case Atom::RSM:
    case Atom::RRM: {
      const detail::PairRefs p = detail::pair_refs(*ch.first_cr[0]);
      for (std::size_t j : crs) {
        if (!all_real(j)) return Verdict::reject(atom, "empty communication in pattern row", j);
        const Real& ref = ref_msg(j);
        for (int a = 0; a < 2; ++a) {
          bool ok0 = false, ok1 = false;
          if (atom == Atom::RSR) {
            ok0 = detail::match_row(q.at(a, 0)[j], p.sender[a], p.receiver[a], ref.message, ref.aux);
            ok1 = detail::match_row(q.at(a, 1)[j], p.sender[a], p.receiver[1 - a], ref.message,
                                    ref.aux);
          } else if (atom == Atom::RSM) {
            ok0 = detail::match_row(q.at(a, 0)[j], p.sender[a], ref.receiver, p.message[a], ref.aux);
            ok1 = detail::match_row(q.at(a, 1)[j], p.sender[a], ref.receiver, p.message[1 - a],
                                    ref.aux);
          } else {
            ok0 = detail::match_row(q.at(a, 0)[j], ref.sender, p.receiver[a], p.message[a], ref.aux);
            ok1 = detail::match_row(q.at(a, 1)[j], ref.sender, p.receiver[a], p.message[1 - a],
                                    ref.aux);
          }
          if (!ok0) return Verdict::reject(atom, "scenario-0 row does not match pattern", j);
          if (!ok1) return Verdict::reject(atom, "scenario-1 row does not match pattern", j);
        }
      }
      return Verdict::accept();
    }
    case Atom::MSR:
    case Atom::MSM:
    case Atom::MRM: {
      if (crs.size() % 2 != 0)
        return Verdict::reject(atom, "challenge rows of a mixed pattern must pair up");
      const detail::PairRefs p = detail::pair_refs(*ch.first_cr[0]);
      for (std::size_t i = 0; i < crs.size(); i += 2) {
        const std::size_t j = crs[i];
        const std::size_t j2 = crs[i + 1];
        if (j2 != j + 1)
          return Verdict::reject(atom, "mixed-pattern rows must be adjacent", j2);
        if (!all_real(j) || !all_real(j2))
          return Verdict::reject(atom, "empty communication in pattern row", j);
        const Real& ref = ref_msg(j);
        const Real& ref2 = ref_msg(j2);
        for (int a = 0; a < 2; ++a) {
          bool ok = true;
          if (atom == Atom::MSR) {
            ok = detail::match_row(q.at(a, 0)[j], p.sender[a], p.receiver[a], ref.message, ref.aux) &&
                 detail::match_row(q.at(a, 0)[j2], p.sender[1 - a], p.receiver[1 - a], ref.message,
                                   ref.aux) &&
                 detail::match_row(q.at(a, 1)[j], p.sender[a], p.receiver[1 - a], ref.message,
                                   ref.aux) &&
                 detail::match_row(q.at(a, 1)[j2], p.sender[1 - a], p.receiver[a], ref.message,
                                   ref.aux);
          } else if (atom == Atom::MSM) {
            ok = detail::match_row(q.at(a, 0)[j], p.sender[a], ref.receiver, p.message[a], ref.aux) &&
                 detail::match_row(q.at(a, 0)[j2], p.sender[1 - a], ref2.receiver, p.message[1 - a],
                                   ref2.aux) &&
                 detail::match_row(q.at(a, 1)[j], p.sender[a], ref.receiver, p.message[1 - a],
                                   ref.aux) &&
                 detail::match_row(q.at(a, 1)[j2], p.sender[1 - a], ref2.receiver, p.message[a],
                                   ref2.aux);
          } else {
            ok = detail::match_row(q.at(a, 0)[j], ref.sender, p.receiver[a], p.message[a], ref.aux) &&
                 detail::match_row(q.at(a, 0)[j2], ref2.sender, p.receiver[1 - a], p.message[1 - a],
                                   ref2.aux) &&
                 detail::match_row(q.at(a, 1)[j], ref.sender, p.receiver[a], p.message[1 - a],
                                   ref.aux) &&
                 detail::match_row(q.at(a, 1)[j2], ref2.sender, p.receiver[1 - a], p.message[a],
                                   ref2.aux);
          }
          if (!ok) return Verdict::reject(atom, "rows do not match the mixed pattern", j);
        }
      }
      return Verdict::accept();
    }
    case Atom::TS:
    case Atom::TR: {
      const int idx = stage - 1;
      if (!ch.first_cr[idx])
        return Verdict::reject(atom, "no stored challenge-row pairs for this stage");
      if (stage == 2 && !ch.first_cr[0])
        return Verdict::reject(atom, "stage-2 rows without any stage-1 challenge row");
      const detail::PairRefs p1 = detail::pair_refs(*ch.first_cr[0]);
      for (std::size_t j : crs) {
        if (!all_real(j)) return Verdict::reject(atom, "empty communication in pattern row", j);
        const Real& ref = ref_msg(j);
        for (int a = 0; a < 2; ++a) {
          bool ok = true;
          if (stage == 1) {
            int s = (atom == Atom::TS) ? p1.sender[a] : p1.sender[0];
            int r = (atom == Atom::TS) ? p1.receiver[0] : p1.receiver[a];
            ok = detail::match_row(q.at(a, 0)[j], s, r, ref.message, ref.aux) &&
                 detail::match_row(q.at(a, 1)[j], s, r, ref.message, ref.aux);
          } else {
            const detail::PairRefs p2 = detail::pair_refs(*ch.first_cr[1]);
            if (atom == Atom::TS) {
              ok = detail::match_row(q.at(a, 0)[j], p1.sender[a], p2.receiver[0], ref.message,
                                     ref.aux) &&
                   detail::match_row(q.at(a, 1)[j], p1.sender[1 - a], p2.receiver[0], ref.message,
                                     ref.aux);
            } else {
              ok = detail::match_row(q.at(a, 0)[j], p2.sender[0], p1.receiver[a], ref.message,
                                     ref.aux) &&
                   detail::match_row(q.at(a, 1)[j], p2.sender[0], p1.receiver[1 - a], ref.message,
                                     ref.aux);
            }
          }
          if (!ok) return Verdict::reject(atom, "rows do not match the stage pattern", j);
        }
      }
      return Verdict::accept();
    }
    default:
      throw std::invalid_argument("eval_complex: not a complex atom");
  }
}

// ---- sessions -------------------------------------------------------------------

inline std::string session_token_for(int stage, int psi) {
  return "ch" + std::to_string(psi) + ":st" + std::to_string(stage);
}

// Every challenge row must reuse the stored per-instance, per-scenario pair of this
// challenge and stage, and carry exactly the (stage, challenge) session token.
inline Verdict eval_sess(const ChallengeBatchQuery& q, const std::vector<std::size_t>& crs,
                         const ChallengeProps& ch, int stage, int psi) {
  if (crs.empty()) return Verdict::accept();
  const int idx = stage - 1;
  if (!ch.first_cr[idx]) return Verdict::reject(Atom::Sess, "no stored pairs for this stage");
  const StoredChallengeRow& s = *ch.first_cr[idx];
  const std::string want = session_token_for(stage, psi);
  for (std::size_t j : crs) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Communication& c = q.at(a, b)[j];
        if (c.is_empty()) return Verdict::reject(Atom::Sess, "empty communication", j);
        const Real& r = c.get();
        if (r.sender != s.by_ab[a][b].sender || r.receiver != s.by_ab[a][b].receiver)
          return Verdict::reject(Atom::Sess, "challenge row changes the session pair", j);
        if (!r.aux.session || *r.aux.session != want || !r.aux.free.empty())
          return Verdict::reject(Atom::Sess, "challenge row lacks the session token", j);
      }
  }
  return Verdict::accept();
}

// ---- restricted sender/receiver (Loopix mapping) ----------------------------------

inline Verdict eval_nosend(Atom atom, const ChallengeBatchQuery& q, const ChallengeProps& ch) {
  if (!ch.first_cr[0]) return Verdict::accept();
  const Real& first = ch.first_cr[0]->by_ab[0][0];
  for (std::size_t j = 0; j < q.rows(); ++j) {
    const Communication& c = q.at(0, 1)[j];
    if (c.is_empty()) continue;
    if (atom == Atom::NoSend && c.get().sender == first.sender)
      return Verdict::reject(atom, "first-challenge-row sender appears in scenario 1", j);
    if (atom == Atom::NoSendp && c.get().receiver == first.receiver)
      return Verdict::reject(atom, "first-challenge-row receiver appears in scenario 1", j);
  }
  return Verdict::accept();
}

// ---- corruption --------------------------------------------------------------------

// Corrupt-query policy. `subsequent` is true once any batch query happened.
inline Verdict check_corrupt_query(Atom policy, bool subsequent, int u,
                                   const std::set<int>& corrupted) {
  switch (policy) {
    case Atom::CorrAdaptive:
      return Verdict::accept();
    case Atom::CorrNo:
      return Verdict::reject(Atom::CorrNo, "corruption not allowed");
    case Atom::CorrStatic:
      if (subsequent && !corrupted.count(u))
        return Verdict::reject(Atom::CorrStatic, "static corruption after first batch");
      return Verdict::accept();
    default:
      throw std::invalid_argument("check_corrupt_query: not a corruption policy");
  }
}

// Batch-query corruption property. Corrupted ids apply to both universes (a node
// acting as sender and receiver is corrupted as a whole).
inline Verdict check_corruption_batch(Atom variant, const ChallengeBatchQuery& q,
                                      const std::set<int>& corrupted) {
  if (corrupted.empty()) return Verdict::accept();
  for (int a = 0; a < 2; ++a) {
    for (std::size_t j = 0; j < q.rows(); ++j) {
      const Communication& c0 = q.at(a, 0)[j];
      const Communication& c1 = q.at(a, 1)[j];
      for (const Communication* c : {&c0, &c1}) {
        if (c->is_empty()) continue;
        const Real& r = c->get();
        const bool s_corr = corrupted.count(r.sender) > 0;
        const bool r_corr = corrupted.count(r.receiver) > 0;
        if (variant == Atom::CorrN && (s_corr || r_corr))
          return Verdict::reject(variant, "corrupted user communicates", j);
        if (variant == Atom::CorrS && s_corr)
          return Verdict::reject(variant, "corrupted user sends", j);
        if (variant == Atom::CorrR && r_corr)
          return Verdict::reject(variant, "corrupted user receives", j);
      }
      if (variant == Atom::CorrC) {
        // A corrupted sender (receiver) in one scenario must appear identically,
        // with the same message, in the other scenario of the same instance.
        for (int dir = 0; dir < 2; ++dir) {
          const Communication& x = dir == 0 ? c0 : c1;
          const Communication& y = dir == 0 ? c1 : c0;
          if (x.is_empty()) continue;
          const Real& rx = x.get();
          if (corrupted.count(rx.sender)) {
            if (y.is_empty() || y.get().sender != rx.sender || y.get().message != rx.message)
              return Verdict::reject(variant, "corrupted sender behavior differs", j);
          }
          if (corrupted.count(rx.receiver)) {
            if (y.is_empty() || y.get().receiver != rx.receiver || y.get().message != rx.message)
              return Verdict::reject(variant, "corrupted receiver behavior differs", j);
          }
        }
      }
    }
  }
  return Verdict::accept();
}

}  // namespace notionlab
