#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace notionlab {

using json = nlohmann::json;

// ---- seeded randomness ------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stable seed derivation so every game / trial gets an independent stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt_a,
                                 std::uint64_t salt_b = 0) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (salt_a + 1));
  std::uint64_t x = splitmix64(s);
  s ^= 0xc2b2ae3d27d4eb4full * (salt_b + 1);
  x ^= splitmix64(s);
  return x;
}

// mt19937_64 is deterministic per the standard; std distributions are not,
// so uniform draws below go through the raw engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t u64() { return engine_(); }
  int bit() { return static_cast<int>(u64() & 1u); }
  // Unbiased draw from [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

// ---- base64 (JSON wire format for message bytes) ----------------------------

inline std::string base64_encode(const std::string& in) {
  static const char* tab = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((in.size() + 2) / 3 * 4);
  unsigned val = 0;
  int bits = -6;
  for (unsigned char c : in) {
    val = (val << 8) + c;
    bits += 8;
    while (bits >= 0) {
      out.push_back(tab[(val >> bits) & 0x3f]);
      bits -= 6;
    }
  }
  if (bits > -6) out.push_back(tab[((val << 8) >> (bits + 8)) & 0x3f]);
  while (out.size() % 4) out.push_back('=');
  return out;
}

inline std::string base64_decode(const std::string& in) {
  auto val_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::string out;
  unsigned val = 0;
  int bits = -8;
  for (char c : in) {
    int d = val_of(c);
    if (d < 0) {
      if (c == '=') break;
      throw std::invalid_argument("base64: bad character");
    }
    val = (val << 6) + static_cast<unsigned>(d);
    bits += 6;
    if (bits >= 0) {
      out.push_back(static_cast<char>((val >> bits) & 0xff));
      bits -= 8;
    }
  }
  return out;
}

// ---- core data model ---------------------------------------------------------

struct Message {
  std::string bytes;

  std::size_t length() const { return bytes.size(); }
  friend bool operator==(const Message&, const Message&) = default;
  friend auto operator<=>(const Message&, const Message&) = default;
};

struct Aux {
  std::optional<std::string> session;  // session token label, challenger-rewritten
  std::optional<int> challenge;        // challenge number, challenger-only
  std::string free;                    // opaque bytes, part of the communication

  friend bool operator==(const Aux&, const Aux&) = default;
  friend auto operator<=>(const Aux&, const Aux&) = default;
};

struct Real {
  int sender = 0;    // index into the sender universe
  int receiver = 0;  // index into the receiver universe
  Message message;
  Aux aux;

  friend bool operator==(const Real&, const Real&) = default;
  friend auto operator<=>(const Real&, const Real&) = default;
};

// A communication is either a Real tuple or the empty communication.
struct Communication {
  std::optional<Real> real;

  bool is_empty() const { return !real.has_value(); }
  const Real& get() const { return *real; }
  Real& get() { return *real; }

  static Communication empty() { return Communication{}; }
  static Communication make(int sender, int receiver, std::string msg, Aux aux = {}) {
    return Communication{Real{sender, receiver, Message{std::move(msg)}, std::move(aux)}};
  }
  static Communication make(int sender, int receiver, Message msg, Aux aux = {}) {
    return Communication{Real{sender, receiver, std::move(msg), std::move(aux)}};
  }

  friend bool operator==(const Communication&, const Communication&) = default;
  friend auto operator<=>(const Communication&, const Communication&) = default;
};

using Batch = std::vector<Communication>;

// The adversary's move: one batch per (instance a, scenario b).
struct ChallengeBatchQuery {
  std::array<std::array<Batch, 2>, 2> batches;  // batches[a][b]

  const Batch& at(int a, int b) const { return batches[a][b]; }
  Batch& at(int a, int b) { return batches[a][b]; }

  std::size_t rows() const { return batches[0][0].size(); }
  bool well_formed() const {
    const std::size_t l = rows();
    return l >= 1 && batches[0][1].size() == l && batches[1][0].size() == l &&
           batches[1][1].size() == l;
  }

  friend bool operator==(const ChallengeBatchQuery&, const ChallengeBatchQuery&) = default;
};

// Convenience builder for the common case where both instances coincide.
inline ChallengeBatchQuery simple_query(Batch scenario0, Batch scenario1) {
  ChallengeBatchQuery q;
  q.batches[0][0] = scenario0;
  q.batches[1][0] = std::move(scenario0);
  q.batches[0][1] = scenario1;
  q.batches[1][1] = std::move(scenario1);
  return q;
}

// ---- challenge rows ----------------------------------------------------------

// A row is a challenge row iff the four communications at that index are not
// all identical.
inline std::vector<std::size_t> challenge_rows(const ChallengeBatchQuery& q) {
  if (!q.well_formed()) throw std::invalid_argument("challenge_rows: malformed query");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < q.rows(); ++j) {
    const Communication& c = q.at(0, 0)[j];
    if (!(q.at(0, 1)[j] == c && q.at(1, 0)[j] == c && q.at(1, 1)[j] == c)) out.push_back(j);
  }
  return out;
}

// Sender/receiver pair per instance, read from scenario 0 at the first
// challenge row; once a challenge has pairs they stay fixed.
struct FirstCrPairs {
  // by_instance[a] = (sender, receiver) of scenario 0 in instance a
  std::array<std::pair<int, int>, 2> by_instance;

  friend bool operator==(const FirstCrPairs&, const FirstCrPairs&) = default;
};

struct NoChallengeRowYet : std::runtime_error {
  NoChallengeRowYet() : std::runtime_error("no challenge row in this challenge yet") {}
};

inline FirstCrPairs first_challenge_row_pairs(const ChallengeBatchQuery& q,
                                              std::optional<FirstCrPairs> prior_state = {}) {
  if (prior_state) return *prior_state;
  const std::vector<std::size_t> cr = challenge_rows(q);
  for (std::size_t j : cr) {
    if (q.at(0, 0)[j].is_empty() || q.at(1, 0)[j].is_empty()) continue;
    FirstCrPairs pairs;
    for (int a = 0; a < 2; ++a) {
      const Real& r = q.at(a, 0)[j].get();
      pairs.by_instance[a] = {r.sender, r.receiver};
    }
    return pairs;
  }
  throw NoChallengeRowYet{};
}

// ---- JSON wire format --------------------------------------------------------

inline json to_json(const Aux& aux) {
  json j = json::object();
  if (aux.session) j["session"] = *aux.session;
  if (aux.challenge) j["challenge"] = *aux.challenge;
  if (!aux.free.empty()) j["free"] = base64_encode(aux.free);
  return j;
}

inline Aux aux_from_json(const json& j) {
  Aux aux;
  if (j.contains("session")) aux.session = j.at("session").get<std::string>();
  if (j.contains("challenge")) aux.challenge = j.at("challenge").get<int>();
  if (j.contains("free")) aux.free = base64_decode(j.at("free").get<std::string>());
  return aux;
}

inline json to_json(const Communication& c) {
  if (c.is_empty()) return json("empty");
  const Real& r = c.get();
  json j = {{"s", r.sender}, {"r", r.receiver}, {"m", base64_encode(r.message.bytes)}};
  json aux = to_json(r.aux);
  if (!aux.empty()) j["aux"] = aux;
  return j;
}

inline Communication communication_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "empty") return Communication::empty();
    throw std::invalid_argument("communication: expected \"empty\" or object");
  }
  Real r;
  r.sender = j.at("s").get<int>();
  r.receiver = j.at("r").get<int>();
  r.message.bytes = base64_decode(j.at("m").get<std::string>());
  if (j.contains("aux")) r.aux = aux_from_json(j.at("aux"));
  return Communication{std::move(r)};
}

inline json to_json(const Batch& b) {
  json j = json::array();
  for (const Communication& c : b) j.push_back(to_json(c));
  return j;
}

inline Batch batch_from_json(const json& j) {
  Batch b;
  for (const json& e : j) b.push_back(communication_from_json(e));
  return b;
}

inline json to_json(const ChallengeBatchQuery& q) {
  return json{{"batches",
               json::array({json::array({to_json(q.at(0, 0)), to_json(q.at(0, 1))}),
                            json::array({to_json(q.at(1, 0)), to_json(q.at(1, 1))})})}};
}

inline ChallengeBatchQuery query_from_json(const json& j) {
  ChallengeBatchQuery q;
  const json& arr = j.at("batches");
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) q.at(a, b) = batch_from_json(arr.at(a).at(b));
  return q;
}

}  // namespace notionlab
