#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <notionlab/model.hpp>

namespace notionlab {

enum class LeakageFunction {
  ActiveSenders,
  ActiveReceivers,
  SenderFreqs,
  ReceiverFreqs,
  SenderCount,
  ReceiverCount,
  SenderHistogram,
  ReceiverHistogram,
  SenderPartition,
  ReceiverPartition,
  MessageLengths,
  MessageContents,
  SenderMessagePairs,
  ReceiverMessagePairs,
  SenderReceiverPairs,
  CommCount,
  FirstRowSenderReceiver,
  FirstRowSenderMessageLength,
  FirstRowReceiver,
  FirstRowSender,
};

inline const std::vector<std::pair<LeakageFunction, const char*>>& leakage_names() {
  static const std::vector<std::pair<LeakageFunction, const char*>> names = {
      {LeakageFunction::ActiveSenders, "active_senders"},
      {LeakageFunction::ActiveReceivers, "active_receivers"},
      {LeakageFunction::SenderFreqs, "sender_freqs"},
      {LeakageFunction::ReceiverFreqs, "receiver_freqs"},
      {LeakageFunction::SenderCount, "sender_count"},
      {LeakageFunction::ReceiverCount, "receiver_count"},
      {LeakageFunction::SenderHistogram, "sender_histogram"},
      {LeakageFunction::ReceiverHistogram, "receiver_histogram"},
      {LeakageFunction::SenderPartition, "sender_partition"},
      {LeakageFunction::ReceiverPartition, "receiver_partition"},
      {LeakageFunction::MessageLengths, "message_lengths"},
      {LeakageFunction::MessageContents, "message_contents"},
      {LeakageFunction::SenderMessagePairs, "sender_message_pairs"},
      {LeakageFunction::ReceiverMessagePairs, "receiver_message_pairs"},
      {LeakageFunction::SenderReceiverPairs, "sender_receiver_pairs"},
      {LeakageFunction::CommCount, "comm_count"},
      {LeakageFunction::FirstRowSenderReceiver, "first_row_sender_receiver"},
      {LeakageFunction::FirstRowSenderMessageLength, "first_row_sender_message_length"},
      {LeakageFunction::FirstRowReceiver, "first_row_receiver"},
      {LeakageFunction::FirstRowSender, "first_row_sender"},
  };
  return names;
}

inline std::string leakage_name(LeakageFunction f) {
  for (const auto& [k, n] : leakage_names())
    if (k == f) return n;
  throw std::invalid_argument("unknown leakage function");
}

inline LeakageFunction leakage_from_name(const std::string& name) {
  for (const auto& [k, n] : leakage_names())
    if (name == n) return k;
  throw std::invalid_argument("unknown leakage function '" + name + "'");
}

// A protocol model consumes the batches selected by the challenger and emits one
// observation per query. Implementations must be deterministic given reset seed
// and input history.
class ProtocolModel {
 public:
  virtual ~ProtocolModel() = default;
  virtual void reset(std::uint64_t seed) = 0;
  virtual json on_batch(const Batch& batch) = 0;
  virtual std::optional<json> on_protocol_query(const std::string& payload) = 0;
  virtual std::string user_state(int user) = 0;
  virtual json descriptor() const = 0;
};

namespace detail {

inline json leak_value(LeakageFunction f, const Batch& batch,
                       const std::optional<Real>& first_row) {
  std::vector<const Real*> rows;
  for (const Communication& c : batch)
    if (!c.is_empty()) rows.push_back(&c.get());

  auto sorted_array = [](std::vector<json> items) {
    std::sort(items.begin(), items.end(),
              [](const json& a, const json& b) { return a.dump() < b.dump(); });
    return json(items);
  };
  auto freqs = [&](bool senders) {
    std::map<int, int> count;
    for (const Real* r : rows) ++count[senders ? r->sender : r->receiver];
    return count;
  };
  auto freq_pairs = [&](bool senders) {
    json out = json::array();
    for (const auto& [u, c] : freqs(senders)) out.push_back(json::array({u, c}));
    return out;
  };
  auto histogram = [&](bool senders) {
    std::map<int, int> hist;
    for (const auto& [u, c] : freqs(senders)) ++hist[c];
    json out = json::array();
    for (const auto& [c, users] : hist) out.push_back(json::array({c, users}));
    return out;
  };
  auto partition = [&](bool senders) {
    std::map<int, std::vector<std::string>> per_user;
    for (const Real* r : rows) per_user[senders ? r->sender : r->receiver].push_back(r->message.bytes);
    std::vector<json> parts;
    for (auto& [u, msgs] : per_user) {
      std::sort(msgs.begin(), msgs.end());
      parts.push_back(json(msgs));
    }
    return sorted_array(std::move(parts));
  };

  switch (f) {
    case LeakageFunction::ActiveSenders: {
      std::set<int> u;
      for (const Real* r : rows) u.insert(r->sender);
      return json(u);
    }
    case LeakageFunction::ActiveReceivers: {
      std::set<int> u;
      for (const Real* r : rows) u.insert(r->receiver);
      return json(u);
    }
    case LeakageFunction::SenderFreqs: return freq_pairs(true);
    case LeakageFunction::ReceiverFreqs: return freq_pairs(false);
    case LeakageFunction::SenderCount: return json(freqs(true).size());
    case LeakageFunction::ReceiverCount: return json(freqs(false).size());
    case LeakageFunction::SenderHistogram: return histogram(true);
    case LeakageFunction::ReceiverHistogram: return histogram(false);
    case LeakageFunction::SenderPartition: return partition(true);
    case LeakageFunction::ReceiverPartition: return partition(false);
    case LeakageFunction::MessageLengths: {
      json out = json::array();
      for (const Communication& c : batch) {
        if (c.is_empty()) out.push_back(nullptr);
        else out.push_back(c.get().message.length());
      }
      return out;
    }
    case LeakageFunction::MessageContents: {
      std::vector<json> msgs;
      for (const Real* r : rows) msgs.push_back(json(base64_encode(r->message.bytes)));
      return sorted_array(std::move(msgs));
    }
    case LeakageFunction::SenderMessagePairs: {
      std::vector<json> pairs;
      for (const Real* r : rows)
        pairs.push_back(json::array({r->sender, base64_encode(r->message.bytes)}));
      return sorted_array(std::move(pairs));
    }
    case LeakageFunction::ReceiverMessagePairs: {
      std::vector<json> pairs;
      for (const Real* r : rows)
        pairs.push_back(json::array({r->receiver, base64_encode(r->message.bytes)}));
      return sorted_array(std::move(pairs));
    }
    case LeakageFunction::SenderReceiverPairs: {
      std::vector<json> pairs;
      for (const Real* r : rows) pairs.push_back(json::array({r->sender, r->receiver}));
      return sorted_array(std::move(pairs));
    }
    case LeakageFunction::CommCount: return json(rows.size());
    case LeakageFunction::FirstRowSenderReceiver:
      if (!first_row) return json();
      return json::array({first_row->sender, first_row->receiver});
    case LeakageFunction::FirstRowSenderMessageLength:
      if (!first_row) return json();
      return json::array({first_row->sender, first_row->message.length()});
    case LeakageFunction::FirstRowReceiver:
      if (!first_row) return json();
      return json::array({first_row->receiver});
    case LeakageFunction::FirstRowSender:
      if (!first_row) return json();
      return json::array({first_row->sender});
  }
  return json();
}

}  // namespace detail

// Runs a perfect protocol and additionally outputs the selected leakage values of
// each batch, nothing else.
class LeakyIdeal final : public ProtocolModel {
 public:
  explicit LeakyIdeal(std::set<LeakageFunction> leaks) : leaks_(std::move(leaks)) {}

  void reset(std::uint64_t) override { first_row_.reset(); }

  json on_batch(const Batch& batch) override {
    if (!first_row_) {
      for (const Communication& c : batch) {
        if (!c.is_empty()) {
          first_row_ = c.get();
          break;
        }
      }
    }
    json obs = json::object();
    for (LeakageFunction f : leaks_) obs[leakage_name(f)] = detail::leak_value(f, batch, first_row_);
    return obs;
  }

  std::optional<json> on_protocol_query(const std::string& payload) override {
    if (payload == "dump-config") {
      json out = json::array();
      for (LeakageFunction f : leaks_) out.push_back(leakage_name(f));
      return out;
    }
    return std::nullopt;
  }

  std::string user_state(int) override { return ""; }

  json descriptor() const override {
    json leaks = json::array();
    for (LeakageFunction f : leaks_) leaks.push_back(leakage_name(f));
    return json{{"kind", "leaky"}, {"leaks", leaks}};
  }

  const std::set<LeakageFunction>& leaks() const { return leaks_; }

 private:
  std::set<LeakageFunction> leaks_;
  std::optional<Real> first_row_;
};

// Field pair whose twisting a TwistedPair instance reacts to.
enum class PairLink { SenderMessage, SenderReceiver, ReceiverMessage };

inline const char* pair_link_name(PairLink link) {
  switch (link) {
    case PairLink::SenderMessage: return "sender_message";
    case PairLink::SenderReceiver: return "sender_receiver";
    case PairLink::ReceiverMessage: return "receiver_message";
  }
  return "sender_message";
}

inline PairLink pair_link_from_name(const std::string& name) {
  if (name == "sender_message") return PairLink::SenderMessage;
  if (name == "sender_receiver") return PairLink::SenderReceiver;
  if (name == "receiver_message") return PairLink::ReceiverMessage;
  throw std::invalid_argument("unknown pair link '" + name + "'");
}

// Leaks nothing except an extra bit for two-row batches: fixed patterns over the
// designated values of the linked field pair decide the bit, any other two-row
// batch draws a seeded random bit, other batch sizes produce no extra output.
class TwistedPair final : public ProtocolModel {
 public:
  static constexpr int kU0 = 0;
  static constexpr int kU1 = 1;
  static constexpr const char* kM0 = "a";
  static constexpr const char* kM1 = "b";

  explicit TwistedPair(PairLink link = PairLink::SenderMessage) : link_(link), rng_(0) {}

  void reset(std::uint64_t seed) override { rng_ = Rng(derive_seed(seed, 0x7715713)); }

  json on_batch(const Batch& batch) override {
    if (batch.size() != 2) return json::object();
    return json{{"bit", bit_for(batch)}};
  }

  std::optional<json> on_protocol_query(const std::string& payload) override {
    if (payload == "dump-config") return json::array();
    return std::nullopt;
  }

  std::string user_state(int) override { return ""; }

  json descriptor() const override {
    return json{{"kind", "twisted_pair"}, {"link", pair_link_name(link_)}};
  }

 private:
  int bit_for(const Batch& batch) {
    const std::optional<int> fixed = table_bit(batch);
    if (fixed) return *fixed;
    return rng_.bit();
  }

  // Designated values: 0 and 1 on user-valued fields, "a" and "b" on the
  // message field. The second key component is stringified to cover both.
  std::pair<int, std::string> row_key(const Communication& c) const {
    const Real& r = c.get();
    switch (link_) {
      case PairLink::SenderMessage: return {r.sender, r.message.bytes};
      case PairLink::SenderReceiver: return {r.sender, std::to_string(r.receiver)};
      case PairLink::ReceiverMessage: return {r.receiver, r.message.bytes};
    }
    return {r.sender, r.message.bytes};
  }

  std::pair<std::string, std::string> designated_tokens() const {
    if (link_ == PairLink::SenderReceiver) return {"0", "1"};
    return {kM0, kM1};
  }

  std::optional<int> table_bit(const Batch& batch) const {
    if (batch[0].is_empty() || batch[1].is_empty()) return std::nullopt;
    const auto r1 = row_key(batch[0]);
    const auto r2 = row_key(batch[1]);
    const auto [t0, t1] = designated_tokens();
    const std::pair<int, std::string> u0m0{kU0, t0}, u0m1{kU0, t1}, u1m0{kU1, t0}, u1m1{kU1, t1};
    if (r1 == u0m0 && r2 == u1m1) return 0;
    if (r1 == u1m1 && r2 == u0m0) return 0;
    if (r1 == u1m0 && r2 == u0m1) return 1;
    if (r1 == u0m1 && r2 == u1m0) return 1;
    if (r1 == u0m0 && r2 == u0m0) return 1;
    if (r1 == u1m1 && r2 == u1m1) return 1;
    if (r1 == u1m0 && r2 == u1m0) return 0;
    if (r1 == u0m1 && r2 == u0m1) return 0;
    return std::nullopt;
  }

  PairLink link_;
  Rng rng_;
};

inline std::shared_ptr<ProtocolModel> make_protocol(const json& descriptor) {
  const std::string kind = descriptor.at("kind").get<std::string>();
  if (kind == "leaky") {
    std::set<LeakageFunction> leaks;
    for (const json& name : descriptor.value("leaks", json::array()))
      leaks.insert(leakage_from_name(name.get<std::string>()));
    return std::make_shared<LeakyIdeal>(std::move(leaks));
  }
  if (kind == "twisted_pair")
    return std::make_shared<TwistedPair>(
        pair_link_from_name(descriptor.value("link", "sender_message")));
  throw std::invalid_argument("unknown protocol kind '" + kind + "'");
}

}  // namespace notionlab
