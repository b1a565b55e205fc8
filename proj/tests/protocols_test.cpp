#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <notionlab/protocols.hpp>

using namespace notionlab;

namespace {

Batch hand_batch() {
  Batch b;
  b.push_back(Communication::make(0, 1, Message{"ab"}));
  b.push_back(Communication::empty());
  b.push_back(Communication::make(2, 1, Message{"a"}));
  return b;
}

std::set<LeakageFunction> all_leaks() {
  std::set<LeakageFunction> out;
  for (const auto& [k, n] : leakage_names()) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("leakage names round-trip") {
  CHECK(leakage_names().size() == 19);
  for (const auto& [k, n] : leakage_names()) CHECK(leakage_from_name(leakage_name(k)) == k);
  CHECK_THROWS_AS(leakage_from_name("no_such_leak"), std::invalid_argument);
}

TEST_CASE("leaky ideal emits canonical encodings") {
  LeakyIdeal proto(all_leaks());
  proto.reset(7);
  const json obs = proto.on_batch(hand_batch());

  CHECK(obs.at("active_senders") == json::array({0, 2}));
  CHECK(obs.at("active_receivers") == json::array({1}));
  CHECK(obs.at("sender_freqs") == json::parse("[[0,1],[2,1]]"));
  CHECK(obs.at("receiver_freqs") == json::parse("[[1,2]]"));
  CHECK(obs.at("sender_count") == 2);
  CHECK(obs.at("receiver_count") == 1);
  CHECK(obs.at("sender_histogram") == json::parse("[[1,2]]"));
  CHECK(obs.at("receiver_histogram") == json::parse("[[2,1]]"));
  CHECK(obs.at("sender_partition") == json::parse(R"([["a"],["ab"]])"));
  CHECK(obs.at("receiver_partition") == json::parse(R"([["a","ab"]])"));
  CHECK(obs.at("message_lengths") == json::parse("[2,null,1]"));
  CHECK(obs.at("message_contents") ==
        json::array({base64_encode("a"), base64_encode("ab")}));
  CHECK(obs.at("sender_message_pairs") ==
        json::array({json::array({0, base64_encode("ab")}), json::array({2, base64_encode("a")})}));
  CHECK(obs.at("receiver_message_pairs") ==
        json::array({json::array({1, base64_encode("a")}), json::array({1, base64_encode("ab")})}));
  CHECK(obs.at("sender_receiver_pairs") == json::parse("[[0,1],[2,1]]"));
  CHECK(obs.at("comm_count") == 2);
  CHECK(obs.at("first_row_sender_receiver") == json::array({0, 1}));
  CHECK(obs.at("first_row_sender_message_length") == json::array({0, 2}));
  CHECK(obs.at("first_row_receiver") == json::array({1}));
}

TEST_CASE("leaky ideal with no leaks emits empty observations") {
  LeakyIdeal proto({});
  proto.reset(0);
  CHECK(proto.on_batch(hand_batch()) == json::object());
  CHECK(proto.user_state(0) == "");
}

TEST_CASE("first-row leaks freeze on the first real communication of the game") {
  LeakyIdeal proto({LeakageFunction::FirstRowReceiver});
  proto.reset(0);

  Batch empty_only;
  empty_only.push_back(Communication::empty());
  CHECK(proto.on_batch(empty_only).at("first_row_receiver").is_null());

  Batch first;
  first.push_back(Communication::empty());
  first.push_back(Communication::make(4, 9, Message{"x"}));
  CHECK(proto.on_batch(first).at("first_row_receiver") == json::array({9}));

  Batch later;
  later.push_back(Communication::make(5, 3, Message{"y"}));
  CHECK(proto.on_batch(later).at("first_row_receiver") == json::array({9}));

  proto.reset(0);
  CHECK(proto.on_batch(later).at("first_row_receiver") == json::array({3}));
}

TEST_CASE("leaky ideal answers dump-config and rejects other payloads") {
  LeakyIdeal proto({LeakageFunction::CommCount, LeakageFunction::ActiveSenders});
  proto.reset(0);
  auto reply = proto.on_protocol_query("dump-config");
  REQUIRE(reply.has_value());
  CHECK(*reply == json::array({"active_senders", "comm_count"}));
  CHECK_FALSE(proto.on_protocol_query("anything-else").has_value());
}

TEST_CASE("twisted pair follows the fixed two-row table") {
  TwistedPair proto;
  proto.reset(11);

  auto row = [](int u, const char* m) { return Communication::make(u, 0, Message{m}); };
  auto bit = [&](Communication a, Communication b) {
    Batch batch{a, b};
    const json obs = proto.on_batch(batch);
    REQUIRE(obs.contains("bit"));
    return obs.at("bit").get<int>();
  };

  CHECK(bit(row(0, "a"), row(1, "b")) == 0);
  CHECK(bit(row(1, "b"), row(0, "a")) == 0);
  CHECK(bit(row(1, "a"), row(0, "b")) == 1);
  CHECK(bit(row(0, "b"), row(1, "a")) == 1);
  CHECK(bit(row(0, "a"), row(0, "a")) == 1);
  CHECK(bit(row(1, "b"), row(1, "b")) == 1);
  CHECK(bit(row(1, "a"), row(1, "a")) == 0);
  CHECK(bit(row(0, "b"), row(0, "b")) == 0);
}

TEST_CASE("twisted pair link variants key the table off other field pairs") {
  auto bit = [](TwistedPair& proto, Communication a, Communication b) {
    Batch batch{a, b};
    const json obs = proto.on_batch(batch);
    REQUIRE(obs.contains("bit"));
    return obs.at("bit").get<int>();
  };

  TwistedPair sr(PairLink::SenderReceiver);
  sr.reset(11);
  auto srrow = [](int u, int r) { return Communication::make(u, r, Message{"m"}); };
  CHECK(bit(sr, srrow(0, 0), srrow(1, 1)) == 0);
  CHECK(bit(sr, srrow(1, 1), srrow(0, 0)) == 0);
  CHECK(bit(sr, srrow(1, 0), srrow(0, 1)) == 1);
  CHECK(bit(sr, srrow(0, 1), srrow(1, 0)) == 1);
  CHECK(bit(sr, srrow(0, 0), srrow(0, 0)) == 1);
  CHECK(bit(sr, srrow(1, 1), srrow(1, 1)) == 1);
  CHECK(bit(sr, srrow(1, 0), srrow(1, 0)) == 0);
  CHECK(bit(sr, srrow(0, 1), srrow(0, 1)) == 0);

  TwistedPair rm(PairLink::ReceiverMessage);
  rm.reset(11);
  auto rmrow = [](int r, const char* m) { return Communication::make(3, r, Message{m}); };
  CHECK(bit(rm, rmrow(0, "a"), rmrow(1, "b")) == 0);
  CHECK(bit(rm, rmrow(1, "b"), rmrow(0, "a")) == 0);
  CHECK(bit(rm, rmrow(1, "a"), rmrow(0, "b")) == 1);
  CHECK(bit(rm, rmrow(0, "b"), rmrow(1, "a")) == 1);
  CHECK(bit(rm, rmrow(0, "a"), rmrow(0, "a")) == 1);
  CHECK(bit(rm, rmrow(1, "b"), rmrow(1, "b")) == 1);
  CHECK(bit(rm, rmrow(1, "a"), rmrow(1, "a")) == 0);
  CHECK(bit(rm, rmrow(0, "b"), rmrow(0, "b")) == 0);

  TwistedPair sm(PairLink::SenderMessage);
  sm.reset(11);
  CHECK(bit(sm, Communication::make(0, 7, Message{"a"}), Communication::make(1, 9, Message{"b"})) ==
        0);
}

TEST_CASE("twisted pair is silent outside two-row batches and random otherwise") {
  TwistedPair proto;
  proto.reset(3);

  Batch one{Communication::make(0, 0, Message{"a"})};
  CHECK(proto.on_batch(one) == json::object());
  Batch three{Communication::make(0, 0, Message{"a"}), Communication::make(1, 0, Message{"b"}),
              Communication::make(0, 0, Message{"b"})};
  CHECK(proto.on_batch(three) == json::object());

  Batch offtable{Communication::make(2, 0, Message{"a"}), Communication::make(3, 0, Message{"b"})};
  Batch with_empty{Communication::empty(), Communication::make(0, 0, Message{"a"})};

  std::vector<int> run1, run2;
  proto.reset(3);
  for (int i = 0; i < 32; ++i) {
    run1.push_back(proto.on_batch(offtable).at("bit").get<int>());
    run1.push_back(proto.on_batch(with_empty).at("bit").get<int>());
  }
  proto.reset(3);
  for (int i = 0; i < 32; ++i) {
    run2.push_back(proto.on_batch(offtable).at("bit").get<int>());
    run2.push_back(proto.on_batch(with_empty).at("bit").get<int>());
  }
  CHECK(run1 == run2);
  CHECK(std::count(run1.begin(), run1.end(), 0) > 0);
  CHECK(std::count(run1.begin(), run1.end(), 1) > 0);

  proto.reset(4);
  std::vector<int> other_seed;
  for (int i = 0; i < 32; ++i) {
    other_seed.push_back(proto.on_batch(offtable).at("bit").get<int>());
    other_seed.push_back(proto.on_batch(with_empty).at("bit").get<int>());
  }
  CHECK(other_seed != run1);
}

TEST_CASE("protocol factory builds models from descriptors") {
  const json leaky = json::parse(R"({"kind":"leaky","leaks":["comm_count","active_senders"]})");
  auto p1 = make_protocol(leaky);
  CHECK(p1->descriptor().at("kind") == "leaky");
  CHECK(p1->descriptor().at("leaks") == json::array({"active_senders", "comm_count"}));

  auto p2 = make_protocol(json{{"kind", "twisted_pair"}});
  CHECK(p2->descriptor() == json{{"kind", "twisted_pair"}, {"link", "sender_message"}});

  auto p4 = make_protocol(json{{"kind", "twisted_pair"}, {"link", "receiver_message"}});
  CHECK(p4->descriptor() == json{{"kind", "twisted_pair"}, {"link", "receiver_message"}});

  CHECK_THROWS_AS(make_protocol(json{{"kind", "mystery"}}), std::invalid_argument);
  CHECK_THROWS_AS(make_protocol(json{{"kind", "twisted_pair"}, {"link", "mystery"}}),
                  std::invalid_argument);

  auto p3 = make_protocol(p1->descriptor());
  CHECK(p3->descriptor() == p1->descriptor());
}
