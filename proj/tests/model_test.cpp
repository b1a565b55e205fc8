#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <notionlab/model.hpp>

using namespace notionlab;

namespace {

Communication comm(int s, int r, const char* m) { return Communication::make(s, r, m); }

ChallengeBatchQuery four(Batch b00, Batch b10, Batch b01, Batch b11) {
  ChallengeBatchQuery q;
  q.at(0, 0) = std::move(b00);
  q.at(1, 0) = std::move(b10);
  q.at(0, 1) = std::move(b01);
  q.at(1, 1) = std::move(b11);
  return q;
}

}  // namespace

TEST_CASE("challenge rows are empty when all four batches coincide") {
  Batch b = {comm(0, 0, "a"), comm(1, 1, "b")};
  ChallengeBatchQuery q = four(b, b, b, b);
  CHECK(challenge_rows(q).empty());
}

TEST_CASE("a scenario difference at one row yields exactly that row") {
  Batch b0 = {comm(0, 0, "a"), comm(1, 1, "b"), comm(0, 1, "c")};
  Batch b1 = b0;
  b1[2] = comm(1, 1, "c");
  ChallengeBatchQuery q = four(b0, b0, b1, b1);
  CHECK(challenge_rows(q) == std::vector<std::size_t>{2});
}

TEST_CASE("adjacent swapped-pair rows are both challenge rows") {
  // Two rows carrying the same message where scenario 1 mixes the pairs.
  Batch s0a0 = {comm(0, 0, "m"), comm(1, 1, "m")};
  Batch s0a1 = {comm(1, 1, "m"), comm(0, 0, "m")};
  Batch s1a0 = {comm(0, 1, "m"), comm(1, 0, "m")};
  Batch s1a1 = {comm(1, 0, "m"), comm(0, 1, "m")};
  ChallengeBatchQuery q = four(s0a0, s0a1, s1a0, s1a1);
  CHECK(challenge_rows(q) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("an instance-only difference counts as a challenge row") {
  Batch a0 = {comm(0, 0, "a")};
  Batch a1 = {comm(1, 0, "a")};
  ChallengeBatchQuery q = four(a0, a1, a0, a1);
  CHECK(challenge_rows(q) == std::vector<std::size_t>{0});
}

TEST_CASE("challenge rows are symmetric in the two scenarios") {
  Batch b0 = {comm(0, 0, "a"), Communication::empty()};
  Batch b1 = {comm(1, 0, "a"), comm(0, 0, "b")};
  ChallengeBatchQuery q = four(b0, b0, b1, b1);
  ChallengeBatchQuery swapped = four(b1, b1, b0, b0);
  CHECK(challenge_rows(q) == challenge_rows(swapped));
}

TEST_CASE("appending identical rows to all four batches preserves the row set") {
  Batch b0 = {comm(0, 0, "a")};
  Batch b1 = {comm(1, 0, "a")};
  ChallengeBatchQuery q = four(b0, b0, b1, b1);
  auto before = challenge_rows(q);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) q.at(a, b).push_back(comm(1, 1, "z"));
  CHECK(challenge_rows(q) == before);
}

TEST_CASE("unequal batch lengths are rejected") {
  Batch b0 = {comm(0, 0, "a")};
  Batch b1 = {comm(0, 0, "a"), comm(1, 1, "b")};
  ChallengeBatchQuery q = four(b0, b0, b1, b1);
  CHECK_THROWS_AS(challenge_rows(q), std::invalid_argument);
}

TEST_CASE("first challenge row pairs read scenario 0 per instance") {
  Batch s0a0 = {comm(0, 0, "m")};
  Batch s0a1 = {comm(1, 1, "m")};
  Batch s1a0 = {comm(0, 1, "m")};
  Batch s1a1 = {comm(1, 0, "m")};
  ChallengeBatchQuery q = four(s0a0, s0a1, s1a0, s1a1);
  FirstCrPairs p = first_challenge_row_pairs(q);
  CHECK(p.by_instance[0] == std::pair<int, int>{0, 0});
  CHECK(p.by_instance[1] == std::pair<int, int>{1, 1});
}

TEST_CASE("stored pairs win over a later query's first row") {
  FirstCrPairs stored{{{{7, 8}, {9, 10}}}};
  Batch b0 = {comm(0, 0, "m")};
  Batch b1 = {comm(1, 0, "m")};
  ChallengeBatchQuery q = four(b0, b0, b1, b1);
  CHECK(first_challenge_row_pairs(q, stored) == stored);
}

TEST_CASE("a query without differing rows has no pairs") {
  Batch b = {comm(0, 0, "m")};
  ChallengeBatchQuery q = four(b, b, b, b);
  CHECK_THROWS_AS(first_challenge_row_pairs(q), NoChallengeRowYet);
}

TEST_CASE("the empty communication is not equal to any real one") {
  CHECK(Communication::empty() == Communication::empty());
  CHECK(Communication::empty() != comm(0, 0, ""));
}

TEST_CASE("json round-trips the empty and real communications") {
  Communication e = Communication::empty();
  CHECK(to_json(e) == json("empty"));
  CHECK(communication_from_json(to_json(e)) == e);

  Aux aux;
  aux.session = "t1";
  aux.challenge = 2;
  aux.free = std::string("\x00\x01tag", 5);
  Communication c = Communication::make(3, 4, std::string("\xffhello", 6), aux);
  json j = to_json(c);
  CHECK(j["s"] == 3);
  CHECK(j["r"] == 4);
  CHECK(communication_from_json(j) == c);
}

TEST_CASE("json round-trips a full query") {
  Batch b0 = {comm(0, 0, "a"), Communication::empty()};
  Batch b1 = {comm(1, 0, "a"), comm(0, 1, "b")};
  ChallengeBatchQuery q = four(b0, b0, b1, b1);
  CHECK(query_from_json(to_json(q)) == q);
}

TEST_CASE("base64 round-trips arbitrary bytes") {
  std::string all;
  for (int i = 0; i < 256; ++i) all.push_back(static_cast<char>(i));
  CHECK(base64_decode(base64_encode(all)) == all);
  CHECK(base64_encode("") == "");
  CHECK(base64_decode("") == "");
}

TEST_CASE("rng streams are reproducible and seed-sensitive") {
  Rng a(42), b(42), c(43);
  std::uint64_t va = a.u64();
  CHECK(va == b.u64());
  CHECK(va != c.u64());
  Rng d(7);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = d.below(5);
    CHECK(x < 5);
  }
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
}
