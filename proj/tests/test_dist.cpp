#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boundinfo/dist.hpp"
#include "boundinfo/json_io.hpp"
#include "boundinfo/tables.hpp"

#include <set>

using namespace boundinfo;
using dist::Entry;
using dist::JointDistribution;
using dist::OutcomeRef;
using dist::RegisterSpec;

namespace {

const std::vector<std::string> kBit{"0", "1"};

JointDistribution coin(const std::string& name, const std::string& owner) {
  return dist::make_distribution({{name, kBit, owner}},
                                 {{{"0"}, Rat(1, 2)}, {{"1"}, Rat(1, 2)}});
}

}  // namespace

TEST_CASE("make_distribution validates its inputs") {
  auto d = tables::smolin_table();
  CHECK(d.table().size() == 8);
  for (const auto& [o, p] : d.table()) CHECK(p == Rat(1, 8));

  auto point = dist::make_distribution({{"X", kBit, "X"}},
                                       {{{"1"}, Rat(1)}});
  CHECK(point.table().size() == 1);

  std::vector<RegisterSpec> regs{{"X", {"a", "b", "c", "d",
                                        "e", "f", "g", "h"}, "X"}};
  std::vector<Entry> bad;
  for (const auto& s : regs[0].alphabet) bad.push_back({{s}, Rat(1, 7)});
  CHECK_THROWS_AS(dist::make_distribution(regs, bad), NormalizationError);

  CHECK_THROWS_AS(
      dist::make_distribution({{"X", kBit, "X"}, {"X", kBit, "X"}},
                              {{{"0", "0"}, Rat(1)}}),
      NameCollisionError);
  CHECK_THROWS_AS(dist::make_distribution({{"X", {}, "X"}}, {}),
                  AlphabetError);
  CHECK_THROWS_AS(
      dist::make_distribution(
          {{"X", kBit, "X"}},
          {{{"0"}, Rat(1, 2)}, {{"1"}, Rat(1, 2)}, {{"0"}, Rat(0)}}),
      Error);  // duplicate outcome
}

TEST_CASE("product composes independent distributions") {
  auto two_copy = dist::product(tables::compact_table(1),
                                tables::compact_table(2));
  CHECK(dist::matches_marginal(two_copy, tables::prob1_table()));

  auto d = tables::smolin_table();
  auto point = dist::make_distribution({{"P", kBit, "P"}},
                                       {{{"1"}, Rat(1)}});
  auto ext = dist::product(d, point);
  CHECK(ext.registers().size() == 6);
  CHECK(dist::matches_marginal(ext, d));

  auto c = coin("F", "F");
  auto prod = dist::product(d, c);
  CHECK(dist::matches_marginal(prod, d));
  CHECK(dist::matches_marginal(prod, c));

  CHECK_THROWS_AS(dist::product(d, d), NameCollisionError);
}

TEST_CASE("marginalize sums rows exactly") {
  auto d = tables::smolin_table();
  auto ac = dist::marginalize(d, {"A", "C"});
  CHECK(ac.table().size() == 4);
  for (const auto& [o, p] : ac.table()) CHECK(p == Rat(1, 4));

  auto eve = dist::marginalize(d, {"EVE"});
  CHECK(eve.table().size() == 4);
  for (const auto& [o, p] : eve.table()) CHECK(p == Rat(1, 4));

  std::set<std::string> all{"A", "C", "B", "D", "EVE"};
  CHECK(dist::table_equal(dist::marginalize(d, all), d));

  CHECK_THROWS_AS(dist::marginalize(d, {"A", "NOPE"}), UnknownRegisterError);
}

TEST_CASE("post_select conditions and reports acceptance") {
  auto d = tables::smolin_table();
  auto eq = dist::post_select(
      d, [](const OutcomeRef& o) { return o["B"] == o["D"]; });
  CHECK(eq.acceptance == Rat(1, 2));
  CHECK(dist::table_equal(eq.dist, tables::unlock_table()));

  auto all = dist::post_select(d, [](const OutcomeRef&) { return true; });
  CHECK(all.acceptance == Rat(1));
  CHECK(dist::table_equal(all.dist, d));

  CHECK_THROWS_AS(
      dist::post_select(d, [](const OutcomeRef& o) { return o["A"] != o["A"]; }),
      ZeroProbabilityError);
}

TEST_CASE("apply_local_function appends a computed register") {
  auto d = tables::smolin_table();
  auto copied = dist::apply_local_function(
      d, "A", {"A"}, [](const std::vector<std::string>& in) { return in[0]; },
      "A2", kBit);
  for (const auto& [o, p] : copied.table()) {
    (void)p;
    CHECK(copied.symbol(o, "A") == copied.symbol(o, "A2"));
  }

  // Alice cannot compute from Bob's register.
  CHECK_THROWS_AS(
      dist::apply_local_function(
          d, "A", {"B"},
          [](const std::vector<std::string>& in) { return in[0]; }, "X", kBit),
      OwnershipError);
  CHECK_THROWS_AS(
      dist::apply_local_function(
          d, "A", {"A"},
          [](const std::vector<std::string>& in) { return in[0]; }, "A", kBit),
      NameCollisionError);
}

TEST_CASE("announce moves a register into Eve's view") {
  auto d = tables::smolin_table();
  auto parity = dist::apply_local_function(
      d, "A", {"A"},
      [](const std::vector<std::string>& in) { return in[0]; }, "P", kBit);
  auto announced = dist::announce(parity, "P");
  CHECK(announced.reg("P").is_public());
  auto view = announced.eve_view();
  CHECK(std::find(view.begin(), view.end(), "P") != view.end());
  // Honest marginals unchanged.
  CHECK(dist::matches_marginal(announced, d));
}

TEST_CASE("one-time pad: ciphertext public, plaintext correlation intact") {
  // msg (with a copy), a shared sbit key, pad announced.
  auto msg = dist::make_distribution(
      {{"M", kBit, "S"}, {"Mcopy", kBit, "S"}},
      {{{"0", "0"}, Rat(1, 2)}, {{"1", "1"}, Rat(1, 2)}});
  auto key = dist::make_distribution(
      {{"K1", kBit, "S"}, {"K2", kBit, "R"}},
      {{{"0", "0"}, Rat(1, 2)}, {{"1", "1"}, Rat(1, 2)}});
  auto d = dist::product(msg, key);
  auto xor2 = [](const std::vector<std::string>& in) {
    return in[0] == in[1] ? std::string("0") : std::string("1");
  };
  d = dist::apply_local_function(d, "S", {"M", "K1"}, xor2, "PAD", kBit);
  d = dist::announce(d, "PAD");
  d = dist::apply_local_function(d, "R", {"PAD", "K2"}, xor2, "OUT", kBit);

  CHECK(dist::is_sbit(d, "Mcopy", "OUT"));
  CHECK_FALSE(dist::is_sbit(d, "M", "PAD"));  // ciphertext is public
}

TEST_CASE("permute_check compares under a register bijection") {
  auto d = tables::smolin_table();
  CHECK(dist::permute_check(d, d,
                            {{"A", "B"}, {"B", "A"}, {"C", "D"},
                             {"D", "C"}, {"EVE", "EVE"}}));
  CHECK(dist::permute_check(d, d,
                            {{"A", "A"}, {"B", "B"}, {"C", "C"},
                             {"D", "D"}, {"EVE", "EVE"}}));
  CHECK_FALSE(dist::permute_check(
      d, tables::unlock_table(),
      {{"A", "A"}, {"B", "B"}, {"C", "C"}, {"D", "D"}, {"EVE", "EVE"}}));
  CHECK(dist::permute_check(
      tables::compact_table(1), tables::smolin_table(),
      {{"A1", "A"}, {"C1", "C"}, {"B1", "B"}, {"D", "D"}, {"EVE1", "EVE"}}));
}

TEST_CASE("is_sbit demands perfect correlation and Eve independence") {
  CHECK(dist::is_sbit(tables::unlock_table(), "A", "C"));
  CHECK_FALSE(dist::is_sbit(tables::smolin_table(), "A", "C"));

  auto coins = dist::product(coin("X", "X"), coin("Y", "Y"));
  CHECK_FALSE(dist::is_sbit(coins, "X", "Y"));

  // Perfectly correlated pair fully copied into an Eve register.
  auto leaked = dist::make_distribution(
      {{"X", kBit, "X"}, {"Y", kBit, "Y"}, {"E", kBit, dist::kEve}},
      {{{"0", "0", "0"}, Rat(1, 2)}, {{"1", "1", "1"}, Rat(1, 2)}});
  CHECK_FALSE(dist::is_sbit(leaked, "X", "Y"));
}

TEST_CASE("is_multipartite_sbit reduces to is_sbit for two parties") {
  auto u = tables::unlock_table();
  CHECK(dist::is_multipartite_sbit(u, {"A", "C"}) == dist::is_sbit(u, "A", "C"));
  auto s = tables::smolin_table();
  CHECK(dist::is_multipartite_sbit(s, {"A", "C"}) == dist::is_sbit(s, "A", "C"));
  auto ghz3 = dist::make_distribution(
      {{"X", kBit, "X"}, {"Y", kBit, "Y"}, {"Z", kBit, "Z"}},
      {{{"0", "0", "0"}, Rat(1, 2)}, {{"1", "1", "1"}, Rat(1, 2)}});
  CHECK(dist::is_multipartite_sbit(ghz3, {"X", "Y", "Z"}));
}

TEST_CASE("reorder, rename and reown") {
  auto d = tables::unlock_table();
  auto r = dist::reorder(d, {"EVE", "D", "B", "C", "A"});
  CHECK(r.registers()[0].name == "EVE");
  CHECK(dist::matches_marginal(r, d));

  auto renamed = dist::rename(d, {{"A", "Alice"}});
  CHECK(renamed.has_register("Alice"));
  CHECK_FALSE(renamed.has_register("A"));

  auto owned = dist::reown(d, "A", "B+D");
  CHECK(owned.reg("A").owner == "B+D");
}

TEST_CASE("JSON and CSV serialization round-trip") {
  auto d = tables::smolin_table();
  auto j = io::dist_to_json(d);
  auto back = io::dist_from_json(j);
  CHECK(dist::table_equal(back, d));
  for (std::size_t i = 0; i < d.registers().size(); ++i)
    CHECK(back.registers()[i].owner == d.registers()[i].owner);

  auto csv = io::dist_to_csv(d);
  CHECK(csv.substr(0, csv.find('\n')) == "A,C,B,D,EVE,p");
  // 8 rows + header
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}
