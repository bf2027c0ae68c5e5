#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "helpers.hpp"

using namespace merlin;

namespace {
// independent oracle: memoized recursion on suffixes
std::size_t oracle(const std::string& a, const std::string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t r = std::min({go(i + 1, j) + 1, go(i, j + 1) + 1, go(i + 1, j + 1) + (a[i] != b[j])});
    return memo[key] = r;
  };
  return go(0, 0);
}

std::vector<std::string> all_strings(const std::string& alpha, std::size_t max_len) {
  std::vector<std::string> out = {""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < max_len)
      for (char c : alpha) out.push_back(out[i] + c);
  return out;
}
}  // namespace

TEST(Levenshtein, DpMatchesOracle) {
  auto xs = all_strings("abc", 4);
  for (const auto& a : xs)
    for (const auto& b : xs) ASSERT_EQ(levenshtein(a, b), oracle(a, b)) << a << " / " << b;
}

TEST(Levenshtein, CappedIsMinOfDistanceAndCap) {
  auto xs = all_strings("ab", 5);
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (std::size_t cap = 0; cap <= 4; ++cap)
        ASSERT_EQ(levenshtein_capped(a, b, cap), std::min(levenshtein(a, b), cap)) << a << " / " << b;
}

TEST(Automaton, MatchesDpOnSmallSpace) {
  auto targets = all_strings("abc", 3);
  auto inputs = all_strings("abcd", 4);  // 'd' never occurs in targets
  for (std::uint32_t r = 1; r <= 4; ++r)
    for (const auto& t : targets) {
      LevenshteinAutomaton a(t, r);
      for (const auto& s : inputs) {
        std::size_t d = levenshtein(s, t);
        ASSERT_EQ(a.accepts(s), d < r) << t << " " << s << " r=" << r;
        ASSERT_EQ(a.capped_distance(s), std::min<std::size_t>(d, r));
      }
    }
}

TEST(Automaton, StateCountIndependentOfInputAlphabet) {
  LevenshteinAutomaton a("kitten", 2);
  EXPECT_GT(a.num_states(), 1u);
  EXPECT_EQ(a.capped_distance("sitting"), 2u);
  EXPECT_EQ(a.capped_distance("kitten"), 0u);
  EXPECT_EQ(a.capped_distance("\x01\x02"), 2u);
}
