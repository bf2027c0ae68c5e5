#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace merlin {

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> col(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) col[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = col[0];
    col[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = col[j];
      col[j] = std::min({col[j] + 1, col[j - 1] + 1, diag + (a[i - 1] != b[j - 1] ? 1 : 0)});
      diag = up;
    }
  }
  return col[b.size()];
}

// Banded variant: exact when the distance is below cap, otherwise returns cap.
inline std::size_t levenshtein_capped(std::string_view a, std::string_view b, std::size_t cap) {
  std::size_t la = a.size(), lb = b.size();
  if ((la > lb ? la - lb : lb - la) >= cap) return cap;
  std::vector<std::size_t> col(lb + 1);
  for (std::size_t j = 0; j <= lb; ++j) col[j] = std::min(j, cap);
  for (std::size_t i = 1; i <= la; ++i) {
    std::size_t diag = col[0];
    col[0] = std::min(i, cap);
    std::size_t best = col[0];
    for (std::size_t j = 1; j <= lb; ++j) {
      std::size_t up = col[j];
      col[j] = std::min({col[j] + 1, col[j - 1] + 1, diag + (a[i - 1] != b[j - 1] ? 1 : 0), cap});
      diag = up;
      best = std::min(best, col[j]);
    }
    if (best >= cap) return cap;
  }
  return col[lb];
}

// Deterministic automaton accepting the strings within Levenshtein distance
// < r of a fixed target. States are DP columns with entries capped at r;
// characters absent from the target share one transition class.
class LevenshteinAutomaton {
 public:
  static constexpr std::uint32_t kMaxRadius = 4;

  LevenshteinAutomaton(std::string target, std::uint32_t r) : target_(std::move(target)), r_(r) {
    if (r == 0 || r > kMaxRadius) throw std::invalid_argument("automaton radius must be in 1..4");
    class_of_.fill(0);
    for (unsigned char c : target_)
      if (class_of_[c] == 0) {
        reps_.push_back(static_cast<char>(c));
        class_of_[c] = static_cast<std::uint16_t>(reps_.size());
      }
    std::size_t n = target_.size();
    Column init(n + 1);
    for (std::size_t j = 0; j <= n; ++j) init[j] = static_cast<std::uint8_t>(std::min<std::size_t>(j, r_));
    intern(init);
    for (std::size_t s = 0; s < states_.size(); ++s) {
      for (std::size_t cls = 0; cls <= reps_.size(); ++cls) {
        // class 0 stands for any character not in the target
        int ch = cls == 0 ? -1 : static_cast<unsigned char>(reps_[cls - 1]);
        Column next = step_column(states_[s], ch);
        delta_.push_back(intern(next));
      }
    }
  }

  std::uint32_t radius() const { return r_; }
  const std::string& target() const { return target_; }
  std::size_t num_states() const { return states_.size(); }
  std::uint32_t start() const { return 0; }

  std::uint32_t step(std::uint32_t state, char c) const {
    return delta_[state * (reps_.size() + 1) + class_of_[static_cast<unsigned char>(c)]];
  }
  // min(distance, r) for the string that led to this state
  std::uint32_t value(std::uint32_t state) const { return states_[state].back(); }
  bool accepting(std::uint32_t state) const { return value(state) < r_; }

  std::uint32_t capped_distance(std::string_view s) const {
    std::uint32_t q = start();
    for (char c : s) q = step(q, c);
    return value(q);
  }
  bool accepts(std::string_view s) const { return capped_distance(s) < r_; }

 private:
  using Column = std::vector<std::uint8_t>;

  Column step_column(const Column& old, int ch) const {
    std::size_t n = target_.size();
    Column nc(n + 1);
    nc[0] = static_cast<std::uint8_t>(std::min<std::uint32_t>(old[0] + 1u, r_));
    for (std::size_t j = 1; j <= n; ++j) {
      std::uint32_t sub = old[j - 1] + (static_cast<unsigned char>(target_[j - 1]) == ch ? 0u : 1u);
      std::uint32_t v = std::min({sub, old[j] + 1u, nc[j - 1] + 1u, r_});
      nc[j] = static_cast<std::uint8_t>(v);
    }
    return nc;
  }

  std::uint32_t intern(const Column& c) {
    auto [it, fresh] = ids_.emplace(c, static_cast<std::uint32_t>(states_.size()));
    if (fresh) states_.push_back(c);
    return it->second;
  }

  std::string target_;
  std::uint32_t r_;
  std::array<std::uint16_t, 256> class_of_{};
  std::string reps_;
  std::vector<Column> states_;
  std::map<Column, std::uint32_t> ids_;
  std::vector<std::uint32_t> delta_;
};

}  // namespace merlin
