#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "merlin/ast.hpp"
#include "merlin/orimetric.hpp"
#include "merlin/semantics.hpp"

namespace merlin {

// Learned programs are enumerated as cost-1 leaves, after the grammar's own
// leaves and in promotion order. Everything else costs its production's base
// size plus the costs of its children.
class CostModel {
 public:
  struct Promoted {
    Program program;
    NtMask nonterminals;
  };

  bool promote(const Program& p, NtMask nts) {
    if (nts == 0 || p.size() <= 1) return false;
    if (!index_.insert(p).second) return false;
    promoted_.push_back({p, nts});
    return true;
  }
  bool is_promoted(const Program& p) const { return index_.count(p) > 0; }
  std::span<const Promoted> promoted() const { return promoted_; }
  std::size_t size() const { return promoted_.size(); }

 private:
  std::vector<Promoted> promoted_;
  std::unordered_set<Program, ProgramHash> index_;
};

struct BankEntry {
  Program program;
  OutputVector outputs;
  std::uint32_t cost = 0;
  NtMask reps = 0;  // nonterminals this entry represents
};

using EntryId = std::uint32_t;

// Kept programs in enumeration order, grouped per nonterminal and cost.
class ProgramBank {
 public:
  ProgramBank(std::size_t n_nts, IndexSet equiv_indices)
      : j_(std::move(equiv_indices)), levels_(n_nts), members_(n_nts), equiv_(n_nts), by_first_(n_nts) {}

  const IndexSet& equiv_indices() const { return j_; }
  std::size_t size() const { return entries_.size(); }
  const BankEntry& operator[](EntryId id) const { return entries_[id]; }
  std::span<const BankEntry> entries() const { return entries_; }

  std::span<const EntryId> level(NonterminalId nt, std::uint32_t cost) const {
    const auto& lv = levels_[nt];
    if (cost >= lv.size()) return {};
    return lv[cost];
  }
  std::span<const EntryId> members(NonterminalId nt) const { return members_[nt]; }

  std::size_t key_hash(const OutputVector& out) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto k : j_) h = hash_combine(h, out[k].hash());
    return h;
  }

  // Nonterminals in nts that already hold a representative with equal outputs on J.
  NtMask represented(NtMask nts, const OutputVector& out, std::size_t h) const {
    NtMask hit = 0;
    for (std::size_t a = 0; a < equiv_.size(); ++a) {
      if (!(nts >> a & 1)) continue;
      auto [lo, hi] = equiv_[a].equal_range(h);
      for (auto it = lo; it != hi; ++it) {
        if (same_on_j(entries_[it->second].outputs, out)) {
          hit |= NtMask{1} << a;
          break;
        }
      }
    }
    return hit;
  }

  EntryId add(BankEntry e, std::size_t key) {
    auto id = static_cast<EntryId>(entries_.size());
    std::size_t first = e.outputs.empty() ? 0 : e.outputs[0].hash();
    for (std::size_t a = 0; a < levels_.size(); ++a) {
      if (!(e.reps >> a & 1)) continue;
      auto& lv = levels_[a];
      if (lv.size() <= e.cost) lv.resize(e.cost + 1);
      lv[e.cost].push_back(id);
      members_[a].push_back(id);
      equiv_[a].emplace(key, id);
      by_first_[a].emplace(first, id);
    }
    max_cost_ = std::max(max_cost_, e.cost);
    entries_.push_back(std::move(e));
    return id;
  }

  // Representatives of nt whose output on the first example equals v.
  template <class F>
  void for_first(NonterminalId nt, const Value& v, F f) const {
    auto [lo, hi] = by_first_[nt].equal_range(v.hash());
    for (auto it = lo; it != hi; ++it)
      if (entries_[it->second].outputs[0] == v) f(it->second);
  }

  std::uint32_t max_cost() const { return max_cost_; }

 private:
  bool same_on_j(const OutputVector& a, const OutputVector& b) const {
    for (auto k : j_)
      if (!(a[k] == b[k])) return false;
    return true;
  }

  IndexSet j_;
  std::vector<BankEntry> entries_;
  std::vector<std::vector<std::vector<EntryId>>> levels_;
  std::vector<std::vector<EntryId>> members_;
  std::vector<std::unordered_multimap<std::size_t, EntryId>> equiv_;
  std::vector<std::unordered_multimap<std::size_t, EntryId>> by_first_;
  std::uint32_t max_cost_ = 0;
};

struct SearchStats {
  std::uint64_t enumerated = 0;
  std::uint64_t kept = 0;
  std::uint64_t pruned_ball = 0;
  std::uint64_t pruned_equiv = 0;
  std::uint64_t eval_errors = 0;
  std::uint64_t deduction_hits = 0;
  std::vector<std::uint64_t> kept_per_cost;  // index = cost

  void add(const SearchStats& o) {
    enumerated += o.enumerated;
    kept += o.kept;
    pruned_ball += o.pruned_ball;
    pruned_equiv += o.pruned_equiv;
    eval_errors += o.eval_errors;
    deduction_hits += o.deduction_hits;
  }
};

struct PruneOptions {
  bool factorize = true;
  std::optional<Ball> ball;   // no ball: nothing pruned by distance
  SizeThreshold threshold;    // programs up to this cost are never pruned by distance
};

// Bottom-up enumeration by cost. Within a cost level, productions come in
// declaration order (learned programs after the grammar's leaves at cost 1)
// and argument tuples in lexicographic order of the arguments' ranks.
class Enumerator {
 public:
  enum class Status { Running, Exhausted, CostLimit, Interrupted };

  // Called after each finished level; return true to interrupt.
  using LevelHook = std::function<bool(std::uint32_t cost)>;

  Enumerator(const Grammar& g, const ExampleSet& ex, const LiftedOrimetric& metric, const CostModel& costs,
             PruneOptions prune, std::uint32_t max_cost = 64)
      : g_(g),
        ex_(ex),
        metric_(metric),
        costs_(costs),
        prune_(std::move(prune)),
        max_cost_(max_cost),
        bank_(g.nonterminals().size(), metric.indices()) {
    for (const auto& p : g_.productions()) {
      ProdInfo info;
      info.unit = p.rhs.is_unit();
      info.holes = p.rhs.hole_nonterminals();
      info.base = p.rhs.base_size();
      info.closure = g_.unit_ancestors(p.lhs);
      prods_.push_back(std::move(info));
      if (!prods_.back().unit) {
        max_base_ = std::max(max_base_, prods_.back().base);
        max_holes_ = std::max<std::uint32_t>(max_holes_, static_cast<std::uint32_t>(prods_.back().holes.size()));
      }
    }
    stats_.kept_per_cost.assign(2, 0);
    begin_level();
  }

  void set_level_hook(LevelHook h) { level_hook_ = std::move(h); }
  // Polled every few hundred candidates; return true to interrupt.
  void set_poll(std::function<bool()> p) { poll_ = std::move(p); }

  const ProgramBank& bank() const { return bank_; }
  const SearchStats& stats() const { return stats_; }
  SearchStats& stats() { return stats_; }
  Status status() const { return status_; }
  std::uint32_t current_cost() const { return cost_; }

  // Next kept program, or nullopt when enumeration stops (see status()).
  std::optional<EntryId> next() {
    while (status_ == Status::Running) {
      if (!advance()) {
        finish_level();
        continue;
      }
      if (poll_ && ++since_poll_ >= kPollInterval) {
        since_poll_ = 0;
        if (poll_()) {
          status_ = Status::Interrupted;
          return std::nullopt;
        }
      }
      if (auto id = process()) return id;
    }
    return std::nullopt;
  }

 private:
  struct ProdInfo {
    bool unit = false;
    std::vector<NonterminalId> holes;
    std::uint32_t base = 0;
    NtMask closure = 0;
  };

  // Odometer over argument tuples of one production at the current cost.
  struct Slot {
    std::uint32_t cost = 0;
    std::size_t idx = 0;
  };

  void begin_level() {
    prod_ = 0;
    promoted_next_ = 0;
    odometer_live_ = false;
    fresh_prod_ = true;
    if (stats_.kept_per_cost.size() <= cost_) stats_.kept_per_cost.resize(cost_ + 1, 0);
  }

  void finish_level() {
    if (level_hook_ && level_hook_(cost_)) {
      status_ = Status::Interrupted;
      return;
    }
    // No production can reach cost n once n exceeds base + holes * (largest kept cost).
    std::uint32_t reach = max_base_ + max_holes_ * bank_.max_cost();
    if (cost_ >= reach && cost_ >= 1) {
      status_ = Status::Exhausted;
      return;
    }
    if (cost_ >= max_cost_) {
      status_ = Status::CostLimit;
      return;
    }
    ++cost_;
    begin_level();
  }

  bool init_slots(std::size_t i, std::uint32_t remaining) {
    const auto& holes = prods_[prod_].holes;
    std::size_t k = holes.size();
    if (i == k) return remaining == 0;
    std::uint32_t rest = static_cast<std::uint32_t>(k - 1 - i);
    if (remaining < rest + 1) return false;
    if (i == k - 1) {
      if (bank_.level(holes[i], remaining).empty()) return false;
      slots_[i] = {remaining, 0};
      return true;
    }
    for (std::uint32_t c = 1; c + rest <= remaining; ++c) {
      if (bank_.level(holes[i], c).empty()) continue;
      slots_[i] = {c, 0};
      if (init_slots(i + 1, remaining - c)) return true;
    }
    return false;
  }

  bool step_slots() {
    const auto& holes = prods_[prod_].holes;
    std::size_t k = holes.size();
    std::uint32_t total = cost_ - prods_[prod_].base;
    std::vector<std::uint32_t> prefix(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] + slots_[i].cost;
    for (std::size_t ii = k; ii-- > 0;) {
      std::uint32_t remaining = total - prefix[ii];
      auto lv = bank_.level(holes[ii], slots_[ii].cost);
      if (slots_[ii].idx + 1 < lv.size()) {
        ++slots_[ii].idx;
        if (init_slots(ii + 1, remaining - slots_[ii].cost)) return true;
        continue;
      }
      if (ii == k - 1) continue;
      std::uint32_t rest = static_cast<std::uint32_t>(k - 1 - ii);
      for (std::uint32_t c = slots_[ii].cost + 1; c + rest <= remaining; ++c) {
        if (bank_.level(holes[ii], c).empty()) continue;
        slots_[ii] = {c, 0};
        if (init_slots(ii + 1, remaining - c)) return true;
      }
    }
    return false;
  }

  // Move to the next candidate of the current level; false at level end.
  bool advance() {
    const auto& prods = g_.productions();
    while (prod_ < prods.size()) {
      const auto& info = prods_[prod_];
      if (info.unit) {
        ++prod_;
        fresh_prod_ = true;
        continue;
      }
      if (fresh_prod_) {
        fresh_prod_ = false;
        if (info.holes.empty()) {
          if (info.base == cost_) {
            cand_kind_ = Cand::Production;
            odometer_live_ = false;
            return true;
          }
        } else if (cost_ > info.base) {
          slots_.assign(info.holes.size(), Slot{});
          if (init_slots(0, cost_ - info.base)) {
            cand_kind_ = Cand::Production;
            odometer_live_ = true;
            return true;
          }
        }
      } else if (odometer_live_ && step_slots()) {
        cand_kind_ = Cand::Production;
        return true;
      }
      odometer_live_ = false;
      ++prod_;
      fresh_prod_ = true;
    }
    if (cost_ == 1 && promoted_next_ < costs_.promoted().size()) {
      cand_kind_ = Cand::Promoted;
      ++promoted_next_;
      return true;
    }
    return false;
  }

  std::optional<EntryId> process() {
    ++stats_.enumerated;
    OutputVector out;
    NtMask nts;
    std::uint32_t cost;
    std::vector<EntryId> kids;
    try {
      if (cand_kind_ == Cand::Promoted) {
        const auto& pr = costs_.promoted()[promoted_next_ - 1];
        out = output_vector(pr.program, ex_);
        nts = pr.nonterminals;
        cost = 1;
      } else {
        const auto& info = prods_[prod_];
        cost = info.base;
        std::vector<const OutputVector*> fills;
        for (std::size_t i = 0; i < info.holes.size(); ++i) {
          EntryId id = bank_.level(info.holes[i], slots_[i].cost)[slots_[i].idx];
          kids.push_back(id);
          fills.push_back(&bank_[id].outputs);
          cost += bank_[id].cost;
        }
        out = eval_sketch(g_.productions()[prod_].rhs, fills, ex_);
        nts = info.closure;
      }
    } catch (const EvalError&) {
      ++stats_.eval_errors;
      return std::nullopt;
    }

    std::size_t key = bank_.key_hash(out);
    NtMask reps = nts;
    if (prune_.factorize) {
      reps = nts & ~bank_.represented(nts, out, key);
      if (reps == 0) {
        ++stats_.pruned_equiv;
        return std::nullopt;
      }
    }
    // distances are defined on the result sort only; helper sorts are never pruned
    if (prune_.ball && cost > prune_.threshold.s && !out.empty() && out[0].sort() == ex_.outputs[0].sort()) {
      bool in = prune_.ball->contains(metric_, out, ex_.outputs);
      if (!in) {
        ++stats_.pruned_ball;
        return std::nullopt;
      }
    }

    Program prog;
    if (cand_kind_ == Cand::Promoted) {
      prog = costs_.promoted()[promoted_next_ - 1].program;
    } else {
      std::vector<Program> args;
      args.reserve(kids.size());
      for (auto id : kids) args.push_back(bank_[id].program);
      prog = substitute(g_.productions()[prod_].rhs, args);
    }
    ++stats_.kept;
    if (stats_.kept_per_cost.size() <= cost) stats_.kept_per_cost.resize(cost + 1, 0);
    ++stats_.kept_per_cost[cost];
    return bank_.add(BankEntry{std::move(prog), std::move(out), cost, reps}, key);
  }

  enum class Cand { Production, Promoted };

  const Grammar& g_;
  const ExampleSet& ex_;
  LiftedOrimetric metric_;
  const CostModel& costs_;
  PruneOptions prune_;
  std::uint32_t max_cost_;
  ProgramBank bank_;
  std::vector<ProdInfo> prods_;
  std::uint32_t max_base_ = 0;
  std::uint32_t max_holes_ = 0;

  SearchStats stats_;
  Status status_ = Status::Running;
  LevelHook level_hook_;
  std::function<bool()> poll_;
  static constexpr std::uint32_t kPollInterval = 256;
  std::uint32_t since_poll_ = 0;

  std::uint32_t cost_ = 1;
  std::size_t prod_ = 0;
  std::size_t promoted_next_ = 0;
  bool fresh_prod_ = true;
  bool odometer_live_ = false;
  std::vector<Slot> slots_;
  Cand cand_kind_ = Cand::Production;
};

}  // namespace merlin
