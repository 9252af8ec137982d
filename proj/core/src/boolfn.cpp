#include "swdiag/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <unordered_map>

namespace swdiag {

BooleanFunction::BooleanFunction(int arity) : arity_(arity) {
  if (arity < 0 || arity > 32) throw Error(ErrorCode::arity, "truth table arity must be in 0..32");
  words_.assign(std::max<std::size_t>(1, (std::size_t{1} << arity) / 64), 0);
}

BooleanFunction BooleanFunction::constant(int arity, bool value) {
  BooleanFunction f(arity);
  if (value) {
    for (AssignmentIndex i = 0; i < f.size(); ++i) f.set(i, true);
  }
  return f;
}

void BooleanFunction::set(AssignmentIndex i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t BooleanFunction::count_ones() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BooleanFunction::is_constant(bool value) const {
  return count_ones() == (value ? size() : 0);
}

std::string BooleanFunction::to_string() const {
  std::string s(size(), '0');
  for (AssignmentIndex i = 0; i < size(); ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

BooleanFunction truth_table(const SwitchingNetwork& network, const Fault& fault, const TableOptions& options) {
  const int m = network.arity();
  if (m > options.arity_cap) {
    throw Error(ErrorCode::resource, "network has " + std::to_string(m) +
                                         " input variables, truth-table cap is " +
                                         std::to_string(options.arity_cap));
  }
  const Evaluator eval(network, fault);
  BooleanFunction f(m);
  const AssignmentIndex total = f.size();
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || total < 128) {
    for (AssignmentIndex i = 0; i < total; ++i) {
      if (eval.at(i)) f.set(i, true);
    }
    return f;
  }
  // Each worker owns whole 64-bit words, so no two threads write the same word.
  const std::size_t words = f.words().size();
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t word = w; word < words; word += jobs) {
          for (AssignmentIndex i = word * 64; i < (word + 1) * 64 && i < total; ++i) {
            if (eval.at(i)) f.set(i, true);
          }
        }
      });
    }
  }
  return f;
}

bool equivalent(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.arity() != g.arity()) {
    throw Error(ErrorCode::arity, "cannot compare functions of arity " + std::to_string(f.arity()) +
                                      " and " + std::to_string(g.arity()));
  }
  return f.words() == g.words();
}

std::vector<AssignmentIndex> difference_set(const BooleanFunction& f, const BooleanFunction& g) {
  if (f.arity() != g.arity()) {
    throw Error(ErrorCode::arity, "cannot compare functions of arity " + std::to_string(f.arity()) +
                                      " and " + std::to_string(g.arity()));
  }
  std::vector<AssignmentIndex> out;
  for (std::size_t w = 0; w < f.words().size(); ++w) {
    std::uint64_t diff = f.words()[w] ^ g.words()[w];
    while (diff != 0) {
      const int bit = std::countr_zero(diff);
      const AssignmentIndex idx = w * 64 + static_cast<AssignmentIndex>(bit);
      if (idx < f.size()) out.push_back(idx);
      diff &= diff - 1;
    }
  }
  return out;
}

namespace {

using SetList = std::vector<std::vector<AssignmentIndex>>;

// Sorts, deduplicates and drops every set that contains another set; a hitting
// set for the survivors hits the dropped supersets too.
SetList reduce_sets(SetList sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  SetList kept;
  for (auto& s : sets) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&s](const auto& k) {
      return std::includes(s.begin(), s.end(), k.begin(), k.end());
    });
    if (!dominated) kept.push_back(std::move(s));
  }
  return kept;
}

class HittingSetSearch {
 public:
  HittingSetSearch(const SetList& sets, std::uint64_t node_cap) : node_cap_(node_cap) {
    for (const auto& s : sets) {
      std::vector<int> ids;
      for (AssignmentIndex e : s) {
        auto [it, inserted] = element_id_.try_emplace(e, static_cast<int>(elements_.size()));
        if (inserted) {
          elements_.push_back(e);
          sets_of_.emplace_back();
        }
        ids.push_back(it->second);
        sets_of_[it->second].push_back(static_cast<int>(sets_.size()));
      }
      sets_.push_back(std::move(ids));
    }
    hits_.assign(sets_.size(), 0);
    forbidden_.assign(elements_.size(), false);
  }

  std::vector<int> greedy() const {
    std::vector<int> hits(sets_.size(), 0);
    std::vector<int> chosen;
    std::size_t unhit = sets_.size();
    while (unhit > 0) {
      int best = -1;
      std::size_t best_gain = 0;
      for (std::size_t e = 0; e < elements_.size(); ++e) {
        std::size_t gain = 0;
        for (int s : sets_of_[e]) gain += hits[s] == 0 ? 1 : 0;
        if (gain > best_gain || (gain == best_gain && gain > 0 && elements_[e] < elements_[best])) {
          best = static_cast<int>(e);
          best_gain = gain;
        }
      }
      chosen.push_back(best);
      for (int s : sets_of_[best]) {
        if (hits[s]++ == 0) --unhit;
      }
    }
    return chosen;
  }

  std::size_t packing_bound_unhit() const {
    std::vector<int> order;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (hits_[s] == 0) order.push_back(static_cast<int>(s));
    }
    std::stable_sort(order.begin(), order.end(),
                     [this](int a, int b) { return sets_[a].size() < sets_[b].size(); });
    std::vector<bool> used(elements_.size(), false);
    std::size_t count = 0;
    for (int s : order) {
      const auto& ids = sets_[s];
      if (std::any_of(ids.begin(), ids.end(), [&used](int e) { return used[e]; })) continue;
      for (int e : ids) used[e] = true;
      ++count;
    }
    return count;
  }

  /// Hitting set with at most `limit` elements, if one exists.
  bool search(std::size_t limit) {
    limit_ = limit;
    chosen_.clear();
    return dfs();
  }

  std::vector<AssignmentIndex> to_assignments(const std::vector<int>& ids) const {
    std::vector<AssignmentIndex> out;
    for (int e : ids) out.push_back(elements_[e]);
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::vector<int>& chosen() const noexcept { return chosen_; }
  bool cap_hit() const noexcept { return cap_hit_; }

 private:
  bool dfs() {
    if (++nodes_ > node_cap_) {
      cap_hit_ = true;
      return false;
    }
    int pick = -1;
    std::size_t pick_free = 0;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (hits_[s] != 0) continue;
      std::size_t free = 0;
      for (int e : sets_[s]) free += forbidden_[e] ? 0 : 1;
      if (free == 0) return false;
      if (pick < 0 || free < pick_free) {
        pick = static_cast<int>(s);
        pick_free = free;
      }
    }
    if (pick < 0) return true;
    if (chosen_.size() + packing_bound_unhit() > limit_) return false;

    std::vector<int> tried;
    bool found = false;
    for (int e : sets_[pick]) {
      if (forbidden_[e]) continue;
      chosen_.push_back(e);
      for (int s : sets_of_[e]) ++hits_[s];
      found = dfs();
      if (!found) {
        for (int s : sets_of_[e]) --hits_[s];
        chosen_.pop_back();
      }
      if (found || cap_hit_) break;
      forbidden_[e] = true;
      tried.push_back(e);
    }
    for (int e : tried) forbidden_[e] = false;
    return found;
  }

  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  bool cap_hit_ = false;
  std::size_t limit_ = 0;
  std::vector<std::vector<int>> sets_;
  std::vector<std::vector<int>> sets_of_;
  std::vector<AssignmentIndex> elements_;
  std::unordered_map<AssignmentIndex, int> element_id_;
  std::vector<int> hits_;
  std::vector<bool> forbidden_;
  std::vector<int> chosen_;
};

}  // namespace

std::size_t disjoint_packing_bound(SetList sets) {
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<AssignmentIndex> used;
  std::size_t count = 0;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    const bool clash = std::any_of(s.begin(), s.end(), [&used](AssignmentIndex e) {
      return std::binary_search(used.begin(), used.end(), e);
    });
    if (clash) continue;
    used.insert(used.end(), s.begin(), s.end());
    std::sort(used.begin(), used.end());
    ++count;
  }
  return count;
}

DistinguishingResult min_hitting_set(SetList sets, const DistinguishingOptions& options) {
  for (const auto& s : sets) {
    if (s.empty()) throw Error(ErrorCode::precondition, "cannot hit an empty set");
  }
  sets = reduce_sets(std::move(sets));
  if (sets.empty()) return {};

  const bool all_singletons =
      std::all_of(sets.begin(), sets.end(), [](const auto& s) { return s.size() == 1; });
  if (options.singleton_shortcut && all_singletons) {
    DistinguishingResult r;
    for (const auto& s : sets) r.witness.push_back(s.front());
    std::sort(r.witness.begin(), r.witness.end());
    r.t = r.witness.size();
    return r;
  }

  HittingSetSearch search(sets, options.node_cap);
  const auto greedy_ids = search.greedy();
  DistinguishingResult greedy{greedy_ids.size(), search.to_assignments(greedy_ids)};
  const std::size_t lower = search.packing_bound_unhit();
  for (std::size_t k = lower; k < greedy.t; ++k) {
    if (search.search(k)) {
      const auto ids = search.chosen();
      return DistinguishingResult{ids.size(), search.to_assignments(ids)};
    }
    if (search.cap_hit()) {
      throw SearchCapExceeded("hitting-set search exceeded " + std::to_string(options.node_cap) +
                                  " nodes; greedy bound is " + std::to_string(greedy.t),
                              greedy);
    }
  }
  return greedy;
}

DistinguishingResult min_distinguishing_set(const BooleanFunction& f0, std::span<const BooleanFunction> family,
                                            const DistinguishingOptions& options) {
  SetList sets;
  sets.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto d = difference_set(f0, family[i]);
    if (d.empty()) {
      throw Error(ErrorCode::precondition,
                  "family member " + std::to_string(i) + " equals the base function");
    }
    sets.push_back(std::move(d));
  }
  return min_hitting_set(std::move(sets), options);
}

}  // namespace swdiag
