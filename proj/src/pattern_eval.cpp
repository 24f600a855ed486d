#include "schemaforge/pattern_eval.hpp"

#include <algorithm>
#include <limits>

namespace schemaforge {

namespace {

const std::vector<std::uint32_t> kEmpty;

const Term* resolve(const Term& t, const Mapping& binding) {
  if (!t.is_variable()) return &t;
  auto it = binding.find(t.lexical());
  return it == binding.end() ? nullptr : &it->second;
}

std::size_t candidate_count(const TripleIndex& index, const TriplePattern& p, const Mapping& b) {
  const auto* c = index.candidates(p, b);
  return c ? c->size() : 0;
}

void undo(Mapping& binding, std::vector<std::string>& added, std::size_t mark) {
  while (added.size() > mark) {
    binding.erase(added.back());
    added.pop_back();
  }
}

class BgpSearch {
 public:
  BgpSearch(const std::vector<TriplePattern>& patterns, const TripleIndex& index,
            const Limits* limits)
      : patterns_(patterns), index_(index), used_(patterns.size(), false), ticker_(limits) {}

  std::set<Mapping> run() {
    recurse(0);
    return std::move(results_);
  }

 private:
  void recurse(std::size_t depth) {
    if (depth == patterns_.size()) {
      results_.insert(binding_);
      return;
    }
    std::size_t best = patterns_.size();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (used_[i]) continue;
      const std::size_t n = candidate_count(index_, patterns_[i], binding_);
      if (n < best_count) {
        best = i;
        best_count = n;
      }
    }
    if (best_count == 0) return;
    used_[best] = true;
    const auto& pattern = patterns_[best];
    for (std::uint32_t idx : *index_.candidates(pattern, binding_)) {
      ticker_.tick();
      const std::size_t mark = added_.size();
      if (match_triple(pattern, index_.triples()[idx], binding_, added_)) {
        recurse(depth + 1);
        undo(binding_, added_, mark);
      }
    }
    used_[best] = false;
  }

  const std::vector<TriplePattern>& patterns_;
  const TripleIndex& index_;
  std::vector<bool> used_;
  Mapping binding_;
  std::vector<std::string> added_;
  std::set<Mapping> results_;
  DeadlineTicker ticker_;
};

class UnionSearch {
 public:
  UnionSearch(const UnionQuery& q, const TripleIndex& index, const Limits* limits)
      : q_(q), index_(index), used_(q.disjunct_lists.size(), false), ticker_(limits) {
    required_ = vars_of(q.source);
  }

  std::set<Mapping> run() {
    recurse(0);
    return std::move(results_);
  }

 private:
  void recurse(std::size_t depth) {
    if (depth == q_.disjunct_lists.size()) {
      for (const auto& v : required_)
        if (!binding_.count(v)) return;
      results_.insert(binding_);
      return;
    }
    std::size_t best = used_.size();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (used_[i]) continue;
      std::size_t n = 0;
      for (const auto& alt : q_.disjunct_lists[i]) n += candidate_count(index_, alt, binding_);
      if (n < best_count) {
        best = i;
        best_count = n;
      }
    }
    if (best_count == 0) return;
    used_[best] = true;
    for (const auto& alt : q_.disjunct_lists[best]) {
      const auto* cands = index_.candidates(alt, binding_);
      if (!cands) continue;
      for (std::uint32_t idx : *cands) {
        ticker_.tick();
        const std::size_t mark = added_.size();
        if (match_triple(alt, index_.triples()[idx], binding_, added_)) {
          recurse(depth + 1);
          undo(binding_, added_, mark);
        }
      }
    }
    used_[best] = false;
  }

  const UnionQuery& q_;
  const TripleIndex& index_;
  std::vector<bool> used_;
  std::set<std::string> required_;
  Mapping binding_;
  std::vector<std::string> added_;
  std::set<Mapping> results_;
  DeadlineTicker ticker_;
};

}  // namespace

TripleIndex::TripleIndex(const Graph& g) {
  for (const auto& t : g) insert(t);
}

bool TripleIndex::insert(const Triple& t) {
  if (!members_.insert(t).second) return false;
  const auto idx = static_cast<std::uint32_t>(triples_.size());
  triples_.push_back(t);
  for (std::size_t i = 0; i < 3; ++i) by_position_[i][t[i]].push_back(idx);
  all_.push_back(idx);
  return true;
}

const std::vector<std::uint32_t>* TripleIndex::candidates(const TriplePattern& pattern,
                                                          const Mapping& binding) const {
  const std::vector<std::uint32_t>* best = &all_;
  for (std::size_t i = 0; i < 3; ++i) {
    const Term* value = resolve(pattern[i], binding);
    if (!value) continue;
    auto it = by_position_[i].find(*value);
    if (it == by_position_[i].end()) return &kEmpty;
    if (it->second.size() < best->size()) best = &it->second;
  }
  return best;
}

bool match_triple(const TriplePattern& pattern, const Triple& triple, Mapping& binding,
                  std::vector<std::string>& added) {
  const std::size_t mark = added.size();
  for (std::size_t i = 0; i < 3; ++i) {
    const Term& pt = pattern[i];
    if (!pt.is_variable()) {
      if (pt != triple[i]) {
        undo(binding, added, mark);
        return false;
      }
      continue;
    }
    auto [it, inserted] = binding.try_emplace(pt.lexical(), triple[i]);
    if (inserted) {
      added.push_back(pt.lexical());
    } else if (it->second != triple[i]) {
      undo(binding, added, mark);
      return false;
    }
  }
  return true;
}

std::set<Mapping> evaluate_bgp(const GraphPattern& pattern, const TripleIndex& index,
                               const Limits* limits) {
  std::vector<TriplePattern> patterns(pattern.begin(), pattern.end());
  return BgpSearch(patterns, index, limits).run();
}

std::set<Mapping> evaluate_bgp(const GraphPattern& pattern, const Graph& graph,
                               const Limits* limits) {
  return evaluate_bgp(pattern, TripleIndex(graph), limits);
}

std::vector<TriplePattern> lambda_variants(const TriplePattern& t, const Term& lambda,
                                           bool drop_lambda_predicate) {
  std::vector<TriplePattern> out;
  std::set<TriplePattern> seen;
  for (unsigned mask = 0; mask < 8; ++mask) {
    if (drop_lambda_predicate && (mask & 2u)) continue;
    TriplePattern v = t;
    for (std::size_t i = 0; i < 3; ++i)
      if (mask & (1u << i)) v[i] = lambda;
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

UnionQuery build_lambda_rewriting(const GraphPattern& antecedent, const Term& lambda,
                                  bool drop_lambda_predicate) {
  UnionQuery q;
  q.source = antecedent;
  for (const auto& t : antecedent) {
    q.source_triples.push_back(t);
    q.disjunct_lists.push_back(lambda_variants(t, lambda, drop_lambda_predicate));
  }
  return q;
}

std::set<Mapping> evaluate_union_query(const UnionQuery& q, const TripleIndex& index,
                                       const Limits* limits) {
  return UnionSearch(q, index, limits).run();
}

std::set<Mapping> evaluate_union_query(const UnionQuery& q, const Graph& graph,
                                       const Limits* limits) {
  return evaluate_union_query(q, TripleIndex(graph), limits);
}

}  // namespace schemaforge
