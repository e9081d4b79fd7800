#include "ptv/delay.hpp"

#include <map>
#include <vector>

#include "ptv/wellformed.hpp"

namespace ptv {

namespace {

using Dist = std::optional<Rational>;

void relax(Dist& target, const Rational& candidate) {
  if (!target || candidate < *target) target = candidate;
}

// Incremental form of the same shortest-path computation. With only forward
// guard arcs (positive weight) and backward zero arcs, the distance to node i
// is the minimum over j >= i of the best guard arc landing on j.
class SegmentTracker {
 public:
  void push(const Edge& e) {
    Level next = levels_.empty() ? Level{} : levels_.back();
    const std::size_t j = next.dist.size();
    Dist f;
    if (j == 0) {
      f = Rational(0);
    } else {
      for (const auto& [timer, bound] : e.guard.bounds()) {
        const auto it = next.last_reset.find(timer);
        const std::size_t from = it == next.last_reset.end() ? 0 : it->second;
        if (next.dist[from]) relax(f, *next.dist[from] + bound);
      }
      if (f) {
        for (auto& d : next.dist) relax(d, *f);
      }
    }
    next.dist.push_back(f);
    for (const auto& t : e.resets) next.last_reset[t] = j;
    levels_.push_back(std::move(next));
  }

  void pop() { levels_.pop_back(); }
  std::size_t size() const { return levels_.size(); }
  const Dist& last() const { return levels_.back().dist.back(); }

 private:
  struct Level {
    std::vector<Dist> dist;
    std::map<Timer, std::size_t> last_reset;
  };
  std::vector<Level> levels_;
};

class MaxSearch {
 public:
  MaxSearch(const Automaton& a, const std::set<StateId>& accepting)
      : a_(a), adj_(a), accepting_(accepting), live_(a.coreachable_to(accepting)), uses_(a.edges.size(), 0) {}

  void run() {
    if (live_.contains(a_.start)) dfs(a_.start);
  }

  bool found() const { return found_; }
  bool unbounded() const { return unbounded_; }

  DelayResult result() const {
    EdgePath path;
    for (auto i : best_path_) path.push_back(a_.edges[i]);
    if (unbounded_) return DelayResult::unbounded(std::move(path));
    return DelayResult::of(best_value_, best_attained_, std::move(path));
  }

 private:
  void dfs(const StateId& s) {
    for (const auto i : adj_.out(s)) {
      if (unbounded_) return;
      const Edge& e = a_.edges[i];
      if (uses_[i] == 2 || !live_.contains(e.to)) continue;
      ++uses_[i];
      path_.push_back(i);
      tracker_.push(e);
      if (accepting_.contains(e.to)) consider();
      if (!unbounded_) dfs(e.to);
      tracker_.pop();
      path_.pop_back();
      --uses_[i];
    }
  }

  void consider() {
    const Dist& d = tracker_.last();
    if (!d) {
      unbounded_ = true;
      found_ = true;
      best_path_ = path_;
      return;
    }
    const bool attained = path_.size() == 1;
    if (!found_ || best_value_ < *d || (best_value_ == *d && attained && !best_attained_)) {
      found_ = true;
      best_value_ = *d;
      best_attained_ = attained;
      best_path_ = path_;
    }
  }

  const Automaton& a_;
  Adjacency adj_;
  const std::set<StateId>& accepting_;
  std::set<StateId> live_;
  std::vector<int> uses_;
  std::vector<std::size_t> path_;
  SegmentTracker tracker_;

  bool found_ = false;
  bool unbounded_ = false;
  Rational best_value_;
  bool best_attained_ = false;
  std::vector<std::size_t> best_path_;
};

}  // namespace

DelayResult DelayResult::unbounded(EdgePath witness) {
  DelayResult r;
  r.witness = std::move(witness);
  return r;
}

DelayResult DelayResult::of(Rational value, bool attained, EdgePath witness) {
  DelayResult r;
  r.bounded = true;
  r.value = std::move(value);
  r.attained = attained;
  r.witness = std::move(witness);
  return r;
}

std::string DelayResult::str() const { return bounded ? value.str() : "unbounded"; }

bool at_most(const DelayResult& a, const DelayResult& b) {
  if (!b.bounded) return true;
  if (!a.bounded) return false;
  return a.value <= b.value;
}

DelayResult path_delay(const EdgePath& path, const std::set<Timer>& clocks) {
  if (path.empty()) throw Error(ErrorCode::UnchainedPath, "empty path");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i].to != path[i + 1].from) {
      throw Error(ErrorCode::UnchainedPath, to_string(path[i].key()) + " then " + to_string(path[i + 1].key()));
    }
  }
  struct Arc {
    std::size_t from, to;
    Rational weight;
  };
  const std::size_t k = path.size();
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i + 1 < k; ++i) arcs.push_back({i + 1, i, Rational(0)});

  std::map<Timer, std::size_t> last_reset;
  for (std::size_t j = 0; j < k; ++j) {
    for (const auto& [timer, bound] : path[j].guard.bounds()) {
      if (!clocks.contains(timer)) throw Error(ErrorCode::UnknownTimer, timer.str());
      const auto it = last_reset.find(timer);
      const std::size_t from = it == last_reset.end() ? 0 : it->second;
      if (from != j) arcs.push_back({from, j, bound});
    }
    for (const auto& t : path[j].resets) {
      if (!clocks.contains(t)) throw Error(ErrorCode::UnknownTimer, t.str());
      last_reset[t] = j;
    }
  }

  // Bellman-Ford from node 0. Weights are nonnegative so k rounds suffice.
  std::vector<Dist> dist(k);
  dist[0] = Rational(0);
  for (std::size_t round = 0; round < k; ++round) {
    bool changed = false;
    for (const auto& arc : arcs) {
      if (!dist[arc.from]) continue;
      const Rational cand = *dist[arc.from] + arc.weight;
      if (!dist[arc.to] || cand < *dist[arc.to]) {
        dist[arc.to] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }
  if (!dist[k - 1]) return DelayResult::unbounded(path);
  return DelayResult::of(*dist[k - 1], k == 1, path);
}

DelayResult enumerate_max_delay(const Automaton& a, const std::set<StateId>& accepting) {
  MaxSearch search(a, accepting);
  search.run();
  if (!search.found()) throw Error(ErrorCode::NoAcceptingPath, "no path from " + a.start.str() + " to an accepting state");
  return search.result();
}

DelayResult automaton_max_delay(const Automaton& a, const std::set<StateId>& accepting) {
  const auto report = check_well_formed(a);
  if (!report.ok()) throw Error(ErrorCode::NotWellFormed, report.summary());
  return enumerate_max_delay(a, accepting);
}

}  // namespace ptv
