#include "ptv/pts.hpp"

#include <algorithm>

namespace ptv {

namespace {

bool better(const DelayResult& r, const std::optional<DelayResult>& best) {
  if (!best) return true;
  if (!best->bounded) return false;
  if (!r.bounded) return true;
  return best->value < r.value || (best->value == r.value && r.attained && !best->attained);
}

std::vector<StateId> states_of(const Automaton& a, const std::vector<std::size_t>& path) {
  std::vector<StateId> out{a.edges[path.front()].from};
  for (const auto i : path) out.push_back(a.edges[i].to);
  return out;
}

// Edge paths starting with `fork` and ending at the first later use of `join`.
class BetweenSearch {
 public:
  BetweenSearch(const Automaton& a, const Adjacency& adj, std::size_t fork, std::size_t join)
      : a_(a), adj_(adj), fork_(fork), join_(join), uses_(a.edges.size(), 0) {
    live_ = a.coreachable_to({a.edges[join].from});
  }

  std::vector<std::vector<std::size_t>> run() {
    path_ = {fork_};
    if (fork_ == join_) return {path_};
    uses_[fork_] = 2;
    dfs(a_.edges[fork_].to);
    return std::move(found_);
  }

 private:
  void dfs(const StateId& s) {
    for (const auto i : adj_.out(s)) {
      if (uses_[i] == 2) continue;
      path_.push_back(i);
      if (i == join_) {
        found_.push_back(path_);
      } else if (live_.contains(a_.edges[i].to)) {
        ++uses_[i];
        dfs(a_.edges[i].to);
        --uses_[i];
      }
      path_.pop_back();
    }
  }

  const Automaton& a_;
  const Adjacency& adj_;
  std::size_t fork_;
  std::size_t join_;
  std::set<StateId> live_;
  std::vector<int> uses_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace

void Pts::validate() const {
  parent.validate();
  for (const auto& [id, child] : children) child.validate();
  std::set<ChildId> forked, joined;
  auto check = [&](const std::set<Annotation>& rel, std::set<ChildId>& seen, const char* what) {
    for (const auto& ann : rel) {
      if (parent.find(ann.edge) == parent.edges.size()) {
        throw Error(ErrorCode::InvalidStructure, std::string(what) + " on missing parent edge " + to_string(ann.edge));
      }
      if (!children.contains(ann.child)) {
        throw Error(ErrorCode::InvalidStructure, std::string(what) + " of unknown child " + ann.child.str());
      }
      seen.insert(ann.child);
    }
  };
  check(forks, forked, "fork");
  check(joins, joined, "join");
  for (const auto& [id, _] : children) {
    if (!forked.contains(id) || !joined.contains(id)) {
      throw Error(ErrorCode::InvalidStructure, "child " + id.str() + " must be both forked and joined");
    }
  }
}

Timer derived_timer(const ChildId& child) { return Timer("T_" + child.str()); }

FlattenedRelations flatten(const Pts& s) {
  FlattenedRelations out;
  for (const auto& [id, child] : s.children) {
    const auto report = check_well_formed(child);
    if (!report.ok()) throw Error(ErrorCode::NotWellFormed, "child " + id.str() + ": " + report.summary());
    DelayResult d = enumerate_max_delay(child, {child.accept});
    if (!d.bounded) throw Error(ErrorCode::UnboundedChild, id.str());
    if (d.value.is_zero()) throw Error(ErrorCode::DegenerateChild, id.str() + " has delay 0");
    out.child_delays.emplace(id, std::move(d));
  }
  for (const auto& f : s.forks) out.inits[f.edge].insert(derived_timer(f.child));
  for (const auto& j : s.joins) {
    out.guards[j.edge].add(GuardAtom(derived_timer(j.child), out.child_delays.at(j.child).value));
  }
  return out;
}

Tba flattened_parent(const Pts& s, const FlattenedRelations& f) {
  Tba p = s.parent;
  p.clocks.clear();
  for (const auto& [id, _] : s.children) p.clocks.insert(derived_timer(id));
  for (auto& e : p.edges) {
    const auto init = f.inits.find(e.key());
    e.resets = init == f.inits.end() ? std::set<Timer>{} : init->second;
    const auto guard = f.guards.find(e.key());
    e.guard = guard == f.guards.end() ? Guard{} : guard->second;
  }
  return p;
}

std::set<UsePair> uses(const Pts& s) {
  std::set<UsePair> out;
  for (const auto& f : s.forks) {
    for (const auto& j : s.joins) {
      if (f.child == j.child) out.insert({f.edge, j.edge, f.child});
    }
  }
  return out;
}

const ConsistencyCheck* ConsistencyVerdict::witness() const {
  for (const auto& c : checks) {
    if (!c.ok) return &c;
  }
  return nullptr;
}

ConsistencyVerdict check_consistency(const Pts& s) {
  const FlattenedRelations rel = flatten(s);
  const Tba flat = flattened_parent(s, rel);
  const Tba& parent = s.parent;
  const Adjacency adj(parent);
  const auto reachable = parent.reachable_from(parent.start);

  std::set<EdgeKey> fork_edges, join_edges;
  for (const auto& f : s.forks) fork_edges.insert(f.edge);
  for (const auto& j : s.joins) join_edges.insert(j.edge);

  ConsistencyVerdict verdict;
  std::set<std::vector<StateId>> seen;
  std::set<std::string> warned;
  for (const auto& fk : fork_edges) {
    const std::size_t f = parent.find(fk);
    if (!reachable.contains(fk.from)) continue;
    for (const auto& jk : join_edges) {
      const std::size_t j = parent.find(jk);
      for (const auto& edges : BetweenSearch(parent, adj, f, j).run()) {
        // A child forked again before the join it pairs with.
        for (const auto& jn : s.joins) {
          if (jn.edge != jk) continue;
          const auto forks_of = std::count_if(edges.begin(), edges.end() - 1, [&](std::size_t i) {
            return s.forks.contains({parent.edges[i].key(), jn.child});
          });
          if (forks_of > 1) {
            std::string w = "child " + jn.child.str() + " forked " + std::to_string(forks_of) + " times before join on " +
                            to_string(jk);
            if (warned.insert(w).second) verdict.warnings.push_back(std::move(w));
          }
        }
        auto path = states_of(parent, edges);
        if (!seen.insert(path).second) continue;
        ConsistencyCheck c;
        c.flattened = delay_tba(flat, path);
        c.parent = delay_tba(parent, path);
        c.ok = at_most(c.flattened, c.parent);
        c.path = std::move(path);
        verdict.consistent = verdict.consistent && c.ok;
        verdict.checks.push_back(std::move(c));
      }
    }
  }
  return verdict;
}

DelayResult cycle_bound(const Pts& s) {
  const Tba& p = s.parent;
  std::optional<DelayResult> best;
  std::vector<StateId> path{p.start};
  std::set<StateId> on_path{p.start};
  std::set<std::pair<StateId, StateId>> pairs;
  for (const auto& e : p.edges) pairs.emplace(e.from, e.to);

  // Simple cycles through start, in state order.
  auto dfs = [&](auto&& self, const StateId& at) -> void {
    for (const auto& [from, to] : pairs) {
      if (from != at || (best && !best->bounded)) continue;
      if (to == p.start) {
        path.push_back(to);
        DelayResult r = delay_tba(p, path);
        if (better(r, best)) best = std::move(r);
        path.pop_back();
      } else if (!on_path.contains(to)) {
        path.push_back(to);
        on_path.insert(to);
        self(self, to);
        on_path.erase(to);
        path.pop_back();
      }
    }
  };
  dfs(dfs, p.start);
  if (!best) return DelayResult::unbounded({});
  return *best;
}

}  // namespace ptv
