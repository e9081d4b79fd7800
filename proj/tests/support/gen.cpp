#include "gen.hpp"

#include "ptv/wellformed.hpp"

namespace ptv::gen {

namespace {

const char* const kSymbols[] = {"a", "b", "c"};
const char* const kClocks[] = {"x", "y", "z"};

StateId st(const std::string& prefix, int i) { return StateId(prefix + std::to_string(i)); }

Rational bound(Rng& rng, int max_bound, bool fractional) {
  return fractional ? rng.rational(1, max_bound) : Rational(rng.uniform(1, max_bound));
}

void decorate(Rng& rng, Edge& e, int clocks, int max_bound, bool fractional, double guard_p = 0.3,
              double reset_p = 0.35) {
  for (int c = 0; c < clocks; ++c) {
    if (rng.coin(guard_p)) e.guard.add(GuardAtom(Timer(kClocks[c]), bound(rng, max_bound, fractional)));
    if (rng.coin(reset_p)) e.resets.insert(Timer(kClocks[c]));
  }
}

// Random graph with a guaranteed path start -> accept.
Tfa raw_tfa(Rng& rng, const TfaShape& shape, const std::string& prefix) {
  Tfa a;
  const int n = rng.uniform(2, shape.max_states);
  for (int i = 0; i < n; ++i) a.states.insert(st(prefix, i));
  for (const auto* s : kSymbols) a.alphabet.insert(Symbol(s));
  for (int c = 0; c < shape.clocks; ++c) a.clocks.insert(Timer(kClocks[c]));
  a.start = st(prefix, 0);
  a.accept = st(prefix, n - 1);

  std::set<EdgeKey> keys;
  auto add = [&](int from, int to) {
    Edge e;
    e.from = st(prefix, from);
    e.to = st(prefix, to);
    e.symbol = Symbol(kSymbols[rng.uniform(0, 2)]);
    if (!keys.insert(e.key()).second) return;
    decorate(rng, e, shape.clocks, shape.max_bound, shape.fractional_bounds, shape.guard_p, shape.reset_p);
    a.edges.push_back(std::move(e));
  };
  for (int i = 0; i + 1 < n; ++i) add(i, i + 1);
  const int extra = rng.uniform(0, std::max(0, shape.max_edges - (n - 1)));
  for (int i = 0; i < extra; ++i) add(rng.uniform(0, n - 1), rng.uniform(0, n - 1));
  return a;
}

}  // namespace

Rational Rng::rational(int lo, int hi) {
  static const int dens[] = {1, 2, 4, 8};
  const int d = dens[uniform(0, 3)];
  return Rational(uniform(lo * d, hi * d), d);
}

Tfa tfa(Rng& rng, const TfaShape& shape) {
  while (true) {
    Tfa a = raw_tfa(rng, shape, "q");
    if (check_well_formed(a).ok()) return a;
  }
}

Tfa bounded_tfa(Rng& rng, const TfaShape& shape) {
  while (true) {
    Tfa a = tfa(rng, shape);
    const DelayResult d = enumerate_max_delay(a, {a.accept});
    if (d.bounded && d.value.sign() > 0) return a;
  }
}

EdgePath chain(Rng& rng, int length, int clocks, int max_bound) {
  EdgePath p;
  for (int i = 0; i < length; ++i) {
    Edge e;
    e.from = st("n", i);
    e.to = st("n", i + 1);
    e.symbol = Symbol(kSymbols[rng.uniform(0, 2)]);
    decorate(rng, e, clocks, max_bound, true);
    p.push_back(std::move(e));
  }
  return p;
}

TimedWord walk_word(Rng& rng, const Tfa& a, int max_len) {
  std::vector<TimedEvent> ev;
  StateId at = a.start;
  Rational t = rng.rational(0, 5);
  const int len = rng.uniform(1, max_len);
  for (int i = 0; i < len; ++i) {
    const auto out = a.edges_from(at);
    if (out.empty()) break;
    const Edge& e = a.edges[out[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(out.size()) - 1))]];
    if (i > 0) t += Rational(rng.uniform(1, 64), 8);
    ev.push_back({e.symbol, t});
    at = e.to;
    if (at == a.accept && rng.coin(0.4)) break;
  }
  return TimedWord(std::move(ev));
}

Pts pts(Rng& rng) {
  Pts s;
  Tba& p = s.parent;
  const int n = rng.uniform(2, 4);
  for (int i = 0; i < n; ++i) p.states.insert(st("p", i));
  for (const auto* sym : kSymbols) p.alphabet.insert(Symbol(sym));
  const int clocks = rng.uniform(1, 2);
  for (int c = 0; c < clocks; ++c) p.clocks.insert(Timer(kClocks[c]));
  p.start = st("p", 0);
  p.accepting = {p.start};

  std::set<EdgeKey> keys;
  auto add = [&](int from, int to) {
    Edge e;
    e.from = st("p", from);
    e.to = st("p", to);
    e.symbol = Symbol(kSymbols[rng.uniform(0, 2)]);
    if (!keys.insert(e.key()).second) return;
    for (int c = 0; c < clocks; ++c) {
      if (rng.coin(0.7)) e.guard.add(GuardAtom(Timer(kClocks[c]), Rational(rng.uniform(1, 12))));
      if (rng.coin(0.4)) e.resets.insert(Timer(kClocks[c]));
    }
    p.edges.push_back(std::move(e));
  };
  for (int i = 0; i < n; ++i) add(i, (i + 1) % n);
  const int extra = rng.uniform(0, 2);
  for (int i = 0; i < extra; ++i) add(rng.uniform(0, n - 1), rng.uniform(0, n - 1));

  const int kids = rng.uniform(1, 2);
  TfaShape shape;
  shape.max_states = 4;
  shape.max_edges = 4;
  shape.clocks = rng.uniform(1, 2);
  shape.max_bound = 8;
  for (int k = 0; k < kids; ++k) {
    const ChildId id("K" + std::to_string(k));
    s.children.emplace(id, bounded_tfa(rng, shape));
    const auto& f = p.edges[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(p.edges.size()) - 1))];
    const auto& j = p.edges[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(p.edges.size()) - 1))];
    s.forks.insert({f.key(), id});
    s.joins.insert({j.key(), id});
  }
  return s;
}

SpecDocument document(Rng& rng) {
  SpecDocument doc;
  TfaShape shape;
  shape.max_states = 4;
  shape.max_edges = 6;
  shape.clocks = rng.uniform(0, 3);
  shape.fractional_bounds = true;
  const int tfas = rng.uniform(1, 3);
  std::vector<std::string> tfa_names;
  for (int i = 0; i < tfas; ++i) {
    TfaDecl d;
    d.name = "T" + std::to_string(i);
    d.tfa = raw_tfa(rng, shape, "s");
    if (rng.coin(0.3)) d.tfa.alphabet.insert(Symbol("unused"));
    tfa_names.push_back(d.name);
    doc.decls.emplace_back(std::move(d));
  }
  const int tbas = rng.uniform(0, 2);
  for (int i = 0; i < tbas; ++i) {
    TbaDecl d;
    d.name = "B" + std::to_string(i);
    const Tfa base = raw_tfa(rng, shape, "r");
    static_cast<Automaton&>(d.tba) = base;
    d.tba.accepting = {base.accept};
    if (rng.coin()) d.tba.accepting.insert(base.start);
    const bool system = rng.coin(0.7);
    std::vector<ChildBinding> kids;
    if (system) {
      const int k = rng.uniform(1, 3);
      for (int c = 0; c < k; ++c) {
        ChildBinding b;
        b.id = ChildId("C" + std::to_string(c));
        b.tfa = tfa_names[static_cast<std::size_t>(rng.uniform(0, tfas - 1))];
        kids.push_back(b);
      }
    }
    d.forks.assign(d.tba.edges.size(), {});
    d.joins.assign(d.tba.edges.size(), {});
    const int m = static_cast<int>(d.tba.edges.size());
    for (const auto& kid : kids) {
      d.forks[static_cast<std::size_t>(rng.uniform(0, m - 1))].insert(kid.id);
      d.joins[static_cast<std::size_t>(rng.uniform(0, m - 1))].insert(kid.id);
    }
    const std::string parent = d.name;
    doc.decls.emplace_back(std::move(d));
    if (system) {
      PtsDecl sys;
      sys.name = "S" + std::to_string(i);
      sys.parent = parent;
      sys.children = kids;
      doc.decls.emplace_back(std::move(sys));
    }
  }
  return doc;
}

Automaton scale_bounds(const Automaton& a, const Rational& factor) {
  Automaton out = a;
  for (auto& e : out.edges) {
    Guard g;
    for (const auto& [x, c] : e.guard.bounds()) g.add(GuardAtom(x, c * factor));
    e.guard = g;
  }
  return out;
}

}  // namespace ptv::gen
