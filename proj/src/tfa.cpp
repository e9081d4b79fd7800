#include "ptv/tfa.hpp"

#include <set>

namespace ptv {

void Tfa::validate() const {
  Automaton::validate();
  if (!states.contains(accept)) throw Error(ErrorCode::InvalidStructure, "accept state " + accept.str() + " not declared");
}

std::optional<TfaRun> run_word(const Tfa& a, const TimedWord& w) {
  for (const auto& ev : w) {
    if (!a.alphabet.contains(ev.symbol)) throw Error(ErrorCode::UnknownSymbol, ev.symbol.str());
  }
  if (w.empty()) return TfaRun{{}, a.start};

  // Layered forward search. Each node remembers its predecessor and edge.
  struct Node {
    Configuration config;
    std::size_t prev;
    std::size_t edge;
  };
  const Adjacency adj(a);
  std::vector<std::vector<Node>> layers(w.size() + 1);
  layers[0].push_back({{a.start, ClockInterpretation::zero(a.clocks)}, 0, 0});
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational elapsed = i == 0 ? Rational(0) : w[i].time - w[i - 1].time;
    std::set<Configuration> seen;
    for (std::size_t p = 0; p < layers[i].size(); ++p) {
      for (auto& step : successors(a, adj, layers[i][p].config, w[i].symbol, elapsed)) {
        if (seen.insert(step.to).second) layers[i + 1].push_back({std::move(step.to), p, step.edge});
      }
    }
    if (layers[i + 1].empty()) return std::nullopt;
  }

  const auto& last = layers.back();
  std::size_t pick = 0;
  for (std::size_t i = 0; i < last.size(); ++i) {
    if (last[i].config.state == a.accept) {
      pick = i;
      break;
    }
  }
  TfaRun run;
  run.final_state = last[pick].config.state;
  run.steps.resize(w.size());
  for (std::size_t i = w.size(); i > 0; --i) {
    const Node& node = layers[i][pick];
    const Node& prev = layers[i - 1][node.prev];
    run.steps[i - 1] = {prev.config.state, prev.config.clocks, w[i - 1].symbol, w[i - 1].time, node.edge};
    pick = node.prev;
  }
  return run;
}

bool accepts(const Tfa& a, const TimedWord& w) {
  const auto run = run_word(a, w);
  return run && run->final_state == a.accept;
}

DelayResult max_delay(const Tfa& a) { return automaton_max_delay(a, {a.accept}); }

}  // namespace ptv
