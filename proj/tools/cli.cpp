#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptv/dsl.hpp"
#include "ptv/monitor.hpp"
#include "ptv/sim.hpp"

namespace ptv::cli {

namespace {

using json = nlohmann::ordered_json;

// Input problems map to exit 2, analysis errors to exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json key_json(const EdgeKey& k) { return {{"from", k.from.str()}, {"to", k.to.str()}, {"symbol", k.symbol.str()}}; }

json path_json(const EdgePath& p) {
  json out = json::array();
  for (const auto& e : p) out.push_back(key_json(e.key()));
  return out;
}

json states_json(const std::vector<StateId>& p) {
  json out = json::array();
  for (const auto& s : p) out.push_back(s.str());
  return out;
}

json delay_json(const DelayResult& d) {
  return {{"bounded", d.bounded}, {"value", d.str()}, {"attained", d.attained}, {"witness", path_json(d.witness)}};
}

json guard_json(const Guard& g) {
  json out = json::array();
  for (const auto& [t, b] : g.bounds()) out.push_back({{"timer", t.str()}, {"bound", b.str()}});
  return out;
}

std::string path_text(const EdgePath& p) {
  std::string out;
  for (const auto& e : p) out += (out.empty() ? "" : ", ") + to_string(e.key());
  return out;
}

std::string states_text(const std::vector<StateId>& p) {
  std::string out;
  for (const auto& s : p) out += (out.empty() ? "" : " ") + s.str();
  return out;
}

std::string delay_text(const DelayResult& d) {
  if (!d.bounded) return "unbounded";
  return d.value.str() + (d.attained ? " (attained)" : " (not attained)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Rational rational_arg(const std::string& text, const std::string& what) {
  auto r = Rational::try_parse(text);
  if (!r) throw UsageError(what + ": not a number: " + text);
  return *r;
}

Rational rational_field(const json& v, const std::string& what) {
  if (v.is_string()) return rational_arg(v.get<std::string>(), what);
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw UsageError(what + " must be a string like \"0.3\" or an integer");
}

DelayProfile load_profile(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("profile: ") + e.what());
  }
  DelayProfile p;
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (!j.contains("delays")) return p;
  for (const auto& d : j.at("delays")) {
    try {
      DelayKey key{d.at("proc").get<std::string>(),
                   {StateId(d.at("from").get<std::string>()), StateId(d.at("to").get<std::string>()),
                    Symbol(d.at("symbol").get<std::string>())}};
      DelaySpec spec = d.contains("delay") ? DelaySpec::fixed(rational_field(d.at("delay"), "delay"))
                                           : DelaySpec::range(rational_field(d.at("min"), "min"), rational_field(d.at("max"), "max"));
      p.delays[key] = spec;
    } catch (const json::exception& e) {
      throw UsageError(std::string("profile entry: ") + e.what());
    }
  }
  return p;
}

Fault parse_fault(const std::string& text) {
  const auto f = split(text, ',');
  if (f.size() != 6) throw UsageError("--fault expects proc,from,to,symbol,cycle,delay");
  std::size_t cycle = 0;
  try {
    cycle = std::stoul(f[4]);
  } catch (const std::exception&) {
    throw UsageError("--fault cycle: not a number: " + f[4]);
  }
  return {f[0], {StateId(f[1]), StateId(f[2]), Symbol(f[3])}, cycle, rational_arg(f[5], "--fault delay")};
}

json violation_json(const Violation& v) {
  json timers = json::array();
  for (const auto& t : v.timers) timers.push_back(t.str());
  return {{"kind", std::string(to_string(v.kind))}, {"at", v.at.str()}, {"proc", v.proc},
          {"symbol", v.symbol.str()}, {"timers", timers}, {"detail", v.detail}};
}

struct Options {
  std::string file;
  std::string automaton;
  std::string system;
  std::string format = "text";
  std::string word;
  std::string path;
  std::string trace = "-";
  std::string profile;
  std::string fraction;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t cycles = 1;
  std::vector<std::string> faults;
};

class Runner {
 public:
  Runner(const Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

  int dispatch(const std::string& cmd) {
    if (cmd == "fmt") return fmt();
    doc_ = parse_spec(read_input(o_.file, in_));
    if (cmd == "check-wf") return check_wf();
    if (cmd == "accept") return accept();
    if (cmd == "delay") return delay();
    if (cmd == "tba-delay") return tba_delay();
    if (cmd == "flatten") return flatten_cmd();
    if (cmd == "uses") return uses_cmd();
    if (cmd == "consistency") return consistency();
    if (cmd == "cycle-bound") return cycle_bound_cmd();
    if (cmd == "monitor") return monitor();
    if (cmd == "simulate") return simulate();
    throw UsageError("unknown command " + cmd);
  }

 private:
  bool as_json() const { return o_.format == "json"; }

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  const std::string& need(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required");
    return value;
  }

  bool is_tba(const std::string& name) {
    for (const auto& d : doc_.decls) {
      if (const auto* t = std::get_if<TbaDecl>(&d); t && t->name == name) return true;
    }
    return false;
  }

  int fmt() {
    out_ << serialize(parse_spec(read_input(o_.file, in_)));
    return 0;
  }

  int check_wf() {
    const auto& name = need(o_.automaton, "--automaton");
    const Automaton& a = is_tba(name) ? static_cast<const Automaton&>(doc_.tba(name)) : doc_.tfa(name);
    const auto r = check_well_formed(a);
    if (as_json()) {
      json v = json::array();
      for (const auto& x : r.violations) v.push_back({{"timer", x.timer.str()}, {"witness", path_json(x.witness)}});
      emit({{"automaton", name}, {"well_formed", r.ok()}, {"violations", v}});
    } else {
      out_ << name << ": " << (r.ok() ? "well-formed" : "not well-formed") << "\n";
      for (const auto& x : r.violations) out_ << "  timer " << x.timer << " checked twice on " << path_text(x.witness) << "\n";
    }
    return r.ok() ? 0 : 1;
  }

  int accept() {
    const auto& name = need(o_.automaton, "--automaton");
    if (is_tba(name)) {
      const LassoWord w = parse_lasso(o_.word);
      const bool ok = accepts_lasso(doc_.tba(name), w);
      if (as_json()) {
        emit({{"automaton", name}, {"accepted", ok}});
      } else {
        out_ << name << ": " << (ok ? "accepted" : "rejected") << "\n";
      }
      return ok ? 0 : 1;
    }
    const Tfa& a = doc_.tfa(name);
    const TimedWord w = parse_word(o_.word);
    const auto run = run_word(a, w);
    const bool ok = run && run->final_state == a.accept;
    if (as_json()) {
      json j{{"automaton", name}, {"accepted", ok}};
      j["final_state"] = run ? json(run->final_state.str()) : json(nullptr);
      if (!w.empty()) j["duration"] = duration(w).str();
      emit(j);
    } else {
      out_ << name << ": " << (ok ? "accepted" : "rejected");
      if (run) out_ << " (run ends in " << run->final_state << ")";
      else out_ << " (no run)";
      out_ << "\n";
    }
    return ok ? 0 : 1;
  }

  int delay() {
    const auto& name = need(o_.automaton, "--automaton");
    DelayResult d;
    if (is_tba(name)) {
      const Tba& t = doc_.tba(name);
      d = automaton_max_delay(t, t.accepting);
    } else {
      d = max_delay(doc_.tfa(name));
    }
    if (as_json()) {
      emit({{"automaton", name}, {"delay", delay_json(d)}});
    } else {
      out_ << name << ": max delay " << delay_text(d) << "\n  witness: " << path_text(d.witness) << "\n";
    }
    return 0;
  }

  int tba_delay() {
    const auto& name = need(o_.automaton, "--automaton");
    std::vector<StateId> path;
    for (const auto& s : split(need(o_.path, "--path"), ',')) path.emplace_back(s);
    const DelayResult d = delay_tba(doc_.tba(name), path);
    if (as_json()) {
      emit({{"automaton", name}, {"path", states_json(path)}, {"delay", delay_json(d)}});
    } else {
      out_ << name << " over " << states_text(path) << ": " << delay_text(d) << "\n  witness: " << path_text(d.witness) << "\n";
    }
    return 0;
  }

  int flatten_cmd() {
    const auto& name = need(o_.system, "--system");
    const Pts s = doc_.system(name);
    const FlattenedRelations f = flatten(s);
    if (as_json()) {
      json children = json::object();
      for (const auto& [id, d] : f.child_delays) {
        children[id.str()] = {{"timer", derived_timer(id).str()}, {"delay", delay_json(d)}};
      }
      json inits = json::array();
      for (const auto& [k, ts] : f.inits) {
        json names = json::array();
        for (const auto& t : ts) names.push_back(t.str());
        inits.push_back({{"edge", key_json(k)}, {"timers", names}});
      }
      json guards = json::array();
      for (const auto& [k, g] : f.guards) guards.push_back({{"edge", key_json(k)}, {"guard", guard_json(g)}});
      emit({{"system", name}, {"children", children}, {"inits", inits}, {"guards", guards}});
    } else {
      out_ << name << " flattened\n";
      for (const auto& [id, d] : f.child_delays) out_ << "  " << derived_timer(id) << " for " << id << ", delay " << delay_text(d) << "\n";
      for (const auto& [k, ts] : f.inits) {
        out_ << "  " << to_string(k) << " resets";
        for (const auto& t : ts) out_ << " " << t;
        out_ << "\n";
      }
      for (const auto& [k, g] : f.guards) {
        out_ << "  " << to_string(k) << " guard";
        bool first = true;
        for (const auto& [t, b] : g.bounds()) {
          out_ << (first ? " " : " and ") << t << " < " << b;
          first = false;
        }
        out_ << "\n";
      }
    }
    return 0;
  }

  int uses_cmd() {
    const auto& name = need(o_.system, "--system");
    const auto u = uses(doc_.system(name));
    if (as_json()) {
      json arr = json::array();
      for (const auto& p : u) arr.push_back({{"fork_edge", key_json(p.fork_edge)}, {"join_edge", key_json(p.join_edge)}, {"child", p.child.str()}});
      emit({{"system", name}, {"uses", arr}});
    } else {
      for (const auto& p : u) out_ << p.child << ": " << to_string(p.fork_edge) << " => " << to_string(p.join_edge) << "\n";
    }
    return 0;
  }

  int consistency() {
    const auto& name = need(o_.system, "--system");
    const auto v = check_consistency(doc_.system(name));
    if (as_json()) {
      auto check_json = [](const ConsistencyCheck& c) {
        return json{{"path", states_json(c.path)}, {"flattened", delay_json(c.flattened)}, {"parent", delay_json(c.parent)}, {"ok", c.ok}};
      };
      json checks = json::array();
      for (const auto& c : v.checks) checks.push_back(check_json(c));
      json j{{"system", name}, {"consistent", v.consistent}};
      j["witness"] = v.witness() ? check_json(*v.witness()) : json(nullptr);
      j["checks"] = checks;
      j["warnings"] = v.warnings;
      emit(j);
    } else {
      out_ << name << ": " << (v.consistent ? "consistent" : "inconsistent") << "\n";
      for (const auto& c : v.checks) {
        out_ << "  " << states_text(c.path) << ": flattened " << c.flattened.str() << (c.ok ? " <= " : " > ") << "parent "
             << c.parent.str() << (c.ok ? "" : "  FAIL") << "\n";
      }
      for (const auto& w : v.warnings) out_ << "  warning: " << w << "\n";
    }
    return v.consistent ? 0 : 1;
  }

  int cycle_bound_cmd() {
    const auto& name = need(o_.system, "--system");
    const DelayResult d = cycle_bound(doc_.system(name));
    if (as_json()) {
      emit({{"system", name}, {"bound", delay_json(d)}});
    } else {
      out_ << name << ": cycle bound " << delay_text(d) << "\n";
    }
    return 0;
  }

  int monitor() {
    const auto& name = need(o_.system, "--system");
    const Pts s = doc_.system(name);
    const auto trace = parse_trace(read_input(o_.trace, in_));
    const MonitorReport r = monitor_trace(s, trace);
    if (as_json()) {
      json durations = json::array();
      for (const auto& d : r.cycle_durations) durations.push_back(d.str());
      json violations = json::array();
      for (const auto& v : r.violations) violations.push_back(violation_json(v));
      emit({{"system", name}, {"events", trace.size()}, {"cycles", r.cycles}, {"cycle_durations", durations},
            {"accepting_visits", r.accepting_visits}, {"violations", violations}});
    } else {
      out_ << name << ": " << trace.size() << " events, " << r.cycles << " cycles, " << r.violations.size() << " violations\n";
      for (const auto& d : r.cycle_durations) out_ << "  cycle " << d << "\n";
      for (const auto& v : r.violations) {
        out_ << "  " << to_string(v.kind) << " at " << v.at << " proc " << v.proc << ": " << v.detail << "\n";
      }
    }
    return r.clean() ? 0 : 1;
  }

  int simulate() {
    const auto& name = need(o_.system, "--system");
    const Pts s = doc_.system(name);
    DelayProfile profile;
    if (!o_.fraction.empty() || o_.profile.empty()) {
      profile = DelayProfile::from_bounds(s, rational_arg(o_.fraction.empty() ? "0.99" : o_.fraction, "--fraction"));
    }
    if (!o_.profile.empty()) {
      const DelayProfile file = load_profile(read_input(o_.profile, in_));
      for (const auto& [k, v] : file.delays) profile.delays[k] = v;
      profile.seed = file.seed;
    }
    if (o_.seed_set) profile.seed = o_.seed;
    std::vector<Fault> faults;
    for (const auto& f : o_.faults) faults.push_back(parse_fault(f));
    const auto trace = generate(s, profile, o_.cycles, faults);
    if (as_json()) {
      json events = json::array();
      for (const auto& e : trace) events.push_back({{"proc", e.proc}, {"symbol", e.symbol.str()}, {"time", e.time.str()}});
      emit({{"system", name}, {"seed", profile.seed}, {"cycles", o_.cycles}, {"events", events}});
    } else {
      out_ << format_trace(trace);
    }
    return 0;
  }

  const Options& o_;
  std::istream& in_;
  std::ostream& out_;
  SpecDocument doc_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timing analysis for parallel timing systems"};
  app.name("ptv");
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto file_opt = [&](CLI::App* sub) { sub->add_option("file", o.file, "Specification file (- for stdin)")->required(); };
  auto fmt_opt = [&](CLI::App* sub) { sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"})); };
  auto automaton = [&](CLI::App* sub) { sub->add_option("--automaton", o.automaton, "Automaton name")->required(); };
  auto system = [&](CLI::App* sub) { sub->add_option("--system", o.system, "System name")->required(); };

  struct Cmd {
    const char* name;
    const char* help;
  };
  const std::vector<Cmd> cmds{
      {"check-wf", "Check that no timer is guard-checked twice on a path"},
      {"accept", "Decide acceptance of a timed word (TFA) or lasso word (TBA)"},
      {"delay", "Maximum delay of an automaton"},
      {"tba-delay", "Segment delay over a state path"},
      {"flatten", "Replace children by derived timers"},
      {"uses", "Fork/join use pairs"},
      {"consistency", "Decide timing consistency of a system"},
      {"cycle-bound", "Worst duration of one parent cycle"},
      {"monitor", "Check a trace against a system"},
      {"simulate", "Generate a trace for a system"},
      {"fmt", "Print the canonical form of a specification"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    file_opt(sub);
    fmt_opt(sub);
    subs[c.name] = sub;
  }
  automaton(subs["check-wf"]);
  automaton(subs["accept"]);
  subs["accept"]->add_option("--word", o.word, "Timed word, e.g. \"a@1 b@2\"; for a TBA, \"prefix | cycle period=N\"")->required();
  automaton(subs["delay"]);
  automaton(subs["tba-delay"]);
  subs["tba-delay"]->add_option("--path", o.path, "States in order, comma separated")->required();
  for (const char* c : {"flatten", "uses", "consistency", "cycle-bound", "monitor", "simulate"}) system(subs[c]);
  subs["monitor"]->add_option("--trace", o.trace, "Trace CSV (default stdin)");
  CLI::App* sim = subs["simulate"];
  sim->add_option("--cycles", o.cycles, "Parent cycles")->check(CLI::NonNegativeNumber);
  sim->add_option("--profile", o.profile, "Delay profile JSON");
  sim->add_option("--fraction", o.fraction, "Delay as a fraction of each guard bound (default 0.99)");
  sim->add_option("--fault", o.faults, "proc,from,to,symbol,cycle,delay");
  sim->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
    o.seed = s;
    o.seed_set = true;
  }, "Random seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  std::string cmd;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) cmd = name;
  }

  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    if (o.format == "json") {
      out << json{{"error", {{"code", kind}, {"message", message}}}}.dump(2) << "\n";
    } else {
      err << "ptv: " << message << "\n";
    }
    return code;
  };
  try {
    return Runner(o, in, out).dispatch(cmd);
  } catch (const UsageError& e) {
    return fail(2, "Usage", e.what());
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::SyntaxError:
      case ErrorCode::SemanticError:
      case ErrorCode::InvalidWord:
      case ErrorCode::UnknownSymbol:
        return fail(2, std::string(to_string(e.code())), e.what());
      default:
        return fail(1, std::string(to_string(e.code())), e.what());
    }
  }
}

}  // namespace ptv::cli
