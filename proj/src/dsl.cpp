#include "ptv/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace ptv {

namespace {

enum class Tok { Word, LBrace, RBrace, Semi, Comma, Less, Equals, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '/';
}

bool is_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const int l = line, k = col;
    auto single = [&](Tok kind) {
      out.push_back({kind, std::string(1, c), l, k});
      advance(1);
    };
    switch (c) {
      case '{': single(Tok::LBrace); continue;
      case '}': single(Tok::RBrace); continue;
      case ';': single(Tok::Semi); continue;
      case ',': single(Tok::Comma); continue;
      case '<': single(Tok::Less); continue;
      case '=': single(Tok::Equals); continue;
      default: break;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, k});
      advance(2);
      continue;
    }
    std::size_t j = i;
    if (c == '-' && i + 1 < text.size() && (std::isdigit(static_cast<unsigned char>(text[i + 1])) != 0 || text[i + 1] == '.')) ++j;
    while (j < text.size() && word_char(text[j])) ++j;
    if (j == i) throw SyntaxError(l, k, "token", "'" + std::string(1, c) + "'");
    out.push_back({Tok::Word, std::string(text.substr(i, j - i)), l, k});
    advance(j - i);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct GuardSpec {
  std::string timer;
  Rational bound;
};

struct EdgeSpec {
  std::string from, to, symbol;
  std::vector<GuardSpec> guards;
  std::vector<std::string> resets, forks, joins;
};

struct BodySpec {
  std::vector<std::string> alphabet, clocks;
  std::optional<std::vector<std::string>> states;
  std::optional<std::string> start;
  std::optional<std::vector<std::string>> accept;
  std::vector<EdgeSpec> edges;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  SpecDocument document() {
    SpecDocument doc;
    while (peek().kind != Tok::End) {
      const Token& kw = expect(Tok::Word, "'tfa', 'tba' or 'pts'");
      if (kw.text == "tfa" || kw.text == "tba") {
        const std::string name = name_token("automaton name");
        expect(Tok::LBrace, "'{'");
        BodySpec body = automaton_body();
        expect(Tok::RBrace, "'}'");
        if (kw.text == "tfa") {
          doc.decls.emplace_back(build_tfa(name, body));
        } else {
          doc.decls.emplace_back(build_tba(name, body));
        }
      } else if (kw.text == "pts") {
        doc.decls.emplace_back(system());
      } else {
        throw SyntaxError(kw.line, kw.col, "'tfa', 'tba' or 'pts'", describe(kw));
      }
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) throw SyntaxError(t.line, t.col, what, describe(t));
    ++pos_;
    return t;
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  std::string name_token(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Word || !is_name(t.text)) throw SyntaxError(t.line, t.col, what, describe(t));
    ++pos_;
    return t.text;
  }

  Rational number() {
    const Token& t = peek();
    if (t.kind == Tok::Word) {
      if (auto r = Rational::try_parse(t.text)) {
        ++pos_;
        return *r;
      }
    }
    throw SyntaxError(t.line, t.col, "number", describe(t));
  }

  // NAME*  ';'
  std::vector<std::string> names_until_semi(const std::string& what) {
    std::vector<std::string> out;
    while (peek().kind != Tok::Semi) out.push_back(name_token(what));
    ++pos_;
    return out;
  }

  // NAME (',' NAME)* ';'
  std::vector<std::string> name_list(const std::string& what) {
    std::vector<std::string> out{name_token(what)};
    while (accept(Tok::Comma)) out.push_back(name_token(what));
    expect(Tok::Semi, "',' or ';'");
    return out;
  }

  static bool is_clause(const std::string& w) {
    return w == "alphabet" || w == "clocks" || w == "states" || w == "start" || w == "accept";
  }

  BodySpec automaton_body() {
    BodySpec body;
    bool have_alphabet = false, have_clocks = false;
    while (peek().kind != Tok::RBrace) {
      const Token& head = peek();
      if (head.kind == Tok::Word && is_clause(head.text) && peek(1).kind != Tok::Arrow) {
        ++pos_;
        auto once = [&](bool& flag) {
          if (flag) throw SemanticError(head.text, "declared twice");
          flag = true;
        };
        if (head.text == "alphabet") {
          once(have_alphabet);
          body.alphabet = names_until_semi("symbol");
        } else if (head.text == "clocks") {
          once(have_clocks);
          body.clocks = names_until_semi("timer");
        } else if (head.text == "states") {
          if (body.states) throw SemanticError("states", "declared twice");
          body.states = names_until_semi("state");
        } else if (head.text == "start") {
          if (body.start) throw SemanticError("start", "declared twice");
          body.start = name_token("state");
          expect(Tok::Semi, "';'");
        } else {
          if (body.accept) throw SemanticError("accept", "declared twice");
          body.accept = name_list("state");
        }
        continue;
      }
      if (head.kind != Tok::Word) throw SyntaxError(head.line, head.col, "clause or edge", describe(head));
      body.edges.push_back(edge());
    }
    return body;
  }

  EdgeSpec edge() {
    EdgeSpec e;
    e.from = name_token("state");
    expect(Tok::Arrow, "'->'");
    e.to = name_token("state");
    const Token& on = peek();
    if (on.kind != Tok::Word || on.text != "on") throw SyntaxError(on.line, on.col, "'on'", describe(on));
    ++pos_;
    e.symbol = name_token("symbol");
    if (accept(Tok::LBrace)) {
      while (!accept(Tok::RBrace)) {
        const Token& kw = peek();
        if (kw.kind != Tok::Word) throw SyntaxError(kw.line, kw.col, "'guard', 'reset', 'fork', 'join' or '}'", describe(kw));
        ++pos_;
        if (kw.text == "guard") {
          do {
            GuardSpec g;
            g.timer = name_token("timer");
            expect(Tok::Less, "'<'");
            g.bound = number();
            e.guards.push_back(std::move(g));
          } while (accept(Tok::Comma));
          expect(Tok::Semi, "',' or ';'");
        } else if (kw.text == "reset") {
          auto names = name_list("timer");
          e.resets.insert(e.resets.end(), names.begin(), names.end());
        } else if (kw.text == "fork") {
          auto names = name_list("child");
          e.forks.insert(e.forks.end(), names.begin(), names.end());
        } else if (kw.text == "join") {
          auto names = name_list("child");
          e.joins.insert(e.joins.end(), names.begin(), names.end());
        } else {
          throw SyntaxError(kw.line, kw.col, "'guard', 'reset', 'fork', 'join' or '}'", describe(kw));
        }
      }
      accept(Tok::Semi);
    } else {
      expect(Tok::Semi, "'{' or ';'");
    }
    return e;
  }

  PtsDecl system() {
    PtsDecl d;
    d.name = name_token("system name");
    expect(Tok::LBrace, "'{'");
    bool have_parent = false, have_children = false;
    while (!accept(Tok::RBrace)) {
      const Token& kw = peek();
      if (kw.kind == Tok::Word && kw.text == "parent") {
        ++pos_;
        if (have_parent) throw SemanticError("pts " + d.name, "parent declared twice");
        have_parent = true;
        d.parent = name_token("automaton name");
        expect(Tok::Semi, "';'");
      } else if (kw.kind == Tok::Word && kw.text == "children") {
        ++pos_;
        if (have_children) throw SemanticError("pts " + d.name, "children declared twice");
        have_children = true;
        do {
          ChildBinding b;
          b.id = ChildId(name_token("child"));
          b.tfa = accept(Tok::Equals) ? name_token("automaton name") : b.id.str();
          d.children.push_back(std::move(b));
        } while (accept(Tok::Comma));
        expect(Tok::Semi, "',' or ';'");
      } else {
        throw SyntaxError(kw.line, kw.col, "'parent', 'children' or '}'", describe(kw));
      }
    }
    if (!have_parent) throw SemanticError("pts " + d.name, "missing parent");
    return d;
  }

  template <typename T>
  static std::set<T> unique_set(const std::vector<std::string>& names, const std::string& entity) {
    std::set<T> out;
    for (const auto& n : names) {
      if (!out.insert(T(n)).second) throw SemanticError(entity, "duplicate " + n);
    }
    return out;
  }

  static void build_common(const std::string& entity, const BodySpec& body, Automaton& a,
                           std::vector<std::set<ChildId>>* forks, std::vector<std::set<ChildId>>* joins) {
    a.alphabet = unique_set<Symbol>(body.alphabet, entity + " alphabet");
    a.clocks = unique_set<Timer>(body.clocks, entity + " clocks");
    if (!body.start) throw SemanticError(entity, "missing start state");
    if (!body.accept) throw SemanticError(entity, "missing accept clause");
    a.start = StateId(*body.start);

    const bool declared = body.states.has_value();
    if (declared) {
      a.states = unique_set<StateId>(*body.states, entity + " states");
    } else {
      a.states.insert(a.start);
      for (const auto& s : *body.accept) a.states.insert(StateId(s));
      for (const auto& e : body.edges) {
        a.states.insert(StateId(e.from));
        a.states.insert(StateId(e.to));
      }
    }
    auto state = [&](const std::string& s, const std::string& where) {
      StateId id(s);
      if (!a.states.contains(id)) throw SemanticError(where, "undeclared state " + s);
      return id;
    };
    state(*body.start, entity + " start");
    for (const auto& s : *body.accept) state(s, entity + " accept");

    std::set<EdgeKey> keys;
    for (const auto& spec : body.edges) {
      const std::string where = entity + " edge " + spec.from + " -" + spec.symbol + "-> " + spec.to;
      Edge e;
      e.from = state(spec.from, where);
      e.to = state(spec.to, where);
      e.symbol = Symbol(spec.symbol);
      if (!a.alphabet.contains(e.symbol)) throw SemanticError(where, "symbol " + spec.symbol + " not in alphabet");
      for (const auto& g : spec.guards) {
        if (!a.clocks.contains(Timer(g.timer))) throw SemanticError(where, "undeclared clock " + g.timer);
        if (g.bound.sign() <= 0) throw SemanticError(where, "bound on " + g.timer + " must be positive, got " + g.bound.str());
        e.guard.add(GuardAtom(Timer(g.timer), g.bound));
      }
      for (const auto& r : spec.resets) {
        if (!a.clocks.contains(Timer(r))) throw SemanticError(where, "undeclared clock " + r);
        e.resets.insert(Timer(r));
      }
      if (!keys.insert(e.key()).second) throw SemanticError(where, "duplicate edge");
      if (forks) {
        forks->push_back(unique_set<ChildId>(spec.forks, where + " fork"));
        joins->push_back(unique_set<ChildId>(spec.joins, where + " join"));
      } else if (!spec.forks.empty() || !spec.joins.empty()) {
        throw SemanticError(where, "fork and join are only allowed in a tba");
      }
      a.edges.push_back(std::move(e));
    }
  }

  static TfaDecl build_tfa(const std::string& name, const BodySpec& body) {
    TfaDecl d;
    d.name = name;
    const std::string entity = "tfa " + name;
    build_common(entity, body, d.tfa, nullptr, nullptr);
    if (body.accept->size() != 1) throw SemanticError(entity, "a tfa has exactly one accepting state");
    d.tfa.accept = StateId(body.accept->front());
    return d;
  }

  static TbaDecl build_tba(const std::string& name, const BodySpec& body) {
    TbaDecl d;
    d.name = name;
    const std::string entity = "tba " + name;
    build_common(entity, body, d.tba, &d.forks, &d.joins);
    d.tba.accepting = unique_set<StateId>(*body.accept, entity + " accept");
    return d;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

const std::string& decl_name(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

template <typename T>
std::string joined(const T& items, const std::string& sep) {
  std::string out;
  for (const auto& x : items) {
    if (!out.empty()) out += sep;
    out += x.str();
  }
  return out;
}

void write_body(std::ostringstream& os, const Automaton& a) {
  os << "  alphabet" << (a.alphabet.empty() ? "" : " ") << joined(a.alphabet, " ") << ";\n";
  os << "  clocks" << (a.clocks.empty() ? "" : " ") << joined(a.clocks, " ") << ";\n";
  os << "  states" << (a.states.empty() ? "" : " ") << joined(a.states, " ") << ";\n";
  os << "  start " << a.start << ";\n";
}

void write_edge(std::ostringstream& os, const Edge& e, const std::set<ChildId>* forks, const std::set<ChildId>* joins) {
  os << "  " << e.from << " -> " << e.to << " on " << e.symbol;
  std::vector<std::string> parts;
  if (!e.guard.empty()) {
    std::string g = "guard ";
    bool first = true;
    for (const auto& [t, b] : e.guard.bounds()) {
      if (!first) g += ", ";
      first = false;
      g += t.str() + " < " + b.str();
    }
    parts.push_back(g);
  }
  if (!e.resets.empty()) parts.push_back("reset " + joined(e.resets, ", "));
  if (forks && !forks->empty()) parts.push_back("fork " + joined(*forks, ", "));
  if (joins && !joins->empty()) parts.push_back("join " + joined(*joins, ", "));
  if (!parts.empty()) {
    os << " {";
    for (const auto& p : parts) os << " " << p << ";";
    os << " }";
  }
  os << ";\n";
}

}  // namespace

std::size_t SpecDocument::automaton_count() const {
  return static_cast<std::size_t>(std::count_if(decls.begin(), decls.end(), [](const Declaration& d) {
    return !std::holds_alternative<PtsDecl>(d);
  }));
}

std::size_t SpecDocument::system_count() const { return decls.size() - automaton_count(); }

const Tfa& SpecDocument::tfa(const std::string& name) const {
  for (const auto& d : decls) {
    if (const auto* t = std::get_if<TfaDecl>(&d); t && t->name == name) return t->tfa;
  }
  throw SemanticError(name, "no tfa of this name");
}

const TbaDecl& SpecDocument::tba_decl(const std::string& name) const {
  for (const auto& d : decls) {
    if (const auto* t = std::get_if<TbaDecl>(&d); t && t->name == name) return *t;
  }
  throw SemanticError(name, "no tba of this name");
}

const Tba& SpecDocument::tba(const std::string& name) const { return tba_decl(name).tba; }

Pts SpecDocument::system(const std::string& name) const {
  const PtsDecl* decl = nullptr;
  for (const auto& d : decls) {
    if (const auto* p = std::get_if<PtsDecl>(&d); p && p->name == name) decl = p;
  }
  if (!decl) throw SemanticError(name, "no pts of this name");
  const std::string entity = "pts " + name;

  Pts s;
  const TbaDecl& parent = [&]() -> const TbaDecl& {
    try {
      return tba_decl(decl->parent);
    } catch (const SemanticError&) {
      throw SemanticError(entity, "parent " + decl->parent + " is not a declared tba");
    }
  }();
  s.parent = parent.tba;
  for (const auto& b : decl->children) {
    const Tfa* child = nullptr;
    try {
      child = &tfa(b.tfa);
    } catch (const SemanticError&) {
      throw SemanticError(entity, "child " + b.id.str() + " refers to " + b.tfa + ", which is not a declared tfa");
    }
    if (!s.children.emplace(b.id, *child).second) throw SemanticError(entity, "duplicate child " + b.id.str());
  }
  for (std::size_t i = 0; i < parent.tba.edges.size(); ++i) {
    const EdgeKey key = parent.tba.edges[i].key();
    for (const auto& c : parent.forks[i]) {
      if (!s.children.contains(c)) throw SemanticError(entity, "fork of unknown child " + c.str() + " on " + to_string(key));
      s.forks.insert({key, c});
    }
    for (const auto& c : parent.joins[i]) {
      if (!s.children.contains(c)) throw SemanticError(entity, "join of unknown child " + c.str() + " on " + to_string(key));
      s.joins.insert({key, c});
    }
  }
  for (const auto& [id, _] : s.children) {
    const bool forked = std::any_of(s.forks.begin(), s.forks.end(), [&](const Annotation& a) { return a.child == id; });
    const bool joined = std::any_of(s.joins.begin(), s.joins.end(), [&](const Annotation& a) { return a.child == id; });
    if (!forked || !joined) throw SemanticError(entity, "child " + id.str() + " must be both forked and joined");
  }
  return s;
}

SpecDocument parse_spec(std::string_view text) {
  SpecDocument doc = Parser(text).document();
  std::set<std::string> names;
  for (const auto& d : doc.decls) {
    if (!names.insert(decl_name(d)).second) throw SemanticError(decl_name(d), "duplicate declaration name");
  }
  for (const auto& d : doc.decls) {
    if (const auto* p = std::get_if<PtsDecl>(&d)) doc.system(p->name);
  }
  return doc;
}

std::string serialize(const SpecDocument& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : doc.decls) {
    if (!first) os << "\n";
    first = false;
    if (const auto* t = std::get_if<TfaDecl>(&d)) {
      os << "tfa " << t->name << " {\n";
      write_body(os, t->tfa);
      os << "  accept " << t->tfa.accept << ";\n";
      for (const auto& e : t->tfa.edges) write_edge(os, e, nullptr, nullptr);
      os << "}\n";
    } else if (const auto* b = std::get_if<TbaDecl>(&d)) {
      os << "tba " << b->name << " {\n";
      write_body(os, b->tba);
      os << "  accept " << joined(b->tba.accepting, ", ") << ";\n";
      for (std::size_t i = 0; i < b->tba.edges.size(); ++i) {
        write_edge(os, b->tba.edges[i], i < b->forks.size() ? &b->forks[i] : nullptr,
                   i < b->joins.size() ? &b->joins[i] : nullptr);
      }
      os << "}\n";
    } else {
      const auto& p = std::get<PtsDecl>(d);
      os << "pts " << p.name << " {\n  parent " << p.parent << ";\n";
      if (!p.children.empty()) {
        os << "  children ";
        for (std::size_t i = 0; i < p.children.size(); ++i) {
          if (i) os << ", ";
          os << p.children[i].id;
          if (p.children[i].tfa != p.children[i].id.str()) os << " = " << p.children[i].tfa;
        }
        os << ";\n";
      }
      os << "}\n";
    }
  }
  return os.str();
}

namespace {

struct WordTok {
  std::string text;
  int col;
};

std::vector<WordTok> split_words(std::string_view text) {
  std::vector<WordTok> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) != 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j])) == 0) ++j;
    out.push_back({std::string(text.substr(i, j - i)), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

TimedEvent event_of(const WordTok& t) {
  const auto at = t.text.find('@');
  if (at == std::string::npos) throw SyntaxError(1, t.col, "symbol@time", "'" + t.text + "'");
  const std::string sym = t.text.substr(0, at);
  if (!is_name(sym)) throw SyntaxError(1, t.col, "symbol", "'" + sym + "'");
  const auto time = Rational::try_parse(t.text.substr(at + 1));
  if (!time) throw SyntaxError(1, t.col + static_cast<int>(at) + 1, "time", "'" + t.text.substr(at + 1) + "'");
  return {Symbol(sym), *time};
}

}  // namespace

TimedWord parse_word(std::string_view text) {
  std::vector<TimedEvent> events;
  for (const auto& t : split_words(text)) events.push_back(event_of(t));
  return TimedWord(std::move(events));
}

LassoWord parse_lasso(std::string_view text) {
  std::vector<TimedEvent> prefix, cycle;
  std::optional<Rational> period;
  bool in_cycle = false;
  for (const auto& t : split_words(text)) {
    if (t.text == "|") {
      if (in_cycle) throw SyntaxError(1, t.col, "a single '|'", "'|'");
      in_cycle = true;
    } else if (t.text.rfind("period=", 0) == 0) {
      if (period) throw SyntaxError(1, t.col, "a single period", "'" + t.text + "'");
      period = Rational::try_parse(t.text.substr(7));
      if (!period || period->sign() <= 0) throw SyntaxError(1, t.col + 7, "positive period", "'" + t.text.substr(7) + "'");
    } else {
      (in_cycle ? cycle : prefix).push_back(event_of(t));
    }
  }
  const int end = static_cast<int>(text.size()) + 1;
  if (!in_cycle) throw SyntaxError(1, end, "'|'", "end of input");
  if (!period) throw SyntaxError(1, end, "period=<num>", "end of input");
  if (cycle.empty()) throw SyntaxError(1, end, "cycle events", "end of input");
  return {TimedWord(std::move(prefix)), TimedWord(std::move(cycle)), *period};
}

std::string format_word(const TimedWord& w) {
  std::string out;
  for (const auto& ev : w) {
    if (!out.empty()) out += " ";
    out += ev.symbol.str() + "@" + ev.time.str();
  }
  return out;
}

}  // namespace ptv
