#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptv/pts.hpp"

namespace ptv {

struct TfaDecl {
  std::string name;
  Tfa tfa;

  friend bool operator==(const TfaDecl&, const TfaDecl&) = default;
};

struct TbaDecl {
  std::string name;
  Tba tba;
  // Parallel to tba.edges.
  std::vector<std::set<ChildId>> forks;
  std::vector<std::set<ChildId>> joins;

  friend bool operator==(const TbaDecl&, const TbaDecl&) = default;
};

struct ChildBinding {
  ChildId id;
  std::string tfa;  // declaration the instance runs

  friend bool operator==(const ChildBinding&, const ChildBinding&) = default;
};

struct PtsDecl {
  std::string name;
  std::string parent;
  std::vector<ChildBinding> children;

  friend bool operator==(const PtsDecl&, const PtsDecl&) = default;
};

using Declaration = std::variant<TfaDecl, TbaDecl, PtsDecl>;

struct SpecDocument {
  std::vector<Declaration> decls;

  std::size_t automaton_count() const;
  std::size_t system_count() const;

  /// Throw SemanticError when `name` is missing or of another kind.
  const Tfa& tfa(const std::string& name) const;
  const Tba& tba(const std::string& name) const;
  const TbaDecl& tba_decl(const std::string& name) const;
  Pts system(const std::string& name) const;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

/// Throws SyntaxError or SemanticError.
SpecDocument parse_spec(std::string_view text);

/// Canonical text: sorted sets, edges in declaration order, LF endings.
std::string serialize(const SpecDocument& doc);

/// `a@1 b@2.5 c@7/2`. Throws SyntaxError or Error(InvalidWord).
TimedWord parse_word(std::string_view text);

/// `prefix | cycle period=N`; either side of `|` may hold events, the cycle must not be empty.
LassoWord parse_lasso(std::string_view text);

std::string format_word(const TimedWord& w);

}  // namespace ptv
