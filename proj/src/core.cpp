#include "ptv/core.hpp"

#include <algorithm>

namespace ptv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::UnknownTimer: return "UnknownTimer";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::UnchainedPath: return "UnchainedPath";
    case ErrorCode::NotWellFormed: return "NotWellFormed";
    case ErrorCode::NoAcceptingPath: return "NoAcceptingPath";
    case ErrorCode::NoSuchPath: return "NoSuchPath";
    case ErrorCode::UnreachablePathStart: return "UnreachablePathStart";
    case ErrorCode::UnsupportedLasso: return "UnsupportedLasso";
    case ErrorCode::UnboundedChild: return "UnboundedChild";
    case ErrorCode::DegenerateChild: return "DegenerateChild";
    case ErrorCode::NoParentCycle: return "NoParentCycle";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::OutOfOrderEvent: return "OutOfOrderEvent";
    case ErrorCode::IncompleteProfile: return "IncompleteProfile";
    case ErrorCode::DirtyTrace: return "DirtyTrace";
  }
  return "Unknown";
}

TimedWord::TimedWord(std::vector<TimedEvent> items) : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].symbol.empty()) throw Error(ErrorCode::InvalidWord, "empty symbol at position " + std::to_string(i));
    if (items_[i].time.sign() < 0) {
      throw Error(ErrorCode::InvalidWord, "negative timestamp " + items_[i].time.str());
    }
    if (i > 0 && !(items_[i - 1].time < items_[i].time)) {
      throw Error(ErrorCode::InvalidWord, "timestamps must strictly increase (" + items_[i - 1].time.str() +
                                              " then " + items_[i].time.str() + ")");
    }
  }
}

TimedWord TimedWord::shifted(const Rational& offset) const {
  std::vector<TimedEvent> out = items_;
  for (auto& e : out) e.time += offset;
  return TimedWord(std::move(out));
}

TimedWord TimedWord::scaled(const Rational& factor) const {
  std::vector<TimedEvent> out = items_;
  for (auto& e : out) e.time *= factor;
  return TimedWord(std::move(out));
}

Rational duration(const TimedWord& word) {
  if (word.empty()) throw Error(ErrorCode::EmptyWord, "duration of an empty word");
  return word.items().back().time - word.items().front().time;
}

ClockInterpretation ClockInterpretation::zero(const std::set<Timer>& clocks) {
  ClockInterpretation v;
  for (const auto& c : clocks) v.values_.emplace(c, Rational(0));
  return v;
}

const Rational& ClockInterpretation::at(const Timer& timer) const {
  const auto it = values_.find(timer);
  if (it == values_.end()) throw Error(ErrorCode::UnknownTimer, timer.str());
  return it->second;
}

ClockInterpretation ClockInterpretation::advanced(const Rational& delta) const {
  ClockInterpretation v = *this;
  for (auto& [_, value] : v.values_) value += delta;
  return v;
}

ClockInterpretation ClockInterpretation::with_reset(const std::set<Timer>& timers) const {
  ClockInterpretation v = *this;
  for (const auto& t : timers) v.values_[t] = Rational(0);
  return v;
}

GuardAtom::GuardAtom(Timer t, Rational b) : timer(std::move(t)), bound(std::move(b)) {
  if (bound.sign() <= 0) {
    throw Error(ErrorCode::InvalidStructure, "guard bound on " + timer.str() + " must be positive, got " + bound.str());
  }
}

Guard::Guard(std::initializer_list<GuardAtom> atoms) {
  for (const auto& a : atoms) add(a);
}

void Guard::add(const GuardAtom& atom) {
  auto [it, inserted] = bounds_.emplace(atom.timer, atom.bound);
  if (!inserted && atom.bound < it->second) it->second = atom.bound;
}

std::vector<GuardAtom> Guard::atoms() const {
  std::vector<GuardAtom> out;
  out.reserve(bounds_.size());
  for (const auto& [t, b] : bounds_) out.emplace_back(t, b);
  return out;
}

std::vector<GuardAtom> Guard::violated(const ClockInterpretation& v) const {
  std::vector<GuardAtom> out;
  for (const auto& [t, b] : bounds_) {
    if (!(v.at(t) < b)) out.emplace_back(t, b);
  }
  return out;
}

bool guard_satisfied(const Guard& guard, const ClockInterpretation& v) {
  return std::all_of(guard.bounds().begin(), guard.bounds().end(),
                     [&](const auto& atom) { return v.at(atom.first) < atom.second; });
}

std::string to_string(const EdgeKey& key) {
  return key.from.str() + " -" + key.symbol.str() + "-> " + key.to.str();
}

}  // namespace ptv
