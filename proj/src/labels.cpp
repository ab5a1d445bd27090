#include "adwords/labels.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "adwords/errors.hpp"

namespace adwords {

LabelState::LabelState(const LaminarForest& forest) : forest_(&forest) {
  const std::size_t n = forest.size();
  L_.resize(n);
  T_.resize(n);
  num_.resize(n);
  den_.resize(n);
  revenue_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& singles = forest.descendant_singletons(static_cast<int>(s));
    L_[s].insert(singles.begin(), singles.end());
    recompute(static_cast<int>(s));
  }
}

void LabelState::recompute(int s) {
  Rational n;
  for (int c : L_[idx(s)]) n += revenue_[idx(c)];
  Rational d = forest_->budget(s);
  for (int t : T_[idx(s)]) d -= forest_->budget(t);
  num_[idx(s)] = std::move(n);
  den_[idx(s)] = std::move(d);
}

Rational LabelState::label(int s) const {
  if (den_[idx(s)].sign() <= 0) {
    throw ZeroDenominator("zero denominator in label of '" + forest_->id(s) + "'");
  }
  return num_[idx(s)] / den_[idx(s)];
}

Rational LabelState::g_value(int s) const {
  Rational g = label(s);
  for (int a : forest_->ancestors(s)) g = max(g, label(a));
  return g;
}

Rational LabelState::revenue(int dim) const {
  const int c = forest_->singleton_of(dim);
  return c < 0 ? Rational(0) : revenue_[idx(c)];
}

bool LabelState::labels_equal(int a, int b) const {
  return num_[idx(a)] * den_[idx(b)] == num_[idx(b)] * den_[idx(a)];
}

std::optional<Crossing> LabelState::next_crossing(int dim) const {
  const int leaf = forest_->singleton_of(dim);
  if (leaf < 0) return std::nullopt;
  // nodes whose label grows with R(dim), leaf first
  std::vector<int> growing;
  for (int a : forest_->ancestors(leaf)) {
    if (L_[idx(a)].contains(leaf)) growing.push_back(a);
  }
  std::optional<Crossing> best;
  auto offer = [&](Rational x, LabelEvent::Kind kind, int s, int sp) {
    if (x.sign() < 0) return;
    if (best && x > best->x) return;
    if (!best || x < best->x) best = Crossing{x, {}};
    best->events.push_back(LabelEvent{kind, s, sp, x});
  };
  for (std::size_t i = 0; i < growing.size(); ++i) {
    const int sp = growing[i];
    for (std::size_t j = i + 1; j < growing.size(); ++j) {
      const int s = growing[j];
      const Rational& ds = den_[idx(s)];
      const Rational& dsp = den_[idx(sp)];
      if (!(dsp < ds)) continue;  // descendant must grow strictly faster
      offer((num_[idx(s)] * dsp - num_[idx(sp)] * ds) / (ds - dsp), LabelEvent::Kind::Shield, s, sp);
    }
  }
  for (int s : growing) {
    for (int t : T_[idx(s)]) {
      offer(label(t) * den_[idx(s)] - num_[idx(s)], LabelEvent::Kind::Merge, s, t);
    }
  }
  if (best) {
    const LaminarForest& f = *forest_;
    // Shields run deepest s first so a node that stops growing is never
    // shielded by its ancestor at an equal label.
    auto key = [&f](const LabelEvent& e) {
      const int ds = e.kind == LabelEvent::Kind::Shield ? -f.depth(e.s) : f.depth(e.s);
      return std::make_tuple(e.kind, ds, f.depth(e.s_prime), e.s, e.s_prime);
    };
    std::sort(best->events.begin(), best->events.end(),
              [&key](const LabelEvent& a, const LabelEvent& b) { return key(a) < key(b); });
  }
  return best;
}

void LabelState::apply_event1(int s, int s_prime) {
  if (s == s_prime || !forest_->contains(s, s_prime)) {
    throw Error("event 1 needs a strict descendant");
  }
  if (!labels_equal(s, s_prime)) throw NotAtTransition("event 1 off the transition point");
  const Rational before = label(s);
  auto& L = L_[idx(s)];
  auto& T = T_[idx(s)];
  for (int c : forest_->descendant_singletons(s_prime)) L.erase(c);
  std::erase_if(T, [&](int t) { return forest_->contains(s_prime, t); });
  T.insert(s_prime);
  recompute(s);
  if (label(s) != before) throw InvariantViolation("event 1 moved the label of '" + forest_->id(s) + "'");
}

void LabelState::apply_event2(int s, int s_prime) {
  auto& T = T_[idx(s)];
  if (!T.contains(s_prime)) throw Error("'" + forest_->id(s_prime) + "' is not in T(" + forest_->id(s) + ")");
  if (!labels_equal(s, s_prime)) throw NotAtTransition("event 2 off the transition point");
  const Rational before = label(s);
  T.erase(s_prime);
  T.insert(T_[idx(s_prime)].begin(), T_[idx(s_prime)].end());
  L_[idx(s)].insert(L_[idx(s_prime)].begin(), L_[idx(s_prime)].end());
  recompute(s);
  if (label(s) != before) throw InvariantViolation("event 2 moved the label of '" + forest_->id(s) + "'");
}

bool LabelState::still_valid(const LabelEvent& e, int leaf) const {
  if (!L_[idx(e.s)].contains(leaf) || !labels_equal(e.s, e.s_prime)) return false;
  if (e.kind == LabelEvent::Kind::Merge) return T_[idx(e.s)].contains(e.s_prime);
  return L_[idx(e.s_prime)].contains(leaf) && den_[idx(e.s_prime)] < den_[idx(e.s)];
}

void LabelState::apply(const LabelEvent& e) {
  if (e.kind == LabelEvent::Kind::Merge) {
    apply_event2(e.s, e.s_prime);
  } else {
    apply_event1(e.s, e.s_prime);
  }
}

void LabelState::add_revenue(int leaf, const Rational& x) {
  if (x.is_zero()) return;
  revenue_[idx(leaf)] += x;
  for (int a : forest_->ancestors(leaf)) {
    if (L_[idx(a)].contains(leaf)) num_[idx(a)] += x;
  }
}

std::vector<LabelEvent> LabelState::increment_revenue(int dim, const Rational& amount) {
  if (amount.sign() < 0) throw std::invalid_argument("negative revenue increment");
  std::vector<LabelEvent> applied;
  const int leaf = forest_->singleton_of(dim);
  if (leaf < 0 || amount.is_zero()) {
    return applied;
  }
  Rational remaining = amount;
  Rational offset;
  const std::size_t n = forest_->size();
  const std::size_t guard_limit = 4 * n * n + 16;
  std::size_t zero_steps = 0;
  // One event per round: every application changes L, T and denominators,
  // so the next crossing is recomputed from scratch.
  while (true) {
    auto crossing = next_crossing(dim);
    if (!crossing || crossing->x > remaining) {
      add_revenue(leaf, remaining);
      return applied;
    }
    add_revenue(leaf, crossing->x);
    remaining -= crossing->x;
    offset += crossing->x;
    const bool at_end = remaining.is_zero();
    zero_steps = crossing->x.is_zero() ? zero_steps + 1 : 0;
    if (zero_steps > guard_limit) throw InvariantViolation("label events do not settle");

    const LabelEvent* next = nullptr;
    for (const LabelEvent& e : crossing->events) {
      // at the end point a shield would leave equal labels across T(s)
      if (at_end && e.kind == LabelEvent::Kind::Shield) continue;
      if (still_valid(e, leaf)) {
        next = &e;
        break;
      }
    }
    if (!next) {
      if (at_end) return applied;
      throw InvariantViolation("crossing without an applicable event");
    }
    LabelEvent e = *next;
    apply(e);
    e.offset = offset;
    applied.push_back(e);
  }
}

std::vector<std::string> LabelState::check_properties() const {
  std::vector<std::string> out;
  const LaminarForest& f = *forest_;
  for (int s = 0; s < static_cast<int>(f.size()); ++s) {
    const std::string name = "'" + f.id(s) + "'";
    // partition of descendant singletons
    std::vector<int> seen(L_[idx(s)].begin(), L_[idx(s)].end());
    for (int t : T_[idx(s)]) {
      if (t == s || !f.contains(s, t)) out.push_back("T(" + name + ") holds a non-descendant");
      const auto& sub = f.descendant_singletons(t);
      seen.insert(seen.end(), sub.begin(), sub.end());
    }
    std::sort(seen.begin(), seen.end());
    if (seen != f.descendant_singletons(s)) out.push_back("L/T of " + name + " do not partition its singletons");

    Rational n;
    for (int c : L_[idx(s)]) n += revenue_[idx(c)];
    Rational d = f.budget(s);
    for (int t : T_[idx(s)]) d -= f.budget(t);
    if (n != num_[idx(s)] || d != den_[idx(s)]) out.push_back("property 3 bookkeeping off at " + name);
    if (d.sign() <= 0) {
      out.push_back("non-positive label denominator at " + name);
      continue;
    }
    const Rational ls = n / d;
    for (int c : L_[idx(s)]) {
      for (int a = c; a != s && a >= 0; a = f.parent(a)) {
        if (den_[idx(a)].sign() > 0 && label(a) > ls) {
          out.push_back("property 1 fails: '" + f.id(a) + "' above " + name);
        }
      }
    }
    for (int t : T_[idx(s)]) {
      if (den_[idx(t)].sign() <= 0) continue;
      if (!(label(t) > ls)) out.push_back("property 2 fails: '" + f.id(t) + "' not above " + name);
      for (int a = f.parent(t); a != s && a >= 0; a = f.parent(a)) {
        if (den_[idx(a)].sign() > 0 && label(a) > ls) {
          out.push_back("property 2 fails: intermediate '" + f.id(a) + "' above " + name);
        }
      }
    }
  }
  return out;
}

std::string LabelState::dump() const {
  std::ostringstream os;
  const LaminarForest& f = *forest_;
  auto names = [&f](const std::set<int>& nodes) {
    std::string out = "{";
    bool first = true;
    for (int s : nodes) {
      if (!first) out += ",";
      out += f.id(s);
      first = false;
    }
    return out + "}";
  };
  for (int s = 0; s < static_cast<int>(f.size()); ++s) {
    const std::string lab = den_[idx(s)].sign() > 0 ? label(s).fraction_str() : "undefined";
    os << f.id(s) << " | " << lab << " | L=" << names(L_[idx(s)]) << " | T=" << names(T_[idx(s)]) << "\n";
  }
  return os.str();
}

}  // namespace adwords
