#include "bang/reduction.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace bang {

namespace {

constexpr std::array<std::string_view, 5> kRuleNames{"dB", "s!", "d!", "s", "sv"};
constexpr std::array<std::string_view, 6> kSelectorNames{"fun", "arg", "abs_body", "der_body", "sub_body", "sub_arg"};

}  // namespace

std::string_view rule_name(RuleKind k) { return kRuleNames[static_cast<std::size_t>(k)]; }

std::optional<RuleKind> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<RuleKind>(i);
  return std::nullopt;
}

std::string_view selector_name(Selector s) { return kSelectorNames[static_cast<std::size_t>(s)]; }

std::optional<Selector> selector_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSelectorNames.size(); ++i)
    if (kSelectorNames[i] == name) return static_cast<Selector>(i);
  return std::nullopt;
}

std::string print_position(const Position& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += selector_name(p[i]);
  }
  return out;
}

namespace {

const Term& child(const Term& t, Selector s) {
  using K = Term::Kind;
  switch (s) {
    case Selector::FunOf:
      if (t.is(K::App)) return t.fun();
      break;
    case Selector::ArgOf:
      if (t.is(K::App)) return t.arg();
      break;
    case Selector::BodyOfAbs:
      if (t.is(K::Abs)) return t.body();
      break;
    case Selector::BodyOfDer:
      if (t.is(K::Der)) return t.body();
      break;
    case Selector::BodyOfSub:
      if (t.is(K::Sub)) return t.body();
      break;
    case Selector::ArgOfSub:
      if (t.is(K::Sub)) return t.arg();
      break;
  }
  throw InvalidRedex("position selector " + std::string(selector_name(s)) + " does not match the term");
}

Term with_child(const Term& t, Selector s, const Term& c) {
  switch (s) {
    case Selector::FunOf: return Term::app(c, t.arg());
    case Selector::ArgOf: return Term::app(t.fun(), c);
    case Selector::BodyOfAbs: return Term::abs(t.name(), c);
    case Selector::BodyOfDer: return Term::der(c);
    case Selector::BodyOfSub: return Term::sub(c, t.name(), t.arg());
    case Selector::ArgOfSub: return Term::sub(t.body(), t.name(), c);
  }
  return t;
}

Term replace_rec(const Term& t, const Position& p, std::size_t i, const Term& r) {
  if (i == p.size()) return r;
  return with_child(t, p[i], replace_rec(child(t, p[i]), p, i + 1, r));
}

bool is_value(const Term& t) { return t.is(Term::Kind::Var) || t.is(Term::Kind::Abs); }

// Refreshes every closure binder of the spine that belongs to avoid.
void refresh_spine(std::vector<Closure>& spine, Term& core, const NameSet& avoid, NameSet used) {
  for (std::size_t i = 0; i < spine.size(); ++i) {
    const std::string y = spine[i].binder;
    if (!avoid.contains(y)) continue;
    std::string fresh = fresh_name(y, used);
    used.insert(fresh);
    Term replacement = Term::var(fresh);
    bool shadowed = false;
    for (std::size_t j = i + 1; j < spine.size(); ++j) {
      spine[j].arg = subst_meta(spine[j].arg, y, replacement);
      if (spine[j].binder == y) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) core = subst_meta(core, y, replacement);
    spine[i].binder = std::move(fresh);
  }
}

}  // namespace

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Selector s : p) cur = &child(*cur, s);
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_rec(t, p, 0, replacement);
}

bool is_root_redex(const Term& t, RuleKind k) {
  using K = Term::Kind;
  switch (k) {
    case RuleKind::DB: return t.is(K::App) && is_abs_shaped(t.fun());
    case RuleKind::SBang: return t.is(K::Sub) && is_bang_shaped(t.arg());
    case RuleKind::DBang: return t.is(K::Der) && is_bang_shaped(t.body());
    case RuleKind::S: return t.is(K::Sub);
    case RuleKind::SV: return t.is(K::Sub) && is_value(decompose_list(t.arg()).core);
  }
  return false;
}

Contraction contract(const Term& t, RuleKind k) {
  if (!is_root_redex(t, k))
    throw InvalidRedex("term is not a root " + std::string(rule_name(k)) + " redex");
  switch (k) {
    case RuleKind::DB: {
      auto [spine, core] = decompose_list(t.fun());
      refresh_spine(spine, core, free_vars(t.arg()), all_names(t));
      Term redex = Term::app(rewrap(core, spine), t.arg());
      Term result = rewrap(Term::sub(core.body(), core.name(), t.arg()), spine);
      return {k, std::move(redex), std::move(spine), core.name(), core.body(), t.arg(), std::move(result)};
    }
    case RuleKind::SBang:
    case RuleKind::SV: {
      auto [spine, core] = decompose_list(t.arg());
      NameSet avoid = free_vars(t.body());
      avoid.erase(t.name());
      refresh_spine(spine, core, avoid, all_names(t));
      Term redex = Term::sub(t.body(), t.name(), rewrap(core, spine));
      Term argument = k == RuleKind::SBang ? core.body() : core;
      Term result = rewrap(subst_meta(t.body(), t.name(), argument), spine);
      return {k, std::move(redex), std::move(spine), t.name(), t.body(), std::move(argument), std::move(result)};
    }
    case RuleKind::DBang: {
      auto [spine, core] = decompose_list(t.body());
      Term result = rewrap(core.body(), spine);
      return {k, t, std::move(spine), {}, core.body(), core.body(), std::move(result)};
    }
    case RuleKind::S: {
      Term result = subst_meta(t.body(), t.name(), t.arg());
      return {k, t, {}, t.name(), t.body(), t.arg(), std::move(result)};
    }
  }
  throw InvalidRedex("unknown rule");
}

namespace {

void collect_redexes(const Term& t, Position& here, std::vector<Redex>& out) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var:
    case K::Bang: return;
    case K::App:
      if (is_abs_shaped(t.fun())) out.push_back({here, RuleKind::DB});
      here.push_back(Selector::FunOf);
      collect_redexes(t.fun(), here, out);
      here.back() = Selector::ArgOf;
      collect_redexes(t.arg(), here, out);
      here.pop_back();
      return;
    case K::Abs:
      here.push_back(Selector::BodyOfAbs);
      collect_redexes(t.body(), here, out);
      here.pop_back();
      return;
    case K::Der:
      if (is_bang_shaped(t.body())) out.push_back({here, RuleKind::DBang});
      here.push_back(Selector::BodyOfDer);
      collect_redexes(t.body(), here, out);
      here.pop_back();
      return;
    case K::Sub:
      if (is_bang_shaped(t.arg())) out.push_back({here, RuleKind::SBang});
      here.push_back(Selector::BodyOfSub);
      collect_redexes(t.body(), here, out);
      here.back() = Selector::ArgOfSub;
      collect_redexes(t.arg(), here, out);
      here.pop_back();
      return;
  }
}

std::optional<Step> prefixed(std::optional<Step> s, Selector sel, const Term& parent) {
  if (!s) return s;
  s->position.insert(s->position.begin(), sel);
  s->result = with_child(parent, sel, s->result);
  return s;
}

std::optional<Step> root_step(const Term& t, RuleKind k) { return Step{{}, k, contract(t, k).result}; }

}  // namespace

std::vector<Redex> redexes(const Term& t) {
  std::vector<Redex> out;
  Position here;
  collect_redexes(t, here, out);
  return out;
}

Term step_at(const Term& t, const Position& p, RuleKind k) {
  const Term& sub = subterm_at(t, p);
  if (k == RuleKind::S || k == RuleKind::SV)
    throw InvalidRedex("rule " + std::string(rule_name(k)) + " is not a weak bang-calculus rule");
  return replace_at(t, p, contract(sub, k).result);
}

std::optional<Step> step_dw(const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var:
    case K::Bang: return std::nullopt;
    case K::App:
      if (is_abs_shaped(t.fun())) return root_step(t, RuleKind::DB);
      if (auto s = step_dw(t.fun())) return prefixed(std::move(s), Selector::FunOf, t);
      if (classify_nf(t.fun()).na) return prefixed(step_dw(t.arg()), Selector::ArgOf, t);
      return std::nullopt;
    case K::Abs: return prefixed(step_dw(t.body()), Selector::BodyOfAbs, t);
    case K::Der:
      if (is_bang_shaped(t.body())) return root_step(t, RuleKind::DBang);
      return prefixed(step_dw(t.body()), Selector::BodyOfDer, t);
    case K::Sub:
      if (is_bang_shaped(t.arg())) return root_step(t, RuleKind::SBang);
      if (auto s = step_dw(t.arg())) return prefixed(std::move(s), Selector::ArgOfSub, t);
      if (classify_nf(t.arg()).nb) return prefixed(step_dw(t.body()), Selector::BodyOfSub, t);
      return std::nullopt;
  }
  return std::nullopt;
}

std::size_t Trace::b() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const Step& s) { return is_multiplicative(s.rule); }));
}

std::size_t Trace::e() const { return steps.size() - b(); }

Normalization normalize_dw(const Term& t, std::size_t fuel) {
  Trace trace{t, {}};
  for (;;) {
    auto s = step_dw(trace.final_term());
    if (!s) return trace;
    if (trace.steps.size() == fuel) return FuelExhausted{std::move(trace)};
    trace.steps.push_back(std::move(*s));
  }
}

namespace {

struct TraceEnumerator {
  std::size_t fuel;
  std::size_t max_traces;
  std::vector<MaximalTrace> out;

  void run(Trace& current) {
    if (out.size() >= max_traces) return;
    const Term here = current.final_term();
    auto rs = redexes(here);
    if (rs.empty()) {
      out.push_back({current, true});
      return;
    }
    if (current.steps.size() >= fuel) {
      out.push_back({current, false});
      return;
    }
    std::unordered_set<std::string> seen;
    for (const auto& r : rs) {
      Term next = step_at(here, r.position, r.rule);
      if (!seen.insert(alpha_key(next)).second) continue;
      current.steps.push_back({r.position, r.rule, std::move(next)});
      run(current);
      current.steps.pop_back();
    }
  }
};

}  // namespace

std::vector<MaximalTrace> enumerate_maximal_traces(const Term& t, std::size_t fuel, std::size_t max_traces) {
  TraceEnumerator e{fuel, max_traces, {}};
  Trace start{t, {}};
  e.run(start);
  return std::move(e.out);
}

ReductionGraph explore(const Term& t, std::size_t max_states) {
  ReductionGraph g;
  std::unordered_map<std::string, std::size_t> index;
  g.states.push_back(t);
  g.edges.emplace_back();
  index.emplace(alpha_key(t), 0);
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    Term here = g.states[i];
    for (const auto& r : redexes(here)) {
      Term next = step_at(here, r.position, r.rule);
      auto [it, inserted] = index.emplace(alpha_key(next), g.states.size());
      if (inserted) {
        if (g.states.size() >= max_states) {
          g.truncated = true;
          return g;
        }
        g.states.push_back(std::move(next));
        g.edges.emplace_back();
      }
      g.edges[i].push_back({r.position, r.rule, it->second});
    }
  }
  return g;
}

NfClass classify_nf(const Term& t) {
  using K = Term::Kind;
  NfClass c;
  switch (t.kind()) {
    case K::Var: c.ne = true; break;
    case K::App: {
      auto f = classify_nf(t.fun());
      auto a = classify_nf(t.arg());
      c.ne = f.na && a.no;
      break;
    }
    case K::Abs: c.nb = classify_nf(t.body()).no; break;
    case K::Bang: c.na = true; break;
    case K::Der: c.ne = classify_nf(t.body()).nb; break;
    case K::Sub: {
      auto b = classify_nf(t.body());
      auto a = classify_nf(t.arg());
      c.ne = b.ne && a.nb;
      c.na = b.na && a.nb;
      c.nb = b.nb && a.nb;
      break;
    }
  }
  c.na = c.na || c.ne;
  c.nb = c.nb || c.ne;
  c.no = c.na || c.nb;
  return c;
}

NfClass classify_wcf_nf(const Term& t) {
  using K = Term::Kind;
  NfClass c;
  switch (t.kind()) {
    case K::Var: c.ne = true; break;
    case K::App: c.ne = classify_wcf_nf(t.fun()).ne && classify_wcf_nf(t.arg()).na; break;
    case K::Abs: c.nb = classify_wcf_nf(t.body()).no; break;
    case K::Bang: c.na = true; break;
    case K::Der: c.ne = classify_wcf_nf(t.body()).ne; break;
    case K::Sub: {
      auto b = classify_wcf_nf(t.body());
      bool arg_ne = classify_wcf_nf(t.arg()).ne;
      c.ne = b.ne && arg_ne;
      c.na = b.na && arg_ne;
      c.nb = b.nb && arg_ne;
      break;
    }
  }
  c.na = c.na || c.ne;
  c.nb = c.nb || c.ne;
  c.no = c.na || c.nb;
  return c;
}

std::string print_nf_class(const NfClass& c, std::string_view suffix) {
  if (!c.no) return "none";
  std::string out;
  auto add = [&](bool member, std::string_view name) {
    if (!member) return;
    if (!out.empty()) out += ", ";
    out += name;
    out += '_';
    out += suffix;
  };
  add(c.ne, "ne");
  add(c.na, "na");
  add(c.nb, "nb");
  add(c.no, "no");
  return out;
}

std::string_view clash_name(ClashKind k) {
  constexpr std::array<std::string_view, 4> names{"AppOfBang", "SubOfAbs", "DerOfAbs", "ArgIsAbs"};
  return names[static_cast<std::size_t>(k)];
}

namespace {

std::optional<ClashWitness> find_clash(const Term& t, Position& here) {
  using K = Term::Kind;
  auto descend = [&](Selector s, const Term& c) -> std::optional<ClashWitness> {
    here.push_back(s);
    auto w = find_clash(c, here);
    here.pop_back();
    return w;
  };
  switch (t.kind()) {
    case K::Var:
    case K::Bang: return std::nullopt;
    case K::App:
      if (is_bang_shaped(t.fun())) return ClashWitness{here, ClashKind::AppOfBang};
      if (is_abs_shaped(t.arg())) return ClashWitness{here, ClashKind::ArgIsAbs};
      if (auto w = descend(Selector::FunOf, t.fun())) return w;
      return descend(Selector::ArgOf, t.arg());
    case K::Abs: return descend(Selector::BodyOfAbs, t.body());
    case K::Der:
      if (is_abs_shaped(t.body())) return ClashWitness{here, ClashKind::DerOfAbs};
      return descend(Selector::BodyOfDer, t.body());
    case K::Sub:
      if (is_abs_shaped(t.arg())) return ClashWitness{here, ClashKind::SubOfAbs};
      if (auto w = descend(Selector::BodyOfSub, t.body())) return w;
      return descend(Selector::ArgOfSub, t.arg());
  }
  return std::nullopt;
}

}  // namespace

ClashReport detect_clash(const Term& t) {
  Position here;
  return {find_clash(t, here)};
}

}  // namespace bang
