#pragma once

// Structural operations shared by the derivation systems. Every operation
// dispatches on the subject term, so it applies to any system whose premises
// line up with the immediate subterms of the subject.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "bang/derivation.hpp"

namespace bang::detail {

template <class D>
struct Traits;

template <>
struct Traits<DerivationU> {
  static DerivationU axiom(const std::string& x, const Type& t) {
    return {RuleU::Ax, Context::singleton(x, Type::mult({t})), Term::var(x), t, {}};
  }
  static Context axiom_context(const std::string& x, const Type& t) { return Context::singleton(x, Type::mult({t})); }
  static void finish(DerivationU&) {}
};

template <>
struct Traits<DerivationN> {
  static DerivationN axiom(const std::string& x, const Type& t) {
    return {RuleN::AxN, Context::singleton(x, Type::mult({t})), Term::var(x), t, {}};
  }
  static Context axiom_context(const std::string& x, const Type& t) { return Context::singleton(x, Type::mult({t})); }
  static void finish(DerivationN&) {}
};

template <>
struct Traits<DerivationV> {
  static DerivationV axiom(const std::string& x, const Type& m) {
    return {RuleV::AxV, Context::singleton(x, m), Term::var(x), m, {}};
  }
  static Context axiom_context(const std::string& x, const Type& m) { return Context::singleton(x, m); }
  static void finish(DerivationV&) {}
};

Counters counters_for(RuleE rule, const std::vector<DerivationE>& premises);

template <>
struct Traits<DerivationE> {
  static DerivationE axiom(const std::string& x, const Type& t) {
    return {RuleE::Ax, Context::singleton(x, Type::mult({t})), Term::var(x), t, {}, {}};
  }
  static Context axiom_context(const std::string& x, const Type& t) { return Context::singleton(x, Type::mult({t})); }
  static void finish(DerivationE& d) { d.counters = counters_for(d.rule, d.premises); }
};

// The immediate subterm typed by premise i.
inline const Term& premise_subject(const Term& t, std::size_t i) {
  switch (t.kind()) {
    case Term::Kind::App: return i == 0 ? t.fun() : t.arg();
    case Term::Kind::Sub: return i == 0 ? t.body() : t.arg();
    case Term::Kind::Abs:
    case Term::Kind::Bang:
    case Term::Kind::Der: return t.body();
    case Term::Kind::Var: break;
  }
  throw DerivationError("a variable has no premises");
}

// Whether premise i lies under the binder of the subject.
inline bool premise_bound(const Term& t, std::size_t i) {
  return t.is(Term::Kind::Abs) || (t.is(Term::Kind::Sub) && i == 0);
}

template <class D>
Context conclusion_context(const D& d) {
  if (d.subject.is(Term::Kind::Var)) return Traits<D>::axiom_context(d.subject.name(), d.type);
  Context c;
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    c += premise_bound(d.subject, i) ? d.premises[i].context.without(d.subject.name()) : d.premises[i].context;
  return c;
}

// Recomputes context (and counters) of the node from its premises.
template <class D>
void recompute(D& d) {
  d.context = conclusion_context(d);
  Traits<D>::finish(d);
}

// Rebuilds the subject from the premise subjects, keeping untyped subterms.
template <class D>
Term rebuilt_subject(const D& d) {
  const Term& t = d.subject;
  auto slot = [&](std::size_t i, const Term& old) -> Term {
    for (std::size_t j = 0; j < d.premises.size(); ++j) {
      bool matches = (t.is(Term::Kind::App) || t.is(Term::Kind::Sub)) ? ((j == 0) == (i == 0)) : true;
      if (matches) return d.premises[j].subject;
    }
    return old;
  };
  switch (t.kind()) {
    case Term::Kind::Var: return t;
    case Term::Kind::App: return Term::app(slot(0, t.fun()), slot(1, t.arg()));
    case Term::Kind::Abs: return Term::abs(t.name(), slot(0, t.body()));
    case Term::Kind::Bang: return Term::bang(slot(0, t.body()));
    case Term::Kind::Der: return Term::der(slot(0, t.body()));
    case Term::Kind::Sub: return Term::sub(slot(0, t.body()), t.name(), slot(1, t.arg()));
  }
  return t;
}

template <class D>
using Supply = std::function<D(const Type&)>;

template <class D>
D substitute(const D& d, const std::string& x, const Term& u, const NameSet& fv_u, const Supply<D>& supply);

template <class D>
D rename_free(const D& d, const std::string& from, const std::string& to) {
  Supply<D> ax = [&](const Type& t) { return Traits<D>::axiom(to, t); };
  return substitute(d, from, Term::var(to), NameSet{to}, ax);
}

// Mirrors subst_meta node for node, so the subject of the result is exactly
// subst_meta(d.subject, x, u). Axioms on x are replaced by supply(type), in
// document order.
template <class D>
D substitute(const D& d, const std::string& x, const Term& u, const NameSet& fv_u, const Supply<D>& supply) {
  const Term& t = d.subject;
  if (!is_free_in(x, t)) return d;
  if (t.is(Term::Kind::Var)) return supply(d.type);
  D r = d;
  if (!t.is(Term::Kind::Abs) && !t.is(Term::Kind::Sub)) {
    for (auto& p : r.premises) p = substitute(p, x, u, fv_u, supply);
    r.subject = subst_meta(t, x, u);
    recompute(r);
    return r;
  }
  const std::string& y = t.name();
  const Term& body = t.body();
  bool enter = y != x && is_free_in(x, body);
  std::string binder = y;
  if (enter && fv_u.contains(y)) {
    NameSet avoid = fv_u;
    avoid.merge(free_vars(body));
    avoid.insert(x);
    binder = fresh_name(y, avoid);
  }
  Term new_body = body;
  if (enter) new_body = subst_meta(binder == y ? body : subst_meta(body, y, Term::var(binder)), x, u);
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    D& p = r.premises[i];
    if (premise_bound(t, i)) {
      if (!enter) continue;
      if (binder != y) p = rename_free(p, y, binder);
    }
    p = substitute(p, x, u, fv_u, supply);
  }
  r.subject = t.is(Term::Kind::Abs) ? Term::abs(binder, new_body)
                                    : Term::sub(new_body, binder, subst_meta(t.arg(), x, u));
  recompute(r);
  return r;
}

// Re-subjects d onto an alpha-equivalent target, renaming binders in the
// premises so that every subject matches the target syntactically.
template <class D>
D transport(const D& d, const Term& target) {
  if (d.subject == target) return d;
  if (!alpha_eq(d.subject, target)) throw DerivationError("transport target is not alpha-equivalent to the subject");
  if (target.is(Term::Kind::Var)) return d;
  D r = d;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    D& p = r.premises[i];
    if (premise_bound(target, i) && d.subject.name() != target.name())
      p = rename_free(p, d.subject.name(), target.name());
    p = transport(p, premise_subject(target, i));
  }
  r.subject = target;
  return r;
}

// Splits a derivation of t{x:=u} into one of t and the derivations of u at
// the occurrences of x, collected in document order.
template <class D>
D antisubstitute(const D& d, const Term& t, const std::string& x, const Term& u, std::vector<D>& out) {
  if (t.is(Term::Kind::Var) && t.name() == x) {
    if (!(d.subject == u)) throw DerivationError("anti-substitution: occurrence of x is not typed as u");
    out.push_back(d);
    return Traits<D>::axiom(x, d.type);
  }
  if (!is_free_in(x, t)) {
    if (!(d.subject == t)) throw DerivationError("anti-substitution: subject does not match");
    return d;
  }
  if (d.subject.kind() != t.kind()) throw DerivationError("anti-substitution: subject shape does not match");
  D r = d;
  bool renamed = false;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    D& p = r.premises[i];
    const Term& ti = premise_subject(t, i);
    if (!premise_bound(t, i)) {
      p = antisubstitute(p, ti, x, u, out);
      continue;
    }
    if (t.name() == x || !is_free_in(x, ti)) {
      if (!(p.subject == ti)) throw DerivationError("anti-substitution: subject does not match");
      continue;
    }
    const std::string& used = d.subject.name();
    if (used == t.name()) {
      p = antisubstitute(p, ti, x, u, out);
    } else {
      p = antisubstitute(p, subst_meta(ti, t.name(), Term::var(used)), x, u, out);
      p = rename_free(p, used, t.name());
      renamed = true;
    }
  }
  r.subject = t;
  if (renamed)
    for (std::size_t i = 0; i < r.premises.size(); ++i) r.premises[i] = transport(r.premises[i], premise_subject(t, i));
  recompute(r);
  return r;
}

inline std::size_t premise_index(Selector s) {
  return (s == Selector::ArgOf || s == Selector::ArgOfSub) ? 1 : 0;
}

// Applies f to the sub-derivation at position p and rebuilds the path.
template <class D, class F>
D rewrite_at(const D& d, const Position& p, std::size_t i, F&& f) {
  if (i == p.size()) return f(d);
  std::size_t k = premise_index(p[i]);
  if (k >= d.premises.size()) throw DerivationError("position leaves the derivation");
  D r = d;
  r.premises[k] = rewrite_at(d.premises[k], p, i + 1, f);
  r.subject = rebuilt_subject(r);
  recompute(r);
  return r;
}

template <class D>
const D& derivation_at(const D& d, const Position& p) {
  const D* cur = &d;
  for (Selector s : p) {
    std::size_t k = premise_index(s);
    if (k >= cur->premises.size()) throw DerivationError("position leaves the derivation");
    cur = &cur->premises[k];
  }
  return *cur;
}

// A derivation of L<core> seen as a chain of closure nodes over the core.
template <class D>
struct Chain {
  std::vector<D> closures;  // outermost first; premise 0 is stale
  D core;
};

template <class D>
Chain<D> peel(const D& d, std::size_t length) {
  std::vector<D> closures;
  const D* cur = &d;
  for (std::size_t i = 0; i < length; ++i) {
    if (!cur->subject.is(Term::Kind::Sub) || cur->premises.size() != 2)
      throw DerivationError("expected a closure node in the list context");
    closures.push_back(*cur);
    cur = &cur->premises[0];
  }
  return {std::move(closures), *cur};
}

template <class D>
D wrap(const std::vector<D>& closures, D core) {
  D inner = std::move(core);
  for (auto it = closures.rbegin(); it != closures.rend(); ++it) {
    D node = *it;
    node.premises[0] = std::move(inner);
    node.subject = Term::sub(node.premises[0].subject, node.subject.name(), node.premises[1].subject);
    node.type = node.premises[0].type;
    recompute(node);
    inner = std::move(node);
  }
  return inner;
}

template <class D, class Pred>
bool any_node(const D& d, Pred&& pred) {
  if (pred(d)) return true;
  return std::any_of(d.premises.begin(), d.premises.end(), [&](const D& p) { return any_node(p, pred); });
}

template <class D>
D make_node(decltype(D::rule) rule, Term subject, Type type, std::vector<D> premises) {
  D d = [&] {
    if constexpr (std::is_same_v<D, DerivationE>)
      return D{rule, Context{}, std::move(subject), std::move(type), Counters{}, std::move(premises)};
    else
      return D{rule, Context{}, std::move(subject), std::move(type), std::move(premises)};
  }();
  recompute(d);
  return d;
}

struct NodeIssue {
  ViolationKind kind;
  std::string reason;
};

using NodeCheck = std::optional<NodeIssue>;

inline NodeCheck issue(ViolationKind k, std::string reason) { return NodeIssue{k, std::move(reason)}; }

// Shape check shared by all systems: subject constructor and premise count.
template <class D>
NodeCheck check_shape(const D& d, Term::Kind kind, std::optional<std::size_t> arity, std::string_view label) {
  if (!d.subject.is(kind))
    return issue(ViolationKind::Shape, "rule " + std::string(label) + " does not match the subject constructor");
  if (arity && d.premises.size() != *arity)
    return issue(ViolationKind::Shape, "rule " + std::string(label) + " expects " + std::to_string(*arity) +
                                           " premises, found " + std::to_string(d.premises.size()));
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    if (!(d.premises[i].subject == premise_subject(d.subject, i)))
      return issue(ViolationKind::Subject, "premise " + std::to_string(i) + " does not type the immediate subterm");
  return std::nullopt;
}

template <class D>
NodeCheck check_context(const D& d) {
  Context expected = conclusion_context(d);
  if (!(expected == d.context))
    return issue(ViolationKind::Context,
                 "context is {" + print_context(d.context) + "}, expected {" + print_context(expected) + "}");
  return std::nullopt;
}

// Pre-order walk reporting the first node rejected by node_check.
template <class D, class F>
CheckResult check_tree(const D& d, F&& node_check) {
  std::vector<std::size_t> path;
  std::optional<Violation> found;
  std::function<void(const D&)> walk = [&](const D& n) {
    if (found) return;
    if (auto bad = node_check(n)) {
      found = Violation{path, bad->kind, std::move(bad->reason)};
      return;
    }
    for (std::size_t i = 0; i < n.premises.size() && !found; ++i) {
      path.push_back(i);
      walk(n.premises[i]);
      path.pop_back();
    }
  };
  walk(d);
  return CheckResult{std::move(found)};
}

template <class D>
void sort_by_type(std::vector<D>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const D& a, const D& b) { return a.type < b.type; });
}

// Substitution drawing the derivations for u from a pool, first match by type.
template <class D>
D substitute_from_pool(const D& d, const std::string& x, const Term& u, std::vector<D> pool) {
  std::vector<bool> used(pool.size(), false);
  NameSet fv_u = free_vars(u);
  for (auto& p : pool) {
    if (!alpha_eq(p.subject, u)) throw DerivationError("a substituted derivation does not type the substituted term");
    p = transport(p, u);
  }
  Supply<D> supply = [&](const Type& t) -> D {
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (!used[i] && pool[i].type == t) {
        used[i] = true;
        return pool[i];
      }
    throw DerivationError("no derivation of the substituted term at type " + print_type(t));
  };
  D r = substitute(d, x, u, fv_u, supply);
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw DerivationError("unused derivations of the substituted term");
  return r;
}

}  // namespace bang::detail
