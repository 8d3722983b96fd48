#pragma once

// Subject reduction and expansion along one weak step, shared by the
// non-idempotent systems. B supplies the node constructors of the system and
// rejects closures that cannot be retyped.
//
//   B::app(fun, arg)             application node
//   B::abs(binder, body)         abstraction node
//   B::es(binder, body, arg)     closure node
//   B::bg(subject, premises)     bang node
//   B::dr(premise)               dereliction node
//   B::expandable(chain, core)   throws when the chain cannot carry the redex

#include "derivation_ops.hpp"

namespace bang::detail {

template <class D, class B>
D contract_derivation(const D& d, const Contraction& c) {
  std::size_t n = c.spine.size();
  switch (c.rule) {
    case RuleKind::DB: {
      if (d.premises.size() != 2) throw DerivationError("dB redex is not typed by an application rule");
      Chain<D> ch = peel(d.premises[0], n);
      if (ch.core.premises.size() != 1 || !ch.core.subject.is(Term::Kind::Abs))
        throw DerivationError("dB redex does not carry an abstraction");
      return wrap(ch.closures, B::es(c.binder, ch.core.premises[0], d.premises[1]));
    }
    case RuleKind::SBang: {
      if (d.premises.size() != 2) throw DerivationError("s! redex is not typed by a closure rule");
      Chain<D> ch = peel(d.premises[1], n);
      D body = substitute_from_pool(d.premises[0], c.binder, c.argument, ch.core.premises);
      return wrap(ch.closures, std::move(body));
    }
    case RuleKind::DBang: {
      if (d.premises.size() != 1) throw DerivationError("d! redex is not typed by a dereliction rule");
      Chain<D> ch = peel(d.premises[0], n);
      if (ch.core.premises.size() != 1) throw DerivationError("d! redex does not carry a singleton bang");
      return wrap(ch.closures, ch.core.premises[0]);
    }
    case RuleKind::S:
    case RuleKind::SV: break;
  }
  throw DerivationError("rule " + std::string(rule_name(c.rule)) + " is not a step of the bang calculus");
}

template <class D, class B>
D expand_contraction(const D& d, const Contraction& c) {
  std::size_t n = c.spine.size();
  Chain<D> ch = peel(d, n);
  B::expandable(ch.closures, ch.core, c.rule);
  switch (c.rule) {
    case RuleKind::DB: {
      if (ch.core.premises.size() != 2) throw DerivationError("dB reduct does not carry a closure");
      D fun = wrap(ch.closures, B::abs(c.binder, ch.core.premises[0]));
      return B::app(std::move(fun), ch.core.premises[1]);
    }
    case RuleKind::SBang: {
      std::vector<D> us;
      D body = antisubstitute(ch.core, c.body, c.binder, c.argument, us);
      sort_by_type(us);
      D arg = wrap(ch.closures, B::bg(Term::bang(c.argument), std::move(us)));
      return B::es(c.binder, std::move(body), std::move(arg));
    }
    case RuleKind::DBang: {
      D bang = B::bg(Term::bang(c.body), {ch.core});
      return B::dr(wrap(ch.closures, std::move(bang)));
    }
    case RuleKind::S:
    case RuleKind::SV: break;
  }
  throw DerivationError("rule " + std::string(rule_name(c.rule)) + " is not a step of the bang calculus");
}

template <class D, class B>
D reduce_along(const D& d, const Redex& r) {
  const Term& t = d.subject;
  Contraction c = contract(subterm_at(t, r.position), r.rule);
  Term target = step_at(t, r.position, r.rule);
  D out = rewrite_at(d, r.position, 0,
                     [&](const D& s) { return contract_derivation<D, B>(transport(s, c.redex), c); });
  return transport(out, target);
}

template <class D, class B>
D expand_along(const D& d, const Term& t, const Redex& r) {
  Contraction c = contract(subterm_at(t, r.position), r.rule);
  Term target = step_at(t, r.position, r.rule);
  if (!alpha_eq(d.subject, target)) throw DerivationError("derivation does not type the reduct of the step");
  D start = transport(d, target);
  D out = rewrite_at(start, r.position, 0,
                     [&](const D& s) { return expand_contraction<D, B>(transport(s, c.result), c); });
  return transport(out, t);
}

}  // namespace bang::detail
