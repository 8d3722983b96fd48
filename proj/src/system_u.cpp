#include "bang/system_u.hpp"

#include "bang/syntax.hpp"
#include "subject_reduction.hpp"

namespace bang {

namespace {

using detail::check_context;
using detail::check_shape;
using detail::issue;
using detail::make_node;
using detail::NodeCheck;
using K = Term::Kind;

NodeCheck check_node(const DerivationU& d) {
  auto label = rule_label(d.rule);
  switch (d.rule) {
    case RuleU::Ax: {
      if (auto bad = check_shape(d, K::Var, 0, label)) return bad;
      break;
    }
    case RuleU::App: {
      if (auto bad = check_shape(d, K::App, 2, label)) return bad;
      const Type& f = d.premises[0].type;
      if (!f.is(Type::Kind::Arrow)) return issue(ViolationKind::Type, "function is not typed by an arrow");
      if (!(f.domain() == d.premises[1].type))
        return issue(ViolationKind::Type, "argument type " + print_type(d.premises[1].type) +
                                              " differs from the domain " + print_type(f.domain()));
      if (!(f.codomain() == d.type)) return issue(ViolationKind::Type, "conclusion type is not the codomain");
      break;
    }
    case RuleU::Abs: {
      if (auto bad = check_shape(d, K::Abs, 1, label)) return bad;
      const auto& p = d.premises[0];
      Type expected = Type::arrow(p.context.at(d.subject.name()), p.type);
      if (!(expected == d.type))
        return issue(ViolationKind::Type, "abstraction must be typed " + print_type(expected));
      break;
    }
    case RuleU::Bg: {
      if (auto bad = check_shape(d, K::Bang, std::nullopt, label)) return bad;
      std::vector<Type> types;
      for (const auto& p : d.premises) types.push_back(p.type);
      Type expected = Type::mult(std::move(types));
      if (!(expected == d.type)) return issue(ViolationKind::Type, "bang must be typed " + print_type(expected));
      break;
    }
    case RuleU::Dr: {
      if (auto bad = check_shape(d, K::Der, 1, label)) return bad;
      if (!(d.premises[0].type == Type::mult({d.type})))
        return issue(ViolationKind::Type, "dereliction premise must be typed [" + print_type(d.type) + "]");
      break;
    }
    case RuleU::Es: {
      if (auto bad = check_shape(d, K::Sub, 2, label)) return bad;
      Type wanted = d.premises[0].context.at(d.subject.name());
      if (!(d.premises[1].type == wanted))
        return issue(ViolationKind::Type, "closure argument must be typed " + print_type(wanted));
      if (!(d.premises[0].type == d.type)) return issue(ViolationKind::Type, "closure type is not the body type");
      break;
    }
  }
  return check_context(d);
}

struct BuildU {
  static DerivationU app(DerivationU f, DerivationU a) {
    Term s = Term::app(f.subject, a.subject);
    Type t = f.type.codomain();
    return make_node<DerivationU>(RuleU::App, std::move(s), std::move(t), {std::move(f), std::move(a)});
  }
  static DerivationU abs(const std::string& x, DerivationU body) {
    Type t = Type::arrow(body.context.at(x), body.type);
    Term s = Term::abs(x, body.subject);
    return make_node<DerivationU>(RuleU::Abs, std::move(s), std::move(t), {std::move(body)});
  }
  static DerivationU es(const std::string& x, DerivationU body, DerivationU arg) {
    Term s = Term::sub(body.subject, x, arg.subject);
    Type t = body.type;
    return make_node<DerivationU>(RuleU::Es, std::move(s), std::move(t), {std::move(body), std::move(arg)});
  }
  static DerivationU bg(const Term& subject, std::vector<DerivationU> ps) {
    std::vector<Type> types;
    for (const auto& p : ps) types.push_back(p.type);
    return make_node<DerivationU>(RuleU::Bg, subject, Type::mult(std::move(types)), std::move(ps));
  }
  static DerivationU dr(DerivationU p) {
    Term s = Term::der(p.subject);
    Type t = p.type.elements().at(0);
    return make_node<DerivationU>(RuleU::Dr, std::move(s), std::move(t), {std::move(p)});
  }
  static void expandable(const std::vector<DerivationU>&, const DerivationU&, RuleKind) {}
};

class NormalFormTyper {
 public:
  DerivationU ne(const Term& t, const Type& target) {
    switch (t.kind()) {
      case K::Var: return detail::Traits<DerivationU>::axiom(t.name(), target);
      case K::App: {
        DerivationU a = na(t.arg());
        DerivationU f = ne(t.fun(), Type::arrow(a.type, target));
        return BuildU::app(std::move(f), std::move(a));
      }
      case K::Der: return BuildU::dr(ne(t.body(), Type::mult({target})));
      case K::Sub: {
        DerivationU body = ne(t.body(), target);
        return closure(t, std::move(body));
      }
      case K::Abs:
      case K::Bang: break;
    }
    throw NotWcfNormalForm("not a neutral normal form: " + print_term(t));
  }

  DerivationU na(const Term& t) {
    NfClass c = classify_wcf_nf(t);
    if (c.ne) return ne(t, Type::empty_mult());
    if (t.is(K::Bang)) return BuildU::bg(t, {});
    if (t.is(K::Sub) && c.na) return closure(t, na(t.body()));
    throw NotWcfNormalForm("not a clash-free normal form");
  }

  DerivationU nb(const Term& t, const Type& target) {
    NfClass c = classify_wcf_nf(t);
    if (c.ne) return ne(t, target);
    if (t.is(K::Abs)) return BuildU::abs(t.name(), no(t.body(), target));
    if (t.is(K::Sub) && c.nb) return closure(t, nb(t.body(), target));
    throw NotWcfNormalForm("not a clash-free normal form");
  }

  DerivationU no(const Term& t, const Type& target) {
    NfClass c = classify_wcf_nf(t);
    if (c.ne) return ne(t, target);
    if (c.na) return na(t);
    if (c.nb) return nb(t, target);
    throw NotWcfNormalForm("not a clash-free normal form");
  }

 private:
  DerivationU closure(const Term& t, DerivationU body) {
    DerivationU arg = ne(t.arg(), body.context.at(t.name()));
    return BuildU::es(t.name(), std::move(body), std::move(arg));
  }
};

}  // namespace

CheckResult check_derivation_u(const DerivationU& d) { return detail::check_tree(d, check_node); }

std::size_t size_u(const DerivationU& d) {
  std::size_t n = d.rule == RuleU::Bg ? 0 : 1;
  for (const auto& p : d.premises) n += size_u(p);
  return n;
}

std::optional<std::string> untypable_reason(const Term& t) {
  if (!classify_nf(t).normal()) return "term is not normal";
  if (!classify_wcf_nf(t).normal()) {
    ClashReport r = detect_clash(t);
    std::string why = "normal form is not clash-free";
    if (r.witness)
      why += ": " + std::string(clash_name(r.witness->kind)) + " at " + print_position(r.witness->position);
    return why;
  }
  return std::nullopt;
}

DerivationU type_normal_form_u(const Term& t, std::optional<Type> target) {
  if (auto why = untypable_reason(t)) throw NotWcfNormalForm(*why);
  return NormalFormTyper{}.no(t, target.value_or(omega()));
}

DerivationU subst_derivation_u(const DerivationU& d_t, const std::string& x, const Term& u,
                               const std::vector<DerivationU>& d_us) {
  std::vector<Type> types;
  for (const auto& d : d_us) types.push_back(d.type);
  if (!(Type::mult(std::move(types)) == d_t.context.at(x)))
    throw DerivationError("the derivations of the substituted term do not match the multiset assigned to " + x);
  return detail::substitute_from_pool(d_t, x, u, d_us);
}

AntiSubstitution<DerivationU> antisubst_derivation_u(const DerivationU& d, const Term& t, const std::string& x,
                                                     const Term& u) {
  Term expected = subst_meta(t, x, u);
  if (!alpha_eq(d.subject, expected)) throw DerivationError("subject is not the substitution instance");
  AntiSubstitution<DerivationU> r{detail::Traits<DerivationU>::axiom(x, omega()), {}};
  r.d_t = detail::antisubstitute(detail::transport(d, expected), t, x, u, r.d_us);
  return r;
}

DerivationU reduce_derivation_u(const DerivationU& d, const Redex& step) {
  return detail::reduce_along<DerivationU, BuildU>(d, step);
}

DerivationU expand_derivation_u(const DerivationU& d, const Term& t, const Redex& step) {
  return detail::expand_along<DerivationU, BuildU>(d, t, step);
}

InferResultU infer_u(const Term& t, std::size_t fuel) {
  Normalization n = normalize_dw(t, fuel);
  if (auto* out = std::get_if<FuelExhausted>(&n)) return *out;
  Trace trace = std::get<Trace>(std::move(n));
  const Term& p = trace.final_term();
  if (auto why = untypable_reason(p)) return Untypable{p, *why};
  DerivationU d = type_normal_form_u(p);
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    const Step& s = trace.steps[i];
    d = expand_derivation_u(d, trace.term_before(i), Redex{s.position, s.rule});
  }
  return Inferred<DerivationU>{std::move(d), std::move(trace)};
}

}  // namespace bang
