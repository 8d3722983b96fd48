#include "bang/system_e.hpp"

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

const Type kA = Type::tight(TightConstant::A);
const Type kB = Type::tight(TightConstant::B);
const Type kN = Type::tight(TightConstant::N);

NodeCheck expect_type(const Type& actual, const Type& expected, std::string_view what) {
  if (actual == expected) return std::nullopt;
  return issue(ViolationKind::Type, std::string(what) + " is " + print_type(actual) + ", expected " +
                                        print_type(expected));
}

NodeCheck expect_tight_entry(const DerivationE& p, const std::string& x) {
  if (p.context.at(x).is_tight_multiset()) return std::nullopt;
  return issue(ViolationKind::SideCondition, "the multiset assigned to " + x + " is not tight");
}

NodeCheck check_types(const DerivationE& d) {
  auto label = rule_label(d.rule);
  const auto& ps = d.premises;
  switch (d.rule) {
    case RuleE::Ax:
      return check_shape(d, K::Var, 0, label);
    case RuleE::AeD: {
      if (auto bad = check_shape(d, K::App, 2, label)) return bad;
      const Type& f = ps[0].type;
      if (!f.is(Type::Kind::Arrow)) return issue(ViolationKind::Type, "function is not typed by an arrow");
      if (auto bad = expect_type(ps[1].type, f.domain(), "argument type")) return bad;
      return expect_type(d.type, f.codomain(), "conclusion type");
    }
    case RuleE::AiD: {
      if (auto bad = check_shape(d, K::Abs, 1, label)) return bad;
      return expect_type(d.type, Type::arrow(ps[0].context.at(d.subject.name()), ps[0].type), "conclusion type");
    }
    case RuleE::BgD: {
      if (auto bad = check_shape(d, K::Bang, std::nullopt, label)) return bad;
      std::vector<Type> types;
      for (const auto& p : ps) types.push_back(p.type);
      return expect_type(d.type, Type::mult(std::move(types)), "conclusion type");
    }
    case RuleE::DrD: {
      if (auto bad = check_shape(d, K::Der, 1, label)) return bad;
      return expect_type(ps[0].type, Type::mult({d.type}), "premise type");
    }
    case RuleE::EsD: {
      if (auto bad = check_shape(d, K::Sub, 2, label)) return bad;
      if (auto bad = expect_type(ps[1].type, ps[0].context.at(d.subject.name()), "closure argument type")) return bad;
      return expect_type(d.type, ps[0].type, "conclusion type");
    }
    case RuleE::AeT: {
      if (auto bad = check_shape(d, K::App, 2, label)) return bad;
      if (!(ps[0].type == kN)) return issue(ViolationKind::SideCondition, "function must be typed n");
      if (!ps[1].type.is_tight_constant() || ps[1].type == kA)
        return issue(ViolationKind::SideCondition, "argument must be typed by a tight constant other than a");
      return expect_type(d.type, kN, "conclusion type");
    }
    case RuleE::AiT: {
      if (auto bad = check_shape(d, K::Abs, 1, label)) return bad;
      if (!ps[0].type.is_tight_constant()) return issue(ViolationKind::SideCondition, "body must be typed tightly");
      if (auto bad = expect_tight_entry(ps[0], d.subject.name())) return bad;
      return expect_type(d.type, kA, "conclusion type");
    }
    case RuleE::BgT: {
      if (auto bad = check_shape(d, K::Bang, 0, label)) return bad;
      return expect_type(d.type, kB, "conclusion type");
    }
    case RuleE::DrT: {
      if (auto bad = check_shape(d, K::Der, 1, label)) return bad;
      if (!(ps[0].type == kN)) return issue(ViolationKind::SideCondition, "premise must be typed n");
      return expect_type(d.type, kN, "conclusion type");
    }
    case RuleE::EsT: {
      if (auto bad = check_shape(d, K::Sub, 2, label)) return bad;
      if (!ps[0].type.is_tight_constant()) return issue(ViolationKind::SideCondition, "body must be typed tightly");
      if (!(ps[1].type == kN)) return issue(ViolationKind::SideCondition, "closure argument must be typed n");
      if (auto bad = expect_tight_entry(ps[0], d.subject.name())) return bad;
      return expect_type(d.type, ps[0].type, "conclusion type");
    }
  }
  return issue(ViolationKind::Shape, "unknown rule");
}

NodeCheck check_node(const DerivationE& d) {
  if (auto bad = check_types(d)) return bad;
  if (auto bad = check_context(d)) return bad;
  Counters expected = detail::counters_for(d.rule, d.premises);
  if (!(expected == d.counters))
    return issue(ViolationKind::Counter,
                 "counters are " + print_counters(d.counters) + ", expected " + print_counters(expected));
  return std::nullopt;
}

struct BuildE {
  static DerivationE app(DerivationE f, DerivationE a) {
    Term s = Term::app(f.subject, a.subject);
    Type t = f.type.codomain();
    return make_node<DerivationE>(RuleE::AeD, std::move(s), std::move(t), {std::move(f), std::move(a)});
  }
  static DerivationE abs(const std::string& x, DerivationE body) {
    Type t = Type::arrow(body.context.at(x), body.type);
    Term s = Term::abs(x, body.subject);
    return make_node<DerivationE>(RuleE::AiD, std::move(s), std::move(t), {std::move(body)});
  }
  static DerivationE es(const std::string& x, DerivationE body, DerivationE arg) {
    Term s = Term::sub(body.subject, x, arg.subject);
    Type t = body.type;
    return make_node<DerivationE>(RuleE::EsD, std::move(s), std::move(t), {std::move(body), std::move(arg)});
  }
  static DerivationE bg(const Term& subject, std::vector<DerivationE> ps) {
    std::vector<Type> types;
    for (const auto& p : ps) types.push_back(p.type);
    return make_node<DerivationE>(RuleE::BgD, subject, Type::mult(std::move(types)), std::move(ps));
  }
  static DerivationE dr(DerivationE p) {
    Term s = Term::der(p.subject);
    Type t = p.type.elements().at(0);
    return make_node<DerivationE>(RuleE::DrD, std::move(s), std::move(t), {std::move(p)});
  }
  // A persistent closure types its body by a tight constant and its argument
  // by n. Along the list context of an expanded redex the body becomes an
  // abstraction or a bang typed by an arrow or a multiset, and at the core of a
  // dB expansion the argument must take a multiset type.
  static void expandable(const std::vector<DerivationE>& chain, const DerivationE& core, RuleKind k) {
    for (std::size_t i = 0; i < chain.size(); ++i)
      if (chain[i].rule == RuleE::EsT)
        throw TightExpansionError("persistent closure [" + chain[i].subject.name() + "\\" +
                                  print_term(chain[i].subject.arg()) + "] in the list context of a " +
                                  std::string(rule_name(k)) + " redex cannot be retyped");
    if (k == RuleKind::DB && core.rule == RuleE::EsT)
      throw TightExpansionError("the closure [" + core.subject.name() + "\\" + print_term(core.subject.arg()) +
                                "] created by dB is persistent; its argument is typed n, not by a multiset");
  }
};

class TightTyper {
 public:
  DerivationE ne(const Term& t) {
    switch (t.kind()) {
      case K::Var: return detail::Traits<DerivationE>::axiom(t.name(), kN);
      case K::App: {
        DerivationE f = ne(t.fun());
        DerivationE a = na(t.arg());
        Term s = t;
        return make_node<DerivationE>(RuleE::AeT, std::move(s), kN, {std::move(f), std::move(a)});
      }
      case K::Der: return make_node<DerivationE>(RuleE::DrT, t, kN, {ne(t.body())});
      case K::Sub: return closure(t, ne(t.body()));
      case K::Abs:
      case K::Bang: break;
    }
    throw NotWcfNormalForm("not a neutral normal form: " + print_term(t));
  }

  DerivationE na(const Term& t) {
    NfClass c = classify_wcf_nf(t);
    if (c.ne) return ne(t);
    if (t.is(K::Bang)) return make_node<DerivationE>(RuleE::BgT, t, kB, {});
    if (t.is(K::Sub) && c.na) return closure(t, na(t.body()));
    throw NotWcfNormalForm("not a clash-free normal form: " + print_term(t));
  }

  DerivationE nb(const Term& t) {
    NfClass c = classify_wcf_nf(t);
    if (c.ne) return ne(t);
    if (t.is(K::Abs)) return make_node<DerivationE>(RuleE::AiT, t, kA, {no(t.body())});
    if (t.is(K::Sub) && c.nb) return closure(t, nb(t.body()));
    throw NotWcfNormalForm("not a clash-free normal form: " + print_term(t));
  }

  DerivationE no(const Term& t) {
    NfClass c = classify_wcf_nf(t);
    if (c.ne) return ne(t);
    if (c.na) return na(t);
    if (c.nb) return nb(t);
    throw NotWcfNormalForm("not a clash-free normal form: " + print_term(t));
  }

 private:
  DerivationE closure(const Term& t, DerivationE body) {
    Type type = body.type;
    return make_node<DerivationE>(RuleE::EsT, t, std::move(type), {std::move(body), ne(t.arg())});
  }
};

Redex dw_redex(const Term& t) {
  auto s = step_dw(t);
  if (!s) throw DerivationError("term is normal: " + print_term(t));
  return Redex{s->position, s->rule};
}

void require_dw(const Term& t, const Redex& step) {
  if (!(dw_redex(t) == step))
    throw DerivationError("step " + std::string(rule_name(step.rule)) + " at " + print_position(step.position) +
                          " is not the dw step of " + print_term(t));
}

}  // namespace

CheckResult check_derivation_e(const DerivationE& d) { return detail::check_tree(d, check_node); }

bool is_tight(const DerivationE& d) { return d.context.tight() && d.type.is_tight_constant(); }

DerivationE type_normal_form_tight(const Term& t) {
  if (auto why = untypable_reason(t)) throw NotWcfNormalForm(*why);
  return TightTyper{}.no(t);
}

DerivationE subst_derivation_e(const DerivationE& d_t, const std::string& x, const Term& u,
                               const std::vector<DerivationE>& d_us) {
  std::vector<Type> types;
  for (const auto& d : d_us) types.push_back(d.type);
  if (!(Type::mult(std::move(types)) == d_t.context.at(x)))
    throw DerivationError("the derivations of the substituted term do not match the multiset assigned to " + x);
  return detail::substitute_from_pool(d_t, x, u, d_us);
}

AntiSubstitution<DerivationE> antisubst_derivation_e(const DerivationE& d, const Term& t, const std::string& x,
                                                     const Term& u) {
  Term expected = subst_meta(t, x, u);
  if (!alpha_eq(d.subject, expected)) throw DerivationError("subject is not the substitution instance");
  AntiSubstitution<DerivationE> r{detail::Traits<DerivationE>::axiom(x, kN), {}};
  r.d_t = detail::antisubstitute(detail::transport(d, expected), t, x, u, r.d_us);
  return r;
}

DerivationE reduce_derivation_e(const DerivationE& d) { return reduce_derivation_e(d, dw_redex(d.subject)); }

DerivationE reduce_derivation_e(const DerivationE& d, const Redex& step) {
  require_dw(d.subject, step);
  if (is_abs_shaped(d.subject) && !d.type.is_tight_constant())
    throw DerivationError("an abstraction-shaped subject must be typed by a tight constant");
  return detail::reduce_along<DerivationE, BuildE>(d, step);
}

DerivationE expand_derivation_e(const DerivationE& d, const Term& t) { return expand_derivation_e(d, t, dw_redex(t)); }

DerivationE expand_derivation_e(const DerivationE& d, const Term& t, const Redex& step) {
  require_dw(t, step);
  if (!is_tight(d)) throw DerivationError("expansion requires a tight derivation");
  return detail::expand_along<DerivationE, BuildE>(d, t, step);
}

InferResultE infer_tight(const Term& t, std::size_t fuel) {
  Normalization n = normalize_dw(t, fuel);
  if (auto* out = std::get_if<FuelExhausted>(&n)) return *out;
  Trace trace = std::get<Trace>(std::move(n));
  const Term& p = trace.final_term();
  if (auto why = untypable_reason(p)) return Untypable{p, *why};
  DerivationE d = type_normal_form_tight(p);
  for (std::size_t i = trace.steps.size(); i-- > 0;) {
    const Step& s = trace.steps[i];
    try {
      d = expand_derivation_e(d, trace.term_before(i), Redex{s.position, s.rule});
    } catch (const TightExpansionError& err) {
      return ExpansionFailure{std::move(trace), i, err.what()};
    }
  }
  return Inferred<DerivationE>{std::move(d), std::move(trace)};
}

bool tight_spreading_check(const DerivationE& d) {
  bool hypothesis = (classify_nf(d.subject).ne || (d.counters.b == 0 && d.counters.e == 0)) && d.context.tight();
  return !hypothesis || d.type.is_tight_constant();
}

}  // namespace bang
