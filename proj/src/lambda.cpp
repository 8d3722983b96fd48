#include "bang/lambda.hpp"

#include "bang/syntax.hpp"
#include "bang/system_u.hpp"
#include "derivation_ops.hpp"

namespace bang {

namespace {

using K = Term::Kind;
using detail::check_context;
using detail::check_shape;
using detail::issue;
using detail::make_node;
using detail::NodeCheck;

bool is_lambda(const Term& t) {
  switch (t.kind()) {
    case K::Var: return true;
    case K::Abs: return is_lambda(t.body());
    case K::App: return is_lambda(t.fun()) && is_lambda(t.arg());
    case K::Sub: return is_lambda(t.body()) && is_lambda(t.arg());
    case K::Bang:
    case K::Der: return false;
  }
  return false;
}

struct Found {
  Position position;
  RuleKind rule;
};

std::optional<Found> find_n(const Term& t, Position& here) {
  switch (t.kind()) {
    case K::App:
      if (is_abs_shaped(t.fun())) return Found{here, RuleKind::DB};
      here.push_back(Selector::FunOf);
      break;
    case K::Abs: here.push_back(Selector::BodyOfAbs); break;
    case K::Sub: return Found{here, RuleKind::S};
    default: return std::nullopt;
  }
  auto r = find_n(t.kind() == K::App ? t.fun() : t.body(), here);
  here.pop_back();
  return r;
}

std::optional<Found> find_v(const Term& t, Position& here) {
  auto visit = [&](Selector s, const Term& child) -> std::optional<Found> {
    here.push_back(s);
    auto r = find_v(child, here);
    here.pop_back();
    return r;
  };
  switch (t.kind()) {
    case K::App:
      if (is_abs_shaped(t.fun())) return Found{here, RuleKind::DB};
      if (auto r = visit(Selector::FunOf, t.fun())) return r;
      return visit(Selector::ArgOf, t.arg());
    case K::Sub:
      if (is_root_redex(t, RuleKind::SV)) return Found{here, RuleKind::SV};
      if (auto r = visit(Selector::BodyOfSub, t.body())) return r;
      return visit(Selector::ArgOfSub, t.arg());
    default: return std::nullopt;
  }
}

std::optional<Step> to_step(const Term& t, std::optional<Found> f) {
  if (!f) return std::nullopt;
  Term result = replace_at(t, f->position, contract(subterm_at(t, f->position), f->rule).result);
  return Step{std::move(f->position), f->rule, std::move(result)};
}

template <class StepFn>
Normalization normalize_with(const LambdaTerm& t, std::size_t fuel, StepFn step) {
  Trace trace{t.term(), {}};
  for (;;) {
    auto s = step(LambdaTerm::of(trace.final_term()));
    if (!s) return trace;
    if (trace.steps.size() == fuel) return FuelExhausted{std::move(trace)};
    trace.steps.push_back(std::move(*s));
  }
}

bool ne_n(const Term& t) {
  if (t.is(K::Var)) return true;
  return t.is(K::App) && ne_n(t.fun());
}

bool no_n(const Term& t) { return ne_n(t) || (t.is(K::Abs) && no_n(t.body())); }

bool vr_v(const Term& t);
bool ne_v(const Term& t);

bool no_v(const Term& t) {
  if (t.is(K::Abs) || vr_v(t) || ne_v(t)) return true;
  return t.is(K::Sub) && no_v(t.body()) && ne_v(t.arg());
}

bool vr_v(const Term& t) {
  if (t.is(K::Var)) return true;
  return t.is(K::Sub) && vr_v(t.body()) && ne_v(t.arg());
}

bool ne_v(const Term& t) {
  if (t.is(K::App)) return (vr_v(t.fun()) || ne_v(t.fun())) && no_v(t.arg());
  return t.is(K::Sub) && ne_v(t.body()) && ne_v(t.arg());
}

Term cbn(const Term& t) {
  switch (t.kind()) {
    case K::Var: return t;
    case K::Abs: return Term::abs(t.name(), cbn(t.body()));
    case K::App: return Term::app(cbn(t.fun()), Term::bang(cbn(t.arg())));
    case K::Sub: return Term::sub(cbn(t.body()), t.name(), Term::bang(cbn(t.arg())));
    default: break;
  }
  throw NotALambdaTerm("bang and dereliction have no call-by-name embedding");
}

Term cbv(const Term& t) {
  switch (t.kind()) {
    case K::Var: return Term::bang(t);
    case K::Abs: return Term::bang(Term::abs(t.name(), cbv(t.body())));
    case K::App: {
      Term f = cbv(t.fun());
      auto [spine, core] = decompose_list(f);
      Term head = core.is(K::Bang) ? rewrap(core.body(), spine) : Term::der(f);
      return Term::app(std::move(head), cbv(t.arg()));
    }
    case K::Sub: return Term::sub(cbv(t.body()), t.name(), cbv(t.arg()));
    default: break;
  }
  throw NotALambdaTerm("bang and dereliction have no call-by-value embedding");
}

std::size_t nsize(const Term& t) {
  switch (t.kind()) {
    case K::Var: return 0;
    case K::Abs: return 1 + nsize(t.body());
    case K::App: return 1 + nsize(t.fun());
    case K::Sub: return 1 + nsize(t.body());
    default: return 0;
  }
}

std::size_t vsize(const Term& t) {
  switch (t.kind()) {
    case K::App: return 1 + vsize(t.fun()) + vsize(t.arg());
    case K::Sub: return 1 + vsize(t.body()) + vsize(t.arg());
    default: return 0;
  }
}

Type mult_of(const std::vector<DerivationN>& ps, std::size_t from) {
  std::vector<Type> types;
  for (std::size_t i = from; i < ps.size(); ++i) types.push_back(ps[i].type);
  return Type::mult(std::move(types));
}

NodeCheck check_node_n(const DerivationN& d) {
  auto label = rule_label(d.rule);
  const auto& ps = d.premises;
  switch (d.rule) {
    case RuleN::AxN:
      if (auto bad = check_shape(d, K::Var, 0, label)) return bad;
      break;
    case RuleN::AbsN: {
      if (auto bad = check_shape(d, K::Abs, 1, label)) return bad;
      Type expected = Type::arrow(ps[0].context.at(d.subject.name()), ps[0].type);
      if (!(d.type == expected)) return issue(ViolationKind::Type, "abstraction must be typed " + print_type(expected));
      break;
    }
    case RuleN::AppN: {
      if (auto bad = check_shape(d, K::App, std::nullopt, label)) return bad;
      if (ps.empty()) return issue(ViolationKind::Shape, "app_n needs a function premise");
      const Type& f = ps[0].type;
      if (!f.is(Type::Kind::Arrow)) return issue(ViolationKind::Type, "function is not typed by an arrow");
      if (!(f.domain() == mult_of(ps, 1)))
        return issue(ViolationKind::Type, "argument premises do not match the domain " + print_type(f.domain()));
      if (!(d.type == f.codomain())) return issue(ViolationKind::Type, "conclusion type is not the codomain");
      break;
    }
    case RuleN::EsN: {
      if (auto bad = check_shape(d, K::Sub, std::nullopt, label)) return bad;
      if (ps.empty()) return issue(ViolationKind::Shape, "es_n needs a body premise");
      Type wanted = ps[0].context.at(d.subject.name());
      if (!(wanted == mult_of(ps, 1)))
        return issue(ViolationKind::Type, "argument premises do not match " + print_type(wanted));
      if (!(d.type == ps[0].type)) return issue(ViolationKind::Type, "closure type is not the body type");
      break;
    }
  }
  return check_context(d);
}

NodeCheck check_node_v(const DerivationV& d) {
  auto label = rule_label(d.rule);
  const auto& ps = d.premises;
  switch (d.rule) {
    case RuleV::AxV:
      if (auto bad = check_shape(d, K::Var, 0, label)) return bad;
      if (!d.type.is(Type::Kind::Mult)) return issue(ViolationKind::Type, "ax_v types a variable by a multiset");
      break;
    case RuleV::AbsV: {
      if (auto bad = check_shape(d, K::Abs, std::nullopt, label)) return bad;
      std::vector<Type> arrows;
      for (const auto& p : ps) arrows.push_back(Type::arrow(p.context.at(d.subject.name()), p.type));
      Type expected = Type::mult(std::move(arrows));
      if (!(d.type == expected)) return issue(ViolationKind::Type, "abstraction must be typed " + print_type(expected));
      break;
    }
    case RuleV::AppV: {
      if (auto bad = check_shape(d, K::App, 2, label)) return bad;
      const Type& f = ps[0].type;
      if (!f.is(Type::Kind::Mult) || f.elements().size() != 1 || !f.elements()[0].is(Type::Kind::Arrow))
        return issue(ViolationKind::Type, "function must be typed by a singleton [M -> t]");
      const Type& arrow = f.elements()[0];
      if (!(ps[1].type == arrow.domain()))
        return issue(ViolationKind::Type, "argument type differs from the domain " + print_type(arrow.domain()));
      if (!(d.type == arrow.codomain())) return issue(ViolationKind::Type, "conclusion type is not the codomain");
      break;
    }
    case RuleV::EsV: {
      if (auto bad = check_shape(d, K::Sub, 2, label)) return bad;
      Type wanted = ps[0].context.at(d.subject.name());
      if (!(ps[1].type == wanted)) return issue(ViolationKind::Type, "closure argument must be typed " + print_type(wanted));
      if (!(d.type == ps[0].type)) return issue(ViolationKind::Type, "closure type is not the body type");
      break;
    }
  }
  return check_context(d);
}

DerivationU u_bg(const Term& subject, std::vector<DerivationU> ps) {
  std::vector<Type> types;
  for (const auto& p : ps) types.push_back(p.type);
  return make_node<DerivationU>(RuleU::Bg, subject, Type::mult(std::move(types)), std::move(ps));
}

DerivationU u_app(DerivationU f, DerivationU a) {
  Term s = Term::app(f.subject, a.subject);
  Type t = f.type.codomain();
  return make_node<DerivationU>(RuleU::App, std::move(s), std::move(t), {std::move(f), std::move(a)});
}

DerivationU u_es(const std::string& x, DerivationU body, DerivationU arg) {
  Term s = Term::sub(body.subject, x, arg.subject);
  Type t = body.type;
  return make_node<DerivationU>(RuleU::Es, std::move(s), std::move(t), {std::move(body), std::move(arg)});
}

DerivationU u_abs(const std::string& x, DerivationU body) {
  Type t = Type::arrow(body.context.at(x), body.type);
  Term s = Term::abs(x, body.subject);
  return make_node<DerivationU>(RuleU::Abs, std::move(s), std::move(t), {std::move(body)});
}

void expect_rule(const DerivationU& d, RuleU r, const char* where) {
  if (d.rule != r)
    throw ImageMismatch(std::string("expected rule ") + std::string(rule_label(r)) + " " + where + ", found " +
                        std::string(rule_label(d.rule)));
}

DerivationU n_to_u(const DerivationN& d) {
  const Term& t = d.subject;
  switch (d.rule) {
    case RuleN::AxN: return detail::Traits<DerivationU>::axiom(t.name(), d.type);
    case RuleN::AbsN: return u_abs(t.name(), n_to_u(d.premises.at(0)));
    case RuleN::AppN:
    case RuleN::EsN: {
      std::vector<DerivationU> args;
      for (std::size_t i = 1; i < d.premises.size(); ++i) args.push_back(n_to_u(d.premises[i]));
      DerivationU bang = u_bg(Term::bang(cbn(t.arg())), std::move(args));
      DerivationU head = n_to_u(d.premises.at(0));
      return d.rule == RuleN::AppN ? u_app(std::move(head), std::move(bang))
                                   : u_es(t.name(), std::move(head), std::move(bang));
    }
  }
  throw ImageMismatch("unknown rule");
}

// d types cbn(t) syntactically.
DerivationN u_to_n(const DerivationU& d, const Term& t) {
  auto node = [&](RuleN r, std::vector<DerivationN> ps) { return make_node<DerivationN>(r, t, d.type, std::move(ps)); };
  switch (t.kind()) {
    case K::Var:
      expect_rule(d, RuleU::Ax, "for a variable");
      return detail::Traits<DerivationN>::axiom(t.name(), d.type);
    case K::Abs:
      expect_rule(d, RuleU::Abs, "for an abstraction");
      return node(RuleN::AbsN, {u_to_n(d.premises.at(0), t.body())});
    case K::App:
    case K::Sub: {
      bool app = t.is(K::App);
      expect_rule(d, app ? RuleU::App : RuleU::Es, app ? "for an application" : "for a closure");
      const DerivationU& bang = d.premises.at(1);
      expect_rule(bang, RuleU::Bg, "for an embedded argument");
      std::vector<DerivationN> ps{u_to_n(d.premises.at(0), app ? t.fun() : t.body())};
      for (const auto& p : bang.premises) ps.push_back(u_to_n(p, t.arg()));
      return node(app ? RuleN::AppN : RuleN::EsN, std::move(ps));
    }
    default: break;
  }
  throw ImageMismatch("not a lambda term");
}

DerivationU v_to_u(const DerivationV& d) {
  const Term& t = d.subject;
  switch (d.rule) {
    case RuleV::AxV: {
      std::vector<DerivationU> ps;
      for (const auto& s : d.type.elements()) ps.push_back(detail::Traits<DerivationU>::axiom(t.name(), s));
      return u_bg(Term::bang(t), std::move(ps));
    }
    case RuleV::AbsV: {
      std::vector<DerivationU> ps;
      for (const auto& p : d.premises) ps.push_back(u_abs(t.name(), v_to_u(p)));
      return u_bg(cbv(t), std::move(ps));
    }
    case RuleV::EsV: return u_es(t.name(), v_to_u(d.premises.at(0)), v_to_u(d.premises.at(1)));
    case RuleV::AppV: {
      DerivationU f = v_to_u(d.premises.at(0));
      DerivationU a = v_to_u(d.premises.at(1));
      auto [spine, core] = decompose_list(f.subject);
      if (core.is(K::Bang)) {
        auto ch = detail::peel(f, spine.size());
        if (ch.core.premises.size() != 1) throw ImageMismatch("function bang is not typed by a singleton");
        return u_app(detail::wrap(ch.closures, ch.core.premises[0]), std::move(a));
      }
      Term s = Term::der(f.subject);
      Type ty = f.type.elements().at(0);
      DerivationU dr = make_node<DerivationU>(RuleU::Dr, std::move(s), std::move(ty), {std::move(f)});
      return u_app(std::move(dr), std::move(a));
    }
  }
  throw ImageMismatch("unknown rule");
}

// d types cbv(t) syntactically.
DerivationV u_to_v(const DerivationU& d, const Term& t) {
  auto node = [&](RuleV r, std::vector<DerivationV> ps) { return make_node<DerivationV>(r, t, d.type, std::move(ps)); };
  switch (t.kind()) {
    case K::Var:
      expect_rule(d, RuleU::Bg, "for an embedded variable");
      return detail::Traits<DerivationV>::axiom(t.name(), d.type);
    case K::Abs: {
      expect_rule(d, RuleU::Bg, "for an embedded abstraction");
      std::vector<DerivationV> ps;
      for (const auto& p : d.premises) {
        expect_rule(p, RuleU::Abs, "under an embedded abstraction");
        ps.push_back(u_to_v(p.premises.at(0), t.body()));
      }
      return node(RuleV::AbsV, std::move(ps));
    }
    case K::Sub:
      expect_rule(d, RuleU::Es, "for a closure");
      return node(RuleV::EsV, {u_to_v(d.premises.at(0), t.body()), u_to_v(d.premises.at(1), t.arg())});
    case K::App: {
      expect_rule(d, RuleU::App, "for an application");
      Term f = cbv(t.fun());
      auto [spine, core] = decompose_list(f);
      DerivationU head = d.premises.at(0);
      DerivationU fun = [&] {
        if (core.is(K::Bang)) {
          auto ch = detail::peel(head, spine.size());
          return detail::wrap(ch.closures, u_bg(Term::bang(ch.core.subject), {ch.core}));
        }
        expect_rule(head, RuleU::Dr, "for a dereliction");
        return head.premises.at(0);
      }();
      return node(RuleV::AppV, {u_to_v(fun, t.fun()), u_to_v(d.premises.at(1), t.arg())});
    }
    default: break;
  }
  throw ImageMismatch("not a lambda term");
}

const Term& image_check(const DerivationU& d, const Term& image) {
  if (!alpha_eq(d.subject, image))
    throw ImageMismatch("subject " + print_term(d.subject) + " is not the embedding " + print_term(image));
  return image;
}

template <class Result, class D, class Translate>
Result infer_lambda(const LambdaTerm& t, std::size_t fuel, Normalization n, const Term& image, Translate back) {
  if (auto* out = std::get_if<FuelExhausted>(&n)) return *out;
  Trace trace = std::get<Trace>(std::move(n));
  InferResultU u = infer_u(image, 2 * fuel + 2);
  if (auto* bad = std::get_if<Untypable>(&u)) return *bad;
  if (auto* out = std::get_if<FuelExhausted>(&u)) return *out;
  D d = back(std::get<Inferred<DerivationU>>(u).derivation, t);
  return Inferred<D>{std::move(d), std::move(trace)};
}

}  // namespace

std::optional<LambdaTerm> LambdaTerm::from_term(const Term& t) {
  if (!is_lambda(t)) return std::nullopt;
  return LambdaTerm(t);
}

LambdaTerm LambdaTerm::of(const Term& t) {
  if (auto l = from_term(t)) return *l;
  throw NotALambdaTerm("not a lambda term: " + print_term(t));
}

LambdaTerm parse_lambda_term(std::string_view text) { return LambdaTerm::of(parse_term(text)); }

std::optional<Step> step_n(const LambdaTerm& t) {
  Position here;
  return to_step(t.term(), find_n(t.term(), here));
}

std::optional<Step> step_v(const LambdaTerm& t) {
  Position here;
  return to_step(t.term(), find_v(t.term(), here));
}

Normalization normalize_n(const LambdaTerm& t, std::size_t fuel) { return normalize_with(t, fuel, step_n); }
Normalization normalize_v(const LambdaTerm& t, std::size_t fuel) { return normalize_with(t, fuel, step_v); }

LambdaNfClass classify_lambda_nf(const LambdaTerm& l) {
  const Term& t = l.term();
  return {ne_n(t), no_n(t), vr_v(t), ne_v(t), no_v(t)};
}

std::string print_lambda_nf_class(const LambdaNfClass& c) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ", ";
    out += name;
  };
  add(c.ne_n, "ne_n");
  add(c.no_n, "no_n");
  add(c.vr_v, "vr_v");
  add(c.ne_v, "ne_v");
  add(c.no_v, "no_v");
  return out.empty() ? "none" : out;
}

Term embed_cbn(const LambdaTerm& t) { return cbn(t.term()); }
Term embed_cbv(const LambdaTerm& t) { return cbv(t.term()); }

Term unbang_value(const LambdaTerm& v) {
  if (!v.is_value()) throw NotALambdaTerm("not a value: " + print_term(v.term()));
  return cbv(v.term()).body();
}

std::size_t n_size(const LambdaTerm& t) { return nsize(t.term()); }
std::size_t v_size(const LambdaTerm& t) { return vsize(t.term()); }

CheckResult check_derivation_n(const DerivationN& d) { return detail::check_tree(d, check_node_n); }
CheckResult check_derivation_v(const DerivationV& d) { return detail::check_tree(d, check_node_v); }

std::size_t size_n(const DerivationN& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += size_n(p);
  return n;
}

std::size_t size_v(const DerivationV& d) {
  switch (d.rule) {
    case RuleV::AxV: return d.type.elements().size();
    case RuleV::AbsV: {
      std::size_t n = d.premises.size();
      for (const auto& p : d.premises) n += size_v(p);
      return n;
    }
    case RuleV::AppV:
    case RuleV::EsV: break;
  }
  std::size_t n = 1;
  for (const auto& p : d.premises) n += size_v(p);
  return n;
}

DerivationU translate_n_to_u(const DerivationN& d) {
  if (!is_lambda(d.subject)) throw NotALambdaTerm("subject is not a lambda term");
  return n_to_u(d);
}

DerivationN translate_u_to_n(const DerivationU& d, const LambdaTerm& t) {
  const Term image = cbn(t.term());
  return u_to_n(detail::transport(d, image_check(d, image)), t.term());
}

DerivationU translate_v_to_u(const DerivationV& d) {
  if (!is_lambda(d.subject)) throw NotALambdaTerm("subject is not a lambda term");
  return v_to_u(d);
}

DerivationV translate_u_to_v(const DerivationU& d, const LambdaTerm& t) {
  const Term image = cbv(t.term());
  return u_to_v(detail::transport(d, image_check(d, image)), t.term());
}

InferResultN infer_n(const LambdaTerm& t, std::size_t fuel) {
  return infer_lambda<InferResultN, DerivationN>(t, fuel, normalize_n(t, fuel), cbn(t.term()), translate_u_to_n);
}

InferResultV infer_v(const LambdaTerm& t, std::size_t fuel) {
  return infer_lambda<InferResultV, DerivationV>(t, fuel, normalize_v(t, fuel), cbv(t.term()), translate_u_to_v);
}

}  // namespace bang
