#include <functional>

#include "bang/fixtures.hpp"
#include "bang/system_u.hpp"
#include "helpers.hpp"

using namespace bang;
using bang::test::T;

namespace {

std::size_t count_nodes(const DerivationU& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += count_nodes(p);
  return n;
}

bool every_node(const DerivationU& d, const std::function<bool(const DerivationU&)>& f) {
  if (!f(d)) return false;
  for (const auto& p : d.premises)
    if (!every_node(p, f)) return false;
  return true;
}

}  // namespace

TEST_SUITE("system U") {
  TEST_CASE("transcribed derivation of t0") {
    DerivationU phi = fixtures::phi0();
    CHECK(check_derivation_u(phi).ok());
    CHECK(size_u(phi) == 8);
    CHECK(phi.type == parse_type("[o0] -> o0"));
  }

  TEST_CASE("checker rejects malformed nodes") {
    auto bad = test::derivation<DerivationU>(
        R"j({"rule":"ax","context":{"x":"[o0, o0]"},"term":"x","type":"o0","premises":[]})j");
    CheckResult r = check_derivation_u(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violation->path.empty());

    auto omega = test::derivation<DerivationU>(
        R"j({"rule":"bg","context":{},"term":"!((\\x. x x) (\\x. x x))","type":"[]","premises":[]})j");
    CHECK(check_derivation_u(omega).ok());
    CHECK(size_u(omega) == 0);

    auto ax = test::derivation<DerivationU>(
        R"j({"rule":"ax","context":{"x":"[o1]"},"term":"x","type":"o1","premises":[]})j");
    CHECK(check_derivation_u(ax).ok());
    CHECK(size_u(ax) == 1);

    // A wrong premise deep in the tree is reported with its path.
    DerivationU phi = fixtures::phi0();
    phi.premises[0].premises[1].premises[0].premises[0].type = parse_type("o1");
    CheckResult deep = check_derivation_u(phi);
    REQUIRE_FALSE(deep.ok());
    CHECK(deep.violation->path == std::vector<std::size_t>{0, 1, 0});
  }

  TEST_CASE("normal form typing") {
    DerivationU x = type_normal_form_u(T("x"), parse_type("o3"));
    CHECK(x.rule == RuleU::Ax);
    CHECK(x.context.at("x") == parse_type("[o3]"));
    CHECK(x.type == parse_type("o3"));

    DerivationU b = type_normal_form_u(T(R"(!((\x. x x) (\x. x x)))"));
    CHECK(b.rule == RuleU::Bg);
    CHECK(b.context.empty());
    CHECK(b.type == Type::empty_mult());

    DerivationU id = type_normal_form_u(T(R"(\z. z)"));
    CHECK(check_derivation_u(id).ok());
    REQUIRE(id.type.is(Type::Kind::Arrow));
    CHECK(id.type.domain() == Type::mult({id.type.codomain()}));

    CHECK_THROWS_AS(type_normal_form_u(T(R"(der(\x. x))")), NotWcfNormalForm);
    CHECK_THROWS_AS(type_normal_form_u(T(R"((\x. x) y)")), NotWcfNormalForm);
  }

  TEST_CASE("substitution of derivations") {
    DerivationU ax = type_normal_form_u(T("x"), parse_type("o1"));
    DerivationU du = type_normal_form_u(T("y z"), parse_type("o1"));
    DerivationU out = subst_derivation_u(ax, "x", T("y z"), {du});
    CHECK(check_derivation_u(out).ok());
    CHECK(size_u(out) == size_u(ax) + size_u(du) - 1);

    DerivationU y = type_normal_form_u(T("y"), parse_type("o1"));
    DerivationU same = subst_derivation_u(y, "x", T("w"), {});
    CHECK(same.subject == y.subject);
    CHECK(same.context == y.context);
    CHECK(size_u(same) == size_u(y));

    // x !x with x used at two types.
    DerivationU xx = type_normal_form_u(T("x !x"), parse_type("o1"));
    Type xs = xx.context.at("x");
    std::vector<DerivationU> dus;
    for (const Type& s : xs.elements()) dus.push_back(type_normal_form_u(T("w"), s));
    DerivationU sub = subst_derivation_u(xx, "x", T("w"), dus);
    CHECK(check_derivation_u(sub).ok());
    CHECK(alpha_eq(sub.subject, T("w !w")));
    std::size_t sum = 0;
    for (const auto& d : dus) sum += size_u(d);
    CHECK(size_u(sub) == size_u(xx) + sum - xs.elements().size());
  }

  TEST_CASE("anti-substitution") {
    DerivationU d = type_normal_form_u(T("y z"), parse_type("o1"));
    auto a = antisubst_derivation_u(d, T("x"), "x", T("y z"));
    CHECK(a.d_t.rule == RuleU::Ax);
    REQUIRE(a.d_us.size() == 1);
    CHECK(a.d_us[0].subject == d.subject);

    DerivationU w = type_normal_form_u(T("w"), parse_type("o1"));
    auto b = antisubst_derivation_u(w, T("w"), "x", T("y"));
    CHECK(b.d_us.empty());
    CHECK(b.d_t.subject == w.subject);

    // Round trip on x !x with u = I.
    Term id = T(R"(\z. z)");
    InferResultU r = infer_u(subst_meta(T("x !x"), "x", id), 100);
    REQUIRE(std::holds_alternative<Inferred<DerivationU>>(r));
    DerivationU whole = std::get<Inferred<DerivationU>>(r).derivation;
    auto parts = antisubst_derivation_u(whole, T("x !x"), "x", id);
    CHECK(check_derivation_u(parts.d_t).ok());
    for (const auto& p : parts.d_us) CHECK(check_derivation_u(p).ok());
    DerivationU back = subst_derivation_u(parts.d_t, "x", id, parts.d_us);
    CHECK(back.context == whole.context);
    CHECK(back.type == whole.type);
    CHECK(size_u(back) == size_u(whole));
  }

  TEST_CASE("weighted subject reduction and expansion along t0") {
    DerivationU phi = fixtures::phi0();
    const Trace& t = test::trace_of(normalize_dw(phi.subject, 100));
    std::vector<std::size_t> sizes{size_u(phi)};
    DerivationU cur = phi;
    for (const Step& s : t.steps) {
      cur = reduce_derivation_u(cur, {s.position, s.rule});
      CHECK(check_derivation_u(cur).ok());
      CHECK(cur.context == phi.context);
      CHECK(cur.type == phi.type);
      sizes.push_back(size_u(cur));
    }
    CHECK(sizes == std::vector<std::size_t>{8, 7, 6, 5, 3, 2});

    DerivationU back = type_normal_form_u(t.final_term(), parse_type("o0"));
    for (std::size_t i = t.steps.size(); i-- > 0;) {
      std::size_t before = size_u(back);
      back = expand_derivation_u(back, t.term_before(i), {t.steps[i].position, t.steps[i].rule});
      CHECK(check_derivation_u(back).ok());
      CHECK(size_u(back) > before);
    }
    CHECK(alpha_eq(back.subject, phi.subject));
    CHECK(back.type == phi.type);
  }

  TEST_CASE("root dB collapses app and abs into es") {
    Term t = T(R"((\x. x y) z)");
    InferResultU r = infer_u(t, 10);
    REQUIRE(std::holds_alternative<Inferred<DerivationU>>(r));
    DerivationU d = std::get<Inferred<DerivationU>>(r).derivation;
    DerivationU red = reduce_derivation_u(d, {{}, RuleKind::DB});
    CHECK(red.rule == RuleU::Es);
    CHECK(size_u(red) + 1 == size_u(d));
    DerivationU exp = expand_derivation_u(red, t, {{}, RuleKind::DB});
    CHECK(size_u(exp) == size_u(red) + 1);
    CHECK(check_derivation_u(exp).ok());
  }

  TEST_CASE("erasing s! keeps the context") {
    Term t = T(R"(y[x \ !(w w)])");
    InferResultU r = infer_u(t, 10);
    REQUIRE(std::holds_alternative<Inferred<DerivationU>>(r));
    DerivationU d = std::get<Inferred<DerivationU>>(r).derivation;
    DerivationU red = reduce_derivation_u(d, {{}, RuleKind::SBang});
    CHECK(red.context == d.context);
    DerivationU exp = expand_derivation_u(red, t, {{}, RuleKind::SBang});
    CHECK(check_derivation_u(exp).ok());
    CHECK(alpha_eq(exp.subject, t));
    CHECK(exp.premises[1].rule == RuleU::Bg);
    CHECK(exp.premises[1].premises.empty());
  }

  TEST_CASE("inference") {
    InferResultU r = infer_u(fixtures::t0(), 100);
    REQUIRE(std::holds_alternative<Inferred<DerivationU>>(r));
    CHECK(size_u(std::get<Inferred<DerivationU>>(r).derivation) >= 6);

    InferResultU c = infer_u(fixtures::clash_example(), 100);
    REQUIRE(std::holds_alternative<Untypable>(c));
    CHECK(std::get<Untypable>(c).reason.find("DerOfAbs") != std::string::npos);

    InferResultU x = infer_u(T("x"), 1);
    REQUIRE(std::holds_alternative<Inferred<DerivationU>>(x));
    CHECK(size_u(std::get<Inferred<DerivationU>>(x).derivation) == 1);

    CHECK(std::holds_alternative<FuelExhausted>(infer_u(T(R"((\x. x !x) !(\x. x !x))"), 30)));
  }

  TEST_CASE("property: inferred derivations check, bound their normal form and are wcf") {
    std::size_t typable = 0;
    for (const Term& t : test::corpus(31, 1500)) {
      InferResultU r = infer_u(t, 200);
      if (auto* u = std::get_if<Untypable>(&r)) {
        CHECK_FALSE(detect_clash(u->normal_form).clash_free());
        continue;
      }
      auto* ok = std::get_if<Inferred<DerivationU>>(&r);
      if (!ok) continue;
      ++typable;
      const DerivationU& d = ok->derivation;
      CHECK(check_derivation_u(d).ok());
      CHECK(size_u(d) >= ok->trace.b() + ok->trace.e() + w_size(ok->trace.final_term()));
      CHECK(size_u(d) >= w_size(d.subject));
      CHECK(detect_clash(d.subject).clash_free());
      CHECK(size_u(d) <= count_nodes(d));
      CHECK(every_node(d, [](const DerivationU& n) { return detect_clash(n.subject).clash_free(); }));
    }
    CHECK(typable > 500);
  }

  TEST_CASE("property: subject reduction strictly decreases size and expansion inverts it") {
    for (const Term& t : test::corpus(32, 1500)) {
      InferResultU r = infer_u(t, 200);
      auto* ok = std::get_if<Inferred<DerivationU>>(&r);
      if (!ok) continue;
      DerivationU d = ok->derivation;
      for (std::size_t i = 0; i < ok->trace.steps.size(); ++i) {
        const Step& s = ok->trace.steps[i];
        DerivationU next = reduce_derivation_u(d, {s.position, s.rule});
        REQUIRE(check_derivation_u(next).ok());
        CHECK(size_u(next) < size_u(d));
        CHECK(next.context == d.context);
        CHECK(next.type == d.type);
        DerivationU again = expand_derivation_u(next, d.subject, {s.position, s.rule});
        CHECK(check_derivation_u(again).ok());
        CHECK(again.context == d.context);
        CHECK(again.type == d.type);
        d = next;
      }
    }
  }

  TEST_CASE("property: anti-substitution inverts substitution") {
    Term u = T(R"(\z. z !z)");
    for (const Term& t0 : test::corpus(33, 1000)) {
      if (!is_free_in("x", t0)) continue;
      Term t = subst_meta(t0, "x", u);
      InferResultU r = infer_u(t, 200);
      auto* ok = std::get_if<Inferred<DerivationU>>(&r);
      if (!ok) continue;
      auto parts = antisubst_derivation_u(ok->derivation, t0, "x", u);
      REQUIRE(check_derivation_u(parts.d_t).ok());
      CHECK(parts.d_t.context.at("x").elements().size() == parts.d_us.size());
      DerivationU back = subst_derivation_u(parts.d_t, "x", u, parts.d_us);
      CHECK(check_derivation_u(back).ok());
      CHECK(back.context == ok->derivation.context);
      CHECK(back.type == ok->derivation.type);
      std::size_t sum = 0;
      for (const auto& p : parts.d_us) sum += size_u(p);
      CHECK(size_u(back) == size_u(parts.d_t) + sum - parts.d_us.size());
      CHECK(size_u(back) == size_u(ok->derivation));
    }
  }

  TEST_CASE("JSON round trip") {
    DerivationU phi = fixtures::phi0();
    DerivationU back = derivation_from_json<DerivationU>(to_json(phi));
    CHECK(to_json(back) == to_json(phi));
    CHECK_THROWS_AS(test::derivation<DerivationU>(R"j({"rule":"zz","context":{},"term":"x","type":"o0","premises":[]})j"),
                    SerializationError);
    CHECK_THROWS_AS(test::derivation<DerivationU>(R"j({"rule":"ax","context":{},"term":"(","type":"o0","premises":[]})j"),
                    SerializationError);
  }
}
