#include <algorithm>
#include <set>

#include "bang/fixtures.hpp"
#include "helpers.hpp"

using namespace bang;
using bang::test::T;

namespace {

const char* kK = R"(\x. \y. x)";
const char* kI = R"(\z. z)";
const char* kOmega = R"((\x. x x) (\x. x x))";

std::vector<RuleKind> kinds(const Trace& t) {
  std::vector<RuleKind> out;
  for (const auto& s : t.steps) out.push_back(s.rule);
  return out;
}

bool inside_bang(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Selector s : p) {
    if (cur->is(Term::Kind::Bang)) return true;
    cur = &subterm_at(*cur, Position{s});
  }
  return false;
}

}  // namespace

TEST_SUITE("reduction") {
  TEST_CASE("redexes") {
    auto rs = redexes(fixtures::t0());
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].rule == RuleKind::DBang);
    CHECK(rs[0].position == Position{Selector::FunOf, Selector::FunOf});
    CHECK(redexes(T(kI)).empty());

    // The closure argument is itself an s! redex, so there are two.
    Term t = T(R"(x[x \ (!(\z. z))[y \ !((\x. x x) (\x. x x))]])");
    rs = redexes(t);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0] == Redex{{}, RuleKind::SBang});
    CHECK(rs[1] == Redex{{Selector::ArgOfSub}, RuleKind::SBang});
    CHECK(alpha_eq(step_at(t, {}, RuleKind::SBang), T(R"((\z. z)[y \ !((\x. x x) (\x. x x))])")));
  }

  TEST_CASE("step_at on the root rules") {
    CHECK(alpha_eq(step_at(T(std::string("der(!(") + kK + "))"), {}, RuleKind::DBang), T(kK)));
    CHECK(alpha_eq(step_at(T(std::string("(") + kK + ") !(" + kI + ")"), {}, RuleKind::DB),
                   T(R"((\y. x)[x \ !(\z. z)])")));
    CHECK(alpha_eq(step_at(T(R"(x[x \ !(\z. z)])"), {}, RuleKind::SBang), T(kI)));
    CHECK_THROWS_AS(step_at(T("x y"), {}, RuleKind::DB), InvalidRedex);
    CHECK_THROWS_AS(step_at(T("x"), {Selector::FunOf}, RuleKind::DB), InvalidRedex);
  }

  TEST_CASE("distance rules refresh the list to avoid capture") {
    // The closure [y\z] must not capture the free y of the argument.
    Term t = T(R"((\x. x y)[y \ z] y)");
    Term r = step_at(t, {}, RuleKind::DB);
    CHECK(free_vars(r) == NameSet{"y", "z"});
    Term s = T(R"(x[x \ (!w)[w \ y]])");
    CHECK(free_vars(step_at(s, {}, RuleKind::SBang)) == NameSet{"y"});
  }

  TEST_CASE("step_dw") {
    auto s = step_dw(fixtures::t0());
    REQUIRE(s);
    CHECK(s->rule == RuleKind::DBang);
    CHECK(alpha_eq(s->result, T(std::string("(") + kK + ") !(" + kI + ") !(" + kOmega + ")")));
    auto s2 = step_dw(T(R"((\y. x)[x \ !(\z. z)] !((\x. x x) (\x. x x)))"));
    REQUIRE(s2);
    CHECK(s2->rule == RuleKind::DB);
    CHECK(alpha_eq(s2->result, T(R"(x[y \ !((\x. x x) (\x. x x))][x \ !(\z. z)])")));
    CHECK_FALSE(step_dw(T(kI)));
  }

  TEST_CASE("normalize_dw") {
    const Trace& t = test::trace_of(normalize_dw(fixtures::t0(), 100));
    CHECK(kinds(t) == std::vector<RuleKind>{RuleKind::DBang, RuleKind::DB, RuleKind::DB, RuleKind::SBang,
                                            RuleKind::SBang});
    CHECK(t.b() == 2);
    CHECK(t.e() == 3);
    CHECK(alpha_eq(t.final_term(), T(kI)));

    const Trace& id = test::trace_of(normalize_dw(T(kI), 0));
    CHECK(id.steps.empty());

    // Omega stops after one dB step at a normal form with a clash.
    const Trace& om = test::trace_of(normalize_dw(T(kOmega), 50));
    CHECK(om.steps.size() == 1);
    CHECK(classify_nf(om.final_term()).normal());
    CHECK_FALSE(detect_clash(om.final_term()).clash_free());

    // Its bang counterpart loops.
    auto loop = normalize_dw(T(R"((\x. x !x) !(\x. x !x))"), 50);
    REQUIRE(std::holds_alternative<FuelExhausted>(loop));
    CHECK(std::get<FuelExhausted>(loop).partial.steps.size() == 50);
  }

  TEST_CASE("enumerate_maximal_traces") {
    auto all = enumerate_maximal_traces(fixtures::t0(), 100);
    REQUIRE_FALSE(all.empty());
    for (const auto& m : all) {
      CHECK(m.complete);
      CHECK(m.trace.steps.size() == 5);
      CHECK(alpha_eq(m.trace.final_term(), T(kI)));
    }
    auto x = enumerate_maximal_traces(T("x"), 10);
    REQUIRE(x.size() == 1);
    CHECK(x[0].trace.steps.empty());
    auto c = enumerate_maximal_traces(T(R"((\x. x) !y !z)"), 20);
    REQUIRE(c.size() >= 1);
    for (const auto& m : c) {
      CHECK(m.complete);
      CHECK(m.trace.steps.size() == c[0].trace.steps.size());
      CHECK(alpha_eq(m.trace.final_term(), c[0].trace.final_term()));
    }
  }

  TEST_CASE("normal form classes") {
    NfClass x = classify_nf(T("x"));
    CHECK((x.ne && x.na && x.nb && x.no));
    NfClass b = classify_nf(T(R"(!((\x. x x) (\x. x x)))"));
    CHECK((b.na && b.no && !b.nb && !b.ne));
    NfClass l = classify_nf(T(R"(\x. x)"));
    CHECK((l.nb && l.no && !l.na && !l.ne));
    CHECK(classify_nf(fixtures::t0()) == NfClass{});
    CHECK(print_nf_class(x, "w") == "ne_w, na_w, nb_w, no_w");
  }

  TEST_CASE("clashes") {
    auto r = detect_clash(T("!x y"));
    REQUIRE(r.witness);
    CHECK(r.witness->kind == ClashKind::AppOfBang);
    CHECK(r.witness->position.empty());
    auto d = detect_clash(T(R"(der((\x. z)[y \ der(y) y]))"));
    REQUIRE(d.witness);
    CHECK(d.witness->kind == ClashKind::DerOfAbs);
    CHECK(detect_clash(T(R"(!(der(\x. x)))")).clash_free());
    CHECK(detect_clash(T(R"(x[x \ \y. y])")).witness->kind == ClashKind::SubOfAbs);
    CHECK(detect_clash(T(R"(x (\y. y))")).witness->kind == ClashKind::ArgIsAbs);
  }

  TEST_CASE("clash-free normal form classes") {
    NfClass a = classify_wcf_nf(T("x !y"));
    CHECK(a.ne);
    CHECK(classify_wcf_nf(T(R"(der((\x. z)[y \ der(y) y]))")) == NfClass{});
    CHECK(classify_nf(T(R"(der((\x. z)[y \ der(y) y]))")).normal());
    NfClass l = classify_wcf_nf(T(R"(\x. x !x)"));
    CHECK((l.nb && l.no && !l.ne));
  }

  TEST_CASE("property: three characterisations of normal forms agree") {
    for (const Term& t : test::corpus(21, 1500)) {
      bool none = redexes(t).empty();
      CHECK(none == classify_nf(t).normal());
      CHECK(none == !step_dw(t).has_value());
    }
  }

  TEST_CASE("property: class inclusions") {
    for (const Term& t : test::corpus(22, 1500)) {
      for (const NfClass& c : {classify_nf(t), classify_wcf_nf(t)}) {
        if (!c.no) {
          CHECK(c == NfClass{});
          continue;
        }
        CHECK((!c.ne || (c.na && c.nb)));
        CHECK(c.ne == (c.na && c.nb));
        CHECK(c.no == (c.na || c.nb));
      }
      if (classify_nf(t).normal()) CHECK(classify_wcf_nf(t).normal() == detect_clash(t).clash_free());
    }
  }

  TEST_CASE("property: redex positions stay outside bangs and dw steps are weak steps") {
    for (const Term& t : test::corpus(23, 1500)) {
      auto rs = redexes(t);
      for (const Redex& r : rs) {
        CHECK_FALSE(inside_bang(t, r.position));
        CHECK(is_root_redex(subterm_at(t, r.position), r.rule));
      }
      if (auto s = step_dw(t)) CHECK(std::find(rs.begin(), rs.end(), Redex{s->position, s->rule}) != rs.end());
    }
  }

  TEST_CASE("property: distinct redexes give distinct reducts") {
    for (const Term& t : test::corpus(24, 1500)) {
      std::set<std::string> keys;
      auto rs = redexes(t);
      for (const Redex& r : rs) keys.insert(alpha_key(step_at(t, r.position, r.rule)));
      CHECK(keys.size() == rs.size());
    }
  }

  TEST_CASE("property: weak diamond with swapped kinds") {
    for (const Term& t : test::corpus(25, 800)) {
      auto rs = redexes(t);
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j) {
          Term t1 = step_at(t, rs[i].position, rs[i].rule);
          Term t2 = step_at(t, rs[j].position, rs[j].rule);
          if (alpha_eq(t1, t2)) continue;
          bool closes = false;
          for (const Redex& a : redexes(t1)) {
            if (a.rule != rs[j].rule) continue;
            Term t3 = step_at(t1, a.position, a.rule);
            for (const Redex& b : redexes(t2))
              if (b.rule == rs[i].rule && alpha_eq(step_at(t2, b.position, b.rule), t3)) closes = true;
          }
          CHECK_MESSAGE(closes, print_term(t));
        }
    }
  }

  TEST_CASE("property: complete traces share length and counters") {
    for (const Term& t : test::corpus(26, 600)) {
      auto all = enumerate_maximal_traces(t, 30, 2000);
      std::set<std::pair<std::size_t, std::size_t>> counts;
      bool incomplete = false;
      for (const auto& m : all) {
        if (!m.complete) incomplete = true;
        else counts.insert({m.trace.b(), m.trace.e()});
      }
      if (!incomplete) CHECK(counts.size() <= 1);
    }
  }

  TEST_CASE("property: traces replay with step_at") {
    for (const Term& t : test::corpus(27, 600)) {
      auto n = normalize_dw(t, 100);
      const Trace& tr = std::holds_alternative<Trace>(n) ? std::get<Trace>(n) : std::get<FuelExhausted>(n).partial;
      CHECK(tr.b() + tr.e() == tr.steps.size());
      for (std::size_t i = 0; i < tr.steps.size(); ++i)
        CHECK(step_at(tr.term_before(i), tr.steps[i].position, tr.steps[i].rule) == tr.steps[i].result);
    }
  }

  TEST_CASE("rule names round trip") {
    for (RuleKind k : {RuleKind::DB, RuleKind::SBang, RuleKind::DBang, RuleKind::S, RuleKind::SV}) {
      CHECK(rule_from_name(rule_name(k)) == k);
      CHECK(is_multiplicative(k) == (k == RuleKind::DB));
    }
  }
}
