#include "helpers.hpp"

using namespace bang;
using bang::test::T;

TEST_SUITE("syntax") {
  TEST_CASE("parse builds the expected trees") {
    using K = Term::Kind;
    Term t = T("der(!k) !i !o");
    CHECK(t == Term::app(Term::app(Term::der(Term::bang(Term::var("k"))), Term::bang(Term::var("i"))),
                         Term::bang(Term::var("o"))));
    CHECK(T(R"(\x. x x)") == Term::abs("x", Term::app(Term::var("x"), Term::var("x"))));
    CHECK(T(R"(x[y \ !z] w)") == Term::app(Term::sub(Term::var("x"), "y", Term::bang(Term::var("z"))), Term::var("w")));
    CHECK(T("λx. x") == T(R"(\x. x)"));
    CHECK(T("x[y := z]") == T(R"(x[y \ z])"));
    CHECK(T(R"(\x. \y. x y z)").body().body().is(K::App));
  }

  TEST_CASE("print uses minimal parentheses") {
    CHECK(print_term(Term::abs("z", Term::var("z"))) == R"(\z. z)");
    CHECK(print_term(Term::bang(Term::app(Term::var("x"), Term::var("y")))) == "!(x y)");
    CHECK(print_term(Term::sub(Term::var("x"), "x", Term::bang(Term::var("y")))) == R"(x[x \ !y])");
  }

  TEST_CASE("parse errors report an offset") {
    CHECK_THROWS_AS(T(R"(\x.)"), ParseError);
    CHECK_THROWS_AS(T("x)"), ParseError);
    CHECK_THROWS_AS(T("(x"), ParseError);
    CHECK_THROWS_AS(T(""), ParseError);
    CHECK_THROWS_AS(parse_term("x y", {.strict = true}), ParseError);
    CHECK_NOTHROW(parse_term(R"(\x. x)", {.strict = true}));
  }

  TEST_CASE("free variables") {
    CHECK(free_vars(Term::sub(Term::var("x"), "x", Term::var("y"))) == NameSet{"y"});
    CHECK(free_vars(T(R"(\x. x)")).empty());
    CHECK(free_vars(T("x !x")) == NameSet{"x"});
    CHECK(free_vars(T(R"(x[x \ x])")) == NameSet{"x"});
  }

  TEST_CASE("capture-avoiding substitution") {
    Term id = T(R"(\z. z)");
    CHECK(subst_meta(T("x !x"), "x", id) == Term::app(id, Term::bang(id)));
    Term r = subst_meta(T(R"(\y. x)"), "x", T("y"));
    REQUIRE(r.is(Term::Kind::Abs));
    CHECK(r.name() != "y");
    CHECK(r.body() == T("y"));
    CHECK(subst_meta(T("y"), "x", id) == T("y"));
    CHECK(alpha_eq(subst_meta(T(R"(x[y \ x])"), "x", T("y")), T(R"(y[w \ y])")));
  }

  TEST_CASE("alpha equivalence") {
    CHECK(alpha_eq(T(R"(\z. z)"), T(R"(\w. w)")));
    CHECK(alpha_eq(T(R"(x[x \ !y])"), T(R"(z[z \ !y])")));
    CHECK_FALSE(alpha_eq(T(R"(\x. \y. x)"), T(R"(\x. \y. y)")));
    CHECK_FALSE(alpha_eq(T("x"), T("y")));
    CHECK_FALSE(alpha_eq(T(R"(x[x \ y])"), T(R"(x[z \ y])")));
  }

  TEST_CASE("w-size") {
    CHECK(w_size(T(R"(\z. z)")) == 1);
    CHECK(w_size(T(R"(!((\x. x x) (\x. x x)))")) == 0);
    CHECK(w_size(T("der(x) y")) == 2);
    CHECK(w_size(T("x")) == 0);
  }

  TEST_CASE("list decomposition and shapes") {
    Term t = T(R"((\x. x)[y \ u][z \ v])");
    ListDecomposition d = decompose_list(t);
    REQUIRE(d.spine.size() == 2);
    CHECK(d.spine[0].binder == "z");
    CHECK(d.spine[1].binder == "y");
    CHECK(d.core == T(R"(\x. x)"));
    CHECK(shape_of(t) == Shape::AbsShape);
    CHECK(decompose_list(T("!t")).spine.empty());
    CHECK(shape_of(T("!t")) == Shape::BangShape);
    ListDecomposition v = decompose_list(T(R"(x[y \ u])"));
    CHECK(v.spine.size() == 1);
    CHECK(v.core == T("x"));
    CHECK(shape_of(T(R"(x[y \ u])")) == Shape::Other);
  }

  TEST_CASE("fresh names use the least free suffix") {
    CHECK(fresh_name("x", NameSet{"x", "x1"}) == "x2");
    CHECK(fresh_name("y3", NameSet{"y"}) == "y1");
  }

  TEST_CASE("property: print then parse is the identity up to alpha") {
    for (const Term& t : test::corpus(11, 1000)) CHECK(alpha_eq(parse_term(print_term(t)), t));
  }

  TEST_CASE("property: substituting a non-free variable changes nothing") {
    Term u = T(R"(\q. q q)");
    for (const Term& t : test::corpus(12)) {
      if (is_free_in("x", t)) continue;
      CHECK(alpha_eq(subst_meta(t, "x", u), t));
    }
  }

  TEST_CASE("property: alpha renaming preserves w-size and alpha keys") {
    for (const Term& t : test::corpus(13)) {
      Term r = test::rename_bound(t, "r");
      CHECK(alpha_eq(r, t));
      CHECK(alpha_key(r) == alpha_key(t));
      CHECK(w_size(r) == w_size(t));
    }
  }

  TEST_CASE("property: alpha equivalence is an equivalence") {
    auto terms = test::corpus(14, 120);
    for (const Term& a : terms) {
      CHECK(alpha_eq(a, a));
      for (const Term& b : terms) CHECK(alpha_eq(a, b) == alpha_eq(b, a));
    }
  }

  TEST_CASE("property: rewrap inverts decompose_list exactly") {
    for (const Term& t : test::corpus(15, 1000)) {
      ListDecomposition d = decompose_list(t);
      CHECK(rewrap(d.core, d.spine) == t);
      CHECK_FALSE(d.core.is(Term::Kind::Sub));
      Shape s = shape_of(t);
      CHECK((s == Shape::AbsShape) == d.core.is(Term::Kind::Abs));
      CHECK((s == Shape::BangShape) == d.core.is(Term::Kind::Bang));
    }
  }

  TEST_CASE("property: free variables of closures") {
    for (const Term& t : test::corpus(16, 1000)) {
      if (!t.is(Term::Kind::Sub)) continue;
      NameSet want = free_vars(t.body());
      want.erase(t.name());
      for (const auto& y : free_vars(t.arg())) want.insert(y);
      CHECK(free_vars(t) == want);
    }
  }
}
