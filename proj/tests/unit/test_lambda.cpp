#include "bang/lambda.hpp"
#include "bang/system_u.hpp"
#include "helpers.hpp"

using namespace bang;
using bang::test::T;

namespace {

LambdaTerm L(std::string_view s) { return parse_lambda_term(s); }

const char* kOmega = R"((\x. x x) (\x. x x))";

bool double_bang(const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var: return false;
    case K::Bang: return t.body().is(K::Bang) || double_bang(t.body());
    case K::Abs:
    case K::Der: return double_bang(t.body());
    case K::App: return double_bang(t.fun()) || double_bang(t.arg());
    case K::Sub: return double_bang(t.body()) || double_bang(t.arg());
  }
  return false;
}

template <class D>
bool same_judgement(const D& a, const D& b) {
  return a.context == b.context && a.subject == b.subject && a.type == b.type;
}

}  // namespace

TEST_SUITE("cbn and cbv") {
  TEST_CASE("lambda terms reject bang constructors") {
    CHECK_THROWS_AS(L("!x"), NotALambdaTerm);
    CHECK_THROWS_AS(L("der(x)"), NotALambdaTerm);
    CHECK_FALSE(LambdaTerm::from_term(T("x !y")));
    CHECK(LambdaTerm::from_term(T(R"(x[x \ y])")));
    CHECK(L("x").is_value());
    CHECK(L(R"(\x. y)").is_value());
    CHECK_FALSE(L("x y").is_value());
  }

  TEST_CASE("strategies") {
    Trace n = test::trace_of(normalize_n(L(R"((\x. x) y)"), 10));
    REQUIRE(n.steps.size() == 2);
    CHECK(n.steps[0].rule == RuleKind::DB);
    CHECK(n.steps[1].rule == RuleKind::S);
    CHECK(n.final_term() == T("y"));

    auto v = step_v(L(R"(x[x \ y])"));
    REQUIRE(v);
    CHECK(v->rule == RuleKind::SV);
    CHECK(v->result == T("y"));

    LambdaTerm under = L(R"(\x. (\y. y) z)");
    CHECK_FALSE(step_v(under));
    CHECK(step_n(under));

    // CBV substitutes values only.
    CHECK_FALSE(step_v(L(R"(x[x \ y z])")));
    CHECK(step_n(L(R"(x[x \ y z])")));
  }

  TEST_CASE("normal form classes") {
    LambdaNfClass xy = classify_lambda_nf(L("x y"));
    CHECK(xy.ne_n);
    CHECK(xy.ne_v);
    LambdaNfClass lo = classify_lambda_nf(L(std::string(R"(\x. )") + kOmega));
    CHECK(lo.no_v);
    CHECK_FALSE(lo.no_n);
    LambdaNfClass vr = classify_lambda_nf(L(R"(x[x \ y z])"));
    CHECK(vr.vr_v);
    CHECK(print_lambda_nf_class(classify_lambda_nf(L(kOmega))) == "none");
  }

  TEST_CASE("cbn embedding") {
    CHECK(embed_cbn(L("x y")) == T("x !y"));
    CHECK(embed_cbn(L(R"((\x. x) y)")) == T(R"((\x. x) !y)"));
    CHECK(embed_cbn(L(R"(x[x \ y])")) == T(R"(x[x \ !y])"));
  }

  TEST_CASE("cbv embedding") {
    CHECK(embed_cbv(L("x y")) == T("x !y"));
    CHECK(embed_cbv(L(R"(\x. x)")) == T(R"(!(\x. !x))"));
    CHECK(embed_cbv(L("(x y) z")) == T("der(x !y) !z"));
    CHECK(embed_cbv(L(R"(x[x \ y])")) == T(R"((!x)[x \ !y])"));
    CHECK(unbang_value(L("x")) == T("x"));
    CHECK(unbang_value(L(R"(\x. x)")) == T(R"(\x. !x)"));
  }

  TEST_CASE("term sizes") {
    CHECK(n_size(L("x y")) == 1);
    CHECK(v_size(L(std::string(R"(\x. )") + kOmega)) == 0);
    CHECK(v_size(L("x y")) == 1);
    CHECK(n_size(L(R"(\x. x)")) == 1);
  }

  TEST_CASE("derivation checkers and sizes") {
    auto ax_n = test::derivation<DerivationN>(
        R"j({"rule":"ax_n","context":{"x":"[o0]"},"term":"x","type":"o0","premises":[]})j");
    CHECK(check_derivation_n(ax_n).ok());
    CHECK(size_n(ax_n) == 1);

    auto ax_v = test::derivation<DerivationV>(
        R"j({"rule":"ax_v","context":{"x":"[o1, o2]"},"term":"x","type":"[o1, o2]","premises":[]})j");
    CHECK(check_derivation_v(ax_v).ok());
    CHECK(size_v(ax_v) == 2);

    auto abs_v = test::derivation<DerivationV>(
        R"j({"rule":"abs_v","context":{},"term":"\\x. y","type":"[]","premises":[]})j");
    CHECK(check_derivation_v(abs_v).ok());
    CHECK(size_v(abs_v) == 0);

    auto bad = test::derivation<DerivationV>(
        R"j({"rule":"ax_v","context":{"x":"[o1]"},"term":"x","type":"[o1, o2]","premises":[]})j");
    CHECK_FALSE(check_derivation_v(bad).ok());

    DerivationU u = translate_v_to_u(ax_v);
    CHECK(u.rule == RuleU::Bg);
    CHECK(u.premises.size() == 2);
    CHECK(u.subject == T("!x"));
    CHECK(check_derivation_u(u).ok());
    CHECK(same_judgement(translate_u_to_v(u, L("x")), ax_v));

    DerivationU ua = translate_v_to_u(abs_v);
    CHECK(ua.rule == RuleU::Bg);
    CHECK(ua.premises.empty());
    CHECK(same_judgement(translate_u_to_v(ua, L(R"(\x. y)")), abs_v));

    DerivationU un = translate_n_to_u(ax_n);
    CHECK(un.rule == RuleU::Ax);
    CHECK(same_judgement(translate_u_to_n(un, L("x")), ax_n));

    auto app_n = test::derivation<DerivationN>(
        R"j({"rule":"app_n","context":{"x":"[[] -> o0]"},"term":"x y","type":"o0","premises":[
             {"rule":"ax_n","context":{"x":"[[] -> o0]"},"term":"x","type":"[] -> o0","premises":[]}]})j");
    CHECK(check_derivation_n(app_n).ok());
    DerivationU uapp = translate_n_to_u(app_n);
    CHECK(uapp.premises[1].rule == RuleU::Bg);
    CHECK(uapp.premises[1].premises.empty());
    CHECK(same_judgement(translate_u_to_n(uapp, L("x y")), app_n));

    CHECK_THROWS_AS(translate_u_to_n(un, L("y")), ImageMismatch);
  }

  TEST_CASE("inference") {
    InferResultN n = infer_n(L(R"((\x. x) y)"), 50);
    REQUIRE(std::holds_alternative<Inferred<DerivationN>>(n));
    const auto& in = std::get<Inferred<DerivationN>>(n);
    CHECK(in.trace.steps.size() == 2);
    CHECK(size_n(in.derivation) >= 2);
    CHECK(same_judgement(translate_u_to_n(translate_n_to_u(in.derivation), L(R"((\x. x) y)")), in.derivation));

    InferResultV v = infer_v(L(std::string(R"(\x. )") + kOmega), 50);
    REQUIRE(std::holds_alternative<Inferred<DerivationV>>(v));
    CHECK(check_derivation_v(std::get<Inferred<DerivationV>>(v).derivation).ok());

    InferResultV vy = infer_v(L(R"((\x. x) y)"), 50);
    REQUIRE(std::holds_alternative<Inferred<DerivationV>>(vy));
    const auto& iv = std::get<Inferred<DerivationV>>(vy);
    CHECK(same_judgement(translate_u_to_v(translate_v_to_u(iv.derivation), L(R"((\x. x) y)")), iv.derivation));

    CHECK(std::holds_alternative<FuelExhausted>(infer_n(L(kOmega), 50)));
    CHECK(std::holds_alternative<FuelExhausted>(infer_v(L(kOmega), 50)));
    CHECK(std::holds_alternative<FuelExhausted>(infer_n(L(std::string(R"(\x. )") + kOmega), 50)));
  }

  TEST_CASE("corpus has no bang constructors") {
    for (const LambdaTerm& t : generate_lambda_corpus(3, 8, 500)) CHECK(LambdaTerm::from_term(t.term()));
  }

  TEST_CASE("property: classes agree with the strategies") {
    for (const LambdaTerm& t : generate_lambda_corpus(51, 8, 2000)) {
      LambdaNfClass c = classify_lambda_nf(t);
      CHECK(c.no_n == !step_n(t).has_value());
      CHECK(c.no_v == !step_v(t).has_value());
      CHECK((!c.ne_n || c.no_n));
      CHECK((!c.vr_v || c.no_v));
      CHECK((!c.ne_v || c.no_v));
    }
  }

  TEST_CASE("property: embeddings preserve normal forms and avoid double bangs") {
    for (const LambdaTerm& t : generate_lambda_corpus(52, 8, 2000)) {
      Term n = embed_cbn(t);
      Term v = embed_cbv(t);
      if (!step_n(t)) CHECK(redexes(n).empty());
      if (!step_v(t)) CHECK(redexes(v).empty());
      CHECK_FALSE(double_bang(v));
    }
  }

  TEST_CASE("property: embeddings commute with substitution") {
    auto corpus = generate_lambda_corpus(53, 6, 300);
    for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
      const LambdaTerm& t = corpus[i];
      if (!is_free_in("x", t.term())) continue;
      const LambdaTerm& u = corpus[i + 1];
      LambdaTerm tu = LambdaTerm::of(subst_meta(t.term(), "x", u.term()));
      CHECK(alpha_eq(embed_cbn(tu), subst_meta(embed_cbn(t), "x", embed_cbn(u))));
      if (u.is_value()) CHECK(alpha_eq(embed_cbv(tu), subst_meta(embed_cbv(t), "x", unbang_value(u))));
    }
  }

  TEST_CASE("property: translations check and preserve judgements") {
    std::size_t n_count = 0, v_count = 0;
    for (const LambdaTerm& t : generate_lambda_corpus(54, 8, 1500)) {
      InferResultN rn = infer_n(t, 200);
      if (auto* ok = std::get_if<Inferred<DerivationN>>(&rn)) {
        ++n_count;
        CHECK(check_derivation_n(ok->derivation).ok());
        DerivationU u = translate_n_to_u(ok->derivation);
        CHECK(check_derivation_u(u).ok());
        CHECK(u.context == ok->derivation.context);
        CHECK(u.type == ok->derivation.type);
        CHECK(same_judgement(translate_u_to_n(u, t), ok->derivation));
        CHECK(size_n(ok->derivation) >= ok->trace.b() + ok->trace.e() + n_size(LambdaTerm::of(ok->trace.final_term())));
      }
      InferResultV rv = infer_v(t, 200);
      if (auto* ok = std::get_if<Inferred<DerivationV>>(&rv)) {
        ++v_count;
        CHECK(check_derivation_v(ok->derivation).ok());
        DerivationU u = translate_v_to_u(ok->derivation);
        CHECK(check_derivation_u(u).ok());
        CHECK(u.context == ok->derivation.context);
        CHECK(u.type == ok->derivation.type);
        CHECK(same_judgement(translate_u_to_v(u, t), ok->derivation));
        CHECK(size_v(ok->derivation) >= ok->trace.b() + ok->trace.e() + v_size(LambdaTerm::of(ok->trace.final_term())));
      }
    }
    CHECK(n_count > 1000);
    CHECK(v_count > 1000);
  }
}
