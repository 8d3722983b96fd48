#include "bang/acceptance.hpp"

#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "bang/corpus.hpp"
#include "bang/fixtures.hpp"
#include "bang/lambda.hpp"
#include "bang/syntax.hpp"
#include "bang/system_e.hpp"
#include "bang/system_u.hpp"

namespace bang {

namespace {

// Corpus sizes, fuels and thresholds of the criteria.
constexpr std::size_t kGoldenFuel = 100;
constexpr std::size_t kSweepMaxSize = 8;
constexpr std::size_t kSweepFuel = 500;
constexpr std::size_t kSweepMinTerms = 500;
constexpr std::size_t kSweepCorpus = 20000;
constexpr std::size_t kDiamondMaxSize = 8;
constexpr std::size_t kDiamondMaxStates = 200;
constexpr std::size_t kDiamondMinTerms = 300;
constexpr std::size_t kDiamondCorpus = 5000;
constexpr std::size_t kWsrMaxSize = 8;
constexpr std::size_t kWsrFuel = 500;
constexpr std::size_t kWsrCorpus = 10000;
constexpr std::size_t kLambdaMaxSize = 8;
constexpr std::size_t kLambdaMinTerms = 300;
constexpr std::size_t kLambdaCorpus = 5000;
constexpr std::size_t kLambdaFuel = 200;
constexpr std::size_t kMaxReported = 3;

struct Failures {
  std::size_t count = 0;
  std::vector<std::string> examples;

  void add(std::string what) {
    ++count;
    if (examples.size() < kMaxReported) examples.push_back(std::move(what));
  }
  bool none() const { return count == 0; }
  std::string summary() const {
    std::string out = std::to_string(count) + " failure(s)";
    for (const auto& e : examples) out += "; " + e;
    return out;
  }
};

std::string kinds_of(const Trace& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (i) out += ", ";
    out += rule_name(t.steps[i].rule);
  }
  return out + "]";
}

// Facts about every system E derivation met during the run.
class TightObserver {
 public:
  void observe(const DerivationE& d) {
    ++seen_;
    if (!tight_spreading_check(d)) failures_.add("spreading fails on " + print_term(d.subject));
    if (!is_tight(d)) return;
    ++tight_;
    bool zero = d.counters.b == 0 && d.counters.e == 0;
    if (zero != classify_nf(d.subject).normal())
      failures_.add("b=e=0 does not match normality of " + print_term(d.subject));
    if (zero && d.counters.s != w_size(d.subject))
      failures_.add("s = " + std::to_string(d.counters.s) + " but w-size is " + std::to_string(w_size(d.subject)) +
                    " for " + print_term(d.subject));
  }

  CriterionResult result() const {
    std::string detail = std::to_string(seen_) + " derivations, " + std::to_string(tight_) + " tight";
    if (!failures_.none()) detail += "; " + failures_.summary();
    return {11, "tight invariants", failures_.none() && tight_ > 0, detail};
  }

 private:
  std::size_t seen_ = 0;
  std::size_t tight_ = 0;
  Failures failures_;
};

CriterionResult golden_trace() {
  Normalization n = normalize_dw(fixtures::t0(), kGoldenFuel);
  const Trace* t = std::get_if<Trace>(&n);
  if (!t) return {1, "golden trace", false, "t0 did not normalise"};
  std::vector<RuleKind> expected = {RuleKind::DBang, RuleKind::DB, RuleKind::DB, RuleKind::SBang, RuleKind::SBang};
  std::vector<RuleKind> kinds;
  for (const auto& s : t->steps) kinds.push_back(s.rule);
  bool ok = kinds == expected && t->b() == 2 && t->e() == 3 && alpha_eq(t->final_term(), parse_term(R"(\z. z)")) &&
            w_size(t->final_term()) == 1;
  std::ostringstream d;
  d << t->steps.size() << " steps " << kinds_of(*t) << ", (b,e) = (" << t->b() << "," << t->e() << "), nf "
    << print_term(t->final_term()) << ", w-size " << w_size(t->final_term());
  return {1, "golden trace", ok, d.str()};
}

CriterionResult tight_counters(TightObserver& obs) {
  InferResultE r = infer_tight(fixtures::t0(), kGoldenFuel);
  const auto* ok = std::get_if<Inferred<DerivationE>>(&r);
  if (!ok) return {2, "tight counters", false, "infer_tight did not produce a derivation for t0"};
  obs.observe(ok->derivation);
  CheckResult c = check_derivation_e(ok->derivation);
  bool pass = c.ok() && is_tight(ok->derivation) && ok->derivation.counters == Counters{2, 3, 1};
  return {2, "tight counters", pass,
          "counters " + print_counters(ok->derivation.counters) + ", tight " +
              (is_tight(ok->derivation) ? "yes" : "no") + ", check " + describe(c)};
}

CriterionResult u_size() {
  DerivationU phi = fixtures::phi0();
  CheckResult c = check_derivation_u(phi);
  std::size_t size = size_u(phi);
  Normalization n = normalize_dw(phi.subject, kGoldenFuel);
  const Trace& t = std::get<Trace>(n);
  std::size_t bound = t.b() + t.e() + w_size(t.final_term());
  bool pass = c.ok() && size == 8 && bound == 6 && size >= bound;
  return {3, "U size", pass,
          "check " + describe(c) + ", size " + std::to_string(size) + ", b+e+|p| = " + std::to_string(bound)};
}

CriterionResult exactness_sweep(std::uint64_t seed, TightObserver& obs) {
  std::size_t checked = 0, exact = 0, clashing = 0, diverging = 0;
  std::size_t wrong = 0, created = 0, in_context = 0;
  Failures failures;
  for (const Term& t : generate_corpus(seed, kSweepMaxSize, kSweepCorpus)) {
    Normalization n = normalize_dw(t, kSweepFuel);
    const Trace* trace = std::get_if<Trace>(&n);
    if (!trace) {
      ++diverging;
      continue;
    }
    if (untypable_reason(trace->final_term())) {
      ++clashing;
      continue;
    }
    ++checked;
    obs.observe(type_normal_form_tight(trace->final_term()));
    InferResultE r = infer_tight(t, kSweepFuel);
    Counters want{trace->b(), trace->e(), w_size(trace->final_term())};
    if (const auto* ok = std::get_if<Inferred<DerivationE>>(&r)) {
      DerivationE d = ok->derivation;
      obs.observe(d);
      if (d.counters == want && is_tight(d) && check_derivation_e(d).ok()) {
        ++exact;
      } else {
        ++wrong;
        failures.add(print_term(t) + ": counters " + print_counters(d.counters) + ", expected " +
                     print_counters(want));
      }
      for (const Step& s : trace->steps) {
        d = reduce_derivation_e(d, Redex{s.position, s.rule});
        obs.observe(d);
      }
    } else if (const auto* f = std::get_if<ExpansionFailure>(&r)) {
      ++(f->reason.find("created by dB") != std::string::npos ? created : in_context);
      failures.add(print_term(t) + ": no tight expansion at step " + std::to_string(f->step_index + 1) + " (" +
                   std::string(rule_name(f->trace.steps[f->step_index].rule)) + "): " + f->reason);
    } else {
      failures.add(print_term(t) + ": infer_tight gave no derivation");
    }
  }
  std::string detail = std::to_string(exact) + "/" + std::to_string(checked) +
                       " normalising terms with clash-free normal form exact (" + std::to_string(clashing) +
                       " with clashing normal form, " + std::to_string(diverging) + " out of fuel, skipped)";
  if (!failures.none())
    detail += "; wrong counters " + std::to_string(wrong) + ", persistent closure created by dB " +
              std::to_string(created) + ", persistent closure in a list context " + std::to_string(in_context) +
              "; " + failures.summary();
  return {4, "exactness sweep", checked >= kSweepMinTerms && failures.none(), detail};
}

struct GraphVerdict {
  bool diamond = true;
  bool equal_length = true;
  std::string why;
};

GraphVerdict check_graph(const ReductionGraph& g) {
  GraphVerdict v;
  for (std::size_t s = 0; s < g.states.size() && v.diamond; ++s) {
    const auto& es = g.edges[s];
    for (std::size_t i = 0; i < es.size() && v.diamond; ++i)
      for (std::size_t j = i + 1; j < es.size() && v.diamond; ++j) {
        const auto& e1 = es[i];
        const auto& e2 = es[j];
        if (e1.target == e2.target) continue;
        bool closes = false;
        for (const auto& f1 : g.edges[e1.target])
          for (const auto& f2 : g.edges[e2.target])
            if (f1.rule == e2.rule && f2.rule == e1.rule && f1.target == f2.target) closes = true;
        if (!closes) {
          v.diamond = false;
          v.why = "divergence at " + print_term(g.states[s]) + " by " + std::string(rule_name(e1.rule)) + " and " +
                  std::string(rule_name(e2.rule)) + " does not close";
        }
      }
  }
  using Counts = std::set<std::pair<std::size_t, std::size_t>>;
  std::vector<int> colour(g.states.size(), 0);
  std::vector<Counts> memo(g.states.size());
  bool cycle = false;
  std::function<void(std::size_t)> visit = [&](std::size_t s) {
    colour[s] = 1;
    if (g.edges[s].empty()) memo[s].insert({0, 0});
    for (const auto& e : g.edges[s]) {
      if (colour[e.target] == 1) {
        cycle = true;
        continue;
      }
      if (colour[e.target] == 0) visit(e.target);
      bool m = is_multiplicative(e.rule);
      for (auto [b, x] : memo[e.target]) memo[s].insert({b + (m ? 1 : 0), x + (m ? 0 : 1)});
    }
    colour[s] = 2;
  };
  visit(0);
  if (memo[0].size() > 1 || (cycle && !memo[0].empty())) {
    v.equal_length = false;
    v.why = "complete traces of " + print_term(g.states[0]) + " differ in length or kinds" +
            (cycle ? " (reduction cycle next to a normal form)" : "");
  }
  return v;
}

CriterionResult diamond(std::uint64_t seed) {
  std::size_t checked = 0, truncated = 0;
  Failures failures;
  for (const Term& t : generate_corpus(seed + 1, kDiamondMaxSize, kDiamondCorpus)) {
    ReductionGraph g = explore(t, kDiamondMaxStates);
    if (g.truncated) {
      ++truncated;
      continue;
    }
    ++checked;
    GraphVerdict v = check_graph(g);
    if (!v.diamond || !v.equal_length) failures.add(v.why);
  }
  std::string detail = std::to_string(checked) + " terms with at most " + std::to_string(kDiamondMaxStates) +
                       " reachable states (" + std::to_string(truncated) + " larger, skipped)";
  if (!failures.none()) detail += "; " + failures.summary();
  return {5, "diamond and equal length", checked >= kDiamondMinTerms && failures.none(), detail};
}

CriterionResult wsr_monotonicity(std::uint64_t seed) {
  std::size_t typable = 0, steps = 0;
  Failures failures;
  for (const Term& t : generate_corpus(seed + 2, kWsrMaxSize, kWsrCorpus)) {
    InferResultU r = infer_u(t, kWsrFuel);
    const auto* ok = std::get_if<Inferred<DerivationU>>(&r);
    if (!ok) continue;
    ++typable;
    DerivationU d = ok->derivation;
    for (const Step& s : ok->trace.steps) {
      DerivationU next = reduce_derivation_u(d, Redex{s.position, s.rule});
      ++steps;
      if (size_u(next) >= size_u(d) || !check_derivation_u(next).ok()) {
        failures.add(print_term(d.subject) + " -> " + print_term(next.subject) + ": size " +
                     std::to_string(size_u(d)) + " -> " + std::to_string(size_u(next)));
        break;
      }
      d = std::move(next);
    }
  }
  std::string detail = std::to_string(typable) + " typable terms, " + std::to_string(steps) + " steps replayed";
  if (!failures.none()) detail += "; " + failures.summary();
  return {6, "WSR monotonicity", typable > 0 && failures.none(), detail};
}

CriterionResult clash_filtering() {
  Term r = fixtures::clash_example();
  bool reducible = step_dw(r).has_value();
  Normalization n = normalize_dw(r, kGoldenFuel);
  const Trace* t = std::get_if<Trace>(&n);
  bool nf_clash = t && classify_nf(t->final_term()).normal() && !classify_wcf_nf(t->final_term()).normal();
  InferResultU u = infer_u(r, kGoldenFuel);
  bool untypable = std::holds_alternative<Untypable>(u);
  std::string detail = std::string("reducible ") + (reducible ? "yes" : "no") + ", normal form " +
                       (t ? print_term(t->final_term()) : "none") + (nf_clash ? " (not clash-free)" : "") +
                       ", infer_u " + (untypable ? "untypable" : "typable");
  return {7, "clash filtering", reducible && nf_clash && untypable, detail};
}

bool one_step(const Term& from, const Term& to) {
  for (const Redex& r : redexes(from))
    if (alpha_eq(step_at(from, r.position, r.rule), to)) return true;
  return false;
}

bool one_or_two_steps_extra_der(const Term& from, const Term& to) {
  for (const Redex& r : redexes(from)) {
    Term mid = step_at(from, r.position, r.rule);
    if (alpha_eq(mid, to)) return true;
    for (const Redex& r2 : redexes(mid))
      if ((r.rule == RuleKind::DBang || r2.rule == RuleKind::DBang) &&
          alpha_eq(step_at(mid, r2.position, r2.rule), to))
        return true;
  }
  return false;
}

CriterionResult embedding(std::uint64_t seed) {
  auto corpus = generate_lambda_corpus(seed + 3, kLambdaMaxSize, kLambdaCorpus);
  std::size_t n_steps = 0, v_steps = 0;
  Failures failures;
  for (const LambdaTerm& t : corpus) {
    if (!step_n(t) && !redexes(embed_cbn(t)).empty()) failures.add("cbn image of n-normal " + print_term(t.term()));
    if (!step_v(t) && !redexes(embed_cbv(t)).empty()) failures.add("cbv image of v-normal " + print_term(t.term()));
    LambdaTerm cur = t;
    for (std::size_t i = 0; i < kLambdaFuel; ++i) {
      auto s = step_n(cur);
      if (!s) break;
      LambdaTerm next = LambdaTerm::of(s->result);
      ++n_steps;
      if (!one_step(embed_cbn(cur), embed_cbn(next))) {
        failures.add("n-step " + print_term(cur.term()) + " -> " + print_term(next.term()) + " not simulated");
        break;
      }
      cur = next;
    }
    cur = t;
    for (std::size_t i = 0; i < kLambdaFuel; ++i) {
      auto s = step_v(cur);
      if (!s) break;
      LambdaTerm next = LambdaTerm::of(s->result);
      ++v_steps;
      if (!one_or_two_steps_extra_der(embed_cbv(cur), embed_cbv(next))) {
        failures.add("v-step " + print_term(cur.term()) + " -> " + print_term(next.term()) + " not simulated");
        break;
      }
      cur = next;
    }
  }
  std::string detail = std::to_string(corpus.size()) + " lambda terms, " + std::to_string(n_steps) + " n-steps, " +
                       std::to_string(v_steps) + " v-steps";
  if (!failures.none()) detail += "; " + failures.summary();
  return {8, "embedding preservation and simulation", corpus.size() >= kLambdaMinTerms && failures.none(), detail};
}

template <class D>
bool same_judgement(const D& a, const D& b) {
  return a.context == b.context && a.subject == b.subject && a.type == b.type;
}

CriterionResult round_trips_and_sizes(std::uint64_t seed, CriterionResult& sizes) {
  auto corpus = generate_lambda_corpus(seed + 4, kLambdaMaxSize, kLambdaCorpus);
  std::size_t n_typable = 0, v_typable = 0;
  Failures trips, bounds;
  for (const LambdaTerm& t : corpus) {
    InferResultN rn = infer_n(t, kLambdaFuel);
    if (const auto* ok = std::get_if<Inferred<DerivationN>>(&rn)) {
      ++n_typable;
      const DerivationN& phi = ok->derivation;
      DerivationU u = translate_n_to_u(phi);
      DerivationN back = translate_u_to_n(u, t);
      bool ok_u = check_derivation_u(u).ok() && alpha_eq(u.subject, embed_cbn(t)) && u.context == phi.context &&
                  u.type == phi.type;
      if (!check_derivation_n(phi).ok() || !ok_u || !check_derivation_n(back).ok() || !same_judgement(phi, back))
        trips.add("n round trip on " + print_term(t.term()));
      std::size_t need = ok->trace.b() + ok->trace.e() + n_size(LambdaTerm::of(ok->trace.final_term()));
      if (size_n(phi) < need)
        bounds.add("size_n " + std::to_string(size_n(phi)) + " < " + std::to_string(need) + " on " +
                   print_term(t.term()));
    }
    InferResultV rv = infer_v(t, kLambdaFuel);
    if (const auto* ok = std::get_if<Inferred<DerivationV>>(&rv)) {
      ++v_typable;
      const DerivationV& phi = ok->derivation;
      DerivationU u = translate_v_to_u(phi);
      DerivationV back = translate_u_to_v(u, t);
      bool ok_u = check_derivation_u(u).ok() && alpha_eq(u.subject, embed_cbv(t)) && u.context == phi.context &&
                  u.type == phi.type;
      if (!check_derivation_v(phi).ok() || !ok_u || !check_derivation_v(back).ok() || !same_judgement(phi, back))
        trips.add("v round trip on " + print_term(t.term()));
      std::size_t need = ok->trace.b() + ok->trace.e() + v_size(LambdaTerm::of(ok->trace.final_term()));
      if (size_v(phi) < need)
        bounds.add("size_v " + std::to_string(size_v(phi)) + " < " + std::to_string(need) + " on " +
                   print_term(t.term()));
    }
  }
  std::string counts = std::to_string(n_typable) + " N-typable, " + std::to_string(v_typable) + " V-typable of " +
                       std::to_string(corpus.size());
  bool enough = n_typable > 0 && v_typable > 0;
  sizes = {10, "quantitative CBN/CBV", enough && bounds.none(),
           counts + (bounds.none() ? "" : "; " + bounds.summary())};
  return {9, "translation round trips", enough && trips.none(), counts + (trips.none() ? "" : "; " + trips.summary())};
}

template <class F>
CriterionResult guarded(int id, const char* title, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {id, title, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config) {
  TightObserver obs;
  std::vector<CriterionResult> out;
  out.push_back(guarded(1, "golden trace", [] { return golden_trace(); }));
  out.push_back(guarded(2, "tight counters", [&] { return tight_counters(obs); }));
  out.push_back(guarded(3, "U size", [] { return u_size(); }));
  out.push_back(guarded(4, "exactness sweep", [&] { return exactness_sweep(config.seed, obs); }));
  out.push_back(guarded(5, "diamond and equal length", [&] { return diamond(config.seed); }));
  out.push_back(guarded(6, "WSR monotonicity", [&] { return wsr_monotonicity(config.seed); }));
  out.push_back(guarded(7, "clash filtering", [] { return clash_filtering(); }));
  out.push_back(guarded(8, "embedding preservation and simulation", [&] { return embedding(config.seed); }));
  CriterionResult sizes{10, "quantitative CBN/CBV", false, "not run"};
  out.push_back(guarded(9, "translation round trips", [&] { return round_trips_and_sizes(config.seed, sizes); }));
  out.push_back(sizes);
  out.push_back(guarded(11, "tight invariants", [&] { return obs.result(); }));
  return out;
}

}  // namespace bang
