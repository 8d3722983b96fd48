#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bang/term.hpp"

namespace bang {

// DB is multiplicative, SBang and DBang are exponential; S and SV belong to the
// call-by-name / call-by-value fragment.
enum class RuleKind { DB, SBang, DBang, S, SV };

std::string_view rule_name(RuleKind k);
std::optional<RuleKind> rule_from_name(std::string_view name);
inline bool is_multiplicative(RuleKind k) { return k == RuleKind::DB; }

enum class Selector { FunOf, ArgOf, BodyOfAbs, BodyOfDer, BodyOfSub, ArgOfSub };
using Position = std::vector<Selector>;

std::string_view selector_name(Selector s);
std::optional<Selector> selector_from_name(std::string_view name);
std::string print_position(const Position& p);

class InvalidRedex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws InvalidRedex when the path does not match the term.
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

struct Redex {
  Position position;
  RuleKind rule;
  friend bool operator==(const Redex&, const Redex&) = default;
};

bool is_root_redex(const Term& t, RuleKind k);

// Anatomy of a root contraction after the closures of L have been refreshed
// so that nothing is captured when L is commuted.
struct Contraction {
  RuleKind rule;
  Term redex;                  // alpha-equivalent to the input, using the refreshed L
  std::vector<Closure> spine;  // refreshed L, outermost first (empty for S)
  std::string binder;          // DB: abstraction binder; SBang, S, SV: substituted variable
  Term body;                   // DB: abstraction body; SBang, S, SV: closure body; DBang: bang body
  Term argument;               // DB: application argument; SBang: bang body; SV: value; S: argument
  Term result;
};

// Throws InvalidRedex if t is not a root redex of kind k.
Contraction contract(const Term& t, RuleKind k);

// Weak reduction: every redex outside bang bodies, leftmost-outermost first.
std::vector<Redex> redexes(const Term& t);
Term step_at(const Term& t, const Position& p, RuleKind k);

struct Step {
  Position position;
  RuleKind rule;
  Term result;
};

std::optional<Step> step_dw(const Term& t);

struct Trace {
  Term start;
  std::vector<Step> steps;

  const Term& final_term() const { return steps.empty() ? start : steps.back().result; }
  const Term& term_before(std::size_t i) const { return i == 0 ? start : steps[i - 1].result; }
  std::size_t b() const;
  std::size_t e() const;
};

struct FuelExhausted {
  Trace partial;
};

using Normalization = std::variant<Trace, FuelExhausted>;

Normalization normalize_dw(const Term& t, std::size_t fuel);

struct MaximalTrace {
  Trace trace;
  bool complete;  // false when the branch ran out of fuel
};

// All maximal weak reduction sequences, with states identified up to alpha.
// At most max_traces sequences are produced.
std::vector<MaximalTrace> enumerate_maximal_traces(const Term& t, std::size_t fuel,
                                                   std::size_t max_traces = 100000);

// Reachable weak-reduction graph with states identified up to alpha.
struct ReductionGraph {
  struct Edge {
    Position position;
    RuleKind rule;
    std::size_t target;
  };
  std::vector<Term> states;  // states[0] is the start term
  std::vector<std::vector<Edge>> edges;
  bool truncated = false;
};

ReductionGraph explore(const Term& t, std::size_t max_states);

struct NfClass {
  bool ne = false, na = false, nb = false, no = false;
  bool normal() const { return no; }
  friend bool operator==(const NfClass&, const NfClass&) = default;
};

NfClass classify_nf(const Term& t);
NfClass classify_wcf_nf(const Term& t);
std::string print_nf_class(const NfClass& c, std::string_view suffix);

enum class ClashKind { AppOfBang, SubOfAbs, DerOfAbs, ArgIsAbs };
std::string_view clash_name(ClashKind k);

struct ClashWitness {
  Position position;
  ClashKind kind;
};

struct ClashReport {
  std::optional<ClashWitness> witness;
  bool clash_free() const { return !witness.has_value(); }
};

ClashReport detect_clash(const Term& t);

}  // namespace bang
