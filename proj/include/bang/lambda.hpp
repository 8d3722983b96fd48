#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "bang/derivation.hpp"
#include "bang/reduction.hpp"
#include "bang/term.hpp"

namespace bang {

class NotALambdaTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A term of the lambda calculus with explicit substitutions: no bang and no
// dereliction anywhere.
class LambdaTerm {
 public:
  static std::optional<LambdaTerm> from_term(const Term& t);
  // Throws NotALambdaTerm.
  static LambdaTerm of(const Term& t);

  const Term& term() const noexcept { return t_; }
  bool is_value() const noexcept { return t_.is(Term::Kind::Var) || t_.is(Term::Kind::Abs); }

  friend bool operator==(const LambdaTerm&, const LambdaTerm&) = default;

 private:
  explicit LambdaTerm(Term t) : t_(std::move(t)) {}
  Term t_;
};

// Parses the bang-calculus syntax and rejects "!" and "der".
LambdaTerm parse_lambda_term(std::string_view text);

// Head call-by-name step (dB, s) and open call-by-value step (dB, sv), both
// leftmost-outermost in their context grammar.
std::optional<Step> step_n(const LambdaTerm& t);
std::optional<Step> step_v(const LambdaTerm& t);
Normalization normalize_n(const LambdaTerm& t, std::size_t fuel);
Normalization normalize_v(const LambdaTerm& t, std::size_t fuel);

struct LambdaNfClass {
  bool ne_n = false, no_n = false;
  bool vr_v = false, ne_v = false, no_v = false;
  friend bool operator==(const LambdaNfClass&, const LambdaNfClass&) = default;
};

LambdaNfClass classify_lambda_nf(const LambdaTerm& t);
std::string print_lambda_nf_class(const LambdaNfClass& c);

Term embed_cbn(const LambdaTerm& t);
Term embed_cbv(const LambdaTerm& t);

// The u with cbv(v) = !u for a value v. Throws NotALambdaTerm otherwise.
Term unbang_value(const LambdaTerm& v);

std::size_t n_size(const LambdaTerm& t);
std::size_t v_size(const LambdaTerm& t);

CheckResult check_derivation_n(const DerivationN& d);
CheckResult check_derivation_v(const DerivationV& d);
std::size_t size_n(const DerivationN& d);
std::size_t size_v(const DerivationV& d);

// Raised when a derivation does not type the embedding of the given term.
class ImageMismatch : public DerivationError {
 public:
  using DerivationError::DerivationError;
};

DerivationU translate_n_to_u(const DerivationN& d);
DerivationN translate_u_to_n(const DerivationU& d, const LambdaTerm& t);
DerivationU translate_v_to_u(const DerivationV& d);
DerivationV translate_u_to_v(const DerivationU& d, const LambdaTerm& t);

using InferResultN = std::variant<Inferred<DerivationN>, Untypable, FuelExhausted>;
using InferResultV = std::variant<Inferred<DerivationV>, Untypable, FuelExhausted>;

// The returned trace is the call-by-name (call-by-value) trace of t.
InferResultN infer_n(const LambdaTerm& t, std::size_t fuel);
InferResultV infer_v(const LambdaTerm& t, std::size_t fuel);

}  // namespace bang
