#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bang/derivation.hpp"

namespace bang {

CheckResult check_derivation_u(const DerivationU& d);

// Number of nodes other than bg.
std::size_t size_u(const DerivationU& d);

// Raised when a constructive typing is requested for a term that is not a
// clash-free normal form.
class NotWcfNormalForm : public DerivationError {
 public:
  using DerivationError::DerivationError;
};

// Derivation of a clash-free normal form. Neutral terms get the target type
// (omega by default); other normal forms get the type of the construction.
DerivationU type_normal_form_u(const Term& t, std::optional<Type> target = std::nullopt);

// Derivation of t{x:=u} from one of t and derivations of u, one per element of
// the multiset assigned to x.
DerivationU subst_derivation_u(const DerivationU& d_t, const std::string& x, const Term& u,
                               const std::vector<DerivationU>& d_us);

template <class D>
struct AntiSubstitution {
  D d_t;
  std::vector<D> d_us;  // occurrences of x in document order
};

// Splits a derivation of t{x:=u}.
AntiSubstitution<DerivationU> antisubst_derivation_u(const DerivationU& d, const Term& t, const std::string& x,
                                                     const Term& u);

// Derivation of the reduct of d's subject by the given weak step.
DerivationU reduce_derivation_u(const DerivationU& d, const Redex& step);

// Derivation of t from a derivation of its reduct by the given weak step.
DerivationU expand_derivation_u(const DerivationU& d, const Term& t, const Redex& step);

using InferResultU = std::variant<Inferred<DerivationU>, Untypable, FuelExhausted>;

// Normalises with the dw strategy, types the normal form and expands the
// derivation back along the trace.
InferResultU infer_u(const Term& t, std::size_t fuel);

// Reason a normal form is rejected by the constructive typing, if any.
std::optional<std::string> untypable_reason(const Term& normal_form);

}  // namespace bang
