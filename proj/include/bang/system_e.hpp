#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bang/derivation.hpp"
#include "bang/system_u.hpp"

namespace bang {

CheckResult check_derivation_e(const DerivationE& d);

// Tight context and tight constant type.
bool is_tight(const DerivationE& d);

// Tight derivation of a clash-free normal form with counters (0, 0, w_size).
DerivationE type_normal_form_tight(const Term& t);

DerivationE subst_derivation_e(const DerivationE& d_t, const std::string& x, const Term& u,
                               const std::vector<DerivationE>& d_us);

AntiSubstitution<DerivationE> antisubst_derivation_e(const DerivationE& d, const Term& t, const std::string& x,
                                                     const Term& u);

// Derivation of the dw reduct of d's subject. Throws DerivationError when the
// subject is normal, when step is not the dw step, or when the subject is
// abstraction-shaped with a non-tight type.
DerivationE reduce_derivation_e(const DerivationE& d);
DerivationE reduce_derivation_e(const DerivationE& d, const Redex& step);

// Tight derivation of t from a tight derivation of its dw reduct. Throws
// TightExpansionError when no tight derivation of t arises from d.
DerivationE expand_derivation_e(const DerivationE& d, const Term& t);
DerivationE expand_derivation_e(const DerivationE& d, const Term& t, const Redex& step);

// The dw trace reaches a clash-free normal form, but a backward step cannot
// be retyped tightly.
struct ExpansionFailure {
  Trace trace;
  std::size_t step_index;  // index into trace.steps of the failing expansion
  std::string reason;
};

using InferResultE = std::variant<Inferred<DerivationE>, Untypable, FuelExhausted, ExpansionFailure>;

InferResultE infer_tight(const Term& t, std::size_t fuel);

// If the subject is neutral or b = e = 0, and the context is tight, then the
// type is a tight constant.
bool tight_spreading_check(const DerivationE& d);

}  // namespace bang
