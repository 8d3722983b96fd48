#pragma once

#include <doctest.h>

#include <string>

#include "bang/corpus.hpp"
#include "bang/derivation.hpp"
#include "bang/reduction.hpp"
#include "bang/serialize.hpp"
#include "bang/syntax.hpp"
#include "bang/term.hpp"

namespace bang::test {

inline Term T(std::string_view s) { return parse_term(s); }

template <class D>
D derivation(const char* text) {
  return derivation_from_json<D>(nlohmann::json::parse(text));
}

// Renames every bound variable to a fresh name carrying the given suffix.
inline Term rename_bound(const Term& t, const std::string& suffix) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var: return t;
    case K::App: return Term::app(rename_bound(t.fun(), suffix), rename_bound(t.arg(), suffix));
    case K::Bang: return Term::bang(rename_bound(t.body(), suffix));
    case K::Der: return Term::der(rename_bound(t.body(), suffix));
    case K::Abs: {
      std::string y = t.name() + suffix;
      return Term::abs(y, rename_bound(subst_meta(t.body(), t.name(), Term::var(y)), suffix));
    }
    case K::Sub: {
      std::string y = t.name() + suffix;
      return Term::sub(rename_bound(subst_meta(t.body(), t.name(), Term::var(y)), suffix), y,
                       rename_bound(t.arg(), suffix));
    }
  }
  return t;
}

inline std::vector<Term> corpus(std::uint64_t seed, std::size_t count = 400, std::size_t max_size = 8) {
  return generate_corpus(seed, max_size, count);
}

inline Trace trace_of(const Normalization& n) {
  REQUIRE(std::holds_alternative<Trace>(n));
  return std::get<Trace>(n);
}

}  // namespace bang::test
