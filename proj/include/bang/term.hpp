#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bang {

// Immutable term of the bang calculus. Copies share structure.
class Term {
 public:
  enum class Kind : unsigned char { Var, App, Abs, Bang, Der, Sub };

  static Term var(std::string name);
  static Term app(Term fun, Term arg);
  static Term abs(std::string binder, Term body);
  static Term bang(Term body);
  static Term der(Term body);
  // Sub(body, x, arg) is the closure body[x\arg].
  static Term sub(Term body, std::string binder, Term arg);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }

  // Variable name for Var, binder for Abs and Sub.
  const std::string& name() const noexcept;
  // App only.
  const Term& fun() const;
  const Term& arg() const;  // App argument or Sub argument
  // Abs, Bang, Der and Sub.
  const Term& body() const;

  // Number of constructors.
  std::size_t node_count() const noexcept;

  // Syntactic equality (binder names included).
  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using NameSet = std::set<std::string, std::less<>>;

NameSet free_vars(const Term& t);
bool is_free_in(std::string_view x, const Term& t);
// Every variable name occurring in t, free or bound.
NameSet all_names(const Term& t);

// Least `stem + k` (k >= 1) not in avoid, where stem is base without trailing digits.
std::string fresh_name(std::string_view base, const NameSet& avoid);

// Capture-avoiding meta-level substitution t{x:=u}.
Term subst_meta(const Term& t, std::string_view x, const Term& u);

bool alpha_eq(const Term& a, const Term& b);
// A string that is equal for two terms iff they are alpha-equivalent.
std::string alpha_key(const Term& t);

std::size_t w_size(const Term& t);

struct Closure {
  std::string binder;
  Term arg;
  friend bool operator==(const Closure&, const Closure&) = default;
};

enum class Shape { AbsShape, BangShape, Other };

struct ListDecomposition {
  std::vector<Closure> spine;  // outermost first
  Term core;
};

ListDecomposition decompose_list(const Term& t);
// Wraps core with the spine, innermost closure first.
Term rewrap(const Term& core, const std::vector<Closure>& spine);
Shape shape_of(const Term& t);
inline bool is_abs_shaped(const Term& t) { return shape_of(t) == Shape::AbsShape; }
inline bool is_bang_shaped(const Term& t) { return shape_of(t) == Shape::BangShape; }

}  // namespace bang
