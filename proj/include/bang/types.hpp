#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bang {

enum class TightConstant : unsigned char { A, B, N };

// Immutable type: base variable, tight constant, multiset or arrow M -> sigma.
// Multiset elements are kept in canonical order, so equality is bag equality.
class Type {
 public:
  enum class Kind : unsigned char { Base, Tight, Mult, Arrow };

  static Type base(std::uint32_t id);
  static Type tight(TightConstant c);
  static Type mult(std::vector<Type> elements);
  static Type arrow(const Type& domain, Type codomain);  // domain must be a multiset
  static Type empty_mult();

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }
  bool is_tight_constant() const noexcept { return is(Kind::Tight); }
  bool is_tight_constant(TightConstant c) const noexcept;
  // A multiset whose elements are all tight constants.
  bool is_tight_multiset() const;

  std::uint32_t base_id() const;
  TightConstant constant() const;
  // Elements of a multiset.
  const std::vector<Type>& elements() const;
  // Arrow only.
  const Type& domain() const;
  const Type& codomain() const;

  // Mult only: bag union.
  Type operator+(const Type& other) const;
  bool contains_tight_constant() const;

  friend std::strong_ordering operator<=>(const Type& a, const Type& b);
  friend bool operator==(const Type& a, const Type& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// The distinguished base variable used as the default target of neutral terms.
inline Type omega() { return Type::base(0); }

std::string print_type(const Type& t);

class TypeParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// type := mult ["->" type] | "o" digits | "a" | "b" | "n";  mult := "[" [type {"," type}] "]"
Type parse_type(std::string_view text);

// Finite map from names to non-empty multisets; absent names have [].
class Context {
 public:
  Context() = default;
  static Context singleton(const std::string& x, const Type& multiset);

  Type at(std::string_view x) const;
  Context without(std::string_view x) const;
  Context operator+(const Context& other) const;
  Context& operator+=(const Context& other);
  void set(const std::string& x, const Type& multiset);

  bool tight() const;
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, Type, std::less<>>& entries() const { return entries_; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::map<std::string, Type, std::less<>> entries_;
};

std::string print_context(const Context& c);

}  // namespace bang
