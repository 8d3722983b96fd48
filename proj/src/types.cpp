#include "bang/types.hpp"

#include <algorithm>
#include <cctype>

namespace bang {

struct Type::Node {
  Kind kind;
  std::uint32_t id;          // base id or tight constant
  std::vector<Type> elems;   // multiset elements; for arrows, {domain, codomain}
};

Type Type::base(std::uint32_t id) { return Type(std::make_shared<const Node>(Node{Kind::Base, id, {}})); }

Type Type::tight(TightConstant c) {
  return Type(std::make_shared<const Node>(Node{Kind::Tight, static_cast<std::uint32_t>(c), {}}));
}

Type Type::mult(std::vector<Type> elements) {
  std::sort(elements.begin(), elements.end());
  return Type(std::make_shared<const Node>(Node{Kind::Mult, 0, std::move(elements)}));
}

Type Type::empty_mult() {
  static const Type empty = mult({});
  return empty;
}

Type Type::arrow(const Type& domain, Type codomain) {
  if (!domain.is(Kind::Mult)) throw std::invalid_argument("arrow domain must be a multiset");
  return Type(std::make_shared<const Node>(Node{Kind::Arrow, 0, {domain, std::move(codomain)}}));
}

Type::Kind Type::kind() const noexcept { return node_->kind; }

bool Type::is_tight_constant(TightConstant c) const noexcept {
  return is(Kind::Tight) && node_->id == static_cast<std::uint32_t>(c);
}

bool Type::is_tight_multiset() const {
  return is(Kind::Mult) && std::all_of(node_->elems.begin(), node_->elems.end(),
                                       [](const Type& t) { return t.is_tight_constant(); });
}

std::uint32_t Type::base_id() const {
  if (!is(Kind::Base)) throw std::logic_error("base_id() on a non-base type");
  return node_->id;
}

TightConstant Type::constant() const {
  if (!is(Kind::Tight)) throw std::logic_error("constant() on a non-tight type");
  return static_cast<TightConstant>(node_->id);
}

const std::vector<Type>& Type::elements() const {
  if (!is(Kind::Mult)) throw std::logic_error("elements() on a non-multiset type");
  return node_->elems;
}

const Type& Type::domain() const {
  if (!is(Kind::Arrow)) throw std::logic_error("domain() on a non-arrow type");
  return node_->elems[0];
}

const Type& Type::codomain() const {
  if (!is(Kind::Arrow)) throw std::logic_error("codomain() on a non-arrow type");
  return node_->elems[1];
}

Type Type::operator+(const Type& other) const {
  std::vector<Type> all = elements();
  const auto& more = other.elements();
  all.insert(all.end(), more.begin(), more.end());
  return mult(std::move(all));
}

bool Type::contains_tight_constant() const {
  if (is(Kind::Tight)) return true;
  return std::any_of(node_->elems.begin(), node_->elems.end(),
                     [](const Type& t) { return t.contains_tight_constant(); });
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.node_->id <=> b.node_->id; c != 0) return c;
  const auto& ea = a.node_->elems;
  const auto& eb = b.node_->elems;
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

namespace {

void print_rec(const Type& t, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Base:
      out += 'o';
      out += std::to_string(t.base_id());
      return;
    case Type::Kind::Tight: {
      constexpr char names[] = {'a', 'b', 'n'};
      out += names[static_cast<int>(t.constant())];
      return;
    }
    case Type::Kind::Mult: {
      out += '[';
      bool first = true;
      for (const auto& e : t.elements()) {
        if (!first) out += ", ";
        first = false;
        print_rec(e, out);
      }
      out += ']';
      return;
    }
    case Type::Kind::Arrow:
      print_rec(t.domain(), out);
      out += " -> ";
      print_rec(t.codomain(), out);
      return;
  }
}

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  Type parse_all() {
    Type t = type();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw TypeParseError("type parse error at offset " + std::to_string(i_) + ": " + msg);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Type type() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '[') {
      Type m = multiset();
      if (eat("->")) return Type::arrow(m, type());
      return m;
    }
    if (c == 'o') {
      ++i_;
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) fail("expected digits after 'o'");
      return Type::base(static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(start, i_ - start)))));
    }
    ++i_;
    switch (c) {
      case 'a': return Type::tight(TightConstant::A);
      case 'b': return Type::tight(TightConstant::B);
      case 'n': return Type::tight(TightConstant::N);
      default: --i_; fail(std::string("unexpected '") + c + "'");
    }
  }

  Type multiset() {
    eat("[");
    std::vector<Type> elems;
    if (eat("]")) return Type::mult({});
    for (;;) {
      elems.push_back(type());
      if (eat("]")) break;
      if (!eat(",")) fail("expected ',' or ']'");
    }
    return Type::mult(std::move(elems));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string print_type(const Type& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

Type parse_type(std::string_view text) { return TypeParser(text).parse_all(); }

Context Context::singleton(const std::string& x, const Type& multiset) {
  Context c;
  c.set(x, multiset);
  return c;
}

Type Context::at(std::string_view x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? Type::empty_mult() : it->second;
}

Context Context::without(std::string_view x) const {
  Context c = *this;
  if (auto it = c.entries_.find(x); it != c.entries_.end()) c.entries_.erase(it);
  return c;
}

void Context::set(const std::string& x, const Type& multiset) {
  if (!multiset.is(Type::Kind::Mult)) throw std::invalid_argument("context entries must be multisets");
  if (multiset.elements().empty())
    entries_.erase(x);
  else
    entries_.insert_or_assign(x, multiset);
}

Context& Context::operator+=(const Context& other) {
  for (const auto& [x, m] : other.entries_) {
    auto it = entries_.find(x);
    if (it == entries_.end())
      entries_.emplace(x, m);
    else
      it->second = it->second + m;
  }
  return *this;
}

Context Context::operator+(const Context& other) const {
  Context c = *this;
  c += other;
  return c;
}

bool Context::tight() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second.is_tight_multiset(); });
}

std::string print_context(const Context& c) {
  std::string out;
  bool first = true;
  for (const auto& [x, m] : c.entries()) {
    if (!first) out += ", ";
    first = false;
    out += x;
    out += ':';
    out += print_type(m);
  }
  return out;
}

}  // namespace bang
