#include "bang/term.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace bang {

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> kids;
  std::size_t count;
};

namespace {

std::size_t count_of(const std::vector<Term>& kids) {
  std::size_t n = 1;
  for (const auto& k : kids) n += k.node_count();
  return n;
}

}  // namespace

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 1}));
}

Term Term::app(Term fun, Term arg) {
  std::vector<Term> kids{std::move(fun), std::move(arg)};
  auto n = count_of(kids);
  return Term(std::make_shared<const Node>(Node{Kind::App, {}, std::move(kids), n}));
}

Term Term::abs(std::string binder, Term body) {
  std::vector<Term> kids{std::move(body)};
  auto n = count_of(kids);
  return Term(std::make_shared<const Node>(Node{Kind::Abs, std::move(binder), std::move(kids), n}));
}

Term Term::bang(Term body) {
  std::vector<Term> kids{std::move(body)};
  auto n = count_of(kids);
  return Term(std::make_shared<const Node>(Node{Kind::Bang, {}, std::move(kids), n}));
}

Term Term::der(Term body) {
  std::vector<Term> kids{std::move(body)};
  auto n = count_of(kids);
  return Term(std::make_shared<const Node>(Node{Kind::Der, {}, std::move(kids), n}));
}

Term Term::sub(Term body, std::string binder, Term arg) {
  std::vector<Term> kids{std::move(body), std::move(arg)};
  auto n = count_of(kids);
  return Term(std::make_shared<const Node>(Node{Kind::Sub, std::move(binder), std::move(kids), n}));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
std::size_t Term::node_count() const noexcept { return node_->count; }

const Term& Term::fun() const {
  if (kind() != Kind::App) throw std::logic_error("fun() on a non-application");
  return node_->kids[0];
}

const Term& Term::arg() const {
  if (kind() != Kind::App && kind() != Kind::Sub) throw std::logic_error("arg() on a term without argument");
  return node_->kids[1];
}

const Term& Term::body() const {
  if (kind() == Kind::Var || kind() == Kind::App) throw std::logic_error("body() on a term without body");
  return node_->kids[0];
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name() || a.node_count() != b.node_count()) return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!(ka[i] == kb[i])) return false;
  return true;
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, NameSet& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t.name()) return;
      out.insert(t.name());
      return;
    case Term::Kind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case Term::Kind::Abs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::Bang:
    case Term::Kind::Der:
      collect_free(t.body(), bound, out);
      return;
    case Term::Kind::Sub:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      collect_free(t.arg(), bound, out);
      return;
  }
}

bool free_in(std::string_view x, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == x;
    case Term::Kind::App: return free_in(x, t.fun()) || free_in(x, t.arg());
    case Term::Kind::Abs: return t.name() != x && free_in(x, t.body());
    case Term::Kind::Bang:
    case Term::Kind::Der: return free_in(x, t.body());
    case Term::Kind::Sub: return (t.name() != x && free_in(x, t.body())) || free_in(x, t.arg());
  }
  return false;
}

void collect_names(const Term& t, NameSet& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.name()); return;
    case Term::Kind::App:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
      return;
    case Term::Kind::Abs:
      out.insert(t.name());
      collect_names(t.body(), out);
      return;
    case Term::Kind::Bang:
    case Term::Kind::Der: collect_names(t.body(), out); return;
    case Term::Kind::Sub:
      out.insert(t.name());
      collect_names(t.body(), out);
      collect_names(t.arg(), out);
      return;
  }
}

}  // namespace

NameSet free_vars(const Term& t) {
  NameSet out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

bool is_free_in(std::string_view x, const Term& t) { return free_in(x, t); }

NameSet all_names(const Term& t) {
  NameSet out;
  collect_names(t, out);
  return out;
}

std::string fresh_name(std::string_view base, const NameSet& avoid) {
  std::size_t end = base.size();
  while (end > 1 && std::isdigit(static_cast<unsigned char>(base[end - 1]))) --end;
  std::string stem(base.substr(0, end));
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!avoid.contains(candidate)) return candidate;
  }
}

namespace {

struct Substituter {
  std::string_view x;
  const Term& u;
  const NameSet& fv_u;

  // Returns the (possibly refreshed) binder and the substituted body.
  std::pair<std::string, Term> under_binder(const std::string& y, const Term& body) const {
    if (y == x || !free_in(x, body)) return {y, body};
    if (!fv_u.contains(y)) return {y, run(body)};
    NameSet avoid = fv_u;
    avoid.merge(free_vars(body));
    avoid.insert(std::string(x));
    std::string fresh = fresh_name(y, avoid);
    Term renamed = subst_meta(body, y, Term::var(fresh));
    return {fresh, run(renamed)};
  }

  Term run(const Term& t) const {
    if (!free_in(x, t)) return t;
    switch (t.kind()) {
      case Term::Kind::Var: return u;
      case Term::Kind::App: return Term::app(run(t.fun()), run(t.arg()));
      case Term::Kind::Bang: return Term::bang(run(t.body()));
      case Term::Kind::Der: return Term::der(run(t.body()));
      case Term::Kind::Abs: {
        auto [y, b] = under_binder(t.name(), t.body());
        return Term::abs(std::move(y), std::move(b));
      }
      case Term::Kind::Sub: {
        Term a = run(t.arg());
        auto [y, b] = under_binder(t.name(), t.body());
        return Term::sub(std::move(b), std::move(y), std::move(a));
      }
    }
    return t;
  }
};

using Levels = std::unordered_map<std::string, std::vector<int>>;

int level_of(const Levels& env, const std::string& name) {
  auto it = env.find(name);
  if (it == env.end() || it->second.empty()) return -1;
  return it->second.back();
}

struct AlphaCompare {
  Levels left, right;
  int depth = 0;

  bool binder(const std::string& a, const Term& ta, const std::string& b, const Term& tb) {
    left[a].push_back(depth);
    right[b].push_back(depth);
    ++depth;
    bool eq = run(ta, tb);
    --depth;
    left[a].pop_back();
    right[b].pop_back();
    return eq;
  }

  bool run(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Term::Kind::Var: {
        int la = level_of(left, a.name());
        int lb = level_of(right, b.name());
        if (la != lb) return false;
        return la >= 0 || a.name() == b.name();
      }
      case Term::Kind::App: return run(a.fun(), b.fun()) && run(a.arg(), b.arg());
      case Term::Kind::Bang:
      case Term::Kind::Der: return run(a.body(), b.body());
      case Term::Kind::Abs: return binder(a.name(), a.body(), b.name(), b.body());
      case Term::Kind::Sub: return run(a.arg(), b.arg()) && binder(a.name(), a.body(), b.name(), b.body());
    }
    return false;
  }
};

void key_rec(const Term& t, Levels& env, int depth, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      int l = level_of(env, t.name());
      if (l >= 0) {
        out += '#';
        out += std::to_string(depth - 1 - l);
      } else {
        out += '$';
        out += t.name();
      }
      out += ';';
      return;
    }
    case Term::Kind::App:
      out += "@(";
      key_rec(t.fun(), env, depth, out);
      key_rec(t.arg(), env, depth, out);
      out += ')';
      return;
    case Term::Kind::Bang:
      out += "!(";
      key_rec(t.body(), env, depth, out);
      out += ')';
      return;
    case Term::Kind::Der:
      out += "D(";
      key_rec(t.body(), env, depth, out);
      out += ')';
      return;
    case Term::Kind::Abs:
      out += "L(";
      env[t.name()].push_back(depth);
      key_rec(t.body(), env, depth + 1, out);
      env[t.name()].pop_back();
      out += ')';
      return;
    case Term::Kind::Sub:
      out += "S(";
      env[t.name()].push_back(depth);
      key_rec(t.body(), env, depth + 1, out);
      env[t.name()].pop_back();
      key_rec(t.arg(), env, depth, out);
      out += ')';
      return;
  }
}

}  // namespace

Term subst_meta(const Term& t, std::string_view x, const Term& u) {
  NameSet fv_u = free_vars(u);
  return Substituter{x, u, fv_u}.run(t);
}

bool alpha_eq(const Term& a, const Term& b) {
  if (a == b) return true;
  return AlphaCompare{}.run(a, b);
}

std::string alpha_key(const Term& t) {
  Levels env;
  std::string out;
  key_rec(t, env, 0, out);
  return out;
}

std::size_t w_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return 0;
    case Term::Kind::App: return 1 + w_size(t.fun()) + w_size(t.arg());
    case Term::Kind::Abs: return 1 + w_size(t.body());
    case Term::Kind::Bang: return 0;
    case Term::Kind::Der: return 1 + w_size(t.body());
    case Term::Kind::Sub: return 1 + w_size(t.body()) + w_size(t.arg());
  }
  return 0;
}

ListDecomposition decompose_list(const Term& t) {
  std::vector<Closure> spine;
  const Term* cur = &t;
  while (cur->is(Term::Kind::Sub)) {
    spine.push_back({cur->name(), cur->arg()});
    cur = &cur->body();
  }
  return {std::move(spine), *cur};
}

Term rewrap(const Term& core, const std::vector<Closure>& spine) {
  Term out = core;
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) out = Term::sub(std::move(out), it->binder, it->arg);
  return out;
}

Shape shape_of(const Term& t) {
  const Term* cur = &t;
  while (cur->is(Term::Kind::Sub)) cur = &cur->body();
  if (cur->is(Term::Kind::Abs)) return Shape::AbsShape;
  if (cur->is(Term::Kind::Bang)) return Shape::BangShape;
  return Shape::Other;
}

}  // namespace bang
