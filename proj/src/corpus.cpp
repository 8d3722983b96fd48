#include "bang/corpus.hpp"

#include <array>
#include <optional>
#include <random>
#include <string>

namespace bang {

namespace {

using K = Term::Kind;

constexpr std::array<const char*, 4> kNames = {"x", "y", "z", "w"};

std::size_t min_size(K k) {
  switch (k) {
    case K::Var: return 1;
    case K::Abs:
    case K::Bang:
    case K::Der: return 2;
    case K::App:
    case K::Sub: return 3;
  }
  return 1;
}

class Generator {
 public:
  Generator(std::uint64_t seed, bool lambda) : rng_(seed), lambda_(lambda) {}

  Term root(std::size_t index, std::size_t max_size) {
    K kind = lambda_ ? kLambdaKinds[index % kLambdaKinds.size()] : kBangKinds[index % kBangKinds.size()];
    std::size_t n = 1 + below(max_size);
    if (n < min_size(kind)) n = std::min(max_size, min_size(kind));
    std::vector<std::string> scope;
    return gen(n, scope, n >= min_size(kind) ? std::optional<K>(kind) : std::nullopt);
  }

 private:
  static constexpr std::array<K, 6> kBangKinds = {K::Var, K::Abs, K::App, K::Bang, K::Der, K::Sub};
  static constexpr std::array<K, 4> kLambdaKinds = {K::Var, K::Abs, K::App, K::Sub};

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(unsigned percent) { return below(100) < percent; }

  std::string name() { return kNames[below(kNames.size())]; }

  Term var(const std::vector<std::string>& scope) {
    if (!scope.empty() && chance(80)) return Term::var(scope[below(scope.size())]);
    return Term::var(name());
  }

  K pick(std::size_t n) {
    if (n == 1) return K::Var;
    if (chance(10)) return K::Var;
    std::vector<K> options;
    for (K k : lambda_ ? std::vector<K>(kLambdaKinds.begin(), kLambdaKinds.end())
                       : std::vector<K>(kBangKinds.begin(), kBangKinds.end()))
      if (k != K::Var && min_size(k) <= n) options.push_back(k);
    return options[below(options.size())];
  }

  // A term of at most n nodes, with root kind forced when given.
  Term gen(std::size_t n, std::vector<std::string>& scope, std::optional<K> forced = std::nullopt) {
    K kind = forced && min_size(*forced) <= n ? *forced : pick(n);
    switch (kind) {
      case K::Var: return var(scope);
      case K::Abs: {
        std::string x = name();
        scope.push_back(x);
        Term body = gen(n - 1, scope);
        scope.pop_back();
        return Term::abs(x, body);
      }
      case K::Bang: return Term::bang(gen(n - 1, scope));
      case K::Der: return Term::der(gen(n - 1, scope, chance(50) ? std::optional<K>(K::Bang) : std::nullopt));
      case K::App: {
        std::size_t a = 1 + below(n - 2);
        std::optional<K> head;
        if (chance(35)) head = K::Abs;
        else if (chance(10)) head = K::Sub;
        Term fun = gen(a, scope, head);
        Term arg = gen(n - 1 - a, scope, !lambda_ && chance(50) ? std::optional<K>(K::Bang) : std::nullopt);
        return Term::app(fun, arg);
      }
      case K::Sub: {
        std::size_t a = 1 + below(n - 2);
        std::string x = name();
        Term arg = gen(n - 1 - a, scope, !lambda_ && chance(40) ? std::optional<K>(K::Bang) : std::nullopt);
        scope.push_back(x);
        Term body = gen(a, scope);
        scope.pop_back();
        return Term::sub(body, x, arg);
      }
    }
    return var(scope);
  }

  std::mt19937_64 rng_;
  bool lambda_;
};

}  // namespace

std::vector<Term> generate_corpus(std::uint64_t seed, std::size_t max_size, std::size_t count) {
  Generator g(seed, false);
  std::vector<Term> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(g.root(i, std::max<std::size_t>(max_size, 1)));
  return out;
}

std::vector<LambdaTerm> generate_lambda_corpus(std::uint64_t seed, std::size_t max_size, std::size_t count) {
  Generator g(seed, true);
  std::vector<LambdaTerm> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(LambdaTerm::of(g.root(i, std::max<std::size_t>(max_size, 1))));
  return out;
}

}  // namespace bang
