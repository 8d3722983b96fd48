#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bang/lambda.hpp"
#include "bang/term.hpp"

namespace bang {

// Pseudo-random terms of at most max_size nodes, reproducible from the seed.
// Root constructors cycle through all constructors that fit the drawn size;
// redex shapes are favoured so that reduction has something to do. Variables
// are drawn from a small pool, so both open and closed terms occur.
std::vector<Term> generate_corpus(std::uint64_t seed, std::size_t max_size, std::size_t count);

// Same design over the lambda fragment: no bang and no dereliction.
std::vector<LambdaTerm> generate_lambda_corpus(std::uint64_t seed, std::size_t max_size, std::size_t count);

}  // namespace bang
