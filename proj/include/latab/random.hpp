#ifndef LATAB_RANDOM_HPP
#define LATAB_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "latab/formula.hpp"

namespace latab {

/// Relative weights of the node kinds drawn by the generator.
struct FormulaWeights {
  unsigned neg = 2, conj = 2, disj = 2, var = 3;
};

struct FormulaShape {
  int max_depth = 3;
  std::vector<std::string> vars{"p", "q", "r"};
  FormulaWeights weights{};
};

namespace detail {
// Plain modulo draw: reproducible across standard libraries, unlike
// std::uniform_int_distribution.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
}  // namespace detail

/// Random AST of depth at most shape.max_depth. At depth 0 only variables are drawn.
inline Formula random_formula(std::mt19937_64& rng, const FormulaShape& shape) {
  auto leaf = [&] { return var(shape.vars[detail::draw(rng, shape.vars.size())]); };
  auto rec = [&](auto&& self, int depth) -> Formula {
    if (depth == 0) return leaf();
    const FormulaWeights& w = shape.weights;
    std::uint64_t r = detail::draw(rng, w.neg + w.conj + w.disj + w.var);
    if (r < w.var) return leaf();
    r -= w.var;
    if (r < w.neg) return ~self(self, depth - 1);
    r -= w.neg;
    Formula a = self(self, depth - 1);
    Formula b = self(self, depth - 1);
    return r < w.conj ? (a & b) : (a | b);
  };
  return rec(rec, shape.max_depth);
}

inline Sequent random_sequent(std::mt19937_64& rng, const FormulaShape& shape = {}) {
  Formula p = random_formula(rng, shape);
  Formula c = random_formula(rng, shape);
  return {p, c};
}

/// `count` sequents from one seeded stream.
inline std::vector<Sequent> random_sequents(std::uint64_t seed, std::size_t count,
                                            const FormulaShape& shape = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Sequent> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_sequent(rng, shape));
  return out;
}

}  // namespace latab

#endif  // LATAB_RANDOM_HPP
