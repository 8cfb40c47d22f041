#pragma once

#include <map>
#include <string>
#include <vector>

#include "opchris/rational.hpp"

namespace opchris {

// Weakly decreasing positive parts; empty = degree 0.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p);
  explicit Partition(std::vector<int> p);
  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool operator<(const Partition& o) const { return parts < o.parts; }
  bool operator==(const Partition& o) const { return parts == o.parts; }
  std::string str() const;  // e.g. "(3,1,1)"
};

// All partitions of n (parts >= min_part).
std::vector<Partition> partitions_of(int n, int min_part = 1);
// |centralizer| z_lambda = prod i^{m_i} m_i!.
Int z_of(const Partition& lam);

enum class SFBasis { p, e, m };

// Degree-truncated symmetric function: sparse map basis-partition -> coeff.
// Operations never extend the truncation degree.
struct SymFunc {
  SFBasis basis = SFBasis::p;
  int maxdeg = 0;
  std::map<Partition, Rational> terms;

  SymFunc() = default;
  SymFunc(SFBasis b, int deg) : basis(b), maxdeg(deg) {}
  void add(const Partition& lam, const Rational& c);
  SymFunc piece(int degree) const;  // homogeneous component
  bool is_zero() const { return terms.empty(); }
  bool operator==(const SymFunc& o) const;
  std::string str() const;
};

SymFunc sf_p(int n, int maxdeg);  // the power sum p_n
SymFunc sf_e(int n, int maxdeg);  // elementary e_n

SymFunc operator+(const SymFunc& a, const SymFunc& b);
SymFunc operator-(const SymFunc& a, const SymFunc& b);
SymFunc operator*(const SymFunc& a, const SymFunc& b);
SymFunc operator*(const Rational& c, SymFunc a);

SymFunc convert(const SymFunc& f, SFBasis target);

// Plethysm f o g (p-basis substitution p_n -> g with p_j -> p_{jn});
// g must have no degree-0 term.
SymFunc plethysm(const SymFunc& f, const SymFunc& g);

// Substitute each p_i -> (-1)^i * ... i.e. evaluate at (-p): every p_lambda
// picks up (-1)^{length(lambda)}.
SymFunc at_minus_p(const SymFunc& f);

// Solve g o F = p_1 degree by degree; g must have linear term exactly p_1.
SymFunc koszul_inverse(const SymFunc& g_dual, int maxdeg);

// Dual-side input series of the kernel suboperad:
//   1 - exp(-sum p_i/i) - (p_1^2 + p_2)/2        (no constant term survives)
SymFunc kernel_dual_series(int maxdeg);
// Dual-side input series of the full tree operad:
//   p_1 * exp(-sum p_i/i) - (p_1^2 + p_2)/2
SymFunc tree_dual_series(int maxdeg);

// The character series of the geometric kernel suboperad (e-basis).
SymFunc f_la(int maxdeg);

// Sparse polynomial in t_1..t_k: exponent vector (length k) -> coeff.
using Poly = std::map<std::vector<int>, Rational>;
Poly poly_mul(const Poly& a, const Poly& b, int max_total_deg);

// Exact expansion with p_r -> t_1^r + ... + t_k^r.
Poly expand_in_variables(const SymFunc& f, int k);

// Dimension EGF: p_1 -> t, p_i -> 0 (i >= 2); coefficient list of t^0..t^maxdeg.
std::vector<Rational> egf_specialize(const SymFunc& f);

// Exact power-series solve of f = t*exp(f) + (f^2/2)*exp(f) to order n
// (coefficients of t^1..t^n, as an EGF: dimension_n = n! * coeff_n).
std::vector<Rational> tree_egf_solve(int n);

}  // namespace opchris
