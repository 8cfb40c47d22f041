#pragma once

#include <memory>
#include <string>
#include <vector>

#include "opchris/rational.hpp"

namespace opchris {

// Shared tables for truncated Taylor expansions in d variables up to total
// order R (graded-lex monomial order).
struct JetSpace {
  int d = 0;
  int R = 0;
  std::vector<std::vector<int>> exps;
  int index(const std::vector<int>& e) const;  // -1 if |e| > R

  static std::shared_ptr<const JetSpace> get(int d, int R);  // cached
};
using JetSpacePtr = std::shared_ptr<const JetSpace>;

// One scalar Taylor expansion around a basepoint; variables are deviations.
// `valid` = total order through which the stored coefficients are trusted;
// arithmetic tracks it (min under +/*, minus one per derivative).
struct Jet {
  JetSpacePtr sp;
  int valid = 0;
  std::vector<Rational> c;

  Jet() = default;
  explicit Jet(JetSpacePtr s, const Rational& constant = 0);
  Rational coeff(const std::vector<int>& e) const;
  void set(const std::vector<int>& e, const Rational& v);
  bool zero_to(int order) const;  // all |e| <= order coefficients vanish
  std::string str(int order) const;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Rational& s, Jet a);
bool agree_to(const Jet& a, const Jet& b, int order);

Jet partial(const Jet& a, int var);

// Substitute: outer jet in k variables, inner = k jets (in any common space)
// with vanishing constant term (deviations). valid = min over all inputs.
Jet compose(const Jet& outer, const std::vector<Jet>& inner);

// 1/a; needs a nonzero constant term.
Jet reciprocal(const Jet& a);

// Inverse of a deviation map: phi = d jets in d variables, zero constant
// terms, invertible linear part; returns psi with psi(phi(u)) = u.
std::vector<Jet> invert_map(const std::vector<Jet>& phi);

}  // namespace opchris
