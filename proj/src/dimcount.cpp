#include "opchris/dimcount.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "opchris/parallel.hpp"

namespace opchris {

int BlockSpec::var_count() const {
  int k = 0;
  for (const auto& [j, n] : blocks) k += n;
  return k;
}

int BlockSpec::total_degree() const {
  int d = 0;
  for (const auto& [j, n] : blocks) d += j * n;
  return d;
}

Int BlockSpec::group_order() const {
  Int g = 1;
  for (const auto& [j, n] : blocks)
    for (int i = 2; i <= n; ++i) g *= i;
  return g;
}

std::string BlockSpec::str() const {
  std::string out = "U_{";
  bool first = true;
  for (const auto& [j, n] : blocks)
    for (int i = 0; i < n; ++i) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(j);
    }
  return out + "}";
}

std::vector<ClassTuple> conjugacy_classes(const BlockSpec& spec) {
  std::vector<ClassTuple> out{{}};
  for (const auto& [j, n] : spec.blocks) {
    std::vector<ClassTuple> next;
    for (const auto& base : out)
      for (const auto& lam : partitions_of(n)) {
        ClassTuple grown = base;
        grown.push_back(lam);
        next.push_back(std::move(grown));
      }
    out = std::move(next);
  }
  return out;
}

Int class_size(const BlockSpec& spec, const ClassTuple& cls) {
  if (cls.size() != spec.blocks.size())
    throw std::invalid_argument("class tuple length mismatch");
  Int size = 1;
  for (size_t b = 0; b < cls.size(); ++b) {
    Int fact = 1;
    for (int i = 2; i <= spec.blocks[b].second; ++i) fact *= i;
    size *= fact / z_of(cls[b]);
  }
  return size;
}

std::vector<Poly> twisted_elementaries(const BlockSpec& spec,
                                       const ClassTuple& cls) {
  const int k = spec.var_count();
  // Characteristic polynomial of the twisted permutation: coefficients of X^i
  // as polynomials in t_1..t_k, built cycle by cycle.
  std::vector<Poly> cp(k + 1);
  cp[0] = Poly{{std::vector<int>(k, 0), 1}};

  int var = 0;
  for (size_t b = 0; b < cls.size(); ++b) {
    for (int len : cls[b].parts) {
      std::vector<int> mono(k, 0);
      for (int i = 0; i < len; ++i) mono[var + i] = 1;
      var += len;

      std::vector<Poly> next(k + 1);
      for (int i = k; i >= 0; --i) {
        if (cp[i].empty()) continue;
        if (i + len <= k)
          for (const auto& [e, c] : cp[i]) next[i + len][e] += c;
        for (const auto& [e, c] : cp[i]) {
          std::vector<int> prod(k);
          for (int v = 0; v < k; ++v) prod[v] = e[v] + mono[v];
          Rational& slot = next[i][prod];
          slot -= c;
          if (slot == 0) next[i].erase(prod);
        }
      }
      cp = std::move(next);
    }
  }
  if (var != k) throw std::logic_error("cycle lengths do not fill the blocks");

  std::vector<Poly> e(k + 1);
  for (int i = 0; i <= k; ++i) {
    e[i] = cp[k - i];
    if (i % 2 == 1)
      for (auto& [mono, c] : e[i]) c = -c;
  }
  return e;
}

Rational class_coefficient(const SymFunc& F_e, const BlockSpec& spec,
                           const ClassTuple& cls) {
  if (F_e.basis != SFBasis::e)
    throw std::invalid_argument("class_coefficient expects the e-basis");
  const int k = spec.var_count();
  const int D = spec.total_degree();
  const auto elem = twisted_elementaries(spec, cls);

  std::vector<int> target(k, 0);
  {
    int var = 0;
    for (const auto& [j, n] : spec.blocks)
      for (int i = 0; i < n; ++i) target[var++] = j;
  }

  Rational total = 0;
  for (const auto& [lam, c] : F_e.terms) {
    if (lam.weight() != D) continue;
    bool in_range = true;
    for (int part : lam.parts) in_range &= (part <= k);
    if (!in_range) continue;  // e_i = 0 beyond the variable count

    Poly prod{{std::vector<int>(k, 0), 1}};
    for (int part : lam.parts) {
      prod = poly_mul(prod, elem[part], D);
      if (prod.empty()) break;
    }
    auto it = prod.find(target);
    if (it != prod.end()) total += c * it->second;
  }
  return total;
}

Int invariant_dim(const SymFunc& F_e, const BlockSpec& spec) {
  const auto classes = conjugacy_classes(spec);
  std::vector<Rational> parts(classes.size());
  parallel_for(static_cast<int>(classes.size()), [&](int i) {
    parts[i] = Rational(class_size(spec, classes[i])) *
               class_coefficient(F_e, spec, classes[i]);
  });
  Rational sum = 0;
  for (const auto& p : parts) sum += p;
  const Rational dim = sum / Rational(spec.group_order());
  if (denominator(dim) != 1 || dim < 0)
    throw std::runtime_error(
        fmt::format("invariant dimension for {} is not a non-negative integer: {}",
                    spec.str(), rat_str(dim)));
  return numerator(dim);
}

Int gaussian_total(int n, std::vector<DimRow>* table) {
  const SymFunc F = f_la(2 * n);
  Int total = 0;
  for (int kpairs = 1; kpairs <= n; ++kpairs) {
    BlockSpec spec{{{2, kpairs}}};
    Int dim = invariant_dim(F, spec);
    if (table) table->push_back({spec, dim});
    total += dim;
  }
  return total;
}

Int cumulant_total(int n, std::vector<DimRow>* table) {
  const SymFunc F = f_la(n);
  Int total = 0;
  for (int w = 2; w <= n; ++w) {
    for (const auto& lam : partitions_of(w, 2)) {
      // Parts ascending with multiplicities -> blocks.
      std::map<int, int> mult;
      for (int part : lam.parts) ++mult[part];
      BlockSpec spec;
      for (const auto& [j, m] : mult) spec.blocks.push_back({j, m});
      Int dim = invariant_dim(F, spec);
      if (table) table->push_back({spec, dim});
      total += dim;
    }
  }
  return total;
}

}  // namespace opchris
