#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "opchris/dimcount.hpp"
#include "opchris/geoderiv.hpp"

using namespace opchris;

namespace {

const ClassTuple& find_class(const std::vector<ClassTuple>& classes,
                             const ClassTuple& want) {
  for (const auto& c : classes)
    if (c == want) return c;
  throw std::logic_error("class not found");
}

Rational coeff_at(const SymFunc& F, const BlockSpec& spec, const ClassTuple& want) {
  return class_coefficient(F, spec, find_class(conjugacy_classes(spec), want));
}

}  // namespace

TEST_CASE("block specifications") {
  const BlockSpec s{{{2, 2}, {3, 1}}};
  CHECK(s.var_count() == 3);
  CHECK(s.total_degree() == 7);
  CHECK(s.group_order() == 2);
  CHECK(s.str() == "U_{2,2,3}");
  CHECK(BlockSpec{{{2, 4}}}.group_order() == 24);
  CHECK(BlockSpec{{{2, 4}}}.str() == "U_{2,2,2,2}");
}

TEST_CASE("conjugacy classes and their sizes") {
  const BlockSpec s22{{{2, 2}}};
  CHECK(conjugacy_classes(s22).size() == 2);
  CHECK(class_size(s22, {Partition{1, 1}}) == 1);
  CHECK(class_size(s22, {Partition{2}}) == 1);

  const BlockSpec s222{{{2, 3}}};
  CHECK(conjugacy_classes(s222).size() == 3);
  CHECK(class_size(s222, {Partition{1, 1, 1}}) == 1);
  CHECK(class_size(s222, {Partition{2, 1}}) == 3);
  CHECK(class_size(s222, {Partition{3}}) == 2);

  const BlockSpec s2222{{{2, 4}}};
  Int total = 0;
  for (const auto& c : conjugacy_classes(s2222)) total += class_size(s2222, c);
  CHECK(total == 24);

  const BlockSpec s223{{{2, 2}, {3, 1}}};
  CHECK(conjugacy_classes(s223).size() == 2);
}

TEST_CASE("twisted elementary polynomials") {
  const BlockSpec s22{{{2, 2}}};
  {  // identity: the ordinary elementaries
    const auto e = twisted_elementaries(s22, {Partition{1, 1}});
    REQUIRE(e.size() == 3);
    CHECK(e[0] == Poly{{{0, 0}, 1}});
    CHECK(e[1] == Poly{{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK(e[2] == Poly{{{1, 1}, 1}});
  }
  {  // a single 2-cycle: e_1 vanishes, e_2 = -t1 t2
    const auto e = twisted_elementaries(s22, {Partition{2}});
    CHECK(e[1].empty());
    CHECK(e[2] == Poly{{{1, 1}, -1}});
  }
  {  // 2-cycle plus a fixed point on three variables
    const BlockSpec s222{{{2, 3}}};
    const auto e = twisted_elementaries(s222, {Partition{2, 1}});
    REQUIRE(e.size() == 4);
    CHECK(e[1] == Poly{{{0, 0, 1}, 1}});
    CHECK(e[2] == Poly{{{1, 1, 0}, -1}});
    CHECK(e[3] == Poly{{{1, 1, 1}, -1}});
  }
}

TEST_CASE("class coefficients of the character series") {
  const SymFunc f4 = f_la(4);
  CHECK(coeff_at(f4, {{{2, 2}}}, {Partition{1, 1}}) == 28);
  CHECK(coeff_at(f4, {{{2, 2}}}, {Partition{2}}) == 0);

  const SymFunc f6 = f_la(6);
  const BlockSpec s222{{{2, 3}}};
  CHECK(coeff_at(f6, s222, {Partition{1, 1, 1}}) == 2919);
  CHECK(coeff_at(f6, s222, {Partition{2, 1}}) == 13);
  CHECK(coeff_at(f6, s222, {Partition{3}}) == -3);

  const BlockSpec s33{{{3, 2}}};
  CHECK(coeff_at(f6, s33, {Partition{1, 1}}) == 696);
  CHECK(coeff_at(f6, s33, {Partition{2}}) == 2);

  const SymFunc f7 = f_la(7);
  const BlockSpec s223{{{2, 2}, {3, 1}}};
  CHECK(coeff_at(f7, s223, {Partition{1, 1}, Partition{1}}) == 20150);
  CHECK(coeff_at(f7, s223, {Partition{2}, Partition{1}}) == 58);

  const SymFunc f8 = f_la(8);
  const BlockSpec s2222{{{2, 4}}};
  CHECK(coeff_at(f8, s2222, {Partition{1, 1, 1, 1}}) == 698946);
  CHECK(coeff_at(f8, s2222, {Partition{2, 1, 1}}) == 974);
  CHECK(coeff_at(f8, s2222, {Partition{2, 2}}) == 70);
  CHECK(coeff_at(f8, s2222, {Partition{3, 1}}) == -3);
  CHECK(coeff_at(f8, s2222, {Partition{4}}) == -4);
}

TEST_CASE("invariant dimensions of the component table") {
  CHECK(invariant_dim(f_la(2), {{{2, 1}}}) == 1);
  CHECK(invariant_dim(f_la(3), {{{3, 1}}}) == 2);
  CHECK(invariant_dim(f_la(4), {{{4, 1}}}) == 5);
  CHECK(invariant_dim(f_la(5), {{{5, 1}}}) == 14);
  CHECK(invariant_dim(f_la(6), {{{6, 1}}}) == 40);
  CHECK(invariant_dim(f_la(4), {{{2, 2}}}) == 14);
  CHECK(invariant_dim(f_la(5), {{{2, 1}, {3, 1}}}) == 124);
  CHECK(invariant_dim(f_la(6), {{{2, 1}, {4, 1}}}) == 530);
  CHECK(invariant_dim(f_la(6), {{{3, 2}}}) == 349);
  CHECK(invariant_dim(f_la(6), {{{2, 3}}}) == 492);
  CHECK(invariant_dim(f_la(8), {{{2, 4}}}) == 29373);

  // Non-integer averages are rejected rather than rounded.
  SymFunc crooked(SFBasis::e, 2);
  crooked.add(Partition{1, 1}, Rational(1) / 2);
  CHECK_THROWS_AS(invariant_dim(crooked, {{{2, 1}}}), std::runtime_error);
}

TEST_CASE("character dimensions agree with the kernel computation") {
  CHECK(invariant_dim(f_la(2), {{{2, 1}}}) ==
        Int(kernel_basis_geo({{1, 2}}, {{1}}).dim));
  CHECK(invariant_dim(f_la(3), {{{3, 1}}}) ==
        Int(kernel_basis_geo({{1, 3}}, {{1}}).dim));
  CHECK(invariant_dim(f_la(4), {{{4, 1}}}) ==
        Int(kernel_basis_geo({{1, 4}}, {{1}}).dim));
  CHECK(invariant_dim(f_la(4), {{{2, 2}}}) ==
        Int(kernel_basis_geo({{1, 2}, {2, 2}}, {{1, 2}}).dim));
  CHECK(invariant_dim(f_la(5), {{{2, 1}, {3, 1}}}) ==
        Int(kernel_basis_geo({{1, 2}, {2, 3}}, {{1}, {2}}).dim));
}

TEST_CASE("component totals") {
  std::vector<DimRow> table;
  CHECK(gaussian_total(2, &table) == 15);
  REQUIRE(table.size() == 2);
  CHECK(table[0].spec.str() == "U_{2}");
  CHECK(table[0].dim == 1);
  CHECK(table[1].spec.str() == "U_{2,2}");
  CHECK(table[1].dim == 14);

  table.clear();
  CHECK(cumulant_total(4, &table) == 22);  // 1 + 2 + 5 + 14
  REQUIRE(table.size() == 4);

  table.clear();
  CHECK(cumulant_total(6, &table) == 1571);
  CHECK(table.size() == 10);
}
