#pragma once

#include <string>
#include <vector>

#include "opchris/jets.hpp"
#include "opchris/operad.hpp"

namespace opchris {

// Exact polynomial model of (Gamma, sigma, h, K) around a basepoint.
struct FieldData {
  int d = 0;
  int m = 0;
  JetSpacePtr sp;
  std::vector<std::vector<Jet>> sigma;               // [i][alpha], i < m
  std::vector<std::vector<std::vector<Jet>>> Gamma;  // [a][b][c], sym in b,c
  std::vector<Jet> h;                                // Delta placeholder
  std::vector<std::vector<Jet>> K;                   // optional, else empty
};

// Seeded sparse rational polynomial data (reproducible across platforms).
FieldData random_field_data(int d, int m, int order, unsigned long long seed,
                            bool with_K = false);

// Elementary differentials: evaluates the vertex-symbol recursion (noise ->
// sigma_i, Gamma vertex -> 2 * (thin-derivatives of Gamma) contracted with the
// two thick evaluations, Delta -> h; thin edges differentiate the vertex
// symbol), summed over all assignments of the tree's colors into {1..m},
// extended linearly over rational coefficients. Returns d components.
std::vector<Jet> upsilon(const TreePtr& t, const FieldData& data);
std::vector<Jet> upsilon(const LinComb& x, const FieldData& data);

// X^beta d_beta Y^alpha + Gamma^alpha_{beta gamma} X^beta Y^gamma.
std::vector<Jet> covariant_vf(const std::vector<Jet>& X,
                              const std::vector<Jet>& Y,
                              const std::vector<std::vector<std::vector<Jet>>>& Gamma);

// Pushforward of the whole data package along phi (d jets whose constant
// terms are phi(u0); Jacobian must be invertible). Output jets live around
// phi(u0).
FieldData diffeo_act(const std::vector<Jet>& phi, const FieldData& data);

// Identity plus seeded higher-order perturbation (plus an invertible seeded
// linear mix), as jets with zero constant term.
std::vector<Jet> random_diffeo(int d, int order, unsigned long long seed);

struct CheckResult {
  bool ok = true;
  int order = 0;         // order through which the comparison ran
  std::string witness;   // first mismatching coefficient, if any
};

// Compares Upsilon_{phi.data}[x] composed with phi against
// Jacobian(phi) * Upsilon_{data}[x], exactly, through `order`.
CheckResult chain_rule_check(const LinComb& x, const FieldData& data,
                             const std::vector<Jet>& phi, int order);

// True iff upsilon(hat_phi_geo(x), data) vanishes identically through the
// valid order (Delta evaluated as h). Requires valid order >= min_order.
bool infinitesimal_check(const LinComb& x, const FieldData& data,
                         int min_order = 1);

}  // namespace opchris
