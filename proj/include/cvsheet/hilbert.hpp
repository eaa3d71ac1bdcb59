#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cvsheet/field.hpp"
#include "cvsheet/products.hpp"

namespace cvsheet {

// Periodic Hilbert transform, the Fourier multiplier -i sgn k with sgn 0 = 0.
// Output always has zero mean; on mean-free fields H is an L2 isometry.
PeriodicField hilbert(const PeriodicField& f);
Spectrum hilbert(const Spectrum& s);

// |H[H[f]] + f - mean(f)|_{L2}; zero up to roundoff for every field.
double hilbert_squared_residual(const PeriodicField& f);

// Commutator [H; v] d^p f = H[v f^(p)] - v H[f^(p)], with the products
// protected by `rule`. No mean is enforced on the output; the commutator of
// two cosines genuinely carries a constant component.
PeriodicField commutator_h(const PeriodicField& v, const PeriodicField& f, int p,
                           ProductRule rule = {});

// The same operator evaluated as an explicit double sum over mode pairs,
//   chat(k) = -i sum_l (sgn k - sgn l) vhat(k-l) (i l)^p fhat(l),
// which also covers k = 0 since sgn 0 = 0. Quadratic cost; reference path.
Spectrum commutator_h_spectral(const Spectrum& v, const Spectrum& f, int p);

// Residual of H[f g - H[f] H[g]] = f H[g] + H[f] g for mean-free f, g,
// measured in L2 and scaled by nothing; caller supplies fields of O(1) size
// or normalizes. Products follow `rule`.
double product_identity_residual(const PeriodicField& f, const PeriodicField& g,
                                 ProductRule rule = {});

// |(H f, g) + (f, H g)|; H is skew-adjoint on L2.
double adjoint_residual(const PeriodicField& f, const PeriodicField& g);

// |([h; H] f, g) - (f, [h; H] g)|; the multiplication-Hilbert commutator is
// symmetric.
double commutator_selfadjoint_residual(const PeriodicField& h, const PeriodicField& f,
                                       const PeriodicField& g, ProductRule rule = {});

// One line of the empirical operator-bound table; `lemma` names the bound the
// ratio belongs to.
struct EstimateRow {
  std::string lemma;
  double sigma = 0.0;
  int p = 0;
  int n_points = 0;
  int trials = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

// Samples seeded random field pairs and tabulates the defect ratios of three
// commutator bounds:
//   hilbert_comm_l2       |[H;v] f|_{L2}        <= C |v|_{H^sigma} |f|_{L2}   (sigma > 1/2)
//   hilbert_comm_sobolev  |[H;v] f^(p)|_{H^sigma} <= C |v^(p)|_{H^sigma} |f|_{H^1}
//   bracket_comm_l2       |[<d>^r;v] f|_{L2}    <= C (|v|_{H^r}|f|_{H^1} + |v_x|_{H^1}|f|_{H^(r-1)})  (r = sigma >= 1)
// Rows outside a bound's validity range are simply not produced. The ensemble
// band is fixed to the 2/3 cutoff of the smallest requested grid, and the
// spectral decay of v is steepened to sigma + p + 2.5 so that v actually lies
// in the spaces the bounds ask for; otherwise the ratios drift upward under
// refinement and say nothing about the operator.
std::vector<EstimateRow> commutator_estimate_report(int trials, double sigma, int p,
                                                    std::span<const int> grid_sizes,
                                                    std::uint64_t seed);

// CSV with header lemma,sigma,p,n_points,trials,max_ratio,mean_ratio.
void write_estimate_csv(std::ostream& os, std::span<const EstimateRow> rows);

}  // namespace cvsheet
