#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cvsheet/field.hpp"
#include "cvsheet/hilbert.hpp"
#include "cvsheet/products.hpp"

namespace cvsheet {

// Interaction kernel of the quadratic nonlocal term, as a function on mode
// pairs (m, l):
//   lambda(m, l) = -(sgn(m+l) - sgn l) * l^2 * (3m + l) * sgn m * sgn l
// and its symmetrization lambda_sym = (lambda(m,l) + lambda(l,m)) / 2, which
// is the coefficient that actually multiplies fhat(m) fhat(l). lambda_sym
// vanishes exactly when m*l >= 0: only opposite-sign pairs interact, so the
// quadratic term never emits a mode above the band its input occupies.
// Evaluation is exact 64-bit integer arithmetic.
double kernel_lambda(long long m, long long l);
double kernel_lambda_sym(long long m, long long l);

// Sign-quadrant classification of a mode pair. Zero covers m*l >= 0 where
// the symmetrized kernel vanishes; the four labels split m*l < 0 by the sign
// of m and of m+l. On F_I (m+l > 0, m < 0) the kernel collapses to the closed
// form m^2 (3l + m); the other quadrants follow by symmetry and reflection.
enum class KernelRegion { Zero, FI, FII, FIII, FIV };
const char* to_string(KernelRegion r);

KernelRegion region_classify(long long m, long long l);

struct KernelPoint {
  long long m;
  long long l;
  KernelRegion region;
  double lambda;
  double lambda_sym;
};

KernelPoint kernel_point(long long m, long long l);

// CSV rows m,l,region,lambda,lambda_sym over a rectangle of mode pairs.
void kernel_dump(std::ostream& os, long long m_min, long long m_max, long long l_min,
                 long long l_max);

// The quadratic operator Q evaluated two independent ways.
//
// q_spectral sums the closed-form kernel directly:
//   Qhat(k) = 2 sum_{l > k} (k-l)^2 (k+2l) fhat(k-l) fhat(l)      for k > 0,
//   Qhat(-k) = conj(Qhat(k)), and the degenerate zero mode
//   Qhat(0) = 4 sum_{l >= 1} l^3 |fhat(l)|^2
// (the k > 0 formula does not specialize to k = 0; the zero mode has its own
// sum). Exact for band-limited input, O(K^2).
//
// q_commutator assembles the same operator from transform building blocks,
//   Q[f] = -3 [H; g_x] g_xx - [H; g] g_xxx,  g = H[f],
// with products protected by `rule`. This is the path the time stepper uses.
//
// Both reject input whose mean is not zero (relative to coefficient size);
// the operator is defined on mean-free fields.
PeriodicField q_spectral(const PeriodicField& f);
PeriodicField q_commutator(const PeriodicField& f, ProductRule rule = {});

// Conservative-form right-hand side d/dx( H[g^2]_xx / 2 + g f_xx ), g = H[f].
// Identically mean-free (exact x-derivative); equal to -2 g_x f_xx - Q[f] up
// to roundoff when evaluated under the same product rule.
PeriodicField flux_rhs(const PeriodicField& f, ProductRule rule = {});

// Empirical defect ratios for |Q[f]|_{H^r} <= C |f_x|_{H^2} |f_x|_{H^r},
// tabulated like the commutator report (lemma label "q_sobolev_bound").
std::vector<EstimateRow> q_norm_bound_report(int trials, double r,
                                             std::span<const int> grid_sizes,
                                             std::uint64_t seed);

}  // namespace cvsheet
