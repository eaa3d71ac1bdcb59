#pragma once

namespace cvsheet {

// Uniform collocation grid on the 2*pi-periodic interval. n must be even and
// at least 8. The retained spectral band is |k| <= n/2 - 1; the unpaired
// Nyquist mode is dropped so that every retained mode has a conjugate partner
// and real fields map to exactly Hermitian coefficient sets.
class Grid {
 public:
  explicit Grid(int n_points);

  int n() const { return n_; }
  int max_mode() const { return n_ / 2 - 1; }
  double spacing() const;
  double node(int j) const;  // x_j = 2*pi*j/n, j in [0, n)

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Grid& a, const Grid& b) { return a.n_ != b.n_; }

 private:
  int n_;
};

}  // namespace cvsheet
