#pragma once

// Periodic pseudospectral toolbox on the torus [0, 2*pi): uniform grids,
// FFT-backed conversions between point samples and Fourier coefficients,
// Fourier multipliers, pointwise (optionally dealiased) products and the
// Sobolev norms/inner products everything above is measured in.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

/// phi1(z) = (e^z - 1) / z, extended by phi1(0) = 1.  Near the origin the
/// direct quotient loses digits, so a short Taylor polynomial takes over.
cplx phi1(cplx z);

/// sin(x)/x with the removable singularity filled in by 1.
double sinc(double x);

class SpectralGrid;
using GridPtr = std::shared_ptr<const SpectralGrid>;

/// Uniform collocation grid with n points x_j = 2*pi*j/n and the integer
/// wavenumbers k in [-n/2, n/2 - 1].  Wavenumbers are stored in FFT order
/// (0, 1, ..., n/2 - 1, -n/2, ..., -1) so that coefficient arrays line up
/// with the transform layout; as a set the range is covered exactly once.
class SpectralGrid {
 public:
  static constexpr int min_points = 4;
  static constexpr int max_points = 1 << 20;

  int n_points() const { return n_; }
  double spacing() const { return two_pi / n_; }
  std::span<const int> wavenumbers() const { return wavenumbers_; }

  /// Wavenumber stored at array position idx.
  int wavenumber(std::size_t idx) const { return wavenumbers_[idx]; }

  /// Array position of wavenumber k; throws if k is outside [-n/2, n/2 - 1].
  std::size_t index_of(int k) const;

  /// Collocation nodes x_j = j * spacing().
  std::vector<double> nodes() const;

 private:
  explicit SpectralGrid(int n);
  friend GridPtr make_grid(int n_points);

  int n_;
  std::vector<int> wavenumbers_;
};

/// Create a grid with n_points collocation points.  n_points must be an even
/// integer in [4, 2^20]; anything else throws std::invalid_argument.
GridPtr make_grid(int n_points);

/// A function on the torus held as Fourier coefficients over a SpectralGrid.
/// Coefficients follow the grid's FFT ordering and the convention
/// c_k = (1/n) * sum_j f(x_j) e^{-i k x_j}.
class Field {
 public:
  Field(GridPtr grid, std::vector<cplx> coeffs);

  static Field zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  /// Coefficient of wavenumber k (bounds-checked through the grid).
  cplx coeff(int k) const { return coeffs_[grid_->index_of(k)]; }
  void set_coeff(int k, cplx value) { coeffs_[grid_->index_of(k)] = value; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx scale);

 private:
  GridPtr grid_;
  std::vector<cplx> coeffs_;
};

Field operator+(Field lhs, const Field& rhs);
Field operator-(Field lhs, const Field& rhs);
Field operator*(cplx scale, Field f);
Field operator*(Field f, cplx scale);

/// A diagonal Fourier multiplier: the operator acting as multiplication by
/// symbol(k) on the mode e^{i k x}.  The symbol is applied literally to every
/// stored wavenumber, including the unmatched Nyquist mode -n/2.
class MultiplierSymbol {
 public:
  explicit MultiplierSymbol(std::function<cplx(int)> symbol);

  cplx operator()(int k) const { return symbol_(k); }

  /// Free Schroedinger flow e^{i t dxx}: k -> e^{-i t k^2}.
  static MultiplierSymbol free_flow(double t);
  /// First derivative: k -> i k.
  static MultiplierSymbol derivative();
  /// Zero-mean antiderivative: k -> 1/(i k) for k != 0, and 0 at k = 0.
  static MultiplierSymbol inverse_derivative();
  /// phi1(c * dxx): k -> phi1(-c k^2) for a complex constant c.
  static MultiplierSymbol phi1_dxx(cplx c);
  /// Bessel weight <k>^s = (1 + k^2)^{s/2}.
  static MultiplierSymbol sobolev_weight(double s);

 private:
  std::function<cplx(int)> symbol_;
};

/// Inverse transform: samples f(x_j) of the trigonometric interpolant.
std::vector<cplx> to_physical(const Field& f);

/// Forward transform from point samples; samples.size() must equal the grid
/// size or std::invalid_argument is thrown.
Field to_spectral(std::span<const cplx> samples, const GridPtr& grid);

/// Apply a diagonal Fourier multiplier (no transforms involved).
Field apply_multiplier(const Field& f, const MultiplierSymbol& m);

/// Shorthand for the zero-mean antiderivative multiplier.
Field inv_derivative(const Field& f);

/// Pointwise product of two fields on the same grid.  With dealias = false
/// this is the plain collocation product (cyclic convolution, so high modes
/// fold back into the resolved band).  With dealias = true the factors are
/// zero-padded onto a 2n grid, multiplied there, and the result truncated
/// back; a doubled grid resolves every sum k1 + k2 of resolved modes, so the
/// truncated result is the exact convolution restricted to the band.
Field pointwise_product(const Field& f, const Field& g, bool dealias = false);

/// Complex conjugate of the function: coefficients c_k -> conj(c_{-k}),
/// realised by an index shuffle (the Nyquist slot maps to itself).
Field conj_field(const Field& f);

/// Mean value Pi_0 f = c_0.
cplx mean_mode(const Field& f);

/// Remove the mean: zero the k = 0 coefficient.
Field project_out_mean(const Field& f);

/// Sobolev norm ||f||_{H^s} = sqrt(2*pi * sum_k (1 + k^2)^s |c_k|^2).
double sobolev_norm(const Field& f, double s);

/// L^2 inner product int f conj(g) dx = 2*pi * sum_k f_k conj(g_k).
cplx inner_product(const Field& f, const Field& g);

/// Throws std::invalid_argument unless both fields live on grids of the same
/// size.  Shared helper for all binary operations.
void require_same_grid(const Field& f, const Field& g, const char* where);

}  // namespace dnls
