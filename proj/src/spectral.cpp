#include "dnls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace dnls {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One forward/backward plan pair per grid size, together with the aligned
// scratch buffers the plans were created for.  FFTW_ESTIMATE keeps the plan
// choice deterministic (FFTW_MEASURE picks by timing, which would make
// reruns differ in the last bits).
struct PlanSet {
  int n = 0;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit PlanSet(int n_points) : n(n_points) {
    in = fftw_alloc_complex(static_cast<std::size_t>(n));
    out = fftw_alloc_complex(static_cast<std::size_t>(n));
    if (in == nullptr || out == nullptr) {
      throw std::runtime_error("fftw buffer allocation failed");
    }
    // The planner itself is not thread safe, only plan execution is.
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (fwd == nullptr || bwd == nullptr) {
      throw std::runtime_error("fftw plan creation failed");
    }
  }

  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;

  ~PlanSet() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd != nullptr) fftw_destroy_plan(fwd);
    if (bwd != nullptr) fftw_destroy_plan(bwd);
    fftw_free(in);
    fftw_free(out);
  }
};

PlanSet& plans_for(int n) {
  thread_local std::map<int, std::unique_ptr<PlanSet>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanSet>(n);
  return *slot;
}

}  // namespace

cplx phi1(cplx z) {
  // Below the crossover a short Taylor polynomial is exact to machine
  // precision; above it the cancellation-free complex expm1 takes over.
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0)));
  }
  // e^z - 1 assembled from real expm1 so small real parts do not cancel:
  // e^z - 1 = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y for z = x + i y.
  const double x = z.real();
  const double y = z.imag();
  const double em = std::expm1(x);
  const double half = std::sin(0.5 * y);
  const cplx num(em * std::cos(y) - 2.0 * half * half,
                 (em + 1.0) * std::sin(y));
  return num / z;
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

SpectralGrid::SpectralGrid(int n) : n_(n) {
  wavenumbers_.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    wavenumbers_[static_cast<std::size_t>(j)] = (j < n / 2) ? j : j - n;
  }
}

std::size_t SpectralGrid::index_of(int k) const {
  if (k < -n_ / 2 || k > n_ / 2 - 1) {
    throw std::invalid_argument("wavenumber " + std::to_string(k) +
                                " outside [-n/2, n/2-1] for n = " +
                                std::to_string(n_));
  }
  return static_cast<std::size_t>(k >= 0 ? k : k + n_);
}

std::vector<double> SpectralGrid::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  const double h = spacing();
  for (int j = 0; j < n_; ++j) x[static_cast<std::size_t>(j)] = h * j;
  return x;
}

GridPtr make_grid(int n_points) {
  if (n_points < SpectralGrid::min_points ||
      n_points > SpectralGrid::max_points || n_points % 2 != 0) {
    throw std::invalid_argument(
        "grid size must be an even integer in [4, 2^20], got " +
        std::to_string(n_points));
  }
  return GridPtr(new SpectralGrid(n_points));
}

Field::Field(GridPtr grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (!grid_) throw std::invalid_argument("Field requires a grid");
  if (coeffs_.size() != static_cast<std::size_t>(grid_->n_points())) {
    throw std::invalid_argument(
        "coefficient count " + std::to_string(coeffs_.size()) +
        " does not match grid size " + std::to_string(grid_->n_points()));
  }
}

Field Field::zero(GridPtr grid) {
  if (!grid) throw std::invalid_argument("Field requires a grid");
  std::vector<cplx> c(static_cast<std::size_t>(grid->n_points()),
                      cplx(0.0, 0.0));
  return Field(std::move(grid), std::move(c));
}

void require_same_grid(const Field& f, const Field& g, const char* where) {
  if (f.grid()->n_points() != g.grid()->n_points()) {
    throw std::invalid_argument(std::string(where) +
                                ": fields live on different grids (" +
                                std::to_string(f.grid()->n_points()) + " vs " +
                                std::to_string(g.grid()->n_points()) + ")");
  }
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other, "Field::operator+=");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    coeffs_[j] += other.coeffs_[j];
  }
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other, "Field::operator-=");
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    coeffs_[j] -= other.coeffs_[j];
  }
  return *this;
}

Field& Field::operator*=(cplx scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

Field operator+(Field lhs, const Field& rhs) { return lhs += rhs; }
Field operator-(Field lhs, const Field& rhs) { return lhs -= rhs; }
Field operator*(cplx scale, Field f) { return f *= scale; }
Field operator*(Field f, cplx scale) { return f *= scale; }

MultiplierSymbol::MultiplierSymbol(std::function<cplx(int)> symbol)
    : symbol_(std::move(symbol)) {
  if (!symbol_) throw std::invalid_argument("MultiplierSymbol needs a symbol");
}

MultiplierSymbol MultiplierSymbol::free_flow(double t) {
  return MultiplierSymbol([t](int k) {
    const double phase = -t * static_cast<double>(k) * static_cast<double>(k);
    return cplx(std::cos(phase), std::sin(phase));
  });
}

MultiplierSymbol MultiplierSymbol::derivative() {
  return MultiplierSymbol([](int k) { return cplx(0.0, k); });
}

MultiplierSymbol MultiplierSymbol::inverse_derivative() {
  return MultiplierSymbol([](int k) {
    if (k == 0) return cplx(0.0, 0.0);
    return cplx(0.0, -1.0 / static_cast<double>(k));  // 1/(i k)
  });
}

MultiplierSymbol MultiplierSymbol::phi1_dxx(cplx c) {
  return MultiplierSymbol([c](int k) {
    return phi1(-c * static_cast<double>(k) * static_cast<double>(k));
  });
}

MultiplierSymbol MultiplierSymbol::sobolev_weight(double s) {
  return MultiplierSymbol([s](int k) {
    return cplx(std::pow(1.0 + static_cast<double>(k) * k, 0.5 * s), 0.0);
  });
}

std::vector<cplx> to_physical(const Field& f) {
  const int n = f.grid()->n_points();
  PlanSet& p = plans_for(n);
  auto in = f.coeffs();
  for (int j = 0; j < n; ++j) {
    p.in[j][0] = in[static_cast<std::size_t>(j)].real();
    p.in[j][1] = in[static_cast<std::size_t>(j)].imag();
  }
  fftw_execute(p.bwd);
  std::vector<cplx> samples(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    samples[static_cast<std::size_t>(j)] = cplx(p.out[j][0], p.out[j][1]);
  }
  return samples;
}

Field to_spectral(std::span<const cplx> samples, const GridPtr& grid) {
  if (!grid) throw std::invalid_argument("to_spectral requires a grid");
  const int n = grid->n_points();
  if (samples.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(
        "sample count " + std::to_string(samples.size()) +
        " does not match grid size " + std::to_string(n));
  }
  PlanSet& p = plans_for(n);
  for (int j = 0; j < n; ++j) {
    p.in[j][0] = samples[static_cast<std::size_t>(j)].real();
    p.in[j][1] = samples[static_cast<std::size_t>(j)].imag();
  }
  fftw_execute(p.fwd);
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<cplx> coeffs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    coeffs[static_cast<std::size_t>(j)] =
        scale * cplx(p.out[j][0], p.out[j][1]);
  }
  return Field(grid, std::move(coeffs));
}

Field apply_multiplier(const Field& f, const MultiplierSymbol& m) {
  std::vector<cplx> coeffs(f.coeffs().begin(), f.coeffs().end());
  auto ks = f.grid()->wavenumbers();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    coeffs[j] *= m(ks[j]);
  }
  return Field(f.grid(), std::move(coeffs));
}

Field inv_derivative(const Field& f) {
  return apply_multiplier(f, MultiplierSymbol::inverse_derivative());
}

namespace {

// Zero-pad onto a grid with twice the points; every mode keeps its literal
// wavenumber (the Nyquist mode -n/2 of the small grid becomes an interior
// mode of the big one).
Field embed(const Field& f, const GridPtr& big) {
  Field out = Field::zero(big);
  auto ks = f.grid()->wavenumbers();
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (std::size_t j = 0; j < src.size(); ++j) {
    dst[big->index_of(ks[j])] = src[j];
  }
  return out;
}

// Keep only the modes representable on the small grid.
Field truncate(const Field& f, const GridPtr& small) {
  Field out = Field::zero(small);
  auto ks = small->wavenumbers();
  auto dst = out.coeffs();
  for (std::size_t j = 0; j < dst.size(); ++j) {
    dst[j] = f.coeffs()[f.grid()->index_of(ks[j])];
  }
  return out;
}

Field collocation_product(const Field& f, const Field& g) {
  auto a = to_physical(f);
  auto b = to_physical(g);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  return to_spectral(a, f.grid());
}

}  // namespace

Field pointwise_product(const Field& f, const Field& g, bool dealias) {
  require_same_grid(f, g, "pointwise_product");
  if (!dealias) return collocation_product(f, g);
  const int n = f.grid()->n_points();
  if (2 * n > SpectralGrid::max_points) {
    throw std::invalid_argument(
        "dealiased product would need a grid larger than 2^20 points");
  }
  GridPtr big = make_grid(2 * n);
  Field prod = collocation_product(embed(f, big), embed(g, big));
  return truncate(prod, f.grid());
}

Field conj_field(const Field& f) {
  const int n = f.grid()->n_points();
  std::vector<cplx> coeffs(static_cast<std::size_t>(n));
  auto src = f.coeffs();
  // conj(f) has coefficients conj(c_{-k}); in FFT layout index j pairs with
  // n - j, index 0 with itself and the Nyquist slot n/2 with itself.
  coeffs[0] = std::conj(src[0]);
  for (int j = 1; j < n; ++j) {
    coeffs[static_cast<std::size_t>(j)] =
        std::conj(src[static_cast<std::size_t>(n - j)]);
  }
  return Field(f.grid(), std::move(coeffs));
}

cplx mean_mode(const Field& f) { return f.coeffs()[0]; }

Field project_out_mean(const Field& f) {
  std::vector<cplx> coeffs(f.coeffs().begin(), f.coeffs().end());
  coeffs[0] = cplx(0.0, 0.0);
  return Field(f.grid(), std::move(coeffs));
}

double sobolev_norm(const Field& f, double s) {
  auto ks = f.grid()->wavenumbers();
  auto c = f.coeffs();
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = static_cast<double>(ks[j]);
    acc += std::pow(1.0 + k * k, s) * std::norm(c[j]);
  }
  return std::sqrt(two_pi * acc);
}

cplx inner_product(const Field& f, const Field& g) {
  require_same_grid(f, g, "inner_product");
  cplx acc(0.0, 0.0);
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t j = 0; j < a.size(); ++j) {
    acc += a[j] * std::conj(b[j]);
  }
  return two_pi * acc;
}

}  // namespace dnls
