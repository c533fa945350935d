#include "doctest.h"

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "dnls/spectral.hpp"
#include "oracles.hpp"

using namespace dnls;
using testutil::max_coeff_diff;

TEST_CASE("grid construction and layout") {
  GridPtr g = make_grid(4);
  CHECK(g->n_points() == 4);
  CHECK(g->spacing() == doctest::Approx(two_pi / 4.0).epsilon(1e-15));

  // Wavenumbers cover [-n/2, n/2-1] exactly once, stored in FFT order.
  std::set<int> ks(g->wavenumbers().begin(), g->wavenumbers().end());
  CHECK(ks == std::set<int>{-2, -1, 0, 1});
  CHECK(g->wavenumber(0) == 0);
  CHECK(g->wavenumber(1) == 1);
  CHECK(g->wavenumber(2) == -2);
  CHECK(g->wavenumber(3) == -1);

  for (int k : {-2, -1, 0, 1}) {
    CHECK(g->wavenumber(g->index_of(k)) == k);
  }
  CHECK_THROWS_AS((void)g->index_of(2), std::invalid_argument);
  CHECK_THROWS_AS((void)g->index_of(-3), std::invalid_argument);

  GridPtr g2048 = make_grid(2048);
  CHECK(g2048->spacing() == doctest::Approx(0.0030679615757712823).epsilon(1e-15));

  auto nodes = g->nodes();
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0] == 0.0);
  CHECK(nodes[3] == doctest::Approx(3.0 * two_pi / 4.0).epsilon(1e-15));
}

TEST_CASE("grid size validation") {
  CHECK_THROWS_AS((void)make_grid(3), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(2), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(-8), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid((1 << 20) + 2), std::invalid_argument);
  CHECK_NOTHROW((void)make_grid(1 << 20));
}

TEST_CASE("transform convention: c_k = (1/n) sum_j f(x_j) e^{-i k x_j}") {
  GridPtr g = make_grid(16);
  auto nodes = g->nodes();

  // Samples of e^{i 3 x} produce exactly one unit coefficient at k = 3.
  std::vector<cplx> samples(16);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    samples[j] = cplx(std::cos(3.0 * nodes[j]), std::sin(3.0 * nodes[j]));
  }
  Field f = to_spectral(samples, g);
  for (int k = -8; k <= 7; ++k) {
    const cplx expect = (k == 3) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    CHECK(std::abs(f.coeff(k) - expect) <= 1e-13);
  }

  // A constant maps to the k = 0 slot and mean_mode reads it back.
  std::vector<cplx> flat(16, cplx(0.25, -1.5));
  Field c = to_spectral(flat, g);
  CHECK(std::abs(mean_mode(c) - cplx(0.25, -1.5)) <= 1e-14);
  CHECK(std::abs(c.coeff(5)) <= 1e-15);

  // And back: a single coefficient renders as a e^{i k x} at the nodes.
  Field one = testutil::plane_wave(g, cplx(0.5, 0.5), -4);
  auto back = to_physical(one);
  for (std::size_t j = 0; j < back.size(); ++j) {
    const cplx expect =
        cplx(0.5, 0.5) * cplx(std::cos(-4.0 * nodes[j]), std::sin(-4.0 * nodes[j]));
    CHECK(std::abs(back[j] - expect) <= 1e-13);
  }
}

TEST_CASE("round trip physical <-> spectral") {
  GridPtr g = make_grid(64);
  Field f = testutil::random_full(g, 11, 0.0);
  Field f2 = to_spectral(to_physical(f), g);
  CHECK(max_coeff_diff(f, f2) <= 1e-13);

  std::vector<cplx> wrong(63);
  CHECK_THROWS_AS((void)to_spectral(wrong, g), std::invalid_argument);
}

TEST_CASE("multipliers: derivative, free flow, sobolev weight") {
  GridPtr g = make_grid(32);
  Field f = testutil::random_full(g, 5, 0.0);

  // d/dx acts as i k per mode.
  Field fx = apply_multiplier(f, MultiplierSymbol::derivative());
  for (int k = -16; k <= 15; ++k) {
    CHECK(std::abs(fx.coeff(k) - cplx(0.0, k) * f.coeff(k)) <= 1e-14);
  }

  // Free flow multiplies mode k by e^{-i t k^2} and composes additively.
  const double t = 0.37;
  Field ft = apply_multiplier(f, MultiplierSymbol::free_flow(t));
  for (int k : {-7, 0, 3}) {
    const cplx phase = std::polar(1.0, -t * static_cast<double>(k) * k);
    CHECK(std::abs(ft.coeff(k) - phase * f.coeff(k)) <= 1e-14);
  }
  Field comp = apply_multiplier(
      apply_multiplier(f, MultiplierSymbol::free_flow(0.2)),
      MultiplierSymbol::free_flow(-0.7));
  Field direct = apply_multiplier(f, MultiplierSymbol::free_flow(-0.5));
  // Phases reach t k^2 ~ 180 at the band edge, so allow a few ulp of
  // large-angle trig roundoff.
  CHECK(max_coeff_diff(comp, direct) <= 1e-13);

  // <dx>^s weight is real and even in k.
  MultiplierSymbol w = MultiplierSymbol::sobolev_weight(1.5);
  CHECK(w(3) == w(-3));
  CHECK(w(2).real() == doctest::Approx(std::pow(5.0, 0.75)).epsilon(1e-15));
  CHECK(w(0) == cplx(1.0, 0.0));
}

TEST_CASE("inverse derivative is a right inverse away from the mean") {
  GridPtr g = make_grid(64);
  Field f = testutil::random_full(g, 21, 0.0);
  Field back = inv_derivative(apply_multiplier(f, MultiplierSymbol::derivative()));
  CHECK(max_coeff_diff(back, project_out_mean(f)) <= 1e-14);
  // The mean has no antiderivative on the circle: it is dropped.
  CHECK(mean_mode(inv_derivative(f)) == cplx(0.0, 0.0));
}

TEST_CASE("phi1 and sinc") {
  CHECK(phi1(cplx(0.0, 0.0)) == cplx(1.0, 0.0));
  // phi1(1) = e - 1, phi1(i) = sin(1) + i (1 - cos 1).
  CHECK(std::abs(phi1(cplx(1.0, 0.0)) - cplx(1.718281828459045, 0.0)) <= 1e-15);
  CHECK(std::abs(phi1(cplx(0.0, 1.0)) -
                 cplx(0.8414709848078965, 0.45969769413186023)) <= 1e-15);

  // Both branches agree with a high-order Taylor reference across the
  // crossover.  (The naive quotient (e^z - 1)/z is no yardstick here: its
  // cancellation error ~ eps/|z| is exactly what phi1 avoids.)
  for (double mag : {1e-6, 5e-5, 2e-4, 1e-3}) {
    for (double ang : {0.3, 1.9, -2.5}) {
      const cplx z = std::polar(mag, ang);
      cplx reference = cplx(0.0, 0.0);
      double factorial = 6227020800.0;  // (m+1)! starting at m = 12
      for (int m = 12; m >= 0; --m) {
        reference = 1.0 / factorial + z * reference;
        factorial /= static_cast<double>(m + 1);
      }
      CHECK(std::abs(phi1(z) - reference) <= 1e-13 * std::abs(reference));
    }
  }

  // phi1(ix) + phi1(-ix) = 2 sin(x)/x ties the two helpers together.
  for (double x : {0.0, 1e-7, 0.5, 3.0, -7.0}) {
    const cplx sum = phi1(cplx(0.0, x)) + phi1(cplx(0.0, -x));
    CHECK(std::abs(sum - cplx(2.0 * sinc(x), 0.0)) <= 1e-14);
  }
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(dnls::two_pi / 2.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("phi1_dxx symbol") {
  // phi1(c dxx) acts as phi1(-c k^2); at k = 0 it is the identity.
  MultiplierSymbol m = MultiplierSymbol::phi1_dxx(cplx(0.0, -0.5));
  CHECK(m(0) == cplx(1.0, 0.0));
  const cplx expect = phi1(cplx(0.0, 0.5) * 9.0);
  CHECK(std::abs(m(3) - expect) <= 1e-15);
}

TEST_CASE("pointwise products and the aliasing boundary") {
  GridPtr g = make_grid(16);

  // In-band product of plane waves lands on the sum mode for both flags.
  Field a = testutil::plane_wave(g, cplx(2.0, 0.0), 3);
  Field b = testutil::plane_wave(g, cplx(0.0, 1.0), -5);
  for (bool dealias : {false, true}) {
    Field p = pointwise_product(a, b, dealias);
    CHECK(std::abs(p.coeff(-2) - cplx(0.0, 2.0)) <= 1e-13);
    CHECK(testutil::max_abs_coeff(project_out_mean(p) -
                                  testutil::plane_wave(g, p.coeff(-2), -2)) <=
          1e-13);
  }

  // (e^{i 7 x})^2 has true frequency 14, outside the band of n = 16. The
  // collocation product wraps it to 14 - 16 = -2; the dealiased product
  // truncates it away entirely.
  Field e7 = testutil::plane_wave(g, cplx(1.0, 0.0), 7);
  Field aliased = pointwise_product(e7, e7, false);
  CHECK(std::abs(aliased.coeff(-2) - cplx(1.0, 0.0)) <= 1e-13);
  Field clean = pointwise_product(e7, e7, true);
  CHECK(testutil::max_abs_coeff(clean) <= 1e-13);

  GridPtr other = make_grid(32);
  Field c = Field::zero(other);
  CHECK_THROWS_AS((void)pointwise_product(a, c), std::invalid_argument);
}

TEST_CASE("conjugation in coefficient space") {
  GridPtr g = make_grid(32);
  Field f = testutil::random_full(g, 3, 0.0);
  f.set_coeff(-16, cplx(0.4, -0.7));  // exercise the Nyquist slot too

  Field fc = conj_field(f);
  // Pointwise: samples of conj(f) are the conjugated samples of f.
  auto s = to_physical(f);
  auto sc = to_physical(fc);
  for (std::size_t j = 0; j < s.size(); ++j) {
    CHECK(std::abs(sc[j] - std::conj(s[j])) <= 1e-13);
  }
  // Coefficient rule conj(c_{-k}) with the Nyquist slot mapping to itself.
  CHECK(std::abs(fc.coeff(5) - std::conj(f.coeff(-5))) <= 1e-15);
  CHECK(std::abs(fc.coeff(-16) - std::conj(f.coeff(-16))) <= 1e-15);
  // Involution.
  CHECK(max_coeff_diff(conj_field(fc), f) <= 1e-15);
}

TEST_CASE("sobolev norm and inner product") {
  GridPtr g = make_grid(64);

  // Single mode 0.7 e^{i 3 x}: ||.||_{H^1} = 0.7 sqrt(2 pi * 10) and
  // ||.||_{H^1/2} = 0.7 sqrt(2 pi) 10^{1/4} (frozen values).
  Field pw = testutil::plane_wave(g, cplx(0.7, 0.0), 3);
  CHECK(sobolev_norm(pw, 1.0) == doctest::Approx(5.548658216648415).epsilon(1e-13));
  CHECK(sobolev_norm(pw, 0.5) == doctest::Approx(3.1202398145783885).epsilon(1e-13));
  CHECK(sobolev_norm(pw, 0.0) ==
        doctest::Approx(0.7 * std::sqrt(two_pi)).epsilon(1e-13));

  // Parseval: the L^2 norm matches trapezoidal quadrature of |f|^2.
  Field f = testutil::random_full(g, 17, 0.5);
  auto samples = to_physical(f);
  double quad = 0.0;
  for (const cplx& v : samples) quad += std::norm(v);
  quad = two_pi * quad / static_cast<double>(samples.size());
  CHECK(sobolev_norm(f, 0.0) ==
        doctest::Approx(std::sqrt(quad)).epsilon(1e-12));

  // Inner product: conjugate symmetry and consistency with the norm.
  Field h = testutil::random_full(g, 18, 0.5);
  const cplx fg = inner_product(f, h);
  const cplx gf = inner_product(h, f);
  CHECK(std::abs(fg - std::conj(gf)) <= 1e-12);
  CHECK(std::abs(inner_product(f, f).real() -
                 sobolev_norm(f, 0.0) * sobolev_norm(f, 0.0)) <= 1e-12);
  CHECK(std::abs(inner_product(f, f).imag()) <= 1e-14);

  GridPtr other = make_grid(32);
  CHECK_THROWS_AS((void)inner_product(f, Field::zero(other)),
                  std::invalid_argument);
}

TEST_CASE("field arithmetic and grid guards") {
  GridPtr g = make_grid(8);
  Field a = testutil::random_band_limited(g, 3, 1);
  Field b = testutil::random_band_limited(g, 3, 2);

  Field sum = a + b;
  Field diff = sum - b;
  CHECK(max_coeff_diff(diff, a) <= 1e-15);

  Field scaled = cplx(0.0, 2.0) * a;
  CHECK(std::abs(scaled.coeff(1) - cplx(0.0, 2.0) * a.coeff(1)) <= 1e-15);

  GridPtr other = make_grid(16);
  Field c = Field::zero(other);
  CHECK_THROWS_AS(a += c, std::invalid_argument);

  std::vector<cplx> short_vec(4);
  CHECK_THROWS_AS(Field(g, short_vec), std::invalid_argument);
}
