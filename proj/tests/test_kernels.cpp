#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conical/kernels.hpp"
#include "conical/legendre.hpp"

using namespace conical;
using namespace conical::kernels;

namespace {

struct ImplGuard {
  ~ImplGuard() { force_impl(Impl::Auto); }
};

std::vector<double> random_points(std::mt19937& rng, size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> ud(lo, hi);
  std::vector<double> x(n);
  for (auto& v : x) v = ud(rng);
  return x;
}

}  // namespace

TEST_CASE("scalar and avx2 recurrence kernels agree bit for bit") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; skipping the comparison");
    return;
  }
  ImplGuard guard;
  std::mt19937 rng(41);
  for (auto [ell, m] : {std::pair{5, 0}, {42, 17}, {90, 27}, {200, 120}, {60, 60}}) {
    auto x = random_points(rng, 1003, -0.999, 0.999);  // odd size exercises the tail
    std::vector<double> mant_s(x.size()), mant_v(x.size());
    std::vector<int64_t> e_s(x.size()), e_v(x.size());
    force_impl(Impl::Scalar);
    plm_scaled_batch(ell, m, x.data(), x.size(), mant_s.data(), e_s.data());
    force_impl(Impl::Avx2);
    plm_scaled_batch(ell, m, x.data(), x.size(), mant_v.data(), e_v.data());
    for (size_t i = 0; i < x.size(); ++i) {
      CHECK(mant_s[i] == mant_v[i]);
      CHECK(e_s[i] == e_v[i]);
    }
  }
}

TEST_CASE("scalar and avx2 wkb kernels agree bit for bit") {
  if (!avx2_available()) {
    MESSAGE("AVX2 not available; skipping the comparison");
    return;
  }
  ImplGuard guard;
  std::mt19937 rng(43);
  legendre::WkbFrame fr = legendre::make_frame(legendre::LegendreSpec(90, 27));
  auto x = random_points(rng, 1001, -fr.eta * 0.9999, fr.eta * 0.9999);
  std::vector<double> amp_s(x.size()), amp_v(x.size()), b_s(x.size()), b_v(x.size());
  force_impl(Impl::Scalar);
  wkb_amp_bound_batch(fr.h, fr.eta, x.data(), x.size(), amp_s.data(), b_s.data());
  force_impl(Impl::Avx2);
  wkb_amp_bound_batch(fr.h, fr.eta, x.data(), x.size(), amp_v.data(), b_v.data());
  for (size_t i = 0; i < x.size(); ++i) {
    CHECK(amp_s[i] == amp_v[i]);
    CHECK(b_s[i] == b_v[i]);
  }
}

TEST_CASE("rescaled recurrence handles magnitudes far outside double range") {
  Scaled s = plm_scaled(200, 120, 0.42);
  CHECK(std::isfinite(s.mant));
  CHECK(s.mant != 0.0);
  // cross-check the combined value against high-precision evaluation
  set_bigfloat_bits(256);
  BigFloat big = legendre::eval_P_generic<BigFloat>(200, 120, BigFloat(0.42));
  BigFloat ref = BigFloat(s.mant) * pow(BigFloat(2), (int)s.e2);
  CHECK(abs(ref / big - 1).convert_to<double>() < 1e-11);
}

TEST_CASE("pbar through the dispatcher matches the scalar path") {
  ImplGuard guard;
  std::mt19937 rng(47);
  auto x = random_points(rng, 257, -0.9, 0.9);
  std::vector<double> out_auto(x.size()), out_scalar(x.size());
  force_impl(Impl::Auto);
  pbar_batch(60, 11, x.data(), x.size(), out_auto.data());
  force_impl(Impl::Scalar);
  pbar_batch(60, 11, x.data(), x.size(), out_scalar.data());
  for (size_t i = 0; i < x.size(); ++i) CHECK(out_auto[i] == out_scalar[i]);
}

TEST_CASE("forcing avx2 on unsupported hardware throws") {
  if (avx2_available()) {
    CHECK(impl_name() != nullptr);
    return;
  }
  CHECK_THROWS_AS(force_impl(Impl::Avx2), Error);
}
