#include <benchmark/benchmark.h>

#include "spherebot/so3.hpp"

namespace {

using spherebot::Mat3;
using spherebot::Vec3;

void BM_ExpSo3(benchmark::State& state) {
  Vec3 w(0.3, -0.2, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherebot::exp_so3(w));
    w.x() += 1e-9;
  }
}
BENCHMARK(BM_ExpSo3);

void BM_ProjectSo3(benchmark::State& state) {
  const Mat3 r = spherebot::exp_so3(Vec3(0.3, -0.2, 0.7)).matrix();
  Mat3 noisy = r;
  noisy(0, 1) += 1e-10;
  noisy(2, 0) -= 3e-11;
  for (auto _ : state) benchmark::DoNotOptimize(spherebot::project_so3(noisy));
}
BENCHMARK(BM_ProjectSo3);

void BM_Connection(benchmark::State& state) {
  const spherebot::Inertia j(0.3, 0.4, 0.5);
  const Vec3 v(1.0, 0.5, -0.2);
  Vec3 w(0.1, 0.2, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherebot::connection(j, v, w));
    w.z() += 1e-12;
  }
}
BENCHMARK(BM_Connection);

}  // namespace
