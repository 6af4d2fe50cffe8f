// Timing harness for the sampling scans: the serial reference path
// against the OpenMP kernels, on corpus fields.  Also asserts the two
// paths agree bit for bit, since the benchmark is the one place both
// run back to back on large inputs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "gflat/corpus.hpp"
#include "gflat/rigidity.hpp"

using namespace gflat;

namespace {

double seconds_of(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count();
}

struct Row {
  std::string label;
  double serial_s;
  double parallel_s;
  bool identical;
};

}  // namespace

int main(int argc, char** argv) {
  std::int64_t samples = 1 << 18;
  if (argc > 1) samples = std::atoll(argv[1]);
  const std::uint64_t seed = 7;
  Tolerances tol;

  std::vector<Row> rows;
  auto bench_sphere = [&](const ScalarField& field, Quantity q, double radius) {
    SphereSup serial_result{}, parallel_result{};
    const Eigen::VectorXd center = Eigen::VectorXd::Zero(field.dim());
    const double ts = seconds_of([&] {
      serial_result = sphere_sup(field, q, center, radius, samples, seed, tol, Exec::serial);
    });
    const double tp = seconds_of([&] {
      parallel_result =
          sphere_sup(field, q, center, radius, samples, seed, tol, Exec::parallel);
    });
    const bool same = serial_result.sup == parallel_result.sup &&
                      serial_result.argmax == parallel_result.argmax &&
                      serial_result.skipped == parallel_result.skipped;
    rows.push_back({field.name() + " sphere_sup(" + quantity_name(q) + ")", ts, tp, same});
  };
  auto bench_region = [&](const ScalarField& field, double half_width) {
    DevelopabilityScan serial_result{}, parallel_result{};
    const Box region = Box::cube(field.dim(), half_width);
    const double ts = seconds_of([&] {
      serial_result = developability_scan(field, region, samples, seed, tol, Exec::serial);
    });
    const double tp = seconds_of([&] {
      parallel_result = developability_scan(field, region, samples, seed, tol, Exec::parallel);
    });
    const bool same = serial_result.max_abs_det == parallel_result.max_abs_det &&
                      serial_result.min_eigenvalue == parallel_result.min_eigenvalue &&
                      serial_result.det_witness == parallel_result.det_witness;
    rows.push_back({field.name() + " developability_scan", ts, tp, same});
  };

  ScalarField ex = corpus::example11(0.5, 1.0, 2);
  ScalarField cone3 = corpus::cone(0.7, 3);
  Eigen::VectorXd axis(3);
  axis << 0.6, 0.0, 0.8;
  ScalarField soft = corpus::softplus_cylinder(0.5, axis, 0.0, Eigen::VectorXd::Zero(3), 0.0);

  bench_sphere(ex, Quantity::mean_minkowski_tilde, 100.0);
  bench_sphere(cone3, Quantity::laplacian, 50.0);
  bench_sphere(soft, Quantity::mean_euclidean, 30.0);
  bench_region(ex, 50.0);
  bench_region(soft, 20.0);

  std::printf("threads available: %d, samples per scan: %lld\n", hardware_threads(),
              static_cast<long long>(samples));
  std::printf("%-55s %12s %12s %9s %6s\n", "scan", "serial [s]", "openmp [s]", "speedup",
              "match");
  bool all_match = true;
  for (const auto& r : rows) {
    std::printf("%-55s %12.4f %12.4f %8.2fx %6s\n", r.label.c_str(), r.serial_s, r.parallel_s,
                r.serial_s / (r.parallel_s > 0.0 ? r.parallel_s : 1e-9),
                r.identical ? "yes" : "NO");
    all_match = all_match && r.identical;
  }
  if (!all_match) {
    std::printf("serial and parallel results diverged\n");
    return 1;
  }
  return 0;
}
