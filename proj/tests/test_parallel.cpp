#include <doctest.h>

#include "seqsmooth/density.hpp"
#include "seqsmooth/locpoly.hpp"
#include "seqsmooth/rng.hpp"

using namespace seqsmooth;

// The OpenMP grid sweeps must reproduce the serial reference bit for
// bit: grid points share no mutable state and each point's arithmetic
// is identical on both paths.

TEST_CASE("kde: OpenMP sweep equals the serial reference exactly") {
  const EvaluationGrid grid(0.0, 1.0, 1001);
  const BandwidthSchedule sched(0.3, 0.2);
  for (const char* name : {"gaussian", "epanechnikov"}) {
    SequentialKde serial(grid, kernel_by_name(name), sched, ExecPolicy::Serial);
    SequentialKde parallel(grid, kernel_by_name(name), sched,
                           ExecPolicy::OpenMP);
    Rng rng(301);
    for (int t = 0; t < 400; ++t) {
      const double x = rng.uniform01();
      serial.observe(x);
      parallel.observe(x);
    }
    for (int i = 0; i < grid.count(); ++i)
      CHECK(serial.value_at(i) == parallel.value_at(i));
  }
}

TEST_CASE("locpoly: OpenMP sweep equals the serial reference exactly") {
  const EvaluationGrid grid(0.0, 1.0, 501);
  auto serial = SequentialLocPoly::with_auto_schedule(
      grid, gaussian_kernel(), 0.5, 2, 1e-9, ExecPolicy::Serial);
  auto parallel = SequentialLocPoly::with_auto_schedule(
      grid, gaussian_kernel(), 0.5, 2, 1e-9, ExecPolicy::OpenMP);
  Rng rng(303);
  for (int t = 0; t < 300; ++t) {
    const double x = rng.uniform01();
    const double y = rng.normal();
    serial.observe(x, y);
    parallel.observe(x, y);
  }
  for (int i = 0; i < grid.count(); ++i)
    CHECK(serial.predict_at(i) == parallel.predict_at(i));
}

TEST_CASE("nw: OpenMP sweep equals the serial reference exactly") {
  const EvaluationGrid grid(0.0, 1.0, 501);
  const BandwidthSchedule sched(0.4, 0.25);
  SequentialNw serial(grid, epanechnikov_kernel(), sched, ExecPolicy::Serial);
  SequentialNw parallel(grid, epanechnikov_kernel(), sched,
                        ExecPolicy::OpenMP);
  Rng rng(305);
  for (int t = 0; t < 500; ++t) {
    const double x = rng.uniform01();
    const double y = rng.normal();
    serial.observe(x, y);
    parallel.observe(x, y);
  }
  for (int i = 0; i < grid.count(); ++i) {
    CHECK(serial.num_at(i) == parallel.num_at(i));
    CHECK(serial.den_at(i) == parallel.den_at(i));
  }
}

TEST_CASE("exec policy can be switched mid-stream") {
  const EvaluationGrid grid(0.0, 1.0, 301);
  SequentialKde mixed(grid, gaussian_kernel(), BandwidthSchedule(0.3, 0.2),
                      ExecPolicy::Serial);
  SequentialKde serial(grid, gaussian_kernel(), BandwidthSchedule(0.3, 0.2),
                       ExecPolicy::Serial);
  Rng rng(307);
  for (int t = 0; t < 200; ++t) {
    if (t == 100) mixed.set_exec_policy(ExecPolicy::OpenMP);
    const double x = rng.uniform01();
    mixed.observe(x);
    serial.observe(x);
  }
  for (int i = 0; i < grid.count(); ++i)
    CHECK(mixed.value_at(i) == serial.value_at(i));
}
