// Prints the distortion bounds for the K-letter example at a few (K, L),
// then an entropy trace for a lazy walk on Z_5.

#include <cstdio>

#include "infomono/infomono.hpp"

using namespace infomono;

int main() {
  std::printf("%4s %4s %8s %10s %10s %10s %10s\n", "K", "L", "theta", "d(s=0)", "classical", "d(limit)", "best");
  for (auto [k, l] : {std::pair{3, 2}, {5, 4}, {7, 4}, {4, 2}}) {
    const ExampleConfig cfg(k, l);
    const BoundReport r = optimize_s(cfg);
    std::printf("%4d %4d %8.4f %10.6f %10.6f %10.6f %10.6f\n", k, l, cfg.theta(), r.d_at_zero, r.d_classical,
                r.d_at_limit, r.best_d);
  }

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(5, 5);
  for (int x = 0; x < 5; ++x) {
    p(x, x) = 0.5;
    p(x, (x + 1) % 5) += 0.25;
    p(x, (x + 4) % 5) += 0.25;
  }
  const StochasticMatrix chain(p);
  TraceInits inits;
  inits.p0 = Distribution::delta(5, 0);
  const TimeSeries h = trace_functional(FunctionalKind::entropy, chain, std::nullopt, inits, 10);
  std::printf("\nH(X_t), lazy walk on Z_5 from a point mass (ln 5 = %.6f)\n", std::log(5.0));
  for (const auto& pt : h) std::printf("  t=%2.0f  %.6f\n", pt.t, pt.value);
  const auto v = verdict(h, Direction::non_decreasing);
  std::printf("non-decreasing: %s\n", v.holds ? "yes" : "no");
}
