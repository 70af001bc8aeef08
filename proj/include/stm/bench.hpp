#ifndef STM_BENCH_HPP
#define STM_BENCH_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "stm/convert.hpp"
#include "stm/distance.hpp"
#include "stm/generate.hpp"
#include "stm/matmul.hpp"

namespace stm::bench {

struct Record {
  std::string stage;
  std::size_t n = 0;
  std::size_t pairs = 0;  // transversal pairs of the generated model
  std::size_t size = 0;   // stage output size (bicliques, DAG size, model size, ...)
  double seconds = 0;
  std::uint64_t ops = 0;  // operation counter where the stage has one
};

inline void write_records(std::ostream& out, const std::vector<Record>& records) {
  for (const Record& r : records) {
    out << "stage=" << r.stage << " n=" << r.n << " pairs=" << r.pairs << " size=" << r.size << " seconds=" << r.seconds
        << " ops=" << r.ops << '\n';
  }
}

template <class F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Pipeline stages on one random sparse model (about `density` * n pairs) per
// scale n = 2^min_exp .. 2^max_exp.
inline std::vector<Record> run_pipeline(int min_exp, int max_exp, std::uint64_t seed, double density = 1.0) {
  std::vector<Record> out;
  gen::Rng rng(seed);
  for (int e = min_exp; e <= max_exp; ++e) {
    const std::size_t n = std::size_t{1} << e;
    gen::StmSpec spec;
    spec.n = n;
    spec.pairs = static_cast<std::size_t>(density * static_cast<double>(n));
    SignedTreeModel stm;
    const double t_gen = timed([&] { stm = gen::random_stm(spec, rng); });
    const std::size_t p = stm.pair_count();
    out.push_back({"generate", n, p, p, t_gen, 0});

    IntervalBicliquePartition ibp;
    out.push_back({"stm_to_ibp", n, p, 0, timed([&] { ibp = stm_to_ibp(stm); }), 0});
    out.back().size = ibp.bicliques.size();

    DagCompression dc;
    out.push_back({"ibp_to_dag", n, p, 0, timed([&] { dc = ibp_to_dag(ibp); }), 0});
    out.back().size = dc.size();

    DistanceModel dm;
    out.push_back({"distance_model", n, p, 0, timed([&] { dm = DistanceModel(dc); }), 0});
    out.back().size = dm.size();

    OpCounter ops;
    out.push_back({"sssp", n, p, dm.size(), timed([&] { sssp(dm, 1, &ops); }), ops.total()});

    std::vector<std::int64_t> x(n, 1);
    std::uint64_t group_ops = 0;
    out.push_back({"ibp_matvec", n, p, ibp.bicliques.size(), timed([&] { ibp_matvec(ibp, x, &group_ops); }), group_ops});
  }
  return out;
}

struct ScalingFit {
  double constant = 0;      // C in ops ~ C * p * log2 n
  double max_residual = 0;  // max relative deviation from the fit
};

// Least squares through the origin of ops against p * log2 n.
inline ScalingFit fit_p_log_n(const std::vector<Record>& records, const std::string& stage) {
  double sxy = 0, sxx = 0;
  std::vector<std::pair<double, double>> points;
  for (const Record& r : records) {
    if (r.stage != stage || r.n < 2) continue;
    const double x = static_cast<double>(r.pairs) * std::log2(static_cast<double>(r.n));
    const double y = static_cast<double>(r.ops);
    points.emplace_back(x, y);
    sxy += x * y;
    sxx += x * x;
  }
  ScalingFit fit;
  if (sxx == 0) return fit;
  fit.constant = sxy / sxx;
  for (auto [x, y] : points) fit.max_residual = std::max(fit.max_residual, std::abs(y - fit.constant * x) / (fit.constant * x));
  return fit;
}

}  // namespace stm::bench

#endif  // STM_BENCH_HPP
