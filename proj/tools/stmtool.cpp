// Command-line front end for the signed tree model library.
//
// Exit status: 0 success, 1 validation failure, 2 usage, I/O or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "stm/stm.hpp"

namespace {

using namespace stm;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Reader>
auto read_file(const std::string& path, Reader read) {
  if (path == "-") return read(std::cin);
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open '" + path + "'");
  return read(in);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw IoFailure("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string normalize_arrow(std::string s) {
  const std::string arrow = "\xE2\x86\x92";  // U+2192
  for (auto pos = s.find(arrow); pos != std::string::npos; pos = s.find(arrow)) s.replace(pos, arrow.size(), "->");
  return s;
}

SignedTreeModel load_stm(const std::string& path) {
  return read_file(path, [](std::istream& in) { return io::read_stm(in); });
}

// Distance model from a model, partition or DAG file.
DistanceModel load_distance_model(const std::string& path, const std::string& format) {
  if (format == "stm") return DistanceModel(ibp_to_dag(stm_to_ibp(load_stm(path))));
  if (format == "ibp") return DistanceModel(ibp_to_dag(read_file(path, io::read_ibp)));
  if (format == "dag") return DistanceModel(read_file(path, io::read_dag));
  throw CLI::ValidationError("--format", "expected stm, ibp or dag");
}

struct Options {
  std::string out;
  std::uint64_t seed = 1;
  std::string format = "stm";
};

// ---- validate

struct ValidateArgs {
  std::string kind;
  std::string file;
  std::string against;
  std::size_t vertices = 0;
};

int run_validate(const ValidateArgs& a, Options& opt) {
  Output out(opt.out);
  std::optional<Graph> expected;
  if (!a.against.empty()) expected = read_file(a.against, io::read_graph);
  auto mismatch = [&](const Graph& got) {
    if (expected && !(got == *expected)) {
      out.stream() << "mismatch: represented graph differs from " << a.against << '\n';
      return true;
    }
    return false;
  };
  if (a.kind == "stm") {
    auto m = load_stm(a.file);
    if (mismatch(decode_bruteforce(m))) return kInvalid;
    out.stream() << "ok stm n=" << m.leaf_count() << " pairs=" << m.pair_count() << '\n';
  } else if (a.kind == "ibp") {
    auto ibp = read_file(a.file, io::read_ibp);
    if (mismatch(ibp_to_graph(ibp))) return kInvalid;
    out.stream() << "ok ibp n=" << ibp.size() << " bicliques=" << ibp.bicliques.size() << '\n';
  } else if (a.kind == "dag") {
    auto dc = read_file(a.file, io::read_dag);
    if (mismatch(decode_dag(dc))) return kInvalid;
    out.stream() << "ok dag nodes=" << dc.node_count << " compressed=" << dc.compressed.size() << '\n';
  } else if (a.kind == "cseq") {
    auto seq = read_file(a.file, io::read_cseq);
    const std::size_t n = a.vertices ? a.vertices : (expected ? expected->size() : 0);
    if (n == 0) throw CLI::ValidationError("validate cseq", "needs --vertices or --against");
    check_construction_sequence(n, seq);
    if (mismatch(construct_graph(n, seq))) return kInvalid;
    out.stream() << "ok cseq length=" << seq.ops.size() << " resolves=" << seq.resolve_count()
                 << " width1=" << radius_r_width(seq, n, 1) << '\n';
  } else if (a.kind == "sdseq") {
    if (!expected) throw CLI::ValidationError("validate sdseq", "needs --against graph");
    auto report = validate_sequence(*expected, read_file(a.file, io::read_sdseq));
    out.stream() << "ok sdseq width=" << report.width << '\n';
  } else {
    throw CLI::ValidationError("validate", "unknown kind '" + a.kind + "'");
  }
  return kOk;
}

// ---- convert

struct ConvertArgs {
  std::string what;
  std::string file;
  std::string graph;
  std::size_t vertices = 0;
};

int run_convert(const ConvertArgs& a, Options& opt) {
  const std::string what = normalize_arrow(a.what);
  Output out(opt.out);
  auto& os = out.stream();
  if (what == "stm->ibp") {
    io::write_ibp(os, stm_to_ibp(load_stm(a.file)));
  } else if (what == "ibp->dag") {
    io::write_dag(os, ibp_to_dag(read_file(a.file, io::read_ibp)));
  } else if (what == "ibp->ptm") {
    io::write_stm(os, ibp_to_positive_model(read_file(a.file, io::read_ibp)));
  } else if (what == "sdseq->stm") {
    if (a.graph.empty()) throw CLI::ValidationError("convert sdseq->stm", "needs --graph");
    io::write_stm(os, sdseq_to_stm(read_file(a.graph, io::read_graph), read_file(a.file, io::read_sdseq)));
  } else if (what == "cseq->stm" || what == "cseq-shorten") {
    if (a.vertices == 0) throw CLI::ValidationError("convert " + what, "needs --vertices");
    auto seq = read_file(a.file, io::read_cseq);
    if (what == "cseq->stm") {
      io::write_stm(os, cseq_to_stm(seq, a.vertices));
    } else {
      io::write_cseq(os, cseq_shorten(seq, a.vertices));
    }
  } else {
    throw CLI::ValidationError("convert", "unknown conversion '" + a.what + "'");
  }
  return kOk;
}

// ---- sdseq

struct SdArgs {
  std::string graph;
  std::string preset = "tww:1,1";
  std::optional<std::int64_t> good, gamma, cap;
  std::optional<double> prob;
  std::string report;
};

int run_sdseq(const SdArgs& a, Options& opt) {
  const Graph g = read_file(a.graph, io::read_graph);
  Output out(opt.out);
  SdOutcome result;
  if (a.preset == "greedy") {
    result = sd_sequence_greedy(g);
  } else {
    const auto colon = a.preset.find(':');
    const auto comma = a.preset.find(',', colon);
    if (colon == std::string::npos || comma == std::string::npos) {
      throw CLI::ValidationError("--preset", "expected tww:f,c or symdiff:beta,c or greedy");
    }
    const std::string name = a.preset.substr(0, colon);
    const double first = std::stod(a.preset.substr(colon + 1, comma - colon - 1));
    const double c = std::stod(a.preset.substr(comma + 1));
    const auto n = static_cast<double>(g.size());
    SdConfig cfg;
    if (name == "tww") {
      cfg = preset_twinwidth(static_cast<std::int64_t>(first), c, n, opt.seed);
    } else if (name == "symdiff") {
      cfg = preset_symdiff(first, c, n, opt.seed);
    } else {
      throw CLI::ValidationError("--preset", "unknown preset '" + name + "'");
    }
    if (a.good) cfg.good = *a.good;
    if (a.gamma) cfg.good_enough = *a.gamma;
    if (a.prob) cfg.sample_prob = *a.prob;
    if (a.cap) cfg.cap = *a.cap;
    result = sd_sequence_randomized(g, cfg);
  }
  std::cerr << "status=" << (result.ok() ? "ok" : "cap_exceeded") << " iterations=" << result.iterations
            << " width=" << result.report.width << " loop_width=" << result.report.loop_width
            << " tail_width=" << result.report.tail_width << '\n';
  if (!result.ok()) return kInvalid;
  io::write_sdseq(out.stream(), result.sequence);
  return kOk;
}

// ---- matmul

struct MatmulArgs {
  std::string ibp;
  std::string matrix;
  std::string graph;
  unsigned threads = 1;
};

// Rows and columns of the matrix are indexed by vertex id.
int run_matmul(const MatmulArgs& a, Options& opt) {
  IntervalBicliquePartition ibp = opt.format == "stm" ? stm_to_ibp(load_stm(a.ibp)) : read_file(a.ibp, io::read_ibp);
  const Graph g = a.graph.empty() ? ibp_to_graph(ibp) : read_file(a.graph, io::read_graph);
  const auto m = read_file(a.matrix, io::read_matrix);
  Output out(opt.out);
  io::write_matrix(out.stream(), adjacency_matmul(g, LinearOrder::identity(g.size()), m, ibp, !a.graph.empty(), a.threads));
  return kOk;
}

// ---- gen

struct GenArgs {
  std::string kind;
  std::size_t n = 16;
  std::optional<std::size_t> pairs;
  double positive = 0.5;
  std::size_t width = 2;
  std::optional<std::size_t> resolves;
  double p = 0.1;
  std::string seq_out;
};

int run_gen(const GenArgs& a, Options& opt) {
  gen::Rng rng(opt.seed);
  Output out(opt.out);
  if (a.kind == "random-stm") {
    gen::StmSpec spec{a.n, a.pairs.value_or(2 * a.n), a.positive, 0.0};
    io::write_stm(out.stream(), gen::random_stm(spec, rng));
  } else if (a.kind == "planted-sdseq") {
    auto inst = gen::planted_sdseq(a.n, a.width, rng);
    io::write_graph(out.stream(), inst.graph);
    if (!a.seq_out.empty()) {
      Output seq(a.seq_out);
      io::write_sdseq(seq.stream(), inst.sequence);
    }
  } else if (a.kind == "random-cseq") {
    io::write_cseq(out.stream(), gen::random_cseq(a.n, a.resolves.value_or(2 * a.n), rng, a.positive));
  } else if (a.kind == "erdos-renyi") {
    io::write_graph(out.stream(), gen::erdos_renyi(a.n, a.p, rng));
  } else {
    throw CLI::ValidationError("gen", "unknown generator '" + a.kind + "'");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed tree models: conversion, decoding, distances, sd-degeneracy and matrix products"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--out,-o", opt.out, "Output file (default stdout)");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--format", opt.format, "Input representation for sssp/apsp/scatter/matmul: stm, ibp or dag")
      ->check(CLI::IsMember({"stm", "ibp", "dag"}));

  std::function<int()> action;

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Check a stm, ibp, dag, cseq or sdseq file");
  validate_cmd->add_option("kind", va.kind)->required()->check(CLI::IsMember({"stm", "ibp", "dag", "cseq", "sdseq"}));
  validate_cmd->add_option("file", va.file)->required();
  validate_cmd->add_option("--against", va.against, "Graph the input must represent");
  validate_cmd->add_option("--vertices", va.vertices, "Vertex count for construction sequences");
  validate_cmd->callback([&] { action = [&] { return run_validate(va, opt); }; });

  std::string decode_file;
  auto* decode_cmd = app.add_subcommand("decode", "Decode a signed tree model to its graph");
  decode_cmd->add_option("file", decode_file)->required();
  decode_cmd->callback([&] {
    action = [&] {
      Output out(opt.out);
      io::write_graph(out.stream(), decode_bruteforce(load_stm(decode_file)));
      return kOk;
    };
  });

  ConvertArgs ca;
  auto* convert_cmd = app.add_subcommand(
      "convert", "stm->ibp | ibp->dag | ibp->ptm | sdseq->stm | cseq->stm | cseq-shorten");
  convert_cmd->add_option("conversion", ca.what)->required();
  convert_cmd->add_option("file", ca.file)->required();
  convert_cmd->add_option("--graph", ca.graph, "Graph for sdseq->stm");
  convert_cmd->add_option("--vertices", ca.vertices, "Vertex count for construction sequences");
  convert_cmd->callback([&] { action = [&] { return run_convert(ca, opt); }; });

  std::string sssp_file;
  Vertex source = 1;
  auto* sssp_cmd = app.add_subcommand("sssp", "Shortest-path tree from one source");
  sssp_cmd->add_option("file", sssp_file)->required();
  sssp_cmd->add_option("--source", source)->required();
  sssp_cmd->callback([&] {
    action = [&] {
      auto dm = load_distance_model(sssp_file, opt.format);
      Output out(opt.out);
      io::write_spt(out.stream(), sssp(dm, source));
      return kOk;
    };
  });

  std::string apsp_file;
  unsigned apsp_threads = 1;
  auto* apsp_cmd = app.add_subcommand("apsp", "All-pairs distance matrix");
  apsp_cmd->add_option("file", apsp_file)->required();
  apsp_cmd->add_option("--threads", apsp_threads)->check(CLI::Range(1u, 256u));
  apsp_cmd->callback([&] {
    action = [&] {
      auto dm = load_distance_model(apsp_file, opt.format);
      Output out(opt.out);
      io::write_distance_matrix(out.stream(), apsp(dm, apsp_threads));
      return kOk;
    };
  });

  SdArgs sa;
  auto* sd_cmd = app.add_subcommand("sdseq", "Compute an sd-degeneracy sequence of a graph");
  sd_cmd->add_option("graph", sa.graph)->required();
  sd_cmd->add_option("--preset", sa.preset, "tww:f,c | symdiff:beta,c | greedy");
  sd_cmd->add_option("--good", sa.good, "Override g");
  sd_cmd->add_option("--gamma", sa.gamma, "Override gamma");
  sd_cmd->add_option("--prob", sa.prob, "Override the sampling probability");
  sd_cmd->add_option("--cap", sa.cap, "Override the iteration cap");
  sd_cmd->callback([&] { action = [&] { return run_sdseq(sa, opt); }; });

  MatmulArgs ma;
  auto* mm_cmd = app.add_subcommand("matmul", "Multiply the adjacency matrix by a matrix");
  mm_cmd->add_option("representation", ma.ibp, "stm or ibp file (see --format)")->required();
  mm_cmd->add_option("matrix", ma.matrix)->required();
  mm_cmd->add_option("--graph", ma.graph, "Graph to check the representation against");
  mm_cmd->add_option("--threads", ma.threads)->check(CLI::Range(1u, 256u));
  mm_cmd->callback([&] { action = [&] { return run_matmul(ma, opt); }; });

  std::string scatter_file;
  std::size_t scatter_c = 1;
  Dist scatter_r = 1;
  std::vector<Vertex> scatter_x;
  auto* scatter_cmd = app.add_subcommand("scatter", "Greedy maximal r-scattered subset");
  scatter_cmd->add_option("file", scatter_file)->required();
  scatter_cmd->add_option("--c", scatter_c)->required()->check(CLI::PositiveNumber);
  scatter_cmd->add_option("--r", scatter_r)->required()->check(CLI::PositiveNumber);
  scatter_cmd->add_option("--set", scatter_x, "Candidate vertices (default all)")->delimiter(',');
  scatter_cmd->callback([&] {
    action = [&] {
      auto dm = load_distance_model(scatter_file, opt.format);
      if (scatter_x.empty()) {
        for (std::size_t v = 1; v <= dm.vertex_count(); ++v) scatter_x.push_back(static_cast<Vertex>(v));
      }
      Output out(opt.out);
      const auto s = scattered_maximal_subset(dm, scatter_x, scatter_c, scatter_r);
      for (std::size_t i = 0; i < s.size(); ++i) out.stream() << (i ? " " : "") << s[i];
      out.stream() << '\n';
      return kOk;
    };
  });

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("kind", ga.kind)
      ->required()
      ->check(CLI::IsMember({"random-stm", "planted-sdseq", "random-cseq", "erdos-renyi"}));
  gen_cmd->add_option("--n", ga.n)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--pairs", ga.pairs, "random-stm: target pair count (default 2n)");
  gen_cmd->add_option("--positive", ga.positive, "Fraction of positive pairs or resolves")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--width", ga.width, "planted-sdseq: planted width");
  gen_cmd->add_option("--resolves", ga.resolves, "random-cseq: resolve count (default 2n)");
  gen_cmd->add_option("--p", ga.p, "erdos-renyi: edge probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seq-out", ga.seq_out, "planted-sdseq: file for the planted sequence");
  gen_cmd->callback([&] { action = [&] { return run_gen(ga, opt); }; });

  int min_exp = 10, max_exp = 14;
  double density = 1.0;
  auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline stages over n = 2^min..2^max");
  bench_cmd->add_option("--min-exp", min_exp)->check(CLI::Range(1, 24));
  bench_cmd->add_option("--max-exp", max_exp)->check(CLI::Range(1, 24));
  bench_cmd->add_option("--density", density, "Pairs per vertex");
  bench_cmd->callback([&] {
    action = [&] {
      auto records = bench::run_pipeline(min_exp, max_exp, opt.seed, density);
      Output out(opt.out);
      bench::write_records(out.stream(), records);
      for (const char* stage : {"sssp", "ibp_matvec"}) {
        const auto fit = bench::fit_p_log_n(records, stage);
        out.stream() << "fit=" << stage << " constant=" << fit.constant << " max_residual=" << fit.max_residual << '\n';
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kIoError;
  }

  try {
    return action();
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIoError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kIoError;
  }
}
