#include <doctest.h>

#include <cmath>
#include <vector>

#include "anchorclust/embedding.hpp"
#include "anchorclust/errors.hpp"
#include "anchorclust/mask_gen.hpp"
#include "anchorclust/metrics.hpp"
#include "anchorclust/solver.hpp"
#include "anchorclust/synth.hpp"
#include "oracles.hpp"

using namespace anchorclust;

namespace {

// Random feasible instance for block-update tests.
struct Instance {
  MultiViewDataset data;
  PresenceMask mask;
  ModelState state;
  double lambda;
  double mu;
};

Instance random_instance(Rng& rng, bool with_missing) {
  Instance inst;
  const Index views = 2 + static_cast<Index>(rng.next_index(2));
  const Index n = 8 + static_cast<Index>(rng.next_index(12));
  const Index m = 2 + static_cast<Index>(rng.next_index(3));
  std::vector<Index> dims;
  for (Index v = 0; v < views; ++v) {
    dims.push_back(m + 1 + static_cast<Index>(rng.next_index(4)));
  }
  inst.data = oracles::random_dataset(n, dims, rng, 2.0);
  inst.mask = with_missing ? generate_mask(n, views, 0.25, rng.next_u64())
                           : PresenceMask::complete(views, n);
  inst.state = oracles::random_feasible_state(inst.data, m, rng);
  inst.lambda = (rng.next_index(2) == 0) ? 0.1 : 1.5;
  inst.mu = (rng.next_index(3) == 0) ? 0.0 : 0.05;
  if (inst.mu == 0.0 && inst.lambda == 0.0 && with_missing) inst.lambda = 0.1;
  return inst;
}

SynthSpec small_synth_spec() {
  SynthSpec spec;
  spec.n = 90;
  spec.k = 3;
  spec.views = 1;
  spec.dims = {6};
  spec.cluster_separation = 8.0;
  spec.noise_std = 0.05;
  spec.seed = 4;
  return spec;
}

}  // namespace

TEST_CASE("update_anchors single-anchor polar factor") {
  Rng rng(1);
  MultiViewDataset data = oracles::random_dataset(5, {3}, rng);
  ModelState state = oracles::random_feasible_state(data, 1, rng);
  const PresenceMask mask = PresenceMask::complete(1, 5);
  const Mat m = data.views[0] * state.graphs[0].transpose();
  update_anchors(state, data, mask);
  CHECK((state.anchors[0] - m / m.norm()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("update_anchors fixes semi-orthogonal targets") {
  Rng rng(2);
  const Mat target = oracles::random_orthonormal(4, 2, rng);
  MultiViewDataset data;
  data.name = "t";
  data.n = 5;
  Mat x = Mat::Zero(4, 5);
  x.leftCols(2) = target;
  data.views.push_back(x);
  ModelState state = oracles::random_feasible_state(data, 2, rng);
  Mat z = Mat::Zero(2, 5);
  z(0, 0) = 1.0;
  z(1, 1) = 1.0;  // X Z^T = target exactly
  state.graphs[0] = z;
  update_anchors(state, data, PresenceMask::complete(1, 5));
  CHECK((state.anchors[0] - target).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("update_anchors maximizes the reconstruction trace") {
  Rng rng(3);
  MultiViewDataset data = oracles::random_dataset(6, {3}, rng);
  ModelState state = oracles::random_feasible_state(data, 2, rng);
  const PresenceMask mask = generate_mask(6, 1, 0.0, 0);
  const Mat m = data.views[0] * state.graphs[0].transpose();
  update_anchors(state, data, mask);
  const double best = (state.anchors[0].transpose() * m).trace();
  for (int trial = 0; trial < 10000; ++trial) {
    const Mat b = oracles::random_orthonormal(3, 2, rng);
    CHECK(best >= (b.transpose() * m).trace() - 1e-9);
  }
}

TEST_CASE("update_consensus single-anchor normalization") {
  Rng rng(4);
  MultiViewDataset data = oracles::random_dataset(6, {3, 4}, rng);
  ModelState state = oracles::random_feasible_state(data, 1, rng);
  Mat q = Mat::Zero(6, 1);
  for (int v = 0; v < 2; ++v) {
    q += state.graphs[v].transpose() * state.alignments[v].transpose();
  }
  update_consensus(state);
  CHECK((state.consensus - q.transpose() / q.norm()).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("update_consensus fixes an aligned row-orthonormal graph") {
  Rng rng(5);
  MultiViewDataset data = oracles::random_dataset(7, {4}, rng);
  ModelState state = oracles::random_feasible_state(data, 3, rng);
  state.alignments[0] = Mat::Identity(3, 3);
  state.graphs[0] = oracles::random_orthonormal(7, 3, rng).transpose();
  update_consensus(state);
  CHECK((state.consensus - state.graphs[0]).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("update_consensus maximizes the alignment trace") {
  Rng rng(6);
  MultiViewDataset data = oracles::random_dataset(6, {3, 3}, rng);
  ModelState state = oracles::random_feasible_state(data, 2, rng);
  Mat q = Mat::Zero(6, 2);
  for (int v = 0; v < 2; ++v) {
    q += state.graphs[v].transpose() * state.alignments[v].transpose();
  }
  update_consensus(state);
  const double best = (state.consensus * q).trace();
  for (int trial = 0; trial < 10000; ++trial) {
    const Mat g = oracles::random_orthonormal(6, 2, rng).transpose();
    CHECK(best >= (g * q).trace() - 1e-9);
  }
}

TEST_CASE("update_graphs recovers an exact reconstruction") {
  Rng rng(7);
  const Index d = 4, m = 3, n = 6;
  MultiViewDataset data;
  data.name = "exact";
  data.n = n;
  const Mat a = oracles::random_orthonormal(d, m, rng);
  Mat z_true(m, n);
  for (Index j = 0; j < n; ++j) {
    z_true.col(j) = oracles::random_simplex_point(m, rng);
  }
  data.views.push_back(a * z_true);
  ModelState state = oracles::random_feasible_state(data, m, rng);
  state.anchors[0] = a;
  update_graphs(state, data, PresenceMask::complete(1, n), 0.0, 0.0);
  CHECK((state.graphs[0] - z_true).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("update_graphs imputes missing columns from the consensus") {
  Rng rng(8);
  MultiViewDataset data = oracles::random_dataset(5, {4}, rng);
  ModelState state = oracles::random_feasible_state(data, 3, rng);
  state.alignments[0] = Mat::Identity(3, 3);
  PresenceMask mask = PresenceMask::complete(1, 5);
  mask.presence(0, 2) = 0.0;
  update_graphs(state, data, mask, 1.0, 0.0);
  const Vec expected = simplex_project(state.consensus.col(2));
  CHECK((state.graphs[0].col(2) - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("update_graphs matches the active-set QP oracle") {
  Rng rng(9);
  const Index n = 6, m = 3;
  MultiViewDataset data = oracles::random_dataset(n, {4, 4}, rng, 2.0);
  ModelState state = oracles::random_feasible_state(data, m, rng);
  PresenceMask mask = PresenceMask::complete(2, n);
  mask.presence(0, 1) = 0.0;
  mask.presence(1, 4) = 0.0;
  const double lambda = 0.8, mu = 0.05;

  const ModelState before = state;
  update_graphs(state, data, mask, lambda, mu);
  for (Index v = 0; v < 2; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    const double gamma2 = before.weights[v] * before.weights[v];
    for (Index j = 0; j < n; ++j) {
      const Vec ref = oracles::graph_column_enumerate(
          before.anchors[vi], before.alignments[vi], data.views[vi].col(j),
          before.consensus.col(j), gamma2, mask.presence(v, j), lambda, mu);
      CHECK((state.graphs[vi].col(j) - ref).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("update_graphs rejects the degenerate denominator") {
  Rng rng(10);
  MultiViewDataset data = oracles::random_dataset(5, {4}, rng);
  ModelState state = oracles::random_feasible_state(data, 2, rng);
  PresenceMask mask = PresenceMask::complete(1, 5);
  mask.presence(0, 3) = 0.0;
  CHECK_THROWS_AS(update_graphs(state, data, mask, 0.0, 0.0), ConfigError);
}

TEST_CASE("update_alignment fixtures") {
  Rng rng(11);
  MultiViewDataset data = oracles::random_dataset(6, {4}, rng);
  ModelState state = oracles::random_feasible_state(data, 3, rng);

  SUBCASE("identity target") {
    state.graphs[0] = state.consensus;  // W = F F^T = I
    update_alignment(state);
    CHECK((state.alignments[0] - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <=
          1e-10);
  }
  SUBCASE("permutation target") {
    Mat perm = Mat::Zero(3, 3);
    perm(0, 1) = perm(1, 2) = perm(2, 0) = 1.0;
    state.graphs[0] = perm.transpose() * state.consensus;  // W = perm
    update_alignment(state);
    CHECK((state.alignments[0] - perm).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("update_alignment maximizes over signed permutations and samples") {
  Rng rng(12);
  MultiViewDataset data = oracles::random_dataset(7, {4}, rng);
  ModelState state = oracles::random_feasible_state(data, 3, rng);
  const Mat w = state.consensus * state.graphs[0].transpose();
  update_alignment(state);
  const double best = (state.alignments[0].transpose() * w).trace();
  oracles::for_each_signed_permutation(3, [&](const Mat& p) {
    CHECK(best >= (p.transpose() * w).trace() - 1e-9);
  });
  for (int trial = 0; trial < 10000; ++trial) {
    const Mat p = oracles::random_orthonormal(3, 3, rng);
    CHECK(best >= (p.transpose() * w).trace() - 1e-9);
  }
}

TEST_CASE("update_weights fixtures") {
  Rng rng(13);
  const Index d = 3, m = 2, n = 4;
  MultiViewDataset data;
  data.name = "w";
  data.n = n;
  ModelState state;
  state.weights = Vec::Constant(2, 0.5);
  state.consensus = oracles::random_orthonormal(n, m, rng).transpose();
  const auto add_view_with_residual = [&](double residual_sq) {
    const Mat a = oracles::random_orthonormal(d, m, rng);
    Mat z(m, n);
    for (Index j = 0; j < n; ++j) {
      z.col(j) = oracles::random_simplex_point(m, rng);
    }
    Mat x = a * z;
    x(0, 0) += std::sqrt(residual_sq);  // lands entirely in one column
    data.views.push_back(x);
    state.anchors.push_back(a);
    state.graphs.push_back(z);
    state.alignments.push_back(Mat::Identity(m, m));
  };

  SUBCASE("equal residuals split evenly") {
    add_view_with_residual(1.0);
    add_view_with_residual(1.0);
    update_weights(state, data, PresenceMask::complete(2, n));
    CHECK(state.weights[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(state.weights[1] == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("inverse-residual weighting") {
    add_view_with_residual(1.0);
    add_view_with_residual(3.0);
    update_weights(state, data, PresenceMask::complete(2, n));
    CHECK(state.weights[0] == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(state.weights[1] == doctest::Approx(0.25).epsilon(1e-9));
  }
  SUBCASE("a perfectly fit view takes all the weight") {
    add_view_with_residual(0.0);
    add_view_with_residual(2.0);
    update_weights(state, data, PresenceMask::complete(2, n));
    CHECK(std::abs(state.weights[0] - 1.0) <= 1e-10);
    CHECK(state.weights[1] <= 1e-10);
    CHECK(state.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("each block update never increases the objective") {
  Rng rng(14);
  SolverConfig config;
  config.m = 4;  // only tolerances are read by require_feasible
  config.k = 2;
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = random_instance(rng, trial % 2 == 0);
    const auto obj = [&](const ModelState& s) {
      return objective(s, inst.data, inst.mask, inst.lambda, inst.mu);
    };
    const double before = obj(inst.state);

    ModelState s1 = inst.state;
    update_anchors(s1, inst.data, inst.mask);
    CHECK(obj(s1) <= before * (1.0 + 1e-8));
    require_feasible(s1, config, "anchors");

    ModelState s2 = inst.state;
    update_consensus(s2);
    CHECK(obj(s2) <= before * (1.0 + 1e-8));
    require_feasible(s2, config, "consensus");

    ModelState s3 = inst.state;
    update_graphs(s3, inst.data, inst.mask, inst.lambda, inst.mu);
    CHECK(obj(s3) <= before * (1.0 + 1e-8));
    require_feasible(s3, config, "graphs");

    ModelState s4 = inst.state;
    update_alignment(s4);
    CHECK(obj(s4) <= before * (1.0 + 1e-8));
    require_feasible(s4, config, "alignment");

    ModelState s5 = inst.state;
    update_weights(s5, inst.data, inst.mask);
    CHECK(obj(s5) <= before * (1.0 + 1e-8));
    require_feasible(s5, config, "weights");
    ++checked;
  }
  CHECK(checked == 25);
}

TEST_CASE("solve descends monotonically and stays feasible") {
  const SynthSpec spec = small_synth_spec();
  const SynthResult synth = synth_dataset(spec);
  const PresenceMask mask = PresenceMask::complete(1, spec.n);
  SolverConfig config;
  config.m = 3;
  config.k = 3;
  config.lambda = 1.0;
  config.mu = 1e-2;
  config.max_iters = 20;
  config.tol = 1e-300;

  const SolveResult result = solve(synth.dataset, mask, config);
  REQUIRE(result.trace.size() == 20);
  CHECK(result.trace.back().objective <= result.trace.front().objective);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    CHECK(result.trace[i].objective <=
          result.trace[i - 1].objective * (1.0 + 1e-8));
  }
  for (const IterationRecord& rec : result.trace) {
    const double sum = rec.term_reconstruction + rec.term_alignment +
                       rec.term_regularization;
    CHECK(rec.objective == doctest::Approx(sum).epsilon(1e-9));
    CHECK(rec.wall_time_ms >= 0.0);
  }
  CHECK_NOTHROW(require_feasible(result.state, config, "final"));
}

TEST_CASE("solve is deterministic") {
  const SynthSpec spec = small_synth_spec();
  const SynthResult synth = synth_dataset(spec);
  const PresenceMask mask = generate_mask(spec.n, 1, 0.0, 0);
  SolverConfig config;
  config.m = 3;
  config.k = 3;
  config.max_iters = 12;
  config.mu = 1e-2;

  const SolveResult a = solve(synth.dataset, mask, config);
  const SolveResult b = solve(synth.dataset, mask, config);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].objective == b.trace[i].objective);
    CHECK(a.trace[i].term_reconstruction == b.trace[i].term_reconstruction);
    CHECK(a.trace[i].term_alignment == b.trace[i].term_alignment);
  }
  for (int v = 0; v < 1; ++v) {
    CHECK((a.state.graphs[v] - b.state.graphs[v]).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("solve with threads matches sequential execution") {
  SynthSpec spec;
  spec.n = 60;
  spec.k = 2;
  spec.views = 3;
  spec.dims = {5, 6, 7};
  spec.cluster_separation = 5.0;
  spec.noise_std = 0.5;
  spec.seed = 12;
  const SynthResult synth = synth_dataset(spec);
  const PresenceMask mask = generate_mask(spec.n, 3, 0.2, 1);
  SolverConfig config;
  config.m = 4;
  config.k = 2;
  config.max_iters = 8;
  config.mu = 1e-2;

  const SolveResult seq = solve(synth.dataset, mask, config);
  config.threads = 3;
  const SolveResult par = solve(synth.dataset, mask, config);
  REQUIRE(seq.trace.size() == par.trace.size());
  for (std::size_t i = 0; i < seq.trace.size(); ++i) {
    CHECK(seq.trace[i].objective == par.trace[i].objective);
  }
  for (int v = 0; v < 3; ++v) {
    CHECK((seq.state.graphs[v] - par.state.graphs[v]).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("unaligned mode freezes alignments at identity and still descends") {
  const SynthSpec spec = small_synth_spec();
  const SynthResult synth = synth_dataset(spec);
  const PresenceMask mask = PresenceMask::complete(1, spec.n);
  SolverConfig config;
  config.m = 3;
  config.k = 3;
  config.align_enabled = false;
  config.max_iters = 10;
  config.mu = 1e-2;
  const SolveResult result = solve(synth.dataset, mask, config);
  CHECK((result.state.alignments[0] - Mat::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    CHECK(result.trace[i].objective <=
          result.trace[i - 1].objective * (1.0 + 1e-8));
  }
}

TEST_CASE("fixed-anchor mode keeps the initial anchors") {
  const SynthSpec spec = small_synth_spec();
  const SynthResult synth = synth_dataset(spec);
  const PresenceMask mask = PresenceMask::complete(1, spec.n);
  SolverConfig config;
  config.m = 3;
  config.k = 3;
  config.learn_anchors = false;
  config.max_iters = 6;
  config.mu = 1e-2;
  const ModelState init = initial_state(synth.dataset, mask, config);
  const SolveResult result = solve(synth.dataset, mask, config);
  CHECK((result.state.anchors[0] - init.anchors[0]).cwiseAbs().maxCoeff() ==
        0.0);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    CHECK(result.trace[i].objective <=
          result.trace[i - 1].objective * (1.0 + 1e-8));
  }
}

TEST_CASE("solve validates the problem shape") {
  const SynthSpec spec = small_synth_spec();
  const SynthResult synth = synth_dataset(spec);
  SolverConfig config;
  config.k = 3;
  config.mu = 1e-2;

  SUBCASE("anchor count exceeding the view dimension") {
    config.m = 7;  // dims = {6}
    CHECK_THROWS_AS(solve(synth.dataset, PresenceMask::complete(1, spec.n),
                          config),
                    ConfigError);
  }
  SUBCASE("lambda = mu = 0 with missing samples") {
    config.m = 3;
    config.lambda = 0.0;
    config.mu = 0.0;
    const PresenceMask mask = generate_mask(spec.n, 1, 0.0, 0);
    CHECK_NOTHROW(solve(synth.dataset, mask, config));  // complete data is fine
  }
  SUBCASE("fixed anchors need enough observed samples") {
    SynthSpec two = spec;
    two.n = 4;
    two.k = 2;
    two.views = 2;
    two.dims = {6, 6};
    const SynthResult synth2 = synth_dataset(two);
    PresenceMask mask2 = PresenceMask::complete(2, 4);
    mask2.presence(0, 0) = mask2.presence(0, 1) = 0.0;  // 2 observed in view 0
    SolverConfig fixed;
    fixed.m = 3;
    fixed.k = 2;
    fixed.mu = 1e-2;
    fixed.learn_anchors = false;
    CHECK_THROWS_AS(solve(synth2.dataset, mask2, fixed), ConfigError);
  }
}

TEST_CASE("solve aborts with the iteration index on numerical blowup") {
  MultiViewDataset data;
  data.name = "huge";
  data.n = 4;
  Mat x = Mat::Constant(3, 4, 1e300);
  data.views.push_back(x);
  SolverConfig config;
  config.m = 2;
  config.k = 2;
  config.mu = 1e-2;
  try {
    solve(data, PresenceMask::complete(1, 4), config);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("iteration") != std::string::npos);
  }
}

TEST_CASE("planted permutations are absorbed by alignment") {
  // Two views over a shared frame, one scrambled by a 3-cycle. After an
  // aligned solve the per-view anchor-to-cluster maps are bijections that
  // disagree, and the aligned graphs agree across views far better than the
  // raw graphs do.
  SynthSpec spec;
  spec.n = 400;
  spec.k = 4;
  spec.views = 2;
  spec.dims = {10, 10};
  spec.cluster_separation = 8.0;
  spec.noise_std = 1.0;
  spec.seed = 7;
  spec.anchor_permutations = {{{0, 1, 2, 3}, {1, 2, 0, 3}}};
  const SynthResult synth = synth_dataset(spec);
  const PresenceMask mask = generate_mask(spec.n, 2, 0.2, 3);
  SolverConfig config;
  config.m = 4;
  config.k = 4;
  config.lambda = 1.0;
  config.mu = 1e-2;
  config.max_iters = 60;
  const SolveResult result = solve(synth.dataset, mask, config);

  // Anchor-to-cluster argmax maps from graph mass.
  std::vector<std::vector<Index>> maps;
  for (int v = 0; v < 2; ++v) {
    Mat mass = Mat::Zero(4, 4);
    for (Index j = 0; j < spec.n; ++j) {
      mass.col((*synth.dataset.labels)[static_cast<std::size_t>(j)]) +=
          result.state.graphs[v].col(j);
    }
    std::vector<Index> map;
    std::vector<bool> seen(4, false);
    for (Index i = 0; i < 4; ++i) {
      Index arg = 0;
      mass.row(i).maxCoeff(&arg);
      map.push_back(arg);
      seen[static_cast<std::size_t>(arg)] = true;
    }
    CHECK(std::count(seen.begin(), seen.end(), true) == 4);  // bijection
    maps.push_back(std::move(map));
  }
  CHECK(maps[0] != maps[1]);  // the planted scramble shows up

  // Alignment transports both views onto the consensus.
  double aligned_gap = 0.0, raw_gap = 0.0;
  Index both = 0;
  const Mat aligned0 = result.state.alignments[0] * result.state.graphs[0];
  const Mat aligned1 = result.state.alignments[1] * result.state.graphs[1];
  for (Index j = 0; j < spec.n; ++j) {
    if (mask.presence(0, j) != 0.0 && mask.presence(1, j) != 0.0) {
      aligned_gap += (aligned0.col(j) - aligned1.col(j)).squaredNorm();
      raw_gap += (result.state.graphs[0].col(j) -
                  result.state.graphs[1].col(j))
                     .squaredNorm();
      ++both;
    }
  }
  REQUIRE(both > 0);
  CHECK(aligned_gap < 0.5 * raw_gap);

  // And the aligned pipeline still recovers the clusters.
  const std::vector<int> pred = cluster(result.state, config);
  CHECK(accuracy(pred, *synth.dataset.labels) >= 0.7);
}
