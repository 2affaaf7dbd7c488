#include <map>

#include <benchmark/benchmark.h>

#include "coordyn/dyncomm.hpp"
#include "coordyn/multiplex.hpp"
#include "coordyn/simnet.hpp"
#include "coordyn/synth.hpp"

namespace {

using namespace coordyn;

// Synthetic corpus with `users` users spread over four planted communities.
WindowedCorpus corpus_for(std::size_t users, int windows) {
  ScenarioSpec spec;
  spec.windows = windows;
  for (auto& c : spec.communities) c.size = users / spec.communities.size();
  const auto output = generate(build_scenario(spec));
  const auto specs = make_windows(spec.start, spec.start + spec.total_days() * kSecondsPerDay, spec.window_days,
                                  spec.offset_days);
  return window_events(output.events, specs, select_superspreaders(output.events, 1.0));
}

const WindowedCorpus& cached_corpus(std::size_t users) {
  static std::map<std::size_t, WindowedCorpus> cache;
  auto it = cache.find(users);
  if (it == cache.end()) it = cache.emplace(users, corpus_for(users, 5)).first;
  return it->second;
}

void BM_SimilarityLayer(benchmark::State& state) {
  const auto& corpus = cached_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto vectors = build_user_vectors(corpus.events, corpus.window_events[2]);
    benchmark::DoNotOptimize(build_similarity_layer(vectors, 2));
  }
}
BENCHMARK(BM_SimilarityLayer)->Arg(400)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Backbone(benchmark::State& state) {
  const auto& corpus = cached_corpus(static_cast<std::size_t>(state.range(0)));
  const auto layer = build_similarity_layer(build_user_vectors(corpus.events, corpus.window_events[2]), 2);
  state.counters["edges"] = static_cast<double>(layer.edge_count());
  for (auto _ : state) benchmark::DoNotOptimize(disparity_backbone(layer, 0.05));
}
BENCHMARK(BM_Backbone)->Arg(400)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Leiden(benchmark::State& state) {
  const auto& corpus = cached_corpus(static_cast<std::size_t>(state.range(0)));
  std::vector<LayerGraph> layers;
  for (std::size_t w = 0; w < corpus.window_count(); ++w) {
    const auto layer =
        build_similarity_layer(build_user_vectors(corpus.events, corpus.window_events[w]), static_cast<int>(w));
    layers.push_back(disparity_backbone(layer, 0.05));
  }
  const auto network = assemble_multiplex(std::move(layers), 1.0);
  state.counters["slices"] = static_cast<double>(network.slice_count());
  ResolutionConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(leiden_partition(network, config));
}
BENCHMARK(BM_Leiden)->Arg(400)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
