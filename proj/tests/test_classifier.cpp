#include <algorithm>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "rkband/classifier.hpp"
#include "synthetic.hpp"

using namespace rkband;

namespace {

BandSet random_bands(synth::Rng& rng, const LabeledDataset& data) {
  std::map<Label, RKBand> m;
  for (Label c : data.classes()) m.emplace(c, RKBand(synth::random_narrow_widths(rng, data.series_length())));
  return BandSet(data.series_length(), m);
}

}  // namespace

TEST_CASE("a training item is its own nearest neighbor") {
  synth::Rng rng(101);
  const auto data = synth::random_dataset(rng, 3, 4, 16);
  const NearestNeighbor nn(data, random_bands(rng, data));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto m = nn.nearest(data.series(i));
    CHECK(m.distance == 0.0);
    CHECK(m.label == data.label(i));
  }
}

TEST_CASE("a single training item answers every query") {
  const LabeledDataset one({TimeSeries({1, 2, 3})}, {7});
  const NearestNeighbor nn(one, BandSet::uniform(one, RKBand::uniform(3, 1)));
  CHECK(nn.predict(TimeSeries({9, 9, 9})) == 7);
  CHECK_THROWS_AS(nn.nearest(TimeSeries({1, 2, 3}), 0), Error);
  CHECK_THROWS_AS(nn.predict(TimeSeries({1, 2})), Error);
}

TEST_CASE("pruned search agrees with the exhaustive one") {
  synth::Rng rng(103);
  for (int trial = 0; trial < 5; ++trial) {
    const auto data = synth::random_dataset(rng, 2 + trial, 6, 20, 0.7);
    const auto bands = random_bands(rng, data);
    const NearestNeighbor nn(data, bands);
    for (int q = 0; q < 40; ++q) {
      const TimeSeries query(synth::random_values(rng, 20));
      const auto fast = nn.nearest(query);
      const auto slow = nn.nearest_exhaustive(query);
      CHECK(fast.index == slow.index);
      CHECK(fast.label == slow.label);
      CHECK(fast.distance == slow.distance);

      // No training item, including the pruned ones, is strictly closer.
      for (std::size_t i = 0; i < data.size(); ++i) {
        const auto a = query.values();
        const auto b = data.series(i).values();
        const auto w = bands.at(data.label(i)).widths();
        const double d = oracle::matrix_dtw({a.begin(), a.end()}, {b.begin(), b.end()}, {w.begin(), w.end()});
        CHECK(d >= fast.distance - 1e-9);
      }
    }
  }
}

TEST_CASE("distance ties go to the earliest training item") {
  const TimeSeries s({0, 1, 0, 1});
  const LabeledDataset data({TimeSeries({5, 5, 5, 5}), s, s}, {1, 2, 3});
  const NearestNeighbor nn(data, BandSet::uniform(data, RKBand::uniform(4, 2)));
  CHECK(nn.nearest(s).index == 1);
  CHECK(nn.nearest(s, 1).index == 2);
  CHECK(nn.nearest_exhaustive(s).index == 1);
}

TEST_CASE("leave-one-out accuracy") {
  SUBCASE("identical items per class") {
    const LabeledDataset d({TimeSeries({1, 1}), TimeSeries({1, 1}), TimeSeries({4, 4}), TimeSeries({4, 4})},
                           {1, 1, 2, 2});
    CHECK(loo_accuracy(d, BandSet::uniform(d, RKBand::uniform(2, 0))) == 1.0);
  }
  SUBCASE("two differently labeled items") {
    const LabeledDataset d({TimeSeries({1, 1}), TimeSeries({4, 4})}, {1, 2});
    CHECK(loo_accuracy(d, BandSet::uniform(d, RKBand::uniform(2, 0))) == 0.0);
  }
  SUBCASE("fewer than two items") {
    const LabeledDataset d({TimeSeries({1, 1})}, {1});
    try {
      loo_accuracy(d, BandSet::uniform(d, RKBand::uniform(2, 0)));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UndefinedAccuracy);
    }
  }
  SUBCASE("well separated classes") {
    synth::Rng rng(107);
    const auto d = synth::random_dataset(rng, 3, 5, 12, 0.05);
    CHECK(loo_accuracy(d, BandSet::uniform(d, RKBand::uniform(12, 3))) == 1.0);
  }
  SUBCASE("zero band equals Euclidean 1-NN") {
    synth::Rng rng(109);
    const auto d = synth::random_dataset(rng, 3, 6, 15, 1.5);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      Label label = 0;
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (i == j) continue;
        const auto a = d.series(i).values();
        const auto b = d.series(j).values();
        const double e = oracle::euclidean({a.begin(), a.end()}, {b.begin(), b.end()});
        if (e < best) {
          best = e;
          label = d.label(j);
        }
      }
      hits += label == d.label(i);
    }
    CHECK(loo_accuracy(d, BandSet::uniform(d, RKBand::uniform(15, 0))) ==
          doctest::Approx(static_cast<double>(hits) / d.size()));
  }
}

TEST_CASE("run_pipeline") {
  synth::Rng rng(113);
  const auto train = synth::cbf_dataset(rng, 4, 32);
  std::vector<TimeSeries> test;
  for (int k = 0; k < 9; ++k) test.emplace_back(synth::cbf(rng, 1 + k % 3, 32));

  SUBCASE("empty test set") {
    const auto r = run_pipeline(train, {}, 9.0, 30, 1);
    CHECK(r.predictions.empty());
    CHECK(r.predicted_accuracy >= 0.0);
    CHECK(r.predicted_accuracy <= 1.0);
  }
  SUBCASE("matches running the stages by hand") {
    const auto r = run_pipeline(train, test, std::numeric_limits<double>::infinity(), 30, 5);
    CHECK(r.halvings == 0);
    CHECK(r.length == 32);
    const auto learned = learn_best_band(train, 30, 5);
    CHECK(learned.bands == r.learned.bands);
    const auto model = build_model(train, learned.bands);
    CHECK(model.predicted_accuracy == r.predicted_accuracy);
    REQUIRE(r.predictions.size() == test.size());
    const auto classes = train.classes();
    for (std::size_t k = 0; k < test.size(); ++k) {
      CHECK(r.predictions[k] == model.classifier.predict(test[k]));
      CHECK(std::find(classes.begin(), classes.end(), r.predictions[k]) != classes.end());
    }
  }
  SUBCASE("halving applies to test series too") {
    const auto r = run_pipeline(train, test, 5.0, 20, 2);
    CHECK(r.halvings == 1);
    CHECK(r.length == 16);
    CHECK(r.predictions.size() == test.size());
  }
  SUBCASE("mismatched test length") {
    CHECK_THROWS_AS(run_pipeline(train, {TimeSeries({1, 2, 3})}, 9.0, 10, 1), Error);
  }
}
