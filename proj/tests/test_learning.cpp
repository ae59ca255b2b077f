#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rkband/learning.hpp"
#include "synthetic.hpp"

using namespace rkband;

namespace {

// Two classes of constant series: every band gives the same distances, so
// no learning move can ever improve the score.
LabeledDataset flat_dataset(std::size_t n) {
  std::vector<TimeSeries> series;
  std::vector<Label> labels;
  for (int k = 0; k < 3; ++k) {
    series.emplace_back(std::vector<double>(n, 0.0));
    labels.push_back(1);
    series.emplace_back(std::vector<double>(n, 1.0));
    labels.push_back(2);
  }
  return LabeledDataset(std::move(series), std::move(labels));
}

std::vector<double> as_vector(const TimeSeries& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST_CASE("path matrix histograms") {
  PathMatrix m(4, 1);
  // (0,0) (0,1) (1,2) (2,2) (3,3)
  m.add({{0, 0}, {0, 1}, {1, 2}, {2, 2}, {3, 3}});
  // (0,0) (1,0) (2,1) (3,2) (3,3)
  m.add({{0, 0}, {1, 0}, {2, 1}, {3, 2}, {3, 3}});
  CHECK(m.paths() == 2);
  CHECK(m.count(0, 0) == 2);
  CHECK(m.count(2, 1) == 1);

  // index 1: row 1 has (1,2) and (1,0); column 1 has (0,1) and (2,1).
  CHECK(m.offset_histogram(1) == std::vector<std::uint64_t>{0, 4, 0, 0});
  // index 2: row 2 has (2,2) once and (2,1); column 2 has (1,2), (3,2).
  CHECK(m.offset_histogram(2) == std::vector<std::uint64_t>{1, 3, 0, 0});

  const auto b = boundary_bands(m);
  CHECK(b.max == RKBand({1, 1, 1, 1}));
  // index 0: offsets {0:2, 1:2} -> mean 0.5 rounds up to 1, mode ties to 0.
  CHECK(b.mean[0] == 1);
  CHECK(b.mode[0] == 0);
  CHECK(b.mean[2] == 1);
  CHECK(b.mode[2] == 1);
  CHECK_THROWS_AS(m.add({{4, 0}}), Error);
}

TEST_CASE("boundary bands of an unvisited matrix are zero") {
  const auto b = boundary_bands(PathMatrix(5, 2));
  CHECK(b.max == RKBand::uniform(5, 0));
  CHECK(b.mean == RKBand::uniform(5, 0));
  CHECK(b.mode == RKBand::uniform(5, 0));
}

TEST_CASE("extraction on identical series and singleton classes gives zero bands") {
  const TimeSeries s({0, 3, 1, 4, 1, 5});
  const LabeledDataset data({s, s, s, TimeSeries({9, 2, 6, 5, 3, 5})}, {1, 1, 1, 2});
  const auto r = extract_boundary_bands(data);
  for (const auto* set : {&r.max, &r.mean, &r.mode}) {
    CHECK(set->at(1) == RKBand::uniform(6, 0));
    CHECK(set->at(2) == RKBand::uniform(6, 0));
  }
  CHECK(r.chosen == "max");
}

TEST_CASE("max band contains every within-class unconstrained path") {
  synth::Rng rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    const auto data = synth::random_dataset(rng, 2 + trial % 2, 3 + trial % 3, 8 + 3 * trial, 0.8);
    const auto r = extract_boundary_bands(data);
    const std::size_t n = data.series_length();
    for (Label c : data.classes()) {
      const auto members = data.members(c);
      for (std::size_t a : members) {
        for (std::size_t b : members) {
          if (a == b) continue;
          const double full = oracle::matrix_dtw(as_vector(data.series(a)), as_vector(data.series(b)),
                                                 std::vector<int>(n, static_cast<int>(n)));
          CHECK(std::abs(dtw_distance(data.series(a), data.series(b), r.max.at(c)) - full) < 1e-9);
        }
      }
    }
    // Width-wise, mean and mode never exceed max.
    for (Label c : data.classes()) {
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.mean.at(c)[i] <= r.max.at(c)[i]);
        CHECK(r.mode.at(c)[i] <= r.max.at(c)[i]);
      }
    }
    CHECK(r.heuristic == doctest::Approx(evaluate(data, r.bands)).epsilon(1e-14));
    CHECK(r.heuristic >= evaluate(data, r.max));
    CHECK(r.heuristic >= evaluate(data, r.mean));
    CHECK(r.heuristic >= evaluate(data, r.mode));
  }
}

TEST_CASE("extraction logs three candidates") {
  synth::Rng rng(67);
  const auto data = synth::random_dataset(rng, 2, 3, 10);
  LearningLog log(5);
  extract_boundary_bands(data, &log);
  REQUIRE(log.events().size() == 3);
  CHECK(log.events()[0].phase == "extract:max");
  CHECK(log.events()[1].phase == "extract:mean");
  CHECK(log.events()[2].phase == "extract:mode");
  CHECK(log.events()[0].accepted);
}

TEST_CASE("best_warping_window") {
  SUBCASE("ties go to the smallest width") {
    CHECK(best_warping_window(flat_dataset(10), 100) == 0);
  }
  SUBCASE("bound 0") {
    synth::Rng rng(71);
    CHECK(best_warping_window(synth::sine_dataset(rng, 3, 20), 0) == 0);
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(best_warping_window(flat_dataset(4), 101), Error);
  }
  SUBCASE("agrees with an exhaustive scan") {
    synth::Rng rng(73);
    const auto data = synth::sine_dataset(rng, 4, 24);
    const int bound = 60;
    double best = -2.0;
    int expected = 0;
    for (int k = 0; k <= bound; ++k) {
      const double h = evaluate(data, BandSet::uniform(data, sakoe_chiba(24, k)));
      if (h > best) {
        best = h;
        expected = k;
      }
    }
    // Ascending scan with strict > keeps the smallest width among ties.
    LearningLog log;
    CHECK(best_warping_window(data, bound, &log) == expected);
    CHECK(log.events().size() == static_cast<std::size_t>(bound + 1));
  }
}

TEST_CASE("hill climbing") {
  synth::Rng rng(79);
  const auto data = synth::random_dataset(rng, 3, 4, 12, 0.9);
  const auto start = BandSet::uniform(data, RKBand::uniform(12, 1));
  const double initial = evaluate(data, start);

  SUBCASE("bound 0 forward from the zero band does nothing") {
    const auto zero = BandSet::uniform(data, RKBand::uniform(12, 0));
    const auto r = hillclimb_learn(data, zero, {1, 0, Direction::Forward, 9});
    CHECK(r.bands == zero);
    CHECK(r.dequeues == 3);
  }
  SUBCASE("threshold below 1 is a configuration error") {
    CHECK_THROWS_AS(hillclimb_learn(data, start, {0, 5, Direction::Forward, 1}), Error);
    CHECK_THROWS_AS(hillclimb_learn(data, start, {1, 13, Direction::Forward, 1}), Error);
  }
  SUBCASE("score never decreases and matches the returned bands") {
    for (auto dir : {Direction::Forward, Direction::Backward}) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto r = hillclimb_learn(data, start, {1, 6, dir, seed});
        CHECK(r.heuristic >= initial);
        CHECK(r.heuristic == doctest::Approx(evaluate(data, r.bands)).epsilon(1e-12));
        for (Label c : data.classes()) {
          for (std::size_t i = 0; i < 12; ++i) {
            const int w = r.bands.at(c)[i];
            if (dir == Direction::Forward) {
              CHECK(w >= 1);
              CHECK(w <= 6);
            } else {
              CHECK(w <= 1);
            }
          }
        }
      }
    }
  }
  SUBCASE("fixed seed is deterministic") {
    LearningLog a(3), b(3);
    const auto ra = hillclimb_learn(data, start, {1, 8, Direction::Forward, 3}, &a);
    const auto rb = hillclimb_learn(data, start, {1, 8, Direction::Forward, 3}, &b);
    CHECK(ra.bands == rb.bands);
    CHECK(ra.heuristic == rb.heuristic);
    std::ostringstream sa, sb;
    a.write_tsv(sa);
    b.write_tsv(sb);
    CHECK(sa.str() == sb.str());
  }
  SUBCASE("accepted scores strictly increase") {
    LearningLog log;
    hillclimb_learn(data, start, {1, 8, Direction::Forward, 11}, &log);
    double last = initial;
    for (const auto& e : log.events()) {
      CHECK(e.run == std::optional<std::size_t>(0));
      if (!e.accepted) continue;
      CHECK(e.after > last);
      CHECK(e.before == last);
      last = e.after;
    }
  }
}

TEST_CASE("learning_cap") {
  CHECK(learning_cap(flat_dataset(8)) == 160);
}

TEST_CASE("iterative learning") {
  SUBCASE("no improvement halves the threshold down to zero") {
    const auto data = flat_dataset(8);
    const auto r = iterative_learn(data, 25, 8, 1);
    CHECK(r.iterations == 3);
    CHECK(r.heuristic == r.initial_heuristic);
    CHECK(r.bands == BandSet::uniform(data, sakoe_chiba(8, 25)));
  }
  SUBCASE("score is at least the initial one and logs are per-run monotone") {
    synth::Rng rng(83);
    for (int trial = 0; trial < 4; ++trial) {
      const auto data = synth::random_dataset(rng, 2 + trial % 2, 3, 10, 1.0);
      LearningLog log;
      const auto r = iterative_learn(data, 10, 5, trial, &log);
      CHECK(r.heuristic >= r.initial_heuristic);
      CHECK(r.heuristic == doctest::Approx(evaluate(data, r.bands)).epsilon(1e-12));
      std::map<std::size_t, double> last;
      for (const auto& e : log.events()) {
        if (!e.accepted || !e.run) continue;
        auto it = last.find(*e.run);
        if (it != last.end()) CHECK(e.after > it->second);
        last[*e.run] = e.after;
      }
    }
  }
  SUBCASE("widens the band where one class is shifted") {
    synth::Rng rng(89);
    const auto data = synth::shifted_bump_dataset(rng, 5, 40, 5.0);
    const auto r = iterative_learn(data, 0, 20, 7);
    CHECK(r.heuristic > r.initial_heuristic);
    // Some width somewhere grew from the zero start.
    int widest = 0;
    for (Label c : data.classes()) {
      for (std::size_t i = 0; i < 40; ++i) widest = std::max(widest, r.bands.at(c)[i]);
    }
    CHECK(widest > 0);
  }
}

TEST_CASE("learn_best_band keeps the better of the two learners") {
  synth::Rng rng(97);
  const auto data = synth::sine_dataset(rng, 4, 16);
  LearningLog log(42);
  const auto r = learn_best_band(data, 50, 42, &log);
  CHECK(r.bound == 8);
  CHECK(r.heuristic == std::max(r.extraction_heuristic, r.iterative_heuristic));
  CHECK(r.heuristic == doctest::Approx(evaluate(data, r.bands)).epsilon(1e-12));
  CHECK((r.winner == Learner::Iterative) == (r.iterative_heuristic > r.extraction_heuristic));
  CHECK(r.window_percent <= 50);

  const auto again = learn_best_band(data, 50, 42);
  CHECK(again.bands == r.bands);

  std::ostringstream out;
  log.write_tsv(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# seed\t42");
  std::getline(in, line);
  CHECK(line == "step\trun\tphase\tstart\tend\tlabel\tbefore\tafter\taccepted");
  std::getline(in, line);
  CHECK(line.rfind("0\t-\textract:max\t-\t-\t-\t", 0) == 0);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 8);
  }
  CHECK(rows + 1 == log.events().size());
}

TEST_CASE("bound_cells rounds half up") {
  CHECK(bound_cells(10, 15) == 2);
  CHECK(bound_cells(64, 100) == 64);
  CHECK(bound_cells(64, 0) == 0);
}
