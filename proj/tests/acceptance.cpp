// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "blockdec/corpus.hpp"
#include "blockdec/decomp.hpp"
#include "blockdec/fixtures.hpp"
#include "blockdec/koszul.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace blockdec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Accumulates failures; keeps the first few messages.
struct Tally {
  int failures = 0;
  std::string first;

  void fail(const std::string& msg) {
    if (failures++ < 3) first += (first.empty() ? "" : "; ") + msg;
  }
  Outcome outcome(const std::string& summary) const {
    return {failures == 0, failures == 0 ? summary : summary + ", " + std::to_string(failures) + " failures: " + first};
  }
};

std::vector<BlockCount> dual_multiset(const GridShape& s, const std::vector<BlockCount>& in) {
  std::vector<Block> flat;
  for (const auto& bc : in)
    for (int i = 0; i < bc.multiplicity; ++i) flat.push_back(dual_block(s, bc.block));
  return block_multiset(flat);
}

bool same(const std::vector<BlockCount>& a, const std::vector<BlockCount>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const BlockCount& x, const BlockCount& y) {
    return x.block == y.block && x.multiplicity == y.multiplicity;
  });
}

std::string str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// ---- corpus --------------------------------------------------------------

struct Entry {
  GridModule module;
  bool oracle_positive = true;             // every summand is a block
  std::vector<BlockCount> truth;           // block sums only
};

GridShape random_shape(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(2, 3)(rng);
  for (;;) {
    std::vector<int> sizes(n);
    for (int& s : sizes) s = std::uniform_int_distribution<int>(1, 3)(rng);
    const int points = std::accumulate(sizes.begin(), sizes.end(), 1, std::multiplies<>());
    if (points >= 4) return GridShape(sizes);
  }
}

// Alternates scrambled block sums and scrambled random-interval sums,
// n in {2, 3}, axis lengths at most 3, at most six summands.
std::vector<Entry> make_corpus(int count, std::uint64_t seed, const PrimeField& f) {
  std::mt19937_64 rng(seed);
  std::vector<Entry> out;
  for (int i = 0; i < count; ++i) {
    const GridShape s = random_shape(rng);
    const int summands = std::uniform_int_distribution<int>(1, 6)(rng);
    const std::uint64_t sub = rng();
    Entry e;
    if (i % 2 == 0) {
      BlockSample b = random_block_sum(s, summands, sub, f);
      e.module = std::move(b.module);
      e.truth = std::move(b.truth);
    } else {
      IntervalSample iv = random_interval_sum(s, summands, sub, f);
      e.module = std::move(iv.module);
      for (const auto& pts : iv.intervals) e.oracle_positive = e.oracle_positive && is_block(s, pts);
    }
    out.push_back(std::move(e));
  }
  return out;
}

// Generic engine with reseeded retries, no criterion involved.
Decomposition generic_with_retries(const GridModule& m, std::uint64_t seed) {
  Decomposition d;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    d = generic_decomposition(m, 24, seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
    if (d.unsplit.empty()) break;
  }
  return d;
}

// ---- criteria ------------------------------------------------------------

Outcome criterion_ex37(const PrimeField& f) {
  const auto t0 = Clock::now();
  const GridModule m = fixture_ex37(f);
  Tally t;
  if (is_locally_block_decomposable(m)) t.fail("criterion passed");
  const auto cubes3 = enumerate_cubes(m.shape(), 3);
  if (cubes3.size() != 1) t.fail("expected one 3-cube");
  const auto h = homology_dims(f, koszul_complex(m, cubes3.front()));
  if (h != std::vector<int>{0, 0, 1, 0}) t.fail("3-cube homology " + str(h));
  for (const Cube& c : enumerate_cubes(m.shape(), 2))
    if (!exactness_flags(m, c).middle) t.fail("a 2-face is not middle exact");
  const auto end = end_basis(m).size();
  if (end != 1) t.fail("dim End = " + std::to_string(end));
  const double dt = seconds_since(t0);
  if (dt >= 1.0) t.fail("took " + std::to_string(dt) + " s");
  std::ostringstream os;
  os << "3-cube homology " << str(h) << ", dim End " << end << ", " << dt << " s";
  return t.outcome(os.str());
}

Outcome criterion_ex38(const PrimeField& f) {
  const auto t0 = Clock::now();
  const GridModule m = fixture_ex38(f);
  Tally t;
  const Cube front{{0, 0, 0}, {1, 1, 0}};
  // Worked by hand from the support: the two faces orthogonal to axis 2 and
  // the two orthogonal to axis 0 each carry one cycle in degree 1.
  const std::vector<Cube> hand = {{{0, 0, 0}, {0, 1, 1}}, {{1, 0, 0}, {1, 1, 1}},
                                  {{0, 0, 0}, {1, 1, 0}}, {{0, 0, 1}, {1, 1, 1}}};
  std::vector<Cube> failing;
  for (const Cube& c : enumerate_cubes(m.shape(), 2)) {
    const auto h = homology_dims(f, koszul_complex(m, c));
    if (c == front && h != std::vector<int>{0, 1, 0}) t.fail("front face homology " + str(h));
    if (h[1] != 0) failing.push_back(c);
  }
  auto has = [&](const std::vector<Cube>& v, const Cube& c) { return std::find(v.begin(), v.end(), c) != v.end(); };
  bool matches_hand = failing.size() == hand.size();
  for (const Cube& c : hand) matches_hand = matches_hand && has(failing, c);
  if (!matches_hand) t.fail("failing faces differ from the hand computation");
  // Required: the front face is the only failing face.
  if (failing.size() != 1 || !(failing.front() == front))
    t.fail("2-middle exactness fails on " + std::to_string(failing.size()) +
           " faces (front, back, left, right), not only on the front face");
  const auto h3 = homology_dims(f, koszul_complex(m, enumerate_cubes(m.shape(), 3).front()));
  if (h3 != std::vector<int>{0, 0, 0, 0}) t.fail("3-cube homology " + str(h3));
  const double dt = seconds_since(t0);
  if (dt >= 1.0) t.fail("took " + std::to_string(dt) + " s");
  std::ostringstream os;
  os << "front face (0,1,0), " << failing.size() << " failing faces, 3-cube homology " << str(h3) << ", " << dt
     << " s";
  return t.outcome(os.str());
}

Outcome criterion_blocks(const PrimeField& f) {
  const auto t0 = Clock::now();
  Tally t;
  int count = 0;
  const std::vector<std::vector<int>> shapes = {{2, 2}, {3, 3}, {2, 2, 2}, {3, 2, 2}, {2, 2, 2, 2}};
  for (const auto& sz : shapes) {
    const GridShape s(sz);
    for (const Block& b : enumerate_blocks(s)) {
      ++count;
      if (!is_locally_block_decomposable(block_module(s, b, f))) t.fail("block " + str(b.lo) + "-" + str(b.hi));
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 30.0) t.fail("took " + std::to_string(dt) + " s");
  std::ostringstream os;
  os << count << " blocks on 5 shapes, " << dt << " s";
  return t.outcome(os.str());
}

Outcome criterion_equivalence(const std::vector<Entry>& corpus) {
  const auto t0 = Clock::now();
  Tally t;
  int positive = 0, incomplete = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Entry& e = corpus[i];
    const bool criterion = is_locally_block_decomposable(e.module);
    const Decomposition d = generic_with_retries(e.module, 1000 + i);
    if (!d.unsplit.empty()) {
      ++incomplete;
      t.fail("module " + std::to_string(i) + " incomplete");
      continue;
    }
    const bool generic = d.non_block.empty();
    positive += criterion ? 1 : 0;
    if (criterion != generic) t.fail("module " + std::to_string(i) + " criterion/generic mismatch");
    if (criterion != e.oracle_positive) t.fail("module " + std::to_string(i) + " disagrees with the summand oracle");
  }
  const double dt = seconds_since(t0);
  if (dt >= 300.0) t.fail("took " + std::to_string(dt) + " s");
  std::ostringstream os;
  os << corpus.size() << " modules (" << positive << " positive), " << incomplete << " incomplete, " << dt << " s";
  return t.outcome(os.str());
}

Outcome criterion_round_trip(int count, std::uint64_t seed, const PrimeField& f) {
  const auto t0 = Clock::now();
  Tally t;
  std::mt19937_64 rng(seed);
  int decompositions = 0;
  for (int i = 0; i < count; ++i) {
    const GridShape s = random_shape(rng);
    const BlockSample b = random_block_sum(s, std::uniform_int_distribution<int>(1, 6)(rng), rng(), f);
    for (const Method method : {Method::generic, Method::constructive}) {
      DecomposeOptions opt;
      opt.method = method;
      opt.seed = static_cast<std::uint64_t>(i) + 1;
      ++decompositions;
      try {
        const DecomposeResult r = decompose_blocks(b.module, opt);
        if (r.status != DecomposeStatus::decomposed || !same(r.decomposition.blocks, b.truth))
          t.fail("instance " + std::to_string(i) + " " + to_string(method));
      } catch (const InternalInconsistency& ex) {
        t.fail("instance " + std::to_string(i) + " " + to_string(method) + ": " + ex.what());
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 300.0) t.fail("took " + std::to_string(dt) + " s");
  std::ostringstream os;
  os << count << " block sums, " << decompositions << " decompositions, " << dt << " s";
  return t.outcome(os.str());
}

Outcome criterion_monotonicity(const std::vector<Entry>& corpus) {
  Tally t;
  int nonvacuous = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto profile = exactness_profile(corpus[i].module);
    for (std::size_t a = 0; a < profile.size(); ++a) {
      if (!profile[a].exact()) continue;
      if (a + 1 < profile.size()) ++nonvacuous;
      for (std::size_t b = a + 1; b < profile.size(); ++b)
        if (!profile[b].exact()) t.fail("module " + std::to_string(i) + " level " + std::to_string(profile[b].k));
    }
  }
  return t.outcome(std::to_string(corpus.size()) + " profiles, " + std::to_string(nonvacuous) +
                   " exact levels with a higher level to check");
}

Outcome criterion_koszul(const PrimeField& f) {
  Tally t;
  std::mt19937_64 rng(77);
  int complexes = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = i % 2 == 0 ? 3 : 4;
    const GridShape s(std::vector<int>(n, 2));
    GridModule m = random_interval_sum(s, std::uniform_int_distribution<int>(1, 5)(rng), rng(), f).module;
    if (n == 3 && i % 4 == 0) m = scramble(direct_sum(m, fixture_ex37(f)), rng());
    if (i % 3 == 0) m = dual(m);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (const Cube& c : enumerate_cubes(s, n)) {
      std::vector<int> reference;
      std::vector<int> perm = order;
      do {
        const KoszulComplex kc = koszul_complex(m, c, perm);
        ++complexes;
        if (!is_complex(f, kc)) t.fail("d∘d != 0 on module " + std::to_string(i));
        const auto h = homology_dims(f, kc);
        if (reference.empty())
          reference = h;
        else if (h != reference)
          t.fail("order-dependent homology on module " + std::to_string(i));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return t.outcome("100 modules, " + std::to_string(complexes) + " complexes over all axis orders");
}

Outcome criterion_two_parameter(const std::vector<Entry>& corpus) {
  Tally t;
  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Entry& e = corpus[i];
    if (e.module.shape().ndim() != 2) continue;
    ++checked;
    bool level2 = true;
    for (const Cube& c : enumerate_cubes(e.module.shape(), 2)) level2 = level2 && exactness_flags(e.module, c).middle;
    const bool full = is_locally_block_decomposable(e.module);
    if (level2 != full) t.fail("module " + std::to_string(i) + " level 2 vs full");
    if (full != e.oracle_positive) t.fail("module " + std::to_string(i) + " vs oracle");
  }
  return t.outcome(std::to_string(checked) + " two-parameter modules");
}

Outcome criterion_duality(const std::vector<Entry>& corpus) {
  Tally t;
  int checked = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Entry& e = corpus[i];
    DecomposeOptions opt;
    opt.seed = 500 + i;
    const DecomposeResult r = decompose_blocks(e.module, opt);
    if (r.status == DecomposeStatus::failure) continue;
    ++checked;
    const DecomposeResult rd = decompose_blocks(dual(e.module), opt);
    if (r.status != DecomposeStatus::decomposed || rd.status != DecomposeStatus::decomposed) {
      t.fail("module " + std::to_string(i) + " incomplete");
      continue;
    }
    if (!same(rd.decomposition.blocks, dual_multiset(e.module.shape(), r.decomposition.blocks)))
      t.fail("module " + std::to_string(i));
  }
  return t.outcome(std::to_string(checked) + " criterion-positive modules");
}

// The fixture verdicts that the characteristic probe compares.
std::vector<int> fixture_verdicts(const PrimeField& f) {
  std::vector<int> out;
  for (const std::string& name : fixture_names()) {
    const GridModule m = *fixture(name, f);
    const auto w = local_block_witness(m);
    out.push_back(w ? w->degree : 0);
    DecomposeOptions opt;
    out.push_back(static_cast<int>(decompose_blocks(m, opt).status));
  }
  return out;
}

struct Suite {
  std::vector<Outcome> first_five;
  std::vector<Entry> corpus;
};

Suite run_first_five(const PrimeField& f, bool print) {
  Suite s;
  s.corpus = make_corpus(500, 2024, f);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> items = {
      {"1 counterexample with a 3-cube witness", [&] { return criterion_ex37(f); }},
      {"2 interval that fails on one face", [&] { return criterion_ex38(f); }},
      {"3 block modules are middle exact", [&] { return criterion_blocks(f); }},
      {"4 criterion agrees with the generic engine", [&] { return criterion_equivalence(s.corpus); }},
      {"5 block sums decompose to their ground truth", [&] { return criterion_round_trip(200, 99, f); }},
  };
  for (const auto& [name, fn] : items) {
    s.first_five.push_back(fn());
    if (print)
      std::printf("%s criterion %s: %s\n", s.first_five.back().pass ? "PASS" : "FAIL", name.c_str(),
                  s.first_five.back().detail.c_str());
    std::fflush(stdout);
  }
  return s;
}

}  // namespace

int main() {
  const PrimeField f;
  bool all = true;
  auto report = [&](const std::string& name, const Outcome& o) {
    all = all && o.pass;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  };

  const Suite main_suite = run_first_five(f, true);
  for (const auto& o : main_suite.first_five) all = all && o.pass;
  report("6 exactness is monotone in k", criterion_monotonicity(main_suite.corpus));
  report("7 Koszul complexes are well defined", criterion_koszul(f));
  report("8 two-parameter consistency", criterion_two_parameter(main_suite.corpus));
  report("9 decomposition commutes with duality", criterion_duality(main_suite.corpus));

  const PrimeField two(2);
  const Suite probe = run_first_five(two, false);
  Tally t;
  std::string verdicts;
  for (std::size_t i = 0; i < probe.first_five.size(); ++i) {
    verdicts += probe.first_five[i].pass ? "P" : "F";
    if (probe.first_five[i].pass != main_suite.first_five[i].pass)
      t.fail("criterion " + std::to_string(i + 1) + " changes verdict (" + probe.first_five[i].detail + ")");
  }
  if (fixture_verdicts(f) != fixture_verdicts(two)) t.fail("fixture verdicts differ between characteristics");
  report("10 criteria 1-5 give the same verdicts at p = 2",
         t.outcome("verdicts at p = 2: " + verdicts + ", fixture verdicts identical"));

  return all ? 0 : 1;
}
