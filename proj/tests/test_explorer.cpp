#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include <nsg/explorer.hpp>

#include "oracles.hpp"

using namespace nsg;
using namespace nsg::explore;

namespace {

  constexpr std::size_t walk_size  = window_for(45);
  constexpr int         walk_depth = 45;

  // Pair counts dec[x] = #{a <= b : a + b = x, a, b in S} from membership alone.
  std::vector<int> pair_counts(NumericalSemigroup const& s, std::size_t size) {
    std::vector<int> out(size, 0);
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t a = 0; 2 * a <= x; ++a) {
        out[x] += s.contains(static_cast<integer>(a)) && s.contains(static_cast<integer>(x - a));
      }
    }
    return out;
  }

  // Random root-to-node walks; calls f on every node passed, or only on
  // the last node of each walk.
  template <typename F>
  void random_walks(int walks, std::uint64_t seed, bool endpoints_only, F&& f) {
    std::mt19937_64                 rng(seed);
    std::vector<Frame<walk_size>>   path(walk_depth + 1);
    for (int w = 0; w < walks; ++w) {
      init_root(path[0]);
      int const target = std::uniform_int_distribution<int>(1, walk_depth)(rng);
      int       d      = 0;
      for (; d < target; ++d) {
        auto const&  node = path[d];
        std::uint64_t mask = generator_mask(node);
        if (mask == 0) {
          break;
        }
        std::vector<int> choices;
        for (int i = 0; i < node.node.multiplicity; ++i) {
          if (mask >> i & 1) {
            choices.push_back(node.node.scan_start() + i);
          }
        }
        int const x = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
        int left = node.node.left_primitives;
        for (int y = node.node.scan_start(); y < x; ++y) {
          left += node.dec[y] == 1;
        }
        remove_generator(node, path[d + 1], x, left);
        if (!endpoints_only) {
          f(path[d + 1]);
        }
      }
      if (endpoints_only) {
        f(path[d]);
      }
    }
  }

  // Records every q = 4 node with W_0 = 0; gives determinism tests a
  // nonempty, order-sensitive result.
  struct ZeroPolicy {
    using Result = RecordList;
    bool wants(NodeSummary const& s) const noexcept {
      return s.q() == 4;
    }
    template <std::size_t Size>
    void visit(Frame<Size> const& f, std::uint64_t mask, Result& out) const {
      if (w0_from_counters(f.node, mask) == 0) {
        out.push_back(make_record(f));
      }
    }
    static void merge(Result& into, Result&& from) {
      HuntPolicy::merge(into, std::move(from));
    }
    static void finalize(Result& r) {
      HuntPolicy::finalize(r);
    }
    std::string tag() const {
      return "zero";
    }
  };

  std::string temp_path(std::string const& name) {
    return (std::filesystem::temp_directory_path()
            / (name + "-" + std::to_string(::getpid()) + ".bin"))
        .string();
  }

}  // namespace

TEST(Census, MatchesGenerateAndTest) {
  auto const oracle_counts = oracle::census(15);
  ExploreOptions opts;
  opts.threads = 2;
  EXPECT_EQ(census(15, opts), oracle_counts);
  EXPECT_EQ(oracle_counts,
            (std::vector<std::uint64_t>{1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, 1001,
                                        1693, 2857}));
}

TEST(Census, KnownValueAtTwenty) {
  EXPECT_EQ(census(20).back(), 37396u);
}

TEST(Census, ThreadCountsAgree) {
  ExploreOptions one, many;
  many.threads = 4;
  EXPECT_EQ(census(24, one), census(24, many));
  ExploreOptions split;
  split.threads     = 3;
  split.split_genus = 5;
  EXPECT_EQ(census(20, split), census(20, one));
}

TEST(Census, SmallAndBoundaryGenera) {
  EXPECT_EQ(census(0), std::vector<std::uint64_t>{1});
  EXPECT_EQ(census(1), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_THROW(census(-1), precondition_error);
  EXPECT_THROW(census(max_genus + 1), precondition_error);
}

TEST(Frames, IncrementalCountersMatchRecomputation) {
  int checked_nodes = 0;
  random_walks(10'000, 99, true, [&](Frame<walk_size> const& f) {
    ++checked_nodes;
    auto const s    = materialize(f);
    auto const r    = wilf_report(s);
    auto const mask = generator_mask(f);
    ASSERT_EQ(r.genus, f.node.genus);
    ASSERT_EQ(r.c, f.node.conductor);
    ASSERT_EQ(r.m, f.node.multiplicity);
    ASSERT_EQ(r.p_left, f.node.left_primitives);
    ASSERT_EQ(r.q, f.node.q());
    ASSERT_EQ(r.rho, f.node.rho());
    ASSERT_EQ(r.pq_count, std::popcount(mask));
    ASSERT_EQ(r.w0, w0_from_counters(f.node, mask));
    // Prefilters never reject a node they should report.
    if (r.w0 < 0) {
      ASSERT_TRUE((HuntPolicy{{}, true}.wants(f.node)));
    }
    if (r.q == 4 && r.w0 < -choose3(r.p_left)) {
      ASSERT_TRUE(BoundPolicy{}.wants(f.node));
    }
  });
  EXPECT_EQ(checked_nodes, 10'000);
}

TEST(Frames, SplitCountsMatchPairOracle) {
  int seen = 0;
  random_walks(300, 5, false, [&](Frame<walk_size> const& f) {
    auto const s     = materialize(f);
    auto const brute = pair_counts(s, 3 * f.node.genus + 1);
    for (std::size_t x = 0; x < brute.size(); ++x) {
      ASSERT_EQ(int(f.dec[x]), brute[x]) << x;
    }
    auto const gaps = gaps_of(f);
    auto const rebuilt = frame_from_gaps<walk_size>(gaps);
    ASSERT_EQ(rebuilt.node, f.node);
    for (std::size_t x = 0; x < brute.size(); ++x) {
      ASSERT_EQ(rebuilt.dec[x], f.dec[x]);
    }
    ++seen;
  });
  EXPECT_GT(seen, 1000);
}

TEST(Frames, GapValidation) {
  std::vector<int> bad{2};  // 1 + 1 = 2 missing
  EXPECT_THROW(frame_from_gaps<96>(bad), invalid_spec);
  std::vector<int> out_of_range{200};
  EXPECT_THROW(frame_from_gaps<96>(out_of_range), invalid_spec);
}

TEST(Frames, MaterializeLeafWithoutLeftPrimitives) {
  std::vector<int> gaps{1, 2, 3, 4};
  auto const       f = frame_from_gaps<96>(gaps);
  auto const       s = materialize(f);
  EXPECT_EQ(canonical_label(s), "<5,6,7,8,9>");
  EXPECT_EQ(s.genus(), 4);
}

TEST(Node, RemoveUndoRestoresChecksum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    ExplorationNode node(30);
    std::vector<std::pair<ExplorationNode::Undo, std::uint64_t>> stack;
    int const depth = std::uniform_int_distribution<int>(1, 30)(rng);
    for (int d = 0; d < depth; ++d) {
      auto const gens = node.effective_generators();
      if (gens.empty()) {
        break;
      }
      std::uint64_t const before = node.checksum();
      auto const          x      = gens[std::uniform_int_distribution<std::size_t>(0, gens.size() - 1)(rng)];
      stack.emplace_back(node.remove(x), before);
      auto const s = node.to_semigroup();
      ASSERT_EQ(s.genus(), node.summary().genus);
      ASSERT_EQ(node.gaps().size(), static_cast<std::size_t>(s.genus()));
      auto const brute = pair_counts(s, node.split_counts().size());
      for (std::size_t y = 0; y < brute.size(); ++y) {
        ASSERT_EQ(int(node.split_counts()[y]), brute[y]);
      }
    }
    while (!stack.empty()) {
      node.undo(stack.back().first);
      ASSERT_EQ(node.checksum(), stack.back().second);
      stack.pop_back();
    }
    ASSERT_EQ(node.checksum(), ExplorationNode(30).checksum());
  }
}

TEST(Node, ChildrenEnumerateTheTree) {
  std::vector<std::uint64_t>                   counts(11, 0);
  std::function<void(ExplorationNode const&)> rec = [&](ExplorationNode const& n) {
    ++counts[n.summary().genus];
    for (auto const& child : n.children()) {
      rec(child);
    }
  };
  rec(ExplorationNode(10));
  EXPECT_EQ(counts, oracle::census(10));
}

TEST(Node, RejectsNonGenerators) {
  ExplorationNode node(5);
  EXPECT_THROW(node.remove(2), precondition_error);  // not effective in N
  node.remove(1);
  EXPECT_EQ(node.effective_generators(), (std::vector<int>{2, 3}));
  EXPECT_THROW(node.remove(4), precondition_error);
  EXPECT_THROW(ExplorationNode(-1), precondition_error);
}

TEST(Hunt, EmptyBelowGenusThirty) {
  ExploreOptions opts;
  opts.threads = 2;
  EXPECT_TRUE(hunt_near_misses(30, {}, opts).empty());
}

TEST(Hunt, ExhaustiveAgreesWithFiltered) {
  auto const fast = explore::explore(28, HuntPolicy{{}, false});
  auto const slow = explore::explore(28, HuntPolicy{{}, true});
  EXPECT_EQ(fast.result, slow.result);
  EXPECT_EQ(fast.counts, slow.counts);
}

TEST(Hunt, FiltersAndTags) {
  HuntFilters f;
  f.q     = 4;
  f.m_min = 10;
  f.m_max = 20;
  HuntPolicy p{f, false};
  EXPECT_EQ(p.tag(), "hunt;q=4;m=10..20");
  NodeSummary s{43, 56, 14, 3};
  EXPECT_TRUE(p.wants(s));
  s.multiplicity = 9;
  EXPECT_FALSE(p.wants(s));
  EXPECT_FALSE((HuntPolicy{{}, false}.wants(NodeSummary{3, 6, 2, 0})));  // q = 3
}

TEST(Hunt, FrameOfKnownNearMiss) {
  auto const s = from_generators({{14, 22, 23}, 56});
  std::vector<int> gaps;
  for (int x = 1; x < 56; ++x) {
    if (!s.contains(x)) {
      gaps.push_back(x);
    }
  }
  auto const f    = frame_from_gaps<window_for(43)>(gaps);
  auto const mask = generator_mask(f);
  EXPECT_EQ(w0_from_counters(f.node, mask), -1);
  RecordList out;
  HuntPolicy{}.visit(f, mask, out);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].label, "<14,22,23>_56");
  EXPECT_EQ(out[0].report.w, 35);
  RecordList bound;
  BoundPolicy{}.visit(f, mask, bound);
  EXPECT_TRUE(bound.empty());  // W_0 = -C(3,3) is tight, not a violation
  auto const flags = minimizer_flags(f);
  EXPECT_TRUE(flags.left_in_first_slice);
  EXPECT_TRUE(flags.first_apery_b3);
  EXPECT_TRUE(flags.apery_shape);
}

TEST(Determinism, RecordsIdenticalAcrossThreadCounts) {
  ExploreOptions one, many;
  many.threads     = 4;
  many.split_genus = 8;
  auto const a = explore::explore(20, ZeroPolicy{}, one);
  auto const b = explore::explore(20, ZeroPolicy{}, many);
  EXPECT_FALSE(a.result.empty());
  EXPECT_EQ(a.result, b.result);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_TRUE(std::is_sorted(a.result.begin(), a.result.end(), record_order));
}

TEST(Bound, NoViolationsToTwentyFive) {
  ExploreOptions opts;
  opts.threads = 2;
  EXPECT_TRUE(scan_conjecture_bound(25, opts).empty());
}

TEST(Minima, MatchesBruteForce) {
  int const g_max = 16;
  struct Brute {
    std::int64_t  minimum    = std::numeric_limits<std::int64_t>::max();
    std::uint64_t semigroups = 0;
    std::uint64_t minimizers = 0;
  };
  std::map<std::pair<int, int>, Brute> brute;
  oracle::for_each_semigroup(g_max, [&](oracle::Membership const& m, int) {
    auto const o = oracle::report(m);
    if (o.q != 4) {
      return;
    }
    auto& e = brute[{int(o.m), int(o.pl)}];
    ++e.semigroups;
    std::int64_t const v = o.w0 - o.rho;
    if (v < e.minimum) {
      e.minimum    = v;
      e.minimizers = 1;
    } else if (v == e.minimum) {
      ++e.minimizers;
    }
  });
  ExploreOptions one, many;
  many.threads     = 3;
  many.split_genus = 6;
  auto const table = scan_conjecture_minima(g_max, std::nullopt, one);
  auto const again = scan_conjecture_minima(g_max, std::nullopt, many);
  ASSERT_EQ(table.size(), brute.size());
  for (auto const& [key, e] : table) {
    auto const& b = brute.at(key);
    EXPECT_EQ(e.minimum, b.minimum);
    EXPECT_EQ(e.semigroups, b.semigroups);
    EXPECT_EQ(e.minimizers, b.minimizers);
    auto const& e2 = again.at(key);
    EXPECT_EQ(e2.minimum, e.minimum);
    EXPECT_EQ(e2.minimizers, e.minimizers);
    EXPECT_EQ(e2.flagged_total, e.flagged_total);
    EXPECT_EQ(e2.flag_counts, e.flag_counts);
    EXPECT_EQ(e2.example, e.example);
  }
  auto const only = scan_conjecture_minima(g_max, 7);
  for (auto const& [key, e] : only) {
    EXPECT_EQ(e.m, 7);
  }
  EXPECT_FALSE(only.empty());
}

TEST(Checkpoint, EncodeDecodeRoundTrip) {
  Checkpoint cp;
  cp.g_max   = 30;
  cp.split   = 10;
  cp.tag     = "hunt;q=any;m=1..1048576";
  cp.counts  = std::vector<std::uint64_t>(31, 7);
  cp.records = {"<14,22,23>_56"};
  cp.pending = {{1, 2, 3}, {1, 3, 5, 7}};
  auto const back = Checkpoint::decode(cp.encode());
  EXPECT_EQ(back.g_max, cp.g_max);
  EXPECT_EQ(back.split, cp.split);
  EXPECT_EQ(back.tag, cp.tag);
  EXPECT_EQ(back.counts, cp.counts);
  EXPECT_EQ(back.records, cp.records);
  EXPECT_EQ(back.pending, cp.pending);

  auto bytes = cp.encode();
  EXPECT_THROW(Checkpoint::decode(bytes.substr(0, bytes.size() - 1)), checkpoint_error);
  EXPECT_THROW(Checkpoint::decode(bytes + "x"), checkpoint_error);
  bytes[0] = 'X';
  EXPECT_THROW(Checkpoint::decode(bytes), checkpoint_error);
  EXPECT_THROW(read_checkpoint_file("/nonexistent/nsg.ckpt"), checkpoint_error);
}

TEST(Checkpoint, ResumeFromPartialRunMatchesFullRun) {
  int const        g_max = 22;
  int const        split = 10;
  ZeroPolicy const policy;
  ExploreOptions   plain;
  plain.split_genus = split;
  auto const full   = explore::explore(g_max, policy, plain);

  // Walk the prefix, finish half of the subtrees by hand, save the rest.
  constexpr std::size_t      size = window_for(g_max);
  std::vector<std::uint64_t> counts(g_max + 1, 0);
  RecordList                 records;
  std::vector<Frame<size>>   tasks;
  Walker<size, ZeroPolicy>   prefix(g_max, policy, counts, records);
  prefix.set_split(split, &tasks);
  prefix.run_from_root();
  ASSERT_GT(tasks.size(), 4u);
  Walker<size, ZeroPolicy> sub(g_max, policy, counts, records);
  Checkpoint               cp;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (i % 2 == 0) {
      sub.run_subtree(tasks[i]);
    } else {
      cp.pending.push_back(gaps_of(tasks[i]));
    }
  }
  cp.g_max  = g_max;
  cp.split  = split;
  cp.tag    = policy.tag();
  cp.counts = counts;
  for (auto const& r : records) {
    cp.records.push_back(r.label);
  }
  auto const path = temp_path("nsg-resume");
  write_checkpoint_file(path, cp);

  ExploreOptions resume;
  resume.resume_path = path;
  resume.threads     = 3;
  auto const resumed = explore::explore(g_max, policy, resume);
  EXPECT_EQ(resumed.counts, full.counts);
  EXPECT_EQ(resumed.result, full.result);

  // A checkpoint from another scan is refused.
  EXPECT_THROW(explore::explore(g_max, HuntPolicy{}, resume), checkpoint_error);
  EXPECT_THROW(explore::explore(g_max + 1, policy, resume), checkpoint_error);
  std::filesystem::remove(path);
}

TEST(Checkpoint, PeriodicWritesAndFinalState) {
  auto const     path = temp_path("nsg-periodic");
  ExploreOptions opts;
  opts.checkpoint_path     = path;
  opts.checkpoint_interval = std::chrono::milliseconds(1);
  opts.threads             = 2;
  auto const out           = explore::explore(24, ZeroPolicy{}, opts);
  auto const cp            = read_checkpoint_file(path);
  EXPECT_TRUE(cp.pending.empty());
  EXPECT_EQ(cp.counts, out.counts);
  EXPECT_EQ(cp.records.size(), out.result.size());
  // Resuming a finished scan reproduces it without further work.
  ExploreOptions resume;
  resume.resume_path = path;
  auto const again   = explore::explore(24, ZeroPolicy{}, resume);
  EXPECT_EQ(again.counts, out.counts);
  EXPECT_EQ(again.result, out.result);
  std::filesystem::remove(path);
}

TEST(Checkpoint, MinimaRefusesCheckpoints) {
  ExploreOptions opts;
  opts.checkpoint_path = temp_path("nsg-minima");
  EXPECT_THROW(scan_conjecture_minima(10, std::nullopt, opts), precondition_error);
}
