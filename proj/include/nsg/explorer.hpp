#ifndef NSG_EXPLORER_HPP_
#define NSG_EXPLORER_HPP_

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#if defined(__AVX2__) || defined(__SSE2__)
#include <immintrin.h>
#endif

#include "error.hpp"
#include "io.hpp"
#include "semigroup.hpp"
#include "wilf.hpp"

// Depth-first enumeration of the tree of numerical semigroups. A node is S
// with genus g; its children are S \ {x} for every primitive x > F(S).
//
// Each node carries split counts: dec[x] is the number of pairs {a, b} with
// a <= b, a + b = x and a, b in S. Then x is in S iff dec[x] > 0, and x > 0 is
// primitive iff dec[x] == 1 (the only pair being {0, x}).

namespace nsg::explore {

  inline constexpr int max_genus = 63;  // keeps m <= 64, one bit per candidate

  // What is known about a node before its split counts are materialized.
  struct NodeSummary {
    int genus           = 0;
    int conductor       = 0;
    int multiplicity    = 1;
    int left_primitives = 0;  // |P ∩ L|

    int q() const noexcept {
      return conductor == 0 ? 0 : (conductor + multiplicity - 1) / multiplicity;
    }
    int rho() const noexcept {
      return q() * multiplicity - conductor;
    }
    int left_count() const noexcept {
      return conductor - genus;
    }
    // First candidate for an effective generator (N has c = 0 but F = -1).
    int scan_start() const noexcept {
      return conductor == 0 ? 1 : conductor;
    }

    friend bool operator==(NodeSummary const&, NodeSummary const&) = default;
  };

  // Smallest supported window holding [0, 3 g_max] plus a 64-byte scan.
  constexpr std::size_t window_for(int g_max) noexcept {
    std::size_t const need
        = std::max<std::size_t>(3 * std::size_t(g_max) + 1, 2 * std::size_t(g_max) + 64);
    for (std::size_t size : {96u, 128u, 160u, 192u}) {
      if (size >= need) {
        return size;
      }
    }
    return 0;
  }

  template <std::size_t Size>
  struct alignas(64) Frame {
    std::array<std::uint8_t, Size> dec;
    NodeSummary                    node;
  };

  template <std::size_t Size>
  void init_root(Frame<Size>& f) noexcept {
    for (std::size_t x = 0; x < Size; ++x) {
      f.dec[x] = static_cast<std::uint8_t>(x / 2 + 1);
    }
    f.node = NodeSummary{};
  }

  // Bit i is set iff scan_start + i is primitive, for i < m.
  template <std::size_t Size>
  std::uint64_t generator_mask(Frame<Size> const& f) noexcept {
    std::uint8_t const* p = f.dec.data() + f.node.scan_start();
    int const           m = f.node.multiplicity;
#if defined(__AVX2__)
    __m256i const one = _mm256_set1_epi8(1);
    std::uint64_t mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(
        _mm256_cmpeq_epi8(_mm256_loadu_si256(reinterpret_cast<__m256i const*>(p)), one)));
    if (m > 32) {
      mask |= std::uint64_t(static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(
                  _mm256_loadu_si256(reinterpret_cast<__m256i const*>(p + 32)), one))))
              << 32;
    }
#elif defined(__SSE2__)
    __m128i const one  = _mm_set1_epi8(1);
    std::uint64_t mask = 0;
    for (int k = 0; k < 4 && 16 * k < m; ++k) {
      mask |= std::uint64_t(static_cast<std::uint16_t>(_mm_movemask_epi8(_mm_cmpeq_epi8(
                  _mm_loadu_si128(reinterpret_cast<__m128i const*>(p + 16 * k)), one))))
              << (16 * k);
    }
#else
    std::uint64_t mask = 0;
    for (int i = 0; i < m; ++i) {
      mask |= std::uint64_t(p[i] == 1) << i;
    }
#endif
    return m >= 64 ? mask : mask & ((std::uint64_t(1) << m) - 1);
  }

  // dst = src \ {x}; x must be an effective generator of src.
  template <std::size_t Size>
  void remove_generator(Frame<Size> const& src,
                        Frame<Size>&       dst,
                        int                x,
                        int                left_primitives) noexcept {
    std::memcpy(dst.dec.data(), src.dec.data(), Size);
    std::uint8_t* __restrict out = dst.dec.data();
    std::uint8_t const* __restrict in = src.dec.data();
    for (std::size_t i = static_cast<std::size_t>(x); i < Size; ++i) {
      out[i] -= in[i - x] != 0;
    }
    dst.node.genus           = src.node.genus + 1;
    dst.node.conductor       = x + 1;
    dst.node.multiplicity    = x == src.node.multiplicity ? x + 1 : src.node.multiplicity;
    dst.node.left_primitives = left_primitives;
  }

  // Rebuilds split counts from a gap set (gaps strictly positive).
  template <std::size_t Size>
  Frame<Size> frame_from_gaps(std::span<int const> gaps) {
    std::array<std::uint8_t, Size> member;
    member.fill(1);
    int c = 0;
    for (int x : gaps) {
      if (x <= 0 || static_cast<std::size_t>(x) >= Size) {
        throw invalid_spec("gap out of range for the explorer window");
      }
      member[x] = 0;
      c = std::max(c, x + 1);
    }
    Frame<Size> f;
    for (std::size_t x = 0; x < Size; ++x) {
      int count = 0;
      for (std::size_t a = 0; 2 * a <= x; ++a) {
        count += member[a] && member[x - a];
      }
      f.dec[x] = static_cast<std::uint8_t>(count);
    }
    for (std::size_t a = 1; a < Size; ++a) {
      for (std::size_t b = a; a + b < Size; ++b) {
        if (member[a] && member[b] && !member[a + b]) {
          throw invalid_spec("gap set is not the complement of a semigroup");
        }
      }
    }
    f.node.genus     = static_cast<int>(gaps.size());
    f.node.conductor = c;
    f.node.multiplicity = 1;
    while (!member[f.node.multiplicity]) {
      ++f.node.multiplicity;
    }
    f.node.left_primitives = 0;
    for (int x = 1; x < c; ++x) {
      f.node.left_primitives += f.dec[x] == 1;
    }
    return f;
  }

  template <std::size_t Size>
  std::vector<int> gaps_of(Frame<Size> const& f) {
    std::vector<int> out;
    for (int x = 1; x < f.node.conductor; ++x) {
      if (f.dec[x] == 0) {
        out.push_back(x);
      }
    }
    return out;
  }

  // W_0 from the incremental counters; `mask` is generator_mask(f).
  inline std::int64_t w0_from_counters(NodeSummary const& s, std::uint64_t mask) noexcept {
    if (s.conductor == 0) {
      return 0;
    }
    std::int64_t const pq = std::popcount(mask);
    return std::int64_t(s.left_primitives) * s.left_count()
           - std::int64_t(s.q()) * (s.multiplicity - pq) + s.rho();
  }

  // The node as a core semigroup, in "<P ∩ L>_c" form when P ∩ L is nonempty.
  template <std::size_t Size>
  NumericalSemigroup materialize(Frame<Size> const& f) {
    GeneratorSpec spec;
    for (int x = 1; x < f.node.conductor; ++x) {
      if (f.dec[x] == 1) {
        spec.generators.push_back(x);
      }
    }
    if (!spec.generators.empty()) {
      spec.truncation = f.node.conductor;
      return from_generators(spec);
    }
    // S = {0} ∪ [c, ∞[: every element of [c, 2c) is primitive.
    int const c = std::max(f.node.conductor, 1);
    for (int x = c; x < 2 * c; ++x) {
      spec.generators.push_back(x);
    }
    return from_generators(spec);
  }

  // A standalone node with an in-place, reversible removal step. The hot
  // enumeration uses Frame and Walker; this type serves single-node queries.
  class ExplorationNode {
   public:
    struct Undo {
      int         generator;
      NodeSummary before;
    };

    // N, with split counts over [0, 3 g_max].
    explicit ExplorationNode(int g_max)
        : _g_max(g_max), _dec(static_cast<std::size_t>(std::max(3 * g_max + 1, 2))) {
      if (g_max < 0) {
        throw precondition_error("g_max must be nonnegative");
      }
      for (std::size_t x = 0; x < _dec.size(); ++x) {
        _dec[x] = static_cast<std::uint8_t>(std::min<std::size_t>(x / 2 + 1, 255));
      }
    }

    NodeSummary const& summary() const noexcept {
      return _node;
    }
    int g_max() const noexcept {
      return _g_max;
    }
    std::span<std::uint8_t const> split_counts() const noexcept {
      return _dec;
    }
    bool contains(int x) const noexcept {
      return x >= 0 && (x >= _node.conductor || _dec[x] > 0);
    }
    bool is_primitive(int x) const noexcept {
      return x > 0 && static_cast<std::size_t>(x) < _dec.size() && _dec[x] == 1;
    }

    // Primitives exceeding the Frobenius number.
    std::vector<int> effective_generators() const {
      std::vector<int> out;
      int const        start = _node.scan_start();
      for (int x = start; x < start + _node.multiplicity; ++x) {
        if (is_primitive(x)) {
          out.push_back(x);
        }
      }
      return out;
    }

    // S -> S \ {x} for an effective generator x, updating split counts in
    // place. Descending order keeps every read on the pre-removal counts.
    Undo remove(int x) {
      if (_node.genus >= _g_max) {
        throw precondition_error("child genus would exceed g_max");
      }
      if (x < _node.scan_start() || x >= _node.scan_start() + _node.multiplicity
          || !is_primitive(x)) {
        throw precondition_error(std::to_string(x) + " is not an effective generator");
      }
      Undo const undo{x, _node};
      int left = _node.left_primitives;
      for (int y = _node.scan_start(); y < x; ++y) {
        left += is_primitive(y);
      }
      for (std::size_t y = _dec.size(); y-- > static_cast<std::size_t>(x);) {
        _dec[y] -= _dec[y - x] != 0;
      }
      _node = NodeSummary{_node.genus + 1, x + 1,
                          x == _node.multiplicity ? x + 1 : _node.multiplicity, left};
      return undo;
    }

    // Reverts remove(); y - x is in the parent iff it is in the child or
    // equals x.
    void undo(Undo const& u) {
      int const x = u.generator;
      for (std::size_t y = _dec.size(); y-- > static_cast<std::size_t>(x);) {
        std::size_t const s = y - x;
        _dec[y] += (_dec[s] != 0 || s == static_cast<std::size_t>(x));
      }
      _node = u.before;
    }

    std::vector<ExplorationNode> children() const {
      std::vector<ExplorationNode> out;
      if (_node.genus >= _g_max) {
        return out;
      }
      for (int x : effective_generators()) {
        ExplorationNode child = *this;
        child.remove(x);
        out.push_back(std::move(child));
      }
      return out;
    }

    std::vector<int> gaps() const {
      std::vector<int> out;
      for (int x = 1; x < _node.conductor; ++x) {
        if (_dec[x] == 0) {
          out.push_back(x);
        }
      }
      return out;
    }

    // FNV-1a over the split counts and the summary.
    std::uint64_t checksum() const noexcept {
      std::uint64_t h   = 1469598103934665603ull;
      auto          mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
      };
      for (auto v : _dec) {
        mix(v);
      }
      for (int v : {_node.genus, _node.conductor, _node.multiplicity, _node.left_primitives}) {
        mix(static_cast<std::uint64_t>(v));
      }
      return h;
    }

    // The node in "<P ∩ L>_c" form (plain "<P>" when P ∩ L is empty).
    NumericalSemigroup to_semigroup() const {
      GeneratorSpec spec;
      for (int x = 1; x < _node.conductor; ++x) {
        if (_dec[x] == 1) {
          spec.generators.push_back(x);
        }
      }
      if (!spec.generators.empty()) {
        spec.truncation = _node.conductor;
        return from_generators(spec);
      }
      int const c = std::max(_node.conductor, 1);
      for (int x = c; x < 2 * c; ++x) {
        spec.generators.push_back(x);
      }
      return from_generators(spec);
    }

   private:
    int                       _g_max;
    std::vector<std::uint8_t> _dec;
    NodeSummary               _node;
  };

  struct HuntRecord {
    std::string label;
    WilfReport  report;

    friend bool operator==(HuntRecord const&, HuntRecord const&) = default;
  };

  inline bool record_order(HuntRecord const& a, HuntRecord const& b) {
    return std::tie(a.report.genus, a.label) < std::tie(b.report.genus, b.label);
  }

  template <std::size_t Size>
  HuntRecord make_record(Frame<Size> const& f) {
    auto const s = materialize(f);
    return HuntRecord{canonical_label(s), wilf_report(s)};
  }

  using RecordList = std::vector<HuntRecord>;

  // --- Policies -------------------------------------------------------------
  //
  // A policy decides from a NodeSummary whether a node is interesting
  // (wants), and inspects interesting nodes once their split counts exist
  // (visit). Results are merged per finished subtree, so merge order does
  // not matter after finalize().

  // Counts only.
  struct CensusPolicy {
    using Result = RecordList;

    static constexpr bool wants(NodeSummary const&) noexcept {
      return false;
    }
    template <std::size_t Size>
    void visit(Frame<Size> const&, std::uint64_t, Result&) const {}
    static void merge(Result&, Result&&) {}
    static void finalize(Result&) {}
    std::string tag() const {
      return "census";
    }
  };

  struct HuntFilters {
    std::optional<int> q;
    int                m_min = 1;
    int                m_max = 1 << 20;
  };

  // Nodes with W_0 < 0. By default nodes with q <= 3 are skipped, since
  // W_0 >= 0 is known there; `exhaustive` evaluates them too.
  struct HuntPolicy {
    using Result = RecordList;

    HuntFilters filters;
    bool        exhaustive = false;

    bool wants(NodeSummary const& s) const noexcept {
      if (s.conductor == 0) {
        return false;
      }
      if (!exhaustive && s.conductor <= 3 * s.multiplicity) {
        return false;
      }
      if (s.multiplicity < filters.m_min || s.multiplicity > filters.m_max) {
        return false;
      }
      int const q = s.q();
      if (filters.q && q != *filters.q) {
        return false;
      }
      // |D_q| <= m, so W_0 < 0 forces |P∩L||L| + rho < qm.
      return std::int64_t(s.left_primitives) * s.left_count() + s.rho()
             < std::int64_t(q) * s.multiplicity;
    }

    template <std::size_t Size>
    void visit(Frame<Size> const& f, std::uint64_t mask, Result& out) const {
      if (w0_from_counters(f.node, mask) < 0) {
        out.push_back(make_record(f));
      }
    }
    static void merge(Result& into, Result&& from) {
      into.insert(into.end(), from.begin(), from.end());
    }
    static void finalize(Result& r) {
      std::sort(r.begin(), r.end(), record_order);
    }
    std::string tag() const {
      return "hunt;q=" + (filters.q ? std::to_string(*filters.q) : std::string("any"))
             + ";m=" + std::to_string(filters.m_min) + ".." + std::to_string(filters.m_max)
             + (exhaustive ? ";exhaustive" : "");
    }
  };

  inline std::int64_t choose3(std::int64_t n) noexcept {
    return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  }

  // q = 4 nodes with W_0 < -C(n, 3), n = |P ∩ L|.
  struct BoundPolicy {
    using Result = RecordList;

    bool wants(NodeSummary const& s) const noexcept {
      if (s.conductor <= 3 * s.multiplicity || s.conductor > 4 * s.multiplicity) {
        return false;
      }
      std::int64_t const n = s.left_primitives;
      return n * s.left_count() + s.rho() + choose3(n) < 4 * std::int64_t(s.multiplicity);
    }
    template <std::size_t Size>
    void visit(Frame<Size> const& f, std::uint64_t mask, Result& out) const {
      if (w0_from_counters(f.node, mask) < -choose3(f.node.left_primitives)) {
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
      return "bound";
    }
  };

  // The three structural conditions expected of the minimizers of W_0 - rho
  // among q = 4 semigroups with fixed m and n = |P ∩ L|.
  struct MinimizerFlags {
    bool left_in_first_slice = false;  // P ∩ L ⊆ S_1
    bool first_apery_b3      = false;  // X_1 induces a B_3 set in Z/mZ
    bool apery_shape         = false;  // X_2 = ∅, X_3 = 2X_1, X_4 ∩ D = 3X_1

    bool all() const noexcept {
      return left_in_first_slice && first_apery_b3 && apery_shape;
    }
  };

  template <std::size_t Size>
  MinimizerFlags minimizer_flags(Frame<Size> const& f) {
    NodeSummary const& s   = f.node;
    int const          m   = s.multiplicity;
    int const          rho = s.rho();
    int const          c   = s.conductor;
    auto member = [&](int x) { return x >= 0 && (x >= c || f.dec[x] > 0); };

    MinimizerFlags flags;
    flags.left_in_first_slice = true;
    for (int x = 2 * m - rho; x < c; ++x) {
      if (x > 0 && f.dec[x] == 1) {
        flags.left_in_first_slice = false;
        break;
      }
    }

    // X_j: Apéry elements in I_j = [jm - rho, (j+1)m - rho - 1].
    std::array<std::vector<int>, 5> apery;
    std::vector<int>                top_decomposable;
    for (int x = 1; x < c + m; ++x) {
      if (!member(x) || member(x - m)) {
        continue;
      }
      int const j = (x + rho) / m;
      if (j < 5) {
        apery[j].push_back(x);
      }
      if (j == 4 && f.dec[x] > 1) {
        top_decomposable.push_back(x);
      }
    }
    auto const& x1 = apery[1];

    std::vector<int> two, three;
    for (std::size_t i = 0; i < x1.size(); ++i) {
      for (std::size_t j = i; j < x1.size(); ++j) {
        two.push_back(x1[i] + x1[j]);
        for (std::size_t k = j; k < x1.size(); ++k) {
          three.push_back(x1[i] + x1[j] + x1[k]);
        }
      }
    }
    std::vector<int> residues;
    for (int v : three) {
      residues.push_back(v % m);
    }
    std::vector<int> x1_residues;
    for (int v : x1) {
      x1_residues.push_back(v % m);
    }
    auto distinct = [](std::vector<int> v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    flags.first_apery_b3 = distinct(x1_residues) && distinct(residues);

    auto as_set = [](std::vector<int> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    flags.apery_shape = apery[2].empty() && as_set(two) == apery[3]
                        && as_set(three) == top_decomposable;
    return flags;
  }

  struct MinimaEntry {
    int           m              = 0;
    int           n              = 0;
    std::int64_t  minimum        = 0;  // min of W_0 - rho
    std::uint64_t semigroups     = 0;
    std::uint64_t minimizers     = 0;
    std::uint64_t flagged_total  = 0;  // all three conditions hold
    std::uint64_t flagged_minimizers = 0;
    std::array<std::uint64_t, 3> flag_counts{};  // per condition, among minimizers
    std::string   example;  // least label among minimizers

    // Minimizers are exactly the semigroups meeting all three conditions.
    bool exact() const noexcept {
      return minimizers == flagged_minimizers && flagged_total == flagged_minimizers;
    }
  };

  using MinimaTable = std::map<std::pair<int, int>, MinimaEntry>;

  struct MinimaPolicy {
    using Result = MinimaTable;

    std::optional<int> m_filter;

    bool wants(NodeSummary const& s) const noexcept {
      return s.conductor > 3 * s.multiplicity && s.conductor <= 4 * s.multiplicity
             && (!m_filter || s.multiplicity == *m_filter);
    }

    template <std::size_t Size>
    void visit(Frame<Size> const& f, std::uint64_t mask, Result& out) const {
      std::int64_t const value = w0_from_counters(f.node, mask) - f.node.rho();
      auto const         flags = minimizer_flags(f);
      MinimaEntry        one;
      one.m          = f.node.multiplicity;
      one.n          = f.node.left_primitives;
      one.minimum    = value;
      one.semigroups = 1;
      one.minimizers = 1;
      one.flagged_total      = flags.all();
      one.flagged_minimizers = flags.all();
      one.flag_counts = {std::uint64_t(flags.left_in_first_slice),
                         std::uint64_t(flags.first_apery_b3),
                         std::uint64_t(flags.apery_shape)};
      auto it = out.find({one.m, one.n});
      if (it == out.end() || value <= it->second.minimum) {
        one.example = canonical_label(materialize(f));
      }
      merge_entry(out, std::move(one));
    }

    static void merge_entry(Result& out, MinimaEntry&& e) {
      auto [it, inserted] = out.try_emplace({e.m, e.n}, e);
      if (inserted) {
        return;
      }
      MinimaEntry& cur = it->second;
      cur.semigroups += e.semigroups;
      cur.flagged_total += e.flagged_total;
      if (e.minimum < cur.minimum) {
        std::uint64_t const total = cur.semigroups, flagged = cur.flagged_total;
        cur               = std::move(e);
        cur.semigroups    = total;
        cur.flagged_total = flagged;
      } else if (e.minimum == cur.minimum) {
        cur.minimizers += e.minimizers;
        cur.flagged_minimizers += e.flagged_minimizers;
        for (std::size_t i = 0; i < 3; ++i) {
          cur.flag_counts[i] += e.flag_counts[i];
        }
        if (cur.example.empty() || (!e.example.empty() && e.example < cur.example)) {
          cur.example = e.example;
        }
      }
    }

    static void merge(Result& into, Result&& from) {
      for (auto& [key, e] : from) {
        merge_entry(into, std::move(e));
      }
    }
    static void finalize(Result&) {}
    std::string tag() const {
      return "minima";
    }
  };

  // --- Depth-first walker ---------------------------------------------------

  template <std::size_t Size, typename Policy>
  class Walker {
   public:
    Walker(int g_max, Policy const& policy, std::vector<std::uint64_t>& counts,
           typename Policy::Result& result)
        : _g_max(g_max),
          _policy(policy),
          _counts(counts),
          _result(result),
          _stack(static_cast<std::size_t>(g_max) + 2) {}

    // Children at genus `split` are appended to `tasks` instead of being
    // expanded; pass split > g_max to walk everything.
    void set_split(int split, std::vector<Frame<Size>>* tasks) {
      _split = split;
      _tasks = tasks;
    }

    // Counts and inspects the root N, then walks below it.
    void run_from_root() {
      init_root(_stack[0]);
      _counts[0] += 1;
      if (_policy.wants(_stack[0].node)) {
        _policy.visit(_stack[0], generator_mask(_stack[0]), _result);
      }
      if (_g_max > 0) {
        walk(0);
      }
    }

    // Walks strictly below `f`, which has already been counted and visited.
    void run_subtree(Frame<Size> const& f) {
      int const depth = f.node.genus;
      _stack[depth]   = f;
      if (depth < _g_max) {
        walk(depth);
      }
    }

   private:
    void walk(int depth) {
      Frame<Size> const& node = _stack[depth];
      std::uint64_t      rest = generator_mask(node);
      _counts[depth + 1] += std::popcount(rest);

      int const  start   = node.node.scan_start();
      int const  m       = node.node.multiplicity;
      int        left    = node.node.left_primitives;
      bool const collect = depth + 1 == _split;
      bool const descend = depth + 1 < _g_max;

      while (rest) {
        int const x = start + std::countr_zero(rest);
        rest &= rest - 1;
        NodeSummary const child{depth + 1, x + 1, x == m ? m + 1 : m, left};
        ++left;

        bool const want = _policy.wants(child);
        if (!want && !descend && !collect) {
          continue;
        }
        Frame<Size>& next = _stack[depth + 1];
        remove_generator(node, next, x, child.left_primitives);
        if (want) {
          _policy.visit(next, generator_mask(next), _result);
        }
        if (collect) {
          _tasks->push_back(next);
        } else if (descend) {
          walk(depth + 1);
        }
      }
    }

    int                        _g_max;
    Policy const&              _policy;
    std::vector<std::uint64_t>& _counts;
    typename Policy::Result&   _result;
    std::vector<Frame<Size>>   _stack;
    int                        _split = max_genus + 2;
    std::vector<Frame<Size>>*  _tasks = nullptr;
  };

  // --- Parallel driver and checkpoints ---------------------------------------

  struct ExploreOptions {
    unsigned           threads = 1;
    std::optional<int> split_genus;
    std::string        checkpoint_path;  // empty: no checkpoints
    std::chrono::milliseconds checkpoint_interval{std::chrono::minutes(10)};
    std::string        resume_path;
  };

  template <typename Result>
  struct ExploreOutcome {
    std::vector<std::uint64_t> counts;  // semigroups per genus 0..g_max
    Result                     result{};
    std::size_t                subtrees = 0;
    double                     seconds  = 0;
  };

  inline int default_split(int g_max) noexcept {
    if (g_max < 12) {
      return g_max + 1;  // small trees: no handoff
    }
    return std::clamp(g_max - 20, 10, g_max - 1);
  }

  namespace detail {

    inline constexpr char          checkpoint_magic[5] = {'N', 'S', 'G', 'T', '1'};
    inline constexpr std::uint32_t checkpoint_version  = 1;

    struct Writer {
      std::string bytes;
      void        u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
          bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
        }
      }
      void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
          bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
        }
      }
      void str(std::string const& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes += s;
      }
    };

    struct Reader {
      std::string const& bytes;
      std::size_t        pos = 0;

      void need(std::size_t n) const {
        if (pos + n > bytes.size()) {
          throw checkpoint_error("checkpoint file is truncated");
        }
      }
      std::uint64_t uint(int width) {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
          v |= std::uint64_t(static_cast<unsigned char>(bytes[pos++])) << (8 * i);
        }
        return v;
      }
      std::uint32_t u32() {
        return static_cast<std::uint32_t>(uint(4));
      }
      std::uint64_t u64() {
        return uint(8);
      }
      std::string str() {
        std::uint32_t const n = u32();
        need(n);
        std::string s = bytes.substr(pos, n);
        pos += n;
        return s;
      }
    };

  }  // namespace detail

  // Frontier snapshot: finished counts and records plus every subtree root
  // whose walk has not completed.
  struct Checkpoint {
    int                           g_max = 0;
    int                           split = 0;
    std::string                   tag;
    std::vector<std::uint64_t>    counts;
    std::vector<std::string>      records;  // labels
    std::vector<std::vector<int>> pending;  // gap sets of subtree roots

    std::string encode() const {
      detail::Writer w;
      w.bytes.append(detail::checkpoint_magic, 5);
      w.u32(detail::checkpoint_version);
      w.u32(static_cast<std::uint32_t>(g_max));
      w.u32(static_cast<std::uint32_t>(split));
      w.str(tag);
      w.u32(static_cast<std::uint32_t>(counts.size()));
      for (auto c : counts) {
        w.u64(c);
      }
      w.u64(records.size());
      for (auto const& r : records) {
        w.str(r);
      }
      w.u64(pending.size());
      for (auto const& gaps : pending) {
        w.u32(static_cast<std::uint32_t>(gaps.size()));
        for (int x : gaps) {
          w.u32(static_cast<std::uint32_t>(x));
        }
      }
      return std::move(w.bytes);
    }

    static Checkpoint decode(std::string const& bytes) {
      if (bytes.size() < 5 || std::memcmp(bytes.data(), detail::checkpoint_magic, 5) != 0) {
        throw checkpoint_error("not a checkpoint file (bad magic)");
      }
      detail::Reader r{bytes, 5};
      if (r.u32() != detail::checkpoint_version) {
        throw checkpoint_error("unsupported checkpoint version");
      }
      Checkpoint cp;
      cp.g_max = static_cast<int>(r.u32());
      cp.split = static_cast<int>(r.u32());
      cp.tag   = r.str();
      std::uint32_t const n_counts = r.u32();
      if (n_counts != static_cast<std::uint32_t>(cp.g_max) + 1) {
        throw checkpoint_error("checkpoint count table has the wrong length");
      }
      for (std::uint32_t i = 0; i < n_counts; ++i) {
        cp.counts.push_back(r.u64());
      }
      std::uint64_t const n_records = r.u64();
      for (std::uint64_t i = 0; i < n_records; ++i) {
        cp.records.push_back(r.str());
      }
      std::uint64_t const n_pending = r.u64();
      for (std::uint64_t i = 0; i < n_pending; ++i) {
        std::uint32_t const n_gaps = r.u32();
        r.need(std::size_t(n_gaps) * 4);
        std::vector<int> gaps;
        for (std::uint32_t k = 0; k < n_gaps; ++k) {
          gaps.push_back(static_cast<int>(r.u32()));
        }
        cp.pending.push_back(std::move(gaps));
      }
      if (r.pos != bytes.size()) {
        throw checkpoint_error("trailing bytes in checkpoint file");
      }
      return cp;
    }
  };

  // Writes to a sibling temporary file, then renames over `path`.
  inline void write_checkpoint_file(std::string const& path, Checkpoint const& cp) {
    std::string const tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      std::string const bytes = cp.encode();
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!out) {
        throw checkpoint_error("cannot write checkpoint " + tmp);
      }
    }
    std::filesystem::rename(tmp, path);
  }

  inline Checkpoint read_checkpoint_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw checkpoint_error("cannot open checkpoint " + path);
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return Checkpoint::decode(bytes);
  }

  inline HuntRecord record_from_label(std::string const& label) {
    auto const s = parse_semigroup(label);
    return HuntRecord{canonical_label(s), wilf_report(s)};
  }

  template <std::size_t Size, typename Policy>
  ExploreOutcome<typename Policy::Result> explore_sized(int                   g_max,
                                                        Policy const&         policy,
                                                        ExploreOptions const& opts) {
    using Result = typename Policy::Result;
    constexpr bool checkpointable = std::is_same_v<Result, RecordList>;
    if constexpr (!checkpointable) {
      if (!opts.checkpoint_path.empty() || !opts.resume_path.empty()) {
        throw precondition_error("this scan does not support checkpoints");
      }
    }
    auto const start = std::chrono::steady_clock::now();

    ExploreOutcome<Result>   out;
    std::vector<Frame<Size>> tasks;
    int                      split = opts.split_genus.value_or(default_split(g_max));
    out.counts.assign(static_cast<std::size_t>(g_max) + 1, 0);

    if constexpr (checkpointable) {
      if (!opts.resume_path.empty()) {
        Checkpoint cp = read_checkpoint_file(opts.resume_path);
        if (cp.g_max != g_max || cp.tag != policy.tag()) {
          throw checkpoint_error("checkpoint was written by a different scan ("
                                 + cp.tag + ", g_max " + std::to_string(cp.g_max) + ")");
        }
        split      = cp.split;
        out.counts = cp.counts;
        for (auto const& label : cp.records) {
          out.result.push_back(record_from_label(label));
        }
        for (auto const& gaps : cp.pending) {
          tasks.push_back(frame_from_gaps<Size>(gaps));
        }
      }
    }
    if (opts.resume_path.empty()) {
      Walker<Size, Policy> prefix(g_max, policy, out.counts, out.result);
      prefix.set_split(split, &tasks);
      prefix.run_from_root();
    }
    out.subtrees = tasks.size();

    std::mutex              lock;
    std::condition_variable progress;
    std::vector<char>       done(tasks.size(), 0);
    std::size_t             finished = 0;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
      std::vector<std::uint64_t> counts(out.counts.size(), 0);
      Result                     local{};
      Walker<Size, Policy>       walker(g_max, policy, counts, local);
      while (true) {
        std::size_t const i = next.fetch_add(1);
        if (i >= tasks.size()) {
          break;
        }
        walker.run_subtree(tasks[i]);
        std::lock_guard<std::mutex> guard(lock);
        for (std::size_t g = 0; g < counts.size(); ++g) {
          out.counts[g] += counts[g];
        }
        std::fill(counts.begin(), counts.end(), 0);
        Policy::merge(out.result, std::move(local));
        local   = Result{};
        done[i] = 1;
        ++finished;
        progress.notify_all();
      }
    };

    auto snapshot = [&] {
      Checkpoint cp;
      cp.g_max  = g_max;
      cp.split  = split;
      cp.tag    = policy.tag();
      cp.counts = out.counts;
      if constexpr (checkpointable) {
        for (auto const& r : out.result) {
          cp.records.push_back(r.label);
        }
      }
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!done[i]) {
          cp.pending.push_back(gaps_of(tasks[i]));
        }
      }
      return cp;
    };

    unsigned const n_threads
        = std::max(1u, std::min<unsigned>(opts.threads, std::max<std::size_t>(tasks.size(), 1)));
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back(worker);
      }
      if (!opts.checkpoint_path.empty()) {
        std::unique_lock<std::mutex> guard(lock);
        while (finished < tasks.size()) {
          if (!progress.wait_for(guard, opts.checkpoint_interval,
                                 [&] { return finished == tasks.size(); })) {
            write_checkpoint_file(opts.checkpoint_path, snapshot());
          }
        }
      }
    }
    if (!opts.checkpoint_path.empty()) {
      write_checkpoint_file(opts.checkpoint_path, snapshot());
    }

    Policy::finalize(out.result);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  // Walks every semigroup of genus <= g_max under `policy`.
  template <typename Policy>
  ExploreOutcome<typename Policy::Result> explore(int                   g_max,
                                                  Policy const&         policy,
                                                  ExploreOptions const& opts = {}) {
    if (g_max < 0 || g_max > max_genus) {
      throw precondition_error("g_max must lie in [0, " + std::to_string(max_genus) + "]");
    }
    switch (window_for(g_max)) {
      case 96:
        return explore_sized<96>(g_max, policy, opts);
      case 128:
        return explore_sized<128>(g_max, policy, opts);
      case 160:
        return explore_sized<160>(g_max, policy, opts);
      default:
        return explore_sized<192>(g_max, policy, opts);
    }
  }

  // --- Public operations ----------------------------------------------------

  inline std::vector<std::uint64_t> census(int g_max, ExploreOptions const& opts = {}) {
    return explore(g_max, CensusPolicy{}, opts).counts;
  }

  inline RecordList hunt_near_misses(int                   g_max,
                                     HuntFilters const&    filters = {},
                                     ExploreOptions const& opts    = {}) {
    return explore(g_max, HuntPolicy{filters, false}, opts).result;
  }

  inline RecordList scan_conjecture_bound(int g_max, ExploreOptions const& opts = {}) {
    return explore(g_max, BoundPolicy{}, opts).result;
  }

  inline MinimaTable scan_conjecture_minima(int                   g_max,
                                            std::optional<int>    m_filter = std::nullopt,
                                            ExploreOptions const& opts     = {}) {
    return explore(g_max, MinimaPolicy{m_filter}, opts).result;
  }

}  // namespace nsg::explore

#endif  // NSG_EXPLORER_HPP_
