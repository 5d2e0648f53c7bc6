#ifndef NSG_SEMIGROUP_HPP_
#define NSG_SEMIGROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace nsg {

  using integer = std::int64_t;

  // Largest membership window we are willing to allocate.
  inline constexpr integer max_window = integer(1) << 26;

  // Generators a_1, ..., a_n and an optional truncation t, denoting
  // <a_1, ..., a_n> or <a_1, ..., a_n> ∪ [t, ∞[.
  struct GeneratorSpec {
    std::vector<integer>   generators;
    std::optional<integer> truncation;

    friend bool operator==(GeneratorSpec const&, GeneratorSpec const&)
        = default;
  };

  // Apéry set with respect to the multiplicity. Entry i belongs to the
  // residue class i mod m.
  struct AperyTable {
    std::vector<integer> elements;
    std::vector<integer> slice_index;
    std::vector<bool>    decomposable;
  };

  // A numerical semigroup stored as its membership window over [0, c + m).
  // Every integer >= c is a member, so the window determines S.
  class NumericalSemigroup {
   public:
    // The full semigroup N.
    NumericalSemigroup() : _window{1}, _gens{1} {}

    // Builds S from a membership prefix over [0, N); every integer >= N is
    // taken to be in S. Throws invalid_spec if 0 is missing or the set is
    // not closed under addition. `truncated_form` selects the "<...>_c"
    // label form.
    static NumericalSemigroup from_membership(std::vector<std::uint8_t> prefix,
                                              bool truncated_form = false) {
      if (prefix.empty() || prefix[0] == 0) {
        throw invalid_spec("membership window must contain 0");
      }
      integer const n = static_cast<integer>(prefix.size());
      if (n > max_window) {
        throw invalid_spec("membership window too large");
      }
      auto member = [&](integer x) { return x >= n || prefix[x] != 0; };
      for (integer a = 1; a < n; ++a) {
        if (!prefix[a]) {
          continue;
        }
        for (integer b = a; a + b < n; ++b) {
          if (prefix[b] && !member(a + b)) {
            throw invalid_spec("membership window is not closed under addition");
          }
        }
      }
      NumericalSemigroup s;
      s.finalize(std::move(prefix));
      s._truncated_form = truncated_form;
      return s;
    }

    integer multiplicity() const noexcept {
      return _m;
    }
    integer conductor() const noexcept {
      return _c;
    }
    integer frobenius() const noexcept {
      return _c - 1;
    }
    integer genus() const noexcept {
      return _g;
    }
    integer q() const noexcept {
      return _c == 0 ? 0 : (_c + _m - 1) / _m;
    }
    integer rho() const noexcept {
      return q() * _m - _c;
    }

    // Minimal generating set P, sorted.
    std::vector<integer> const& generators() const noexcept {
      return _gens;
    }

    bool contains(integer x) const noexcept {
      if (x < 0) {
        return false;
      }
      if (x >= _c) {
        return true;
      }
      return _window[static_cast<std::size_t>(x)] != 0;
    }

    // Membership indicator over [0, c + m).
    std::span<std::uint8_t const> window() const noexcept {
      return _window;
    }

    integer window_size() const noexcept {
      return _c + _m;
    }

    // True when S was built as <gens>_t with t equal to the conductor.
    bool truncated_form() const noexcept {
      return _truncated_form;
    }

    // Index j of the slice I_j = [jm - rho, (j+1)m - rho - 1] holding x >= 0.
    integer slice_of(integer x) const noexcept {
      return (x + rho()) / _m;
    }

    bool is_primitive(integer x) const {
      return std::binary_search(_gens.begin(), _gens.end(), x);
    }

    friend bool operator==(NumericalSemigroup const& a,
                           NumericalSemigroup const& b) noexcept {
      return a._c == b._c && a._m == b._m && a._window == b._window;
    }

    friend NumericalSemigroup from_generators(GeneratorSpec const& spec);

   private:
    void finalize(std::vector<std::uint8_t> prefix);

    std::vector<std::uint8_t> _window;
    integer                   _m = 1;
    integer                   _c = 0;
    integer                   _g = 0;
    std::vector<integer>      _gens;
    bool                      _truncated_form = false;
  };

  inline void NumericalSemigroup::finalize(std::vector<std::uint8_t> prefix) {
    integer const n = static_cast<integer>(prefix.size());
    integer       c = 0;
    integer       g = 0;
    for (integer x = 0; x < n; ++x) {
      if (!prefix[x]) {
        c = x + 1;
        ++g;
      }
    }
    integer m = c;
    for (integer x = 1; x < n; ++x) {
      if (prefix[x]) {
        m = x;
        break;
      }
    }
    if (m == 0) {
      m = std::max<integer>(n, 1);  // no positive member in the prefix
    }
    prefix.resize(static_cast<std::size_t>(c + m), 1);
    _window = std::move(prefix);
    _m      = m;
    _c      = c;
    _g      = g;

    _gens.clear();
    if (_c == 0) {
      _gens.push_back(1);
      return;
    }
    std::vector<integer> members;
    for (integer x = 1; x < _c + _m; ++x) {
      if (_window[x]) {
        members.push_back(x);
      }
    }
    for (integer s : members) {
      bool decomposable = false;
      for (integer a : members) {
        if (2 * a > s) {
          break;
        }
        if (_window[s - a]) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) {
        _gens.push_back(s);
      }
    }
  }

  namespace detail {

    inline std::vector<integer> normalized_generators(GeneratorSpec const& spec) {
      if (spec.generators.empty()) {
        throw invalid_spec("generator list is empty");
      }
      std::vector<integer> gens = spec.generators;
      for (integer a : gens) {
        if (a < 1) {
          throw invalid_spec("generators must be positive, got "
                             + std::to_string(a));
        }
      }
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      if (spec.truncation && *spec.truncation < 1) {
        throw invalid_spec("truncation must be positive, got "
                           + std::to_string(*spec.truncation));
      }
      return gens;
    }

    // Apéry set of <gens> with respect to gens[0]: shortest paths over the
    // residue classes mod gens[0] with one edge per generator.
    inline std::vector<integer> apery_by_shortest_paths(
        std::vector<integer> const& gens) {
      integer const        a1 = gens.front();
      integer const        unreached = -1;
      std::vector<integer> dist(static_cast<std::size_t>(a1), unreached);
      using entry = std::pair<integer, integer>;
      std::priority_queue<entry, std::vector<entry>, std::greater<>> queue;
      dist[0] = 0;
      queue.emplace(0, 0);
      while (!queue.empty()) {
        auto [d, r] = queue.top();
        queue.pop();
        if (d != dist[r]) {
          continue;
        }
        for (auto it = gens.begin() + 1; it != gens.end(); ++it) {
          integer const nd = checked::add(d, *it);
          integer const nr = (r + *it) % a1;
          if (dist[nr] == unreached || nd < dist[nr]) {
            dist[nr] = nd;
            queue.emplace(nd, nr);
          }
        }
      }
      return dist;
    }

  }  // namespace detail

  // The monoid generated by spec.generators, united with [t, ∞[ when a
  // truncation t is given. Generators need not be sorted or minimal.
  inline NumericalSemigroup from_generators(GeneratorSpec const& spec) {
    std::vector<integer> const gens = detail::normalized_generators(spec);
    std::vector<std::uint8_t>  prefix;

    if (!spec.truncation) {
      integer d = 0;
      for (integer a : gens) {
        d = std::gcd(d, a);
      }
      if (d != 1) {
        throw non_cofinite("gcd of generators is " + std::to_string(d)
                           + ", complement is infinite");
      }
      integer const a1 = gens.front();
      if (a1 > max_window) {
        throw overflow_error("least generator too large");
      }
      auto const apery = detail::apery_by_shortest_paths(gens);
      integer const top = *std::max_element(apery.begin(), apery.end());
      integer const c   = top - a1 + 1;
      if (checked::add(c, a1) > max_window) {
        throw overflow_error("conductor too large for the membership window");
      }
      prefix.resize(static_cast<std::size_t>(std::max<integer>(c, 0) + a1));
      for (integer x = 0; x < static_cast<integer>(prefix.size()); ++x) {
        prefix[x] = x >= apery[x % a1];
      }
    } else {
      integer const t = *spec.truncation;
      integer const m = std::min(gens.front(), t);
      integer const n = checked::add(t, m);
      if (n > max_window) {
        throw overflow_error("truncation too large for the membership window");
      }
      prefix.assign(static_cast<std::size_t>(n), 0);
      prefix[0] = 1;
      for (integer x = 1; x < n; ++x) {
        if (x >= t) {
          prefix[x] = 1;
          continue;
        }
        for (integer a : gens) {
          if (a > x) {
            break;
          }
          if (prefix[x - a]) {
            prefix[x] = 1;
            break;
          }
        }
      }
    }

    NumericalSemigroup s;
    s.finalize(std::move(prefix));
    s._truncated_form = spec.truncation && *spec.truncation == s.conductor();
    return s;
  }

  inline bool contains(NumericalSemigroup const& s, integer x) noexcept {
    return s.contains(x);
  }

  inline std::vector<integer> const& primitives(NumericalSemigroup const& s) {
    return s.generators();
  }

  // D ∩ [0, c + m): the decomposable elements inside the window.
  inline std::vector<integer> decomposables_window(NumericalSemigroup const& s) {
    std::vector<integer> out;
    for (integer x = 1; x < s.window_size(); ++x) {
      if (s.contains(x) && !s.is_primitive(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  // P ∩ L, the primitives below the conductor.
  inline std::vector<integer> left_primitives(NumericalSemigroup const& s) {
    std::vector<integer> out;
    for (integer p : s.generators()) {
      if (p < s.conductor()) {
        out.push_back(p);
      }
    }
    return out;
  }

  inline AperyTable apery_set(NumericalSemigroup const& s) {
    integer const m = s.multiplicity();
    AperyTable    table;
    table.elements.resize(static_cast<std::size_t>(m));
    table.slice_index.resize(static_cast<std::size_t>(m));
    table.decomposable.resize(static_cast<std::size_t>(m));
    for (integer i = 0; i < m; ++i) {
      integer x = i;
      while (!s.contains(x)) {
        x += m;
      }
      table.elements[i]     = x;
      table.slice_index[i]  = s.slice_of(x);
      table.decomposable[i] = x != 0 && !s.is_primitive(x);
    }
    return table;
  }

  // S_j = S ∩ I_j with I_j = [jm - rho, (j+1)m - rho - 1].
  inline std::vector<integer> slice(NumericalSemigroup const& s, integer j) {
    if (j < 0) {
      throw precondition_error("slice index must be nonnegative");
    }
    integer const        lo = j * s.multiplicity() - s.rho();
    integer const        hi = lo + s.multiplicity();
    std::vector<integer> out;
    for (integer x = std::max<integer>(lo, 0); x < hi; ++x) {
      if (s.contains(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  // L = S ∩ [0, c - 1].
  inline std::vector<integer> left_part(NumericalSemigroup const& s) {
    std::vector<integer> out;
    for (integer x = 0; x < s.conductor(); ++x) {
      if (s.contains(x)) {
        out.push_back(x);
      }
    }
    return out;
  }

  inline std::string format_label(std::span<integer const> gens,
                                  std::optional<integer>   truncation,
                                  char                     separator = ',') {
    std::string out = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (i > 0) {
        out += separator;
      }
      out += std::to_string(gens[i]);
    }
    out += '>';
    if (truncation) {
      out += '_';
      out += std::to_string(*truncation);
    }
    return out;
  }

  // "<g1,...,gk>" over the minimal generators, or "<P∩L>_c" when S was
  // built by truncation at its own conductor.
  inline std::string canonical_label(NumericalSemigroup const& s,
                                     char separator = ',') {
    if (s.truncated_form()) {
      auto const left = left_primitives(s);
      if (!left.empty()) {
        return format_label(left, s.conductor(), separator);
      }
    }
    return format_label(s.generators(), std::nullopt, separator);
  }

}  // namespace nsg

#endif  // NSG_SEMIGROUP_HPP_
