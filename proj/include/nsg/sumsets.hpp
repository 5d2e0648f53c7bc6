#ifndef NSG_SUMSETS_HPP_
#define NSG_SUMSETS_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace nsg {

  // A finite nonempty subset of Z, or of Z/mZ when a modulus is set.
  class IntSet {
   public:
    // Throws invalid_spec on an empty list, a nonpositive modulus, or
    // repeated elements (after reduction when a modulus is given).
    explicit IntSet(std::vector<std::int64_t>   elements,
                    std::optional<std::int64_t> modulus = std::nullopt)
        : _elements(std::move(elements)), _modulus(modulus) {
      if (_elements.empty()) {
        throw invalid_spec("integer set must be nonempty");
      }
      if (_modulus) {
        if (*_modulus < 1) {
          throw invalid_spec("modulus must be positive");
        }
        for (auto& x : _elements) {
          x = reduce(x, *_modulus);
        }
      }
      std::sort(_elements.begin(), _elements.end());
      if (std::adjacent_find(_elements.begin(), _elements.end())
          != _elements.end()) {
        throw invalid_spec("integer set has repeated elements");
      }
    }

    std::vector<std::int64_t> const& elements() const noexcept {
      return _elements;
    }
    std::optional<std::int64_t> modulus() const noexcept {
      return _modulus;
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    std::int64_t min() const noexcept {
      return _elements.front();
    }
    std::int64_t max() const noexcept {
      return _elements.back();
    }
    bool contains(std::int64_t x) const {
      return std::binary_search(_elements.begin(), _elements.end(), x);
    }

    // A + t, reduced when a modulus is set.
    IntSet translated(std::int64_t t) const {
      std::vector<std::int64_t> out;
      out.reserve(_elements.size());
      for (auto x : _elements) {
        out.push_back(checked::add(x, t));
      }
      return IntSet(std::move(out), _modulus);
    }

    friend bool operator==(IntSet const&, IntSet const&) = default;

    static std::int64_t reduce(std::int64_t x, std::int64_t m) noexcept {
      std::int64_t r = x % m;
      return r < 0 ? r + m : r;
    }

   private:
    struct sorted_unique_tag {};
    IntSet(sorted_unique_tag,
           std::vector<std::int64_t>   elements,
           std::optional<std::int64_t> modulus)
        : _elements(std::move(elements)), _modulus(modulus) {}

    friend IntSet sumset(IntSet const&, IntSet const&);

    std::vector<std::int64_t>   _elements;
    std::optional<std::int64_t> _modulus;
  };

  // A + B in the ambient group of A.
  inline IntSet sumset(IntSet const& a, IntSet const& b) {
    std::vector<std::int64_t> out;
    out.reserve(a.size() * b.size());
    for (auto x : a.elements()) {
      for (auto y : b.elements()) {
        std::int64_t s = checked::add(x, y);
        if (a.modulus()) {
          s = IntSet::reduce(s, *a.modulus());
        }
        out.push_back(s);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return IntSet(IntSet::sorted_unique_tag{}, std::move(out), a.modulus());
  }

  // hA = A + ... + A (h times).
  inline IntSet h_fold_sumset(IntSet const& a, unsigned h) {
    if (h < 1) {
      throw precondition_error("sumset order h must be positive");
    }
    IntSet out = a;
    for (unsigned i = 1; i < h; ++i) {
      out = sumset(out, a);
    }
    return out;
  }

  // |hA| = C(|A| + h - 1, h), computed in the ambient group of A.
  inline bool is_bh(IntSet const& a, unsigned h) {
    if (h < 1) {
      throw precondition_error("B_h order h must be positive");
    }
    auto const n = static_cast<std::int64_t>(a.size());
    if (a.modulus() && *a.modulus() < n) {
      throw precondition_error("modulus smaller than the set");
    }
    std::int64_t const bound = checked::binomial(n + h - 1, h);
    return static_cast<std::int64_t>(h_fold_sumset(a, h).size()) == bound;
  }

  // Whether A ⊂ Z reduces to |A| distinct classes mod m forming a B_h set
  // in Z/mZ.
  inline bool induces_bh_mod(IntSet const& a, std::int64_t m, unsigned h) {
    if (m < 1) {
      throw precondition_error("modulus must be positive");
    }
    std::vector<std::int64_t> reduced;
    for (auto x : a.elements()) {
      reduced.push_back(IntSet::reduce(x, m));
    }
    std::sort(reduced.begin(), reduced.end());
    if (std::adjacent_find(reduced.begin(), reduced.end()) != reduced.end()) {
      return false;
    }
    return is_bh(IntSet(std::move(reduced), m), h);
  }

  namespace detail {

    // Calls f(sum) for every multiset of size k drawn from xs.
    template <typename F>
    void for_each_multiset_sum(std::vector<std::int64_t> const& xs,
                               unsigned                         k,
                               std::size_t                      first,
                               std::int64_t                     partial,
                               F&&                              f) {
      if (k == 0) {
        f(partial);
        return;
      }
      for (std::size_t i = first; i < xs.size(); ++i) {
        for_each_multiset_sum(xs, k - 1, i, checked::add(partial, xs[i]), f);
      }
    }

  }  // namespace detail

  // Whether the listed sums a, 2a, a+b, ... of every multiset of 1..h
  // elements of A are pairwise distinct mod m. Sums are enumerated one
  // multiset at a time, independently of the sumset routines.
  inline bool pairwise_distinct_union(IntSet const& a, unsigned h, std::int64_t m) {
    if (h < 1) {
      throw precondition_error("sumset order h must be positive");
    }
    if (m < 1) {
      throw precondition_error("modulus must be positive");
    }
    std::vector<std::int64_t> residues;
    for (unsigned k = 1; k <= h; ++k) {
      detail::for_each_multiset_sum(a.elements(), k, 0, 0, [&](std::int64_t s) {
        residues.push_back(IntSet::reduce(s, m));
      });
    }
    std::sort(residues.begin(), residues.end());
    return std::adjacent_find(residues.begin(), residues.end()) == residues.end();
  }

  inline constexpr std::int64_t greedy_search_cap = 1'000'000;

  // Greedy B_h set starting at 0: each new element is the least integer
  // keeping the B_h property. Throws overflow_error when no candidate is found
  // within greedy_search_cap steps.
  inline IntSet greedy_bh(unsigned h, std::size_t size) {
    if (h < 1 || size < 1) {
      throw precondition_error("greedy B_h needs h >= 1 and size >= 1");
    }
    std::vector<std::int64_t> chosen{0};
    while (chosen.size() < size) {
      std::int64_t const start = chosen.back() + 1;
      bool               found = false;
      for (std::int64_t x = start; x < start + greedy_search_cap; ++x) {
        auto trial = chosen;
        trial.push_back(x);
        if (is_bh(IntSet(trial), h)) {
          chosen = std::move(trial);
          found  = true;
          break;
        }
      }
      if (!found) {
        throw overflow_error("greedy B_h search exceeded "
                             + std::to_string(greedy_search_cap)
                             + " candidates");
      }
    }
    return IntSet(std::move(chosen));
  }

  // {h^i : 0 <= i < count}, or {h^i - 1} when zero_based.
  inline IntSet geometric_bh_family(unsigned h, unsigned count, bool zero_based) {
    if (h < 1 || count < 1) {
      throw precondition_error("geometric family needs h >= 1 and count >= 1");
    }
    std::vector<std::int64_t> out;
    for (unsigned i = 0; i < count; ++i) {
      out.push_back(checked::pow(h, i) - (zero_based ? 1 : 0));
    }
    return IntSet(std::move(out));
  }

}  // namespace nsg

#endif  // NSG_SUMSETS_HPP_
