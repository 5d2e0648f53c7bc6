#ifndef NSG_CONSTRUCTIONS_HPP_
#define NSG_CONSTRUCTIONS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "semigroup.hpp"
#include "sumsets.hpp"
#include "wilf.hpp"

// Near-miss families S = <{m} ∪ A>_{4m} with c = 4m and W_0(S) = -C(n, 3),
// n = |A| + 1, and their verification against the predicted invariants.

namespace nsg {

  enum class Recipe { pair, consecutive, bh_general, translated, explicit_power };

  inline std::string_view recipe_name(Recipe r) noexcept {
    switch (r) {
      case Recipe::pair:
        return "pair";
      case Recipe::consecutive:
        return "consecutive";
      case Recipe::bh_general:
        return "bh";
      case Recipe::translated:
        return "translated";
      case Recipe::explicit_power:
        return "explicit";
    }
    return "unknown";
  }

  struct ConstructionParams {
    integer                m = 0;
    std::optional<integer> a;
    std::optional<integer> b;
    std::optional<integer> k;
    std::optional<integer> n;
    std::optional<integer> r;
    std::vector<integer>   left_set;  // A, the left primitives other than m
    std::vector<integer>   base_set;  // A' for the translated families
  };

  struct PredictedProfile {
    integer n            = 0;
    integer c_expected   = 0;
    integer q_expected   = 4;
    integer rho_expected = 0;
    integer l_expected   = 0;
    integer d4_expected  = 0;
    integer w0_expected  = 0;
    integer w_min        = 9;
    integer j_lo         = 0;  // J = [j_lo, j_hi], absolute values
    integer j_hi         = 0;

    integer j_size() const noexcept {
      return j_hi - j_lo + 1;
    }
  };

  inline PredictedProfile predict_profile(integer m, integer n) {
    PredictedProfile p;
    p.n            = n;
    p.c_expected   = checked::mul(4, m);
    p.l_expected   = checked::binomial(n, 2) + 3 * n + 1;
    p.d4_expected  = checked::binomial(n + 2, 3);
    p.w0_expected  = -checked::binomial(n, 3);
    p.j_lo         = p.c_expected + (m + 1) / 3;
    p.j_hi         = p.c_expected + m / 2;  // ceil((m - 1)/2)
    return p;
  }

  struct ConstructionResult {
    Recipe             recipe = Recipe::pair;
    ConstructionParams params;
    NumericalSemigroup semigroup;
    PredictedProfile   predicted;
    WilfReport         computed;
  };

  namespace detail {

    inline std::string show(std::vector<integer> const& xs) {
      std::string out = "{";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + std::to_string(xs[i]);
      }
      return out + "}";
    }

    // Two sums among A ∪ 2A ∪ 3A that agree mod m, described by value.
    inline std::optional<std::string> union_collision(std::vector<integer> const& a,
                                                      integer                     m) {
      std::vector<integer> sums;
      for (unsigned k = 1; k <= 3; ++k) {
        for_each_multiset_sum(a, k, 0, 0, [&](integer s) { sums.push_back(s); });
      }
      for (std::size_t i = 0; i < sums.size(); ++i) {
        for (std::size_t j = i + 1; j < sums.size(); ++j) {
          if (IntSet::reduce(sums[i] - sums[j], m) == 0) {
            return std::to_string(sums[i]) + " = " + std::to_string(sums[j])
                   + " mod " + std::to_string(m);
          }
        }
      }
      return std::nullopt;
    }

    // (3m+1)/2 <= min A and max A <= (5m-1)/3, cross-multiplied.
    inline void check_window(integer m, integer lo, integer hi, bool strict_order) {
      if (m < 1) {
        throw hypothesis_violation("m >= 1", "m = " + std::to_string(m));
      }
      if (checked::mul(2, lo) < checked::add(checked::mul(3, m), 1)) {
        throw hypothesis_violation("(3m+1)/2 <= a", "a = " + std::to_string(lo)
                                                        + ", m = " + std::to_string(m));
      }
      if (strict_order && !(lo < hi)) {
        throw hypothesis_violation("a < b", "a = " + std::to_string(lo)
                                                + ", b = " + std::to_string(hi));
      }
      if (checked::mul(3, hi) > checked::sub(checked::mul(5, m), 1)) {
        throw hypothesis_violation("b <= (5m-1)/3", "b = " + std::to_string(hi)
                                                        + ", m = " + std::to_string(m));
      }
    }

    inline ConstructionResult build(Recipe                      recipe,
                                    ConstructionParams          params,
                                    std::vector<integer> const& left_set) {
      GeneratorSpec spec;
      spec.generators.push_back(params.m);
      spec.generators.insert(spec.generators.end(), left_set.begin(), left_set.end());
      spec.truncation = checked::mul(4, params.m);

      params.left_set = left_set;
      ConstructionResult out{recipe, std::move(params), from_generators(spec), {}, {}};
      out.predicted = predict_profile(out.params.m,
                                      static_cast<integer>(left_set.size()) + 1);
      out.computed  = wilf_report(out.semigroup);
      return out;
    }

  }  // namespace detail

  // <m, a, b>_{4m} under (3m+1)/2 <= a < b <= (5m-1)/3 with A ∪ 2A ∪ 3A
  // pairwise distinct mod m.
  inline ConstructionResult construct_pair(integer m, integer a, integer b) {
    detail::check_window(m, a, b, true);
    if (auto hit = detail::union_collision({a, b}, m)) {
      throw hypothesis_violation("A ∪ 2A ∪ 3A pairwise distinct mod m", *hit);
    }
    ConstructionParams p;
    p.m = m;
    p.a = a;
    p.b = b;
    return detail::build(Recipe::pair, std::move(p), {a, b});
  }

  // <m, a, a+1>_{4m} with a = (3m+k)/2, for k >= 2, m >= 3k+8, m ≡ k mod 2.
  inline ConstructionResult construct_consecutive(integer m, integer k) {
    if (k < 2) {
      throw hypothesis_violation("k >= 2", "k = " + std::to_string(k));
    }
    if (m < checked::add(checked::mul(3, k), 8)) {
      throw hypothesis_violation("m >= 3k+8", "m = " + std::to_string(m)
                                                  + ", k = " + std::to_string(k));
    }
    if ((m - k) % 2 != 0) {
      throw hypothesis_violation("m ≡ k (mod 2)", "m = " + std::to_string(m)
                                                      + ", k = " + std::to_string(k));
    }
    auto out     = construct_pair(m, (3 * m + k) / 2, (3 * m + k) / 2 + 1);
    out.recipe   = Recipe::consecutive;
    out.params.k = k;
    return out;
  }

  // <{m} ∪ A>_{4m} for |A| = n - 1 >= 2 inside [(3m+1)/2, (5m-1)/3] and
  // inducing a B_3 set in Z/mZ. The union A ∪ 2A ∪ 3A must also be
  // pairwise distinct mod m; B_3 alone does not force it (m = 11,
  // A = {17, 18} is B_3 mod 11 yet gives W_0 = 3).
  inline ConstructionResult construct_bh(integer m, IntSet const& a) {
    if (a.modulus()) {
      throw invalid_spec("construction set must live in Z, not Z/mZ");
    }
    if (a.size() < 2) {
      throw hypothesis_violation("n >= 3", "|A| = " + std::to_string(a.size()));
    }
    detail::check_window(m, a.min(), a.max(), true);
    if (!induces_bh_mod(a, m, 3)) {
      throw hypothesis_violation("A induces a B3 set in Z/mZ",
                                 "A = " + detail::show(a.elements()));
    }
    if (auto hit = detail::union_collision(a.elements(), m)) {
      throw hypothesis_violation("A ∪ 2A ∪ 3A pairwise distinct mod m", *hit);
    }
    ConstructionParams p;
    p.m = m;
    p.a = a.min();
    p.b = a.max();
    p.n = static_cast<integer>(a.size()) + 1;
    return detail::build(Recipe::bh_general, std::move(p), a.elements());
  }

  // A = a + A' with a = (3m+k)/2, for a B_3 set A' ∋ 0 with r = max A',
  // k >= r+1, m >= 3k+6r+2 and m ≡ k mod 2.
  inline ConstructionResult construct_translated(IntSet const& base, integer k, integer m) {
    if (base.modulus()) {
      throw invalid_spec("base set must live in Z, not Z/mZ");
    }
    if (base.size() < 2) {
      throw hypothesis_violation("n >= 3", "|A'| = " + std::to_string(base.size()));
    }
    if (!is_bh(base, 3)) {
      throw hypothesis_violation("A' is a B3 set", "A' = " + detail::show(base.elements()));
    }
    if (!base.contains(0) || base.min() < 0) {
      throw hypothesis_violation("A' ⊂ N contains 0",
                                 "A' = " + detail::show(base.elements()));
    }
    integer const r = base.max();
    if (k < r + 1) {
      throw hypothesis_violation("k >= r+1", "k = " + std::to_string(k)
                                                 + ", r = " + std::to_string(r));
    }
    if (m < checked::add(checked::add(checked::mul(3, k), checked::mul(6, r)), 2)) {
      throw hypothesis_violation("m >= 3k+6r+2", "m = " + std::to_string(m));
    }
    if ((m - k) % 2 != 0) {
      throw hypothesis_violation("m ≡ k (mod 2)", "m = " + std::to_string(m)
                                                      + ", k = " + std::to_string(k));
    }
    integer const a   = checked::add(checked::mul(3, m), k) / 2;
    auto          out = construct_bh(m, base.translated(a));
    out.recipe          = Recipe::translated;
    out.params.k        = k;
    out.params.r        = r;
    out.params.base_set = base.elements();
    return out;
  }

  // A' = {3^0 - 1, ..., 3^(n-2) - 1}, r = 3^(n-2) - 1, m = 3k + 6r + 2.
  inline ConstructionResult explicit_family(integer n, integer k) {
    if (n < 3) {
      throw hypothesis_violation("n >= 3", "n = " + std::to_string(n));
    }
    if (n > 40) {
      throw overflow_error("explicit family index n too large");
    }
    auto const    base = geometric_bh_family(3, static_cast<unsigned>(n - 1), true);
    integer const r    = base.max();
    if (k < r + 1) {
      throw hypothesis_violation("k >= r+1", "k = " + std::to_string(k)
                                                 + ", r = " + std::to_string(r));
    }
    integer const m = checked::add(checked::add(checked::mul(3, k), checked::mul(6, r)), 2);
    auto          out = construct_translated(base, k, m);
    out.recipe   = Recipe::explicit_power;
    out.params.n = n;
    return out;
  }

  struct CheckOutcome {
    std::string name;
    bool        passed = false;
    std::string detail;
  };

  struct VerificationReport {
    std::vector<CheckOutcome> checks;

    bool passed() const {
      for (auto const& c : checks) {
        if (!c.passed) {
          return false;
        }
      }
      return true;
    }

    std::vector<CheckOutcome> failures() const {
      std::vector<CheckOutcome> out;
      for (auto const& c : checks) {
        if (!c.passed) {
          out.push_back(c);
        }
      }
      return out;
    }
  };

  // Recomputes every structural claim made about a construction from the
  // semigroup itself. A failed check indicates a bug, not a bad input.
  inline VerificationReport verify_construction(ConstructionResult const& result) {
    VerificationReport         out;
    NumericalSemigroup const&  s = result.semigroup;
    WilfReport const&          r = result.computed;
    PredictedProfile const&    p = result.predicted;
    integer const              m = s.multiplicity();

    auto check = [&](std::string name, bool ok, std::string detail) {
      out.checks.push_back({std::move(name), ok, std::move(detail)});
    };
    auto vs = [](integer got, integer want) {
      return "computed " + std::to_string(got) + ", expected " + std::to_string(want);
    };

    check("c = 4m", r.c == p.c_expected, vs(r.c, p.c_expected));
    check("q = 4", r.q == p.q_expected, vs(r.q, p.q_expected));
    check("rho = 0", r.rho == p.rho_expected, vs(r.rho, p.rho_expected));

    IntSet const a(result.params.left_set);
    std::vector<std::vector<integer>> x(6);
    std::vector<integer>              x4_decomposable;
    auto const                        table = apery_set(s);
    for (std::size_t i = 0; i < table.elements.size(); ++i) {
      integer const j = table.slice_index[i];
      if (j < static_cast<integer>(x.size())) {
        x[j].push_back(table.elements[i]);
      }
      if (j == 4 && table.decomposable[i]) {
        x4_decomposable.push_back(table.elements[i]);
      }
    }
    for (auto& v : x) {
      std::sort(v.begin(), v.end());
    }
    std::sort(x4_decomposable.begin(), x4_decomposable.end());
    auto const two_a   = h_fold_sumset(a, 2).elements();
    auto const three_a = h_fold_sumset(a, 3).elements();
    check("X1 = A", x[1] == a.elements(),
          "X1 = " + detail::show(x[1]) + ", A = " + detail::show(a.elements()));
    check("X2 = empty", x[2].empty(), "X2 = " + detail::show(x[2]));
    check("X3 = 2A", x[3] == two_a,
          "X3 = " + detail::show(x[3]) + ", 2A = " + detail::show(two_a));
    check("X4 ∩ D = 3A", x4_decomposable == three_a,
          "X4 ∩ D = " + detail::show(x4_decomposable) + ", 3A = " + detail::show(three_a));

    check("|L| = C(n,2)+3n+1", r.l_count == p.l_expected, vs(r.l_count, p.l_expected));
    check("|D4| = C(n+2,3)", r.dq_count == p.d4_expected, vs(r.dq_count, p.d4_expected));
    check("W0 = -C(n,3)", r.w0 == p.w0_expected, vs(r.w0, p.w0_expected));

    bool j_in_p4 = true;
    for (integer y = p.j_lo; y <= p.j_hi; ++y) {
      if (!s.is_primitive(y)) {
        j_in_p4 = false;
        break;
      }
    }
    check("J ⊆ P4", j_in_p4,
          "J = [" + std::to_string(p.j_lo) + ", " + std::to_string(p.j_hi) + "]");
    check("|J| >= m/6", 6 * p.j_size() >= m,
          "|J| = " + std::to_string(p.j_size()) + ", m = " + std::to_string(m));
    check("|P4| >= m/6", 6 * r.pq_count >= m,
          "|P4| = " + std::to_string(r.pq_count) + ", m = " + std::to_string(m));
    integer const w_formula = r.pq_count * (r.l_count - 4) + r.w0;
    check("W = |P4|(|L|-4) + W0", r.w == w_formula, vs(r.w, w_formula));
    check("W >= 9", r.w >= p.w_min, vs(r.w, p.w_min) + " (lower bound)");
    return out;
  }

}  // namespace nsg

#endif  // NSG_CONSTRUCTIONS_HPP_
