#ifndef NSG_WILF_HPP_
#define NSG_WILF_HPP_

#include <utility>
#include <vector>

#include "error.hpp"
#include "semigroup.hpp"

namespace nsg {

  // Every invariant entering W(S) and W_0(S).
  struct WilfReport {
    integer m        = 0;
    integer c        = 0;
    integer q        = 0;
    integer rho      = 0;
    integer genus    = 0;
    integer p_total  = 0;  // |P|
    integer p_left   = 0;  // |P ∩ L|
    integer l_count  = 0;  // |L|
    integer dq_count = 0;  // |D_q|
    integer pq_count = 0;  // |P_q|
    integer w        = 0;
    integer w0       = 0;
    bool    near_miss = false;

    friend bool operator==(WilfReport const&, WilfReport const&) = default;
  };

  // q = ceil(c/m) and rho = qm - c; (0, 0) for N.
  inline std::pair<integer, integer> q_rho(NumericalSemigroup const& s) {
    return {s.q(), s.rho()};
  }

  // |L|; the window stores exactly c - g members below the conductor.
  inline integer left_count(NumericalSemigroup const& s) {
    return s.conductor() - s.genus();
  }

  // W(S) = |P||L| - c.
  inline integer wilf_number(NumericalSemigroup const& s) {
    integer const p = static_cast<integer>(s.generators().size());
    return checked::sub(checked::mul(p, left_count(s)), s.conductor());
  }

  namespace detail {

    struct PrimitiveSplit {
      integer left = 0;   // |P ∩ L|
      integer right = 0;  // |P \ L|, which is |P_q| whenever S != N
    };

    inline PrimitiveSplit split_primitives(NumericalSemigroup const& s) {
      PrimitiveSplit out;
      for (integer p : s.generators()) {
        (p < s.conductor() ? out.left : out.right) += 1;
      }
      return out;
    }

  }  // namespace detail

  // W_0(S) = |P ∩ L||L| - q|D_q| + rho, with D_q = D ∩ [c, c + m - 1].
  // For N every term vanishes (q = rho = |L| = 0), so W_0 = 0.
  inline integer w0_number(NumericalSemigroup const& s) {
    auto const    split = detail::split_primitives(s);
    integer const dq    = s.multiplicity() - split.right;
    return checked::add(checked::sub(checked::mul(split.left, left_count(s)),
                                     checked::mul(s.q(), dq)),
                        s.rho());
  }

  struct SliceRow {
    integer j             = 0;
    integer apery         = 0;  // |X_j|
    integer primitives    = 0;  // |P_j|
    integer decomposables = 0;  // |D_j|

    friend bool operator==(SliceRow const&, SliceRow const&) = default;
  };

  struct SliceProfile {
    std::vector<SliceRow> rows;  // j = 0, ..., q
    integer               apery_top_decomposable = 0;  // |X_q ∩ D|
  };

  inline SliceProfile slice_profile(NumericalSemigroup const& s) {
    integer const q = s.q();
    SliceProfile  out;
    out.rows.resize(static_cast<std::size_t>(q + 1));
    for (integer j = 0; j <= q; ++j) {
      out.rows[j].j = j;
    }
    auto const table = apery_set(s);
    for (std::size_t i = 0; i < table.elements.size(); ++i) {
      integer const j = table.slice_index[i];
      out.rows[j].apery += 1;
      if (j == q && table.decomposable[i]) {
        out.apery_top_decomposable += 1;
      }
    }
    // Slices beyond S_0 up to S_q cover [m - rho, c + m - 1].
    for (integer x = 1; x < s.window_size(); ++x) {
      if (!s.contains(x)) {
        continue;
      }
      integer const j = s.slice_of(x);
      if (j > q) {
        continue;
      }
      (s.is_primitive(x) ? out.rows[j].primitives : out.rows[j].decomposables)
          += 1;
    }
    return out;
  }

  // Checks |L| = sum (q - i)|X_i| and |D_q| = sum_{i<q} |X_i| + |X_q ∩ D|,
  // together with the set identity
  //   D_q = (X_q ∩ D) ⊔ ⊔_{i<q} (X_i + (q - i)m).
  inline bool check_count_formulas(NumericalSemigroup const& s) {
    integer const q = s.q();
    // For q = 1 the shift X_0 + m = m is primitive, so the D_q count is off by one.
    if (q < 2) {
      throw precondition_error("count formulas need q >= 2");
    }
    integer const m     = s.multiplicity();
    auto const    table = apery_set(s);

    integer l_formula  = 0;
    integer dq_formula = 0;
    // Membership flags of the right-hand side of the D_q decomposition,
    // indexed by offset from c.
    std::vector<int> covered(static_cast<std::size_t>(m), 0);
    for (std::size_t k = 0; k < table.elements.size(); ++k) {
      integer const x = table.elements[k];
      integer const i = table.slice_index[k];
      if (i < q) {
        l_formula += q - i;
        dq_formula += 1;
        integer const y = x + (q - i) * m;
        if (y < s.conductor() || y >= s.conductor() + m) {
          return false;
        }
        covered[y - s.conductor()] += 1;
      } else if (table.decomposable[k]) {
        dq_formula += 1;
        integer const y = x;
        if (y < s.conductor() || y >= s.conductor() + m) {
          return false;
        }
        covered[y - s.conductor()] += 1;
      }
    }

    integer dq_direct = 0;
    for (integer y = s.conductor(); y < s.conductor() + m; ++y) {
      bool const in_dq = !s.is_primitive(y);
      dq_direct += in_dq;
      if (covered[y - s.conductor()] != (in_dq ? 1 : 0)) {
        return false;
      }
    }
    return l_formula == left_count(s) && dq_formula == dq_direct;
  }

  inline WilfReport wilf_report(NumericalSemigroup const& s) {
    WilfReport r;
    r.m        = s.multiplicity();
    r.c        = s.conductor();
    r.q        = s.q();
    r.rho      = s.rho();
    r.genus    = s.genus();
    r.p_total  = static_cast<integer>(s.generators().size());
    r.l_count  = left_count(s);
    auto const split = detail::split_primitives(s);
    r.p_left   = split.left;
    r.pq_count = split.right;
    // For N, P = {1} = P \ L gives |P_q| = 1 and |D_q| = 0, which keeps
    // |P| = |P ∩ L| + |P_q| and m = |P_q| + |D_q| true there as well.
    r.dq_count = r.m - r.pq_count;
    r.w         = wilf_number(s);
    r.w0        = w0_number(s);
    r.near_miss = r.w0 < 0;
    return r;
  }

  // W_0 + C(n, 3) with n = |P ∩ L|; negative means a counterexample to the
  // lower bound W_0 >= -C(n, 3) expected for q = 4.
  inline integer bound_slack(WilfReport const& r) {
    return checked::add(r.w0, checked::binomial(r.p_left, 3));
  }

}  // namespace nsg

#endif  // NSG_WILF_HPP_
