#pragma once
// Fractional set cover over all 2^n subsets, solved by an exact rational
// revised simplex with Bland's anti-cycling rule. Supplies the cover value,
// the optimal primal weights, the dual witness (an additive function tight at
// S and dominated by v everywhere), integrality gaps, and the cover-value
// table that the gap reduction runs mechanisms against.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bfm/types.hpp"
#include "bfm/valuation.hpp"

namespace bfm {

struct FractionalCover {
  Q value;
  std::vector<std::pair<AgentSet, Q>> alpha;  // nonzero primal weights
};

struct DualWitness {
  std::vector<Q> y;  // per agent; zero outside S
};

struct GapReport {
  std::vector<Q> per_subset;  // gap for every mask
  Q max_gap;
  AgentSet argmax = 0;
};

namespace detail {

// exact solve of A x = b by Gauss elimination; A square nonsingular
inline std::vector<Q> lin_solve(std::vector<std::vector<Q>> A, std::vector<Q> b) {
  int r = static_cast<int>(A.size());
  for (int col = 0; col < r; ++col) {
    int piv = -1;
    for (int i = col; i < r; ++i)
      if (A[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::logic_error("simplex basis became singular");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int i = col + 1; i < r; ++i) {
      if (A[i][col] == 0) continue;
      Q f = A[i][col] / A[col][col];
      for (int j = col; j < r; ++j) A[i][j] -= f * A[col][j];
      b[i] -= f * b[col];
    }
  }
  std::vector<Q> x(r);
  for (int i = r - 1; i >= 0; --i) {
    Q acc = b[i];
    for (int j = i + 1; j < r; ++j) acc -= A[i][j] * x[j];
    x[i] = acc / A[i][i];
  }
  return x;
}

struct CoverLp {
  Q value;
  std::vector<std::pair<AgentSet, Q>> alpha;
  std::vector<Q> y;  // indexed by row (position within S)
};

// min sum_j alpha_j v(S_j)  s.t.  for each i in S: sum_{j: i in S_j} alpha_j >= 1.
// Columns: one per subset mask (cost v(S_j), rows it covers = S_j ∩ S), then one
// surplus column per row (cost 0, coefficient -1). Global column index =
// mask, or 2^n + row for surpluses; Bland's rule uses this order.
inline CoverLp solve_cover_lp_tab(const std::vector<Q>& vtab, int n, AgentSet S) {
  CoverLp out;
  if (S == 0) {
    out.value = 0;
    return out;
  }
  if (n > 12) throw capability_error("cover LP: supports up to 12 agents");
  std::vector<int> rows;  // agent per row, ascending
  for (AgentSet t = S; t; t &= t - 1) rows.push_back(lowest_agent(t));
  int r = static_cast<int>(rows.size());
  std::vector<int> row_of(n, -1);
  for (int t = 0; t < r; ++t) row_of[rows[t]] = t;
  const long ncols = 1L << n;

  auto col_vec = [&](long col) {
    std::vector<Q> a(r, Q(0));
    if (col < ncols) {
      AgentSet hit = static_cast<AgentSet>(col) & S;
      for (AgentSet t = hit; t; t &= t - 1) a[row_of[lowest_agent(t)]] = 1;
    } else {
      a[col - ncols] = -1;
    }
    return a;
  };
  auto col_cost = [&](long col) { return col < ncols ? vtab[col] : Q(0); };

  // initial degenerate feasible basis: the column of S itself plus surpluses
  // for all rows but the first
  std::vector<long> basis;
  basis.push_back(static_cast<long>(S));
  for (int t = 1; t < r; ++t) basis.push_back(ncols + t);

  auto basis_matrix = [&]() {
    std::vector<std::vector<Q>> B(r, std::vector<Q>(r));
    for (int k = 0; k < r; ++k) {
      std::vector<Q> a = col_vec(basis[k]);
      for (int t = 0; t < r; ++t) B[t][k] = a[t];
    }
    return B;
  };

  const std::vector<Q> ones(r, Q(1));
  for (long iter = 0;; ++iter) {
    if (iter > 200000) throw std::logic_error("cover LP failed to terminate");
    std::vector<std::vector<Q>> B = basis_matrix();
    // dual: y^T B = c_B  <=>  B^T y = c_B
    std::vector<std::vector<Q>> Bt(r, std::vector<Q>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) Bt[i][j] = B[j][i];
    std::vector<Q> cb(r);
    for (int k = 0; k < r; ++k) cb[k] = col_cost(basis[k]);
    std::vector<Q> y = lin_solve(Bt, cb);

    // price all subset columns via a subset-sum table of y over S
    std::vector<Q> ysum(std::size_t{1} << n, Q(0));
    for (AgentSet m = 1; m < ysum.size(); ++m) {
      if ((m & S) != m) continue;
      ysum[m] = ysum[m & (m - 1)] + y[row_of[lowest_agent(m)]];
    }
    long entering = -1;
    for (long j = 0; j < ncols; ++j)
      if (vtab[j] < ysum[j & S]) {  // reduced cost negative
        entering = j;
        break;
      }
    if (entering < 0)
      for (int t = 0; t < r; ++t)
        if (y[t] < 0) {
          entering = ncols + t;
          break;
        }
    if (entering < 0) {
      // optimal; extract primal
      std::vector<Q> xb = lin_solve(basis_matrix(), ones);
      out.value = 0;
      for (int k = 0; k < r; ++k) {
        if (xb[k] < 0) throw std::logic_error("cover LP: infeasible basic solution");
        out.value += cb[k] * xb[k];
        if (basis[k] < ncols && xb[k] != 0)
          out.alpha.emplace_back(static_cast<AgentSet>(basis[k]), xb[k]);
      }
      out.y = std::move(y);
      return out;
    }

    std::vector<Q> d = lin_solve(basis_matrix(), col_vec(entering));
    std::vector<Q> xb = lin_solve(basis_matrix(), ones);
    int leave = -1;
    Q best_ratio;
    for (int k = 0; k < r; ++k) {
      if (d[k] <= 0) continue;
      Q ratio = xb[k] / d[k];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[k] < basis[leave])) {
        leave = k;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("cover LP: unbounded (cannot happen)");
    basis[leave] = entering;
  }
}
}  // namespace detail

inline std::pair<Q, FractionalCover> fractional_cover_value(const ValuationSpec& spec,
                                                            AgentSet S) {
  std::vector<Q> vtab = tabulate(spec);
  detail::CoverLp lp = detail::solve_cover_lp_tab(vtab, spec.n, S);
  FractionalCover cover;
  cover.value = lp.value;
  cover.alpha = lp.alpha;
  return {lp.value, std::move(cover)};
}

inline DualWitness dual_witness_tab(const std::vector<Q>& vtab, int n, AgentSet S) {
  detail::CoverLp lp = detail::solve_cover_lp_tab(vtab, n, S);
  DualWitness w;
  w.y.assign(n, Q(0));
  int t = 0;
  for (AgentSet m = S; m; m &= m - 1) w.y[lowest_agent(m)] = lp.y[t++];
  return w;
}

inline DualWitness dual_witness(const ValuationSpec& spec, AgentSet S) {
  std::vector<Q> vtab = tabulate(spec);
  return dual_witness_tab(vtab, spec.n, S);
}

// cover value for every subset
inline std::vector<Q> cover_value_table(const std::vector<Q>& vtab, int n) {
  std::vector<Q> out(std::size_t{1} << n);
  for (AgentSet S = 0; S < out.size(); ++S)
    out[S] = detail::solve_cover_lp_tab(vtab, n, S).value;
  return out;
}

inline Q integrality_gap_tab(const std::vector<Q>& vtab, const Q& cover, AgentSet S) {
  if (cover == 0) {
    if (vtab[S] == 0) return Q(1);  // 0/0 := 1
    throw std::domain_error("integrality gap undefined: zero cover value for " +
                            set_to_string(S) + " with positive v");
  }
  return vtab[S] / cover;
}

inline Q integrality_gap(const ValuationSpec& spec, AgentSet S) {
  std::vector<Q> vtab = tabulate(spec);
  return integrality_gap_tab(vtab, detail::solve_cover_lp_tab(vtab, spec.n, S).value, S);
}

inline GapReport max_integrality_gap(const ValuationSpec& spec) {
  std::vector<Q> vtab = tabulate(spec);
  GapReport rep;
  rep.per_subset.resize(vtab.size());
  rep.max_gap = 1;
  for (AgentSet S = 0; S < vtab.size(); ++S) {
    Q cover = detail::solve_cover_lp_tab(vtab, spec.n, S).value;
    rep.per_subset[S] = integrality_gap_tab(vtab, cover, S);
    if (rep.per_subset[S] > rep.max_gap) {
      rep.max_gap = rep.per_subset[S];
      rep.argmax = S;
    }
  }
  return rep;
}

// true iff the largest gap over all subsets is exactly 1; an undefined gap
// (free cover below a positive value) certifies "no" without throwing
inline bool certify_xos_tab(const std::vector<Q>& vtab, int n) {
  for (AgentSet S = 0; S < vtab.size(); ++S) {
    Q cover = detail::solve_cover_lp_tab(vtab, n, S).value;
    if (cover == 0 ? vtab[S] != 0 : vtab[S] != cover) return false;
  }
  return true;
}

inline bool certify_xos(const ValuationSpec& spec) {
  if (spec.kind == VKind::XosClauses) return true;
  std::vector<Q> vtab = tabulate(spec);
  return certify_xos_tab(vtab, spec.n);
}

// Materialize the cover values as a valuation of their own. The result always
// certifies as XOS and is sandwiched between v/I and v.
inline ValuationSpec tilde_valuation_table(const ValuationSpec& spec) {
  std::vector<Q> vtab = tabulate(spec);
  return make_table(cover_value_table(vtab, spec.n));
}

}  // namespace bfm
