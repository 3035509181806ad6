#include "monodyn/shifteq.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "monodyn/error.hpp"
#include "monodyn/smith.hpp"

namespace monodyn {

namespace {

std::string shape(const IntMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_square(const IntMatrix& m, const char* what) {
  if (!m.is_square()) throw ShapeError(std::string(what) + " must be square, got " + shape(m));
}

}  // namespace

bool verify_elementary(const IntMatrix& a, const IntMatrix& b, const ESWitness& w) {
  require_square(a, "A");
  require_square(b, "B");
  const std::size_t n = a.rows(), d = b.rows();
  if (w.r.rows() != n || w.r.cols() != d)
    throw ShapeError("R must be " + std::to_string(n) + "x" + std::to_string(d) + ", got " + shape(w.r));
  if (w.s.rows() != d || w.s.cols() != n)
    throw ShapeError("S must be " + std::to_string(d) + "x" + std::to_string(n) + ", got " + shape(w.s));
  if (!a.is_nonnegative() || !b.is_nonnegative() || !w.r.is_nonnegative() || !w.s.is_nonnegative()) return false;
  return w.r * w.s == a && w.s * w.r == b;
}

bool verify_se(const IntMatrix& a, const IntMatrix& b, const SEWitness& w) {
  require_square(a, "A");
  require_square(b, "B");
  const std::size_t n = a.rows(), m = b.rows();
  if (w.r.rows() != n || w.r.cols() != m)
    throw ShapeError("R must be " + std::to_string(n) + "x" + std::to_string(m) + ", got " + shape(w.r));
  if (w.s.rows() != m || w.s.cols() != n)
    throw ShapeError("S must be " + std::to_string(m) + "x" + std::to_string(n) + ", got " + shape(w.s));
  if (w.lag == 0) return false;
  if (!a.is_nonnegative() || !b.is_nonnegative() || !w.r.is_nonnegative() || !w.s.is_nonnegative()) return false;
  return power(a, w.lag) == w.r * w.s && power(b, w.lag) == w.s * w.r && a * w.r == w.r * b &&
         w.s * a == b * w.s;
}

ChainCheck verify_sse_chain(const SSEChain& chain) {
  const std::size_t k = chain.matrices.size();
  if (k == 0) return {chain.links.empty(), chain.links.empty() ? std::nullopt : std::optional<std::size_t>(0)};
  auto product = [](const IntMatrix& x, const IntMatrix& y) -> std::optional<IntMatrix> {
    if (x.cols() != y.rows()) return std::nullopt;
    return x * y;
  };
  for (std::size_t i = 0; i < k; ++i) {
    const IntMatrix& m = chain.matrices[i];
    bool ok = m.is_square() && m.is_nonnegative();
    if (ok && i > 0) {
      if (i - 1 >= chain.links.size()) {
        ok = false;
      } else {
        const auto& l = chain.links[i - 1];
        auto sr = product(l.s, l.r);
        ok = l.r.is_nonnegative() && l.s.is_nonnegative() && sr && *sr == m;
      }
    }
    if (ok && i + 1 < k) {
      if (i >= chain.links.size()) {
        ok = false;
      } else {
        const auto& l = chain.links[i];
        auto rs = product(l.r, l.s);
        ok = l.r.is_nonnegative() && l.s.is_nonnegative() && rs && *rs == m;
      }
    }
    if (ok && i + 1 == k && chain.links.size() != k - 1) ok = false;
    if (!ok) return {false, i};
  }
  return {true, std::nullopt};
}

IntMatrix permute(const IntMatrix& m, const std::vector<std::size_t>& perm) {
  require_square(m, "matrix");
  if (perm.size() != m.rows()) throw ShapeError("permutation length does not match matrix");
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(perm[i], perm[j]);
  return out;
}

CanonicalForm canonical_form(const IntMatrix& m) {
  require_square(m, "matrix");
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalForm best{m, perm};
  // Beyond 8 vertices the factorial search is too costly; fall back to identity.
  if (m.rows() > 8) return best;
  while (std::next_permutation(perm.begin(), perm.end())) {
    IntMatrix p = permute(m, perm);
    if (p < best.matrix) best = {std::move(p), perm};
  }
  return best;
}

namespace {

/// Advances a vector of digits in [0, base] as a big-endian odometer.
bool advance(std::vector<long>& digits, long base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < base) {
      ++digits[i];
      return true;
    }
    digits[i] = 0;
  }
  return false;
}

}  // namespace

std::vector<ESWitness> factorizations(const IntMatrix& m, std::size_t inner_dim) {
  std::vector<ESWitness> out;
  if (inner_dim == 0 || m.empty()) return out;
  if (!m.is_nonnegative()) throw DomainError("factorizations require a nonnegative matrix");
  const long e = m.max_entry().get_si();
  const std::size_t n = m.rows(), c = m.cols(), d = inner_dim;

  std::vector<long> r(n * d, 0);
  do {
    IntMatrix rm(n, d);
    for (std::size_t i = 0; i < n * d; ++i) rm(i / d, i % d) = r[i];
    if (rm.has_zero_column()) continue;
    // Solutions s in [0, e]^d of R s = column j of M, in lexicographic order.
    std::vector<std::vector<std::vector<long>>> columns(c);
    bool feasible = true;
    for (std::size_t j = 0; j < c && feasible; ++j) {
      std::vector<long> s(d, 0);
      do {
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) {
          long sum = 0;
          for (std::size_t k = 0; k < d; ++k) sum += r[i * d + k] * s[k];
          match = m(i, j) == sum;
        }
        if (match) columns[j].push_back(s);
      } while (advance(s, e));
      feasible = !columns[j].empty();
    }
    if (!feasible) continue;
    std::vector<std::size_t> pick(c, 0);
    while (true) {
      IntMatrix sm(d, c);
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t k = 0; k < d; ++k) sm(k, j) = columns[j][pick[j]][k];
      if (!sm.has_zero_row()) out.push_back({rm, std::move(sm)});
      std::size_t j = c;
      while (j-- > 0) {
        if (++pick[j] < columns[j].size()) break;
        pick[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  } while (advance(r, e));
  return out;
}

namespace {

IntMatrix permutation_matrix(const std::vector<std::size_t>& pi) {
  IntMatrix p(pi.size(), pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) p(pi[i], i) = 1;
  return p;
}

/// pi with target(i, j) = source(pi[i], pi[j]), from the canonical permutations of both.
std::vector<std::size_t> conjugating_permutation(const std::vector<std::size_t>& p_source,
                                                 const std::vector<std::size_t>& q_target) {
  std::vector<std::size_t> q_inv(q_target.size()), pi(q_target.size());
  for (std::size_t i = 0; i < q_target.size(); ++i) q_inv[q_target[i]] = i;
  for (std::size_t k = 0; k < pi.size(); ++k) pi[k] = p_source[q_inv[k]];
  return pi;
}

struct SearchNode {
  IntMatrix matrix;
  std::size_t parent;
  ESWitness link;
  unsigned depth;
};

SSEChain build_chain(const std::vector<SearchNode>& nodes, std::size_t last) {
  std::vector<std::size_t> path;
  for (std::size_t i = last;; i = nodes[i].parent) {
    path.push_back(i);
    if (i == 0) break;
  }
  std::reverse(path.begin(), path.end());
  SSEChain chain;
  for (std::size_t k = 0; k < path.size(); ++k) {
    chain.matrices.push_back(nodes[path[k]].matrix);
    if (k > 0) chain.links.push_back(nodes[path[k]].link);
  }
  return chain;
}

/// Makes the chain end exactly at b by folding the conjugating permutation
/// into the last link (R·P, Pᵀ·S); appends a permutation link when there is none.
void finish_at(SSEChain& chain, const IntMatrix& b, const std::vector<std::size_t>& pi) {
  if (chain.matrices.back() == b) return;
  const IntMatrix p = permutation_matrix(pi);
  const IntMatrix pt = p.transpose();
  if (chain.links.empty()) {
    const IntMatrix& a = chain.matrices.back();
    chain.links.push_back({a * p, pt});
  } else {
    auto& l = chain.links.back();
    l = {l.r * p, pt * l.s};
    chain.matrices.pop_back();
  }
  chain.matrices.push_back(b);
}

}  // namespace

SSESearchResult sse_search(const IntMatrix& a, const IntMatrix& b, const SSESearchBounds& bounds) {
  require_square(a, "A");
  require_square(b, "B");
  if (!a.is_nonnegative() || !b.is_nonnegative()) throw DomainError("sse_search requires nonnegative matrices");
  SSESearchResult result;
  const CanonicalForm target = canonical_form(b);

  std::vector<SearchNode> nodes;
  std::set<IntMatrix> seen;
  auto hit = [&](std::size_t idx, const CanonicalForm& cf) {
    SSEChain chain = build_chain(nodes, idx);
    finish_at(chain, b, conjugating_permutation(cf.perm, target.perm));
    result.chain = std::move(chain);
    result.depth_reached = nodes[idx].depth;
  };

  const CanonicalForm start = canonical_form(a);
  nodes.push_back({a, 0, {}, 0});
  seen.insert(start.matrix);
  result.nodes_explored = 1;
  if (start.matrix == target.matrix) {
    hit(0, start);
    return result;
  }

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const unsigned depth = nodes[head].depth;
    result.depth_reached = std::max(result.depth_reached, depth);
    if (depth >= bounds.max_depth) continue;
    for (std::size_t d = 1; d <= bounds.max_inner_dim; ++d) {
      for (auto& f : factorizations(nodes[head].matrix, d)) {
        IntMatrix next = f.s * f.r;
        CanonicalForm cf = canonical_form(next);
        if (!seen.insert(cf.matrix).second) continue;
        if (nodes.size() >= bounds.max_nodes) {
          result.node_cap_hit = true;
          return result;
        }
        nodes.push_back({std::move(next), head, std::move(f), depth + 1});
        ++result.nodes_explored;
        if (cf.matrix == target.matrix) {
          hit(nodes.size() - 1, cf);
          return result;
        }
      }
    }
  }
  return result;
}

BowenFranks bowen_franks(const IntMatrix& a) {
  require_square(a, "matrix");
  const SmithForm snf = smith_normal_form(IntMatrix::identity(a.rows()) - a);
  BowenFranks bf;
  for (const auto& d : snf.diagonal) {
    if (d == 0)
      ++bf.free_rank;
    else if (d > 1)
      bf.invariant_factors.push_back(d);
  }
  return bf;
}

std::string format_bowen_franks(const BowenFranks& bf) {
  std::string s;
  for (const auto& d : bf.invariant_factors) s += (s.empty() ? "" : " + ") + ("Z/" + d.get_str());
  if (bf.free_rank > 0) s += (s.empty() ? "" : " + ") + ("Z^" + std::to_string(bf.free_rank));
  return s.empty() ? "0" : s;
}

InvariantReport invariants_report(const IntMatrix& a, const IntMatrix& b) {
  InvariantReport r;
  r.bowen_franks_a = bowen_franks(a);
  r.bowen_franks_b = bowen_franks(b);
  r.charpoly_core_a = strip_t_factors(characteristic_polynomial(a));
  r.charpoly_core_b = strip_t_factors(characteristic_polynomial(b));
  if (!(r.bowen_franks_a == r.bowen_franks_b)) r.mismatches.push_back("bowen_franks");
  if (r.charpoly_core_a != r.charpoly_core_b) r.mismatches.push_back("charpoly_core");
  r.obstruction = !r.mismatches.empty();
  return r;
}

namespace {

/// Nonnegative nonzero matrices in the lattice spanned by `basis` columns
/// (reshaped rows x cols, row-major), coefficients in [-c, c].
std::vector<IntMatrix> nonnegative_combinations(const IntMatrix& basis, std::size_t rows, std::size_t cols, int c,
                                                std::size_t cap, bool& cap_hit) {
  std::vector<IntMatrix> out;
  const std::size_t k = basis.cols();
  if (k == 0) return out;
  std::set<IntMatrix> seen;
  std::vector<long> digits(k, 0);
  std::size_t tried = 0;
  do {
    if (++tried > cap) {
      cap_hit = true;
      break;
    }
    IntMatrix m(rows, cols);
    bool nonneg = true, nonzero = false;
    for (std::size_t e = 0; e < rows * cols && nonneg; ++e) {
      Integer v = 0;
      for (std::size_t j = 0; j < k; ++j) v += basis(e, j) * (digits[j] - c);
      nonneg = sgn(v) >= 0;
      nonzero = nonzero || sgn(v) > 0;
      m(e / cols, e % cols) = v;
    }
    if (nonneg && nonzero && seen.insert(m).second) out.push_back(std::move(m));
  } while (advance(digits, 2L * c));
  return out;
}

}  // namespace

SESearchResult se_search(const IntMatrix& a, const IntMatrix& b, const SESearchBounds& bounds) {
  require_square(a, "A");
  require_square(b, "B");
  if (!a.is_nonnegative() || !b.is_nonnegative()) throw DomainError("se_search requires nonnegative matrices");
  SESearchResult result;
  InvariantReport inv = invariants_report(a, b);
  if (inv.obstruction) {
    result.obstruction = std::move(inv);
    return result;
  }
  if (a == b) {
    result.witness = SEWitness{a, IntMatrix::identity(a.rows()), 1};
    return result;
  }
  const std::size_t n = a.rows(), m = b.rows();
  // A R - R B = 0 with R n x m, unknown index i*m + j.
  IntMatrix eq_r(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t row = i * m + j;
      for (std::size_t k = 0; k < n; ++k) eq_r(row, k * m + j) += a(i, k);
      for (std::size_t k = 0; k < m; ++k) eq_r(row, i * m + k) -= b(k, j);
    }
  // S A - B S = 0 with S m x n, unknown index i*n + j.
  IntMatrix eq_s(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) eq_s(row, i * n + k) += a(k, j);
      for (std::size_t k = 0; k < m; ++k) eq_s(row, k * n + j) -= b(i, k);
    }
  const auto rs = nonnegative_combinations(integer_kernel(eq_r), n, m, bounds.coeff_bound, bounds.max_combinations,
                                           result.combination_cap_hit);
  const auto ss = nonnegative_combinations(integer_kernel(eq_s), m, n, bounds.coeff_bound, bounds.max_combinations,
                                           result.combination_cap_hit);
  result.r_candidates = rs.size();
  result.s_candidates = ss.size();
  IntMatrix pa = IntMatrix::identity(n), pb = IntMatrix::identity(m);
  for (unsigned lag = 1; lag <= bounds.max_lag; ++lag) {
    pa = pa * a;
    pb = pb * b;
    for (const auto& r : rs)
      for (const auto& s : ss)
        if (r * s == pa && s * r == pb) {
          result.witness = SEWitness{r, s, lag};
          return result;
        }
  }
  return result;
}

}  // namespace monodyn
