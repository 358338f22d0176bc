#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylks/assignment.hpp"
#include "weylks/certificate.hpp"

namespace weylks {

// Obstruction search
//
// Candidate certificates are assembled from phase-free monomials with
// exponents inside a box. Only contexts whose members commute pairwise and
// whose exponents sum to zero are considered: their operator product is a
// pure scalar, so each context is a self-contained parity constraint. A
// context whose scalar is an odd phase seeds the search; depth-first
// extension then adds contexts until every monomial is balanced against its
// inverse, at which point the combined rows form an integer witness whose
// odd accumulated phase is checked exactly before the certificate is
// reported.
//
// Extension contexts always consist of one monomial from the currently
// unbalanced class plus members confined to the generator slots that monomial
// itself touches (with a lexicographic tie-break when the slot sets match).
// That shape restriction is what keeps the tree narrow; it is deliberately
// tighter than "all certificates", so an exhausted search only means "nothing
// of this family in the box". The absent status is narrower still: it is
// reported when the box contains no odd-scalar context at all, and every
// certificate of the searched family needs one to seed it.

struct SearchParams {
  std::size_t n_dof = 2;
  std::vector<Rat> theta;  // empty means all twists are 1
  long max_exponent = 1;
  std::size_t max_context_size = 4;
  std::size_t max_contexts = 8;
  std::uint64_t node_budget = 20000000;
  double time_budget_seconds = 0;  // 0 disables the clock
  bool u_only = false;
  bool use_symmetry = true;
};

enum class SearchStatus { found, absent, exhausted };

struct SearchStats {
  std::size_t pool_size = 0;
  std::size_t class_count = 0;
  std::size_t seeds = 0;
  std::size_t seeds_after_symmetry = 0;
  std::uint64_t nodes = 0;
  bool node_budget_hit = false;
  bool time_budget_hit = false;
};

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
  std::size_t contexts_used = 0;
  SearchStats stats;
};

// All distinct monomial classes with exponents in [-e, e]: phase stripped and
// each monomial identified with its exponent-negated partner, represented by
// the orientation whose first nonzero exponent is positive. The identity
// class is included.
inline std::vector<WeylMonomial> enumerate_monomial_classes(const DofSystemPtr& system,
                                                            long max_exponent,
                                                            bool u_only = false) {
  if (max_exponent < 1) throw error("exponent bound must be at least 1");
  const std::size_t d = system->n_dof();
  std::vector<WeylMonomial> out;
  std::vector<Int> m(d, 0), n(d, 0);
  std::vector<long> digits(2 * d, -max_exponent);
  const long base = 2 * max_exponent + 1;
  const auto total = [&] {
    double t = 1;
    for (std::size_t i = 0; i < 2 * d; ++i) t *= static_cast<double>(base);
    if (t > 4e6) throw error("exponent box too large to enumerate");
    return static_cast<std::uint64_t>(t);
  }();
  for (std::uint64_t it = 0; it < total; ++it) {
    std::uint64_t v = it;
    bool first_sign_ok = true, seen_nonzero = false, has_v = false;
    for (std::size_t i = 0; i < 2 * d; ++i) {
      const long e = static_cast<long>(v % base) - max_exponent;
      v /= base;
      if (i % 2 == 0)
        m[i / 2] = e;
      else {
        n[i / 2] = e;
        if (e != 0) has_v = true;
      }
      if (!seen_nonzero && e != 0) {
        seen_nonzero = true;
        first_sign_ok = e > 0;
      }
    }
    if (seen_nonzero && !first_sign_ok) continue;  // the negated partner represents
    if (u_only && has_v) continue;
    out.emplace_back(system, PhaseExp(), m, n);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

namespace detail {

// machine-word mirror of a phase-free monomial, for the search hot path
struct PoolEntry {
  std::vector<int> exps;  // interleaved m1, n1, m2, n2, ...
  int support = 0;        // degrees of freedom touched
  unsigned slots = 0;     // bitmask of nonzero exponent positions
  std::size_t cls = 0;    // inverse-pair class id
  bool is_rep = false;    // this orientation's first nonzero exponent is positive
  unsigned inv_parity = 0;  // sum_j theta_j m_j n_j mod 2
};

struct SearchSpace {
  DofSystemPtr system;
  std::vector<long> theta;  // integer twists
  std::vector<PoolEntry> pool;
  std::map<std::vector<int>, std::size_t> index_of;
  std::vector<std::vector<std::uint64_t>> commute;  // bitset per entry
  std::vector<std::vector<std::uint64_t>> cross_parity;
  std::size_t n_classes = 0;
  std::vector<unsigned> class_link_parity;  // inv_parity of the class rep
  std::size_t words = 0;

  bool commutes(std::size_t i, std::size_t j) const {
    return (commute[i][j >> 6] >> (j & 63)) & 1u;
  }
  // parity of the reordering phase picked up when i passes left of j
  unsigned cross(std::size_t i, std::size_t j) const {
    return static_cast<unsigned>((cross_parity[i][j >> 6] >> (j & 63)) & 1u);
  }
};

inline SearchSpace build_space(const SearchParams& p) {
  if (p.n_dof < 1 || p.n_dof > 6) throw error("search supports 1 to 6 degrees of freedom");
  if (p.max_exponent < 1 || p.max_exponent > 3)
    throw error("search exponent bound must be between 1 and 3");
  if (p.max_context_size < 2 || p.max_context_size > 6)
    throw error("context size bound must be between 2 and 6");

  SearchSpace sp;
  std::vector<Rat> theta = p.theta;
  if (theta.empty()) theta.assign(p.n_dof, Rat(1));
  sp.system = make_system(theta);
  if (sp.system->n_dof() != p.n_dof)
    throw error("twist list does not match the degree-of-freedom count");
  for (const auto& t : theta) {
    if (t.get_den() != 1)
      throw error("the search works over integer twists only; the verifier handles rationals");
    Int num = t.get_num();
    if (!num.fits_slong_p()) throw error("twist too large for the search");
    sp.theta.push_back(num.get_si());
  }

  const std::size_t d = p.n_dof;
  const long base = 2 * p.max_exponent + 1;
  double total = 1;
  for (std::size_t i = 0; i < 2 * d; ++i) total *= static_cast<double>(base);
  if (total > 2e6) throw error("exponent box too large to search");

  for (std::uint64_t it = 0; it < static_cast<std::uint64_t>(total); ++it) {
    std::uint64_t v = it;
    PoolEntry e;
    e.exps.resize(2 * d);
    bool nonzero = false, has_v = false;
    for (std::size_t i = 0; i < 2 * d; ++i) {
      e.exps[i] = static_cast<int>(static_cast<long>(v % base) - p.max_exponent);
      v /= base;
      if (e.exps[i] != 0) {
        nonzero = true;
        e.slots |= 1u << i;
        if (i % 2 == 1) has_v = true;
      }
    }
    if (!nonzero) continue;
    if (p.u_only && has_v) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (e.exps[2 * j] != 0 || e.exps[2 * j + 1] != 0) ++e.support;
    unsigned ip = 0;
    for (std::size_t j = 0; j < d; ++j)
      ip ^= static_cast<unsigned>(((sp.theta[j] % 2) * e.exps[2 * j] * e.exps[2 * j + 1]) & 1);
    e.inv_parity = ip & 1u;
    sp.pool.push_back(std::move(e));
  }
  std::sort(sp.pool.begin(), sp.pool.end(),
            [](const PoolEntry& a, const PoolEntry& b) { return a.exps < b.exps; });
  for (std::size_t i = 0; i < sp.pool.size(); ++i) sp.index_of[sp.pool[i].exps] = i;

  // inverse-pair classes
  std::map<std::vector<int>, std::size_t> class_of;
  for (auto& e : sp.pool) {
    std::vector<int> rep = e.exps;
    bool flip = false;
    for (int x : rep) {
      if (x == 0) continue;
      flip = x < 0;
      break;
    }
    if (flip)
      for (int& x : rep) x = -x;
    e.is_rep = !flip;
    auto it = class_of.find(rep);
    if (it == class_of.end()) {
      it = class_of.emplace(rep, class_of.size()).first;
      sp.class_link_parity.push_back(e.inv_parity);  // same for both orientations
    }
    e.cls = it->second;
  }
  sp.n_classes = class_of.size();

  sp.words = (sp.pool.size() + 63) / 64;
  sp.commute.assign(sp.pool.size(), std::vector<std::uint64_t>(sp.words, 0));
  sp.cross_parity.assign(sp.pool.size(), std::vector<std::uint64_t>(sp.words, 0));
  for (std::size_t i = 0; i < sp.pool.size(); ++i)
    for (std::size_t j = 0; j < sp.pool.size(); ++j) {
      long cij = 0, cji = 0;
      for (std::size_t k = 0; k < d; ++k) {
        cij += sp.theta[k] * sp.pool[i].exps[2 * k + 1] * sp.pool[j].exps[2 * k];
        cji += sp.theta[k] * sp.pool[j].exps[2 * k + 1] * sp.pool[i].exps[2 * k];
      }
      if (((cij - cji) & 1) == 0) sp.commute[i][j >> 6] |= 1ull << (j & 63);
      if (cij & 1) sp.cross_parity[i][j >> 6] |= 1ull << (j & 63);
    }
  return sp;
}

// parity of the scalar produced by multiplying the (commuting) members
inline unsigned product_parity(const SearchSpace& sp, const std::vector<std::size_t>& ctx) {
  unsigned q = 0;
  for (std::size_t a = 0; a < ctx.size(); ++a)
    for (std::size_t b = a + 1; b < ctx.size(); ++b) q ^= sp.cross(ctx[a], ctx[b]);
  return q;
}

// dof-wise Fourier rotations and dof permutations; used to identify seeds
// that generate isomorphic search trees
inline std::vector<int> transform_exps(const std::vector<int>& exps,
                                       const std::vector<std::size_t>& perm,
                                       const std::vector<int>& fourier) {
  const std::size_t d = perm.size();
  std::vector<int> out(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    int m = exps[2 * j], n = exps[2 * j + 1];
    for (int f = 0; f < fourier[j]; ++f) {
      const int nm = -n, nn = m;  // U -> V, V -> U^-1
      m = nm;
      n = nn;
    }
    out[2 * perm[j]] = m;
    out[2 * perm[j] + 1] = n;
  }
  return out;
}

using ContextKey = std::vector<std::size_t>;  // sorted pool indices

inline std::vector<std::vector<int>> context_shape(const SearchSpace& sp, const ContextKey& ctx) {
  std::vector<std::vector<int>> shape;
  shape.reserve(ctx.size());
  for (auto i : ctx) shape.push_back(sp.pool[i].exps);
  std::sort(shape.begin(), shape.end());
  return shape;
}

inline bool is_canonical_seed(const SearchSpace& sp, const ContextKey& ctx) {
  const std::size_t d = sp.system->n_dof();
  const auto own = context_shape(sp, ctx);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool theta_ok = true;
    for (std::size_t j = 0; j < d; ++j)
      if (sp.theta[j] != sp.theta[perm[j]]) theta_ok = false;
    if (!theta_ok) continue;
    std::vector<int> fourier(d, 0);
    for (;;) {
      std::vector<std::vector<int>> img;
      img.reserve(ctx.size());
      bool inside = true;
      for (auto i : ctx) {
        auto t = transform_exps(sp.pool[i].exps, perm, fourier);
        if (!sp.index_of.count(t)) {
          inside = false;  // rotated out of the exponent box
          break;
        }
        img.push_back(std::move(t));
      }
      if (inside) {
        std::sort(img.begin(), img.end());
        if (img < own) return false;
      }
      std::size_t j = 0;
      for (; j < d; ++j) {
        if (++fourier[j] < 4) break;
        fourier[j] = 0;
      }
      if (j == d) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace detail

inline SearchResult search_obstruction(const SearchParams& params) {
  using detail::SearchSpace;
  SearchResult res;
  SearchSpace sp = detail::build_space(params);
  res.stats.pool_size = sp.pool.size();
  res.stats.class_count = sp.n_classes;

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(params.time_budget_seconds));
  const bool use_clock = params.time_budget_seconds > 0;
  const auto out_of_time = [&] {
    return use_clock && std::chrono::steady_clock::now() >= deadline;
  };

  // ---- seed enumeration: zero-sum commuting contexts with an odd scalar
  std::vector<detail::ContextKey> seeds;
  const std::size_t npool = sp.pool.size();
  const std::size_t d2 = 2 * params.n_dof;

  const auto try_seed = [&](detail::ContextKey ctx) {
    if (detail::product_parity(sp, ctx) == 0) return;
    seeds.push_back(std::move(ctx));
  };

  if (params.max_context_size >= 3) {
    std::vector<int> sum(d2);
    for (std::size_t i = 0; i < npool; ++i)
      for (std::size_t j = i + 1; j < npool; ++j) {
        if (!sp.commutes(i, j)) continue;
        for (std::size_t c = 0; c < d2; ++c)
          sum[c] = -(sp.pool[i].exps[c] + sp.pool[j].exps[c]);
        auto it = sp.index_of.find(sum);
        if (it == sp.index_of.end() || it->second <= j) continue;
        const std::size_t k = it->second;
        if (sp.commutes(i, k) && sp.commutes(j, k)) try_seed({i, j, k});
      }
  }
  if (params.max_context_size >= 4) {
    std::map<std::vector<int>, std::vector<std::pair<std::size_t, std::size_t>>> pair_sum;
    std::vector<int> sum(d2);
    for (std::size_t i = 0; i < npool; ++i)
      for (std::size_t j = i + 1; j < npool; ++j) {
        if (!sp.commutes(i, j)) continue;
        for (std::size_t c = 0; c < d2; ++c) sum[c] = sp.pool[i].exps[c] + sp.pool[j].exps[c];
        pair_sum[sum].push_back({i, j});
      }
    std::vector<int> neg(d2);
    for (const auto& [s, lhs] : pair_sum) {
      for (std::size_t c = 0; c < d2; ++c) neg[c] = -s[c];
      if (neg < s) continue;  // visit each bucket pairing once
      auto it = pair_sum.find(neg);
      if (it == pair_sum.end()) continue;
      for (const auto& [i, j] : lhs)
        for (const auto& [k, l] : it->second) {
          if (j >= k) continue;  // canonical order i < j < k < l
          if (!sp.commutes(i, k) || !sp.commutes(i, l) || !sp.commutes(j, k) ||
              !sp.commutes(j, l))
            continue;
          try_seed({i, j, k, l});
        }
    }
  }
  // Sparse seeds first: certificates built from few-generator products sit at
  // low total slot count, while seeds containing dense monomials anchor very
  // wide completion trees. The densest single member is the second key for
  // the same reason, then more members (each member is then simpler). The
  // outer deepening loop still guarantees the context-count minimum
  // regardless of this ordering.
  const auto seed_slot_count = [&](const detail::ContextKey& ctx) {
    int total = 0;
    for (auto i : ctx) total += std::popcount(sp.pool[i].slots);
    return total;
  };
  const auto seed_slot_peak = [&](const detail::ContextKey& ctx) {
    int peak = 0;
    for (auto i : ctx) peak = std::max(peak, std::popcount(sp.pool[i].slots));
    return peak;
  };
  std::sort(seeds.begin(), seeds.end(), [&](const auto& a, const auto& b) {
    const int sa = seed_slot_count(a), sb = seed_slot_count(b);
    if (sa != sb) return sa < sb;
    const int pa = seed_slot_peak(a), pb = seed_slot_peak(b);
    if (pa != pb) return pa < pb;
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  res.stats.seeds = seeds.size();

  if (seeds.empty()) {
    // no context in the box can produce an odd scalar, so no certificate of
    // this family exists here at all
    res.status = SearchStatus::absent;
    return res;
  }

  if (params.use_symmetry) {
    std::vector<detail::ContextKey> kept;
    for (auto& s : seeds)
      if (detail::is_canonical_seed(sp, s)) kept.push_back(std::move(s));
    seeds = std::move(kept);
  }
  res.stats.seeds_after_symmetry = seeds.size();

  // ---- depth-first completion
  struct DfsCtx {
    std::vector<detail::ContextKey> chosen;
    std::vector<long> net;            // per class: rep occurrences minus inverse ones
    std::vector<std::size_t> touches; // per class: total occurrences
    unsigned acc_parity = 0;          // xor of context scalars
  };
  DfsCtx st;
  st.net.assign(sp.n_classes, 0);
  st.touches.assign(sp.n_classes, 0);

  const auto add_context = [&](const detail::ContextKey& ctx) {
    for (auto i : ctx) {
      st.net[sp.pool[i].cls] += sp.pool[i].is_rep ? 1 : -1;
      st.touches[sp.pool[i].cls] += 1;
    }
    st.acc_parity ^= detail::product_parity(sp, ctx);
    st.chosen.push_back(ctx);
  };
  const auto pop_context = [&]() {
    const auto& ctx = st.chosen.back();
    for (auto i : ctx) {
      st.net[sp.pool[i].cls] -= sp.pool[i].is_rep ? 1 : -1;
      st.touches[sp.pool[i].cls] -= 1;
    }
    st.acc_parity ^= detail::product_parity(sp, ctx);
    st.chosen.pop_back();
  };

  // total parity once balanced: context scalars plus one inverse-link row per
  // matched pair, counted with multiplicity
  const auto balanced_parity = [&]() {
    unsigned acc = st.acc_parity;
    for (std::size_t c = 0; c < sp.n_classes; ++c)
      acc ^= static_cast<unsigned>(((st.touches[c] / 2) & 1)) & sp.class_link_parity[c];
    return acc;
  };

  // wrap the machine-int state back into exact algebra and double-check
  const auto verify_candidate = [&]() -> std::optional<std::pair<Certificate, Witness>> {
    Certificate cert;
    cert.system = sp.system;
    std::map<std::size_t, std::string> name_of;
    const auto name_for = [&](std::size_t i) {
      auto it = name_of.find(i);
      if (it != name_of.end()) return it->second;
      std::string nm = "m" + std::string(name_of.size() + 1 < 10 ? "0" : "") +
                       std::to_string(name_of.size() + 1);
      const auto& e = sp.pool[i].exps;
      std::vector<Int> m(params.n_dof), n(params.n_dof);
      for (std::size_t j = 0; j < params.n_dof; ++j) {
        m[j] = e[2 * j];
        n[j] = e[2 * j + 1];
      }
      cert.monomials.emplace(nm, WeylMonomial(sp.system, PhaseExp(), m, n));
      name_of.emplace(i, nm);
      return nm;
    };
    for (const auto& ctx : st.chosen) {
      std::vector<std::string> ids;
      for (auto i : ctx) ids.push_back(name_for(i));
      cert.contexts.push_back(std::move(ids));
    }
    const CompiledSystem cs = compile_certificate(cert);
    Analysis an = analyze(cs);
    if (!an.contradiction || !an.witness) return std::nullopt;
    return std::make_pair(std::move(cert), std::move(*an.witness));
  };

  // memoized extension contexts per needed pool entry: {need} plus members
  // confined to the generator slots the needed monomial touches (ties on the
  // full slot set break lexicographically); the final member is resolved by
  // direct lookup of the remaining exponent deficit
  std::map<std::size_t, std::vector<detail::ContextKey>> extensions;
  const auto extensions_for = [&](std::size_t need) -> const std::vector<detail::ContextKey>& {
    auto it = extensions.find(need);
    if (it != extensions.end()) return it->second;
    std::vector<detail::ContextKey> out;
    const auto& o = sp.pool[need];
    const std::size_t cap = params.max_context_size - 1;
    std::vector<std::size_t> r;
    std::vector<int> sum(d2, 0);

    const auto admissible = [&](std::size_t w) {
      const auto& e = sp.pool[w];
      if (e.cls == o.cls) return false;             // same class never shrinks the deficit
      if ((e.slots & ~o.slots) != 0) return false;  // stay inside the target's generator slots
      if (e.slots == o.slots && !(e.exps < o.exps)) return false;
      if (!sp.commutes(w, need)) return false;
      for (auto x : r)
        if (!sp.commutes(w, x)) return false;
      return true;
    };
    const auto record = [&]() {
      detail::ContextKey ctx = r;
      ctx.push_back(need);
      std::sort(ctx.begin(), ctx.end());
      out.push_back(std::move(ctx));
    };
    const auto rec = [&](auto&& self, std::size_t start) -> void {
      if (!r.empty()) {
        bool complete = true;
        for (std::size_t c = 0; c < d2 && complete; ++c)
          if (sum[c] != -o.exps[c]) complete = false;
        if (complete) record();
      }
      if (r.size() >= cap) return;
      if (r.size() + 1 == cap) {
        std::vector<int> remain(d2);
        for (std::size_t c = 0; c < d2; ++c) remain[c] = -o.exps[c] - sum[c];
        auto hit = sp.index_of.find(remain);
        if (hit == sp.index_of.end()) return;
        const std::size_t w = hit->second;
        if (w < start || !admissible(w)) return;
        r.push_back(w);
        record();
        r.pop_back();
        return;
      }
      for (std::size_t w = start; w < npool; ++w) {
        if (!admissible(w)) continue;
        for (std::size_t c = 0; c < d2; ++c) sum[c] += sp.pool[w].exps[c];
        r.push_back(w);
        self(self, w + 1);
        r.pop_back();
        for (std::size_t c = 0; c < d2; ++c) sum[c] -= sp.pool[w].exps[c];
      }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return extensions.emplace(need, std::move(out)).first->second;
  };

  std::optional<std::pair<Certificate, Witness>> found;

  const auto dfs = [&](auto&& self, std::size_t limit) -> bool {
    if (++res.stats.nodes > params.node_budget) {
      res.stats.node_budget_hit = true;
      return false;
    }
    if (out_of_time()) {
      res.stats.time_budget_hit = true;
      return false;
    }

    // pick the widest unbalanced class, lexicographically earliest, and tally
    // the outstanding imbalance while scanning
    std::size_t branch_cls = sp.n_classes;
    int best_support = -1;
    long imbalance = 0;
    for (std::size_t i = 0; i < npool; ++i) {
      const auto& e = sp.pool[i];
      if (!e.is_rep || st.net[e.cls] == 0) continue;
      imbalance += st.net[e.cls] < 0 ? -st.net[e.cls] : st.net[e.cls];
      if (e.support > best_support) {
        best_support = e.support;
        branch_cls = e.cls;
      }
    }

    if (branch_cls == sp.n_classes) {  // balanced
      if (balanced_parity() == 0) return false;
      auto cand = verify_candidate();
      if (cand) {
        found = std::move(cand);
        return true;
      }
      return false;
    }
    if (st.chosen.size() >= limit) return false;
    // one added context shifts at most max_context_size occurrence counts by one
    const long capacity = static_cast<long>(limit - st.chosen.size()) *
                          static_cast<long>(params.max_context_size);
    if (imbalance > capacity) return false;

    // the orientation that moves this class toward balance
    std::size_t need = npool;
    for (std::size_t i = 0; i < npool; ++i) {
      const auto& e = sp.pool[i];
      if (e.cls != branch_cls) continue;
      if (st.net[branch_cls] > 0 ? !e.is_rep : e.is_rep) {
        need = i;
        break;
      }
    }
    if (need == npool) return false;

    for (const auto& ctx : extensions_for(need)) {
      bool dup = false;
      for (const auto& c : st.chosen)
        if (c == ctx) dup = true;
      if (dup) continue;
      add_context(ctx);
      const bool done = self(self, limit);
      pop_context();
      if (done) return true;
      if (res.stats.node_budget_hit || res.stats.time_budget_hit) return false;
    }
    return false;
  };

  for (std::size_t limit = 1; limit <= params.max_contexts && !found; ++limit) {
    for (const auto& seed : seeds) {
      add_context(seed);
      const bool done = dfs(dfs, limit);
      pop_context();
      if (done) break;
      if (res.stats.node_budget_hit || res.stats.time_budget_hit) break;
    }
    if (res.stats.node_budget_hit || res.stats.time_budget_hit) break;
  }

  if (found) {
    res.status = SearchStatus::found;
    res.contexts_used = found->first.contexts.size();
    res.certificate = std::move(found->first);
    res.witness = std::move(found->second);
  } else {
    res.status = SearchStatus::exhausted;
  }
  return res;
}

}  // namespace weylks
