#include "stabkit/halfgraph.hpp"

#include "stabkit/error.hpp"
#include "stabkit/parallel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stabkit {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i)
    if (__builtin_mul_overflow(r, base, &r)) return UINT64_MAX;
  return r;
}

void fill_thetas(HalfGraphReport& r, const Relation& rel, const Rational& count) {
  const std::size_t k = r.k;
  const std::size_t q = rel.group().order();
  r.theta_group = count / Rational(ipow(q, k * (rel.domain_arity() + rel.codomain_arity())));
  const BigInt carrier = ipow(rel.domain().size(), k) * ipow(rel.codomain().size(), k);
  r.theta_carrier = carrier == 0 ? Rational(0) : count / Rational(carrier);
}

// Depth-first walk over a-tuples keeping T_j = (∩_{i<=j} Row(a_i)) ∩ (∩_{j<i<=d} ¬Row(a_i)) ∩ Y for j <= d.
// Every T_j only shrinks as the tuple grows, so a subtree is pruned as soon as one T_j is empty.
class TupleWalker {
 public:
  TupleWalker(const Relation& rel, std::size_t k)
      : rel_(rel), k_(k), stride_(rel.incidence().stride()), xs_(rel.domain().members.indices()),
        levels_((k + 1) * k * stride_, Word{0}) {
    auto base = slot(0, 0);
    const auto y = rel.codomain().members.words();
    std::copy(y.begin(), y.end(), base.begin());
  }

  const std::vector<std::size_t>& xs() const { return xs_; }

  // T_j at depth d, 0-based j < d (slot(0,0) holds Y).
  std::span<Word> slot(std::size_t depth, std::size_t j) { return {levels_.data() + (depth * k_ + j) * stride_, stride_}; }

  // Extends depth d by row(a) into depth d+1; false when some T_j becomes empty.
  bool extend(std::size_t d, std::size_t a) {
    const auto row = rel_.row(a);
    if (d == 0) {
      auto dst = slot(1, 0);
      auto src = slot(0, 0);
      for (std::size_t w = 0; w < stride_; ++w) dst[w] = src[w] & row[w];
      return bits::any(dst);
    }
    for (std::size_t j = 0; j < d; ++j) {
      auto src = slot(d, j);
      auto dst = slot(d + 1, j);
      for (std::size_t w = 0; w < stride_; ++w) dst[w] = src[w] & ~row[w];
      if (!bits::any(dst)) return false;
    }
    auto src = slot(d, d - 1);
    auto dst = slot(d + 1, d);
    for (std::size_t w = 0; w < stride_; ++w) dst[w] = src[w] & row[w];
    return bits::any(dst);
  }

  // Σ over a_k of Π_j |T_j| given depth k-1 is populated (k >= 2).
  std::uint64_t last_level_sum() {
    const std::size_t d = k_ - 1;
    std::uint64_t total = 0;
    for (std::size_t a : xs_) {
      const auto row = rel_.row(a);
      std::uint64_t prod = 1;
      for (std::size_t j = 0; j < d && prod; ++j) {
        const auto t = slot(d, j);
        std::uint64_t c = 0;
        for (std::size_t w = 0; w < stride_; ++w) c += static_cast<std::uint64_t>(std::popcount(t[w] & ~row[w]));
        prod = mul(prod, c);
      }
      if (!prod) continue;
      const auto t = slot(d, d - 1);
      prod = mul(prod, bits::and_popcount(t, row));
      if (__builtin_add_overflow(total, prod, &total)) throw Error(ErrorKind::Overflow, "half-graph count overflow");
    }
    return total;
  }

  std::uint64_t count_from(std::size_t d) {
    if (d == k_ - 1) return last_level_sum();
    std::uint64_t total = 0;
    for (std::size_t a : xs_)
      if (extend(d, a))
        if (__builtin_add_overflow(total, count_from(d + 1), &total))
          throw Error(ErrorKind::Overflow, "half-graph count overflow");
    return total;
  }

 private:
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "half-graph count overflow");
    return r;
  }

  const Relation& rel_;
  std::size_t k_;
  std::size_t stride_;
  std::vector<std::size_t> xs_;
  std::vector<Word> levels_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

bool is_halfgraph(const Relation& relation, const HalfGraphWitness& w) {
  if (w.a.size() != w.b.size()) return false;
  for (std::size_t i = 0; i < w.a.size(); ++i) {
    if (w.a[i] >= relation.rows() || !relation.domain().members.test(w.a[i])) return false;
    if (w.b[i] >= relation.cols() || !relation.codomain().members.test(w.b[i])) return false;
  }
  for (std::size_t i = 0; i < w.a.size(); ++i)
    for (std::size_t j = 0; j < w.b.size(); ++j)
      if (relation.test(w.a[i], w.b[j]) != (i <= j)) return false;
  return true;
}

HalfGraphReport count_halfgraphs_exact(const Relation& relation, std::size_t k, const HalfGraphOptions& options) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  const std::uint64_t tuples = checked_pow(relation.domain().size(), k);
  if (tuples > options.tuple_budget) throw BudgetExceeded("exact half-graph count (|X|^k)", tuples, options.tuple_budget);

  HalfGraphReport r;
  r.k = k;
  std::uint64_t total = 0;
  if (k == 1) {
    total = relation.count();
  } else {
    const auto xs = relation.domain().members.indices();
    const unsigned workers = effective_workers(options.threads, xs.size());
    std::vector<TupleWalker> walkers;
    walkers.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) walkers.emplace_back(relation, k);
    std::vector<std::uint64_t> partial(workers, 0);
    parallel_for(xs.size(), workers, [&](std::size_t i, unsigned w) {
      TupleWalker& walker = walkers[w];
      if (!walker.extend(0, xs[i])) return;
      if (__builtin_add_overflow(partial[w], walker.count_from(1), &partial[w]))
        throw Error(ErrorKind::Overflow, "half-graph count overflow");
    });
    for (std::uint64_t p : partial)
      if (__builtin_add_overflow(total, p, &total)) throw Error(ErrorKind::Overflow, "half-graph count overflow");
  }
  r.exact_count = total;
  fill_thetas(r, relation, Rational(BigInt(total)));
  return r;
}

std::vector<HalfGraphWitness> enumerate_halfgraphs(const Relation& relation, std::size_t k, std::size_t limit) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  std::vector<HalfGraphWitness> out;
  if (limit == 0) return out;
  TupleWalker walker(relation, k);
  HalfGraphWitness current{std::vector<std::size_t>(k), std::vector<std::size_t>(k)};

  // Nested ascending loops over b_1 ∈ T_1, ..., b_k ∈ T_k.
  std::vector<std::vector<std::size_t>> choices(k);
  auto emit_bs = [&](auto&& self, std::size_t j) -> bool {
    if (j == k) {
      if (!is_halfgraph(relation, current)) throw std::logic_error("enumerated sequence fails the half-graph predicate");
      out.push_back(current);
      return out.size() < limit;
    }
    for (std::size_t b : choices[j]) {
      current.b[j] = b;
      if (!self(self, j + 1)) return false;
    }
    return true;
  };
  auto walk = [&](auto&& self, std::size_t d) -> bool {
    if (d == k) {
      for (std::size_t j = 0; j < k; ++j) {
        choices[j].clear();
        bits::for_each_set(walker.slot(k, j), [&](std::size_t b) { choices[j].push_back(b); });
      }
      return emit_bs(emit_bs, 0);
    }
    for (std::size_t a : walker.xs()) {
      if (!walker.extend(d, a)) continue;
      current.a[d] = a;
      if (!self(self, d + 1)) return false;
    }
    return true;
  };
  walk(walk, 0);
  return out;
}

HalfGraphReport sample_halfgraphs(const Relation& relation, std::size_t k, std::uint64_t samples, std::uint64_t seed,
                                  double confidence, unsigned threads) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw Error(ErrorKind::InvalidArgument, "confidence must lie in (0,1)");

  const auto xs = relation.domain().members.indices();
  const auto ys = relation.codomain().members.indices();
  const unsigned workers = effective_workers(threads, samples);
  std::vector<std::uint64_t> hits(workers, 0);

  if (!xs.empty() && !ys.empty()) {
    parallel_for(workers, workers, [&](std::size_t w, unsigned) {
      const std::uint64_t share = samples / workers + (w < samples % workers ? 1 : 0);
      std::mt19937_64 rng(splitmix64(seed ^ splitmix64(w + 1)));
      std::uniform_int_distribution<std::size_t> pick_x(0, xs.size() - 1), pick_y(0, ys.size() - 1);
      HalfGraphWitness t{std::vector<std::size_t>(k), std::vector<std::size_t>(k)};
      std::uint64_t h = 0;
      for (std::uint64_t s = 0; s < share; ++s) {
        for (std::size_t i = 0; i < k; ++i) t.a[i] = xs[pick_x(rng)];
        for (std::size_t i = 0; i < k; ++i) t.b[i] = ys[pick_y(rng)];
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
          for (std::size_t j = 0; j < k && ok; ++j) ok = relation.test(t.a[i], t.b[j]) == (i <= j);
        h += ok;
      }
      hits[w] = h;
    });
  }
  std::uint64_t total_hits = 0;
  for (std::uint64_t h : hits) total_hits += h;

  HalfGraphReport r;
  r.k = k;
  r.samples = samples;
  r.hits = total_hits;
  const Rational p_hat{BigInt(total_hits), BigInt(samples)};
  const std::size_t q = relation.group().order();
  const BigInt carrier = ipow(xs.size(), k) * ipow(ys.size(), k);
  const Rational scale = Rational(carrier, ipow(q, k * (relation.domain_arity() + relation.codomain_arity())));

  const double half_width = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
  const double p = static_cast<double>(total_hits) / static_cast<double>(samples);
  Rational lo = rational_below(p - half_width);
  Rational hi = rational_above(p + half_width);
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
  if (lo > p_hat) lo = p_hat;
  if (hi < p_hat) hi = p_hat;

  r.estimate = p_hat * scale;
  r.confidence_interval = std::make_pair(Rational(lo * scale), Rational(hi * scale));
  r.theta_group = *r.estimate;
  r.theta_carrier = carrier == 0 ? Rational(0) : p_hat;
  return r;
}

std::vector<ThetaEntry> theta_profile(const Relation& relation, std::size_t k_max, const ProfileOptions& options) {
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
  std::vector<ThetaEntry> out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    ThetaEntry e;
    e.k = k;
    if (checked_pow(relation.domain().size(), k) <= options.exact.tuple_budget) {
      e.report = count_halfgraphs_exact(relation, k, options.exact);
      e.exact = true;
    } else {
      e.report = sample_halfgraphs(relation, k, options.samples, splitmix64(options.seed + k), options.confidence,
                                   options.exact.threads);
      e.exact = false;
    }
    e.theta_group = e.report.theta_group;
    e.theta_carrier = e.report.theta_carrier;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace stabkit
