#include "patcover/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "patcover/error.hpp"

namespace patcover {

std::string to_string(DemandKind k) {
  switch (k) {
    case DemandKind::EveryBasepointIn: return "every-basepoint";
    case DemandKind::CountBasepoints: return "count-basepoints";
    case DemandKind::EveryDifferenceIn: return "every-difference";
    case DemandKind::CountDifferences: return "count-differences";
  }
  return "?";
}

DemandKind demand_kind_from_string(const std::string& s) {
  for (auto k : {DemandKind::EveryBasepointIn, DemandKind::CountBasepoints, DemandKind::EveryDifferenceIn,
                 DemandKind::CountDifferences})
    if (to_string(k) == s) return k;
  fail(ErrorCode::ConfigInvalid, "unknown demand kind '" + s + "'");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::FPrime: return "f-prime";
    case Quantity::G: return "g-every";
    case Quantity::GPrime: return "g-prime";
    case Quantity::g: return "g-field";
  }
  return "?";
}

bool Window::contains(const Element& e) const {
  for (const auto& c : e)
    if (c < lo || c > hi) return false;
  return true;
}

std::vector<Element> Window::enumerate(int dim) const {
  std::vector<Element> out;
  if (lo > hi) return out;
  std::vector<std::int64_t> cur(dim, lo);
  while (true) {
    Element e;
    for (auto c : cur) e.emplace_back(static_cast<long>(c));
    out.push_back(std::move(e));
    int i = dim - 1;
    while (i >= 0 && cur[i] == hi) cur[i--] = lo;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}

  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
    return r;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  std::size_t count_minus(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(__builtin_popcountll(w_[i] & ~o.w_[i]));
    return c;
  }
  int lowest_minus(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (auto x = w_[i] & ~o.w_[i]) return static_cast<int>(i * 64) + __builtin_ctzll(x);
    return -1;
  }
  bool operator==(const Bits& o) const { return w_ == o.w_; }

 private:
  std::vector<std::uint64_t> w_;
};

struct Option {
  std::vector<int> pts;
  Bits mask;
  Element scale;
  Element base;
};

struct Instance {
  std::vector<Element> points;
  std::vector<Option> options;
  std::vector<Element> keys;                 // one per demand
  std::vector<std::vector<int>> by_demand;  // option ids, label order
  bool every = true;
  std::size_t need = 0;
};

struct RawOption {
  Element key;
  Element scale;
  Element base;
  PointSet pts;
};

std::vector<Element> basepoint_universe(const CoverProblem& p, const RingContext& ring) {
  if (ring.kind == RingContext::Kind::FiniteField) return Window{0, ring.p - 1}.enumerate(ring.point_dim());
  if (!p.window) fail(ErrorCode::InvalidArgument, "this demand needs a basepoint window");
  return p.window->enumerate(ring.point_dim());
}

bool in_point_window(const CoverProblem& p, const RingContext& ring, const PointSet& pts) {
  if (ring.kind == RingContext::Kind::FiniteField || !p.window) return true;
  return std::all_of(pts.begin(), pts.end(), [&](const Element& e) { return p.window->contains(e); });
}

// Differences are integers even over a rational family.
std::vector<Element> difference_domain(const CoverProblem& p, const RingContext& ring) {
  return p.scales.enumerate(ring.kind == RingContext::Kind::Rationals ? RingContext::integers() : ring);
}

std::vector<RawOption> raw_options(const CoverProblem& p, const PatternFamily& U) {
  const auto& ring = U.ring();
  const auto& dm = p.demand;
  std::vector<RawOption> raw;
  auto push = [&](const Element& key, const Element& scale, const Element& base, bool point_window) {
    PointSet pts = instantiate_pattern(base, scale, U);
    if (pts.size() != U.size()) return;
    if (point_window && !in_point_window(p, ring, pts)) return;
    raw.push_back({key, scale, base, std::move(pts)});
  };
  const bool counted = dm.count_type();
  if (!dm.difference_type()) {
    auto scales = p.scales.enumerate(ring);
    auto bases = counted ? basepoint_universe(p, ring) : dm.targets;
    for (const auto& x : bases) {
      validate_point(ring, x);
      for (const auto& r : scales) push(x, r, x, counted);
    }
  } else {
    auto diffs = counted ? difference_domain(p, ring) : dm.targets;
    auto bases = basepoint_universe(p, ring);
    for (const auto& d : diffs) {
      validate_point(ring, d);
      if (is_zero(reduce(ring, d))) fail(ErrorCode::InvalidArgument, "difference 0 is not a progression");
      for (const auto& a : bases) push(d, d, a, counted);
    }
  }
  return raw;
}

Instance build_instance(const CoverProblem& p, const PatternFamily& U) {
  const auto& dm = p.demand;
  if (dm.count_type() && dm.count < 1) fail(ErrorCode::InvalidArgument, "demand count must be >= 1");
  if (!dm.count_type() && dm.targets.empty()) fail(ErrorCode::InvalidArgument, "demand set is empty");
  auto raw = raw_options(p, U);

  Instance I;
  I.every = !dm.count_type();
  I.need = dm.count_type() ? static_cast<std::size_t>(dm.count) : 0;
  std::map<Element, int> point_id;
  for (const auto& o : raw)
    for (const auto& e : o.pts) point_id.emplace(e, 0);
  int next = 0;
  for (auto& [e, id] : point_id) {
    id = next++;
    I.points.push_back(e);
  }

  std::map<Element, int> demand_id;
  if (I.every)
    for (const auto& t : dm.targets) demand_id.emplace(reduce(U.ring(), t), 0);
  else
    for (const auto& o : raw) demand_id.emplace(o.key, 0);
  next = 0;
  for (auto& [k, id] : demand_id) {
    id = next++;
    I.keys.push_back(k);
  }
  I.by_demand.assign(I.keys.size(), {});
  for (auto& o : raw) {
    Option opt;
    opt.mask = Bits(I.points.size());
    for (const auto& e : o.pts) {
      int id = point_id.at(e);
      opt.pts.push_back(id);
      opt.mask.set(id);
    }
    opt.scale = std::move(o.scale);
    opt.base = std::move(o.base);
    I.by_demand[demand_id.at(o.key)].push_back(static_cast<int>(I.options.size()));
    I.options.push_back(std::move(opt));
  }
  for (auto& ids : I.by_demand)
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      const auto& x = I.options[a];
      const auto& y = I.options[b];
      return std::tie(x.scale, x.base) < std::tie(y.scale, y.base);
    });

  std::size_t feasible = 0;
  for (std::size_t e = 0; e < I.keys.size(); ++e) {
    if (!I.by_demand[e].empty()) {
      ++feasible;
    } else if (I.every) {
      fail(ErrorCode::Infeasible, "demand " + to_string(I.keys[e]) + " has no pattern inside the windows");
    }
  }
  if (!I.every && feasible < I.need)
    fail(ErrorCode::Infeasible, "only " + std::to_string(feasible) + " demands are realizable inside the windows");
  return I;
}

bool satisfied(const Instance& I, const Bits& C, std::size_t e) {
  for (int o : I.by_demand[e])
    if (I.options[o].mask.subset_of(C)) return true;
  return false;
}

std::size_t count_satisfied(const Instance& I, const Bits& C) {
  std::size_t n = 0;
  for (std::size_t e = 0; e < I.keys.size(); ++e) n += satisfied(I, C, e);
  return n;
}

class Clock {
 public:
  explicit Clock(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  bool tick() {
    ++nodes;
    if (nodes > budget_.max_nodes) return false;
    if ((nodes & 1023) == 0) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > budget_.max_seconds) return false;
    }
    return true;
  }

  std::uint64_t nodes = 0;

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
};

class EverySearch {
 public:
  EverySearch(const Instance& I, const Budget& b) : I_(I), clock_(b), best_(I.points.size()) {}

  Bits run(bool& certified, std::uint64_t& nodes) {
    best_ = greedy();
    best_size_ = best_.count();
    Bits C(I_.points.size());
    dfs(C, 0);
    certified = !exhausted_;
    nodes = clock_.nodes;
    return best_;
  }

 private:
  Bits greedy() const {
    Bits C(I_.points.size());
    while (true) {
      int pick = pick_demand(C);
      if (pick < 0) return C;
      int choice = -1;
      std::size_t best_res = std::numeric_limits<std::size_t>::max();
      for (int o : I_.by_demand[pick]) {
        std::size_t r = I_.options[o].mask.count_minus(C);
        if (r < best_res) best_res = r, choice = o;
      }
      C |= I_.options[choice].mask;
    }
  }

  int pick_demand(const Bits& C) const {
    int pick = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t e = 0; e < I_.keys.size(); ++e) {
      if (satisfied(I_, C, e)) continue;
      if (I_.by_demand[e].size() < fewest) fewest = I_.by_demand[e].size(), pick = static_cast<int>(e);
    }
    return pick;
  }

  void dfs(Bits& C, std::size_t size) {
    if (exhausted_) return;
    if (!clock_.tick()) {
      exhausted_ = true;
      return;
    }
    int pick = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    std::size_t lb = 0;
    Bits used(I_.points.size());
    for (std::size_t e = 0; e < I_.keys.size(); ++e) {
      if (satisfied(I_, C, e)) continue;
      if (I_.by_demand[e].size() < fewest) fewest = I_.by_demand[e].size(), pick = static_cast<int>(e);
      Bits uni(I_.points.size());
      std::size_t min_res = std::numeric_limits<std::size_t>::max();
      for (int o : I_.by_demand[e]) {
        min_res = std::min(min_res, I_.options[o].mask.count_minus(C));
        uni |= I_.options[o].mask;
      }
      uni = uni.minus(C);
      if (!uni.intersects(used)) {
        lb += min_res;
        used |= uni;
      }
    }
    if (pick < 0) {
      if (size < best_size_) best_ = C, best_size_ = size;
      return;
    }
    if (size + lb >= best_size_) return;

    struct Branch {
      Bits residual;
      std::size_t res;
      int option;
    };
    std::vector<Branch> branches;
    for (int o : I_.by_demand[pick]) {
      Bits r = I_.options[o].mask.minus(C);
      branches.push_back({r, r.count(), o});
    }
    std::stable_sort(branches.begin(), branches.end(),
                     [](const Branch& a, const Branch& b) { return a.res < b.res; });
    std::vector<const Branch*> kept;
    for (const auto& br : branches) {
      bool dominated = false;
      for (const auto* k : kept)
        if (k->residual.subset_of(br.residual)) dominated = true;
      if (!dominated) kept.push_back(&br);
    }
    for (const auto* br : kept) {
      if (size + br->res >= best_size_) continue;
      Bits next = C;
      next |= br->residual;
      dfs(next, size + br->res);
      if (exhausted_) return;
    }
  }

  const Instance& I_;
  Clock clock_;
  Bits best_;
  std::size_t best_size_ = 0;
  bool exhausted_ = false;
};

class CountSearch {
 public:
  CountSearch(const Instance& I, const Budget& b) : I_(I), clock_(b) {}

  Bits run(bool& certified, std::uint64_t& nodes) {
    Bits best = greedy();
    std::size_t ub = best.count();
    std::size_t lb = std::numeric_limits<std::size_t>::max();
    for (const auto& o : I_.options) lb = std::min(lb, o.pts.size());
    certified = true;
    for (std::size_t s = lb; s < ub; ++s) {
      Bits C(I_.points.size());
      if (dfs(C, 0, s)) {
        best = found_;
        break;
      }
      if (exhausted_) {
        certified = false;
        break;
      }
    }
    nodes = clock_.nodes;
    return best;
  }

 private:
  Bits greedy() const {
    Bits C(I_.points.size());
    while (count_satisfied(I_, C) < I_.need) {
      int choice = -1;
      std::size_t best_res = std::numeric_limits<std::size_t>::max();
      for (std::size_t e = 0; e < I_.keys.size(); ++e) {
        if (satisfied(I_, C, e)) continue;
        for (int o : I_.by_demand[e]) {
          std::size_t r = I_.options[o].mask.count_minus(C);
          if (r < best_res) best_res = r, choice = o;
        }
      }
      C |= I_.options[choice].mask;
    }
    return C;
  }

  bool dfs(Bits& C, int next_id, std::size_t picks_left) {
    if (!clock_.tick()) {
      exhausted_ = true;
      return false;
    }
    std::size_t sat = 0, potential = 0;
    Bits useful(I_.points.size());
    for (std::size_t e = 0; e < I_.keys.size(); ++e) {
      bool done = false, could = false;
      for (int o : I_.by_demand[e]) {
        const auto& m = I_.options[o].mask;
        std::size_t r = m.count_minus(C);
        if (r == 0) {
          done = true;
          break;
        }
        if (r <= picks_left && m.lowest_minus(C) >= next_id) {
          could = true;
          useful |= m.minus(C);
        }
      }
      sat += done;
      potential += done || could;
    }
    if (sat >= I_.need) {
      found_ = C;
      return true;
    }
    if (picks_left == 0 || potential < I_.need) return false;
    for (int id = next_id; id < static_cast<int>(I_.points.size()); ++id) {
      if (!useful.test(id)) continue;
      C.set(id);
      if (dfs(C, id + 1, picks_left - 1)) return true;
      C.reset(id);
      if (exhausted_) return false;
    }
    return false;
  }

  const Instance& I_;
  Clock clock_;
  Bits found_;
  bool exhausted_ = false;
};

CoverSolution assemble(const CoverProblem& p, const Instance& I, const Bits& C, const BigInt& c) {
  CoverSolution s;
  for (std::size_t i = 0; i < I.points.size(); ++i)
    if (C.test(static_cast<int>(i))) s.cover.points.insert(I.points[i]);
  const bool diff = p.demand.difference_type();
  const Rational cq(c);
  for (std::size_t e = 0; e < I.keys.size(); ++e)
    for (int o : I.by_demand[e]) {
      const auto& opt = I.options[o];
      if (!opt.mask.subset_of(C)) continue;
      Element scale = opt.scale;
      for (auto& x : scale) x *= cq;
      if (diff)
        s.cover.witnesses.emplace(scale, opt.base);
      else
        s.cover.witnesses.emplace(opt.base, scale);
      break;
    }
  s.size = s.cover.points.size();
  s.normalization = c;
  s.window_used = "scales " + p.scales.describe() + (p.window ? ", window " + p.window->describe() : std::string());
  return s;
}

struct Prepared {
  PatternFamily family;
  BigInt c = 1;
};

Prepared prepare(const CoverProblem& p) {
  // difference demands keep the rational family: differences and basepoints stay integral
  if (p.family.ring().kind == RingContext::Kind::Rationals && !p.demand.difference_type()) {
    auto n = normalize_to_integers(p.family);
    return {n.family, n.c};
  }
  return {p.family, 1};
}

}  // namespace

CoverSolution solve_min_cover(const CoverProblem& p, const Budget& budget) {
  auto prep = prepare(p);
  Instance I = build_instance(p, prep.family);
  bool certified = false;
  std::uint64_t nodes = 0;
  Bits C;
  if (I.every) {
    EverySearch search(I, budget);
    C = search.run(certified, nodes);
  } else {
    CountSearch search(I, budget);
    C = search.run(certified, nodes);
  }
  auto s = assemble(p, I, C, prep.c);
  s.certified_optimal = certified;
  s.status = certified ? "optimal" : "budget_exhausted";
  s.nodes = nodes;
  return s;
}

CoverSolution brute_force_oracle(const CoverProblem& p) {
  auto prep = prepare(p);
  const auto& U = prep.family;
  const auto& ring = U.ring();
  const auto& dm = p.demand;

  // Candidate patterns as (key, scale, base, points), enumerated directly.
  struct Cand {
    Element key, scale, base;
    PointSet pts;
  };
  std::vector<Cand> cands;
  std::vector<Element> bases;
  if (ring.kind == RingContext::Kind::FiniteField) {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(std::pow(ring.p, ring.point_dim()) + 0.5); ++i) {
      Element e;
      std::int64_t v = i;
      for (int c = 0; c < ring.point_dim(); ++c) e.insert(e.begin(), Rational(static_cast<long>(v % ring.p))), v /= ring.p;
      bases.push_back(e);
    }
  } else if (p.window) {
    bases = p.window->enumerate(ring.point_dim());
  }
  const bool counted = dm.count_type();
  auto inside_window = [&](const PointSet& pts) {
    if (!counted || !p.window || ring.kind == RingContext::Kind::FiniteField) return true;
    for (const auto& e : pts)
      if (!p.window->contains(e)) return false;
    return true;
  };
  auto scales = dm.difference_type() ? (counted ? difference_domain(p, ring) : std::vector<Element>{}) : p.scales.enumerate(ring);
  if (!dm.difference_type()) {
    for (const auto& x : counted ? bases : dm.targets)
      for (const auto& r : scales) {
        auto pts = instantiate_pattern(x, r, U);
        if (pts.size() == U.size() && inside_window(pts)) cands.push_back({x, r, x, pts});
      }
  } else {
    if (bases.empty()) fail(ErrorCode::InvalidArgument, "this demand needs a basepoint window");
    for (const auto& d : counted ? scales : dm.targets)
      for (const auto& a : bases) {
        auto pts = instantiate_pattern(a, d, U);
        if (pts.size() == U.size() && inside_window(pts)) cands.push_back({d, d, a, pts});
      }
  }
  PointSet universe;
  for (const auto& c : cands) universe.insert(c.pts.begin(), c.pts.end());
  if (universe.size() > kOracleCap)
    fail(ErrorCode::TooLarge, std::to_string(universe.size()) + " candidate points exceed the oracle cap");
  std::vector<Element> pts(universe.begin(), universe.end());
  auto index_of = [&](const Element& e) {
    return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), e) - pts.begin());
  };

  std::map<Element, std::vector<std::pair<std::uint32_t, std::size_t>>> by_key;
  if (!counted)
    for (const auto& t : dm.targets) by_key[reduce(ring, t)];
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::uint32_t m = 0;
    for (const auto& e : cands[i].pts) m |= 1u << index_of(e);
    by_key[cands[i].key].push_back({m, i});
  }
  const std::size_t need = counted ? static_cast<std::size_t>(dm.count) : by_key.size();
  const std::size_t n = pts.size();

  auto covered = [&](std::uint32_t S) {
    std::size_t c = 0;
    for (const auto& [k, opts] : by_key)
      for (const auto& [m, i] : opts)
        if ((m & ~S) == 0) {
          ++c;
          break;
        }
    return c;
  };

  for (std::size_t s = 0; s <= n; ++s) {
    std::uint32_t S = s == 0 ? 0u : (s == 32 ? ~0u : ((1u << s) - 1));
    while (true) {
      if (covered(S) >= need) {
        CoverSolution out;
        for (std::size_t i = 0; i < n; ++i)
          if (S >> i & 1) out.cover.points.insert(pts[i]);
        const Rational cq(prep.c);
        for (const auto& [k, opts] : by_key) {
          const Cand* best = nullptr;
          for (const auto& [m, i] : opts)
            if ((m & ~S) == 0 &&
                (!best || std::tie(cands[i].scale, cands[i].base) < std::tie(best->scale, best->base)))
              best = &cands[i];
          if (!best) continue;
          Element scale = best->scale;
          for (auto& x : scale) x *= cq;
          if (dm.difference_type())
            out.cover.witnesses.emplace(scale, best->base);
          else
            out.cover.witnesses.emplace(best->base, scale);
        }
        out.size = s;
        out.certified_optimal = true;
        out.status = "optimal";
        out.normalization = prep.c;
        out.window_used = "scales " + p.scales.describe() + (p.window ? ", window " + p.window->describe() : std::string());
        return out;
      }
      if (s == 0) break;
      // next subset of the same size (Gosper)
      std::uint32_t c = S & (~S + 1), r = S + c;
      if (r == 0 || (r >> n) != 0) break;
      S = (((r ^ S) >> 2) / c) | r;
      if ((S >> n) != 0) break;
    }
  }
  fail(ErrorCode::Infeasible, "no cover inside the windows");
}

bool verify_solution(const CoverProblem& p, const CoverSolution& s) {
  if (s.size != s.cover.points.size()) return false;
  const auto& U = p.family;
  bool ok = p.demand.difference_type() ? failed_differences(s.cover, U).empty() : failed_basepoints(s.cover, U).empty();
  if (!ok) return false;
  if (p.demand.count_type()) return s.cover.witnesses.size() >= static_cast<std::size_t>(p.demand.count);
  for (const auto& t : p.demand.targets)
    if (!s.cover.witnesses.count(reduce(U.ring(), t))) return false;
  return true;
}

KatzTaoReport verify_katz_tao(const SumsetGraphInstance& inst) {
  if (inst.G.empty()) fail(ErrorCode::InvalidArgument, "graph must be nonempty");
  std::set<BigInt> A1, A2, sums, diffs;
  for (const auto& [a, b] : inst.G) {
    A1.insert(a);
    A2.insert(b);
    sums.insert(a + b);
    diffs.insert(a - b);
  }
  KatzTaoReport r;
  r.a1 = A1.size();
  r.a2 = A2.size();
  r.sums = sums.size();
  r.n = std::max({r.a1, r.a2, r.sums});
  r.diff_size = diffs.size();
  r.holds = big_pow(BigInt(static_cast<unsigned long>(r.diff_size)), 6) <= big_pow(BigInt(static_cast<unsigned long>(r.n)), 11);
  return r;
}

LowerBoundReport lower_bound_instance(const PatternFamily& U, const WitnessedCover& cover) {
  if (U.size() != 3 || U.ring().kind != RingContext::Kind::Integers)
    fail(ErrorCode::InvalidFamily, "expected three integers {a, b, c} with c(a+b) = 2ab");
  if (!failed_basepoints(cover, U).empty()) fail(ErrorCode::InvalidCover, "cover does not verify");
  std::vector<std::int64_t> u;
  for (const auto& e : U.elements()) u.push_back(to_int64(e[0]));
  LowerBoundReport rep;
  bool found = false;
  std::sort(u.begin(), u.end());
  do {
    if (u[2] * (u[0] + u[1]) == 2 * u[0] * u[1] && u[0] != u[1]) {
      rep.a = u[0], rep.b = u[1], rep.c = u[2];
      found = true;
      break;
    }
  } while (std::next_permutation(u.begin(), u.end()));
  if (!found) fail(ErrorCode::InvalidFamily, "no ordering satisfies c(a+b) = 2ab");

  // alpha = x + r a, beta = x + r b: b alpha + a beta = (a+b)(x + r c), b alpha - a beta = (b-a) x.
  SumsetGraphInstance inst;
  for (const auto& [x, r] : cover.witnesses) {
    BigInt alpha = BigInt(x[0].get_num() + r[0].get_num() * rep.a);
    BigInt beta = BigInt(x[0].get_num() + r[0].get_num() * rep.b);
    inst.G.emplace(BigInt(alpha * rep.b), BigInt(beta * rep.a));
  }
  rep.cover_size = cover.points.size();
  rep.basepoints = cover.witnesses.size();
  if (rep.basepoints == 0) {
    rep.bound_holds = true;
    return rep;
  }
  rep.katz_tao = verify_katz_tao(inst);
  rep.bound_holds = big_pow(BigInt(static_cast<unsigned long>(rep.cover_size)), 11) >=
                    big_pow(BigInt(static_cast<unsigned long>(rep.basepoints)), 6);
  return rep;
}

std::vector<ExponentRow> exponent_curve(const std::function<CoverProblem(std::int64_t)>& make,
                                        std::vector<std::int64_t> Ns, const Budget& budget) {
  std::sort(Ns.begin(), Ns.end());
  std::vector<ExponentRow> rows;
  for (auto N : Ns) {
    ExponentRow row;
    row.N = N;
    try {
      auto s = solve_min_cover(make(N), budget);
      row.size = s.size;
      row.certified = s.certified_optimal;
      if (N > 1) row.exponent = std::log(static_cast<double>(s.size)) / std::log(static_cast<double>(N));
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

CoverProblem standard_problem(Quantity q, const PatternFamily& U, std::int64_t N, const Window& window,
                              const ScaleDomain& scales) {
  switch (q) {
    case Quantity::FPrime: return {U, {DemandKind::CountDifferences, {}, N}, scales, window};
    case Quantity::GPrime: return {U, {DemandKind::CountBasepoints, {}, N}, scales, window};
    case Quantity::G: {
      Demand d{DemandKind::EveryBasepointIn, {}, 0};
      for (std::int64_t x = 1; x <= N; ++x) d.targets.push_back(scalar(static_cast<long>(x)));
      return {U, d, scales, window};
    }
    case Quantity::g: {
      auto ring = RingContext::finite_field(N, 1);
      std::vector<Element> es;
      for (const auto& u : U.elements()) es.push_back(reduce(ring, u));
      PatternFamily F(ring, es, U.label());
      Demand d{DemandKind::EveryBasepointIn, {}, 0};
      for (std::int64_t x = 0; x < N; ++x) d.targets.push_back(scalar(static_cast<long>(x)));
      return {F, d, ScaleDomain::nonzero(), std::nullopt};
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown quantity");
}

}  // namespace patcover
