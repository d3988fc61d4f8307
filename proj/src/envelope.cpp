#include "delivery/envelope.hpp"

#include <algorithm>
#include <cassert>

#include "delivery/errors.hpp"

namespace delivery {

namespace {

// x where v overtakes u; requires v.a > u.a.
Rat cross_x(const EnvLine& u, const EnvLine& v) {
  return Rat(u.b - v.b) / Rat(v.a - u.a);
}

bool line_order(const EnvLine& l, const EnvLine& r) {
  if (l.a != r.a) return l.a < r.a;
  if (l.b != r.b) return l.b > r.b;
  return l.owner < r.owner;
}

// Sorts `raw` and fills hull/bp with the upper envelope. Equal slopes keep
// the highest intercept (lowest owner on full ties).
void build_hull(std::vector<EnvLine>& raw, std::vector<EnvLine>& hull,
                std::vector<Rat>& bp) {
  std::sort(raw.begin(), raw.end(), line_order);
  hull.clear();
  bp.clear();
  for (const EnvLine& l : raw) {
    if (!hull.empty() && hull.back().a == l.a) continue;  // dominated slope twin
    while (hull.size() >= 2) {
      const EnvLine& p = hull[hull.size() - 2];
      const EnvLine& q = hull.back();
      if (cross_x(p, q) >= cross_x(q, l)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(l);
  }
  bp.reserve(hull.size() ? hull.size() - 1 : 0);
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    bp.push_back(cross_x(hull[i], hull[i + 1]));
  }
}

// Index of the hull line that is maximal at x, preferring the steeper line
// when x is exactly a breakpoint.
size_t hull_index_at(const std::vector<Rat>& bp, const Rat& x) {
  return static_cast<size_t>(std::upper_bound(bp.begin(), bp.end(), x) -
                             bp.begin());
}

struct GInterval {
  bool empty = true;
  Rat lo;         // interval start (>= 0)
  ExtRat hi;      // interval end, may be infinite
};

// For the convex g(x) = env_hull(x) + m*x - c restricted to x >= 0, returns
// the interval {x >= 0 : g(x) <= 0}. The hull is reused unchanged: adding
// m*x - c to every line shifts slopes/intercepts but keeps the same hull
// lines and breakpoints.
GInterval g_nonpositive_interval(const std::vector<EnvLine>& hull,
                                 const std::vector<Rat>& bp, const Rat& c,
                                 const Rat& m) {
  GInterval res;
  const size_t n = hull.size();
  auto gslope = [&](size_t i) { return Rat(hull[i].a + m); };
  auto gval = [&](const Rat& x) {
    size_t i = hull_index_at(bp, x);
    return Rat(hull[i].a * x + hull[i].b + m * x - c);
  };
  auto root_in = [&](size_t i) {  // zero of segment i's line (slope != 0)
    return Rat((c - hull[i].b) / gslope(i));
  };

  // First hull index whose transformed slope is strictly positive.
  size_t j1 = static_cast<size_t>(
      std::partition_point(hull.begin(), hull.end(),
                           [&](const EnvLine& l) { return l.a + m <= 0; }) -
      hull.begin());

  const Rat g0 = gval(Rat(0));

  // Lower end of the interval.
  Rat lo;
  if (g0 <= 0) {
    lo = Rat(0);
  } else {
    // Need the minimum of g over [0, inf) to dip to <= 0, then the
    // down-crossing inside the strictly decreasing part.
    if (j1 == 0) return res;  // g nondecreasing from g(0) > 0
    bool min_known_nonpositive = false;
    if (j1 == n) {
      if (gslope(n - 1) < 0) {
        min_known_nonpositive = true;  // decreases to -inf
      } else {
        // flat tail: limit value is the tail line's constant
        if (Rat(hull[n - 1].b - c) > 0) return res;
        min_known_nonpositive = true;
      }
    } else {
      const Rat x_min = bp[j1 - 1];
      if (x_min <= 0) return res;  // increasing over [0, inf)
      if (gval(x_min) > 0) return res;
      min_known_nonpositive = true;
    }
    assert(min_known_nonpositive);
    (void)min_known_nonpositive;
    // Breakpoints bp[0 .. j1-2] lie in the non-increasing region; g at those
    // breakpoints is non-increasing, so "g(bp[j]) <= 0" is monotone.
    size_t found;
    {
      size_t a = 0, b = j1 - 1;  // search in [0, j1-1)
      while (a < b) {
        size_t mid = (a + b) / 2;
        if (gval(bp[mid]) <= 0) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      found = a;  // first bp index (< j1-1) with g <= 0, or j1-1 if none
    }
    // Crossing lies in segment `found` (its line is strictly decreasing).
    assert(gslope(found) < 0);
    lo = root_in(found);
  }

  // Upper end of the interval.
  ExtRat hi = ExtRat::infinity();
  if (j1 < n) {
    // Increasing part exists; find the first breakpoint in [j1, n-1) with
    // g >= 0 (monotone there), then solve inside that segment.
    size_t a = j1, b = (n >= 1) ? (n - 1) : 0;
    while (a < b) {
      size_t mid = (a + b) / 2;
      if (gval(bp[mid]) >= 0) {
        b = mid;
      } else {
        a = mid + 1;
      }
    }
    // Crossing in segment `a` unless g never reaches 0 (impossible: slope>0).
    assert(gslope(a) > 0);
    Rat up = root_in(a);
    if (up < lo) up = lo;  // numeric guard; cannot actually trigger
    hi = ExtRat(up);
  }
  // j1 == n: g never increases; interval extends to infinity.

  if (ExtRat(lo) > hi) return res;
  res.empty = false;
  res.lo = lo;
  res.hi = hi;
  return res;
}

std::string line_key(const Rat& a, const Rat& b, int owner) {
  return rat_str(a) + '|' + rat_str(b) + '|' + std::to_string(owner);
}

}  // namespace

// ----------------------------------------------------------------- Naive

void NaiveLineSet::insert(const Rat& a, const Rat& b, int owner) {
  if (!keys_.insert(line_key(a, b, owner)).second)
    throw DuplicateEntry("line already stored: y = " + rat_str(a) + " x + " +
                         rat_str(b) + " (owner " + std::to_string(owner) + ")");
  lines_.push_back(EnvLine{a, b, owner, std::nullopt});
}

EnvMax NaiveLineSet::max_at(const Rat& x) const {
  if (lines_.empty()) throw Error("max_at on empty line set");
  bool have = false;
  EnvMax best{Rat(0), Rat(0), -1};
  for (const EnvLine& l : lines_) {
    Rat v = l.a * x + l.b;
    if (!have || v > best.value ||
        (v == best.value &&
         (l.a > best.slope || (l.a == best.slope && l.owner < best.owner)))) {
      best = EnvMax{v, l.a, l.owner};
      have = true;
    }
  }
  return best;
}

std::optional<EnvHit> NaiveLineSet::leftmost_intersection(const Rat& c,
                                                          const Rat& m) const {
  if (lines_.empty()) return std::nullopt;
  // Interval {x >= 0 : every line <= c - m x}.
  Rat lo(0);
  ExtRat hi = ExtRat::infinity();
  for (const EnvLine& l : lines_) {
    const Rat rel = l.a + m;
    if (rel > 0) {
      Rat r = (c - l.b) / rel;
      hi = std::min(hi, ExtRat(r));
    } else if (rel < 0) {
      Rat r = (c - l.b) / rel;
      if (r > lo) lo = r;
    } else {
      if (l.b > c) return std::nullopt;  // parallel, strictly above forever
    }
  }
  if (ExtRat(lo) > hi) return std::nullopt;
  const EnvMax at_lo = max_at(lo);
  Rat query_lo = c - m * lo;
  if (at_lo.value == query_lo) {
    return EnvHit{lo, query_lo, at_lo.slope, at_lo.owner};
  }
  if (at_lo.value > query_lo) return std::nullopt;  // inconsistent intervals
  if (hi.is_inf()) return std::nullopt;  // envelope stays below forever
  const Rat x = hi.finite();
  const EnvMax at_x = max_at(x);
  return EnvHit{x, c - m * x, at_x.slope, at_x.owner};
}

// ------------------------------------------------------------- Bucketed

void LineEnvelope::Bucket::build() { build_hull(raw, hull, bp); }

EnvMax LineEnvelope::Bucket::max_at(const Rat& x) const {
  const size_t i = hull_index_at(bp, x);
  const EnvLine& l = hull[i];
  return EnvMax{l.a * x + l.b, l.a, l.owner};
}

void LineEnvelope::insert(const Rat& a, const Rat& b, int owner) {
  if (!keys_.insert(line_key(a, b, owner)).second)
    throw DuplicateEntry("line already stored: y = " + rat_str(a) + " x + " +
                         rat_str(b) + " (owner " + std::to_string(owner) + ")");
  Bucket nb;
  nb.raw.push_back(EnvLine{a, b, owner, std::nullopt});
  buckets_.push_back(std::move(nb));
  while (buckets_.size() >= 2 &&
         buckets_[buckets_.size() - 2].raw.size() <=
             buckets_.back().raw.size()) {
    Bucket& prev = buckets_[buckets_.size() - 2];
    Bucket& last = buckets_.back();
    prev.raw.insert(prev.raw.end(), last.raw.begin(), last.raw.end());
    buckets_.pop_back();
  }
  buckets_.back().build();
  ++total_;
}

EnvMax LineEnvelope::max_at(const Rat& x) const {
  if (total_ == 0) throw Error("max_at on empty envelope");
  bool have = false;
  EnvMax best{Rat(0), Rat(0), -1};
  for (const Bucket& bk : buckets_) {
    EnvMax cand = bk.max_at(x);
    if (!have || cand.value > best.value ||
        (cand.value == best.value &&
         (cand.slope > best.slope ||
          (cand.slope == best.slope && cand.owner < best.owner)))) {
      best = cand;
      have = true;
    }
  }
  return best;
}

std::optional<EnvHit> LineEnvelope::leftmost_intersection(const Rat& c,
                                                          const Rat& m) const {
  if (total_ == 0) return std::nullopt;
  Rat lo(0);
  ExtRat hi = ExtRat::infinity();
  for (const Bucket& bk : buckets_) {
    GInterval iv = g_nonpositive_interval(bk.hull, bk.bp, c, m);
    if (iv.empty) return std::nullopt;
    if (iv.lo > lo) lo = iv.lo;
    hi = std::min(hi, iv.hi);
  }
  if (ExtRat(lo) > hi) return std::nullopt;
  const EnvMax at_lo = max_at(lo);
  const Rat query_lo = c - m * lo;
  if (at_lo.value == query_lo) {
    return EnvHit{lo, query_lo, at_lo.slope, at_lo.owner};
  }
  if (at_lo.value > query_lo) return std::nullopt;
  if (hi.is_inf()) return std::nullopt;
  const Rat x = hi.finite();
  const EnvMax at_x = max_at(x);
  return EnvHit{x, c - m * x, at_x.slope, at_x.owner};
}

std::vector<EnvLine> LineEnvelope::lines() const {
  std::vector<EnvLine> all;
  for (const Bucket& bk : buckets_) {
    all.insert(all.end(), bk.raw.begin(), bk.raw.end());
  }
  return all;
}

std::vector<EnvelopeSegment> upper_envelope_segments(std::vector<EnvLine> raw) {
  std::vector<EnvelopeSegment> out;
  if (raw.empty()) return out;
  std::vector<EnvLine> hull;
  std::vector<Rat> bp;
  build_hull(raw, hull, bp);
  // Clip the envelope to x >= 0.
  size_t first = hull_index_at(bp, Rat(0));
  for (size_t i = first; i < hull.size(); ++i) {
    EnvelopeSegment seg;
    seg.x_from = (i == first) ? Rat(0) : bp[i - 1];
    seg.x_to = (i + 1 < hull.size()) ? ExtRat(bp[i]) : ExtRat::infinity();
    seg.a = hull[i].a;
    seg.b = hull[i].b;
    seg.owner = hull[i].owner;
    out.push_back(seg);
  }
  return out;
}

std::vector<EnvelopeSegment> LineEnvelope::segments() const {
  return upper_envelope_segments(lines());
}

// ------------------------------------------------- ray envelope (sweep)

std::vector<EnvelopeSegment> build_upper_envelope(std::vector<EnvLine> rays) {
  std::vector<EnvelopeSegment> out;
  if (rays.empty()) return out;
  auto act = [&](size_t i) -> Rat {
    return rays[i].activation ? *rays[i].activation : Rat(0);
  };
  Rat x = act(0);
  for (size_t i = 1; i < rays.size(); ++i) {
    Rat a = act(i);
    if (a < x) x = a;
  }

  while (true) {
    // Leader among rays active at x: max value, then steepest, then owner.
    int leader = -1;
    Rat lv(0);
    for (size_t i = 0; i < rays.size(); ++i) {
      if (act(i) > x) continue;
      Rat v = rays[i].a * x + rays[i].b;
      if (leader < 0 || v > lv ||
          (v == lv && (rays[i].a > rays[leader].a ||
                       (rays[i].a == rays[leader].a &&
                        rays[i].owner < rays[leader].owner)))) {
        leader = static_cast<int>(i);
        lv = v;
      }
    }
    assert(leader >= 0);
    const EnvLine& L = rays[leader];

    // Next event: an activation to the right, or an active steeper ray
    // overtaking the leader.
    ExtRat next = ExtRat::infinity();
    for (size_t i = 0; i < rays.size(); ++i) {
      if (act(i) > x) {
        next = std::min(next, ExtRat(act(i)));
        continue;
      }
      if (static_cast<int>(i) == leader) continue;
      if (rays[i].a > L.a) {
        Rat xc = cross_x(L, rays[i]);
        if (xc > x) next = std::min(next, ExtRat(xc));
      }
    }

    if (!out.empty() && out.back().a == L.a && out.back().b == L.b &&
        out.back().owner == L.owner) {
      out.back().x_to = next;  // extend the previous piece
    } else {
      out.push_back(EnvelopeSegment{x, next, L.a, L.b, L.owner});
    }
    if (next.is_inf()) break;
    x = next.finite();
  }
  return out;
}

std::optional<Rat> envelope_value(const std::vector<EnvelopeSegment>& segs,
                                  const Rat& x) {
  for (const EnvelopeSegment& s : segs) {
    if (x >= s.x_from && ExtRat(x) < s.x_to) return Rat(s.a * x + s.b);
  }
  if (!segs.empty()) {
    const EnvelopeSegment& s = segs.back();
    if (s.x_to == ExtRat(x)) return Rat(s.a * x + s.b);
  }
  return std::nullopt;
}

// ------------------------------------------------------ windowed minima

void NaiveWindowMin::add(const Rat& key, const Rat& a, const Rat& b,
                         int owner) {
  entries_.push_back(Entry{key, a, b, owner});
}

namespace {

void win_relax(std::optional<WinMin>& best, const Rat& v, const Rat& slope,
               int owner, std::optional<Rat>& best_slope) {
  if (!best || v < best->value ||
      (v == best->value &&
       (slope < *best_slope ||
        (slope == *best_slope && owner < best->owner)))) {
    best = WinMin{v, owner};
    best_slope = slope;
  }
}

}  // namespace

std::optional<WinMin> NaiveWindowMin::min_in_open(const Rat& lo, const Rat& hi,
                                                  const Rat& x,
                                                  bool hi_inclusive) const {
  std::optional<WinMin> best;
  std::optional<Rat> best_slope;
  for (const Entry& e : entries_) {
    if (e.key > lo && (e.key < hi || (hi_inclusive && e.key == hi))) {
      win_relax(best, e.a * x + e.b, e.a, e.owner, best_slope);
    }
  }
  return best;
}

std::optional<WinMin> NaiveWindowMin::min_prefix(const Rat& hi,
                                                 const Rat& x) const {
  std::optional<WinMin> best;
  std::optional<Rat> best_slope;
  for (const Entry& e : entries_) {
    if (e.key <= hi) {
      win_relax(best, e.a * x + e.b, e.a, e.owner, best_slope);
    }
  }
  return best;
}

void WindowedLineMin::add(const Rat& key, const Rat& a, const Rat& b,
                          int owner) {
  if (!keys_.empty() && key < keys_.back()) {
    throw Error("WindowedLineMin keys must be non-decreasing");
  }
  if (keys_.size() >= leaves_) {
    // Grow: double capacity and rebuild the (lazy) tree shell.
    size_t cap = leaves_ ? leaves_ * 2 : 16;
    while (cap < keys_.size() + 1) cap *= 2;
    std::vector<Node> fresh(2 * cap);
    // Move raw line payloads to the new leaves.
    for (size_t slot = 0; slot < keys_.size(); ++slot) {
      Node& leaf_old = tree_[leaves_ + slot];
      std::vector<EnvLine> payload = std::move(leaf_old.pending);
      for (const EnvLine& l : leaf_old.hull) payload.push_back(l);
      // raw copies live in `pending` until a query rebuilds the node
      Node& nl = fresh[cap + slot];
      nl.pending = std::move(payload);
      nl.dirty = !nl.pending.empty();
    }
    tree_ = std::move(fresh);
    leaves_ = cap;
    // Re-seed internal nodes from leaves.
    for (size_t slot = 0; slot < keys_.size(); ++slot) {
      const Node& nl = tree_[leaves_ + slot];
      for (size_t i = (leaves_ + slot) / 2; i >= 1; i /= 2) {
        Node& nd = tree_[i];
        nd.pending.insert(nd.pending.end(), nl.pending.begin(),
                          nl.pending.end());
        nd.dirty = true;
        if (i == 1) break;
      }
    }
  }
  const size_t slot = keys_.size();
  keys_.push_back(key);
  // Negate so that a max-hull answers min queries.
  EnvLine neg{-a, -b, owner, std::nullopt};
  for (size_t i = leaves_ + slot; i >= 1; i /= 2) {
    tree_[i].pending.push_back(neg);
    tree_[i].dirty = true;
    if (i == 1) break;
  }
}

std::optional<WinMin> WindowedLineMin::query_slots(size_t lo_slot,
                                                   size_t hi_slot,
                                                   const Rat& x) const {
  std::optional<WinMin> best;
  std::optional<Rat> best_slope;
  auto visit = [&](size_t idx) {
    Node& nd = tree_[idx];
    if (nd.dirty) {
      for (const EnvLine& l : nd.hull) nd.pending.push_back(l);
      build_hull(nd.pending, nd.hull, nd.bp);
      nd.pending.clear();
      nd.dirty = false;
    }
    if (nd.hull.empty()) return;
    const size_t i = hull_index_at(nd.bp, x);
    const EnvLine& l = nd.hull[i];
    // Undo the negation: original value/slope.
    win_relax(best, Rat(-(l.a * x + l.b)), Rat(-l.a), l.owner, best_slope);
  };
  size_t lo = lo_slot + leaves_, hi = hi_slot + leaves_;
  while (lo < hi) {
    if (lo & 1) visit(lo++);
    if (hi & 1) visit(--hi);
    lo /= 2;
    hi /= 2;
  }
  return best;
}

std::optional<WinMin> WindowedLineMin::min_in_open(const Rat& lo,
                                                   const Rat& hi, const Rat& x,
                                                   bool hi_inclusive) const {
  if (keys_.empty()) return std::nullopt;
  size_t lo_slot = static_cast<size_t>(
      std::upper_bound(keys_.begin(), keys_.end(), lo) - keys_.begin());
  size_t hi_slot =
      hi_inclusive
          ? static_cast<size_t>(
                std::upper_bound(keys_.begin(), keys_.end(), hi) -
                keys_.begin())
          : static_cast<size_t>(
                std::lower_bound(keys_.begin(), keys_.end(), hi) -
                keys_.begin());
  if (lo_slot >= hi_slot) return std::nullopt;
  return query_slots(lo_slot, hi_slot, x);
}

std::optional<WinMin> WindowedLineMin::min_prefix(const Rat& hi,
                                                  const Rat& x) const {
  if (keys_.empty()) return std::nullopt;
  size_t hi_slot = static_cast<size_t>(
      std::upper_bound(keys_.begin(), keys_.end(), hi) - keys_.begin());
  if (hi_slot == 0) return std::nullopt;
  return query_slots(0, hi_slot, x);
}

}  // namespace delivery
