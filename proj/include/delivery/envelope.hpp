#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "delivery/rational.hpp"

namespace delivery {

// A line y = a*x + b with an owner tag. `activation` restricts the line to
// x >= activation (a ray); lines without activation are global.
struct EnvLine {
  Rat a;
  Rat b;
  int owner = -1;
  std::optional<Rat> activation;
};

struct EnvMax {
  Rat value;
  Rat slope;   // steepest slope among lines attaining the maximum
  int owner;   // lowest owner id among those steepest lines
};

struct EnvHit {
  Rat x;
  Rat y;
  Rat slope;   // steepest slope attaining the envelope at x
  int owner;
};

// One maximal piece of an upper envelope: the line `a*x + b` owned by
// `owner` is the pointwise maximum on [x_from, x_to).
struct EnvelopeSegment {
  Rat x_from;
  ExtRat x_to;  // infinite for the last segment
  Rat a;
  Rat b;
  int owner;
};

// Reference implementation: plain linear scans over the stored lines.
// Deliberately simple; used as the oracle for the bucketed structure and as
// the engine of the naive quadratic path solver.
// insert throws DuplicateEntry when the same (a, b, owner) is stored twice.
class NaiveLineSet {
 public:
  void insert(const Rat& a, const Rat& b, int owner);
  bool empty() const { return lines_.empty(); }
  size_t size() const { return lines_.size(); }
  EnvMax max_at(const Rat& x) const;
  // Smallest x >= 0 where the falling query line y = c - m*x (m > 0) meets
  // the upper envelope of the stored lines; nullopt when they never meet.
  std::optional<EnvHit> leftmost_intersection(const Rat& c, const Rat& m) const;
  const std::vector<EnvLine>& lines() const { return lines_; }

 private:
  std::vector<EnvLine> lines_;
  std::unordered_set<std::string> keys_;
};

// Insert-only upper envelope with logarithmic-method buckets: each bucket is
// a static convex hull over its lines, buckets are merged like a binary
// counter. Queries combine O(log k) buckets, each answered by binary search,
// for O(log^2 k) per operation. Results are bit-identical to NaiveLineSet.
class LineEnvelope {
 public:
  void insert(const Rat& a, const Rat& b, int owner);
  bool empty() const { return total_ == 0; }
  size_t size() const { return total_; }
  EnvMax max_at(const Rat& x) const;
  std::optional<EnvHit> leftmost_intersection(const Rat& c, const Rat& m) const;
  std::vector<EnvLine> lines() const;
  // Segment list of the upper envelope of all stored lines (rebuilt from
  // scratch; intended for one-shot structural output, not hot loops).
  std::vector<EnvelopeSegment> segments() const;

 private:
  struct Bucket {
    // Hull lines in strictly increasing slope order with their breakpoints;
    // hull[i] is maximal on [bp[i-1], bp[i]].
    std::vector<EnvLine> hull;
    std::vector<Rat> bp;
    std::vector<EnvLine> raw;

    void build();
    EnvMax max_at(const Rat& x) const;
  };

  std::vector<Bucket> buckets_;
  size_t total_ = 0;
  std::unordered_set<std::string> keys_;
};

// Upper envelope of full lines (activations ignored), clipped to x >= 0.
std::vector<EnvelopeSegment> upper_envelope_segments(std::vector<EnvLine> lines);

// Upper envelope of rays honoring activation abscissas, by an event-driven
// left-to-right sweep. Quadratic in the number of rays; used for structural
// output and golden tests, not in solver hot paths.
std::vector<EnvelopeSegment> build_upper_envelope(std::vector<EnvLine> rays);

// Evaluates a segment list at x (the segment covering x), for tests.
std::optional<Rat> envelope_value(const std::vector<EnvelopeSegment>& segs,
                                  const Rat& x);

struct WinMin {
  Rat value;
  int owner;
};

// Reference windowed minimum: linear scan.
class NaiveWindowMin {
 public:
  void add(const Rat& key, const Rat& a, const Rat& b, int owner);
  // min a*x+b over stored lines with lo < key < hi (or key <= hi when
  // hi_inclusive is set).
  std::optional<WinMin> min_in_open(const Rat& lo, const Rat& hi, const Rat& x,
                                    bool hi_inclusive = false) const;
  // min a*x+b over stored lines with key <= hi.
  std::optional<WinMin> min_prefix(const Rat& hi, const Rat& x) const;

 private:
  struct Entry {
    Rat key, a, b;
    int owner;
  };
  std::vector<Entry> entries_;
};

// Windowed minimum over lines keyed by a non-decreasing insertion key:
// a segment tree over insertion slots whose nodes keep insert-only lower
// hulls (exact rational convex hull trick). Queries take O(log^2 k).
class WindowedLineMin {
 public:
  void add(const Rat& key, const Rat& a, const Rat& b, int owner);
  std::optional<WinMin> min_in_open(const Rat& lo, const Rat& hi, const Rat& x,
                                    bool hi_inclusive = false) const;
  std::optional<WinMin> min_prefix(const Rat& hi, const Rat& x) const;

 private:
  struct Node {
    // Lower hull: slopes strictly decreasing... stored as max-hull of
    // negated lines (slopes increasing); see .cpp.
    std::vector<EnvLine> hull;
    std::vector<Rat> bp;
    std::vector<EnvLine> pending;
    bool dirty = false;
  };

  std::optional<WinMin> query_slots(size_t lo_slot, size_t hi_slot,
                                    const Rat& x) const;

  std::vector<Rat> keys_;
  mutable std::vector<Node> tree_;
  size_t leaves_ = 0;
};

}  // namespace delivery
