#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace delivery {

// Exact rational scalar. All lengths, times, energies and weights in this
// project are Rat; there is no floating-point fast path anywhere in solver
// code. Decimal output exists for display only.
using Rat = mpq_class;

// Parses "num/den" or plain "num" (arbitrary precision, optional sign).
// Throws ParseError on malformed input or zero denominator.
Rat parse_rat(const std::string& text);

// Canonical "num/den" form, denominator always present ("5/1", "-3/4").
std::string rat_str(const Rat& q);

// Display-only decimal approximation. Never feeds back into computation.
double rat_approx(const Rat& q);

// A rational extended with a single point at +infinity, used for distances
// in disconnected graphs. Infinity is a first-class value, not an error.
class ExtRat {
 public:
  ExtRat() : inf_(true) {}  // default-constructed: infinite
  ExtRat(Rat v) : inf_(false), value_(std::move(v)) {}
  ExtRat(long v) : inf_(false), value_(v) {}

  static ExtRat infinity() { return ExtRat(); }

  bool is_inf() const { return inf_; }
  // Finite value accessor; undefined behaviour when infinite (guarded by
  // assertions in debug builds).
  const Rat& finite() const;

  ExtRat operator+(const ExtRat& o) const;
  ExtRat operator+(const Rat& o) const;

  bool operator==(const ExtRat& o) const;
  bool operator!=(const ExtRat& o) const { return !(*this == o); }
  bool operator<(const ExtRat& o) const;
  bool operator<=(const ExtRat& o) const;
  bool operator>(const ExtRat& o) const { return o < *this; }
  bool operator>=(const ExtRat& o) const { return o <= *this; }

  std::string str() const;

 private:
  bool inf_;
  Rat value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRat& v);

inline const ExtRat& min(const ExtRat& a, const ExtRat& b) {
  return b < a ? b : a;
}

}  // namespace delivery
