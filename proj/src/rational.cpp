#include "delivery/rational.hpp"

#include <cassert>
#include <ostream>

#include "delivery/errors.hpp"

namespace delivery {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  std::string num = text, den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (num.empty() || den.empty())
      throw ParseError("malformed rational literal '" + text + "'");
  }
  mpz_class n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
    throw ParseError("malformed rational literal '" + text + "'");
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rat_approx(const Rat& q) { return q.get_d(); }

const Rat& ExtRat::finite() const {
  assert(!inf_ && "finite() called on infinite value");
  return value_;
}

ExtRat ExtRat::operator+(const ExtRat& o) const {
  if (inf_ || o.inf_) return infinity();
  return ExtRat(value_ + o.value_);
}

ExtRat ExtRat::operator+(const Rat& o) const {
  if (inf_) return infinity();
  return ExtRat(value_ + o);
}

bool ExtRat::operator==(const ExtRat& o) const {
  if (inf_ != o.inf_) return false;
  return inf_ || value_ == o.value_;
}

bool ExtRat::operator<(const ExtRat& o) const {
  if (inf_) return false;
  if (o.inf_) return true;
  return value_ < o.value_;
}

bool ExtRat::operator<=(const ExtRat& o) const {
  if (o.inf_) return true;
  if (inf_) return false;
  return value_ <= o.value_;
}

std::string ExtRat::str() const { return inf_ ? "inf" : rat_str(value_); }

std::ostream& operator<<(std::ostream& os, const ExtRat& v) {
  return os << v.str();
}

}  // namespace delivery
