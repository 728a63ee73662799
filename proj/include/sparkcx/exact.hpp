#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace sparkcx {

// All arithmetic in this library is exact: integers are GMP bignums and
// rationals are kept in lowest terms with positive denominator (mpq_class
// canonicalizes after every operation).
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw input_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q" or "n". Throws input_error on malformed text or q = 0.
Rat parse_rat(const std::string& text);
Int parse_int(const std::string& text);

std::string to_string(const Int& x);
std::string to_string(const Rat& x);

inline RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// Floor-reduces x modulo 1, result in [0, 1).
inline Rat mod_one(const Rat& x) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  Rat r = x - Rat(fl);
  return r;
}

inline bool all_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool all_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline RatVec rat_zeros(size_t n) { return RatVec(n, Rat(0)); }
inline IntVec int_zeros(size_t n) { return IntVec(n, Int(0)); }

RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& c, const RatVec& v);
IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec neg(const IntVec& v);

}  // namespace sparkcx
