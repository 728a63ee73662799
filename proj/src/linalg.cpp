#include "sparkcx/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace sparkcx {

// ---------------------------------------------------------------------------
// numbers and vectors

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw input_error("malformed rational: '" + text + "'");
  }
}

Int parse_int(const std::string& text) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw input_error("malformed integer: '" + text + "'");
  }
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

RatVec add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const Rat& c, const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVec neg(const IntVec& v) {
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

// ---------------------------------------------------------------------------
// IntMat

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.resize(rows_ * cols_);
  long i = 0;
  for (const auto& r : rows) {
    if ((long)r.size() != cols_) throw input_error("ragged matrix literal");
    long j = 0;
    for (long x : r) at(i, j++) = x;
    ++i;
  }
}

IntMat IntMat::identity(long n) {
  IntMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IntMat IntMat::transposed() const {
  IntMat t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntVec IntMat::col(long j) const {
  IntVec v(rows_);
  for (long i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void IntMat::set_col(long j, const IntVec& v) {
  for (long i = 0; i < rows_; ++i) at(i, j) = v[i];
}

void IntMat::swap_rows(long i, long j) {
  if (i == j) return;
  for (long k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(long i, long j) {
  if (i == j) return;
  for (long k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::negate_row(long i) {
  for (long k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMat::negate_col(long j) {
  for (long k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

void IntMat::row_addmul(long dst, long src, const Int& c) {
  if (c == 0) return;
  for (long k = 0; k < cols_; ++k) {
    const Int& s = at(src, k);
    if (s == 0) continue;
    mpz_addmul(at(dst, k).get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMat::col_addmul(long dst, long src, const Int& c) {
  if (c == 0) return;
  for (long k = 0; k < rows_; ++k) {
    const Int& s = at(k, src);
    if (s == 0) continue;
    mpz_addmul(at(k, dst).get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  }
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw input_error("matrix product shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long k = 0; k < a.cols(); ++k) {
      const Int& x = a.at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < b.cols(); ++j) {
        const Int& y = b.at(k, j);
        if (y == 0) continue;
        mpz_addmul(c.at(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  return c;
}

IntVec operator*(const IntMat& a, const IntVec& v) {
  if (a.cols() != (long)v.size()) throw input_error("matrix-vector shape mismatch");
  IntVec out(a.rows());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      const Int& x = a.at(i, j);
      if (x == 0 || v[j] == 0) continue;
      mpz_addmul(out[i].get_mpz_t(), x.get_mpz_t(), v[j].get_mpz_t());
    }
  return out;
}

std::string IntMat::to_string() const {
  std::ostringstream os;
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    os << "\n";
  }
  return os.str();
}

IntMat hcat(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) throw input_error("hcat row mismatch");
  IntMat c(a.rows(), a.cols() + b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (long j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

// ---------------------------------------------------------------------------
// RatMat

RatMat RatMat::identity(long n) {
  RatMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::from(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
  return r;
}

RatMat RatMat::from_rows(std::initializer_list<std::initializer_list<std::string>> rows) {
  RatMat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  long i = 0;
  for (const auto& r : rows) {
    long j = 0;
    for (const auto& s : r) m.at(i, j++) = parse_rat(s);
    ++i;
  }
  return m;
}

bool RatMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool RatMat::is_integral() const {
  for (const auto& x : a_)
    if (x.get_den() != 1) return false;
  return true;
}

IntMat RatMat::to_int() const {
  IntMat m(rows_, cols_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) {
      const Rat& q = at(i, j);
      if (q.get_den() != 1) throw invariant_error("matrix entry not integral");
      m.at(i, j) = q.get_num();
    }
  return m;
}

RatMat RatMat::transposed() const {
  RatMat t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatVec RatMat::col(long j) const {
  RatVec v(rows_);
  for (long i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void RatMat::set_col(long j, const RatVec& v) {
  for (long i = 0; i < rows_; ++i) at(i, j) = v[i];
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw input_error("matrix product shape mismatch");
  RatMat c(a.rows(), b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long k = 0; k < a.cols(); ++k) {
      const Rat& x = a.at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < b.cols(); ++j) {
        const Rat& y = b.at(k, j);
        if (y == 0) continue;
        c.at(i, j) += x * y;
      }
    }
  return c;
}

RatVec operator*(const RatMat& a, const RatVec& v) {
  if (a.cols() != (long)v.size()) throw input_error("matrix-vector shape mismatch");
  RatVec out(a.rows());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      const Rat& x = a.at(i, j);
      if (x == 0 || v[j] == 0) continue;
      out[i] += x * v[j];
    }
  return out;
}

RatMat operator+(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw input_error("shape mismatch");
  RatMat c(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw input_error("shape mismatch");
  RatMat c(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

std::string RatMat::to_string() const {
  std::ostringstream os;
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << sparkcx::to_string(at(i, j));
    os << "\n";
  }
  return os.str();
}

RatMat hcat(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows()) throw input_error("hcat row mismatch");
  RatMat c(a.rows(), a.cols() + b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (long j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
  }
  return c;
}

// ---------------------------------------------------------------------------
// descriptors

std::string GroupDescriptor::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (free_rank == 1) {
    sep();
    os << "Z";
  } else if (free_rank > 1) {
    sep();
    os << "Z^" << free_rank;
  }
  for (const auto& d : torsion) {
    sep();
    os << "Z/" << d.get_str();
  }
  return os.str();
}

std::string MixedGroupDescriptor::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  std::string fgs = fg.to_string();
  if (fgs != "0") {
    sep();
    os << fgs;
  }
  if (qz_rank == 1) {
    sep();
    os << "(Q/Z)";
  } else if (qz_rank > 1) {
    sep();
    os << "(Q/Z)^" << qz_rank;
  }
  if (q_rank == 1) {
    sep();
    os << "Q";
  } else if (q_rank > 1) {
    sep();
    os << "Q^" << q_rank;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// position of the entry of minimal absolute value in m[t.., t..], or nothing
std::optional<std::pair<long, long>> min_abs_pivot(const IntMat& m, long t) {
  std::optional<std::pair<long, long>> best;
  Int best_abs;
  for (long i = t; i < m.rows(); ++i)
    for (long j = t; j < m.cols(); ++j) {
      const Int& x = m.at(i, j);
      if (x == 0) continue;
      Int ax = abs(x);
      if (!best || ax < best_abs) {
        best = {{i, j}};
        best_abs = ax;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace

namespace {

// Diagonalize in place with row ops on u and column ops on v, keeping
// u*m*v = a.  Minimal-absolute-value pivoting controls coefficient growth.
void snf_diagonalize(IntMat& a, IntMat& u, IntMat& v) {
  const long steps = std::min(a.rows(), a.cols());
  for (long t = 0; t < steps; ++t) {
    auto piv = min_abs_pivot(a, t);
    if (!piv) break;
    a.swap_rows(t, piv->first);
    u.swap_rows(t, piv->first);
    a.swap_cols(t, piv->second);
    v.swap_cols(t, piv->second);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (long i = t + 1; i < a.rows(); ++i) {
        if (a.at(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
        a.row_addmul(i, t, -q);
        u.row_addmul(i, t, -q);
        if (a.at(i, t) != 0) {
          a.swap_rows(t, i);  // strictly smaller pivot
          u.swap_rows(t, i);
          dirty = true;
        }
      }
      for (long j = t + 1; j < a.cols(); ++j) {
        if (a.at(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
        a.col_addmul(j, t, -q);
        v.col_addmul(j, t, -q);
        if (a.at(t, j) != 0) {
          a.swap_cols(t, j);
          v.swap_cols(t, j);
          dirty = true;
        }
      }
    }
    if (a.at(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
}

}  // namespace

namespace {

// Replace the diagonal pair (d_i, d_{i+1}) by (gcd, +/-lcm) in place.  The
// 2x2 block stays confined to rows/cols {i, i+1}.
void snf_couple_pair(IntMat& a, IntMat& u, IntMat& v, long i) {
  long j = i + 1;
  a.col_addmul(i, j, 1);  // block is now [[d_i, 0], [d_j, d_j]]
  v.col_addmul(i, j, 1);
  while (a.at(j, i) != 0) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.at(i, i).get_mpz_t(), a.at(j, i).get_mpz_t());
    a.row_addmul(i, j, -q);
    u.row_addmul(i, j, -q);
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  // every block entry is a combination of the old pair, so gcd divides it
  if (a.at(i, j) != 0) {
    Int q = a.at(i, j) / a.at(i, i);
    a.col_addmul(j, i, -q);
    v.col_addmul(j, i, -q);
  }
  if (a.at(i, i) < 0) {
    a.negate_row(i);
    u.negate_row(i);
  }
  if (a.at(j, j) < 0) {
    a.negate_row(j);
    u.negate_row(j);
  }
}

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
  SnfResult res;
  res.u = IntMat::identity(m.rows());
  res.v = IntMat::identity(m.cols());
  IntMat a = m;
  const long steps = std::min(a.rows(), a.cols());

  snf_diagonalize(a, res.u, res.v);

  long r = 0;
  while (r < steps && a.at(r, r) != 0) ++r;

  // Repair the divisor chain with adjacent gcd/lcm couplings; per prime this
  // is an adjacent sort of valuations, so the sweep terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (long i = 0; i + 1 < r; ++i) {
      if (a.at(i + 1, i + 1) % a.at(i, i) == 0) continue;
      snf_couple_pair(a, res.u, res.v, i);
      changed = true;
    }
  }

  res.d = a;
  res.rank = r;
  return res;
}

std::vector<Int> SnfResult::divisors() const {
  std::vector<Int> out;
  long n = std::min(d.rows(), d.cols());
  for (long i = 0; i < n; ++i)
    if (d.at(i, i) != 0) out.push_back(d.at(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Hermite normal form (column style)

HnfResult hermite_normal_form(const IntMat& m) {
  HnfResult res;
  res.h = m;
  res.v = IntMat::identity(m.cols());
  IntMat& h = res.h;
  IntMat& v = res.v;

  long col = 0;
  for (long row = 0; row < m.rows() && col < m.cols(); ++row) {
    // gcd-reduce the entries h[row][col..] into position col
    long nz = -1;
    for (long j = col; j < h.cols(); ++j)
      if (h.at(row, j) != 0) {
        nz = j;
        break;
      }
    if (nz == -1) continue;
    h.swap_cols(col, nz);
    v.swap_cols(col, nz);
    bool again = true;
    while (again) {
      again = false;
      // pick the smallest nonzero |entry| in the row among active columns
      long best = col;
      for (long j = col; j < h.cols(); ++j)
        if (h.at(row, j) != 0 &&
            (h.at(row, best) == 0 || abs(h.at(row, j)) < abs(h.at(row, best))))
          best = j;
      h.swap_cols(col, best);
      v.swap_cols(col, best);
      for (long j = col + 1; j < h.cols(); ++j) {
        if (h.at(row, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(row, j).get_mpz_t(), h.at(row, col).get_mpz_t());
        h.col_addmul(j, col, -q);
        v.col_addmul(j, col, -q);
        if (h.at(row, j) != 0) again = true;
      }
    }
    if (h.at(row, col) < 0) {
      h.negate_col(col);
      v.negate_col(col);
    }
    // reduce earlier columns against this pivot
    for (long j = 0; j < col; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(row, j).get_mpz_t(), h.at(row, col).get_mpz_t());
      h.col_addmul(j, col, -q);
      v.col_addmul(j, col, -q);
    }
    res.pivot_rows.push_back(row);
    ++col;
  }
  res.rank = col;
  return res;
}

// ---------------------------------------------------------------------------
// determinant (Bareiss)

Int determinant(const IntMat& m) {
  if (m.rows() != m.cols()) throw input_error("determinant of non-square matrix");
  long n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int sign = 1, prev = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p == -1) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// solvers

std::optional<IntSolution> solve_integer(const IntMat& m, const IntVec& b) {
  if ((long)b.size() != m.rows()) throw input_error("solve_integer: dimension mismatch");
  SnfResult s = smith_normal_form(m);
  IntVec ub = s.u * b;
  long n = m.cols();
  long diag = std::min(m.rows(), n);
  IntVec y(n, Int(0));
  for (long i = 0; i < diag; ++i) {
    const Int& d = s.d.at(i, i);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  for (long i = diag; i < m.rows(); ++i)
    if (ub[i] != 0) return std::nullopt;

  IntSolution sol;
  sol.x0 = s.v * y;
  std::vector<long> free_cols;
  for (long j = 0; j < n; ++j)
    if (j >= diag || s.d.at(j, j) == 0) free_cols.push_back(j);
  sol.kernel = IntMat(n, (long)free_cols.size());
  for (long k = 0; k < (long)free_cols.size(); ++k)
    sol.kernel.set_col(k, s.v.col(free_cols[k]));
  return sol;
}

std::vector<long> rref_inplace(RatMat& m) {
  std::vector<long> pivots;
  long row = 0;
  for (long col = 0; col < m.cols() && row < m.rows(); ++col) {
    long p = -1;
    for (long i = row; i < m.rows(); ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p == -1) continue;
    if (p != row)
      for (long k = 0; k < m.cols(); ++k) std::swap(m.at(p, k), m.at(row, k));
    Rat inv = 1 / m.at(row, col);
    for (long k = col; k < m.cols(); ++k) {
      if (m.at(row, k) == 0) continue;
      m.at(row, k) *= inv;
    }
    for (long i = 0; i < m.rows(); ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat c = m.at(i, col);
      for (long k = col; k < m.cols(); ++k) {
        if (m.at(row, k) == 0) continue;
        m.at(i, k) -= c * m.at(row, k);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

long rank(const RatMat& m) {
  RatMat a = m;
  return (long)rref_inplace(a).size();
}

long rank(const IntMat& m) { return rank(RatMat::from(m)); }

RatMat rational_kernel(const RatMat& m) {
  RatMat a = m;
  auto pivots = rref_inplace(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (long p : pivots) is_pivot[p] = true;
  std::vector<long> free_cols;
  for (long j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  RatMat k(m.cols(), (long)free_cols.size());
  for (long fi = 0; fi < (long)free_cols.size(); ++fi) {
    long f = free_cols[fi];
    k.at(f, fi) = 1;
    for (long pi = 0; pi < (long)pivots.size(); ++pi) k.at(pivots[pi], fi) = -a.at(pi, f);
  }
  return k;
}

std::optional<RatSolution> solve_rational(const RatMat& m, const RatVec& b) {
  if ((long)b.size() != m.rows()) throw input_error("solve_rational: dimension mismatch");
  RatMat aug = m;
  RatMat bcol(m.rows(), 1);
  bcol.set_col(0, b);
  aug = hcat(aug, bcol);
  auto pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatSolution sol;
  sol.x0 = rat_zeros(m.cols());
  for (long pi = 0; pi < (long)pivots.size(); ++pi)
    sol.x0[pivots[pi]] = aug.at(pi, m.cols());
  sol.kernel = rational_kernel(m);
  return sol;
}

namespace {

// least common multiple of all denominators in a row range
Int row_denominator_lcm(const RatMat& m, long row, const Rat& extra) {
  Int l = extra.get_den();
  for (long j = 0; j < m.cols(); ++j) {
    Int g;
    mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), m.at(row, j).get_den().get_mpz_t());
    l = g;
  }
  return l;
}

}  // namespace

std::optional<MixedSolution> solve_mixed(const RatMat& a, const RatMat& l, const RatVec& b) {
  if (a.rows() != l.rows() || (long)b.size() != a.rows())
    throw input_error("solve_mixed: dimension mismatch");
  const long m = a.rows();

  // Row-reduce [A | L | b] with pivots chosen in the A block only
  // (leftmost-pivot convention); rows with zero A part carry the projected
  // integral system.
  RatMat aug = hcat(hcat(a, l), [&] {
    RatMat bc(m, 1);
    bc.set_col(0, b);
    return bc;
  }());
  long arow = 0;
  std::vector<long> apivots;
  for (long col = 0; col < a.cols() && arow < m; ++col) {
    long p = -1;
    for (long i = arow; i < m; ++i)
      if (aug.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p == -1) continue;
    if (p != arow)
      for (long k = 0; k < aug.cols(); ++k) std::swap(aug.at(p, k), aug.at(arow, k));
    Rat inv = 1 / aug.at(arow, col);
    for (long k = 0; k < aug.cols(); ++k) aug.at(arow, k) *= inv;
    for (long i = 0; i < m; ++i) {
      if (i == arow || aug.at(i, col) == 0) continue;
      Rat c = aug.at(i, col);
      for (long k = 0; k < aug.cols(); ++k) aug.at(i, k) -= c * aug.at(arow, k);
    }
    apivots.push_back(col);
    ++arow;
  }

  // projected system over the complement rows, scaled to integers
  long nproj = m - arow;
  IntMat lp(nproj, l.cols());
  IntVec bp(nproj);
  for (long i = 0; i < nproj; ++i) {
    long row = arow + i;
    RatMat strip(1, l.cols());
    for (long j = 0; j < l.cols(); ++j) strip.at(0, j) = aug.at(row, a.cols() + j);
    Rat rhs = aug.at(row, a.cols() + l.cols());
    Int scale = row_denominator_lcm(strip, 0, rhs);
    for (long j = 0; j < l.cols(); ++j) {
      Rat q = strip.at(0, j) * Rat(scale);
      lp.at(i, j) = q.get_num();
    }
    Rat rq = rhs * Rat(scale);
    bp[i] = rq.get_num();
  }
  auto ysol = solve_integer(lp, bp);
  if (!ysol) return std::nullopt;

  MixedSolution sol;
  sol.y = ysol->x0;
  // back-substitute for the rational block: A x = b - L y
  RatVec rhs = b;
  for (long j = 0; j < l.cols(); ++j)
    if (sol.y[j] != 0)
      for (long i = 0; i < m; ++i) rhs[i] -= l.at(i, j) * Rat(sol.y[j]);
  auto xsol = solve_rational(a, rhs);
  if (!xsol) throw invariant_error("solve_mixed: back-substitution failed");
  sol.x = xsol->x0;
  return sol;
}

// ---------------------------------------------------------------------------
// quotient presentations

GroupDescriptor quotient_descriptor(long ambient_rank, const IntMat& relations) {
  if (relations.cols() > 0 && relations.rows() != ambient_rank)
    throw input_error("quotient_descriptor: relations have wrong row count");
  GroupDescriptor g;
  if (relations.cols() == 0 || relations.is_zero()) {
    g.free_rank = ambient_rank;
    return g;
  }
  SnfResult s = smith_normal_form(relations);
  g.free_rank = ambient_rank - s.rank;
  for (const auto& d : s.divisors())
    if (d >= 2) g.torsion.push_back(d);
  return g;
}

GroupDescriptor subquotient_descriptor(const IntMat& n, const IntMat& r) {
  // express the columns of r in the basis n
  IntMat coords(n.cols(), r.cols());
  for (long j = 0; j < r.cols(); ++j) {
    auto sol = solve_integer(n, r.col(j));
    if (!sol) throw invariant_error("subquotient: generator not in ambient lattice");
    coords.set_col(j, sol->x0);
  }
  return quotient_descriptor(n.cols(), coords);
}

IntMat integer_kernel(const IntMat& m) {
  SnfResult s = smith_normal_form(m);
  long n = m.cols();
  long diag = std::min(m.rows(), n);
  std::vector<long> free_cols;
  for (long j = 0; j < n; ++j)
    if (j >= diag || s.d.at(j, j) == 0) free_cols.push_back(j);
  IntMat k(n, (long)free_cols.size());
  for (long i = 0; i < (long)free_cols.size(); ++i) k.set_col(i, s.v.col(free_cols[i]));
  return k;
}

IntMat unimodular_inverse(const IntMat& u) {
  if (u.rows() != u.cols()) throw input_error("unimodular_inverse: not square");
  long n = u.rows();
  RatMat aug = hcat(RatMat::from(u), RatMat::identity(n));
  auto piv = rref_inplace(aug);
  if ((long)piv.size() != n) throw invariant_error("unimodular_inverse: singular");
  IntMat inv(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      const Rat& q = aug.at(i, n + j);
      if (q.get_den() != 1) throw invariant_error("unimodular_inverse: non-integer inverse");
      inv.at(i, j) = q.get_num();
    }
  return inv;
}

// ---------------------------------------------------------------------------
// factorized solvers

RatSolver::RatSolver(const RatMat& m) : rows_(m.rows()), cols_(m.cols()) {
  RatMat aug = hcat(m, RatMat::identity(rows_));
  auto piv = rref_inplace(aug);
  for (long p : piv)
    if (p < cols_) pivots_.push_back(p);
  t_ = RatMat(rows_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < rows_; ++j) t_.at(i, j) = aug.at(i, cols_ + j);
}

std::optional<RatVec> RatSolver::solve(const RatVec& b) const {
  if ((long)b.size() != rows_) throw input_error("RatSolver: size mismatch");
  RatVec c = t_ * b;
  for (long i = (long)pivots_.size(); i < rows_; ++i)
    if (c[i] != 0) return std::nullopt;
  RatVec x = rat_zeros(cols_);
  for (size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = c[i];
  return x;
}

IntSolver::IntSolver(const IntMat& m) : rows_(m.rows()), cols_(m.cols()) {
  s_ = smith_normal_form(m);
  long diag = std::min(rows_, cols_);
  std::vector<long> free_cols;
  for (long j = 0; j < cols_; ++j)
    if (j >= diag || s_.d.at(j, j) == 0) free_cols.push_back(j);
  kernel_ = IntMat(cols_, (long)free_cols.size());
  for (size_t i = 0; i < free_cols.size(); ++i)
    kernel_.set_col((long)i, s_.v.col(free_cols[i]));
}

std::optional<IntVec> IntSolver::solve(const IntVec& b) const {
  if ((long)b.size() != rows_) throw input_error("IntSolver: size mismatch");
  IntVec ub = s_.u * b;
  long diag = std::min(rows_, cols_);
  IntVec y(cols_, Int(0));
  for (long i = 0; i < diag; ++i) {
    const Int& d = s_.d.at(i, i);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    }
  }
  for (long i = diag; i < rows_; ++i)
    if (ub[i] != 0) return std::nullopt;
  return s_.v * y;
}

MixedSolver::MixedSolver(const RatMat& a, const RatMat& l) : a_(a), l_(l) {
  if (a.rows() != l.rows()) throw input_error("MixedSolver: row mismatch");
  long m = a.rows();
  RatMat aug = hcat(hcat(a, l), RatMat::identity(m));
  long arow = 0;
  for (long col = 0; col < a.cols() && arow < m; ++col) {
    long p = -1;
    for (long i = arow; i < m; ++i)
      if (aug.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p == -1) continue;
    if (p != arow)
      for (long k = 0; k < aug.cols(); ++k) std::swap(aug.at(p, k), aug.at(arow, k));
    Rat inv = 1 / aug.at(arow, col);
    for (long k = 0; k < aug.cols(); ++k) {
      if (aug.at(arow, k) == 0) continue;
      aug.at(arow, k) *= inv;
    }
    for (long i = 0; i < m; ++i) {
      if (i == arow || aug.at(i, col) == 0) continue;
      Rat c = aug.at(i, col);
      for (long k = 0; k < aug.cols(); ++k) {
        if (aug.at(arow, k) == 0) continue;
        aug.at(i, k) -= c * aug.at(arow, k);
      }
    }
    ++arow;
  }
  arank_ = arow;
  t_ = RatMat(m, m);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) t_.at(i, j) = aug.at(i, a.cols() + l.cols() + j);

  long nproj = m - arank_;
  IntMat lp(nproj, l.cols());
  scales_.assign(nproj, Int(1));
  for (long i = 0; i < nproj; ++i) {
    long row = arank_ + i;
    Int lc = 1;
    for (long j = 0; j < l.cols(); ++j) {
      Int g;
      mpz_lcm(g.get_mpz_t(), lc.get_mpz_t(),
              aug.at(row, a.cols() + j).get_den().get_mpz_t());
      lc = g;
    }
    scales_[i] = lc;
    for (long j = 0; j < l.cols(); ++j) {
      Rat q = aug.at(row, a.cols() + j) * Rat(lc);
      lp.at(i, j) = q.get_num();
    }
  }
  proj_ = std::make_shared<IntSolver>(lp);
  back_ = std::make_shared<RatSolver>(a);
}

std::optional<MixedSolution> MixedSolver::solve(const RatVec& b) const {
  if ((long)b.size() != a_.rows()) throw input_error("MixedSolver: size mismatch");
  RatVec c = t_ * b;
  long nproj = a_.rows() - arank_;
  IntVec rhs(nproj);
  for (long i = 0; i < nproj; ++i) {
    Rat v = c[arank_ + i] * Rat(scales_[i]);
    if (v.get_den() != 1) return std::nullopt;
    rhs[i] = v.get_num();
  }
  auto y = proj_->solve(rhs);
  if (!y) return std::nullopt;
  MixedSolution sol;
  sol.y = *y;
  RatVec back_rhs = b;
  for (long j = 0; j < l_.cols(); ++j)
    if (sol.y[j] != 0)
      for (long i = 0; i < l_.rows(); ++i) back_rhs[i] -= l_.at(i, j) * Rat(sol.y[j]);
  auto x = back_->solve(back_rhs);
  if (!x) throw invariant_error("MixedSolver: back-substitution failed");
  sol.x = *x;
  return sol;
}

}  // namespace sparkcx
