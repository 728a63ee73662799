#pragma once

#include <initializer_list>

#include "sparkcx/exact.hpp"

namespace sparkcx {

// Dense row-major matrices. Target sizes are a few hundred rows on the
// shipped fixtures, so dense exact arithmetic is the right trade.

class IntMat {
 public:
  IntMat() = default;
  IntMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMat(std::initializer_list<std::initializer_list<long>> rows);

  static IntMat identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Int& at(long i, long j) { return a_[i * cols_ + j]; }
  const Int& at(long i, long j) const { return a_[i * cols_ + j]; }

  bool operator==(const IntMat& o) const = default;

  bool is_zero() const;

  IntMat transposed() const;
  IntVec col(long j) const;
  void set_col(long j, const IntVec& v);

  // in-place elementary operations (used by the normal-form kernels)
  void swap_rows(long i, long j);
  void swap_cols(long i, long j);
  void negate_row(long i);
  void negate_col(long j);
  void row_addmul(long dst, long src, const Int& c);  // row[dst] += c*row[src]
  void col_addmul(long dst, long src, const Int& c);

  friend IntMat operator*(const IntMat& a, const IntMat& b);
  friend IntVec operator*(const IntMat& a, const IntVec& v);

  std::string to_string() const;

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

class RatMat {
 public:
  RatMat() = default;
  RatMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMat identity(long n);
  static RatMat from(const IntMat& m);
  static RatMat from_rows(std::initializer_list<std::initializer_list<std::string>> rows);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Rat& at(long i, long j) { return a_[i * cols_ + j]; }
  const Rat& at(long i, long j) const { return a_[i * cols_ + j]; }

  bool operator==(const RatMat& o) const = default;

  bool is_zero() const;
  bool is_integral() const;
  IntMat to_int() const;  // throws invariant_error on non-integer entries

  RatMat transposed() const;
  RatVec col(long j) const;
  void set_col(long j, const RatVec& v);

  friend RatMat operator*(const RatMat& a, const RatMat& b);
  friend RatVec operator*(const RatMat& a, const RatVec& v);
  friend RatMat operator+(const RatMat& a, const RatMat& b);
  friend RatMat operator-(const RatMat& a, const RatMat& b);

  std::string to_string() const;

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

RatMat hcat(const RatMat& a, const RatMat& b);
IntMat hcat(const IntMat& a, const IntMat& b);

}  // namespace sparkcx
