#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "cayscheme/rational.hpp"

namespace cayscheme {

// Dense row-major matrix over an exact scalar type.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, const T& fill = T())
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat operator*(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r) {
      for (int k = 0; k < cols_; ++k) {
        const T& x = (*this)(r, k);
        if (x == T(0)) continue;
        for (int c = 0; c < o.cols_; ++c) out(r, c) += x * o(k, c);
      }
    }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    assert(static_cast<int>(v.size()) == cols_);
    std::vector<T> out(rows_, T(0));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  Mat operator+(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
  }

  Mat operator-(const Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Mat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
  }

  const std::vector<T>& data() const { return a_; }
  std::vector<T>& data() { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> a_;
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;

inline IntMat to_int_mat(const Mat<int64_t>& m) {
  IntMat out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = Int(static_cast<long>(m(r, c)));
  return out;
}

inline RatMat to_rat_mat(const IntMat& m) {
  RatMat out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = Rat(m(r, c));
  return out;
}

}  // namespace cayscheme
