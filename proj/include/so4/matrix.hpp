#pragma once

#include <cstddef>
#include <vector>

#include "so4/errors.hpp"
#include "so4/radical_sum.hpp"

namespace so4 {

/// Dense row-major matrix of exact values.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = RadicalSum(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  RadicalSum& operator()(int r, int c) { return data_[index(r, c)]; }
  const RadicalSum& operator()(int r, int c) const { return data_[index(r, c)]; }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  bool is_symmetric() const { return rows_ == cols_ && *this == transpose(); }

  RadicalSum trace() const {
    RadicalSum t;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("ExactMatrix: shape mismatch in product");
    ExactMatrix out(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
      for (int k = 0; k < a.cols_; ++k) {
        const RadicalSum& x = a(r, k);
        if (x.is_zero()) continue;
        for (int c = 0; c < b.cols_; ++c) {
          if (!b(k, c).is_zero()) out(r, c) += x * b(k, c);
        }
      }
    }
    return out;
  }
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("ExactMatrix: shape mismatch in difference");
    ExactMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("ExactMatrix: shape mismatch in sum");
    ExactMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  friend ExactMatrix operator*(const Rational& s, ExactMatrix m) {
    for (auto& v : m.data_) v *= s;
    return m;
  }

  bool is_zero() const {
    for (const auto& v : data_) {
      if (!v.is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DomainError("ExactMatrix: index out of range");
    return static_cast<std::size_t>(r * cols_ + c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<RadicalSum> data_;
};

}  // namespace so4
