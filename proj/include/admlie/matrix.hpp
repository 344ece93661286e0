#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "admlie/rational.hpp"

namespace admlie {

/// Dense rational matrix. Small enough at desk scale that no sparse storage
/// is needed; structure tensors keep their own sparse form.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, Rat(0)) {}

  Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ ? int(rows.begin()->size()) : 0;
    data_.reserve(std::size_t(rows_) * cols_);
    for (const auto& r : rows) {
      if (int(r.size()) != cols_) throw Error("ragged matrix initializer");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows) {
    Mat m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (int(rows[i].size()) != m.cols()) throw Error("ragged row list");
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static Mat from_cols(const std::vector<Vec>& cols) {
    Mat m(cols.empty() ? 0 : int(cols[0].size()), int(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (int(cols[j].size()) != m.rows()) throw Error("ragged column list");
      for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) {
    check(i, j);
    return data_[std::size_t(i) * cols_ + j];
  }
  const Rat& at(int i, int j) const {
    check(i, j);
    return data_[std::size_t(i) * cols_ + j];
  }

  Vec row(int i) const {
    Vec out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
    return out;
  }
  Vec col(int j) const {
    Vec out(rows_);
    for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  bool is_antisymmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i; j < cols_; ++j)
        if (at(i, j) != -at(j, i)) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec apply(const Vec& v) const {
    if (int(v.size()) != cols_) throw Error("matrix/vector size mismatch");
    Vec out(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i) {
      Rat s = 0;
      for (int j = 0; j < cols_; ++j) {
        const Rat& a = at(i, j);
        if (a != 0) s += a * v[j];
      }
      out[i] = s;
    }
    return out;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Rat& aik = a.at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < b.cols_; ++j) {
          const Rat& bkj = b.at(k, j);
          if (bkj != 0) c.at(i, j) += aik * bkj;
        }
      }
    return c;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum size mismatch");
    Mat c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix difference size mismatch");
    Mat c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Mat operator*(const Rat& c, const Mat& a) {
    Mat out = a;
    for (auto& x : out.data_) x *= c;
    return out;
  }

  friend Mat operator-(const Mat& a) { return Rat(-1) * a; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Row-major flattening, used to treat End(V) as a coordinate space.
  Vec flatten() const { return Vec(data_.begin(), data_.end()); }

  static Mat unflatten(const Vec& v, int rows, int cols) {
    if (int(v.size()) != rows * cols) throw Error("unflatten size mismatch");
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = v[std::size_t(i) * cols + j];
    return m;
  }

  std::string to_string() const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
      if (i) out += "; ";
      for (int j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += rat_to_string(at(i, j));
      }
    }
    return out + "]";
  }

 private:
  void check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw Error("matrix index out of bounds");
  }

  int rows_, cols_;
  std::vector<Rat> data_;
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace admlie
