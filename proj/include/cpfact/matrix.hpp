// Square matrices over a finite field, entries held as field codes.

#ifndef CPFACT_MATRIX_HPP_
#define CPFACT_MATRIX_HPP_

#include <string>
#include <vector>

#include "field.hpp"

namespace cpfact {

class MatrixGF {
public:
  using Code = GaloisField::Code;

  MatrixGF() = default;

  // entries in row-major order
  MatrixGF(FieldPtr f, int dim, std::vector<Code> entries)
      : field_(std::move(f)), dim_(dim), e_(std::move(entries)) {
    if (dim <= 0 || e_.size() != static_cast<std::size_t>(dim * dim))
      throw DomainMismatch("matrix entry count does not match dimension");
    for (Code c : e_)
      if (c >= field_->size())
        throw DomainMismatch("matrix entry outside the field");
  }

  static MatrixGF identity(FieldPtr f, int dim) {
    std::vector<Code> e(dim * dim, 0);
    for (int i = 0; i < dim; ++i)
      e[i * dim + i] = 1;
    return MatrixGF(std::move(f), dim, std::move(e));
  }

  const FieldPtr& field() const { return field_; }
  int dim() const { return dim_; }
  const std::vector<Code>& entries() const { return e_; }
  Code at(int r, int c) const { return e_[r * dim_ + c]; }
  void set(int r, int c, Code v) { e_[r * dim_ + c] = v; }

  bool compatible(const MatrixGF& o) const {
    return dim_ == o.dim_ && (field_ == o.field_ || *field_ == *o.field_);
  }

  friend MatrixGF operator*(const MatrixGF& a, const MatrixGF& b) {
    if (!a.compatible(b))
      throw DomainMismatch("matrices over different fields or dimensions");
    MatrixGF out = a;
    multiply(*a.field_, a.dim_, a.e_.data(), b.e_.data(), out.e_.data());
    return out;
  }

  // out = a * b on raw row-major code arrays; out must not alias a or b.
  static void multiply(const GaloisField& f, int n, const Code* a, const Code* b, Code* out) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Code s = 0;
        for (int k = 0; k < n; ++k)
          s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
        out[i * n + j] = s;
      }
  }

  Code det() const {
    const GaloisField& f = *field_;
    std::vector<Code> m = e_;
    Code d = 1;
    for (int c = 0; c < dim_; ++c) {
      int piv = -1;
      for (int r = c; r < dim_; ++r)
        if (m[r * dim_ + c]) {
          piv = r;
          break;
        }
      if (piv < 0)
        return 0;
      if (piv != c) {
        for (int k = 0; k < dim_; ++k)
          std::swap(m[piv * dim_ + k], m[c * dim_ + k]);
        d = f.neg(d);
      }
      Code p = m[c * dim_ + c];
      d = f.mul(d, p);
      Code pinv = f.inv(p);
      for (int r = c + 1; r < dim_; ++r) {
        Code factor = f.mul(m[r * dim_ + c], pinv);
        if (!factor)
          continue;
        for (int k = c; k < dim_; ++k)
          m[r * dim_ + k] = f.sub(m[r * dim_ + k], f.mul(factor, m[c * dim_ + k]));
      }
    }
    return d;
  }

  // Gauss-Jordan inverse; throws DomainMismatch when singular.
  MatrixGF inverse() const {
    const GaloisField& f = *field_;
    int n = dim_;
    std::vector<Code> m = e_;
    MatrixGF out = identity(field_, n);
    std::vector<Code>& r = out.e_;
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int i = c; i < n; ++i)
        if (m[i * n + c]) {
          piv = i;
          break;
        }
      if (piv < 0)
        throw DomainMismatch("singular matrix has no inverse");
      for (int k = 0; k < n; ++k) {
        std::swap(m[piv * n + k], m[c * n + k]);
        std::swap(r[piv * n + k], r[c * n + k]);
      }
      Code pinv = f.inv(m[c * n + c]);
      for (int k = 0; k < n; ++k) {
        m[c * n + k] = f.mul(m[c * n + k], pinv);
        r[c * n + k] = f.mul(r[c * n + k], pinv);
      }
      for (int i = 0; i < n; ++i) {
        if (i == c || !m[i * n + c])
          continue;
        Code factor = m[i * n + c];
        for (int k = 0; k < n; ++k) {
          m[i * n + k] = f.sub(m[i * n + k], f.mul(factor, m[c * n + k]));
          r[i * n + k] = f.sub(r[i * n + k], f.mul(factor, r[c * n + k]));
        }
      }
    }
    return out;
  }

  MatrixGF transpose() const {
    MatrixGF out = *this;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        out.e_[j * dim_ + i] = e_[i * dim_ + j];
    return out;
  }

  // Applies x -> x^p entrywise.
  MatrixGF frobenius() const {
    MatrixGF out = *this;
    for (auto& c : out.e_)
      c = field_->frobenius(c);
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < dim_; ++i) {
      if (i)
        s += ";";
      s += "[";
      for (int j = 0; j < dim_; ++j) {
        if (j)
          s += ",";
        s += field_->to_string(at(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

  friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
    return a.compatible(b) && a.e_ == b.e_;
  }

private:
  FieldPtr field_;
  int dim_ = 0;
  std::vector<Code> e_;
};

} // namespace cpfact

#endif
