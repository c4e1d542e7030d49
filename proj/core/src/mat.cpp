#include "tik/mat.hpp"

#include <algorithm>
#include <sstream>

namespace tik {

namespace {

void check_same(const Mat& a, const Mat& b, const char* op) {
  require(a.p() == b.p(), ErrorKind::Dimension, std::string(op) + ": field mismatch");
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::Dimension, std::string(op) + ": shape mismatch");
}

}  // namespace

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % f.p();
  return m;
}

Mat Mat::from_ints(const Field& f, std::size_t rows, std::size_t cols, const std::vector<long long>& v) {
  require(v.size() == rows * cols, ErrorKind::Dimension, "from_ints: entry count");
  Mat m(f, rows, cols);
  for (std::size_t i = 0; i < v.size(); ++i) m.a_[i] = f.reduce(v[i]);
  return m;
}

Mat Mat::column(const Field& f, const Vec& v) {
  Mat m(f, v.size(), 1);
  m.a_ = v;
  return m;
}

bool Mat::operator<(const Mat& o) const {
  if (r_ != o.r_) return r_ < o.r_;
  if (c_ != o.c_) return c_ < o.c_;
  return a_ < o.a_;
}

Mat Mat::operator*(const Mat& o) const {
  require(p() == o.p(), ErrorKind::Dimension, "mul: field mismatch");
  require(c_ == o.r_, ErrorKind::Dimension, "mul: inner dimension");
  Mat out(f_, r_, o.c_);
  const u64 p = f_.p();
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t k = 0; k < c_; ++k) {
      u64 a = a_[i * c_ + k];
      if (!a) continue;
      const u32* orow = &o.a_[k * o.c_];
      u32* dst = &out.a_[i * o.c_];
      for (std::size_t j = 0; j < o.c_; ++j) dst[j] = static_cast<u32>((dst[j] + a * orow[j]) % p);
    }
  }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  check_same(*this, o, "add");
  Mat out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_.add(a_[i], o.a_[i]);
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  check_same(*this, o, "sub");
  Mat out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_.sub(a_[i], o.a_[i]);
  return out;
}

Mat Mat::operator-() const {
  Mat out = *this;
  for (auto& x : out.a_) x = f_.neg(x);
  return out;
}

Mat Mat::scaled(u32 s) const {
  Mat out = *this;
  for (auto& x : out.a_) x = f_.mul(x, s);
  return out;
}

Mat Mat::transpose() const {
  Mat out(f_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out.a_[j * r_ + i] = a_[i * c_ + j];
  return out;
}

Vec Mat::apply(const Vec& v) const {
  require(v.size() == c_, ErrorKind::Dimension, "apply: vector length");
  Vec out(r_, 0);
  const u64 p = f_.p();
  for (std::size_t i = 0; i < r_; ++i) {
    u64 s = 0;
    for (std::size_t j = 0; j < c_; ++j) s += static_cast<u64>(a_[i * c_ + j]) * v[j];
    out[i] = static_cast<u32>(s % p);
  }
  return out;
}

Vec Mat::row(std::size_t i) const { return Vec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

Vec Mat::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = a_[i * c_ + j];
  return v;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](u32 x) { return x == 0; });
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= r_ && c0 + nc <= c_, ErrorKind::Dimension, "block out of range");
  Mat out(f_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  require(r0 + b.r_ <= r_ && c0 + b.c_ <= c_, ErrorKind::Dimension, "set_block out of range");
  for (std::size_t i = 0; i < b.r_; ++i)
    for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string Mat::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

Mat block_diag(const std::vector<Mat>& blocks) {
  require(!blocks.empty(), ErrorKind::Dimension, "block_diag of nothing");
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Mat out(blocks.front().field(), r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
  return out;
}

Mat mat_pow(const Mat& m, u64 e) {
  Mat acc = Mat::identity(m.field(), m.rows()), base = m;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Rref rref(Mat m) {
  const Field f = m.field();
  Rref out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    u32 inv = f.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      u32 c = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

std::size_t rank(const Mat& m) {
  // Forward elimination only; cheaper than the full reduced form.
  Mat a = m;
  const Field f = a.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    u32 inv = f.inv(a(row, col));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      u32 c = f.mul(a(i, col), inv);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(c, a(row, j)));
    }
    ++row;
  }
  return row;
}

u32 det(const Mat& m) {
  require(m.square(), ErrorKind::Dimension, "det of non-square matrix");
  Mat a = m;
  const Field f = a.field();
  u32 d = 1 % f.p();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(piv, j), a(col, j));
      d = f.neg(d);
    }
    d = f.mul(d, a(col, col));
    u32 inv = f.inv(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      u32 c = f.mul(a(i, col), inv);
      for (std::size_t j = col; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(c, a(col, j)));
    }
  }
  return d;
}

std::optional<Mat> try_inverse(const Mat& m) {
  require(m.square(), ErrorKind::Dimension, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(m.field(), n));
  Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.m.block(0, n, n, n);
}

Mat inverse(const Mat& m) {
  auto inv = try_inverse(m);
  require(inv.has_value(), ErrorKind::Singular, "matrix has no inverse");
  return *inv;
}

bool invertible(const Mat& m) { return m.square() && rank(m) == m.rows(); }

Mat right_kernel(const Mat& m) {
  Rref r = rref(m);
  const Field f = m.field();
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : r.pivots) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat k(f, m.cols(), free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    k(free[t], t) = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], t) = f.neg(r.m(i, free[t]));
  }
  return k;
}

Mat left_kernel(const Mat& m) { return right_kernel(m.transpose()).transpose(); }

Solution solve(const Mat& m, const Mat& rhs) {
  require(m.rows() == rhs.rows(), ErrorKind::Dimension, "solve: row count");
  const Field f = m.field();
  const std::size_t n = m.cols(), k = rhs.cols();
  Mat aug(f, m.rows(), n + k);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, rhs);
  Rref r = rref(aug);
  Solution s;
  for (auto c : r.pivots)
    if (c >= n) return s;
  s.consistent = true;
  s.particular = Mat(f, n, k);
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) s.particular(r.pivots[i], j) = r.m(i, n + j);
  s.nullspace = right_kernel(m);
  return s;
}

bool is_monomial(const Mat& m) {
  if (!m.square()) return false;
  std::vector<int> row_hits(m.rows(), 0), col_hits(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) ++row_hits[i], ++col_hits[j];
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (row_hits[i] != 1 || col_hits[i] != 1) return false;
  return true;
}

bool is_permutation(const Mat& m) {
  if (!is_monomial(m)) return false;
  for (u32 x : m.data())
    if (x > 1) return false;
  return true;
}

bool is_diagonal(const Mat& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j)) return false;
  return true;
}

bool is_alternating(const Mat& m) {
  if (!m.square()) return false;
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i)) return false;
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != f.neg(m(j, i))) return false;
  }
  return true;
}

bool is_symmetric(const Mat& m) { return m.square() && m == m.transpose(); }

bool is_upper_unitriangular(const Mat& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 1) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j)) return false;
  }
  return true;
}

Mat MonomialMatrix::expand(const Field& f) const {
  Mat m(f, perm.size(), perm.size());
  for (std::size_t c = 0; c < perm.size(); ++c) m(perm[c], c) = scale[c];
  return m;
}

MonomialMatrix MonomialMatrix::from_mat(const Mat& m) {
  require(is_monomial(m), ErrorKind::Precondition, "matrix is not monomial");
  MonomialMatrix out;
  out.perm.resize(m.cols());
  out.scale.resize(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, c)) out.perm[c] = r, out.scale[c] = m(r, c);
  return out;
}

Mat unit_matrix(const Field& f, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  Mat m(f, rows, cols);
  m(i, j) = 1;
  return m;
}

bool Span::add(const Vec& v) {
  require(v.size() == n_, ErrorKind::Dimension, "span: vector length");
  Vec r = v;
  Vec comb(gens_.size() + 1, 0);
  comb.back() = 1;
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    u32 c = r[piv_[t]];
    if (!c) continue;
    for (std::size_t j = 0; j < n_; ++j) r[j] = f_.sub(r[j], f_.mul(c, rows_[t][j]));
    for (std::size_t g = 0; g < comb_[t].size(); ++g) comb[g] = f_.sub(comb[g], f_.mul(c, comb_[t][g]));
  }
  std::size_t piv = 0;
  while (piv < n_ && r[piv] == 0) ++piv;
  if (piv == n_) return false;
  u32 inv = f_.inv(r[piv]);
  for (auto& x : r) x = f_.mul(x, inv);
  for (auto& x : comb) x = f_.mul(x, inv);
  for (auto& c : comb_) c.push_back(0);
  rows_.push_back(std::move(r));
  piv_.push_back(piv);
  comb_.push_back(std::move(comb));
  gens_.push_back(v);
  return true;
}

Vec Span::residual(Vec v) const {
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    u32 c = v[piv_[t]];
    if (!c) continue;
    for (std::size_t j = 0; j < n_; ++j) v[j] = f_.sub(v[j], f_.mul(c, rows_[t][j]));
  }
  return v;
}

bool Span::contains(const Vec& v) const {
  require(v.size() == n_, ErrorKind::Dimension, "span: vector length");
  Vec r = residual(v);
  return std::all_of(r.begin(), r.end(), [](u32 x) { return x == 0; });
}

std::optional<Vec> Span::coords(const Vec& v) const {
  require(v.size() == n_, ErrorKind::Dimension, "span: vector length");
  Vec r = v;
  Vec out(gens_.size(), 0);
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    u32 c = r[piv_[t]];
    if (!c) continue;
    for (std::size_t j = 0; j < n_; ++j) r[j] = f_.sub(r[j], f_.mul(c, rows_[t][j]));
    for (std::size_t g = 0; g < comb_[t].size(); ++g) out[g] = f_.add(out[g], f_.mul(c, comb_[t][g]));
  }
  for (u32 x : r)
    if (x) return std::nullopt;
  return out;
}

Vec flatten(const Mat& m) { return m.data(); }

Mat unflatten(const Field& f, std::size_t rows, std::size_t cols, const Vec& v) {
  require(v.size() == rows * cols, ErrorKind::Dimension, "unflatten: length");
  Mat m(f, rows, cols);
  m.data() = v;
  return m;
}

u64 vec_index(const Vec& v, u32 p) {
  u64 idx = 0;
  for (u32 x : v) idx = idx * p + x;
  return idx;
}

Vec vec_from_index(u64 idx, std::size_t n, u32 p) {
  Vec v(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<u32>(idx % p);
    idx /= p;
  }
  return v;
}

}  // namespace tik
