#include "tik/tensor.hpp"

#include <numeric>

namespace tik {

Tensor3 Tensor3::from_frontal(const MatrixTuple& slices) {
  require(!slices.empty(), ErrorKind::Dimension, "from_frontal needs at least one slice");
  return from_frontal(slices.front().field(), slices.front().rows(), slices.front().cols(), slices);
}

Tensor3 Tensor3::from_frontal(const Field& f, std::size_t l, std::size_t n, const MatrixTuple& slices) {
  Tensor3 t(f, l, n, slices.size());
  for (std::size_t k = 0; k < slices.size(); ++k) {
    require(slices[k].rows() == l && slices[k].cols() == n && slices[k].p() == f.p(), ErrorKind::Dimension,
            "from_frontal: slice shape");
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j, k) = slices[k](i, j);
  }
  return t;
}

MatrixTuple Tensor3::slices(Direction d) const {
  MatrixTuple out;
  const auto [l, n, m] = d_;
  switch (d) {
    case Direction::Frontal:
      for (std::size_t k = 0; k < m; ++k) {
        Mat s(f_, l, n);
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t j = 0; j < n; ++j) s(i, j) = (*this)(i, j, k);
        out.push_back(std::move(s));
      }
      break;
    case Direction::Lateral:
      for (std::size_t j = 0; j < n; ++j) {
        Mat s(f_, l, m);
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t k = 0; k < m; ++k) s(i, k) = (*this)(i, j, k);
        out.push_back(std::move(s));
      }
      break;
    case Direction::Horizontal:
      for (std::size_t i = 0; i < l; ++i) {
        Mat s(f_, n, m);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < m; ++k) s(j, k) = (*this)(i, j, k);
        out.push_back(std::move(s));
      }
      break;
  }
  return out;
}

Tensor3 Tensor3::permuted(const std::array<int, 3>& order) const {
  Tensor3 out(f_, d_[order[0]], d_[order[1]], d_[order[2]]);
  std::array<std::size_t, 3> idx{};
  for (idx[0] = 0; idx[0] < d_[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < d_[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < d_[2]; ++idx[2])
        out(idx[order[0]], idx[order[1]], idx[order[2]]) = (*this)(idx[0], idx[1], idx[2]);
  return out;
}

bool Tensor3::is_zero() const {
  for (u32 x : a_)
    if (x) return false;
  return true;
}

TensorD::TensorD(const Field& f, std::vector<std::size_t> dims) : f_(f), d_(std::move(dims)) {
  std::size_t total = 1;
  for (auto n : d_) total *= n;
  a_.assign(d_.empty() ? 0 : total, 0);
}

TensorD TensorD::from_tensor3(const Tensor3& t) {
  TensorD out(t.field(), {t.dim(0), t.dim(1), t.dim(2)});
  out.a_ = t.data();
  return out;
}

Tensor3 TensorD::to_tensor3() const {
  require(order() == 3, ErrorKind::Dimension, "to_tensor3 needs order 3");
  Tensor3 t(f_, d_[0], d_[1], d_[2]);
  t.data() = a_;
  return t;
}

std::size_t TensorD::offset(const std::vector<std::size_t>& idx) const {
  require(idx.size() == d_.size(), ErrorKind::Dimension, "tensor index arity");
  std::size_t off = 0;
  for (std::size_t t = 0; t < d_.size(); ++t) off = off * d_[t] + idx[t];
  return off;
}

std::vector<std::size_t> TensorD::index(std::size_t off) const {
  std::vector<std::size_t> idx(d_.size());
  for (std::size_t t = d_.size(); t-- > 0;) {
    idx[t] = off % d_[t];
    off /= d_[t];
  }
  return idx;
}

namespace {

// Generic contraction of direction `dir` of a flat array with shape `dims`.
std::vector<u32> contract(const Field& f, const std::vector<std::size_t>& dims, const std::vector<u32>& a, std::size_t dir,
                          const Mat& x, std::vector<std::size_t>& out_dims) {
  require(x.rows() == dims[dir], ErrorKind::Dimension, "contraction: matrix rows must match direction length");
  require(x.p() == f.p(), ErrorKind::Dimension, "contraction: field mismatch");
  std::size_t outer = 1, inner = 1;
  for (std::size_t t = 0; t < dir; ++t) outer *= dims[t];
  for (std::size_t t = dir + 1; t < dims.size(); ++t) inner *= dims[t];
  const std::size_t n = dims[dir], n2 = x.cols();
  out_dims = dims;
  out_dims[dir] = n2;
  std::vector<u64> acc(outer * n2 * inner, 0);
  const u64 p = f.p();
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < n; ++i) {
      const u32* src = &a[(o * n + i) * inner];
      for (std::size_t i2 = 0; i2 < n2; ++i2) {
        u64 c = x(i, i2);
        if (!c) continue;
        u64* dst = &acc[(o * n2 + i2) * inner];
        for (std::size_t r = 0; r < inner; ++r) dst[r] = (dst[r] + c * src[r]) % p;
      }
    }
  return std::vector<u32>(acc.begin(), acc.end());
}

}  // namespace

Tensor3 mode_product(const Tensor3& t, int direction, const Mat& x) {
  std::vector<std::size_t> dims{t.dim(0), t.dim(1), t.dim(2)}, out_dims;
  auto data = contract(t.field(), dims, t.data(), direction, x, out_dims);
  Tensor3 out(t.field(), out_dims[0], out_dims[1], out_dims[2]);
  out.data() = std::move(data);
  return out;
}

Tensor3 act3(const Tensor3& t, const Mat& x, const Mat& y, const Mat& z) {
  return mode_product(mode_product(mode_product(t, 0, x), 1, y), 2, z);
}

TensorD actd(const TensorD& t, const std::vector<Mat>& mats) {
  require(mats.size() == t.order(), ErrorKind::Dimension, "actd: one matrix per direction");
  std::vector<std::size_t> dims = t.dims(), out_dims;
  std::vector<u32> data = t.data();
  for (std::size_t d = 0; d < mats.size(); ++d) {
    data = contract(t.field(), dims, data, d, mats[d], out_dims);
    dims = out_dims;
  }
  TensorD out(t.field(), dims);
  out.data() = std::move(data);
  return out;
}

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::TI3: return "ti3";
    case Tag::Equivalence: return "equivalence";
    case Tag::Isometry: return "isometry";
    case Tag::PseudoIsometry: return "pseudo-isometry";
    case Tag::Conjugacy: return "conjugacy";
    case Tag::AlgebraIso: return "algebra";
    case Tag::TrilinearEq: return "trilinear";
    case Tag::FormEq: return "form";
    case Tag::MonCodeEq: return "moncode";
    case Tag::GraphIso: return "graph";
    case Tag::TId: return "tid";
  }
  return "?";
}

Tag tag_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Tag::TId); ++i)
    if (s == tag_name(static_cast<Tag>(i))) return static_cast<Tag>(i);
  fail(ErrorKind::Parse, "unknown witness tag '" + s + "'");
}

Witness identity_witness(Tag tag, const Field& f, const std::vector<std::size_t>& sizes) {
  Witness w{tag, {}};
  for (auto n : sizes) w.mats.push_back(Mat::identity(f, n));
  return w;
}

void check_invertible(const Witness& w) {
  for (const auto& m : w.mats) require(invertible(m), ErrorKind::Singular, std::string("witness matrix for ") + tag_name(w.tag));
}

namespace {

// Splits a monomial matrix M into D P with D diagonal and P a permutation matrix.
std::pair<Mat, Mat> split_monomial(const Mat& m) {
  require(is_monomial(m), ErrorKind::Precondition, "expected monomial matrix");
  Mat d(m.field(), m.rows(), m.rows()), p(m.field(), m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) d(i, i) = m(i, j), p(i, j) = 1;
  return {d, p};
}

}  // namespace

Witness compose(const Witness& a, const Witness& b) {
  require(a.tag == b.tag && a.mats.size() == b.mats.size(), ErrorKind::Dimension, "compose: tag mismatch");
  Witness out{a.tag, {}};
  switch (a.tag) {
    case Tag::MonCodeEq: {
      auto [d, p] = split_monomial(a.mats[1] * a.mats[2] * b.mats[1] * b.mats[2]);
      out.mats = {b.mats[0] * a.mats[0], d, p};
      return out;
    }
    case Tag::GraphIso:
      out.mats = {b.mats[0] * a.mats[0]};
      return out;
    default:
      for (std::size_t i = 0; i < a.mats.size(); ++i) out.mats.push_back(a.mats[i] * b.mats[i]);
      return out;
  }
}

Witness invert(const Witness& w) {
  Witness out{w.tag, {}};
  if (w.tag == Tag::MonCodeEq) {
    auto [d, p] = split_monomial(inverse(w.mats[1] * w.mats[2]));
    out.mats = {inverse(w.mats[0]), d, p};
    return out;
  }
  for (const auto& m : w.mats) out.mats.push_back(inverse(m));
  return out;
}

std::array<Mat, 3> ti3_form(const Witness& w) {
  auto need = [&](std::size_t k) {
    require(w.mats.size() == k, ErrorKind::Dimension, std::string("witness arity for ") + tag_name(w.tag));
  };
  switch (w.tag) {
    case Tag::TI3:
    case Tag::Equivalence:
      need(3);
      return {w.mats[0], w.mats[1], w.mats[2]};
    case Tag::Isometry:
    case Tag::PseudoIsometry:
      need(2);
      return {w.mats[0], w.mats[0], w.mats[1]};
    case Tag::Conjugacy:
      need(2);
      return {inverse(w.mats[0]).transpose(), w.mats[0], w.mats[1]};
    case Tag::AlgebraIso:
      need(1);
      return {w.mats[0], w.mats[0], inverse(w.mats[0]).transpose()};
    case Tag::TrilinearEq:
      need(1);
      return {w.mats[0], w.mats[0], w.mats[0]};
    default:
      fail(ErrorKind::Precondition, std::string("tag ") + tag_name(w.tag) + " does not act on 3-way arrays");
  }
}

Tensor3 act(const Tensor3& t, const Witness& w) {
  check_invertible(w);
  auto [x, y, z] = ti3_form(w);
  require(x.rows() == t.dim(0) && y.rows() == t.dim(1) && z.rows() == t.dim(2), ErrorKind::Dimension,
          std::string("witness does not fit tensor for ") + tag_name(w.tag));
  return act3(t, x, y, z);
}

TensorD act(const TensorD& t, const Witness& w) {
  if (w.tag != Tag::TId) return TensorD::from_tensor3(act(t.to_tensor3(), w));
  check_invertible(w);
  return actd(t, w.mats);
}

MatrixTuple act_tuple(const MatrixTuple& t, const Witness& w) {
  require(!t.empty(), ErrorKind::Dimension, "act_tuple on empty tuple");
  return act(Tensor3::from_frontal(t), w).frontal();
}

std::size_t direction_rank(const Tensor3& t, int direction) {
  MatrixTuple s = t.slices(direction == 0 ? Direction::Horizontal : direction == 1 ? Direction::Lateral : Direction::Frontal);
  return span_dim(s);
}

bool is_nondegenerate(const Tensor3& t) {
  return direction_rank(t, 0) == t.dim(0) && direction_rank(t, 1) == t.dim(1) && direction_rank(t, 2) == t.dim(2);
}

Core nondegenerate_core(const Tensor3& t) {
  const Field f = t.field();
  Core c;
  c.t = t;
  for (int d = 0; d < 3; ++d) {
    const std::size_t len = c.t.dim(d);
    MatrixTuple s = c.t.slices(d == 0 ? Direction::Horizontal : d == 1 ? Direction::Lateral : Direction::Frontal);
    const std::size_t rows = s.empty() ? 0 : s.front().rows(), cols = s.empty() ? 0 : s.front().cols();
    Span sp(f, rows * cols);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < len; ++i)
      if (sp.add(flatten(s[i]))) keep.push_back(i);
    Mat sel(f, len, keep.size()), exp(f, keep.size(), len);
    for (std::size_t t2 = 0; t2 < keep.size(); ++t2) sel(keep[t2], t2) = 1;
    for (std::size_t i = 0; i < len; ++i) {
      auto co = sp.coords(flatten(s[i]));
      for (std::size_t t2 = 0; t2 < keep.size(); ++t2) exp(t2, i) = (*co)[t2];
    }
    c.t = mode_product(c.t, d, sel);
    c.select[d] = sel;
    c.expand[d] = exp;
  }
  if (c.t.size() == 0) {
    // A tensor with an empty direction is the zero tensor; report it as 0x0x0.
    for (int d = 0; d < 3; ++d) {
      c.select[d] = Mat(f, t.dim(d), 0);
      c.expand[d] = Mat(f, 0, t.dim(d));
    }
    c.t = Tensor3(f, 0, 0, 0);
  }
  return c;
}

TensorD pad_to(const TensorD& t, std::size_t order) {
  require(order >= t.order(), ErrorKind::Precondition, "pad_to: target order below source order");
  std::vector<std::size_t> dims = t.dims();
  dims.resize(order, 1);
  TensorD out(t.field(), dims);
  out.data() = t.data();
  return out;
}

Witness pad_witness_forward(const Witness& w, std::size_t order) {
  require(w.tag == Tag::TId && order >= w.mats.size(), ErrorKind::Precondition, "pad witness: expects a TId witness");
  Witness out = w;
  const Field f = w.mats.front().field();
  while (out.mats.size() < order) out.mats.push_back(Mat::identity(f, 1));
  return out;
}

Witness pad_witness_recover(const Witness& w, std::size_t original_order) {
  require(w.tag == Tag::TId && w.mats.size() >= original_order && original_order >= 1, ErrorKind::Precondition,
          "pad recover: expects a TId witness of the padded order");
  const Field f = w.mats.front().field();
  u32 scalar = 1;
  for (std::size_t t = original_order; t < w.mats.size(); ++t) {
    require(w.mats[t].rows() == 1 && w.mats[t].cols() == 1, ErrorKind::WitnessInvalid, "padding factor is not 1x1");
    scalar = f.mul(scalar, w.mats[t](0, 0));
  }
  Witness out{Tag::TId, {w.mats.begin(), w.mats.begin() + original_order}};
  out.mats[0] = out.mats[0].scaled(scalar);
  return out;
}

}  // namespace tik
