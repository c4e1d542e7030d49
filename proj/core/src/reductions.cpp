#include "tik/reductions.hpp"

#include <map>

namespace tik {

namespace {

Mat elementary_pair(const Field& f, std::size_t side, std::size_t i, std::size_t j, bool symmetric) {
  Mat m(f, side, side);
  m(i, j) = 1;
  m(j, i) = symmetric ? 1 : f.neg(1);
  return m;
}

Tensor3 as_tensor(const Field& f, std::size_t side, const MatrixTuple& t) { return Tensor3::from_frontal(f, side, side, t); }

template <class T>
const T& get(const Instance& x, const std::string& who) {
  const T* p = std::get_if<T>(&x);
  require(p != nullptr, ErrorKind::Dimension, who + ": unexpected instance type");
  return *p;
}

MatrixTuple sandwich(const MatrixTuple& t, const Mat& left_t, const Mat& right) {
  MatrixTuple out;
  for (const auto& s : t) out.push_back(left_t * s * right);
  return out;
}

Mat mixing_or_identity(const MatrixTuple& source, const MatrixTuple& target, const Field& f) {
  if (auto r = solve_mixing(source, target, default_budget())) return *r;
  return Mat::identity(f, source.size());
}

Mat exact_mixing(const MatrixTuple& source, const MatrixTuple& target, const std::string& who, ErrorKind kind) {
  auto r = solve_mixing(source, target, default_budget());
  if (!r) fail(kind, who + ": no invertible slice mixing matches");
  return *r;
}

void require_nondegenerate(const Tensor3& t, const std::string& who) {
  require(is_nondegenerate(t), ErrorKind::Precondition, who + ": input is degenerate; apply nondegenerate_core first");
}

// Single-arrow and path products share this helper: cols of m are vectors in F^n.
Mat columns_to_mat(const Field& f, const std::vector<Vec>& cols, std::size_t n) {
  Mat m(f, n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) m(i, c) = cols[c][i];
  return m;
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Vec axpy(const Field& f, const Vec& x, u32 a, const Vec& y) {
  Vec out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], f.mul(a, y[i]));
  return out;
}

// ---- moncode ----

Witness moncode_forward(const Witness& w) {
  require(w.mats.size() == 3, ErrorKind::Dimension, "moncode witness arity");
  const Mat &q = w.mats[0], &d = w.mats[1], &p = w.mats[2];
  const Field& f = q.field();
  const Mat m = d * p;
  const Mat x = block_diag({q.transpose(), kron(inverse(m), Mat::identity(f, 2)).transpose()});
  const Mat z = block_diag({Mat::identity(f, 1), kron(p, Mat::identity(f, 2))});
  return {Tag::TI3, {x, m, z}};
}

Witness moncode_recover(const Mat& a, const Mat& b, const Witness& w) {
  require(w.mats.size() == 3, ErrorKind::Dimension, "3-tensor witness arity");
  const Mat& y = w.mats[1];
  // Lateral slices have rank 2 or 3 and combinations of two or more have rank >= 4,
  // so any isomorphism mixes lateral slices monomially.
  if (!is_monomial(y)) fail(ErrorKind::WitnessInvalid, "moncode-to-3ti: lateral transform is not monomial");
  const Field& f = a.field();
  Mat dpart(f, y.rows(), y.rows()), ppart(f, y.rows(), y.rows());
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      if (y(i, j)) dpart(i, i) = y(i, j), ppart(i, j) = 1;
  const Mat x = a * y;
  Solution s = solve(x.transpose(), b.transpose());
  if (!s.consistent) fail(ErrorKind::WitnessInvalid, "moncode-to-3ti: no row transform matches");
  return {Tag::MonCodeEq, {s.particular.transpose(), dpart, ppart}};
}

// ---- graphs and the monomial gadget ----

Witness graph_forward(const Graph& g, const Graph& h, const Witness& w, const Field& f) {
  require(w.mats.size() == 1, ErrorKind::Dimension, "graph witness arity");
  const auto perm = perm_from_matrix(w.mats[0]);
  // P^t A_{uv} P = A_{s^-1(u), s^-1(v)} for the permutation matrix of s, so s is the inverse.
  const Mat p = permutation_matrix(f, perm).transpose();
  const MatrixTuple ta = graph_to_altspace(g, f), tb = graph_to_altspace(h, f);
  if (ta.empty()) return {Tag::Isometry, {p, Mat(f, 0, 0)}};
  return {Tag::Isometry, {p, mixing_or_identity(sandwich(ta, p.transpose(), p), tb, f)}};
}

Witness graph_recover(const Witness& w) {
  require(w.mats.size() == 2, ErrorKind::Dimension, "isometry witness arity");
  const Mat& p = w.mats[0];
  if (!is_monomial(p)) fail(ErrorKind::WitnessInvalid, "graph-to-altspace: isometry is not monomial");
  const Field bin = Field::trusted(2);
  Mat out(bin, p.rows(), p.cols());
  for (std::size_t r = 0; r < p.rows(); ++r)
    for (std::size_t c = 0; c < p.cols(); ++c)
      if (p(r, c)) out(c, r) = 1;
  return {Tag::GraphIso, {out}};
}

Witness gadget_forward(const MatrixTuple& a, const MatrixTuple& b, const Witness& w) {
  require(w.mats.size() == 2, ErrorKind::Dimension, "isometry witness arity");
  const Mat& mon = w.mats[0];
  require(is_monomial(mon), ErrorKind::Precondition, "monomial-gadget: source isometry must be monomial");
  const Field& f = mon.field();
  const std::size_t n = mon.rows();
  const auto mm = MonomialMatrix::from_mat(mon);
  // Column c of the monomial part sends e_c to alpha_c e_{sigma(c)}; the gadget block moves
  // column (c, j) to (sigma(c), j) and the gadget slices are rescaled by 1/alpha.
  Mat spread(f, n * n, n * n), rescale(f, n * n, n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t j = 0; j < n; ++j) {
      spread(mm.perm[c] * n + j, c * n + j) = 1;
      rescale(mm.perm[c] * n + j, c * n + j) = f.inv(mm.scale[c]);
    }
  const Mat top = a.empty() ? Mat(f, 0, 0) : mixing_or_identity(sandwich(a, mon.transpose(), mon), b, f);
  return {Tag::Isometry, {block_diag({mon, spread}), block_diag({top, rescale})}};
}

Witness gadget_recover(const MatrixTuple& a, const MatrixTuple& b, std::size_t n, const Witness& w) {
  require(w.mats.size() == 2, ErrorKind::Dimension, "isometry witness arity");
  const Mat top = w.mats[0].block(0, 0, n, n);
  if (!is_monomial(top)) fail(ErrorKind::WitnessInvalid, "monomial-gadget: leading block is not monomial");
  const Field& f = top.field();
  const Mat r = a.empty() ? Mat(f, 0, 0) : mixing_or_identity(sandwich(a, top.transpose(), top), b, f);
  return {Tag::Isometry, {top, r}};
}

// ---- 3-tensor to matrix spaces ----

MatrixTuple alt_like(const Tensor3& input, bool symmetric) {
  const char* who = symmetric ? "3ti-to-sym-isometry" : "3ti-to-alt-isometry";
  require_nondegenerate(input, who);
  const Tensor3 t = input.dim(0) > input.dim(1) ? input.permuted({1, 0, 2}) : input;
  const Field& f = t.field();
  const AltGadgetLayout lay{t.dim(0), t.dim(1), t.dim(2)};
  const std::size_t side = lay.side(), l = lay.l, n = lay.n;
  MatrixTuple out;
  for (std::size_t k = 0; k < lay.m; ++k) {
    Mat s(f, side, side);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        s(i, l + j) = t(i, j, k);
        s(l + j, i) = symmetric ? t(i, j, k) : f.neg(t(i, j, k));
      }
    out.push_back(std::move(s));
  }
  for (std::size_t row = 0; row < l; ++row)
    for (std::size_t q = 0; q < 2 * n + 1; ++q) out.push_back(elementary_pair(f, side, row, lay.e_col(q), symmetric));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t q = 0; q < 4 * n + 2; ++q) out.push_back(elementary_pair(f, side, l + row, lay.f_col(q), symmetric));
  return out;
}

Witness alt_forward(const Tensor3& a, const Tensor3& b, const Witness& w, bool symmetric) {
  require(w.mats.size() == 3, ErrorKind::Dimension, "3-tensor witness arity");
  const bool swap = a.dim(0) > a.dim(1);
  const Mat& x = swap ? w.mats[1] : w.mats[0];
  const Mat& y = swap ? w.mats[0] : w.mats[1];
  const Field& f = a.field();
  const std::size_t n = swap ? a.dim(0) : a.dim(1);
  const Mat p = block_diag({x, y, Mat::identity(f, 6 * n + 3)});
  const MatrixTuple ta = alt_like(a, symmetric), tb = alt_like(b, symmetric);
  return {Tag::Isometry, {p, exact_mixing(sandwich(ta, p.transpose(), p), tb, "3ti-to-alt-isometry forward",
                                          ErrorKind::Precondition)}};
}

Witness alt_recover(const Tensor3& a, const Tensor3& b, const Witness& w) {
  require(w.mats.size() == 2, ErrorKind::Dimension, "isometry witness arity");
  const bool swap = a.dim(0) > a.dim(1);
  const Tensor3 ta = swap ? a.permuted({1, 0, 2}) : a, tb = swap ? b.permuted({1, 0, 2}) : b;
  const std::size_t l = ta.dim(0), n = ta.dim(1);
  const Mat x = w.mats[0].block(0, 0, l, l), y = w.mats[0].block(l, l, n, n);
  if (!invertible(x) || !invertible(y)) fail(ErrorKind::WitnessInvalid, "3ti-to-alt-isometry: diagonal blocks singular");
  const Mat z = exact_mixing(sandwich(ta.frontal(), x.transpose(), y), tb.frontal(), "3ti-to-alt-isometry recover",
                             ErrorKind::WitnessInvalid);
  if (swap) return {Tag::TI3, {y, x, z}};
  return {Tag::TI3, {x, y, z}};
}

Witness conj_forward(const Tensor3& a, const Witness& w, bool with_unit) {
  require(w.mats.size() == 3, ErrorKind::Dimension, "3-tensor witness arity");
  (void)a;
  const Field& f = w.mats[0].field();
  const Mat p = block_diag({inverse(w.mats[0]).transpose(), w.mats[1]});
  const Mat r = with_unit ? block_diag({w.mats[2], Mat::identity(f, 1)}) : w.mats[2];
  return {Tag::Conjugacy, {p, r}};
}

Witness conj_recover(const Tensor3& a, const Tensor3& b, const Witness& w) {
  require(w.mats.size() == 2, ErrorKind::Dimension, "conjugacy witness arity");
  const std::size_t l = a.dim(0), n = a.dim(1);
  const auto p11 = try_inverse(w.mats[0].block(0, 0, l, l));
  const Mat y = w.mats[0].block(l, l, n, n);
  if (!p11 || !invertible(y)) fail(ErrorKind::WitnessInvalid, "3ti-to-conjugacy: diagonal blocks singular");
  const Mat x = p11->transpose();
  const Mat z = exact_mixing(sandwich(a.frontal(), x.transpose(), y), b.frontal(), "3ti-to-conjugacy recover",
                             ErrorKind::WitnessInvalid);
  return {Tag::TI3, {x, y, z}};
}

// ---- algebras ----

Witness algebra_recover(std::size_t n, std::size_t m, const Witness& w) {
  const Mat& p = w.mats.at(0);
  // Images of the y-basis must stay inside the square of the algebra, span(y).
  if (!p.block(0, n, n, m).is_zero()) fail(ErrorKind::WitnessInvalid, "isometry-to-algebra: square not preserved");
  const auto r = try_inverse(p.block(n, n, m, m));
  if (!r) fail(ErrorKind::WitnessInvalid, "isometry-to-algebra: singular block");
  return {Tag::PseudoIsometry, {p.block(0, 0, n, n), r->transpose()}};
}

Witness trilinear_recover(std::size_t n, std::size_t m, const Witness& w) {
  const Mat& p = w.mats.at(0);
  if (!p.block(n, 0, m, n).is_zero()) fail(ErrorKind::WitnessInvalid, "isometry-to-trilinear: block not triangular");
  return {Tag::PseudoIsometry, {p.block(0, 0, n, n), p.block(n, n, m, m)}};
}

// ---- path algebra ----

Witness dti_forward(const TensorD& a, const Witness& w) {
  const DtiAlgebra alg = dti_to_algebra(a);
  const std::size_t d = alg.order(), dim = alg.algebra.dim();
  require(w.mats.size() == d, ErrorKind::Dimension, "d-tensor witness arity");
  const Field& f = a.field();
  const Mat top = inverse(w.mats[d - 1]).transpose();
  auto arrow_image = [&](std::size_t k, std::size_t col) {
    Vec v(dim, 0);
    for (std::size_t r = 0; r < alg.dims[k]; ++r) v[alg.arrow_index(k, r)] = w.mats[k](r, col);
    return v;
  };
  std::vector<Vec> cols;
  for (std::size_t u = 0; u < d; ++u) cols.push_back(unit_vec(dim, u));
  for (const auto& path : alg.paths) {
    Vec v = arrow_image(path.start, path.arrows[0]);
    for (std::size_t s = 1; s < path.arrows.size(); ++s)
      v = alg.algebra.mul(v, arrow_image(path.start + s, path.arrows[s]));
    cols.push_back(v);
  }
  for (std::size_t c = 0; c < alg.dims[d - 1]; ++c) {
    Vec v(dim, 0);
    for (std::size_t r = 0; r < alg.dims[d - 1]; ++r) v[alg.top_index(r)] = top(r, c);
    cols.push_back(v);
  }
  return {Tag::AlgebraIso, {columns_to_mat(f, cols, dim)}};
}

Witness dti_recover(const TensorD& a, const Witness& w) {
  const DtiAlgebra alg = dti_to_algebra(a);
  const AlgebraSC& A = alg.algebra;
  const std::size_t d = alg.order(), dim = A.dim();
  const Field& f = a.field();
  require(w.mats.size() == 1 && w.mats[0].rows() == dim, ErrorKind::Dimension, "algebra witness shape");
  const Mat& phi = w.mats[0];

  // Idempotents map to idempotents modulo the radical; read the permutation off.
  std::vector<std::size_t> perm(d);
  for (std::size_t u = 0; u < d; ++u) {
    std::size_t hits = 0;
    for (std::size_t v = 0; v < d; ++v) {
      if (phi(v, u) == 0) continue;
      if (phi(v, u) != 1) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: idempotent image is not primitive");
      perm[u] = v;
      ++hits;
    }
    if (hits != 1) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: idempotent image is not primitive");
  }
  const Graph quiver = grigoriev_reconstruct(A, d);
  if (act_graph(quiver, perm) != quiver) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: idempotents not a quiver automorphism");
  for (std::size_t u = 0; u < d; ++u)
    if (perm[u] != u) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: idempotent permutation is not the identity");

  // Find r in the radical with (1 + r) phi(e_u) = e_u (1 + r) for every u.
  const std::size_t rad = dim - d;
  Mat sys(f, d * dim, rad), rhs(f, d * dim, 1);
  for (std::size_t u = 0; u < d; ++u) {
    const Vec img = phi.col(u), e = unit_vec(dim, u);
    for (std::size_t t = 0; t < rad; ++t) {
      const Vec basis = unit_vec(dim, d + t);
      const Vec lhs = axpy(f, A.mul(basis, img), f.neg(1), A.mul(e, basis));
      for (std::size_t i = 0; i < dim; ++i) sys(u * dim + i, t) = lhs[i];
    }
    for (std::size_t i = 0; i < dim; ++i) rhs(u * dim + i, 0) = f.sub(e[i], img[i]);
  }
  Solution s = solve(sys, rhs);
  if (!s.consistent) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: idempotents cannot be aligned");
  Vec r(dim, 0), one(dim, 0);
  for (std::size_t t = 0; t < rad; ++t) r[d + t] = s.particular(t, 0);
  for (std::size_t u = 0; u < d; ++u) one[u] = 1;
  const Vec g = axpy(f, one, 1, r);
  // (1 + r)^-1 = sum (-r)^k; r is nilpotent.
  Vec ginv = one, term = one;
  Vec neg_r = r;
  for (auto& x : neg_r) x = f.neg(x);
  for (std::size_t k = 0; k < dim; ++k) {
    term = A.mul(term, neg_r);
    ginv = axpy(f, ginv, 1, term);
  }
  if (A.mul(g, ginv) != one) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: radical element not nilpotent");
  auto conj = [&](const Vec& v) { return A.mul(A.mul(g, v), ginv); };

  Witness out{Tag::TId, {}};
  for (std::size_t k = 0; k + 1 < d; ++k) {
    Mat m(f, alg.dims[k], alg.dims[k]);
    for (std::size_t c = 0; c < alg.dims[k]; ++c) {
      const Vec img = conj(phi.col(alg.arrow_index(k, c)));
      for (std::size_t r2 = 0; r2 < alg.dims[k]; ++r2) m(r2, c) = img[alg.arrow_index(k, r2)];
    }
    out.mats.push_back(m);
  }
  Mat top(f, alg.dims[d - 1], alg.dims[d - 1]);
  for (std::size_t c = 0; c < alg.dims[d - 1]; ++c) {
    const Vec img = conj(phi.col(alg.top_index(c)));
    for (std::size_t r2 = 0; r2 < alg.dims[d - 1]; ++r2) top(r2, c) = img[alg.top_index(r2)];
  }
  const auto top_inv = try_inverse(top);
  if (!top_inv) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: top block singular");
  out.mats.push_back(top_inv->transpose());
  for (const auto& m : out.mats)
    if (!invertible(m)) fail(ErrorKind::WitnessInvalid, "dti-to-algebra: arrow block singular");
  return out;
}

Witness grigoriev_forward(const Graph& g, const Graph& h, const Witness& w, const Field& f) {
  require(w.mats.size() == 1, ErrorKind::Dimension, "graph witness arity");
  const auto perm = perm_from_matrix(w.mats[0]);
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  const std::size_t n = g.n, dim = n + g.edges.size();
  require(h.n == n && h.edges.size() == g.edges.size(), ErrorKind::Dimension, "grigoriev: graph sizes differ");
  Mat p(f, dim, dim);
  for (std::size_t v = 0; v < n; ++v) p(inv[v], v) = 1;
  // The k-th occurrence of an edge of h pairs with the k-th occurrence of its preimage in g.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pool;
  for (std::size_t t = 0; t < g.edges.size(); ++t) pool[g.edges[t]].push_back(t);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> used;
  for (std::size_t t = 0; t < h.edges.size(); ++t) {
    const auto [u, v] = h.edges[t];
    const std::pair<std::size_t, std::size_t> pre{inv[u], inv[v]};
    auto& list = pool[pre];
    std::size_t& k = used[pre];
    require(k < list.size(), ErrorKind::Precondition, "grigoriev: witness does not map the edge multiset");
    p(n + list[k++], n + t) = 1;
  }
  return {Tag::AlgebraIso, {p}};
}

Witness grigoriev_recover(std::size_t n, const Witness& w) {
  const Mat& p = w.mats.at(0);
  std::vector<std::size_t> perm(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t hits = 0;
    for (std::size_t u = 0; u < n; ++u)
      if (p(u, v)) {
        if (p(u, v) != 1) fail(ErrorKind::WitnessInvalid, "grigoriev: idempotent image is not primitive");
        perm[u] = v;
        ++hits;
      }
    if (hits != 1) fail(ErrorKind::WitnessInvalid, "grigoriev: idempotent image is not primitive");
  }
  return {Tag::GraphIso, {permutation_matrix(Field::trusted(2), perm)}};
}

Mat repair_singular(const Mat& p, const Mat& invariant) {
  const Field& f = p.field();
  const std::size_t n = p.rows();
  const Mat ker = right_kernel(p);
  Span ks(f, n);
  for (std::size_t c = 0; c < ker.cols(); ++c) ks.add(ker.col(c));
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < n && basis.size() + ker.cols() < n; ++i) {
    Vec e = unit_vec(n, i);
    if (ks.add(e)) basis.push_back(e);
  }
  std::vector<Vec> images;
  Span im(f, n);
  for (const auto& v : basis) {
    images.push_back(p.apply(v));
    im.add(images.back());
  }
  for (std::size_t c = 0; c < ker.cols(); ++c) basis.push_back(ker.col(c));
  for (std::size_t c = 0; c < invariant.cols() && images.size() < n; ++c)
    if (im.add(invariant.col(c))) images.push_back(invariant.col(c));
  if (images.size() < n) fail(ErrorKind::RecoveryUnsupported, "cubic-to-degree-d: singular transform cannot be completed");
  return columns_to_mat(f, images, n) * inverse(columns_to_mat(f, basis, n));
}

// ---- samplers ----

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

Tensor3 random_tensor(const Field& f, std::size_t l, std::size_t n, std::size_t m, Rng& rng) {
  Tensor3 t(f, l, n, m);
  for (auto& x : t.data()) x = rng.elem(f);
  return t;
}

Tensor3 random_nondegenerate(const Field& f, Rng& rng) {
  for (;;) {
    const std::size_t l = pick(rng, 1, 3), n = pick(rng, 1, 3), m = pick(rng, 1, 3);
    if (l > n * m || n > l * m || m > l * n) continue;
    for (int attempt = 0; attempt < 50; ++attempt) {
      Tensor3 t = random_tensor(f, l, n, m, rng);
      if (is_nondegenerate(t)) return t;
    }
  }
}

MatrixTuple random_independent(const Field& f, std::size_t n, std::size_t m, Rng& rng) {
  for (;;) {
    MatrixTuple t;
    for (std::size_t k = 0; k < m; ++k) t.push_back(random_mat(f, n, n, rng));
    if (span_dim(t) == m) return t;
  }
}

Witness random_gl_tuple(Tag tag, const Field& f, const std::vector<std::size_t>& sizes, Rng& rng) {
  Witness w{tag, {}};
  for (auto s : sizes) w.mats.push_back(sample_gl(f, s, rng));
  return w;
}

SourcePair ti3_sample(u32 p, Rng& rng) {
  const Field f(p);
  Tensor3 a = random_nondegenerate(f, rng);
  Witness w = random_gl_tuple(Tag::TI3, f, {a.dim(0), a.dim(1), a.dim(2)}, rng);
  Tensor3 b = act(a, w);
  return {a, b, w, {p, 4}};
}

SourcePair pseudo_sample(u32 p, Rng& rng) {
  const Field f(p);
  const std::size_t n = pick(rng, 1, 3), m = pick(rng, 1, std::min<std::size_t>(3, n * n));
  Tensor3 a = Tensor3::from_frontal(f, n, n, random_independent(f, n, m, rng));
  Witness w = random_gl_tuple(Tag::PseudoIsometry, f, {n, m}, rng);
  Tensor3 b = act(a, w);
  return {a, b, w, {p, 4}};
}

Graph random_simple_graph(std::size_t n, Rng& rng) {
  for (;;) {
    Graph g;
    g.n = n;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng.below(2)) g.edges.push_back({u, v});
    if (!g.edges.empty()) return g;
  }
}

// ---- registry wrappers ----

using Forward = std::function<Witness(const Instance&, const Instance&, const Witness&, const ReductionParams&)>;

Forward checked_recover(std::string name, Problem source, Forward impl) {
  return [name, source, impl](const Instance& a, const Instance& b, const Witness& w, const ReductionParams& prm) {
    Witness out = impl(a, b, w, prm);
    if (!verify_witness(source, a, b, out)) fail(ErrorKind::WitnessInvalid, name + ": recovered witness does not verify");
    return out;
  };
}

std::vector<Reduction> build_registry() {
  std::vector<Reduction> r;

  r.push_back({"moncode-to-3ti", Problem::MonCodeEq, Problem::TI3, "(d, n) -> (d+2n) x n x (1+2n)",
               [](const Instance& a, const ReductionParams&) -> Instance { return moncode_to_3ti(get<Mat>(a, "moncode-to-3ti")); },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams&) { return moncode_forward(w); },
               [](const Instance& a, const Instance& b, const Witness& w, const ReductionParams&) {
                 return moncode_recover(get<Mat>(a, "moncode-to-3ti"), get<Mat>(b, "moncode-to-3ti"), w);
               },
               [](u32 p, Rng& rng) {
                 const Field f(p);
                 const std::size_t d = pick(rng, 2, 3), n = pick(rng, d, 3);
                 Instance a = gen_instance(Problem::MonCodeEq, {d, n}, f, rng);
                 Witness w = random_witness(Problem::MonCodeEq, a, rng);
                 Instance b = act_instance(Problem::MonCodeEq, a, w);
                 return SourcePair{a, b, w, {p, 4}};
               }});

  for (bool symmetric : {false, true}) {
    const std::string name = symmetric ? "3ti-to-sym-isometry" : "3ti-to-alt-isometry";
    r.push_back({name, Problem::TI3, Problem::Isometry, "(l, n, m), l <= n -> side l+7n+3, m+l(2n+1)+n(4n+2) slices",
                 [symmetric, name](const Instance& a, const ReductionParams&) -> Instance {
                   const auto& t = get<Tensor3>(a, name);
                   MatrixTuple s = alt_like(t, symmetric);
                   return as_tensor(t.field(), s.front().rows(), s);
                 },
                 [symmetric, name](const Instance& a, const Instance& b, const Witness& w, const ReductionParams&) {
                   return alt_forward(get<Tensor3>(a, name), get<Tensor3>(b, name), w, symmetric);
                 },
                 [name](const Instance& a, const Instance& b, const Witness& w, const ReductionParams&) {
                   return alt_recover(get<Tensor3>(a, name), get<Tensor3>(b, name), w);
                 },
                 ti3_sample});
  }

  for (bool unit : {false, true}) {
    const std::string name = unit ? "3ti-to-conjugacy-unital" : "3ti-to-conjugacy";
    r.push_back({name, Problem::TI3, Problem::Conjugacy, unit ? "(l, n, m) -> side l+n, m+1 slices" : "(l, n, m) -> side l+n, m slices",
                 [unit, name](const Instance& a, const ReductionParams&) -> Instance {
                   const auto& t = get<Tensor3>(a, name);
                   return as_tensor(t.field(), t.dim(0) + t.dim(1), ti3_to_conjugacy(t, unit));
                 },
                 [unit, name](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                   return conj_forward(get<Tensor3>(a, name), w, unit);
                 },
                 [name](const Instance& a, const Instance& b, const Witness& w, const ReductionParams&) {
                   return conj_recover(get<Tensor3>(a, name), get<Tensor3>(b, name), w);
                 },
                 ti3_sample});
  }

  r.push_back({"isometry-to-algebra", Problem::PseudoIsometry, Problem::AlgebraIso, "(n, m) -> algebra of dimension n+m",
               [](const Instance& a, const ReductionParams&) -> Instance {
                 return isometry_to_algebra(get<Tensor3>(a, "isometry-to-algebra").frontal());
               },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams&) {
                 return Witness{Tag::AlgebraIso, {block_diag({w.mats.at(0), inverse(w.mats.at(1)).transpose()})}};
               },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 const auto& t = get<Tensor3>(a, "isometry-to-algebra");
                 return algebra_recover(t.dim(0), t.dim(2), w);
               },
               pseudo_sample});

  r.push_back({"isometry-to-trilinear", Problem::PseudoIsometry, Problem::TrilinearEq, "(n, m) -> (n+m)^3",
               [](const Instance& a, const ReductionParams&) -> Instance {
                 return isometry_to_trilinear(get<Tensor3>(a, "isometry-to-trilinear").frontal());
               },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams&) {
                 return Witness{Tag::TrilinearEq, {block_diag({w.mats.at(0), w.mats.at(1)})}};
               },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 const auto& t = get<Tensor3>(a, "isometry-to-trilinear");
                 return trilinear_recover(t.dim(0), t.dim(2), w);
               },
               pseudo_sample});

  r.push_back({"adjoin-unit", Problem::AlgebraIso, Problem::AlgebraIso, "n -> n+1",
               [](const Instance& a, const ReductionParams&) -> Instance { return adjoin_unit(get<AlgebraSC>(a, "adjoin-unit")); },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams&) {
                 const Mat& p = w.mats.at(0);
                 return Witness{Tag::AlgebraIso, {block_diag({p, Mat::identity(p.field(), 1)})}};
               },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 const std::size_t n = get<AlgebraSC>(a, "adjoin-unit").dim();
                 const Mat& p = w.mats.at(0);
                 // The original algebra is the radical; its image must stay inside it.
                 if (!p.block(n, 0, 1, n).is_zero()) fail(ErrorKind::WitnessInvalid, "adjoin-unit: radical not preserved");
                 return Witness{Tag::AlgebraIso, {p.block(0, 0, n, n)}};
               },
               [](u32 p, Rng& rng) {
                 SourcePair s = pseudo_sample(p, rng);
                 AlgebraSC a = isometry_to_algebra(std::get<Tensor3>(s.a).frontal());
                 Witness w{Tag::AlgebraIso, {sample_gl(a.field(), a.dim(), rng)}};
                 AlgebraSC b = act_algebra(a, w.mats[0]);
                 return SourcePair{a, b, w, {p, 4}};
               }});

  r.push_back({"dti-to-algebra", Problem::TId, Problem::AlgebraIso, "(n_1..n_d) -> d + n_d + sum of chain path counts",
               [](const Instance& a, const ReductionParams&) -> Instance { return dti_to_algebra(get<TensorD>(a, "dti-to-algebra")).algebra; },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 return dti_forward(get<TensorD>(a, "dti-to-algebra"), w);
               },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 return dti_recover(get<TensorD>(a, "dti-to-algebra"), w);
               },
               [](u32 p, Rng& rng) {
                 const Field f(p);
                 const std::size_t d = pick(rng, 3, 4);
                 std::vector<std::size_t> dims(d);
                 for (auto& x : dims) x = pick(rng, 1, d == 3 ? 3 : 2);
                 TensorD a(f, dims);
                 for (auto& x : a.data()) x = rng.elem(f);
                 Witness w = random_gl_tuple(Tag::TId, f, dims, rng);
                 TensorD b = act(a, w);
                 return SourcePair{a, b, w, {p, 4}};
               }});

  r.push_back({"graph-to-altspace", Problem::GraphIso, Problem::MonomialIsometry, "n vertices, e edges -> Lambda(n)^e",
               [](const Instance& a, const ReductionParams& prm) -> Instance {
                 const auto& g = get<Graph>(a, "graph-to-altspace");
                 const Field f(prm.p);
                 return as_tensor(f, g.n, graph_to_altspace(g, f));
               },
               [](const Instance& a, const Instance& b, const Witness& w, const ReductionParams& prm) {
                 return graph_forward(get<Graph>(a, "graph-to-altspace"), get<Graph>(b, "graph-to-altspace"), w, Field(prm.p));
               },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams&) { return graph_recover(w); },
               [](u32 p, Rng& rng) {
                 Graph g = random_simple_graph(pick(rng, 2, 3), rng);
                 Witness w{Tag::GraphIso, {permutation_matrix(Field::trusted(2), sample_permutation(g.n, rng))}};
                 Graph h = act_graph(g, w.mats[0]);
                 return SourcePair{g, h, w, {p, 4}};
               }});

  r.push_back({"monomial-gadget", Problem::MonomialIsometry, Problem::Isometry, "Lambda(n)^m -> Lambda(n+n^2)^(m+n^2)",
               [](const Instance& a, const ReductionParams&) -> Instance {
                 const auto& t = get<Tensor3>(a, "monomial-gadget");
                 return as_tensor(t.field(), t.dim(0) + t.dim(0) * t.dim(0), monomial_gadget(t.field(), t.dim(0), t.frontal()));
               },
               [](const Instance& a, const Instance& b, const Witness& w, const ReductionParams&) {
                 return gadget_forward(get<Tensor3>(a, "monomial-gadget").frontal(), get<Tensor3>(b, "monomial-gadget").frontal(), w);
               },
               [](const Instance& a, const Instance& b, const Witness& w, const ReductionParams&) {
                 const auto& t = get<Tensor3>(a, "monomial-gadget");
                 return gadget_recover(t.frontal(), get<Tensor3>(b, "monomial-gadget").frontal(), t.dim(0), w);
               },
               [](u32 p, Rng& rng) {
                 const Field f(p);
                 const std::size_t n = pick(rng, 2, 3), m = pick(rng, 1, 3);
                 Instance a = gen_instance(Problem::MonomialIsometry, {n, m}, f, rng);
                 Witness w = random_witness(Problem::MonomialIsometry, a, rng);
                 Instance b = act_instance(Problem::MonomialIsometry, a, w);
                 return SourcePair{a, b, w, {p, 4}};
               }});

  r.push_back({"grigoriev", Problem::DigraphIso, Problem::AlgebraIso, "(|V|, |E|) -> |V|+|E|",
               [](const Instance& a, const ReductionParams& prm) -> Instance {
                 return grigoriev_algebra(get<Graph>(a, "grigoriev"), Field(prm.p));
               },
               [](const Instance& a, const Instance& b, const Witness& w, const ReductionParams& prm) {
                 return grigoriev_forward(get<Graph>(a, "grigoriev"), get<Graph>(b, "grigoriev"), w, Field(prm.p));
               },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 return grigoriev_recover(get<Graph>(a, "grigoriev").n, w);
               },
               [](u32 p, Rng& rng) {
                 Graph g;
                 g.n = pick(rng, 1, 3);
                 g.directed = true;
                 const std::size_t e = pick(rng, 0, 4);
                 for (std::size_t t = 0; t < e; ++t) g.edges.push_back({rng.below(g.n), rng.below(g.n)});
                 Witness w{Tag::GraphIso, {permutation_matrix(Field::trusted(2), sample_permutation(g.n, rng))}};
                 Graph h = act_graph(g, w.mats[0]);
                 return SourcePair{g, h, w, {p, 4}};
               }});

  r.push_back({"cubic-to-degree-d", Problem::FormEq, Problem::FormEq, "(n, 3) -> (n+1, d)",
               [](const Instance& a, const ReductionParams& prm) -> Instance {
                 return cubic_to_degree_d(get<FormD>(a, "cubic-to-degree-d"), prm.degree);
               },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams&) {
                 const Mat& p = w.mats.at(0);
                 return Witness{Tag::FormEq, {block_diag({p, Mat::identity(p.field(), 1)})}};
               },
               [](const Instance& a, const Instance& b, const Witness& w, const ReductionParams& prm) {
                 return Witness{Tag::FormEq, {cubic_recover(get<FormD>(a, "cubic-to-degree-d"), get<FormD>(b, "cubic-to-degree-d"),
                                                            prm.degree, w.mats.at(0), default_budget())}};
               },
               [](u32 p, Rng& rng) {
                 const Field f(p);
                 Instance a = gen_instance(Problem::FormEq, {pick(rng, 1, 3), 3}, f, rng);
                 Witness w = random_witness(Problem::FormEq, a, rng);
                 Instance b = act_instance(Problem::FormEq, a, w);
                 return SourcePair{a, b, w, {p, pick(rng, 3, 5)}};
               }});

  r.push_back({"pad-d", Problem::TId, Problem::TId, "(n_1..n_d) -> (n_1..n_d, 1..1) of order d'",
               [](const Instance& a, const ReductionParams& prm) -> Instance { return pad_to(get<TensorD>(a, "pad-d"), prm.degree); },
               [](const Instance&, const Instance&, const Witness& w, const ReductionParams& prm) {
                 return pad_witness_forward(w, prm.degree);
               },
               [](const Instance& a, const Instance&, const Witness& w, const ReductionParams&) {
                 return pad_witness_recover(w, get<TensorD>(a, "pad-d").order());
               },
               [](u32 p, Rng& rng) {
                 const Field f(p);
                 std::vector<std::size_t> dims(pick(rng, 2, 3));
                 for (auto& x : dims) x = pick(rng, 1, 3);
                 TensorD a(f, dims);
                 for (auto& x : a.data()) x = rng.elem(f);
                 Witness w = random_gl_tuple(Tag::TId, f, dims, rng);
                 TensorD b = act(a, w);
                 return SourcePair{a, b, w, {p, dims.size() + pick(rng, 1, 2)}};
               }});

  for (auto& red : r) red.recover = checked_recover(red.name, red.source, red.recover);
  return r;
}

}  // namespace

Tensor3 moncode_to_3ti(const Mat& code) {
  const std::size_t d = code.rows(), n = code.cols();
  require(d > 1, ErrorKind::Precondition, "moncode-to-3ti: code dimension must exceed 1");
  require(rank(code) == d, ErrorKind::Precondition, "moncode-to-3ti: generator matrix must have full row rank");
  Tensor3 t(code.field(), d + 2 * n, n, 1 + 2 * n);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < n; ++i) t(r, i, 0) = code(r, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(d + 2 * i + j, i, 1 + 2 * i + j) = 1;
  return t;
}

MatrixTuple graph_to_altspace(const Graph& g, const Field& f) {
  require(!g.directed, ErrorKind::Precondition, "graph-to-altspace needs an undirected graph");
  require(g.simple(), ErrorKind::Precondition, "graph-to-altspace needs a simple graph without self-loops");
  MatrixTuple out;
  for (const auto& [u, v] : g.edges) out.push_back(elementary_pair(f, g.n, u, v, false));
  return out;
}

MatrixTuple monomial_gadget(const Field& f, std::size_t n, const MatrixTuple& a) {
  require(n > 0, ErrorKind::Dimension, "monomial-gadget: empty side");
  for (const auto& s : a)
    require(s.rows() == n && s.cols() == n && s.field() == f, ErrorKind::Dimension, "monomial-gadget: slice shape");
  require(tuple_alternating(a), ErrorKind::Precondition, "monomial-gadget needs alternating slices");
  const std::size_t side = n + n * n;
  MatrixTuple out;
  for (const auto& s : a) {
    Mat m(f, side, side);
    m.set_block(0, 0, s);
    out.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(elementary_pair(f, side, i, n + i * n + j, false));
  return out;
}

MatrixTuple ti3_to_alt_isometry(const Tensor3& t) { return alt_like(t, false); }
MatrixTuple ti3_to_sym_isometry(const Tensor3& t) { return alt_like(t, true); }

MatrixTuple ti3_to_conjugacy(const Tensor3& t, bool with_unit) {
  require_nondegenerate(t, "3ti-to-conjugacy");
  const Field& f = t.field();
  const std::size_t l = t.dim(0), n = t.dim(1), side = l + n;
  MatrixTuple out;
  for (const auto& s : t.frontal()) {
    Mat m(f, side, side);
    m.set_block(0, l, s);
    out.push_back(std::move(m));
  }
  if (with_unit) out.push_back(block_diag({Mat::identity(f, l), Mat(f, n, n)}));
  return out;
}

AlgebraSC isometry_to_algebra(const MatrixTuple& a) {
  return AlgebraSC(isometry_to_trilinear(a));
}

Tensor3 isometry_to_trilinear(const MatrixTuple& a) {
  require(!a.empty(), ErrorKind::Dimension, "isometry-to-algebra: empty tuple");
  const std::size_t n = a.front().rows(), m = a.size();
  for (const auto& s : a) require(s.rows() == n && s.cols() == n, ErrorKind::Dimension, "isometry-to-algebra: square slices");
  require(span_dim(a) == m, ErrorKind::Precondition, "isometry-to-algebra: slices must be linearly independent");
  Tensor3 t(a.front().field(), n + m, n + m, n + m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j, n + k) = a[k](i, j);
  return t;
}

bool nilpotent(const AlgebraSC& a) {
  const std::size_t n = a.dim();
  const Field& f = a.field();
  // powers[k] spans all products of k+1 elements, any bracketing.
  std::vector<std::vector<Vec>> powers;
  std::vector<Vec> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(a.basis(i));
  powers.push_back(all);
  for (std::size_t k = 1; k <= n; ++k) {
    Span s(f, n);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& x : powers[i])
        for (const auto& y : powers[k - 1 - i]) {
          Vec z = a.mul(x, y);
          if (s.add(z)) gens.push_back(z);
        }
    if (gens.empty()) return true;
    powers.push_back(gens);
  }
  return false;
}

AlgebraSC adjoin_unit(const AlgebraSC& a) {
  require(nilpotent(a), ErrorKind::Precondition, "adjoin-unit needs a nilpotent algebra");
  const std::size_t n = a.dim();
  Tensor3 t(a.field(), n + 1, n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t(i, j, k) = a.sc()(i, j, k);
  for (std::size_t i = 0; i < n; ++i) t(n, i, i) = t(i, n, i) = 1;
  t(n, n, n) = 1;
  return AlgebraSC(t);
}

AlgebraSC specialize_pseudo(const MatrixTuple& a, PseudoVariant variant) {
  const bool lie = variant == PseudoVariant::NilpotentLie;
  if (lie)
    require(tuple_alternating(a), ErrorKind::Precondition, "the Lie variant needs alternating slices");
  else
    require(tuple_symmetric(a), ErrorKind::Precondition, "the commutative variants need symmetric slices");
  AlgebraSC alg = isometry_to_algebra(a);
  if (lie) {
    require(alg.alternating() && alg.jacobi() && alg.nilpotent3(), ErrorKind::Precondition, "output is not a nilpotent Lie algebra");
    return alg;
  }
  require(alg.commutative() && alg.nilpotent3(), ErrorKind::Precondition, "output is not commutative and 3-nilpotent");
  if (variant == PseudoVariant::CommutativeNilpotent) return alg;
  AlgebraSC unital = adjoin_unit(alg);
  require(unital.commutative() && unital.unit().has_value() && unital.associative(), ErrorKind::Precondition,
          "output is not unital commutative associative");
  return unital;
}

std::size_t DtiAlgebra::arrow_index(std::size_t direction, std::size_t a) const {
  // Single arrows are the length-one paths; locate by scanning the ordered basis.
  for (std::size_t t = 0; t < paths.size(); ++t)
    if (paths[t].start == direction && paths[t].arrows.size() == 1 && paths[t].arrows[0] == a) return order() + t;
  fail(ErrorKind::Dimension, "arrow index out of range");
}

std::size_t dti_algebra_dimension(const std::vector<std::size_t>& dims) {
  const std::size_t d = dims.size();
  require(d >= 3, ErrorKind::Precondition, "dti-to-algebra needs d >= 3");
  std::size_t total = d + dims[d - 1];
  for (std::size_t s = 0; s + 1 < d; ++s)
    for (std::size_t len = 1; s + len <= d - 1; ++len) {
      if (s == 0 && len == d - 1) continue;
      std::size_t prod = 1;
      for (std::size_t j = s; j < s + len; ++j) prod *= dims[j];
      total += prod;
    }
  return total;
}

std::size_t dti_displayed_dimension(const std::vector<std::size_t>& dims) {
  const std::size_t d = dims.size();
  std::size_t total = d + dims[d - 1];
  for (std::size_t k = 0; k + 2 <= d; ++k)
    for (std::size_t i = 1; i + k <= d - 1; ++i) {
      std::size_t prod = 1;
      for (std::size_t j = i; j <= i + k; ++j) prod *= dims[j - 1];
      total += prod;
    }
  return total;
}

DtiAlgebra dti_to_algebra(const TensorD& t) {
  const std::size_t d = t.order();
  require(d >= 3, ErrorKind::Precondition, "dti-to-algebra needs d >= 3");
  const Field& f = t.field();
  DtiAlgebra out{AlgebraSC::zero(f, 0), t.dims(), {}};
  const auto& dims = t.dims();
  for (std::size_t s = 0; s + 1 < d; ++s)
    for (std::size_t len = 1; s + len <= d - 1; ++len) {
      if (s == 0 && len == d - 1) continue;
      std::vector<std::size_t> arrows(len, 0);
      for (;;) {
        out.paths.push_back({s, arrows});
        std::size_t pos = len;
        while (pos > 0 && ++arrows[pos - 1] == dims[s + pos - 1]) arrows[--pos] = 0;
        if (pos == 0) break;
      }
    }
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t i = 0; i < out.paths.size(); ++i) index[{out.paths[i].start, out.paths[i].arrows}] = d + i;
  const std::size_t dim = d + out.paths.size() + dims[d - 1];
  Tensor3 sc(f, dim, dim, dim);
  const std::size_t first_top = d + out.paths.size();
  // (start, end) of each basis element; idempotent e_u is the trivial path at u.
  auto ends = [&](std::size_t b) -> std::pair<std::size_t, std::size_t> {
    if (b < d) return {b, b};
    if (b >= first_top) return {0, d - 1};
    const auto& p = out.paths[b - d];
    return {p.start, p.end()};
  };
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) {
      const auto [xs, xe] = ends(x);
      const auto [ys, ye] = ends(y);
      if (xe != ys) continue;
      if (x < d) {
        sc(x, y, y) = 1;
        continue;
      }
      if (y < d) {
        sc(x, y, x) = 1;
        continue;
      }
      if (x >= first_top || y >= first_top) continue;
      std::vector<std::size_t> arrows = out.paths[x - d].arrows;
      const auto& tail = out.paths[y - d].arrows;
      arrows.insert(arrows.end(), tail.begin(), tail.end());
      if (xs == 0 && arrows.size() == d - 1) {
        std::vector<std::size_t> idx = arrows;
        idx.push_back(0);
        for (std::size_t j = 0; j < dims[d - 1]; ++j) {
          idx.back() = j;
          sc(x, y, first_top + j) = t.at(idx);
        }
      } else {
        sc(x, y, index.at({xs, arrows})) = 1;
      }
    }
  out.algebra = AlgebraSC(sc);
  return out;
}

AlgebraSC grigoriev_algebra(const Graph& g, const Field& f) {
  const std::size_t n = g.n, dim = n + g.edges.size();
  Tensor3 sc(f, dim, dim, dim);
  for (std::size_t v = 0; v < n; ++v) sc(v, v, v) = 1;
  for (std::size_t t = 0; t < g.edges.size(); ++t) {
    const auto [u, v] = g.edges[t];
    require(u < n && v < n, ErrorKind::Dimension, "grigoriev: edge endpoint out of range");
    sc(u, n + t, n + t) = 1;
    sc(n + t, v, n + t) = 1;
  }
  return AlgebraSC(sc);
}

Graph grigoriev_reconstruct(const AlgebraSC& a, std::size_t idempotents) {
  const std::size_t dim = a.dim(), k = idempotents;
  require(k <= dim, ErrorKind::Dimension, "more idempotents than basis vectors");
  const Field& f = a.field();
  std::vector<Vec> rad, rad2;
  for (std::size_t i = k; i < dim; ++i) rad.push_back(a.basis(i));
  Span s2(f, dim);
  for (const auto& x : rad)
    for (const auto& y : rad) {
      Vec z = a.mul(x, y);
      if (s2.add(z)) rad2.push_back(z);
    }
  Graph g;
  g.n = k;
  g.directed = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto block_dim = [&](const std::vector<Vec>& gens) {
        Span s(f, dim);
        for (const auto& r : gens) s.add(a.mul(a.mul(a.basis(i), r), a.basis(j)));
        return s.dim();
      };
      const std::size_t w = block_dim(rad) - block_dim(rad2);
      for (std::size_t c = 0; c < w; ++c) g.edges.push_back({i, j});
    }
  return g;
}

FormD cubic_to_degree_d(const FormD& f, std::size_t d) {
  require(f.degree() == 3, ErrorKind::Precondition, "cubic-to-degree-d needs a cubic form");
  require(d >= 3, ErrorKind::Precondition, "cubic-to-degree-d needs d >= 3");
  const std::size_t n = f.vars();
  FormD zpow(f.field(), n + 1, d - 3);
  Exponent e(n + 1, 0);
  e[n] = static_cast<std::uint8_t>(d - 3);
  zpow.set(e, 1);
  return multiply(extend_vars(f, 1), zpow);
}

Mat cubic_recover(const FormD& f, const FormD& g, std::size_t d, const Mat& w, u64 budget) {
  const std::size_t n = f.vars();
  const Field& fld = f.field();
  require(w.rows() == n + 1 && w.cols() == n + 1, ErrorKind::Dimension, "cubic-to-degree-d: witness shape");
  (void)g;
  Mat p;
  if (d == 3) {
    // z does not occur, so setting it to zero keeps the identity.
    p = w.block(0, 0, n, n);
  } else if (w(n, n) == 0) {
    // z' = l(x) divides z^(d-3) g(x), so substituting z = l(x) cancels it from both sides.
    Mat lift(fld, n + 1, n);
    for (std::size_t i = 0; i < n; ++i) {
      lift(i, i) = 1;
      lift(n, i) = w(n, i);
    }
    p = w.block(0, 0, n, n + 1) * lift;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (w(n, i)) fail(ErrorKind::WitnessInvalid, "cubic-to-degree-d: z maps to a mixed linear form");
    const u32 target = fld.pow(w(n, n), d - 3);
    std::optional<u32> root;
    for (u32 c = 1; c < fld.p() && !root; ++c)
      if (fld.pow(c, 3) == target) root = c;
    if (!root) fail(ErrorKind::RecoveryUnsupported, "cubic-to-degree-d: scalar on z has no cube root of the needed power");
    p = w.block(0, 0, n, n).scaled(*root);
  }
  if (!invertible(p)) p = repair_singular(p, invariant_directions(f, budget));
  return p;
}

const std::vector<Reduction>& reductions() {
  static const std::vector<Reduction> registry = build_registry();
  return registry;
}

const Reduction& find_reduction(const std::string& name) {
  for (const auto& r : reductions())
    if (r.name == name) return r;
  fail(ErrorKind::Parse, "unknown reduction '" + name + "'");
}

}  // namespace tik
