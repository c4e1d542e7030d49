#include "tik/oracle.hpp"

#include <algorithm>

namespace tik {

namespace {

template <class T>
const T& as(const Instance& x, const char* what) {
  const T* p = std::get_if<T>(&x);
  require(p != nullptr, ErrorKind::Dimension, std::string("instance type does not match ") + what);
  return *p;
}

bool span_problem(Problem p) {
  return p == Problem::Isometry || p == Problem::MonomialIsometry || p == Problem::Conjugacy;
}

Mat from_columns(const Field& f, std::size_t n, const std::vector<Vec>& cols) {
  Mat m(f, n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) m(i, c) = cols[c][i];
  return m;
}

std::pair<Mat, Mat> split_monomial(const Mat& m) {
  Mat d(m.field(), m.rows(), m.rows()), p(m.field(), m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) d(i, i) = m(i, j), p(i, j) = 1;
  return {d, p};
}

// rank of combine(t, u) for every coefficient vector u, indexed by vec_index.
std::vector<std::size_t> combination_rank_table(const MatrixTuple& t, const Field& f, u64 budget) {
  const u64 total = checked_pow(f.p(), t.size());
  check_budget(total, budget, "rank table");
  std::vector<std::size_t> out(total, 0);
  for (u64 idx = 1; idx < total; ++idx) out[idx] = rank(combine(t, vec_from_index(idx, t.size(), f.p())));
  return out;
}

// Nonzero vectors of F^n whose table value matches `want`, in index order.
std::vector<Vec> filtered(const std::vector<std::size_t>& table, std::size_t n, u32 p, std::size_t want) {
  std::vector<Vec> out;
  for (u64 idx = 1; idx < table.size(); ++idx)
    if (table[idx] == want) out.push_back(vec_from_index(idx, n, p));
  return out;
}

MatrixTuple tuple_of(const Tensor3& t) { return t.frontal(); }

bool square_tuple(const MatrixTuple& t, std::size_t n) {
  for (const auto& s : t)
    if (s.rows() != n || s.cols() != n) return false;
  return true;
}

// Leading (s x s) blocks of a tuple, flattened; span membership prunes partial isometries.
std::vector<Span> leading_block_spans(const MatrixTuple& b, const Field& f, std::size_t n) {
  std::vector<Span> out;
  for (std::size_t s = 0; s <= n; ++s) {
    Span sp(f, s * s);
    for (const auto& m : b) sp.add(flatten(m.block(0, 0, s, s)));
    out.push_back(std::move(sp));
  }
  return out;
}

Mat mixing_or_identity(const MatrixTuple& source, const MatrixTuple& target, const Field& f, u64 budget) {
  if (auto r = solve_mixing(source, target, budget)) return *r;
  return Mat::identity(f, source.size());
}

}  // namespace

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::TI3: return "ti3";
    case Problem::Isometry: return "isometry";
    case Problem::MonomialIsometry: return "monomial-isometry";
    case Problem::PseudoIsometry: return "pseudo-isometry";
    case Problem::Conjugacy: return "conjugacy";
    case Problem::AlgebraIso: return "algebra";
    case Problem::TrilinearEq: return "trilinear";
    case Problem::FormEq: return "form";
    case Problem::MonCodeEq: return "moncode";
    case Problem::GraphIso: return "graph";
    case Problem::DigraphIso: return "digraph";
    case Problem::TId: return "tid";
  }
  return "?";
}

Problem problem_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Problem::TId); ++i)
    if (s == problem_name(static_cast<Problem>(i))) return static_cast<Problem>(i);
  fail(ErrorKind::Parse, "unknown problem '" + s + "'");
}

Tag problem_tag(Problem p) {
  switch (p) {
    case Problem::TI3: return Tag::TI3;
    case Problem::Isometry:
    case Problem::MonomialIsometry: return Tag::Isometry;
    case Problem::PseudoIsometry: return Tag::PseudoIsometry;
    case Problem::Conjugacy: return Tag::Conjugacy;
    case Problem::AlgebraIso: return Tag::AlgebraIso;
    case Problem::TrilinearEq: return Tag::TrilinearEq;
    case Problem::FormEq: return Tag::FormEq;
    case Problem::MonCodeEq: return Tag::MonCodeEq;
    case Problem::GraphIso:
    case Problem::DigraphIso: return Tag::GraphIso;
    case Problem::TId: return Tag::TId;
  }
  return Tag::TI3;
}

const Field& instance_field(const Instance& x) {
  static const Field binary = Field::trusted(2);
  return std::visit(
      [](const auto& v) -> const Field& {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Graph>) return binary;
        else return v.field();
      },
      x);
}

Instance act_instance(Problem problem, const Instance& a, const Witness& w) {
  require(w.tag == problem_tag(problem), ErrorKind::Dimension,
          std::string("witness tag ") + tag_name(w.tag) + " does not fit problem " + problem_name(problem));
  switch (problem) {
    case Problem::TI3:
    case Problem::Isometry:
    case Problem::MonomialIsometry:
    case Problem::PseudoIsometry:
    case Problem::Conjugacy:
    case Problem::TrilinearEq: return act(as<Tensor3>(a, problem_name(problem)), w);
    case Problem::AlgebraIso: {
      require(w.mats.size() == 1, ErrorKind::Dimension, "algebra witness arity");
      return act_algebra(as<AlgebraSC>(a, "algebra"), w.mats[0]);
    }
    case Problem::FormEq: {
      require(w.mats.size() == 1, ErrorKind::Dimension, "form witness arity");
      check_invertible(w);
      return act_form(as<FormD>(a, "form"), w.mats[0]);
    }
    case Problem::MonCodeEq: {
      require(w.mats.size() == 3, ErrorKind::Dimension, "code witness arity");
      const Mat& code = as<Mat>(a, "moncode");
      const Mat &q = w.mats[0], &d = w.mats[1], &p = w.mats[2];
      require(q.rows() == code.rows() && d.rows() == code.cols() && p.rows() == code.cols(), ErrorKind::Dimension,
              "code witness shape");
      require(invertible(q), ErrorKind::Singular, "code witness Q");
      require(is_diagonal(d) && invertible(d), ErrorKind::Singular, "code witness D must be invertible diagonal");
      require(is_permutation(p), ErrorKind::Precondition, "code witness P must be a permutation");
      return q * code * d * p;
    }
    case Problem::GraphIso:
    case Problem::DigraphIso: {
      require(w.mats.size() == 1, ErrorKind::Dimension, "graph witness arity");
      return act_graph(as<Graph>(a, problem_name(problem)), w.mats[0]);
    }
    case Problem::TId: return act(as<TensorD>(a, "tid"), w);
  }
  fail(ErrorKind::Unsupported, "act_instance");
}

bool verify_witness(Problem problem, const Instance& a, const Instance& b, const Witness& w) {
  require(a.index() == b.index(), ErrorKind::Dimension, "instances of different kinds");
  Instance image;
  try {
    if (problem == Problem::MonomialIsometry) {
      require(!w.mats.empty(), ErrorKind::Dimension, "isometry witness arity");
      if (!is_monomial(w.mats[0])) return false;
    }
    image = act_instance(problem, a, w);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Singular || e.kind() == ErrorKind::Precondition) return false;
    throw;
  }
  if (span_problem(problem)) {
    const auto& x = std::get<Tensor3>(image);
    const auto& y = as<Tensor3>(b, problem_name(problem));
    require(x.dim(0) == y.dim(0) && x.dim(1) == y.dim(1), ErrorKind::Dimension, "matrix spaces of different shapes");
    if (x.dim(2) == 0 || y.dim(2) == 0) return x.is_zero() && y.is_zero();
    return span_equal(x.frontal(), y.frontal());
  }
  return image == b;
}

bool ColumnSearch::run() {
  std::vector<Vec> cols;
  std::vector<Span> spans{Span(field, n)};
  std::function<bool(std::size_t)> rec = [&](std::size_t c) -> bool {
    if (c == n) return done(from_columns(field, n, cols));
    for (const Vec& u : candidates[c]) {
      if (++nodes > budget) fail(ErrorKind::Budget, "column search exceeded " + std::to_string(budget) + " nodes");
      if (spans.back().contains(u)) continue;
      cols.push_back(u);
      bool stop = false;
      if (!prefix || prefix(c, cols)) {
        Span next = spans.back();
        next.add(u);
        spans.push_back(std::move(next));
        stop = rec(c + 1);
        spans.pop_back();
      }
      cols.pop_back();
      if (stop) return true;
    }
    return false;
  };
  require(candidates.size() == n, ErrorKind::Dimension, "column search: one candidate list per column");
  return rec(0);
}

namespace {

// Over GF(2) each S u is an xor of columns of S. Walking the indices in Gray-code order changes
// one coordinate per step, so every image vector updates with a single xor.
std::vector<std::size_t> lateral_rank_table_gf2(const MatrixTuple& t, std::size_t n, u64 total) {
  const std::size_t m = t.size();
  std::vector<std::vector<u64>> cols(m, std::vector<u64>(n, 0));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < t[k].rows(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (t[k](i, j)) cols[k][j] |= u64{1} << i;
  std::vector<std::size_t> out(total, 0);
  std::vector<u64> img(m, 0), basis;
  for (u64 step = 1; step < total; ++step) {
    // Index bit b is coordinate n-1-b, since the first coordinate is most significant.
    const int bit = __builtin_ctzll(step);
    const std::size_t coord = n - 1 - static_cast<std::size_t>(bit);
    for (std::size_t k = 0; k < m; ++k) img[k] ^= cols[k][coord];
    // Kept in descending order, every basis vector has its own leading bit.
    basis.clear();
    for (u64 v : img) {
      for (u64 b : basis) v = std::min(v, v ^ b);
      if (v) basis.insert(std::upper_bound(basis.begin(), basis.end(), v, std::greater<u64>()), v);
    }
    out[step ^ (step >> 1)] = basis.size();
  }
  return out;
}

}  // namespace

std::vector<std::size_t> lateral_rank_table(const MatrixTuple& t, std::size_t n, u64 budget) {
  require(!t.empty(), ErrorKind::Dimension, "lateral_rank_table on empty tuple");
  const Field& f = t.front().field();
  const u64 total = checked_pow(f.p(), n);
  check_budget(total, budget, "lateral rank table");
  if (f.p() == 2 && n <= 64 && t.front().rows() <= 64) return lateral_rank_table_gf2(t, n, total);
  std::vector<std::size_t> out(total, 0);
  for (u64 idx = 1; idx < total; ++idx) out[idx] = lateral_rank(t, vec_from_index(idx, n, f.p()));
  return out;
}

std::optional<Witness> decide_3ti_smart(const Tensor3& a, const Tensor3& b, u64 budget) {
  require(a.field() == b.field(), ErrorKind::Dimension, "tensors over different fields");
  const Field f = a.field();
  if (a.dims() != b.dims()) return std::nullopt;
  for (int d = 0; d < 3; ++d)
    if (direction_rank(a, d) != direction_rank(b, d)) return std::nullopt;
  if (a.size() == 0) return identity_witness(Tag::TI3, f, {a.dim(0), a.dim(1), a.dim(2)});

  // Solve the largest direction linearly; ties go to the last index.
  int solved = 0;
  for (int d = 1; d < 3; ++d)
    if (a.dim(d) >= a.dim(solved)) solved = d;
  std::array<int, 3> order{};
  for (int d = 0, t = 0; d < 3; ++d)
    if (d != solved) order[t++] = d;
  order[2] = solved;
  const Tensor3 pa = a.permuted(order), pb = b.permuted(order);
  const std::size_t l = pa.dim(0), n = pa.dim(1);
  const u64 need = gl_order(l, f.p()) > UINT64_MAX / std::max<u64>(1, gl_order(n, f.p()))
                       ? UINT64_MAX
                       : gl_order(l, f.p()) * gl_order(n, f.p());
  check_budget(need, budget, "3-tensor isomorphism search");

  const MatrixTuple ha = pa.slices(Direction::Horizontal), hb = pb.slices(Direction::Horizontal);
  const MatrixTuple la = pa.slices(Direction::Lateral), lb = pb.slices(Direction::Lateral);
  const auto hrank = combination_rank_table(ha, f, budget);
  const auto lrank = combination_rank_table(la, f, budget);
  const MatrixTuple fa = pa.frontal(), fb = pb.frontal();

  ColumnSearch xs{f, l, {}, {}, {}, budget};
  for (std::size_t c = 0; c < l; ++c) xs.candidates.push_back(filtered(hrank, l, f.p(), rank(hb[c])));
  // With X partially fixed, the row-truncated frontal spans have equal dimension.
  std::vector<std::size_t> row_dims;
  for (std::size_t c = 0; c <= l; ++c) {
    MatrixTuple t;
    for (const auto& s : fb) t.push_back(s.block(0, 0, c, s.cols()));
    row_dims.push_back(span_dim(t));
  }
  xs.prefix = [&](std::size_t c, const std::vector<Vec>& cols) {
    Mat xc = from_columns(f, l, cols).transpose();
    MatrixTuple t;
    for (const auto& s : fa) t.push_back(xc * s);
    return span_dim(t) == row_dims[c + 1];
  };

  std::optional<Witness> found;
  xs.done = [&](const Mat& x) {
    MatrixTuple xa;
    for (const auto& s : fa) xa.push_back(x.transpose() * s);
    ColumnSearch ys{f, n, {}, {}, {}, budget};
    for (std::size_t c = 0; c < n; ++c) ys.candidates.push_back(filtered(lrank, n, f.p(), rank(lb[c])));
    ys.prefix = [&](std::size_t c, const std::vector<Vec>& cols) {
      Mat yc = from_columns(f, n, cols);
      MatrixTuple s, t;
      for (const auto& m : xa) s.push_back(m * yc);
      for (const auto& m : fb) t.push_back(m.block(0, 0, m.rows(), c + 1));
      return span_equal(s, t);
    };
    ys.done = [&](const Mat& y) {
      MatrixTuple src;
      for (const auto& m : xa) src.push_back(m * y);
      auto r = solve_mixing(src, fb, budget);
      if (!r) return false;
      std::array<Mat, 3> mats;
      mats[order[0]] = x;
      mats[order[1]] = y;
      mats[order[2]] = *r;
      found = Witness{Tag::TI3, {mats[0], mats[1], mats[2]}};
      return true;
    };
    ys.run();
    xs.nodes += ys.nodes;
    return found.has_value();
  };
  xs.run();
  return found;
}

std::optional<Witness> search_block_isometry(const MatrixTuple& a, const MatrixTuple& b, std::size_t monomial_block,
                                             u64 budget) {
  require(!a.empty() && !b.empty(), ErrorKind::Dimension, "isometry search on an empty tuple");
  const Field f = a.front().field();
  const std::size_t n = a.front().rows();
  require(square_tuple(a, n) && square_tuple(b, b.front().rows()), ErrorKind::Dimension, "isometry needs square slices");
  if (b.front().rows() != n) return std::nullopt;
  require(monomial_block <= n, ErrorKind::Dimension, "monomial block larger than the space");
  if (span_dim(a) != span_dim(b)) return std::nullopt;

  const auto ranks_a = lateral_rank_table(a, n, budget);
  std::vector<std::size_t> ranks_b;
  for (std::size_t c = 0; c < n; ++c) {
    Vec e(n, 0);
    e[c] = 1;
    ranks_b.push_back(lateral_rank(b, e));
  }

  ColumnSearch cs{f, n, {}, {}, {}, budget};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Vec> cand;
    if (c < monomial_block) {
      for (std::size_t j = 0; j < monomial_block; ++j)
        for (u32 alpha = 1; alpha < f.p(); ++alpha) {
          Vec v(n, 0);
          v[j] = alpha;
          if (ranks_a[vec_index(v, f.p())] == ranks_b[c]) cand.push_back(v);
        }
    } else {
      for (u64 idx = 1; idx < ranks_a.size(); ++idx) {
        if (ranks_a[idx] != ranks_b[c]) continue;
        Vec v = vec_from_index(idx, n, f.p());
        bool outside = true;
        for (std::size_t j = 0; j < monomial_block; ++j) outside = outside && v[j] == 0;
        if (outside) cand.push_back(v);
      }
    }
    cs.candidates.push_back(std::move(cand));
  }

  const auto blocks = leading_block_spans(b, f, n);
  cs.prefix = [&](std::size_t c, const std::vector<Vec>& cols) {
    Mat v = from_columns(f, n, cols);
    Mat vt = v.transpose();
    for (const auto& s : a)
      if (!blocks[c + 1].contains(flatten(vt * s * v))) return false;
    return true;
  };
  std::optional<Witness> found;
  cs.done = [&](const Mat& p) {
    MatrixTuple img;
    for (const auto& s : a) img.push_back(p.transpose() * s * p);
    if (!span_equal(img, b)) return false;
    found = Witness{Tag::Isometry, {p, mixing_or_identity(img, b, f, budget)}};
    return true;
  };
  cs.run();
  return found;
}

std::optional<Witness> decide_isometry(const MatrixTuple& a, const MatrixTuple& b, u64 budget) {
  return search_block_isometry(a, b, 0, budget);
}

std::optional<Witness> decide_pseudo_isometry(const MatrixTuple& a, const MatrixTuple& b, u64 budget) {
  if (a.size() != b.size()) return std::nullopt;
  require(!a.empty(), ErrorKind::Dimension, "pseudo-isometry on an empty tuple");
  const Field f = a.front().field();
  const std::size_t n = a.front().rows();
  require(square_tuple(a, n) && square_tuple(b, b.front().rows()), ErrorKind::Dimension, "isometry needs square slices");
  if (b.front().rows() != n || span_dim(a) != span_dim(b)) return std::nullopt;
  const auto ranks_a = lateral_rank_table(a, n, budget);
  ColumnSearch cs{f, n, {}, {}, {}, budget};
  for (std::size_t c = 0; c < n; ++c) {
    Vec e(n, 0);
    e[c] = 1;
    cs.candidates.push_back(filtered(ranks_a, n, f.p(), lateral_rank(b, e)));
  }
  const auto blocks = leading_block_spans(b, f, n);
  cs.prefix = [&](std::size_t c, const std::vector<Vec>& cols) {
    Mat v = from_columns(f, n, cols);
    Mat vt = v.transpose();
    for (const auto& s : a)
      if (!blocks[c + 1].contains(flatten(vt * s * v))) return false;
    return true;
  };
  std::optional<Witness> found;
  cs.done = [&](const Mat& p) {
    MatrixTuple img;
    for (const auto& s : a) img.push_back(p.transpose() * s * p);
    auto r = solve_mixing(img, b, budget);
    if (!r) return false;
    found = Witness{Tag::PseudoIsometry, {p, *r}};
    return true;
  };
  cs.run();
  return found;
}

std::optional<Witness> decide_conjugacy(const MatrixTuple& a, const MatrixTuple& b, u64 budget) {
  require(!a.empty() && !b.empty(), ErrorKind::Dimension, "conjugacy on an empty tuple");
  const Field f = a.front().field();
  const std::size_t n = a.front().rows();
  require(square_tuple(a, n) && square_tuple(b, b.front().rows()), ErrorKind::Dimension, "conjugacy needs square slices");
  if (b.front().rows() != n || span_dim(a) != span_dim(b)) return std::nullopt;
  check_budget(gl_order(n, f.p()), budget, "conjugacy search");
  const auto ranks_a = lateral_rank_table(a, n, budget);
  ColumnSearch cs{f, n, {}, {}, {}, budget};
  for (std::size_t c = 0; c < n; ++c) {
    Vec e(n, 0);
    e[c] = 1;
    cs.candidates.push_back(filtered(ranks_a, n, f.p(), lateral_rank(b, e)));
  }
  std::optional<Witness> found;
  cs.done = [&](const Mat& p) {
    Mat pinv = inverse(p);
    MatrixTuple img;
    for (const auto& s : a) img.push_back(pinv * s * p);
    if (!span_equal(img, b)) return false;
    found = Witness{Tag::Conjugacy, {p, mixing_or_identity(img, b, f, budget)}};
    return true;
  };
  cs.run();
  return found;
}

std::optional<Witness> decide_monomial_isometry(const MatrixTuple& a, const MatrixTuple& b, u64 budget) {
  require(!a.empty() && !b.empty(), ErrorKind::Dimension, "isometry on an empty tuple");
  const Field f = a.front().field();
  const std::size_t n = a.front().rows();
  if (b.front().rows() != n || span_dim(a) != span_dim(b)) return std::nullopt;
  std::optional<Witness> found;
  enumerate_monomial(f, n, budget, [&](const MonomialMatrix& mm) {
    Mat p = mm.expand(f);
    MatrixTuple img;
    for (const auto& s : a) img.push_back(p.transpose() * s * p);
    if (!span_equal(img, b)) return true;
    found = Witness{Tag::Isometry, {p, mixing_or_identity(img, b, f, budget)}};
    return false;
  });
  return found;
}

std::optional<Witness> decide_algebra_iso(const AlgebraSC& a, const AlgebraSC& b, u64 budget) {
  require(a.field() == b.field(), ErrorKind::Dimension, "algebras over different fields");
  if (a.dim() != b.dim()) return std::nullopt;
  const Field f = a.field();
  const std::size_t n = a.dim();
  // Left multiplication by the image of a basis vector keeps its rank.
  const MatrixTuple la = a.sc().slices(Direction::Horizontal), lb = b.sc().slices(Direction::Horizontal);
  const auto ranks = combination_rank_table(la, f, budget);
  ColumnSearch cs{f, n, {}, {}, {}, budget};
  for (std::size_t c = 0; c < n; ++c) cs.candidates.push_back(filtered(ranks, n, f.p(), rank(lb[c])));
  std::optional<Witness> found;
  cs.done = [&](const Mat& p) {
    if (act_algebra(a, p) != b) return false;
    found = Witness{Tag::AlgebraIso, {p}};
    return true;
  };
  cs.run();
  return found;
}

std::optional<Witness> decide_trilinear(const Tensor3& a, const Tensor3& b, u64 budget) {
  require(a.field() == b.field(), ErrorKind::Dimension, "tensors over different fields");
  if (a.dims() != b.dims()) return std::nullopt;
  const Field f = a.field();
  const std::size_t n = a.dim(0);
  require(a.dim(1) == n && a.dim(2) == n, ErrorKind::Dimension, "trilinear forms need n x n x n");
  const MatrixTuple ha = a.slices(Direction::Horizontal), hb = b.slices(Direction::Horizontal);
  const auto ranks = combination_rank_table(ha, f, budget);
  ColumnSearch cs{f, n, {}, {}, {}, budget};
  for (std::size_t c = 0; c < n; ++c) cs.candidates.push_back(filtered(ranks, n, f.p(), rank(hb[c])));
  std::optional<Witness> found;
  cs.done = [&](const Mat& p) {
    if (act3(a, p, p, p) != b) return false;
    found = Witness{Tag::TrilinearEq, {p}};
    return true;
  };
  cs.run();
  return found;
}

std::optional<Witness> decide_form_eq(const FormD& f, const FormD& g, u64 budget) {
  require(f.field() == g.field(), ErrorKind::Dimension, "forms over different fields");
  if (f.vars() != g.vars() || f.degree() != g.degree()) return std::nullopt;
  std::optional<Witness> found;
  enumerate_gl(f.field(), f.vars(), budget, [&](const Mat& p) {
    if (act_form(f, p) != g) return true;
    found = Witness{Tag::FormEq, {p}};
    return false;
  });
  return found;
}

std::optional<Witness> decide_code_monomial(const Mat& a, const Mat& b, u64 budget) {
  require(a.field() == b.field(), ErrorKind::Dimension, "codes over different fields");
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  const Field f = a.field();
  if (rank(a) != rank(b)) return std::nullopt;
  std::optional<Witness> found;
  enumerate_monomial(f, a.cols(), budget, [&](const MonomialMatrix& mm) {
    Mat m = mm.expand(f);
    Mat x = a * m;
    // Q x = b, solved as x^t Q^t = b^t.
    Solution s = solve(x.transpose(), b.transpose());
    if (!s.consistent) return true;
    Mat q = s.particular.transpose();
    if (!invertible(q) || q * x != b) return true;
    auto [d, p] = split_monomial(m);
    found = Witness{Tag::MonCodeEq, {q, d, p}};
    return false;
  });
  return found;
}

std::optional<Witness> decide_graph_iso(const Graph& g, const Graph& h, u64 budget) {
  if (g.n != h.n || g.directed != h.directed || g.edges.size() != h.edges.size()) return std::nullopt;
  check_budget(factorial(g.n), budget, "graph isomorphism search");
  const auto target = h.canonical_edges();
  std::optional<Witness> found;
  enumerate_permutations(g.n, [&](const std::vector<std::size_t>& perm) {
    if (act_graph(g, perm).canonical_edges() != target) return true;
    found = Witness{Tag::GraphIso, {permutation_matrix(Field::trusted(2), perm)}};
    return false;
  });
  return found;
}

std::optional<Witness> decide(Problem problem, const Instance& a, const Instance& b, u64 budget) {
  require(a.index() == b.index(), ErrorKind::Dimension, "instances of different kinds");
  const char* name = problem_name(problem);
  if (std::holds_alternative<Tensor3>(a) && problem != Problem::TI3 && problem != Problem::TrilinearEq) {
    // A space with no slices is {0}: every P maps it onto another empty space of the same side.
    const auto& x = std::get<Tensor3>(a);
    const auto& y = std::get<Tensor3>(b);
    if (x.dim(2) == 0 || y.dim(2) == 0) {
      if (x.dims() != y.dims()) return std::nullopt;
      return identity_witness(problem_tag(problem), x.field(), {x.dim(0), 0});
    }
  }
  if (a == b) {
    // equal inputs answer with the identity rather than whichever witness the search meets first
    Rng rng(0);
    Witness w = random_witness(problem, a, rng);
    for (Mat& m : w.mats) m = Mat::identity(m.field(), m.rows());
    if (verify_witness(problem, a, b, w)) return w;
  }
  switch (problem) {
    case Problem::TI3: return decide_3ti_smart(as<Tensor3>(a, name), as<Tensor3>(b, name), budget);
    case Problem::Isometry: return decide_isometry(tuple_of(as<Tensor3>(a, name)), tuple_of(as<Tensor3>(b, name)), budget);
    case Problem::MonomialIsometry:
      return decide_monomial_isometry(tuple_of(as<Tensor3>(a, name)), tuple_of(as<Tensor3>(b, name)), budget);
    case Problem::PseudoIsometry:
      return decide_pseudo_isometry(tuple_of(as<Tensor3>(a, name)), tuple_of(as<Tensor3>(b, name)), budget);
    case Problem::Conjugacy:
      return decide_conjugacy(tuple_of(as<Tensor3>(a, name)), tuple_of(as<Tensor3>(b, name)), budget);
    case Problem::AlgebraIso: return decide_algebra_iso(as<AlgebraSC>(a, name), as<AlgebraSC>(b, name), budget);
    case Problem::TrilinearEq: return decide_trilinear(as<Tensor3>(a, name), as<Tensor3>(b, name), budget);
    case Problem::FormEq: return decide_form_eq(as<FormD>(a, name), as<FormD>(b, name), budget);
    case Problem::MonCodeEq: return decide_code_monomial(as<Mat>(a, name), as<Mat>(b, name), budget);
    case Problem::GraphIso:
    case Problem::DigraphIso: return decide_graph_iso(as<Graph>(a, name), as<Graph>(b, name), budget);
    case Problem::TId: {
      const auto& x = as<TensorD>(a, name);
      const auto& y = as<TensorD>(b, name);
      require(x.order() == 3, ErrorKind::Unsupported, "direct decision of d-tensors is limited to d = 3");
      if (x.dims() != y.dims()) return std::nullopt;
      auto w = decide_3ti_smart(x.to_tensor3(), y.to_tensor3(), budget);
      if (w) w->tag = Tag::TId;
      return w;
    }
  }
  fail(ErrorKind::Unsupported, "decide");
}

Instance gen_instance(Problem problem, const std::vector<std::size_t>& dims, const Field& f, Rng& rng) {
  auto need = [&](std::size_t k) {
    require(dims.size() == k, ErrorKind::Dimension,
            std::string(problem_name(problem)) + " takes " + std::to_string(k) + " dimensions");
  };
  switch (problem) {
    case Problem::TI3: {
      need(3);
      Tensor3 t(f, dims[0], dims[1], dims[2]);
      for (auto& x : t.data()) x = rng.elem(f);
      return t;
    }
    case Problem::Isometry:
    case Problem::MonomialIsometry: {
      need(2);
      MatrixTuple s;
      for (std::size_t k = 0; k < dims[1]; ++k) s.push_back(random_alternating(f, dims[0], rng));
      return Tensor3::from_frontal(f, dims[0], dims[0], s);
    }
    case Problem::PseudoIsometry:
    case Problem::Conjugacy: {
      need(2);
      MatrixTuple s;
      for (std::size_t k = 0; k < dims[1]; ++k) s.push_back(random_mat(f, dims[0], dims[0], rng));
      return Tensor3::from_frontal(f, dims[0], dims[0], s);
    }
    case Problem::AlgebraIso:
    case Problem::TrilinearEq: {
      need(1);
      Tensor3 t(f, dims[0], dims[0], dims[0]);
      for (auto& x : t.data()) x = rng.elem(f);
      if (problem == Problem::AlgebraIso) return AlgebraSC(t);
      return t;
    }
    case Problem::FormEq: {
      need(2);
      FormD g(f, dims[0], dims[1]);
      for (std::size_t i = 0; i < g.basis().size(); ++i) g.set(g.basis().at(i), rng.elem(f));
      return g;
    }
    case Problem::MonCodeEq: {
      need(2);
      require(dims[0] <= dims[1], ErrorKind::Dimension, "a generator matrix needs d <= n");
      for (int attempt = 0; attempt < 1000; ++attempt) {
        Mat g = random_mat(f, dims[0], dims[1], rng);
        if (rank(g) == dims[0]) return g;
      }
      fail(ErrorKind::Precondition, "could not sample a full-rank generator matrix");
    }
    case Problem::GraphIso:
    case Problem::DigraphIso: {
      need(1);
      Graph g;
      g.n = dims[0];
      g.directed = problem == Problem::DigraphIso;
      for (std::size_t u = 0; u < g.n; ++u)
        for (std::size_t v = g.directed ? 0 : u + 1; v < g.n; ++v)
          if (rng.below(2)) g.edges.push_back({u, v});
      return g;
    }
    case Problem::TId: {
      require(!dims.empty(), ErrorKind::Dimension, "tid needs at least one dimension");
      TensorD t(f, dims);
      for (auto& x : t.data()) x = rng.elem(f);
      return t;
    }
  }
  fail(ErrorKind::Unsupported, "gen_instance");
}

Witness random_witness(Problem problem, const Instance& a, Rng& rng) {
  const Field& f = instance_field(a);
  switch (problem) {
    case Problem::TI3: {
      const auto& t = as<Tensor3>(a, "ti3");
      return {Tag::TI3, {sample_gl(f, t.dim(0), rng), sample_gl(f, t.dim(1), rng), sample_gl(f, t.dim(2), rng)}};
    }
    case Problem::Isometry:
    case Problem::PseudoIsometry:
    case Problem::Conjugacy: {
      const auto& t = as<Tensor3>(a, problem_name(problem));
      return {problem_tag(problem), {sample_gl(f, t.dim(0), rng), sample_gl(f, t.dim(2), rng)}};
    }
    case Problem::MonomialIsometry: {
      const auto& t = as<Tensor3>(a, "monomial-isometry");
      return {Tag::Isometry, {sample_monomial(f, t.dim(0), rng).expand(f), sample_gl(f, t.dim(2), rng)}};
    }
    case Problem::AlgebraIso: return {Tag::AlgebraIso, {sample_gl(f, as<AlgebraSC>(a, "algebra").dim(), rng)}};
    case Problem::TrilinearEq: return {Tag::TrilinearEq, {sample_gl(f, as<Tensor3>(a, "trilinear").dim(0), rng)}};
    case Problem::FormEq: return {Tag::FormEq, {sample_gl(f, as<FormD>(a, "form").vars(), rng)}};
    case Problem::MonCodeEq: {
      const auto& g = as<Mat>(a, "moncode");
      Mat d(f, g.cols(), g.cols());
      for (std::size_t i = 0; i < g.cols(); ++i) d(i, i) = rng.nonzero(f);
      return {Tag::MonCodeEq, {sample_gl(f, g.rows(), rng), d, permutation_matrix(f, sample_permutation(g.cols(), rng))}};
    }
    case Problem::GraphIso:
    case Problem::DigraphIso: {
      const auto& g = as<Graph>(a, problem_name(problem));
      return {Tag::GraphIso, {permutation_matrix(Field::trusted(2), sample_permutation(g.n, rng))}};
    }
    case Problem::TId: {
      Witness w{Tag::TId, {}};
      for (auto n : as<TensorD>(a, "tid").dims()) w.mats.push_back(sample_gl(f, n, rng));
      return w;
    }
  }
  fail(ErrorKind::Unsupported, "random_witness");
}

InstancePair gen_pair(Problem problem, const std::vector<std::size_t>& dims, u32 p, u64 seed, bool isomorphic,
                      u64 budget) {
  const Field f(p);
  Rng rng(seed);
  Instance a = gen_instance(problem, dims, f, rng);
  if (isomorphic) {
    Witness w = random_witness(problem, a, rng);
    Instance b = act_instance(problem, a, w);
    return {std::move(a), std::move(b), std::move(w)};
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Instance b = gen_instance(problem, dims, f, rng);
    if (!decide(problem, a, b, budget)) return {std::move(a), std::move(b), std::nullopt};
  }
  fail(ErrorKind::Precondition, std::string("no non-isomorphic ") + problem_name(problem) + " pair found at these sizes");
}

}  // namespace tik
