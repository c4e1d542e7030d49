#include "tik/s2d.hpp"

#include <map>

namespace tik {

namespace {

MatrixTuple congruence(const MatrixTuple& a, const Mat& p) {
  MatrixTuple out;
  const Mat pt = p.transpose();
  for (const Mat& s : a) out.push_back(pt * s * p);
  return out;
}

Mat alternating_unit(const Field& f, std::size_t n, std::size_t r, std::size_t c) {
  Mat m(f, n, n);
  m(r, c) = 1;
  m(c, r) = f.neg(1);
  return m;
}

Tensor3 as_tensor(const MatrixTuple& a, const Field& f, std::size_t n) { return Tensor3::from_frontal(f, n, n, a); }

// First nonzero coordinate equal to 1.
bool normalized(const Vec& v) {
  for (u32 x : v)
    if (x) return x == 1;
  return false;
}

// Index order with the first coordinate varying fastest, so e_1 and its standard complement come first.
Vec guess_vector(u64 idx, std::size_t r, u32 p) {
  Vec v = vec_from_index(idx, r, p);
  return {v.rbegin(), v.rend()};
}

u32 dot(const Field& f, const Vec& a, const Vec& b) {
  u32 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace

std::size_t gadget_side(std::size_t n, std::size_t i) { return n + 2 * n * i + n; }

MatrixTuple individualization_gadget(const MatrixTuple& a, std::size_t i) {
  require(!a.empty(), ErrorKind::Dimension, "individualization_gadget needs at least one slice");
  check_tuple_shape(a);
  require(tuple_alternating(a), ErrorKind::Precondition, "individualization_gadget needs alternating slices");
  const Field f = a[0].field();
  const std::size_t n = a[0].rows();
  require(i >= 1 && i + 1 <= n, ErrorKind::Precondition, "individualization_gadget needs 1 <= i <= n-1");
  const std::size_t side = gadget_side(n, i), shared = n + 2 * n * i;

  MatrixTuple out;
  for (const Mat& s : a) {
    Mat big(f, side, side);
    big.set_block(0, 0, s);
    out.push_back(std::move(big));
  }
  for (std::size_t row = 0; row < i; ++row)
    for (std::size_t b = 0; b < 2 * n; ++b) out.push_back(alternating_unit(f, side, row, n + 2 * n * row + b));
  for (std::size_t row = i; row < n; ++row)
    for (std::size_t b = 0; b < n; ++b) out.push_back(alternating_unit(f, side, row, shared + b));
  return out;
}

bool structural_decide(const MatrixTuple& a, const MatrixTuple& b, std::size_t i, u64 budget) {
  require(!a.empty(), ErrorKind::Dimension, "structural oracle needs at least one slice");
  const std::size_t n = a[0].rows();
  const u32 p = a[0].p();
  require(i <= n, ErrorKind::Precondition, "structural oracle: block larger than the space");
  u64 needed = factorial(n);
  needed = needed > budget ? needed : needed * checked_pow(p - 1, i);
  needed = needed > budget ? needed : needed * gl_order(n - i, p);
  check_budget(needed, budget, "structural oracle");
  return search_block_isometry(a, b, i, budget).has_value();
}

DecisionOracle structural_oracle(u64 budget) {
  return [budget](const MatrixTuple& a, const MatrixTuple& b, std::size_t i) { return structural_decide(a, b, i, budget); };
}

DecisionOracle brute_oracle(u64 budget) {
  return [budget](const MatrixTuple& a, const MatrixTuple& b, std::size_t i) {
    return decide_isometry(individualization_gadget(a, i), individualization_gadget(b, i), budget).has_value();
  };
}

std::optional<Witness> find_isometry(const MatrixTuple& a, const MatrixTuple& b, const DecisionOracle& oracle,
                                     u64 budget, SearchStats* stats) {
  require(!a.empty() && !b.empty(), ErrorKind::Dimension, "find_isometry needs non-empty tuples");
  check_tuple_shape(a);
  check_tuple_shape(b);
  require(tuple_alternating(a) && tuple_alternating(b), ErrorKind::Precondition, "find_isometry needs alternating tuples");
  const Field f = a[0].field();
  const std::size_t n = a[0].rows();
  require(b[0].rows() == n && b[0].p() == f.p(), ErrorKind::Dimension, "find_isometry: shapes differ");
  const u32 p = f.p();

  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  st = SearchStats{};
  st.query_side_bound = 2 * n * n + 2 * n;

  Mat basis = Mat::identity(f, n);  // current = basis^t a basis, exactly
  MatrixTuple current = a;
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t start = step - 1, r = n - start;
    const u64 vectors = checked_pow(p, r);
    const u64 bound = checked_pow(p, 2 * n) * checked_pow(p, r - 1);
    u64 guesses = 0;
    bool accepted = false;
    for (u64 vi = 1; vi < vectors && !accepted; ++vi) {
      const Vec v = guess_vector(vi, r, p);
      if (!normalized(v)) continue;
      // Complements of <v> are the kernels of functionals phi with phi(v) = 1.
      for (u64 phi_i = 0; phi_i < vectors && !accepted; ++phi_i) {
        const Vec phi = guess_vector(phi_i, r, p);
        if (dot(f, phi, v) != 1) continue;
        const Mat h = right_kernel(Mat::from_ints(f, 1, r, std::vector<long long>(phi.begin(), phi.end())));
        Mat t = Mat::identity(f, n);
        for (std::size_t k = 0; k < r; ++k) {
          t(start + k, start) = v[k];
          for (std::size_t c = 0; c + 1 < r; ++c) t(start + k, start + 1 + c) = h(k, c);
        }
        MatrixTuple query = congruence(current, t);
        ++guesses;
        ++st.queries;
        const std::size_t side = individualization_gadget(query, step)[0].rows();
        require(side <= st.query_side_bound, ErrorKind::Precondition, "gadget query exceeds 2n^2 + 2n");
        st.max_query_side = std::max(st.max_query_side, side);
        if (oracle(query, b, step)) {
          accepted = true;
          current = std::move(query);
          basis = basis * t;
        }
      }
    }
    st.guesses.push_back(guesses);
    st.guess_bounds.push_back(bound);
    require(guesses <= bound, ErrorKind::Precondition, "step guess count exceeds its bound");
    if (!accepted) {
      if (step == 1) return std::nullopt;
      fail(ErrorKind::OracleInconsistent, "every guess rejected at step " + std::to_string(step) +
                                              " after the oracle accepted step " + std::to_string(step - 1));
    }
  }

  std::optional<Witness> found;
  enumerate_monomial(f, n, budget, [&](const MonomialMatrix& mon) {
    ++st.monomials;
    const Mat m = mon.expand(f);
    if (!span_equal(congruence(current, m), b)) return true;
    const Mat pm = basis * m;
    const MatrixTuple img = congruence(a, pm);
    Mat r = Mat::identity(f, a.size());
    if (a.size() == b.size())
      if (auto sol = solve_mixing(img, b, budget)) r = *sol;
    found = Witness{Tag::Isometry, {pm, r}};
    return false;
  });
  if (!found) {
    if (n <= 1) return std::nullopt;
    fail(ErrorKind::OracleInconsistent, "no monomial completes the accepted steps");
  }
  if (!verify_witness(Problem::Isometry, as_tensor(a, f, n), as_tensor(b, f, n), *found))
    fail(ErrorKind::OracleInconsistent, "assembled witness fails verification");
  return found;
}

namespace {

// Lie-style coordinates: element with normal form (c, z) maps to (c, z + 1/2 sum_{a<b} c_a c_b phi(a,b)),
// which turns the group law into (v,w)(v',w') = (v+v', w+w'+1/2 phi(v,v')).
Vec to_baer(const BaerMap& bm, const Vec& nf, const Field& f) {
  Vec out = nf;
  const u32 half = f.inv(2);
  for (std::size_t x = 0; x < bm.n; ++x)
    for (std::size_t y = x + 1; y < bm.n; ++y) {
      const u32 cc = f.mul(half, f.mul(nf[x], nf[y]));
      if (!cc) continue;
      for (std::size_t k = 0; k < bm.m(); ++k) out[bm.n + k] = f.add(out[bm.n + k], f.mul(cc, bm.slices[k](x, y)));
    }
  return out;
}

Vec from_baer(const BaerMap& bm, const Vec& lie, const Field& f) {
  Vec out = lie;
  const u32 half = f.inv(2);
  for (std::size_t x = 0; x < bm.n; ++x)
    for (std::size_t y = x + 1; y < bm.n; ++y) {
      const u32 cc = f.mul(half, f.mul(lie[x], lie[y]));
      if (!cc) continue;
      for (std::size_t k = 0; k < bm.m(); ++k) out[bm.n + k] = f.sub(out[bm.n + k], f.mul(cc, bm.slices[k](x, y)));
    }
  return out;
}

Mat normal_form_element(const BaerMap& bm, const Vec& nf, const Field& f, std::size_t side) {
  Mat x = Mat::identity(f, side);
  for (std::size_t a = 0; a < bm.n; ++a) x = x * mat_pow(bm.basis[a], nf[a]);
  for (std::size_t k = 0; k < bm.m(); ++k) x = x * mat_pow(bm.center[k], nf[bm.n + k]);
  return x;
}

}  // namespace

std::optional<std::vector<Mat>> find_group_isomorphism(const MatrixGroup& g, const MatrixGroup& h,
                                                       const DecisionOracle& oracle, u64 budget,
                                                       SearchStats* stats) {
  require(g.field == h.field, ErrorKind::Dimension, "groups over different fields");
  const Field& f = g.field;
  const BaerMap bg = baer_alt(g, budget), bh = baer_alt(h, budget);
  if (bg.n != bh.n || bg.m() != bh.m()) return std::nullopt;
  const std::size_t n = bg.n, m = bg.m();

  // Linear parts of an isometry G -> H in Lie coordinates: v -> vmap v, w -> wmap w.
  Mat vmap = Mat::identity(f, n), wmap = Mat::identity(f, m);
  if (m > 0 && n > 0) {
    auto w = find_isometry(bg.slices, bh.slices, oracle, budget, stats);
    if (!w) return std::nullopt;
    const Mat& p = w->mats[0];
    // Both tuples are bases of their spans, so the mixing is exact and unique.
    auto r = solve_mixing(congruence(bg.slices, p), bh.slices, budget);
    require(r.has_value(), ErrorKind::OracleInconsistent, "isometry of commutator maps without an exact mixing");
    vmap = inverse(p);
    wmap = r->transpose();
  }

  auto image = [&](const Mat& x) {
    const Vec lie = to_baer(bg, bg.coords.at(x), f);
    Vec v(lie.begin(), lie.begin() + n), z(lie.begin() + n, lie.end());
    Vec out = vmap.apply(v);
    const Vec wz = wmap.apply(z);
    out.insert(out.end(), wz.begin(), wz.end());
    return normal_form_element(bh, from_baer(bh, out, f), f, h.n);
  };

  std::map<Mat, Mat> table;
  for (const auto& [x, nf] : bg.coords) table.emplace(x, image(x));
  for (const auto& [x, img] : table)
    for (const Mat& s : g.gens)
      require(table.at(x * s) == img * table.at(s), ErrorKind::WitnessInvalid, "group map is not a homomorphism");
  std::vector<Mat> images;
  for (const Mat& s : g.gens) images.push_back(table.at(s));
  MatrixGroup reached{f, h.n, images};
  require(enumerate_group(reached, budget).size() == bh.coords.size(), ErrorKind::WitnessInvalid, "group map is not onto");
  return images;
}

}  // namespace tik
