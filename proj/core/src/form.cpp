#include "tik/form.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "tik/enumerate.hpp"

namespace tik {

namespace {

void gen_exponents(std::size_t n, std::size_t d, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == n) {
    cur[pos] = static_cast<std::uint8_t>(d);
    out.push_back(cur);
    return;
  }
  for (std::size_t e = d + 1; e-- > 0;) {
    cur[pos] = static_cast<std::uint8_t>(e);
    gen_exponents(n, d - e, pos + 1, cur, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t n, std::size_t d) : n_(n), d_(d) {
  require(d < 255, ErrorKind::Precondition, "degree too large");
  if (n == 0) {
    if (d == 0) mons_.push_back({});
  } else {
    Exponent cur(n, 0);
    gen_exponents(n, d, 0, cur, mons_);
  }
  const u64 table = checked_pow(d + 1, n);
  require(table <= (1u << 24), ErrorKind::Budget, "monomial lookup table too large");
  lookup_.assign(table, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < mons_.size(); ++i) lookup_[key(mons_[i])] = i;
}

u64 MonomialBasis::key(const Exponent& e) const {
  u64 k = 0;
  for (auto x : e) k = k * (d_ + 1) + x;
  return k;
}

std::size_t MonomialBasis::index_of(const Exponent& e) const {
  require(e.size() == n_, ErrorKind::Dimension, "exponent vector length");
  std::size_t s = 0;
  for (auto x : e) s += x;
  require(s == d_, ErrorKind::Dimension, "exponent vector degree");
  return lookup_[key(e)];
}

const MonomialBasis& MonomialBasis::get(std::size_t n, std::size_t d) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot.reset(new MonomialBasis(n, d));
  return *slot;
}

FormD::FormD(const Field& f, std::size_t n, std::size_t d)
    : f_(f), n_(n), d_(d), basis_(&MonomialBasis::get(n, d)), c_(basis_->size(), 0) {}

void FormD::add(const Exponent& e, u32 v) {
  auto& c = c_[basis_->index_of(e)];
  c = f_.add(c, v % f_.p());
}

bool FormD::is_zero() const {
  for (u32 x : c_)
    if (x) return false;
  return true;
}

FormD FormD::scaled(u32 s) const {
  FormD out = *this;
  for (auto& x : out.c_) x = f_.mul(x, s);
  return out;
}

FormD FormD::operator+(const FormD& o) const {
  require(n_ == o.n_ && d_ == o.d_ && f_ == o.f_, ErrorKind::Dimension, "form sum: shape");
  FormD out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = f_.add(c_[i], o.c_[i]);
  return out;
}

FormD FormD::linear(const Field& f, const Vec& coeffs) {
  FormD out(f, coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponent e(coeffs.size(), 0);
    e[i] = 1;
    out.set(e, coeffs[i]);
  }
  return out;
}

FormD FormD::constant(const Field& f, std::size_t n, u32 c) {
  FormD out(f, n, 0);
  out.c_[0] = c % f.p();
  return out;
}

FormD multiply(const FormD& a, const FormD& b) {
  require(a.vars() == b.vars() && a.field() == b.field(), ErrorKind::Dimension, "form product: shape");
  const Field& f = a.field();
  FormD out(f, a.vars(), a.degree() + b.degree());
  const auto& ba = a.basis();
  const auto& bb = b.basis();
  Exponent e(a.vars());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    u32 ca = a.coeffs()[i];
    if (!ca) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      u32 cb = b.coeffs()[j];
      if (!cb) continue;
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint8_t>(ba.at(i)[v] + bb.at(j)[v]);
      out.add(e, f.mul(ca, cb));
    }
  }
  return out;
}

FormD act_form(const FormD& f, const Mat& p) {
  const std::size_t n = f.vars(), d = f.degree();
  require(p.rows() == n && p.cols() == n, ErrorKind::Dimension, "act_form: matrix shape");
  const Field& fld = f.field();
  // powers[i][k] = (row i of P . x)^k
  std::vector<std::vector<FormD>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    FormD lin = FormD::linear(fld, p.row(i));
    powers[i].push_back(FormD::constant(fld, n, 1));
    for (std::size_t k = 1; k <= d; ++k) powers[i].push_back(multiply(powers[i].back(), lin));
  }
  FormD out(fld, n, d);
  for (std::size_t m = 0; m < f.basis().size(); ++m) {
    u32 c = f.coeffs()[m];
    if (!c) continue;
    const Exponent& e = f.basis().at(m);
    FormD term = FormD::constant(fld, n, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) term = multiply(term, powers[i][e[i]]);
    out = out + term;
  }
  return out;
}

FormD extend_vars(const FormD& f, std::size_t extra) {
  FormD out(f.field(), f.vars() + extra, f.degree());
  for (std::size_t m = 0; m < f.basis().size(); ++m) {
    if (!f.coeffs()[m]) continue;
    Exponent e = f.basis().at(m);
    e.resize(f.vars() + extra, 0);
    out.set(e, f.coeffs()[m]);
  }
  return out;
}

FormD drop_last_var(const FormD& f) {
  require(f.vars() >= 1, ErrorKind::Dimension, "drop_last_var on a form without variables");
  FormD out(f.field(), f.vars() - 1, f.degree());
  for (std::size_t m = 0; m < f.basis().size(); ++m) {
    const Exponent& e = f.basis().at(m);
    if (!f.coeffs()[m] || e.back() != 0) continue;
    out.set(Exponent(e.begin(), e.end() - 1), f.coeffs()[m]);
  }
  return out;
}

TensorD symmetrize_cubic(const FormD& f) {
  require(f.degree() == 3, ErrorKind::Precondition, "symmetrize_cubic needs a cubic form");
  require(f.p() >= 5, ErrorKind::Unsupported, "symmetrization needs characteristic coprime to 6");
  const Field& fld = f.field();
  const std::size_t n = f.vars();
  TensorD t(fld, {n, n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Exponent e(n, 0);
        ++e[i], ++e[j], ++e[k];
        // ordered triples sharing this multiset: 3! / prod(e!)
        u32 orderings = 6;
        for (auto x : e) orderings /= (x == 3 ? 6 : x == 2 ? 2 : 1);
        t.at({i, j, k}) = fld.div(f.coeff(e), orderings);
      }
  return t;
}

FormD evaluate_diag(const TensorD& t) {
  require(t.order() == 3 && t.dims()[0] == t.dims()[1] && t.dims()[1] == t.dims()[2], ErrorKind::Dimension,
          "evaluate_diag needs an n x n x n array");
  const std::size_t n = t.dims()[0];
  FormD out(t.field(), n, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Exponent e(n, 0);
        ++e[i], ++e[j], ++e[k];
        out.add(e, t.at({i, j, k}));
      }
  return out;
}

Mat invariant_directions(const FormD& f, u64 budget) {
  const Field& fld = f.field();
  const std::size_t n = f.vars();
  const u64 total = checked_pow(fld.p(), n);
  check_budget(total, budget, "invariant direction scan");
  Span s(fld, n);
  for (u64 idx = 1; idx < total; ++idx) {
    Vec u = vec_from_index(idx, n, fld.p());
    if (s.contains(u)) continue;
    // f(x + t u) over the variables (x, t): substitute x_i -> x_i + u_i t.
    Mat shift = Mat::identity(fld, n + 1);
    for (std::size_t i = 0; i < n; ++i) shift(i, n) = u[i];
    if (act_form(extend_vars(f, 1), shift) == extend_vars(f, 1)) s.add(u);
  }
  Mat basis(fld, n, s.dim());
  for (std::size_t t = 0; t < s.dim(); ++t)
    for (std::size_t i = 0; i < n; ++i) basis(i, t) = s.generators()[t][i];
  return basis;
}

}  // namespace tik
