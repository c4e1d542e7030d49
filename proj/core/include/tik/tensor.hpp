#pragma once

#include <array>
#include <string>
#include <vector>

#include "tik/matspace.hpp"

namespace tik {

enum class Direction { Frontal, Lateral, Horizontal };

// Dense l x n x m array, index (i, j, k) stored with i slowest and k fastest.
class Tensor3 {
 public:
  Tensor3() : f_(Field::trusted(2)) {}
  Tensor3(const Field& f, std::size_t l, std::size_t n, std::size_t m) : f_(f), d_{l, n, m}, a_(l * n * m, 0) {}
  // Frontal slices, each l x n.
  static Tensor3 from_frontal(const MatrixTuple& slices);
  static Tensor3 from_frontal(const Field& f, std::size_t l, std::size_t n, const MatrixTuple& slices);

  const Field& field() const { return f_; }
  u32 p() const { return f_.p(); }
  std::size_t dim(int d) const { return d_[d]; }
  std::array<std::size_t, 3> dims() const { return d_; }
  std::size_t size() const { return a_.size(); }

  u32& operator()(std::size_t i, std::size_t j, std::size_t k) { return a_[(i * d_[1] + j) * d_[2] + k]; }
  u32 operator()(std::size_t i, std::size_t j, std::size_t k) const { return a_[(i * d_[1] + j) * d_[2] + k]; }
  const std::vector<u32>& data() const { return a_; }
  std::vector<u32>& data() { return a_; }

  bool operator==(const Tensor3& o) const { return f_ == o.f_ && d_ == o.d_ && a_ == o.a_; }
  bool operator!=(const Tensor3& o) const { return !(*this == o); }
  bool operator<(const Tensor3& o) const { return d_ != o.d_ ? d_ < o.d_ : a_ < o.a_; }

  // frontal A_k(i,j), lateral L_j(i,k), horizontal H_i(j,k)
  MatrixTuple slices(Direction d) const;
  MatrixTuple frontal() const { return slices(Direction::Frontal); }
  // New direction t is old direction order[t].
  Tensor3 permuted(const std::array<int, 3>& order) const;
  bool is_zero() const;

 private:
  Field f_;
  std::array<std::size_t, 3> d_{0, 0, 0};
  std::vector<u32> a_;
};

// Dense n_1 x ... x n_d array, first index slowest.
class TensorD {
 public:
  TensorD() : f_(Field::trusted(2)) {}
  TensorD(const Field& f, std::vector<std::size_t> dims);
  static TensorD from_tensor3(const Tensor3& t);
  Tensor3 to_tensor3() const;

  const Field& field() const { return f_; }
  u32 p() const { return f_.p(); }
  std::size_t order() const { return d_.size(); }
  const std::vector<std::size_t>& dims() const { return d_; }
  std::size_t size() const { return a_.size(); }
  u32& at(const std::vector<std::size_t>& idx) { return a_[offset(idx)]; }
  u32 at(const std::vector<std::size_t>& idx) const { return a_[offset(idx)]; }
  const std::vector<u32>& data() const { return a_; }
  std::vector<u32>& data() { return a_; }
  std::size_t offset(const std::vector<std::size_t>& idx) const;
  std::vector<std::size_t> index(std::size_t offset) const;

  bool operator==(const TensorD& o) const { return f_ == o.f_ && d_ == o.d_ && a_ == o.a_; }
  bool operator!=(const TensorD& o) const { return !(*this == o); }

 private:
  Field f_;
  std::vector<std::size_t> d_;
  std::vector<u32> a_;
};

// B(i',j',k') = sum A(i,j,k) x(i,i') y(j,j') z(k,k'). Matrices may be rectangular.
Tensor3 act3(const Tensor3& t, const Mat& x, const Mat& y, const Mat& z);
// Same contraction along one direction (0, 1 or 2).
Tensor3 mode_product(const Tensor3& t, int direction, const Mat& x);
TensorD actd(const TensorD& t, const std::vector<Mat>& mats);

enum class Tag {
  TI3,
  Equivalence,
  Isometry,
  PseudoIsometry,
  Conjugacy,
  AlgebraIso,
  TrilinearEq,
  FormEq,
  MonCodeEq,
  GraphIso,
  TId,
};

const char* tag_name(Tag t);
Tag tag_from_name(const std::string& s);

// Matrices per tag:
//   TI3, Equivalence         (X, Y, Z)
//   Isometry, PseudoIsometry (P, R)   slices P^t A_k P, mixed by R
//   Conjugacy                (P, R)   slices P^-1 A_k P, mixed by R
//   AlgebraIso               (P)      columns of P are the new basis
//   TrilinearEq              (P)
//   FormEq                   (P)      f(x) -> f(P x)
//   MonCodeEq                (Q, D, P) code -> Q code D P, D diagonal, P permutation
//   GraphIso                 (P)      permutation matrix, P e_i = e_pi(i)
//   TId                      (P_1..P_d)
struct Witness {
  Tag tag = Tag::TI3;
  std::vector<Mat> mats;
  bool operator==(const Witness& o) const { return tag == o.tag && mats == o.mats; }
};

Witness identity_witness(Tag tag, const Field& f, const std::vector<std::size_t>& sizes);
// The witness w such that act(act(a, first), second) == act(a, w).
Witness compose(const Witness& first, const Witness& second);
Witness invert(const Witness& w);
void check_invertible(const Witness& w);

// The TI3 triple a tensor-valued tag reduces to.
std::array<Mat, 3> ti3_form(const Witness& w);
// Valid for TI3, Equivalence, Isometry, PseudoIsometry, Conjugacy, AlgebraIso, TrilinearEq.
Tensor3 act(const Tensor3& t, const Witness& w);
TensorD act(const TensorD& t, const Witness& w);

// Matrix tuple view for span-valued tags.
MatrixTuple act_tuple(const MatrixTuple& t, const Witness& w);

// Nondegenerate core: selects independent slices direction by direction.
// core == act3(t, select[0], select[1], select[2]) and t == act3(core, expand[0], expand[1], expand[2]).
struct Core {
  Tensor3 t;
  std::array<Mat, 3> select;
  std::array<Mat, 3> expand;
};
Core nondegenerate_core(const Tensor3& t);
bool is_nondegenerate(const Tensor3& t);
std::size_t direction_rank(const Tensor3& t, int direction);

// Appends trailing length-one directions.
TensorD pad_to(const TensorD& t, std::size_t order);
Witness pad_witness_forward(const Witness& w, std::size_t order);
// (P_1, .., P_d, a_{d+1}, .., a_{d'}) -> (prod(a) P_1, P_2, .., P_d)
Witness pad_witness_recover(const Witness& w, std::size_t original_order);

}  // namespace tik
