#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "handlebody/errors.hpp"

namespace handlebody {

using Big = boost::multiprecision::cpp_int;

// Dense integer matrix, row major.
class IMat {
 public:
  IMat() = default;
  IMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}
  static IMat identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Big& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Big& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  IMat operator*(const IMat& o) const;
  IMat transposed() const;
  bool operator==(const IMat& o) const = default;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void add_row(int dst, int src, const Big& f);  // row dst += f * row src
  void add_col(int dst, int src, const Big& f);
  void negate_row(int i);
  void negate_col(int i);

  std::string to_string() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Big> a_;
};

Big determinant(const IMat& m);  // Bareiss, exact
bool is_symmetric(const IMat& m);

struct SmithResult {
  IMat u, d, v;  // u * m * v = d, u and v unimodular, d diagonal with
                 // divisibility chain
};

// Certificate (u*m*v = d, |det u| = |det v| = 1, chain) is checked on every
// call; failure is an internal error.
SmithResult smith_normal_form(const IMat& m);

struct AbelianGroupSNF {
  std::vector<Big> invariant_factors;  // each > 1, d_i | d_{i+1}
  int free_rank = 0;
  bool trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool operator==(const AbelianGroupSNF&) const = default;
  std::string to_string() const;
};

// Cokernel of an integer matrix acting on Z^rows.
AbelianGroupSNF cokernel(const IMat& m);

// Signature via exact rational symmetric elimination; zero pivots with a
// nonzero off-diagonal partner split off hyperbolic two-blocks.
int signature_elimination(const IMat& sym);

// Signature via sign changes of leading principal minors after a random
// unimodular congruence making all leading minors nonzero (Jacobi).
int signature_minors(const IMat& sym, unsigned seed = 12345);

enum class Parity { even, odd };

struct IntegerSymmetricForm {
  IMat matrix;
  int rank = 0;
  int signature = 0;
  Big det;
  Parity parity = Parity::even;
};

IntegerSymmetricForm make_form(const IMat& sym);

}  // namespace handlebody
