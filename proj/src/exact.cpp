#include "handlebody/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <sstream>

namespace handlebody {

using boost::multiprecision::abs;

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::operator*(const IMat& o) const {
  if (c_ != o.r_) throw InternalError("matrix shape mismatch");
  IMat out(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Big& f = at(i, k);
      if (f == 0) continue;
      for (int j = 0; j < o.c_; ++j) out.at(i, j) += f * o.at(k, j);
    }
  return out;
}

IMat IMat::transposed() const {
  IMat out(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
  return out;
}

void IMat::swap_rows(int i, int j) {
  for (int k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
}
void IMat::swap_cols(int i, int j) {
  for (int k = 0; k < r_; ++k) std::swap(at(k, i), at(k, j));
}
void IMat::add_row(int dst, int src, const Big& f) {
  for (int k = 0; k < c_; ++k) at(dst, k) += f * at(src, k);
}
void IMat::add_col(int dst, int src, const Big& f) {
  for (int k = 0; k < r_; ++k) at(k, dst) += f * at(k, src);
}
void IMat::negate_row(int i) {
  for (int k = 0; k < c_; ++k) at(i, k) = -at(i, k);
}
void IMat::negate_col(int i) {
  for (int k = 0; k < r_; ++k) at(k, i) = -at(k, i);
}

std::string IMat::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << at(i, j);
    os << "\n";
  }
  return os.str();
}

Big determinant(const IMat& m) {
  if (m.rows() != m.cols()) throw InternalError("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  IMat a = m;
  Big prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

bool is_symmetric(const IMat& m) {
  if (m.rows() != m.cols()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m.at(i, j) != m.at(j, i)) return false;
  return true;
}

SmithResult smith_normal_form(const IMat& m) {
  int r = m.rows(), c = m.cols();
  SmithResult res{IMat::identity(r), m, IMat::identity(c)};
  IMat& d = res.d;
  IMat& u = res.u;
  IMat& v = res.v;

  int t = 0;
  int nmin = std::min(r, c);
  while (t < nmin) {
    // locate smallest nonzero entry in the lower-right block
    int pi = -1, pj = -1;
    Big best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (d.at(i, j) != 0 && (pi < 0 || abs(d.at(i, j)) < best)) {
          best = abs(d.at(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
    }
    if (pj != t) {
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);
    }
    bool dirty = false;
    for (int i = t + 1; i < r; ++i)
      if (d.at(i, t) != 0) {
        Big q = d.at(i, t) / d.at(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d.at(i, t) != 0) dirty = true;
      }
    for (int j = t + 1; j < c; ++j)
      if (d.at(t, j) != 0) {
        Big q = d.at(t, j) / d.at(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d.at(t, j) != 0) dirty = true;
      }
    if (dirty) continue;  // pivot shrank, repeat
    // force divisibility of the remaining block by the pivot
    int bi = -1;
    for (int i = t + 1; i < r && bi < 0; ++i)
      for (int j = t + 1; j < c; ++j)
        if (d.at(i, j) % d.at(t, t) != 0) {
          bi = i;
          break;
        }
    if (bi >= 0) {
      d.add_row(t, bi, 1);
      u.add_row(t, bi, 1);
      continue;
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }

  // certificate
  IMat check = u * m * v;
  if (!(check == d)) throw InternalError("smith certificate failed: u*m*v != d");
  Big du = determinant(u), dv = determinant(v);
  if (abs(du) != 1 || abs(dv) != 1)
    throw InternalError("smith certificate failed: transforms not unimodular");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (i != j && d.at(i, j) != 0)
        throw InternalError("smith certificate failed: not diagonal");
  for (int k = 0; k + 1 < nmin; ++k) {
    if (d.at(k + 1, k + 1) != 0 && d.at(k, k) == 0)
      throw InternalError("smith certificate failed: zero before nonzero");
    if (d.at(k, k) != 0 && d.at(k + 1, k + 1) != 0 &&
        d.at(k + 1, k + 1) % d.at(k, k) != 0)
      throw InternalError("smith certificate failed: divisibility chain");
  }
  return res;
}

std::string AbelianGroupSNF::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < free_rank; ++i) {
    os << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (const Big& f : invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << f;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianGroupSNF cokernel(const IMat& m) {
  AbelianGroupSNF g;
  if (m.rows() == 0) return g;
  SmithResult s = smith_normal_form(m);
  int nmin = std::min(m.rows(), m.cols());
  int nonzero = 0;
  for (int k = 0; k < nmin; ++k)
    if (s.d.at(k, k) != 0) {
      ++nonzero;
      if (s.d.at(k, k) > 1) g.invariant_factors.push_back(s.d.at(k, k));
    }
  g.free_rank = m.rows() - nonzero;
  return g;
}

int signature_elimination(const IMat& sym) {
  if (!is_symmetric(sym)) throw PreconditionError("matrix not symmetric");
  int n = sym.rows();
  using boost::multiprecision::cpp_rational;
  std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = cpp_rational(sym.at(i, j));
  std::vector<bool> done(n, false);
  int sig = 0;
  int remaining = n;
  while (remaining > 0) {
    // prefer a nonzero diagonal pivot
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && a[i][i] != 0) {
        p = i;
        break;
      }
    if (p >= 0) {
      sig += a[p][p] > 0 ? 1 : -1;
      for (int i = 0; i < n; ++i) {
        if (done[i] || i == p || a[i][p] == 0) continue;
        cpp_rational f = a[i][p] / a[p][p];
        for (int j = 0; j < n; ++j) {
          if (done[j] || j == p) continue;
          a[i][j] -= f * a[p][j];
        }
      }
      for (int j = 0; j < n; ++j)
        if (!done[j]) a[p][j] = a[j][p] = 0;
      done[p] = true;
      --remaining;
      continue;
    }
    // all active diagonal entries zero: find a hyperbolic pair
    int hi = -1, hj = -1;
    for (int i = 0; i < n && hi < 0; ++i) {
      if (done[i]) continue;
      for (int j = i + 1; j < n; ++j)
        if (!done[j] && a[i][j] != 0) {
          hi = i;
          hj = j;
          break;
        }
    }
    if (hi < 0) break;  // the rest is the null space
    // split off the two-block (0 b; b 0): contributes (+1, -1)
    cpp_rational b = a[hi][hj];
    for (int i = 0; i < n; ++i) {
      if (done[i] || i == hi || i == hj) continue;
      cpp_rational fi = a[i][hj] / b;  // clear column hi via row hj
      cpp_rational fj = a[i][hi] / b;
      for (int j = 0; j < n; ++j) {
        if (done[j] || j == hi || j == hj) continue;
        a[i][j] -= fi * a[hi][j] + fj * a[hj][j];
      }
    }
    for (int j = 0; j < n; ++j)
      if (!done[j]) a[hi][j] = a[j][hi] = a[hj][j] = a[j][hj] = 0;
    done[hi] = done[hj] = true;
    remaining -= 2;
  }
  return sig;
}

int signature_minors(const IMat& sym, unsigned seed) {
  if (!is_symmetric(sym)) throw PreconditionError("matrix not symmetric");
  int n = sym.rows();
  if (n == 0) return 0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    // random unimodular congruence keeps the signature
    IMat u = IMat::identity(n);
    if (attempt > 0) {
      for (int k = 0; k < n + attempt; ++k) {
        int i = int(rng() % n), j = int(rng() % n);
        if (i == j) continue;
        u.add_row(i, j, small(rng));
      }
    }
    IMat m = u * sym * u.transposed();
    // leading principal minors, all nonzero up to the rank
    std::vector<Big> minors(n + 1);
    minors[0] = 1;
    bool good = true;
    int rank = n;
    for (int k = 1; k <= n; ++k) {
      IMat sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(i, j);
      minors[k] = determinant(sub);
      if (minors[k] == 0) {
        // acceptable only if the whole remaining block is degenerate rank
        rank = k - 1;
        for (int kk = k + 1; kk <= n; ++kk) {
          IMat sub2(kk, kk);
          for (int i = 0; i < kk; ++i)
            for (int j = 0; j < kk; ++j) sub2.at(i, j) = m.at(i, j);
          if (determinant(sub2) != 0) {
            good = false;
            break;
          }
        }
        break;
      }
    }
    if (!good) continue;
    // verify the claimed rank against the actual rank
    if (rank < n) {
      SmithResult s = smith_normal_form(m);
      int real_rank = 0;
      for (int k = 0; k < n; ++k)
        if (s.d.at(k, k) != 0) ++real_rank;
      if (real_rank != rank) continue;
    }
    int neg = 0;
    for (int k = 1; k <= rank; ++k)
      if ((minors[k - 1] > 0) != (minors[k] > 0)) ++neg;
    return (rank - neg) - neg;
  }
  throw InternalError("signature_minors: no generic congruence found");
}

IntegerSymmetricForm make_form(const IMat& sym) {
  if (!is_symmetric(sym)) throw PreconditionError("matrix not symmetric");
  IntegerSymmetricForm f;
  f.matrix = sym;
  SmithResult s = smith_normal_form(sym);
  f.rank = 0;
  for (int k = 0; k < sym.rows(); ++k)
    if (s.d.at(k, k) != 0) ++f.rank;
  f.signature = signature_elimination(sym);
  f.det = determinant(sym);
  bool even = true;
  for (int i = 0; i < sym.rows(); ++i)
    if (sym.at(i, i) % 2 != 0) even = false;
  f.parity = even ? Parity::even : Parity::odd;
  return f;
}

}  // namespace handlebody
