#include "dgt/linalg.hpp"

#include <stdexcept>

namespace dgt {

Vec zero_vec(RingPtr ring, std::size_t n) { return Vec(n, ring->zero()); }

Vec unit_vec(RingPtr ring, std::size_t n, std::size_t i) {
  Vec v = zero_vec(ring, n);
  v.at(i) = ring->one();
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::size_t first_nonzero(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  r += b;
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  r -= b;
  return r;
}

Vec operator-(const Vec& a) {
  Vec r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(-x);
  return r;
}

Vec operator*(const Scalar& s, const Vec& v) {
  Vec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(s * x);
  return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

void axpy(Vec& a, const Scalar& s, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += s * b[i];
}

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(i, v[i]);
  return s;
}

void axpy(Vec& a, const Scalar& s, const SparseVec& b) {
  if (s.is_zero()) return;
  for (const auto& [i, c] : b) a[i] += s * c;
}

// ---------------------------------------------------------------------------

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, ring->zero()) {}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring->one();
  return m;
}

Matrix Matrix::from_columns(RingPtr ring, std::size_t rows, const std::vector<Vec>& columns) {
  Matrix m(ring, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

void Matrix::set_column(std::size_t c, const Vec& v) {
  if (v.size() != rows_) throw std::invalid_argument("column size mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Vec Matrix::row(std::size_t r) const { return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_), data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)); }

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  Vec out = zero_vec(ring_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& m = (*this)(r, c);
      if (!m.is_zero()) out[r] += m * v[c];
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product size mismatch");
  Matrix out(ring_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Scalar& b = other(k, c);
        if (!b.is_zero()) out(r, c) += a * b;
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix sum size mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const { return *this + (-other); }

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix out(ring_, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(rows[r], cols[c]);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---------------------------------------------------------------------------

namespace {

struct Echelon {
  Matrix reduced;                   // reduced row echelon form of [A | b]
  std::vector<std::size_t> pivots;  // pivot column per pivot row
  bool non_unit = false;
};

// Reduces the augmented matrix; only the first `unknowns` columns are pivot candidates.
Echelon reduce(Matrix m, std::size_t unknowns) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < unknowns && row < m.rows(); ++col) {
    std::size_t pivot = m.rows();
    bool nonzero_seen = false;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      nonzero_seen = true;
      if (m(r, col).is_unit()) {
        pivot = r;
        break;
      }
    }
    if (pivot == m.rows()) {
      if (nonzero_seen) e.non_unit = true;
      continue;
    }
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Scalar inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

}  // namespace

LinearSolution solve_linear(const Matrix& a, const Vec& rhs) {
  if (rhs.size() != a.rows()) throw std::invalid_argument("right-hand side size mismatch");
  RingPtr ring = a.ring();
  Matrix aug(ring, a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = rhs[r];
  }
  Echelon e = reduce(std::move(aug), a.cols());
  LinearSolution sol;
  if (e.non_unit) {
    sol.status = LinearSolution::Status::non_unit_pivot;
    return sol;
  }
  const std::size_t n = a.cols();
  for (std::size_t r = e.pivots.size(); r < a.rows(); ++r) {
    if (!e.reduced(r, n).is_zero()) {
      sol.status = LinearSolution::Status::inconsistent;
      return sol;
    }
  }
  sol.status = LinearSolution::Status::solvable;
  sol.particular = zero_vec(ring, n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    sol.particular[e.pivots[r]] = e.reduced(r, n);
    is_pivot[e.pivots[r]] = true;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec k = zero_vec(ring, n);
    k[free] = ring->one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k[e.pivots[r]] = -e.reduced(r, free);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

std::vector<Vec> kernel_basis(const Matrix& a) {
  LinearSolution s = solve_linear(a, zero_vec(a.ring(), a.rows()));
  if (!s.solvable()) throw std::domain_error("kernel requires unit pivots");
  return s.kernel;
}

std::size_t rank(const Matrix& a) {
  Echelon e = reduce(a, a.cols());
  if (e.non_unit) throw std::domain_error("rank requires unit pivots");
  return e.pivots.size();
}

std::vector<std::size_t> greedy_extension(RingPtr ring, std::size_t dim, const std::vector<Vec>& base,
                                          const std::vector<Vec>& candidates) {
  std::vector<Vec> current = base;
  std::size_t current_rank = current.empty() ? 0 : rank(Matrix::from_columns(ring, dim, current));
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    current.push_back(candidates[i]);
    const std::size_t r = rank(Matrix::from_columns(ring, dim, current));
    if (r > current_rank) {
      current_rank = r;
      chosen.push_back(i);
    } else {
      current.pop_back();
    }
  }
  return chosen;
}

// ---------------------------------------------------------------------------

HomologyAt::HomologyAt(const Matrix& incoming, const Matrix& outgoing, const std::vector<Vec>& preferred)
    : incoming_(incoming), outgoing_(outgoing) {
  RingPtr ring = incoming.ring() ? incoming.ring() : outgoing.ring();
  const std::size_t dim = incoming.rows();
  if (outgoing.cols() != dim) throw std::invalid_argument("homology: incompatible maps");
  cycles_ = kernel_basis(outgoing);

  std::vector<Vec> images;
  for (std::size_t c = 0; c < incoming.cols(); ++c) images.push_back(incoming.column(c));
  for (std::size_t i : greedy_extension(ring, dim, {}, images)) boundaries_.push_back(images[i]);

  std::vector<Vec> candidates;
  for (const auto& p : preferred)
    if (is_zero(outgoing.apply(p)) && !is_zero(p)) candidates.push_back(p);
  candidates.insert(candidates.end(), cycles_.begin(), cycles_.end());
  for (std::size_t i : greedy_extension(ring, dim, boundaries_, candidates)) representatives_.push_back(candidates[i]);

  std::vector<Vec> cols = representatives_;
  cols.insert(cols.end(), boundaries_.begin(), boundaries_.end());
  reps_then_boundaries_ = Matrix::from_columns(ring, dim, cols);
}

bool HomologyAt::is_cycle(const Vec& y) const { return is_zero(outgoing_.apply(y)); }

Vec HomologyAt::class_coordinates(const Vec& cycle) const {
  if (!is_cycle(cycle)) throw std::invalid_argument("class_coordinates: not a cycle");
  LinearSolution s = solve_linear(reps_then_boundaries_, cycle);
  if (!s.solvable()) throw std::logic_error("class_coordinates: cycle outside reps + boundaries");
  return Vec(s.particular.begin(), s.particular.begin() + static_cast<std::ptrdiff_t>(representatives_.size()));
}

std::optional<Vec> HomologyAt::preimage(const Vec& y) const {
  LinearSolution s = solve_linear(incoming_, y);
  if (!s.solvable()) return std::nullopt;
  return s.particular;
}

}  // namespace dgt
