#include "dgt/chen_hpt.hpp"

#include <stdexcept>

namespace dgt {

namespace {

Matrix rows_of(const Matrix& m, std::size_t first, std::size_t count) {
  std::vector<std::size_t> rows(count), cols(m.cols());
  for (std::size_t i = 0; i < count; ++i) rows[i] = first + i;
  for (std::size_t j = 0; j < m.cols(); ++j) cols[j] = j;
  return m.block(rows, cols);
}

std::vector<SparseVec> sparse_columns(const Matrix& m) {
  std::vector<SparseVec> out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) out[c].emplace_back(r, m(r, c));
  return out;
}

bool unit_leads(const DGAlgebra& omega, const Splitting& s) {
  return !s.h_basis.empty() && s.h_basis.front() == omega.unit();
}

int word_degree(const TensorCoalgebra& t, const std::vector<std::size_t>& w, std::size_t from, std::size_t to) {
  int deg = 0;
  for (std::size_t i = from; i < to; ++i) deg += t.letters.degree(w[i]);
  return deg;
}

}  // namespace

Splitting splitting_from_dga(const DGAlgebra& omega) {
  if (auto bad = find_dga_violation(omega)) throw std::invalid_argument("not a DGA: " + bad->describe());
  RingPtr r = omega.ring();
  const std::size_t n = omega.dim();
  const Matrix& d = omega.differential();

  std::vector<Vec> preferred{omega.unit()};
  for (std::size_t i = 0; i < n; ++i) preferred.push_back(unit_vec(r, n, i));
  HomologyAt hom(d, d, preferred);

  Splitting s;
  s.h_basis = hom.representatives();
  std::vector<Vec> standard;
  for (std::size_t i = 0; i < n; ++i) standard.push_back(unit_vec(r, n, i));
  for (std::size_t i : greedy_extension(r, n, hom.cycles(), standard)) {
    s.w_basis.push_back(standard[i]);
    s.b_basis.push_back(omega.d(standard[i]));
  }

  std::vector<Vec> all = s.h_basis;
  all.insert(all.end(), s.b_basis.begin(), s.b_basis.end());
  all.insert(all.end(), s.w_basis.begin(), s.w_basis.end());
  if (all.size() != n) throw std::logic_error("splitting: H, B and W do not span");
  const Matrix change = Matrix::from_columns(r, n, all);

  Matrix inverse(r, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto sol = solve_linear(change, unit_vec(r, n, j));
    if (!sol.solvable()) throw std::logic_error("splitting: basis change is singular");
    inverse.set_column(j, sol.particular);
  }
  const std::size_t nh = s.h_basis.size(), nb = s.b_basis.size();
  s.h_coordinates = rows_of(inverse, 0, nh);
  const Matrix b_coords = rows_of(inverse, nh, nb);
  const Matrix w_coords = rows_of(inverse, nh + nb, nb);
  const Matrix hm = Matrix::from_columns(r, n, s.h_basis);
  const Matrix bm = Matrix::from_columns(r, n, s.b_basis);
  const Matrix wm = Matrix::from_columns(r, n, s.w_basis);
  s.p_h = nh ? hm * s.h_coordinates : Matrix(r, n, n);
  s.p_b = nb ? bm * b_coords : Matrix(r, n, n);
  s.p_w = nb ? wm * w_coords : Matrix(r, n, n);
  s.homotopy = nb ? wm * b_coords : Matrix(r, n, n);
  return s;
}

SplittingCheck check_splitting(const DGAlgebra& omega, const Splitting& s) {
  RingPtr r = omega.ring();
  const std::size_t n = omega.dim();
  const Matrix id = Matrix::identity(r, n);
  const Matrix& d = omega.differential();
  const Matrix& h = s.homotopy;
  SplittingCheck out;
  out.projections_sum_to_identity = s.p_h + s.p_b + s.p_w == id;
  const std::vector<const Matrix*> ps{&s.p_h, &s.p_b, &s.p_w};
  bool ok = true;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const Matrix prod = *ps[i] * *ps[j];
      ok = ok && (i == j ? prod == *ps[i] : prod.is_zero());
    }
  out.projections_idempotent_and_orthogonal = ok;
  out.homotopy_identity = d * h + h * d == id - s.p_h;
  bool side = (h * h).is_zero() && (s.p_h * h).is_zero();
  for (const Vec& v : s.h_basis) side = side && is_zero(h.apply(v)) && is_zero(omega.d(v));
  out.side_conditions = side;
  return out;
}

FormalConnection build_formal_connection(const DGAlgebra& omega, const Splitting& s, int N) {
  if (N < 1) throw std::invalid_argument("word length bound must be at least 1");
  RingPtr r = omega.ring();
  const GradedModule& om = omega.module();
  const std::size_t first = unit_leads(omega, s) ? 1 : 0;

  FormalConnection fc;
  fc.truncation = N;
  std::vector<BasisElement> letters;
  for (std::size_t k = first; k < s.h_basis.size(); ++k) {
    const Vec& rep = s.h_basis[k];
    const auto deg = om.degree_of(rep);
    if (!deg) throw std::logic_error("cohomology representative is not homogeneous");
    const std::size_t lead = first_nonzero(rep);
    const bool plain = to_sparse(rep).size() == 1 && rep[lead].is_one();
    letters.push_back({plain ? "s" + om.name(lead) : "s(" + om.format(rep) + ")", *deg + 1});
    fc.letter_class.push_back(k);
  }
  fc.words = tensor_coalgebra(r, letters, N);
  const TensorCoalgebra& t = fc.words;
  const std::size_t nw = t.coalgebra.dim();
  const std::size_t nl = letters.size();

  std::vector<Vec> omega_cols(nw, om.zero());
  std::vector<SparseVec> co(nw);
  for (std::size_t i = 0; i < nl; ++i) omega_cols[t.word_index({i})] = s.h_basis[fc.letter_class[i]];

  for (std::size_t w = 0; w < nw; ++w) {
    const auto& word = t.words[w];
    const std::size_t n = word.size();
    if (n < 2) continue;
    Vec e = om.zero();
    for (std::size_t k = 1; k < n; ++k) {
      const std::size_t left = t.word_index({word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k)});
      const std::size_t right = t.word_index({word.begin() + static_cast<std::ptrdiff_t>(k), word.end()});
      axpy(e, -signed_one(r, koszul_sign(1, word_degree(t, word, 0, k))),
           omega.mul(omega_cols[left], omega_cols[right]));
    }
    for (std::size_t j = 2; j < n; ++j)
      for (std::size_t i = 0; i + j <= n; ++i) {
        const std::size_t mid = t.word_index({word.begin() + static_cast<std::ptrdiff_t>(i),
                                              word.begin() + static_cast<std::ptrdiff_t>(i + j)});
        const Scalar sign = signed_one(r, koszul_sign(1, word_degree(t, word, 0, i)));
        for (const auto& [l, c] : co[mid]) {
          std::vector<std::size_t> out(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
          out.push_back(l);
          out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(i + j), word.end());
          axpy(e, sign * c, omega_cols[t.word_index(out)]);
        }
      }
    if (!is_zero(omega.d(e)))
      throw std::logic_error("defect on word '" + t.coalgebra.module().name(w) + "' is not a cycle");
    const Vec coords = s.h_coordinates.apply(e);
    if (first == 1 && !coords[0].is_zero())
      throw std::logic_error("defect on word '" + t.coalgebra.module().name(w) + "' has a unit component");
    for (std::size_t i = 0; i < nl; ++i) {
      const Scalar& c = coords[fc.letter_class[i]];
      if (!c.is_zero()) co[w].emplace_back(i, -c);
    }
    omega_cols[w] = -s.homotopy.apply(e);
  }

  fc.omega = Matrix::from_columns(r, om.dim(), omega_cols);
  fc.corestriction = Matrix(r, nl, nw);
  for (std::size_t w = 0; w < nw; ++w)
    for (const auto& [l, c] : co[w]) fc.corestriction(l, w) = c;
  fc.delta = coderivation_from_corestrictions(t, fc.corestriction);
  return fc;
}

bool ConnectionReport::ok() const {
  if (!coderivation) return false;
  for (const auto& l : lengths)
    if (l.residual_violations || l.delta_square_violations || l.normalization_violations) return false;
  return true;
}

ConnectionReport verify_formal_connection(const DGAlgebra& omega, const Splitting& s, const FormalConnection& fc) {
  const TensorCoalgebra& t = fc.words;
  const DGCoalgebra& c = t.coalgebra;
  const GradedModule& cm = c.module();
  RingPtr r = omega.ring();
  const std::size_t nw = c.dim();
  if (fc.omega.rows() != omega.dim() || fc.omega.cols() != nw || fc.delta.rows() != nw || fc.delta.cols() != nw ||
      fc.corestriction.rows() != t.letters.dim() || fc.corestriction.cols() != nw)
    throw std::invalid_argument("formal connection shapes do not match");

  ConnectionReport report;
  report.coderivation = corestriction(t, fc.delta) == fc.corestriction &&
                        coderivation_from_corestrictions(t, fc.corestriction) == fc.delta;

  std::vector<Vec> om(nw);
  for (std::size_t w = 0; w < nw; ++w) om[w] = fc.omega.column(w);
  const auto delta = sparse_columns(fc.delta);

  report.lengths.resize(static_cast<std::size_t>(fc.truncation) + 1);
  for (std::size_t l = 0; l < report.lengths.size(); ++l) report.lengths[l].length = static_cast<int>(l);

  for (std::size_t w = 0; w < nw; ++w) {
    LengthReport& lr = report.lengths[t.length(w)];
    bool bad = false;

    Vec res = omega.d(om[w]);
    for (const auto& [u, k] : delta[w]) axpy(res, k, om[u]);
    for (const auto& term : c.coproduct(w)) {
      const Scalar sign = signed_one(r, koszul_sign(1, cm.degree(term.left)));
      axpy(res, -(sign * term.coef), omega.mul(om[term.left], om[term.right]));
    }
    if (!is_zero(res)) {
      ++lr.residual_violations;
      bad = true;
    }

    Vec sq = zero_vec(r, nw);
    for (const auto& [u, k] : delta[w]) axpy(sq, k, delta[u]);
    if (!is_zero(sq)) {
      ++lr.delta_square_violations;
      bad = true;
    }

    bool normal = true;
    const std::size_t len = t.length(w);
    if (len == 0) {
      normal = is_zero(om[w]);
    } else if (len == 1) {
      const std::size_t letter = t.words[w][0];
      normal = letter < fc.letter_class.size() && fc.letter_class[letter] < s.h_basis.size() &&
               om[w] == s.h_basis[fc.letter_class[letter]];
    } else {
      normal = s.p_w.apply(om[w]) == om[w];
    }
    if (len <= 1 && !is_zero(fc.corestriction.column(w))) normal = false;
    if (!normal) {
      ++lr.normalization_violations;
      bad = true;
    }
    if (bad && !lr.first_word) lr.first_word = cm.name(w);
  }
  return report;
}

std::map<int, std::size_t> bar_model_homology(const FormalConnection& fc) {
  return homology_dimensions(fc.words.coalgebra.module(), fc.delta);
}

}  // namespace dgt
