#include "lqf/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "lqf/error.hpp"

namespace lqf {

using boost::multiprecision::cpp_int;

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t end = start;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == start) throw SyntaxError(start, "expected digits in rational '" + std::string(text) + "'");
    return end;
  };
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::size_t end = digits(pos);
  cpp_int num(std::string(text.substr(pos, end - pos)));
  cpp_int den = 1;
  if (end < text.size() && text[end] == '/') {
    std::size_t dstart = end + 1;
    end = digits(dstart);
    den = cpp_int(std::string(text.substr(dstart, end - dstart)));
    if (den == 0) throw SyntaxError(dstart, "zero denominator");
  }
  if (end != text.size()) throw SyntaxError(end, "unexpected character in rational");
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw StructuralError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& d) {
  RationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RationalMatrix RationalMatrix::column(const std::vector<Rational>& v) {
  RationalMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product: dimension mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum: dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference: dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

std::string to_string(const RationalMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += to_string(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

namespace {

// Reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

RationalMatrix select_columns(const RationalMatrix& m, const std::vector<std::size_t>& cols) {
  RationalMatrix out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = m(i, cols[k]);
  return out;
}

RationalMatrix hconcat(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  cpp_int n = boost::multiprecision::numerator(q);
  cpp_int d = boost::multiprecision::denominator(q);
  cpp_int sn = boost::multiprecision::sqrt(n);
  cpp_int sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

void require_projector(const RationalMatrix& p) {
  if (!is_projector(p)) throw PreconditionError("matrix is not a projector (P = P^T = P^2)");
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix r = m;
  return rref(r).size();
}

RationalMatrix column_space(const RationalMatrix& m) {
  RationalMatrix r = m;
  return select_columns(m, rref(r));
}

RationalMatrix null_space(const RationalMatrix& m) {
  RationalMatrix r = m;
  const auto pivots = rref(r);
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
  RationalMatrix out(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    out(free[k], k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) out(pivots[i], k) = -r(i, free[k]);
  }
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug = hconcat(m, RationalMatrix::identity(n));
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw PreconditionError("matrix is singular");
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

RationalMatrix projector_onto(const RationalMatrix& basis) {
  if (basis.cols() == 0) return RationalMatrix(basis.rows(), basis.rows());
  const RationalMatrix bt = basis.transpose();
  return basis * inverse(bt * basis) * bt;
}

bool is_projector(const RationalMatrix& p) {
  return p.square() && p == p.transpose() && p * p == p;
}

PartialIsometryReport is_partial_isometry(const RationalMatrix& w) {
  if (!w.square()) throw PreconditionError("partial isometry check needs a square matrix");
  const RationalMatrix wt = w.transpose();
  const RationalMatrix wwt = w * wt;
  const RationalMatrix wtw = wt * w;
  PartialIsometryReport r;
  r.image_projector = wwt == projector_onto(column_space(w));
  r.cokernel_projector = wtw == projector_onto(column_space(wt));
  r.wwtw = wwt * w == w;
  r.wtwwt = wtw * wt == wt;
  // Im W is Ker(W^T)^perp; compare Gram matrices of a basis before and after W^T.
  const RationalMatrix b = column_space(w);
  const RationalMatrix bt = b.transpose();
  r.adjoint_isometric = bt * wwt * b == bt * b;
  return r;
}

bool is_coordinate_projector(const RationalMatrix& p) {
  if (!p.square()) return false;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const Rational& v = p(i, j);
      if (i != j ? v != 0 : (v != 0 && v != 1)) return false;
    }
  return true;
}

std::vector<RationalMatrix> coordinate_projectors(std::size_t n) {
  std::vector<RationalMatrix> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Rational> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1U;
    out.push_back(RationalMatrix::diagonal(d));
  }
  return out;
}

MvnResult mvn_equivalent(const RationalMatrix& p, const RationalMatrix& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw PreconditionError("projectors differ in size");
  require_projector(p);
  require_projector(q);
  MvnResult r;
  r.rank_p = rank(p);
  r.rank_q = rank(q);
  r.equivalent = r.rank_p == r.rank_q;
  if (r.equivalent && is_coordinate_projector(p) && is_coordinate_projector(q)) {
    std::vector<std::size_t> ps, qs;
    for (std::size_t i = 0; i < p.rows(); ++i) {
      if (p(i, i) == 1) ps.push_back(i);
      if (q(i, i) == 1) qs.push_back(i);
    }
    RationalMatrix w(p.rows(), p.cols());
    for (std::size_t k = 0; k < ps.size(); ++k) w(ps[k], qs[k]) = 1;
    const RationalMatrix wt = w.transpose();
    r.witness_valid = w * wt == p && wt * w == q && is_partial_isometry(w).verdict();
    r.witness = std::move(w);
  }
  return r;
}

std::size_t rank_dimension(const RationalMatrix& p) {
  require_projector(p);
  return rank(p);
}

DimensionAudit dimension_audit(const std::vector<RationalMatrix>& family) {
  DimensionAudit a;
  a.projectors = family.size();
  std::vector<std::size_t> dims;
  for (const auto& p : family) {
    if (!family.empty() && (p.rows() != family.front().rows() || p.cols() != family.front().cols()))
      throw PreconditionError("dimension audit: projectors differ in size");
    dims.push_back(rank_dimension(p));
    if ((dims.back() == 0) != p.is_zero()) a.zero_iff_zero = false;
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      ++a.pairs;
      const auto m = mvn_equivalent(family[i], family[j]);
      if ((dims[i] == dims[j]) != m.equivalent) a.rank_iff_mvn = false;
      if (m.witness && !m.witness_valid) a.rank_iff_mvn = false;
      if (i < j && (family[i] * family[j]).is_zero()) {
        ++a.orthogonal_pairs;
        const RationalMatrix s = family[i] + family[j];
        if (!is_projector(s) || rank(s) != dims[i] + dims[j]) a.additive = false;
      }
    }
  return a;
}

bool BorchersCertificate::valid() const {
  return std::all_of(entries.begin(), entries.end(), [&](const BorchersEntry& e) {
    return !e.equivalent_to_identity && e.dimension != identity_dimension;
  });
}

BorchersCertificate borchers_fails(std::size_t n) {
  if (n < 1 || n > 6) throw PreconditionError("borchers_fails needs 1 <= n <= 6");
  BorchersCertificate c;
  c.n = n;
  const RationalMatrix id = RationalMatrix::identity(n);
  c.identity_dimension = rank_dimension(id);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Rational> d(n);
    for (std::size_t i = 0; i < k; ++i) d[i] = 1;
    const RationalMatrix p = RationalMatrix::diagonal(d);
    c.entries.push_back({k, rank_dimension(p), mvn_equivalent(p, id).equivalent});
  }
  return c;
}

namespace {

struct Subspaces2 {
  RationalMatrix id = RationalMatrix::identity(2);

  bool leq(const RationalMatrix& p, const RationalMatrix& q) const { return q * p == p; }
  RationalMatrix join(const RationalMatrix& p, const RationalMatrix& q) const {
    return projector_onto(column_space(hconcat(p, q)));
  }
  RationalMatrix meet(const RationalMatrix& p, const RationalMatrix& q) const {
    return id - join(id - p, id - q);
  }
  bool complements(const RationalMatrix& c, const RationalMatrix& p) const {
    return meet(c, p).is_zero() && join(c, p) == id;
  }
};

RationalMatrix line_projector(const std::vector<Rational>& v) {
  const RationalMatrix c = RationalMatrix::column(v);
  const Rational norm2 = (c.transpose() * c)(0, 0);
  RationalMatrix p = c * c.transpose();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) p(i, j) /= norm2;
  return p;
}

// Rotation taking span(u) onto span(v) when |u||v| is rational.
std::optional<RationalMatrix> rotation_between(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  const Rational nu = u[0] * u[0] + u[1] * u[1];
  const Rational nv = v[0] * v[0] + v[1] * v[1];
  const auto norm = rational_sqrt(nu * nv);
  if (!norm) return std::nullopt;
  const Rational c = (u[0] * v[0] + u[1] * v[1]) / *norm;
  const Rational s = (u[0] * v[1] - u[1] * v[0]) / *norm;
  return RationalMatrix::from_rows({{c, -s}, {s, c}});
}

}  // namespace

PerspectivityDemo unitary_vs_perspective_demo(const std::vector<std::vector<Rational>>& lines) {
  if (lines.size() < 2) throw PreconditionError("the demo needs at least two lines");
  for (const auto& v : lines) {
    if (v.size() != 2) throw PreconditionError("lines of Q^2 need two coordinates");
    if (v[0] == 0 && v[1] == 0) throw PreconditionError("zero vector does not span a line");
  }
  const Subspaces2 ops;
  PerspectivityDemo demo;
  demo.note =
      "perspectivity is searched in a finite generated sublattice: a common complement found "
      "there certifies it in the full projection lattice, but its absence refutes nothing";

  std::vector<std::string> names;
  auto add = [&](const RationalMatrix& p, const std::string& name) {
    auto it = std::find(demo.elements.begin(), demo.elements.end(), p);
    if (it != demo.elements.end()) return static_cast<std::size_t>(it - demo.elements.begin());
    demo.elements.push_back(p);
    names.push_back(name);
    return demo.elements.size() - 1;
  };
  add(RationalMatrix(2, 2), "0");
  add(ops.id, "1");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    demo.line_projectors.push_back(line_projector(lines[i]));
    add(demo.line_projectors.back(), "L" + std::to_string(i + 1));
    add(ops.id - demo.line_projectors.back(), "L" + std::to_string(i + 1) + "'");
  }
  const std::vector<RationalMatrix> generated = demo.elements;
  const std::vector<std::string> generated_names = names;

  std::size_t aux = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const RationalMatrix& p = demo.line_projectors[i];
      const RationalMatrix& q = demo.line_projectors[j];
      LinePair pair;
      pair.first = i;
      pair.second = j;
      pair.identical = p == q;
      for (std::size_t k = 0; k < generated.size(); ++k)
        if (ops.complements(generated[k], p) && ops.complements(generated[k], q)) {
          pair.perspective_in_generated = true;
          pair.common_complement = generated[k];
          pair.complement_source = generated_names[k];
          break;
        }
      if (!pair.common_complement) {
        std::vector<Rational> sum{lines[i][0] + lines[j][0], lines[i][1] + lines[j][1]};
        const RationalMatrix c = line_projector(sum);
        const std::string name = "A" + std::to_string(++aux);
        pair.complement_source = names[add(c, name)];
        add(ops.id - c, pair.complement_source + "'");
        pair.common_complement = c;
      }
      pair.complement_valid =
          ops.complements(*pair.common_complement, p) && ops.complements(*pair.common_complement, q);

      pair.unitary = pair.identical ? std::optional<RationalMatrix>(ops.id) : rotation_between(lines[i], lines[j]);
      if (pair.unitary) {
        const RationalMatrix& u = *pair.unitary;
        pair.unitary_valid = u.transpose() * u == ops.id && u * p * u.transpose() == q;
        RationalMatrix w = u * p;
        if (!(w * w.transpose() == q && w.transpose() * w == p && is_partial_isometry(w).verdict()))
          pair.unitary_valid = false;
        pair.mvn_witness = std::move(w);
      }
      pair.mvn = mvn_equivalent(p, q).equivalent;
      demo.pairs.push_back(std::move(pair));
    }

  OmlTables t;
  t.names = names;
  const std::size_t n = demo.elements.size();
  t.leq.assign(n, std::vector<bool>(n, false));
  t.neg.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t.leq[a][b] = ops.leq(demo.elements[a], demo.elements[b]);
    auto it = std::find(demo.elements.begin(), demo.elements.end(), ops.id - demo.elements[a]);
    t.neg[a] = static_cast<Element>(it - demo.elements.begin());
  }
  t.bottom = 0;
  t.top = 1;
  demo.lattice_ok = verify_oml(t).ok;
  if (demo.lattice_ok) demo.lattice = FiniteOml::from_tables(std::move(t), "lines");
  return demo;
}

}  // namespace lqf
