#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lqf/oml.hpp"

namespace lqf {

using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p", "p/q" and "-p/q". Throws SyntaxError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Dense row-major matrix over exact rationals. Transpose plays the adjoint.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  /// Throws StructuralError on ragged rows.
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix diagonal(const std::vector<Rational>& d);
  /// Column vector.
  static RationalMatrix column(const std::vector<Rational>& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const RationalMatrix& o) const = default;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

std::string to_string(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);
/// Independent columns of m (pivot columns after elimination), as a rows x r matrix.
RationalMatrix column_space(const RationalMatrix& m);
/// Basis of the kernel, as cols x k.
RationalMatrix null_space(const RationalMatrix& m);
/// Throws PreconditionError when singular or non-square.
RationalMatrix inverse(const RationalMatrix& m);
/// Orthogonal projector onto the span of the columns of `basis` (independent columns).
RationalMatrix projector_onto(const RationalMatrix& basis);

bool is_projector(const RationalMatrix& p);  // P = P^T = P^2

struct PartialIsometryReport {
  bool image_projector = false;   // W W^T is the projector onto Im W
  bool cokernel_projector = false;  // W^T W is the projector onto Ker(W)^perp
  bool wwtw = false;              // W W^T W = W
  bool wtwwt = false;             // W^T W W^T = W^T
  bool adjoint_isometric = false;  // W^T is isometric on Ker(W^T)^perp
  bool agree() const {
    return image_projector == cokernel_projector && cokernel_projector == wwtw &&
           wwtw == wtwwt && wtwwt == adjoint_isometric;
  }
  bool verdict() const { return agree() && wwtw; }
};

/// Throws PreconditionError for a non-square W.
PartialIsometryReport is_partial_isometry(const RationalMatrix& w);

struct MvnResult {
  bool equivalent = false;
  std::size_t rank_p = 0, rank_q = 0;
  /// W W^T = P and W^T W = Q, for coordinate projectors only.
  std::optional<RationalMatrix> witness;
  bool witness_valid = false;
};

/// Throws PreconditionError on size mismatch or non-projector input.
MvnResult mvn_equivalent(const RationalMatrix& p, const RationalMatrix& q);

/// diag(mask). The 2^n coordinate projectors of Q^n, in mask order.
bool is_coordinate_projector(const RationalMatrix& p);
std::vector<RationalMatrix> coordinate_projectors(std::size_t n);

/// rank(P); throws PreconditionError for a non-projector.
std::size_t rank_dimension(const RationalMatrix& p);

struct DimensionAudit {
  std::size_t projectors = 0;
  std::size_t pairs = 0;
  std::size_t orthogonal_pairs = 0;
  bool zero_iff_zero = true;    // D(P) = 0 iff P = 0
  bool rank_iff_mvn = true;     // D(P) = D(Q) iff P ~ Q
  bool additive = true;         // P Q = 0 implies P + Q projector and D(P+Q) = D(P) + D(Q)
  bool ok() const { return zero_iff_zero && rank_iff_mvn && additive; }
};

/// Every member must be a projector of the same size.
DimensionAudit dimension_audit(const std::vector<RationalMatrix>& family);

struct BorchersEntry {
  std::size_t rank = 0;      // rank of the intermediate projector tested
  std::size_t dimension = 0;  // D(P)
  bool equivalent_to_identity = false;
};

struct BorchersCertificate {
  std::size_t n = 0;
  std::size_t identity_dimension = 0;
  std::vector<BorchersEntry> entries;  // one per rank 1..n-1
  bool vacuous() const { return entries.empty(); }
  /// No intermediate projector is equivalent to the identity.
  bool valid() const;
};

/// Throws PreconditionError outside 1..6.
BorchersCertificate borchers_fails(std::size_t n);

struct LinePair {
  std::size_t first = 0, second = 0;  // indices into the input lines
  bool identical = false;
  bool perspective_in_generated = false;  // before adding auxiliary lines
  std::optional<RationalMatrix> common_complement;
  std::string complement_source;  // "line k", "orthocomplement of line k", "auxiliary span(u+v)"
  bool complement_valid = false;
  std::optional<RationalMatrix> unitary;  // U P_first U^T = P_second, U rational orthogonal
  bool unitary_valid = false;
  std::optional<RationalMatrix> mvn_witness;  // W = U P_first
  bool mvn = false;
};

struct PerspectivityDemo {
  std::vector<RationalMatrix> line_projectors;
  std::vector<RationalMatrix> elements;  // projectors of the final finite lattice
  std::optional<FiniteOml> lattice;
  bool lattice_ok = false;
  std::vector<LinePair> pairs;
  std::string note;
};

/// Lines of Q^2 given by direction vectors. Throws PreconditionError for fewer
/// than two lines, a zero vector or a vector of the wrong length.
PerspectivityDemo unitary_vs_perspective_demo(const std::vector<std::vector<Rational>>& lines);

}  // namespace lqf
