#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kickci/common.hpp"

namespace kickci {

/// Second-quantized Hamiltonian over real orbitals.
///
/// Two-electron integrals are in chemist notation (pq|rs) and are stored once
/// per 8-fold permutation class; eri() accepts any index order.
class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(int norb, int nelec, int ms2);

  int norb() const { return norb_; }
  int nelec() const { return nelec_; }
  int ms2() const { return ms2_; }
  int nalpha() const { return (nelec_ + ms2_) / 2; }
  int nbeta() const { return (nelec_ - ms2_) / 2; }

  double e_core() const { return e_core_; }
  void set_e_core(double e) { e_core_ = e; }

  const RealMatrix& h() const { return h_; }
  double h(int p, int q) const { return h_(p, q); }
  /// Sets h_pq and h_qp.
  void set_h(int p, int q, double value);

  double eri(int p, int q, int r, int s) const { return eri_[canonical_index(p, q, r, s)]; }
  /// Sets (pq|rs) and all its symmetry images.
  void set_eri(int p, int q, int r, int s, double value);

  /// Dense copy indexed [((p*n + q)*n + r)*n + s].
  std::vector<double> dense_eri() const;

  /// Replaces the electron count / spin projection, revalidating parity.
  void set_electrons(int nelec, int ms2);

  const std::vector<int>& orbsym() const { return orbsym_; }
  void set_orbsym(std::vector<int> sym) { orbsym_ = std::move(sym); }
  int isym() const { return isym_; }
  void set_isym(int s) { isym_ = s; }

  std::size_t canonical_index(int p, int q, int r, int s) const;
  std::size_t eri_storage_size() const { return eri_.size(); }

 private:
  int norb_ = 0;
  int nelec_ = 0;
  int ms2_ = 0;
  int isym_ = 1;
  double e_core_ = 0.0;
  RealMatrix h_;
  std::vector<double> eri_;
  std::vector<int> orbsym_;
};

/// Hermitian one-body operator, e.g. one Cartesian component of the dipole.
struct OneBodyOperator {
  std::string label;
  ComplexMatrix matrix;

  int norb() const { return static_cast<int>(matrix.rows()); }
  bool is_hermitian(double tol = 1e-12) const;
};

/// Parses the FCIDUMP namelist format (1-based indices, chemist notation).
IntegralSet parse_fcidump(std::string_view text);
IntegralSet read_fcidump(const std::string& path);
/// Writes an FCIDUMP that parses back to the same integrals bit-for-bit.
void write_fcidump(std::ostream& os, const IntegralSet& ints);

/// Parses the `&OPER NORB=n LABEL=tag &END` one-body dialect.
OneBodyOperator parse_operator_file(std::string_view text);
OneBodyOperator read_operator_file(const std::string& path);
void write_operator_file(std::ostream& os, const OneBodyOperator& op);
/// Throws InputError when the operator and the Hamiltonian disagree on norb.
void validate_operator(const OneBodyOperator& op, const IntegralSet& ints);

/// Hubbard chain or ring at half filling: h_{p,p±1} = -t, (pp|pp) = U.
IntegralSet make_hubbard_model(int nsites, double t, double u, bool periodic);

/// Reads a whole file or, for "-", standard input.
std::string slurp(const std::string& path);

}  // namespace kickci
