#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "entstruct/angles.hpp"
#include "entstruct/errors.hpp"
#include "entstruct/seeds.hpp"

namespace entstruct {

// Dense complex matrices. This is the ground-truth path: everything here is
// O(4^n) or worse and exists to verify the closed-form feature formulas and
// to supply exact small-n states in tests. Construction tolerance 1e-12,
// comparison tolerance 1e-10.
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kCompareTol = 1e-10;

using cplx = std::complex<double>;

struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> data;  // row-major

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c) {}

  cplx& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
  const cplx& at(int r, int c) const { return data[std::size_t(r) * cols + c]; }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw ParameterError("matrix add: shape mismatch");
  ComplexMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = s * a.data[i];
  return out;
}

inline cplx trace(const ComplexMatrix& m) {
  cplx t = 0.0;
  for (int i = 0; i < std::min(m.rows, m.cols); ++i) t += m.at(i, i);
  return t;
}

// max |a_ij - conj(a_ji)|
inline double hermitian_defect(const ComplexMatrix& m) {
  double defect = 0.0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j <= i; ++j)
      defect = std::max(defect, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
  return defect;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (int ar = 0; ar < a.rows; ++ar)
    for (int ac = 0; ac < a.cols; ++ac) {
      const cplx f = a.at(ar, ac);
      if (f == cplx(0.0)) continue;
      for (int br = 0; br < b.rows; ++br)
        for (int bc = 0; bc < b.cols; ++bc)
          out.at(ar * b.rows + br, ac * b.cols + bc) = f * b.at(br, bc);
    }
  return out;
}

inline ComplexMatrix kron_pow(const ComplexMatrix& m, int k) {
  if (k < 1) throw ParameterError("kron_pow: k must be >= 1");
  ComplexMatrix out = m;
  for (int i = 1; i < k; ++i) out = kron(out, m);
  return out;
}

// Dense-oracle qubit cap; ENTSTRUCT_ORACLE_CAP overrides the default of 10.
inline int oracle_cap() {
  if (const char* env = std::getenv("ENTSTRUCT_ORACLE_CAP")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 10;
}

inline void check_oracle_cap(int n, const char* where) {
  if (n > oracle_cap())
    throw OracleScaleError(std::string(where) + ": " + std::to_string(n) +
                           " qubits exceeds the dense-oracle cap of " +
                           std::to_string(oracle_cap()));
}

struct DenseState {
  int qubit_count = 0;
  ComplexMatrix rho;
};

namespace detail {

inline void validate_density(const ComplexMatrix& m, const char* where) {
  if (m.rows != m.cols || m.rows == 0 || (m.rows & (m.rows - 1)) != 0)
    throw NumericError(std::string(where) + ": dimension is not a power of 2");
  if (std::abs(trace(m) - cplx(1.0)) > kConstructTol)
    throw NumericError(std::string(where) + ": trace deviates from 1");
  if (hermitian_defect(m) > kConstructTol)
    throw NumericError(std::string(where) + ": not Hermitian");
}

}  // namespace detail

// |GHZ><GHZ| on n qubits: 1/2 at the four corners of the matrix.
inline ComplexMatrix dense_tau(int n) {
  check_oracle_cap(n, "dense_tau");
  const int dim = 1 << n;
  ComplexMatrix m(dim, dim);
  m.at(0, 0) = m.at(0, dim - 1) = m.at(dim - 1, 0) = m.at(dim - 1, dim - 1) = 0.5;
  return m;
}

// (|0..0><0..0| + |1..1><1..1|)/2
inline ComplexMatrix dense_eta(int n) {
  check_oracle_cap(n, "dense_eta");
  const int dim = 1 << n;
  ComplexMatrix m(dim, dim);
  m.at(0, 0) = m.at(dim - 1, dim - 1) = 0.5;
  return m;
}

// W_G = I/2 - |GHZ><GHZ|
inline ComplexMatrix dense_witness(int n) {
  check_oracle_cap(n, "dense_witness");
  return ComplexMatrix::identity(1 << n) + (-1.0) * dense_tau(n) +
         (-0.5) * ComplexMatrix::identity(1 << n);
}

// Seed block (1-a-b)|G><G| + a eta + b I/2^l. For l = 1 the GHZ part reduces
// to |+><+|, which gives the single-qubit form of the same family.
inline DenseState dense_seed_state(int block_size, const SeedParams& p) {
  if (block_size < 1) throw ParameterError("dense_seed_state: block size must be >= 1");
  if (p.alpha < 0.0 || p.beta < 0.0 || p.alpha + p.beta > 1.0)
    throw ParameterError("dense_seed_state: (alpha, beta) outside the mixture domain");
  check_oracle_cap(block_size, "dense_seed_state");
  const double w = 1.0 - p.alpha - p.beta;
  const int dim = 1 << block_size;
  ComplexMatrix rho = w * dense_tau(block_size) + p.alpha * dense_eta(block_size) +
                      cplx(p.beta / dim) * ComplexMatrix::identity(dim);
  detail::validate_density(rho, "dense_seed_state");
  return DenseState{block_size, std::move(rho)};
}

inline DenseState dense_compose(std::span<const DenseState> blocks) {
  if (blocks.empty()) throw ParameterError("dense_compose: no blocks");
  int total = 0;
  for (const auto& b : blocks) total += b.qubit_count;
  check_oracle_cap(total, "dense_compose");
  ComplexMatrix rho = blocks[0].rho;
  for (std::size_t i = 1; i < blocks.size(); ++i) rho = kron(rho, blocks[i].rho);
  detail::validate_density(rho, "dense_compose");
  return DenseState{total, std::move(rho)};
}

// cos(theta)|0..0> + sin(theta)|1..1>, as a density matrix.
inline DenseState dense_pure_gen_ghz(int n, double theta) {
  check_oracle_cap(n, "dense_pure_gen_ghz");
  const int dim = 1 << n;
  const double c = std::cos(theta), s = std::sin(theta);
  ComplexMatrix m(dim, dim);
  m.at(0, 0) = c * c;
  m.at(0, dim - 1) = c * s;
  m.at(dim - 1, 0) = s * c;
  m.at(dim - 1, dim - 1) = s * s;
  detail::validate_density(m, "dense_pure_gen_ghz");
  return DenseState{n, std::move(m)};
}

// Tr[op rho]. The operator is expected Hermitian; any imaginary residue
// above tolerance is a hard error, below it is discarded.
inline double expectation(const ComplexMatrix& op, const DenseState& state) {
  if (op.rows != state.rho.rows || op.cols != state.rho.cols)
    throw ParameterError("expectation: dimension mismatch");
  cplx t = 0.0;
  for (int i = 0; i < op.rows; ++i)
    for (int j = 0; j < op.cols; ++j) t += op.at(i, j) * state.rho.at(j, i);
  if (std::abs(t.imag()) > kCompareTol)
    throw NumericError("expectation: imaginary residue " + std::to_string(t.imag()));
  return t.real();
}

struct Observables {
  ComplexMatrix mz, mx, az, ax;
};

// The four witnesses-derived observables at system size n:
//   M_z = |0><0|^n + |1><1|^n,  M_x = sigma_x^n,
//   A_z = A_+^n,                A_x = ((A_+ + A_-)/2)^n,
// with A_+/- the equatorial measurements at phases +-(n+-1)/(2n) phi_n.
inline Observables dense_observables(int n) {
  check_oracle_cap(n, "dense_observables");
  ComplexMatrix p0(2, 2), p1(2, 2), sx(2, 2), aplus(2, 2), amid(2, 2);
  p0.at(0, 0) = 1.0;
  p1.at(1, 1) = 1.0;
  sx.at(0, 1) = sx.at(1, 0) = 1.0;

  auto equatorial = [](double phase) {
    // cos(phase) sigma_x + sin(phase) sigma_y = offdiag(e^{-i phase}, e^{i phase})
    ComplexMatrix m(2, 2);
    m.at(0, 1) = std::exp(cplx(0.0, -phase));
    m.at(1, 0) = std::exp(cplx(0.0, phase));
    return m;
  };
  aplus = equatorial(a_plus_phase(n));
  amid = 0.5 * (equatorial(a_plus_phase(n)) + equatorial(a_minus_phase(n)));

  Observables obs;
  obs.mz = kron_pow(p0, n) + kron_pow(p1, n);
  obs.mx = kron_pow(sx, n);
  obs.az = kron_pow(aplus, n);
  obs.ax = kron_pow(amid, n);
  return obs;
}

}  // namespace entstruct
