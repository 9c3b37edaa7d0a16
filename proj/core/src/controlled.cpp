// Copyright 2026 The qcomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcomb/controlled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcomb/errors.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

// (c_in, c_out, t_in, t_out) <-> (c_in, t_in, c_out, t_out); an involution.
const std::vector<std::size_t> kControlPerm{0, 2, 1, 3};

ComplexMatrix to_control_major(const ChoiMatrix& cc) {
  if (cc.d_in != cc.d_out || cc.d_in % 2 != 0)
    throw DimensionError("controlled Choi operator must act on 2 x d");
  const std::size_t d = cc.d_in / 2;
  return permute_subsystems(cc.matrix, SubsystemShape{2, d, 2, d},
                            kControlPerm);
}

void require_square_channel(const ChoiMatrix& a, const char* what) {
  if (a.d_in != a.d_out) {
    std::ostringstream os;
    os << what << ": target channel must have d_in == d_out";
    throw DimensionError(os.str());
  }
}

}  // namespace

double CoherenceOperator::beta_norm_sq() const {
  double s = 0.0;
  for (const auto& b : beta) s += std::norm(b);
  return s;
}

double CoherenceOperator::hs_norm_sq() const { return k.squaredNorm(); }

CoherenceOperator make_coherence_operator(const ChoiMatrix& a,
                                          const ComplexMatrix& k) {
  if (k.rows() != static_cast<Idx>(a.d_out) ||
      k.cols() != static_cast<Idx>(a.d_in))
    throw DimensionError("coherence operator has wrong shape");
  CoherenceOperator c;
  c.k = k;
  c.basis = choi_to_orthogonal_kraus(a);
  ComplexMatrix recon = ComplexMatrix::Zero(k.rows(), k.cols());
  for (const auto& kt : c.basis.operators) {
    const Complex b = (kt.adjoint() * k).trace() / kt.squaredNorm();
    c.beta.push_back(b);
    recon += b * kt;
  }
  c.span_residual = (k - recon).norm();
  if (c.span_residual > tol::kSpanResidual) {
    std::ostringstream os;
    os << "coherence operator outside the Kraus span, residual "
       << c.span_residual;
    throw InvalidCoherenceError(os.str());
  }
  if (c.beta_norm_sq() > 1.0 + tol::kNormBound) {
    std::ostringstream os;
    os << "coherence operator violates sum |beta|^2 <= 1 (got "
       << c.beta_norm_sq() << ")";
    throw InvalidCoherenceError(os.str());
  }
  return c;
}

ComplexMatrix controlled_block_choi(const ComplexMatrix& ja,
                                    const ComplexMatrix& jb,
                                    const ComplexVector& k_vec,
                                    const ComplexVector& l_vec, std::size_t d) {
  const auto n = static_cast<Idx>(d * d);
  if (ja.rows() != n || jb.rows() != n || k_vec.size() != n ||
      l_vec.size() != n)
    throw DimensionError("controlled_block_choi: block sizes disagree");
  ComplexMatrix m = ComplexMatrix::Zero(4 * n, 4 * n);
  m.block(0, 0, n, n) = ja;
  m.block(3 * n, 3 * n, n, n) = jb;
  m.block(0, 3 * n, n, n) = k_vec * l_vec.adjoint();
  m.block(3 * n, 0, n, n) = l_vec * k_vec.adjoint();
  return permute_subsystems(m, SubsystemShape{2, 2, d, d}, kControlPerm);
}

ComplexMatrix coherence_block(const ChoiMatrix& cc) {
  const ComplexMatrix m = to_control_major(cc);
  const auto n = m.rows() / 4;
  return m.block(0, 3 * n, n, n);
}

ComplexMatrix control_block(const ChoiMatrix& cc, int c) {
  if (c != 0 && c != 1) throw PreconditionError("control_block: c must be 0 or 1");
  const ComplexMatrix m = to_control_major(cc);
  const auto n = m.rows() / 4;
  return m.block(3 * c * n, 3 * c * n, n, n);
}

ComplexMatrix extract_coherence_operator(const ChoiMatrix& cc) {
  const std::size_t d = cc.d_in / 2;
  const ComplexMatrix b = coherence_block(cc);
  const ComplexVector kv =
      b.adjoint() * vectorize(identity(d)) / static_cast<double>(d);
  return devectorize(kv, d, d);
}

ControlledChannel classical_controlled(const ChoiMatrix& a) {
  require_square_channel(a, "classical_controlled");
  const auto rep = validate_channel(a);
  if (!rep.cp || !rep.tp)
    throw PreconditionError("classical_controlled: input is not CPTP");
  const std::size_t d = a.d_in;
  return controlled_with_K(a, ComplexMatrix::Zero(static_cast<Idx>(d),
                                                  static_cast<Idx>(d)));
}

ControlledChannel controlled_with_K(const ChoiMatrix& a, const ComplexMatrix& k,
                                    double theta) {
  require_square_channel(a, "controlled_with_K");
  const std::size_t d = a.d_in;
  CoherenceOperator coh = make_coherence_operator(a, k);
  ComplexMatrix m = controlled_block_choi(identity_choi(d).matrix, a.matrix,
                                          vectorize(identity(d)), vectorize(k), d);
  return ControlledChannel{ChoiMatrix(std::move(m), 2 * d, 2 * d),
                           std::move(coh), theta, std::nullopt};
}

ControlledChannel controlled_unitary(const ComplexMatrix& u, double theta) {
  if (!is_unitary(u, tol::kUnitarity))
    throw NotUnitaryError("controlled_unitary: input is not unitary");
  return controlled_with_K(unitary_choi(u), std::polar(1.0, theta) * u, theta);
}

ControlledChannel controlled_from_choi(const ChoiMatrix& cc,
                                       const ChoiMatrix& a) {
  require_square_channel(a, "controlled_from_choi");
  const std::size_t d = a.d_in;
  if (cc.d_in != 2 * d || cc.d_out != 2 * d)
    throw DimensionError("controlled_from_choi: dimension mismatch");
  const ComplexMatrix k = extract_coherence_operator(cc);
  const ComplexMatrix expected =
      controlled_block_choi(identity_choi(d).matrix, a.matrix,
                            vectorize(identity(d)), vectorize(k), d);
  const double r = max_abs_diff(expected, cc.matrix);
  if (r > tol::kChoiEquality * 10) {
    std::ostringstream os;
    os << "controlled_from_choi: not of controlled form, residual " << r;
    throw PreconditionError(os.str());
  }
  return ControlledChannel{cc, make_coherence_operator(a, k), 0.0,
                           std::nullopt};
}

double coherence_norm(const ControlledChannel& cc, double p) {
  const ComplexMatrix m = to_control_major(cc.choi);
  const auto n = m.rows() / 4;
  ComplexMatrix delta = ComplexMatrix::Zero(m.rows(), m.cols());
  delta.block(0, 3 * n, n, n) = m.block(0, 3 * n, n, n);
  delta.block(3 * n, 0, n, n) = m.block(3 * n, 0, n, n);
  return schatten_norm(delta, p);
}

double predicted_coherence_norm(const ControlledChannel& cc, double p) {
  if (!(p >= 1.0)) throw PreconditionError("p must be >= 1");
  const double d = static_cast<double>(cc.target_dim());
  const double factor = std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p);
  return factor * std::sqrt(d) * std::sqrt(cc.coherence.hs_norm_sq());
}

CoherenceOperator most_coherent_K(const ChoiMatrix& a,
                                  const MostCoherentOptions& opts) {
  const KrausSet orth = choi_to_orthogonal_kraus(a);
  if (orth.size() == 0) throw PreconditionError("most_coherent_K: zero channel");
  const double top = orth.operators.front().squaredNorm();
  std::vector<std::size_t> amax;
  for (std::size_t i = 0; i < orth.size(); ++i) {
    if (orth.operators[i].squaredNorm() >= top - 1e-9 * std::max(1.0, top))
      amax.push_back(i);
  }

  std::vector<Complex> coef(amax.size(), Complex(0.0));
  coef[0] = 1.0;
  if (opts.alpha) {
    if (opts.alpha->size() != amax.size()) {
      std::ostringstream os;
      os << "most_coherent_K: alpha has " << opts.alpha->size()
         << " entries but the maximal family has " << amax.size();
      throw PreconditionError(os.str());
    }
    double nrm = 0.0;
    for (const auto& x : *opts.alpha) nrm += std::norm(x);
    if (nrm == 0.0) throw PreconditionError("most_coherent_K: alpha is zero");
    for (std::size_t i = 0; i < amax.size(); ++i)
      coef[i] = std::conj((*opts.alpha)[i]) / std::sqrt(nrm);
  } else if (opts.anchor) {
    std::vector<Complex> ov(amax.size());
    double nrm = 0.0;
    for (std::size_t i = 0; i < amax.size(); ++i) {
      const auto& kt = orth.operators[amax[i]];
      ov[i] = (kt.adjoint() * (*opts.anchor)).trace() / kt.norm();
      nrm += std::norm(ov[i]);
    }
    if (nrm > 1e-24) {
      for (std::size_t i = 0; i < amax.size(); ++i) coef[i] = ov[i] / std::sqrt(nrm);
    }
  }

  ComplexMatrix k = ComplexMatrix::Zero(static_cast<Idx>(a.d_out),
                                        static_cast<Idx>(a.d_in));
  for (std::size_t i = 0; i < amax.size(); ++i)
    k += coef[i] * orth.operators[amax[i]];
  return make_coherence_operator(a, k);
}

AxiomsReport axioms_check(const ChoiMatrix& cc, const ChoiMatrix& a) {
  require_square_channel(a, "axioms_check");
  const std::size_t d = a.d_in;
  if (cc.d_in != 2 * d || cc.d_out != 2 * d)
    throw DimensionError("axioms_check: dimension mismatch");
  const auto D = static_cast<Idx>(d);
  AxiomsReport r;
  for (int c = 0; c < 2; ++c) {
    const ComplexMatrix pc = basis_vector(2, static_cast<std::size_t>(c)) *
                             basis_vector(2, static_cast<std::size_t>(c)).adjoint();
    for (Idx i = 0; i < D; ++i) {
      for (Idx j = 0; j < D; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(D, D);
        e(i, j) = 1.0;
        const ComplexMatrix out = apply_channel(cc, kron(pc, e));
        // Everything outside the <c|.|c> control block must vanish.
        ComplexMatrix outside = out;
        outside.block(c * D, c * D, D, D).setZero();
        double ctrl = outside.cwiseAbs().maxCoeff();
        const ComplexMatrix marg = partial_trace(out, SubsystemShape{2, d}, {0});
        const ComplexMatrix expect_marg = pc * (i == j ? 1.0 : 0.0);
        ctrl = std::max(ctrl, max_abs_diff(marg, expect_marg));
        r.control_residual = std::max(r.control_residual, ctrl);
        const ComplexMatrix blk = out.block(c * D, c * D, D, D);
        if (c == 0) {
          r.zero_branch_residual =
              std::max(r.zero_branch_residual, max_abs_diff(blk, e));
        } else {
          r.one_branch_residual = std::max(r.one_branch_residual,
                                           max_abs_diff(blk, apply_channel(a, e)));
        }
      }
    }
  }
  r.control_preserved = r.control_residual <= tol::kChoiEquality;
  r.zero_branch_identity = r.zero_branch_residual <= tol::kChoiEquality;
  r.one_branch_action = r.one_branch_residual <= tol::kChoiEquality;
  return r;
}

ControlledChannel controlled_two(const ChoiMatrix& a, const ComplexMatrix& k,
                                 const ChoiMatrix& b, const ComplexMatrix& l) {
  require_square_channel(a, "controlled_two");
  require_square_channel(b, "controlled_two");
  if (a.d_in != b.d_in) throw DimensionError("controlled_two: dimension mismatch");
  const std::size_t d = a.d_in;
  CoherenceOperator ka = make_coherence_operator(a, k);
  CoherenceOperator lb = make_coherence_operator(b, l);
  ComplexMatrix m =
      controlled_block_choi(a.matrix, b.matrix, vectorize(k), vectorize(l), d);
  return ControlledChannel{ChoiMatrix(std::move(m), 2 * d, 2 * d), std::move(lb),
                           0.0, std::move(ka)};
}

}  // namespace qcomb
