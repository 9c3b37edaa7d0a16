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

#include "qcomb/comb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcomb/errors.hpp"
#include "qcomb/random.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

std::vector<std::size_t> in_factors(std::size_t n) {
  std::vector<std::size_t> f(2 * n);
  std::iota(f.begin(), f.end(), std::size_t{1});
  return f;
}

std::vector<std::size_t> out_factors(std::size_t n) { return {0, 2 * n + 1}; }

std::vector<std::size_t> concat(std::vector<std::size_t> a,
                                const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void check_budget(std::size_t side, const char* what) {
  if (side > tol::kMaxDenseSide) {
    std::ostringstream os;
    os << what << ": dense side " << side << " exceeds budget "
       << tol::kMaxDenseSide;
    throw BudgetError(os.str());
  }
}

std::vector<ComplexVector> comb_vectors(const CombKraus& k) {
  std::vector<ComplexVector> vs;
  vs.reserve(k.size());
  for (const auto& op : k.operators) vs.push_back(comb_vector(op, k.shape));
  return vs;
}

ComplexMatrix sqrt_complement(const ComplexVector& a) {
  // sqrt(I - a a^dag) for ||a|| <= 1.
  const Idx n = a.size();
  const double s = a.squaredNorm();
  ComplexMatrix r = ComplexMatrix::Identity(n, n);
  if (s <= 0.0) return r;
  const double f = (1.0 - std::sqrt(std::max(0.0, 1.0 - s))) / s;
  r -= f * a * a.adjoint();
  return r;
}

struct Expansion {
  std::vector<Complex> coef;
  ComplexMatrix recon;
};

Expansion expand(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& s) {
  Expansion e;
  e.recon = ComplexMatrix::Zero(s.rows(), s.cols());
  for (const auto& b : basis) {
    const Complex c = (b.adjoint() * s).trace() / b.squaredNorm();
    e.coef.push_back(c);
    e.recon += c * b;
  }
  return e;
}

CoherenceOperatorS coherence_from_basis(std::vector<ComplexMatrix> basis,
                                        const ComplexMatrix& s) {
  CoherenceOperatorS c;
  c.s = s;
  auto e = expand(basis, s);
  c.beta = std::move(e.coef);
  c.basis = std::move(basis);
  c.span_residual = (s - e.recon).norm();
  if (c.span_residual > tol::kSpanResidual) {
    std::ostringstream os;
    os << "comb coherence operator outside the Kraus span, residual "
       << c.span_residual;
    throw InvalidCoherenceError(os.str());
  }
  if (c.beta_norm_sq() > 1.0 + tol::kNormBound) {
    std::ostringstream os;
    os << "comb coherence operator violates sum |beta|^2 <= 1 (got "
       << c.beta_norm_sq() << ")";
    throw InvalidCoherenceError(os.str());
  }
  return c;
}

CoherenceOperatorS most_coherent_from_basis(const std::vector<ComplexMatrix>& orth,
                                            const MostCoherentSOptions& opts) {
  if (orth.empty()) throw PreconditionError("most_coherent_S: zero comb");
  const double top = orth.front().squaredNorm();
  std::vector<std::size_t> bmax;
  for (std::size_t i = 0; i < orth.size(); ++i)
    if (orth[i].squaredNorm() >= top - 1e-9 * std::max(1.0, top)) bmax.push_back(i);

  std::vector<Complex> coef(bmax.size(), Complex(0.0));
  coef[0] = 1.0;
  if (opts.alpha) {
    if (opts.alpha->size() != bmax.size()) {
      std::ostringstream os;
      os << "most_coherent_S: alpha has " << opts.alpha->size()
         << " entries but the maximal family has " << bmax.size();
      throw PreconditionError(os.str());
    }
    double nrm = 0.0;
    for (const auto& x : *opts.alpha) nrm += std::norm(x);
    if (nrm == 0.0) throw PreconditionError("most_coherent_S: alpha is zero");
    for (std::size_t i = 0; i < bmax.size(); ++i)
      coef[i] = std::conj((*opts.alpha)[i]) / std::sqrt(nrm);
  } else if (opts.anchor) {
    std::vector<Complex> ov(bmax.size());
    double nrm = 0.0;
    for (std::size_t i = 0; i < bmax.size(); ++i) {
      const auto& b = orth[bmax[i]];
      if (b.rows() != opts.anchor->rows() || b.cols() != opts.anchor->cols())
        throw DimensionError("most_coherent_S: anchor has wrong shape");
      ov[i] = (b.adjoint() * (*opts.anchor)).trace() / b.norm();
      nrm += std::norm(ov[i]);
    }
    if (nrm > 1e-24)
      for (std::size_t i = 0; i < bmax.size(); ++i) coef[i] = ov[i] / std::sqrt(nrm);
  }
  ComplexMatrix s = ComplexMatrix::Zero(orth.front().rows(), orth.front().cols());
  for (std::size_t i = 0; i < bmax.size(); ++i) s += coef[i] * orth[bmax[i]];
  return coherence_from_basis(orth, s);
}

}  // namespace

CombShape::CombShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 4 || dims_.size() % 2 != 0)
    throw DimensionError("CombShape: need 2N+2 factors with N >= 1");
  for (std::size_t d : dims_)
    if (d == 0) throw DimensionError("CombShape: dimensions must be positive");
}

CombShape CombShape::uniform(std::size_t slots, std::size_t d) {
  return CombShape(std::vector<std::size_t>(2 * slots + 2, d));
}

std::size_t CombShape::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

std::size_t CombShape::in_dim() const { return total() / out_dim(); }

std::size_t CombShape::out_dim() const { return dims_.front() * dims_.back(); }

bool CombShape::identity_compatible() const {
  for (std::size_t k = 0; k + 1 < dims_.size(); k += 2)
    if (dims_[k] != dims_[k + 1]) return false;
  return true;
}

CombChoi::CombChoi(ComplexMatrix m, CombShape s)
    : matrix(std::move(m)), shape(std::move(s)) {
  const auto side = ix(shape.total());
  if (matrix.rows() != side || matrix.cols() != side) {
    std::ostringstream os;
    os << "CombChoi: matrix is " << matrix.rows() << "x" << matrix.cols()
       << ", shape requires side " << side;
    throw DimensionError(os.str());
  }
}

CombKraus::CombKraus(std::vector<ComplexMatrix> ops, CombShape s)
    : operators(std::move(ops)), shape(std::move(s)) {
  for (const auto& op : operators) {
    if (op.rows() != ix(shape.out_dim()) || op.cols() != ix(shape.in_dim())) {
      std::ostringstream os;
      os << "CombKraus: operator is " << op.rows() << "x" << op.cols()
         << ", shape requires " << shape.out_dim() << "x" << shape.in_dim();
      throw DimensionError(os.str());
    }
  }
}

double CoherenceOperatorS::beta_norm_sq() const {
  double s = 0.0;
  for (const auto& b : beta) s += std::norm(b);
  return s;
}

namespace {

std::pair<SubsystemShape, std::vector<std::size_t>> order_perm(
    const CombShape& shape, const std::vector<std::size_t>& order) {
  if (order.size() != shape.factor_count())
    throw DimensionError("to_comb_order: order must list every factor once");
  std::vector<std::size_t> dims(order.size());
  std::vector<std::size_t> perm(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) {
    dims[p] = shape[order[p]];
    perm[order[p]] = p;
  }
  return {SubsystemShape(dims), perm};
}

}  // namespace

ComplexVector to_comb_order(const ComplexVector& v, const CombShape& shape,
                            const std::vector<std::size_t>& order) {
  const auto [sub, perm] = order_perm(shape, order);
  return permute_vector(v, sub, perm);
}

ComplexMatrix to_comb_order(const ComplexMatrix& m, const CombShape& shape,
                            const std::vector<std::size_t>& order) {
  const auto [sub, perm] = order_perm(shape, order);
  return permute_subsystems(m, sub, perm);
}

ComplexVector comb_vector(const ComplexMatrix& s, const CombShape& shape) {
  if (s.rows() != ix(shape.out_dim()) || s.cols() != ix(shape.in_dim()))
    throw DimensionError("comb_vector: operator does not match shape");
  const std::size_t n = shape.slots();
  return to_comb_order(vectorize(s), shape, concat(in_factors(n), out_factors(n)));
}

ComplexMatrix vector_as_operator(const ComplexVector& v, const CombShape& shape,
                                 const std::vector<std::size_t>& domain,
                                 const std::vector<std::size_t>& range) {
  if (static_cast<std::size_t>(v.size()) != shape.total())
    throw DimensionError("vector_as_operator: length does not match shape");
  const auto order = concat(domain, range);
  const ComplexVector w = permute_vector(v, shape.subsystems(), order);
  std::size_t din = 1, dout = 1;
  for (std::size_t f : domain) din *= shape[f];
  for (std::size_t f : range) dout *= shape[f];
  return devectorize(w, din, dout);
}

ComplexMatrix comb_operator(const ComplexVector& v, const CombShape& shape) {
  const std::size_t n = shape.slots();
  return vector_as_operator(v, shape, in_factors(n), out_factors(n));
}

CombChoi kraus_to_comb_choi(const CombKraus& k) {
  const std::size_t side = k.shape.total();
  check_budget(side, "kraus_to_comb_choi");
  ComplexMatrix j = ComplexMatrix::Zero(ix(side), ix(side));
  for (const auto& op : k.operators) {
    const ComplexVector v = comb_vector(op, k.shape);
    j.noalias() += v * v.adjoint();
  }
  return CombChoi(std::move(j), k.shape);
}

CombKraus comb_choi_to_kraus(const CombChoi& j) {
  const auto spec = hermitian_eig(j.matrix);
  const double lmin = spec.eigenvalues.minCoeff();
  if (lmin < tol::kPsdFloor) {
    std::ostringstream os;
    os << "comb_choi_to_kraus: eigenvalue " << lmin << " below PSD floor";
    throw NotCPError(os.str());
  }
  const double cutoff = 1e-12 * std::max(1.0, spec.eigenvalues.maxCoeff());
  std::vector<ComplexMatrix> ops;
  for (Idx i = 0; i < spec.eigenvalues.size(); ++i) {
    const double l = spec.eigenvalues(i);
    if (l <= cutoff) break;
    ops.push_back(comb_operator(std::sqrt(l) * fix_phase(spec.eigenvectors.col(i)),
                                j.shape));
  }
  return CombKraus(std::move(ops), j.shape);
}

CombKraus orthogonalize(const CombKraus& k) {
  if (k.size() == 0) return k;
  const auto vs = comb_vectors(k);
  const Idx len = vs.front().size();
  ComplexMatrix v(len, ix(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) v.col(ix(i)) = vs[i];
  const ComplexMatrix gram = v.adjoint() * v;
  const auto spec = hermitian_eig(0.5 * (gram + gram.adjoint()));
  const double cutoff = 1e-12 * std::max(1.0, spec.eigenvalues.maxCoeff());
  std::vector<ComplexMatrix> ops;
  for (Idx i = 0; i < spec.eigenvalues.size(); ++i) {
    const double mu = spec.eigenvalues(i);
    if (mu <= cutoff) break;
    const ComplexVector w = v * spec.eigenvectors.col(i);
    const ComplexVector unit = fix_phase(w / std::sqrt(mu));
    ops.push_back(comb_operator(std::sqrt(mu) * unit, k.shape));
  }
  return CombKraus(std::move(ops), k.shape);
}

CombReport check_comb_choi(const CombChoi& j) {
  CombReport r;
  const CombShape& shape = j.shape;
  const std::size_t n = shape.slots();
  const ComplexMatrix herm = 0.5 * (j.matrix + j.matrix.adjoint());
  r.min_eigenvalue = hermitian_eig(herm).eigenvalues.minCoeff();
  r.cp = hermiticity_residual(j.matrix) <= tol::kHermiticity &&
         r.min_eigenvalue >= tol::kPsdFloor;

  r.chain.assign(n + 1, 0.0);
  const auto& dims = shape.dims();
  for (std::size_t k = n + 1; k-- > 0;) {
    std::vector<std::size_t> upto(2 * k + 2);
    std::iota(upto.begin(), upto.end(), std::size_t{0});
    const ComplexMatrix jk =
        (k == n) ? j.matrix : partial_trace(j.matrix, shape.subsystems(), upto);
    const SubsystemShape sk(std::vector<std::size_t>(dims.begin(),
                                                     dims.begin() + ix(2 * k + 2)));
    std::vector<std::size_t> keep_lhs(2 * k + 1);
    std::iota(keep_lhs.begin(), keep_lhs.end(), std::size_t{0});
    const ComplexMatrix lhs = partial_trace(jk, sk, keep_lhs);
    std::vector<std::size_t> keep_rhs(2 * k);
    std::iota(keep_rhs.begin(), keep_rhs.end(), std::size_t{0});
    const ComplexMatrix reduced = partial_trace(jk, sk, keep_rhs);
    const double d2k = static_cast<double>(dims[2 * k]);
    const ComplexMatrix rhs = kron(reduced, identity(dims[2 * k]) / d2k);
    r.chain[k] = max_abs_diff(lhs, rhs);
  }
  r.chain_ok = std::all_of(r.chain.begin(), r.chain.end(),
                           [](double x) { return x <= tol::kComb; });

  std::vector<std::size_t> even;
  std::size_t even_dim = 1;
  for (std::size_t f = 0; f < dims.size(); f += 2) {
    even.push_back(f);
    even_dim *= dims[f];
  }
  r.normalization = max_abs_diff(partial_trace(j.matrix, shape.subsystems(), even),
                                 identity(even_dim));
  r.valid = r.cp && r.chain_ok && r.normalization <= tol::kComb;
  return r;
}

ComplexMatrix identity_comb_operator(const CombShape& shape) {
  if (!shape.identity_compatible())
    throw DimensionError("identity comb needs d_{2k} == d_{2k+1}");
  ComplexVector v = ComplexVector::Ones(1);
  for (std::size_t k = 0; k < shape.factor_count(); k += 2)
    v = kron_vec(v, vectorize(identity(shape[k])));
  return comb_operator(v, shape);
}

CombKraus identity_comb_kraus(const CombShape& shape) {
  return CombKraus({identity_comb_operator(shape)}, shape);
}

CombChoi identity_comb(const CombShape& shape) {
  return kraus_to_comb_choi(identity_comb_kraus(shape));
}

ComplexMatrix identity_anchor(const CombShape& shape) {
  const std::size_t n = shape.slots();
  const auto& dims = shape.dims();
  if (dims.front() != dims.back())
    throw DimensionError("identity_anchor: d_0 must equal d_{2N+1}");
  std::vector<std::size_t> order{0, 2 * n + 1};
  ComplexVector v = vectorize(identity(dims.front()));
  for (std::size_t k = 1; k <= n; ++k) {
    if (dims[2 * k - 1] != dims[2 * k])
      throw DimensionError("identity_anchor: slot input and output differ");
    v = kron_vec(v, vectorize(identity(dims[2 * k])));
    order.push_back(2 * k - 1);
    order.push_back(2 * k);
  }
  return comb_operator(to_comb_order(v, shape, order), shape);
}

namespace {

ComplexMatrix slot_inputs(const CombShape& shape,
                          const std::vector<ChoiMatrix>& inputs) {
  const std::size_t n = shape.slots();
  if (inputs.size() != n) {
    std::ostringstream os;
    os << "link_apply: comb has " << n << " slots but " << inputs.size()
       << " inputs were given";
    throw DimensionError(os.str());
  }
  ComplexMatrix j = ComplexMatrix::Ones(1, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& a = inputs[k - 1];
    if (a.d_in != shape[2 * k - 1] || a.d_out != shape[2 * k]) {
      std::ostringstream os;
      os << "link_apply: input " << k << " is " << a.d_in << "->" << a.d_out
         << " but the slot is " << shape[2 * k - 1] << "->" << shape[2 * k];
      throw DimensionError(os.str());
    }
    j = kron(j, a.matrix);
  }
  return j;
}

}  // namespace

ChoiMatrix link_apply(const CombChoi& comb, const std::vector<ChoiMatrix>& inputs) {
  const CombShape& shape = comb.shape;
  const ComplexMatrix jin = slot_inputs(shape, inputs);
  const std::size_t n = shape.slots();
  const ComplexMatrix as_map = permute_subsystems(
      comb.matrix, shape.subsystems(), concat(in_factors(n), out_factors(n)));
  const ChoiMatrix map(as_map, shape.in_dim(), shape.out_dim());
  return ChoiMatrix(apply_channel(map, jin), shape[0], shape[2 * n + 1]);
}

ChoiMatrix link_apply(const CombKraus& comb, const std::vector<ChoiMatrix>& inputs) {
  const CombShape& shape = comb.shape;
  const ComplexMatrix jin = slot_inputs(shape, inputs);
  ComplexMatrix out = ComplexMatrix::Zero(ix(shape.out_dim()), ix(shape.out_dim()));
  for (const auto& s : comb.operators) out += s * jin * s.adjoint();
  return ChoiMatrix(std::move(out), shape[0], shape.dims().back());
}

ChoiMatrix link_apply_unitaries(const CombKraus& comb,
                                const std::vector<ComplexMatrix>& unitaries) {
  const CombShape& shape = comb.shape;
  const std::size_t n = shape.slots();
  if (unitaries.size() != n)
    throw DimensionError("link_apply_unitaries: wrong number of inputs");
  ComplexVector w = ComplexVector::Ones(1);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& u = unitaries[k - 1];
    if (u.cols() != ix(shape[2 * k - 1]) || u.rows() != ix(shape[2 * k]))
      throw DimensionError("link_apply_unitaries: input does not fit slot");
    w = kron_vec(w, vectorize(u));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ix(shape.out_dim()), ix(shape.out_dim()));
  for (const auto& s : comb.operators) {
    const ComplexVector x = s * w;
    out.noalias() += x * x.adjoint();
  }
  return ChoiMatrix(std::move(out), shape[0], shape.dims().back());
}

CoherenceOperatorS make_coherence_operator_s(const CombKraus& comb,
                                             const ComplexMatrix& s) {
  return coherence_from_basis(orthogonalize(comb).operators, s);
}

CoherenceOperatorS make_coherence_operator_s(const CombChoi& comb,
                                             const ComplexMatrix& s) {
  return coherence_from_basis(comb_choi_to_kraus(comb).operators, s);
}

CoherenceOperatorS most_coherent_S(const CombChoi& comb,
                                   const MostCoherentSOptions& opts) {
  return most_coherent_from_basis(comb_choi_to_kraus(comb).operators, opts);
}

CoherenceOperatorS most_coherent_S(const CombKraus& comb,
                                   const MostCoherentSOptions& opts) {
  return most_coherent_from_basis(orthogonalize(comb).operators, opts);
}

CombShape controlled_shape(const CombShape& shape) {
  auto dims = shape.dims();
  dims.front() *= 2;
  dims.back() *= 2;
  return CombShape(std::move(dims));
}

namespace {

// Factor order [C_in, C_out, H_0, ..., H_{2N+1}] -> [C_in, H_0, ..., H_{2N},
// C_out, H_{2N+1}]; adjacent control/target pairs then merge.
std::vector<std::size_t> control_merge_perm(std::size_t n) {
  std::vector<std::size_t> perm{0};
  for (std::size_t f = 0; f <= 2 * n; ++f) perm.push_back(f + 2);
  perm.push_back(1);
  perm.push_back(2 * n + 3);
  return perm;
}

SubsystemShape control_major_shape(const CombShape& shape) {
  std::vector<std::size_t> dims{2, 2};
  dims.insert(dims.end(), shape.dims().begin(), shape.dims().end());
  return SubsystemShape(std::move(dims));
}

}  // namespace

CombChoi controlled_comb_two(const CombChoi& comb_s, const ComplexMatrix& s,
                             const CombChoi& comb_t, const ComplexMatrix& t) {
  if (!(comb_s.shape == comb_t.shape))
    throw DimensionError("controlled_comb_two: comb shapes differ");
  const CombShape& shape = comb_s.shape;
  check_budget(4 * shape.total(), "controlled_comb_two");
  make_coherence_operator_s(comb_s, s);
  make_coherence_operator_s(comb_t, t);
  const auto n = ix(shape.total());
  const ComplexVector sv = comb_vector(s, shape);
  const ComplexVector tv = comb_vector(t, shape);
  ComplexMatrix m = ComplexMatrix::Zero(4 * n, 4 * n);
  m.block(0, 0, n, n) = comb_s.matrix;
  m.block(3 * n, 3 * n, n, n) = comb_t.matrix;
  m.block(0, 3 * n, n, n) = sv * tv.adjoint();
  m.block(3 * n, 0, n, n) = tv * sv.adjoint();
  return CombChoi(permute_subsystems(m, control_major_shape(shape),
                                     control_merge_perm(shape.slots())),
                  controlled_shape(shape));
}

CombChoi controlled_comb(const CombChoi& comb, const ComplexMatrix& s) {
  return controlled_comb_two(identity_comb(comb.shape),
                             identity_comb_operator(comb.shape), comb, s);
}

CombKraus controlled_comb_two_kraus(const CombKraus& comb_s,
                                    const ComplexMatrix& s,
                                    const CombKraus& comb_t,
                                    const ComplexMatrix& t) {
  if (!(comb_s.shape == comb_t.shape))
    throw DimensionError("controlled_comb_two_kraus: comb shapes differ");
  const CombShape& shape = comb_s.shape;
  const CoherenceOperatorS cs = make_coherence_operator_s(comb_s, s);
  const CoherenceOperatorS ct = make_coherence_operator_s(comb_t, t);
  const auto n = ix(shape.total());

  auto columns = [&](const CoherenceOperatorS& c) {
    ComplexMatrix a(n, ix(c.basis.size()));
    for (std::size_t i = 0; i < c.basis.size(); ++i)
      a.col(ix(i)) = comb_vector(c.basis[i], shape);
    ComplexVector coef(ix(c.beta.size()));
    for (std::size_t i = 0; i < c.beta.size(); ++i) coef(ix(i)) = c.beta[i];
    return std::pair{a, coef};
  };
  const auto [a, av] = columns(cs);
  const auto [b, bv] = columns(ct);

  const SubsystemShape major = control_major_shape(shape);
  const auto perm = control_merge_perm(shape.slots());
  const CombShape cshape = controlled_shape(shape);
  std::vector<ComplexMatrix> ops;
  auto emit = [&](const ComplexVector& zero, const ComplexVector& one) {
    if (zero.squaredNorm() + one.squaredNorm() < 1e-28) return;
    ComplexVector v = ComplexVector::Zero(4 * n);
    if (zero.size()) v.segment(0, n) = zero;
    if (one.size()) v.segment(3 * n, n) = one;
    ops.push_back(comb_operator(permute_vector(v, major, perm), cshape));
  };
  emit(a * av, b * bv);
  const ComplexMatrix ar = a * sqrt_complement(av);
  const ComplexMatrix br = b * sqrt_complement(bv);
  for (Idx i = 0; i < ar.cols(); ++i) emit(ar.col(i), ComplexVector());
  for (Idx i = 0; i < br.cols(); ++i) emit(ComplexVector(), br.col(i));
  return CombKraus(std::move(ops), cshape);
}

CombKrausReport comb_kraus_conditions(const CombKraus& kraus) {
  const CombShape& shape = kraus.shape;
  const std::size_t n = shape.slots();
  const auto vs = comb_vectors(kraus);
  CombKrausReport r;
  r.conditions.assign(n, 0.0);
  const std::size_t d0 = shape[0];

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> p, h, moved;
    for (std::size_t f = 1; f + 2 * k < 2 * n; ++f) p.push_back(f);
    for (std::size_t l = 0; l <= k; ++l) h.push_back(2 * n - 2 * l);
    for (std::size_t l = 1; l <= k; ++l) moved.push_back(2 * n - 2 * l + 1);
    std::vector<std::size_t> range{0};
    range.insert(range.end(), moved.begin(), moved.end());
    range.push_back(2 * n + 1);
    const auto domain = concat(p, h);

    std::size_t hd = 1, pd = 1, rest = 1;
    for (std::size_t f : h) hd *= shape[f];
    for (std::size_t f : p) pd *= shape[f];
    for (std::size_t f = 1; f < range.size(); ++f) rest *= shape[range[f]];

    std::vector<ComplexMatrix> ts;
    ts.reserve(vs.size());
    for (const auto& v : vs) ts.push_back(vector_as_operator(v, shape, domain, range));

    double worst = 0.0;
    for (std::size_t a = 0; a < d0; ++a) {
      for (std::size_t b = 0; b < d0; ++b) {
        // (E_ab (x) I) T keeps rows with H_0 digit a, taken from digit b.
        ComplexMatrix q = ComplexMatrix::Zero(ix(pd * hd), ix(pd * hd));
        for (const auto& t : ts) {
          const auto ta = t.middleRows(ix(a * rest), ix(rest));
          const auto tb = t.middleRows(ix(b * rest), ix(rest));
          q.noalias() += ta.adjoint() * tb;
        }
        for (std::size_t r0 = 0; r0 < pd; ++r0)
          for (std::size_t c0 = 0; c0 < pd; ++c0) {
            const ComplexMatrix blk = q.block(ix(r0 * hd), ix(c0 * hd), ix(hd), ix(hd));
            const Complex tr = blk.trace() / static_cast<double>(hd);
            worst = std::max(worst, max_abs_diff(blk, tr * identity(hd)));
          }
      }
    }
    r.conditions[k] = worst;
  }

  std::vector<std::size_t> even, odd;
  std::size_t even_dim = 1;
  for (std::size_t f = 0; f < shape.factor_count(); ++f) {
    if (f % 2 == 0) {
      even.push_back(f);
      even_dim *= shape[f];
    } else {
      odd.push_back(f);
    }
  }
  ComplexMatrix x = ComplexMatrix::Zero(ix(even_dim), ix(even_dim));
  for (const auto& v : vs) {
    const ComplexMatrix t = vector_as_operator(v, shape, even, odd);
    x.noalias() += t.adjoint() * t;
  }
  r.normalization = max_abs_diff(x, identity(even_dim));
  r.valid = r.normalization <= tol::kComb &&
            std::all_of(r.conditions.begin(), r.conditions.end(),
                        [](double c) { return c <= tol::kComb; });
  return r;
}

CombKraus random_circuit_comb(std::size_t slots, std::size_t d, std::size_t aux,
                              std::uint64_t seed) {
  if (slots == 0) throw PreconditionError("random_circuit_comb: need a slot");
  Rng rng = make_rng(seed);
  const CombShape shape = CombShape::uniform(slots, d);
  const auto D = ix(d), A = ix(aux);
  const ComplexMatrix v1 = haar_isometry(d * aux, d, rng);
  std::vector<ComplexMatrix> mids;
  for (std::size_t k = 0; k < slots; ++k) mids.push_back(haar_unitary(d * aux, rng));

  const std::size_t in_dim = shape.in_dim();
  std::vector<ComplexMatrix> ops(aux, ComplexMatrix::Zero(ix(shape.out_dim()),
                                                          ix(in_dim)));
  const ComplexMatrix ia = identity(aux);
  for (std::size_t col = 0; col < in_dim; ++col) {
    // Slot k receives X_k = |n_{2k}><n_{2k-1}|.
    std::size_t rem = col;
    std::vector<std::size_t> digits(2 * slots);
    for (std::size_t f = 2 * slots; f-- > 0;) {
      digits[f] = rem % d;
      rem /= d;
    }
    ComplexMatrix state = v1;  // H_0 -> H_1 (x) A
    for (std::size_t k = 0; k < slots; ++k) {
      ComplexMatrix x = ComplexMatrix::Zero(D, D);
      x(ix(digits[2 * k + 1]), ix(digits[2 * k])) = 1.0;
      state = mids[k] * kron(x, ia) * state;
    }
    // state : H_0 -> H_{2N+1} (x) E
    for (std::size_t e = 0; e < aux; ++e) {
      ComplexMatrix w(D, D);
      for (Idx m = 0; m < D; ++m) w.row(m) = state.row(m * A + ix(e));
      ops[e].col(ix(col)) = vectorize(w);
    }
  }
  return CombKraus(std::move(ops), shape);
}

std::vector<double> kraus_norms(const CombKraus& k) {
  std::vector<double> out;
  for (const auto& op : orthogonalize(k).operators) out.push_back(op.squaredNorm());
  return out;
}

}  // namespace qcomb
